"""
Запуск тих самих tests.py через pytest: налаштовуємо Django до збору тестів.
Основний спосіб - python manage.py test (повільні: --exclude-tag slow).
"""
import os
import sys

import django

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
os.environ.setdefault("DJANGO_SETTINGS_MODULE", "Potentia.settings")
django.setup()
