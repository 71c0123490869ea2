import os
from celery import Celery

# Налаштування Django для воркерів Celery
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'Potentia.settings')

app = Celery('Potentia')

# Беремо CELERY_* з Django settings
app.config_from_object('django.conf:settings', namespace='CELERY')

# Автоматично знаходимо tasks.py в apps
app.autodiscover_tasks()
