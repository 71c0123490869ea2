from .settings import *

import os

DEBUG = True

# Для розробки все рахуємо в одному процесі
POTENTIA["SWEEP_BACKEND"] = os.getenv("POTENTIA_SWEEP_BACKEND", "local")
CELERY_TASK_ALWAYS_EAGER = True

LOGGING['loggers']['apps']['level'] = os.getenv('POTENTIA_LOG_LEVEL', 'INFO')
LOGGING['loggers']['apps']['handlers'] = ['console']
LOGGING['handlers']['console']['formatter'] = 'simple'
