from .settings import *

import os

DEBUG = False


SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', SECRET_KEY)

# На сервері розгалужуємо перебори степенів і випадкові перевірки через Celery
POTENTIA["SWEEP_BACKEND"] = os.getenv("POTENTIA_SWEEP_BACKEND", "celery")

LOGGING['handlers']['file'] = {
    'class': 'logging.FileHandler',
    'filename': os.getenv('POTENTIA_LOG_FILE', str(BASE_DIR / 'potentia.log')),
    'formatter': 'verbose',
}
LOGGING['loggers']['apps']['handlers'] = ['console', 'file']
