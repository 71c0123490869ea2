"""
Django settings for Potentia project.

Potentia рахує рівноважні міри, ємність, функцію Гріна і гребінцеве
відображення для скінченних об'єднань відрізків, а також похибки найкращого
рівномірного наближення |x - x0|^alpha алгоритмом Ремеза.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

import os
from pathlib import Path
from dotenv import load_dotenv
from decouple import config

load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config("SECRET_KEY", default="potentia-dev-only")
DEBUG = config("DEBUG", default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'django.contrib.contenttypes',
    'rest_framework',
    'apps.intervals',
    'apps.equilibrium',
    'apps.comb',
    'apps.minimax',
    'apps.asymptotics',
    'apps.verification',
    'apps.toolkit',
]

# Усі числові параметри в одному місці
POTENTIA = {
    # квадратура Гаусса-Лежандра в змінній theta
    "QUAD_POINTS": config("POTENTIA_QUAD_POINTS", default=256, cast=int),
    "GAP_RESIDUAL_TOL": config("POTENTIA_GAP_RESIDUAL_TOL", default=1e-10, cast=float),
    "MASS_TOL": config("POTENTIA_MASS_TOL", default=1e-10, cast=float),
    "CAPACITY_XCHECK_TOL": config("POTENTIA_CAPACITY_XCHECK_TOL", default=1e-9, cast=float),
    # висота горизонтальної ланки шляху для F, частка diam(E)
    "PATH_HEIGHT": config("POTENTIA_PATH_HEIGHT", default=0.25, cast=float),
    "PATH_RTOL": config("POTENTIA_PATH_RTOL", default=1e-10, cast=float),

    # Ремез
    "GRID_POINTS": config("POTENTIA_GRID_POINTS", default=2000, cast=int),
    "GRID_PER_DEGREE": config("POTENTIA_GRID_PER_DEGREE", default=30, cast=int),
    "REMEZ_TOL": config("POTENTIA_REMEZ_TOL", default=1e-10, cast=float),
    "REMEZ_MAX_ITER": config("POTENTIA_REMEZ_MAX_ITER", default=200, cast=int),
    "EXTENDED_PRECISION_DEGREE": config("POTENTIA_EXTENDED_PRECISION_DEGREE", default=60, cast=int),

    # асимптотика
    "DEGREE_LADDER": config("POTENTIA_DEGREE_LADDER", default="20,28,40,56,80,112"),

    # перевірки
    "Y_FLOOR": config("POTENTIA_Y_FLOOR", default=1e-8, cast=float),
    "LEDGER_DPS": config("POTENTIA_LEDGER_DPS", default=50, cast=int),
    "SEED": config("POTENTIA_SEED", default=0, cast=int),
    "TRIALS": config("POTENTIA_TRIALS", default=100, cast=int),
    "LEMMA_SAMPLES": config("POTENTIA_LEMMA_SAMPLES", default=48, cast=int),

    # local | celery
    "SWEEP_BACKEND": os.getenv("POTENTIA_SWEEP_BACKEND", "local"),
}


# Database
# https://docs.djangoproject.com/en/5.2/ref/settings/#databases
# Моделей немає, база лише щоб manage.py працював без сюрпризів

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    },
}


# Internationalization
# https://docs.djangoproject.com/en/5.2/topics/i18n/

LANGUAGE_CODE = 'uk'

TIME_ZONE = 'Europe/Kyiv'

USE_I18N = True

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Celery налаштування (використовується при POTENTIA_SWEEP_BACKEND=celery)
CELERY_BROKER_URL = os.getenv('CELERY_BROKER_URL', 'redis://localhost:6379/0')
CELERY_RESULT_BACKEND = os.getenv('CELERY_RESULT_BACKEND', 'redis://localhost:6379/0')
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = TIME_ZONE

# Налаштування логування
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'apps': {
            'handlers': ['console'],
            'level': config('POTENTIA_LOG_LEVEL', default='WARNING'),
            'propagate': False,
        },
    },
}
