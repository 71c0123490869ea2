from django.apps import AppConfig

class IntervalsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.intervals'
    verbose_name = "Interval unions and exhaustion sequences"
