from django.apps import AppConfig

class CombConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.comb'
    verbose_name = "Comb conformal map"
