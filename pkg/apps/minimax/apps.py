from django.apps import AppConfig

class MinimaxConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.minimax'
    verbose_name = "Remez minimax engine"
