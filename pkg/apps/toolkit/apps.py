from django.apps import AppConfig

class ToolkitConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.toolkit'
    verbose_name = "Command-line front end"
