from django.apps import AppConfig

class EquilibriumConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.equilibrium'
    verbose_name = "Equilibrium measure, capacity, Green function"
