from django.apps import AppConfig


class MatricesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.matrices'
    verbose_name = 'Matrices - Transition Matrices & Rome Method'
