from django.apps import AppConfig


class PermutationsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'apps.permutations'
    verbose_name = 'Permutations - Rauzy Moves & Hyperelliptic Diagrams'
