from django.apps import AppConfig


class DifftestConfig(AppConfig):
    name = 'difftest'
    verbose_name = 'Differential theorem checks'
