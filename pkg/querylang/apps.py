from django.apps import AppConfig


class QuerylangConfig(AppConfig):
    name = 'querylang'
    verbose_name = 'Query language'
