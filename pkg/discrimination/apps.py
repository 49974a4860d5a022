from django.apps import AppConfig


class DiscriminationConfig(AppConfig):
    name = 'discrimination'
    verbose_name = 'Distinguishability norms'
