from django.apps import AppConfig


class AppexperimentsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appExperiments"
    verbose_name = "Experiment runners and commands"
