from django.apps import AppConfig


class AppsimulatorConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appSimulator"
    verbose_name = "MPS circuit simulator"
