from django.apps import AppConfig


class AppcircuitConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appCircuit"
    verbose_name = "Circuit model"
