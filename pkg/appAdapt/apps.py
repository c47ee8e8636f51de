from django.apps import AppConfig


class AppadaptConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appAdapt"
    verbose_name = "Adaptive-ansatz compiler"
