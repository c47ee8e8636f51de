from django.apps import AppConfig


class AppaqctensorConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appAqcTensor"
    verbose_name = "Brickwork tensor-network compiler"
