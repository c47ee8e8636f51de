from django.apps import AppConfig


class AppcoreConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appCore"
    verbose_name = "Core utilities"
