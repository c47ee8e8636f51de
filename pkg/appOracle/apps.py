from django.apps import AppConfig


class ApporacleConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appOracle"
    verbose_name = "Dense reference oracle"
