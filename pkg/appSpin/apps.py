from django.apps import AppConfig


class AppspinConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appSpin"
    verbose_name = "XXZ spin-chain physics"
