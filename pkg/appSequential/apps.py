from django.apps import AppConfig


class AppsequentialConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appSequential"
    verbose_name = "Sequential staircase baselines"
