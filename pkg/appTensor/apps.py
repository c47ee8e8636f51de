from django.apps import AppConfig


class ApptensorConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "appTensor"
    verbose_name = "Tensor core"
