"""
With these settings, tests run faster.
"""

from .base import *  # noqa: F403
from .base import MPSC
from .base import env

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#secret-key
SECRET_KEY = env(
    "DJANGO_SECRET_KEY",
    default="IEfQ7QYyyenbCtZDyYcu8gA0B8pEoDWDxabzeRjek35BxgcEpO6eJdlFm28dPhIS",
)
# https://docs.djangoproject.com/en/dev/ref/settings/#test-runner
TEST_RUNNER = "django.test.runner.DiscoverRunner"

# NUMERICAL DEFAULTS
# ------------------------------------------------------------------------------
# Dense checks in the suite go up to 12 qubits.
MPSC = {**MPSC, "ORACLE_MAX_QUBITS": 12}
