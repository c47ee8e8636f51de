# ruff: noqa: ERA001, E501
"""Base settings to build other settings files upon."""

from pathlib import Path

import environ

BASE_DIR = Path(__file__).resolve(strict=True).parent.parent.parent
env = environ.Env()

READ_DOT_ENV_FILE = env.bool("DJANGO_READ_DOT_ENV_FILE", default=False)
if READ_DOT_ENV_FILE:
    # OS environment variables take precedence over variables from .env
    env.read_env(str(BASE_DIR / ".env"))

# GENERAL
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#debug
DEBUG = env.bool("DEBUG", False)
TIME_ZONE = "UTC"
# https://docs.djangoproject.com/en/dev/ref/settings/#language-code
LANGUAGE_CODE = "en-us"
USE_I18N = False
# https://docs.djangoproject.com/en/dev/ref/settings/#use-tz
USE_TZ = True

# DATABASES
# ------------------------------------------------------------------------------
# Every computation is in-memory; results are written as CSV / JSON / SVG files.
DATABASES: dict = {}
# https://docs.djangoproject.com/en/stable/ref/settings/#std:setting-DEFAULT_AUTO_FIELD
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# APPS
# ------------------------------------------------------------------------------
DJANGO_APPS: list[str] = []
THIRD_PARTY_APPS: list[str] = []

LOCAL_APPS = [
    "appCore",
    "appTensor",
    "appOracle",
    "appCircuit",
    "appSimulator",
    "appSpin",
    "appSequential",
    "appAdapt",
    "appAqcTensor",
    "appExperiments",
]
# https://docs.djangoproject.com/en/dev/ref/settings/#installed-apps
INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# LOGGING
# ------------------------------------------------------------------------------
# https://docs.djangoproject.com/en/dev/ref/settings/#logging
# See https://docs.djangoproject.com/en/dev/topics/logging for
# more details on how to customize your logging configuration.
LOG_LEVEL = env.str("MPSC_LOG", default="INFO").upper()

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "%(levelname)s %(asctime)s %(module)s %(process)d %(thread)d %(message)s",
        },
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "root": {"level": LOG_LEVEL, "handlers": ["console"]},
    "loggers": {
        "appExperiments": {
            "level": LOG_LEVEL,
            "handlers": ["console"],
            "propagate": False,
        },
    },
}

# NUMERICAL DEFAULTS
# ------------------------------------------------------------------------------
# Read by the management commands when a flag is not given.
# Each entry is overridable through MPSC_<NAME>.
MPSC = {
    "ADAPT_SIM_THRESHOLD": env.float("MPSC_ADAPT_SIM_THRESHOLD", default=1e-6),
    "AQC_TENSOR_SIM_THRESHOLD": env.float("MPSC_AQC_TENSOR_SIM_THRESHOLD", default=1e-8),
    "DMRG_CUTOFF": env.float("MPSC_DMRG_CUTOFF", default=1e-4),
    "DMRG_MAX_BOND": env.int("MPSC_DMRG_MAX_BOND", default=100),
    "DMRG_MAX_SWEEPS": env.int("MPSC_DMRG_MAX_SWEEPS", default=10),
    "TEBD_CUTOFF": env.float("MPSC_TEBD_CUTOFF", default=1e-5),
    "TEBD_DT": env.float("MPSC_TEBD_DT", default=0.1),
    "TEBD_MAX_BOND": env.int("MPSC_TEBD_MAX_BOND", default=512),
    "ORACLE_MAX_QUBITS": env.int("MPSC_ORACLE_MAX_QUBITS", default=14),
    "DEFAULT_JOBS": env.int("MPSC_DEFAULT_JOBS", default=1),
}
