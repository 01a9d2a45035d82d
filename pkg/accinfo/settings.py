import os
from pathlib import Path
import sys

# Build paths inside the project like this: BASE_DIR / 'subdir'
BASE_DIR = Path(__file__).resolve().parent.parent


# Settings defined in environment variables.
DEBUG = os.environ.get("DEBUG", False) == "True"
SECRET_KEY = os.environ.get("SECRET_KEY", "PlaceholderSecretKey")
ALLOWED_HOSTS = []
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

# Application settings
INSTALLED_APPS = [
    # Local apps
    "discrimination",
    "receiver",
]

# Nothing is persisted: every quantity is recomputed from its parameters.
DATABASES = {}

USE_I18N = False
USE_TZ = True
TIME_ZONE = "UTC"
LANGUAGE_CODE = "en-us"

# Output and numerics
# Numbers written to CSV use this many significant digits (lossless for doubles).
SIGNIFICANT_DIGITS = int(os.environ.get("ACCINFO_SIGNIFICANT_DIGITS", 17))
# Seed used by the demo photon-count sampler when --seed is not given.
DEFAULT_SEED = int(os.environ.get("ACCINFO_DEFAULT_SEED", 1998))
DEFAULT_UNIT = os.environ.get("ACCINFO_DEFAULT_UNIT", "nats")
# Number of theta slices of the oracle lattice evaluated per vectorised block.
SCAN_CHUNK = int(os.environ.get("ACCINFO_SCAN_CHUNK", 8))


# Logging settings - log to stdout
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {"format": "%(asctime)s %(levelname)-10s %(name)-10s %(message)s"},
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
            "stream": sys.stdout,
            "level": "WARNING",
        },
        "accinfo": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
            "stream": sys.stderr,
            "level": os.environ.get("ACCINFO_LOG_LEVEL", "INFO"),
        },
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": "ERROR",
        },
        "accinfo": {
            "handlers": ["accinfo"],
            "level": os.environ.get("ACCINFO_LOG_LEVEL", "INFO"),
        },
    },
}
