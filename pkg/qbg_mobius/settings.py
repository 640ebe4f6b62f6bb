"""Standalone Django settings for the ``qbg-mobius`` command line tool and test-suite.

No database is used; every command is stateless.
"""

import os

SECRET_KEY = os.environ.get("QBG_SECRET_KEY", "qbg-mobius-standalone-not-secret")
DEBUG = False
ALLOWED_HOSTS = []

INSTALLED_APPS = [
    "qbg_mobius.QBGMobiusConfig",
]

DATABASES = {}
USE_TZ = True

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "standard": {
            "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "standard",
        },
    },
    "loggers": {
        "qbg_mobius": {
            "handlers": ["console"],
            "level": os.environ.get("QBG_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
    },
}

QBG_MOBIUS = {}
