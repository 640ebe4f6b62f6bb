"""Access to the package configuration.

User settings live in the Django setting ``QBG_MOBIUS``::

    QBG_MOBIUS = {
        "regularity_profile": "welch",
        "verify": {"box": [-10, -8], "window": 2},
    }

Django does not deep-merge nested dicts, so the nested ``verify`` and ``ktheory``
sections are merged over the defaults from ``QBGMobiusConfig.default_settings`` here.
"""

import copy
import os

from django.conf import settings

from qbg_mobius import QBGMobiusConfig

NESTED_SECTIONS = ("verify", "ktheory")


def get_config(key=None):
    """Return the merged configuration, or a single key of it."""
    defaults = copy.deepcopy(QBGMobiusConfig.default_settings)

    user_config = getattr(settings, "QBG_MOBIUS", None) if settings.configured else None
    user_config = user_config or {}

    config = {**defaults, **user_config}
    for section in NESTED_SECTIONS:
        config[section] = {**defaults[section], **(user_config.get(section) or {})}

    if config["threads"] is None:
        config["threads"] = threads_from_environment()

    if key is None:
        return config
    return config[key]


def threads_from_environment():
    """Worker cap from ``QBG_THREADS``; 1 when unset or malformed."""
    try:
        return max(1, int(os.environ.get("QBG_THREADS", "1")))
    except ValueError:
        return 1
