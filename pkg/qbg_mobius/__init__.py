"""Top-level package for qbg-mobius."""

__version__ = "0.1.0"


from django.apps import AppConfig


class QBGMobiusConfig(AppConfig):
    name = "qbg_mobius"
    verbose_name = "Quantum Bruhat Graph Möbius Toolkit"
    description = "Affine Weyl group combinatorics, the quantum Bruhat graph and Möbius functions on W⁰"
    version = __version__
    default_settings = {
        "default_type": "A2",
        "default_convention": "untwisted",
        "regularity_profile": "milicevic",
        "regularity_scope": "cover",
        "cover_window_slack": 2,
        "max_roots": 512,
        "length_oracle_radius": 12,
        "threads": None,  # falls back to QBG_THREADS
        "verify": {
            "box": [-12, -8],
            "box_mode": "coordinates",
            "window": 4,
            "sample": None,
            "seed": 0,
            "check_intervals": False,
        },
        "ktheory": {
            "truncation_floor": None,
        },
    }


config = QBGMobiusConfig
