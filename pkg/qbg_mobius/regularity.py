"""Superregularity bounds gating the closed-form code paths.

A translation λ (measured on its antidominant representative) is regular enough for a
cover when every ``|<λ, α_i>|`` reaches the base bound ``k``; a saturated chain of length
``m`` needs ``k + (m - 1) j`` and the Möbius closed form is certified with ``k + |W₀| j``.
"""

import logging
from dataclasses import asdict, dataclass

from django.db.models import TextChoices

from qbg_mobius.exceptions import InvalidInputError, RegularityError, UnsupportedProfileError
from qbg_mobius.weyl import chamber, enumerate_group, longest_element

logger = logging.getLogger(__name__)


class RegularityProfile(TextChoices):
    CONSERVATIVE = "conservative", "Conservative (2|W₀| + 2)"
    MILICEVIC = "milicevic", "Milićević (2ℓ(w₀), 3ℓ(w₀) for G₂)"
    WELCH = "welch", "Welch (3, simply laced)"


class RegularityScope(TextChoices):
    COVER = "cover", "Per cover (k)"
    CHAIN = "chain", "Per chain (k + (m-1)j)"
    THEOREM = "theorem", "Theorem (k + |W₀|j)"


def is_type_g2(system):
    """Rank two with a bond of multiplicity three."""
    return system.rank == 2 and -3 in (system.cartan_matrix[0][1], system.cartan_matrix[1][0])


def base_bound(system, profile):
    """The cover bound ``k`` for a profile."""
    if profile not in RegularityProfile.values:
        raise UnsupportedProfileError({"profile": f"Unknown regularity profile {profile!r}"})
    if profile == RegularityProfile.CONSERVATIVE:
        return 2 * len(enumerate_group(system)) + 2
    if profile == RegularityProfile.MILICEVIC:
        factor = 3 if is_type_g2(system) else 2
        return factor * longest_element(system).length
    if not system.is_simply_laced:
        raise UnsupportedProfileError(
            {"profile": f"The welch profile only applies to simply-laced types, not {system.type_label}"}
        )
    return 3


def max_simple_pairing(system):
    """``j``: the largest ``<β, α∨>`` over simple roots β and positive roots α."""
    return max(
        system.pair(coroot, beta)
        for beta in system.simple_roots
        for coroot in system.positive_coroots
    )


@dataclass(frozen=True)
class RegularityConfig:
    k: int
    j: int
    profile: str = RegularityProfile.MILICEVIC
    scope: str = RegularityScope.COVER

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError({"k": "k must be at least 1"})
        if self.j < 1:
            raise InvalidInputError({"j": "j must be at least 1"})
        if self.scope not in RegularityScope.values:
            raise InvalidInputError({"scope": f"Unknown regularity scope {self.scope!r}"})

    @classmethod
    def for_system(cls, system, profile=RegularityProfile.MILICEVIC, scope=RegularityScope.COVER):
        return cls(
            k=base_bound(system, profile),
            j=max_simple_pairing(system),
            profile=str(profile),
            scope=str(scope),
        )

    def validate(self, system):
        """Check ``j`` against the recomputed maximum for ``system``."""
        expected = max_simple_pairing(system)
        if self.j != expected:
            raise InvalidInputError({"j": f"j = {self.j} but {system.type_label} has j = {expected}"})

    def to_dict(self):
        return asdict(self)


def default_config(system, profile=None, scope=None):
    from qbg_mobius.conf import get_config

    return RegularityConfig.for_system(
        system,
        profile=profile or get_config("regularity_profile"),
        scope=scope or get_config("regularity_scope"),
    )


def chain_bound(system, cfg, m):
    if m < 1:
        raise InvalidInputError({"m": "The length gap m must be at least 1"})
    return cfg.k + (m - 1) * cfg.j


def theorem_bound(system, cfg):
    return cfg.k + len(enumerate_group(system)) * cfg.j


def required_bound(system, cfg, m=1):
    """The bound demanded by ``cfg.scope`` for a gap of ``m``."""
    if cfg.scope == RegularityScope.THEOREM:
        return theorem_bound(system, cfg)
    if cfg.scope == RegularityScope.CHAIN:
        return chain_bound(system, cfg, m)
    return cfg.k


def regularity_margin(system, lam):
    """``min_i |<λ₀, α_i>|`` for the antidominant representative λ₀ of λ."""
    _v, antidominant = chamber(system, lam)
    return min(abs(value) for value in system.simple_pairings(antidominant))


def is_superregular(y, cfg, m=1):
    system = y.system
    return regularity_margin(system, y.lam) >= chain_bound(system, cfg, m)


def certify(group, y, cfg, m=1):
    """Raise ``RegularityError`` unless y's translation meets the bound for ``cfg.scope``."""
    system = group.system
    cfg.validate(system)
    bound = required_bound(system, cfg, m)
    margin = regularity_margin(system, y.lam)
    if margin < bound:
        logger.debug("Refusing %s: margin %d below %s bound %d", y, margin, cfg.scope, bound)
        raise RegularityError(
            f"Translation {y.lam} is not superregular: min |<λ, α_i>| = {margin} < {cfg.scope} bound {bound} "
            f"({cfg.profile} profile, k = {cfg.k}, j = {cfg.j})",
            bound=bound,
            pairing=margin,
        )


def report(system, max_gap=None):
    """Bounds for every profile valid on ``system``."""
    j = max_simple_pairing(system)
    order = len(enumerate_group(system))
    max_gap = max_gap or order
    rows = []
    for profile in RegularityProfile.values:
        try:
            cfg = RegularityConfig.for_system(system, profile)
        except UnsupportedProfileError as exc:
            rows.append({"profile": profile, "supported": False, "reason": str(exc)})
            continue
        rows.append(
            {
                "profile": profile,
                "supported": True,
                "k": cfg.k,
                "j": j,
                "chain_bounds": {m: chain_bound(system, cfg, m) for m in range(1, max_gap + 1)},
                "theorem_bound": theorem_bound(system, cfg),
            }
        )
    return rows
