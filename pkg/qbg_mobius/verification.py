"""Batch check of the closed-form Möbius function against the oracle and Deodhar's criterion.

For every classical w and every antidominant λ in a box, ``y = w t_λ`` is compared with each
W⁰ element ``x = w' t_{λ'}`` with ``ℓ(x) ≤ ℓ(y)`` whose translation lies in
``λ + [0, window]^rank`` (simple-coroot coordinates).

The box bounds the simple-coroot coordinates of λ by default, or the simple pairings
``<λ, α_i>`` in ``pairings`` mode. λ that fail the regularity bound are skipped and listed.
"""

import itertools
import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import cache

import numpy as np
from django.db.models import TextChoices

from qbg_mobius import __version__
from qbg_mobius.affine import AffineElement, AffineWeylGroup, Convention
from qbg_mobius.cartan import CorootVector, build_root_system
from qbg_mobius.exceptions import InvalidInputError, RegularityError
from qbg_mobius.mobius import mobius_column, mobius_deodhar
from qbg_mobius.qbg import build_qbg, min_weight
from qbg_mobius.regularity import certify
from qbg_mobius.weyl import from_word

logger = logging.getLogger(__name__)


class BoxMode(TextChoices):
    COORDINATES = "coordinates", "Simple-coroot coordinates"
    PAIRINGS = "pairings", "Simple pairings"


@dataclass
class VerificationReport:
    type_label: str
    convention: str
    regularity: dict
    box: list
    window: int
    box_mode: str = BoxMode.COORDINATES
    skipped: list = field(default_factory=list)
    tops_checked: int = 0
    pairs_checked: int = 0
    nonzero_pairs: int = 0
    disagreements: list = field(default_factory=list)
    runtime: float = 0.0
    version: str = __version__

    @property
    def passed(self):
        return not self.disagreements

    def to_dict(self):
        payload = asdict(self)
        payload["passed"] = self.passed
        return payload


def antidominant_box(system, box, mode=BoxMode.COORDINATES):
    """Antidominant λ ∈ Q∨ inside ``[low, high]^rank``.

    In ``coordinates`` mode the box bounds the simple-coroot coordinates of λ. In ``pairings``
    mode it bounds ``<λ, α_i>``, and pairing vectors that do not come from the coroot lattice
    are skipped.
    """
    if mode not in BoxMode.values:
        raise InvalidInputError({"box_mode": f"Unknown box mode {mode!r}; expected one of {BoxMode.values}"})
    low, high = box
    if low > high:
        return []
    points = itertools.product(range(low, high + 1), repeat=system.rank)
    if mode == BoxMode.COORDINATES:
        return [lam for lam in map(CorootVector, points) if system.is_antidominant(lam)]

    inverse = np.linalg.inv(system.cartan)
    lams = []
    for pairings in points:
        coords = np.rint(inverse @ np.array(pairings)).astype(np.int64)
        lam = CorootVector(coords)
        if system.simple_pairings(lam) == pairings and system.is_antidominant(lam):
            lams.append(lam)
    return lams


def select_tops(group, lams, sample=None, seed=0):
    elements = group.finite_elements()
    rng = random.Random(seed)
    tops = []
    for lam in lams:
        chosen = elements if sample is None else rng.sample(elements, min(sample, len(elements)))
        tops.extend(AffineElement(w, lam) for w in chosen)
    return tops


@cache
def _worker_group(cartan, label, convention, slack):
    return AffineWeylGroup(build_root_system(cartan, label), convention, cover_window_slack=slack)


def check_top(group, y, window, check_intervals=False):
    """Compare the three methods on every x in the window below ``y``.

    Returns:
        (pairs checked, nonzero pairs, list of disagreement records)
    """
    g = build_qbg(group.system, Convention.UNTWISTED)
    candidates = []
    for shift in itertools.product(range(window + 1), repeat=group.rank):
        lam = y.lam + CorootVector(shift)
        for u in group.finite_elements():
            x = AffineElement(u, lam)
            if x.length <= y.length and group.is_affine_grassmannian(x):
                candidates.append(x)
    if not candidates:
        return 0, 0, []

    column = mobius_column(group, y, floor=min(x.length for x in candidates))
    pairs = nonzero = 0
    disagreements = []
    for x in candidates:
        pairs += 1
        weight, _hops = min_weight(g, y.w, x.w)
        on_locus = x.lam == y.lam + weight
        sign = -1 if (y.length - x.length) % 2 else 1
        predicted = sign if on_locus else 0

        record = None
        if x not in column:
            # x is not below y, so μ̃(x, y) = 0
            if predicted:
                record = {"oracle": 0, "deodhar": 0, "superregular": predicted, "below": False}
        else:
            oracle = column[x]
            deodhar = mobius_deodhar(group, x, y).value
            nonzero += bool(oracle)
            if not oracle == deodhar == predicted:
                record = {"oracle": oracle, "deodhar": deodhar, "superregular": predicted}
            elif check_intervals:
                inside = all(group.is_affine_grassmannian(z) for z in group.interval(x, y))
                if inside != bool(deodhar):
                    record = {"oracle": oracle, "deodhar": deodhar, "interval_in_W0": inside}
        if record is not None:
            record.update(
                x={"w": x.w.reduced_word(), "t": x.lam.to_list()},
                y={"w": y.w.reduced_word(), "t": y.lam.to_list()},
            )
            disagreements.append(record)
    return pairs, nonzero, disagreements


def _check_task(task):
    cartan, label, convention, slack, word, lam, window, check_intervals = task
    group = _worker_group(cartan, label, convention, slack)
    y = AffineElement(from_word(group.system, word), CorootVector(lam))
    return check_top(group, y, window, check_intervals)


def certified_lams(group, lams, regularity):
    """Split ``lams`` into the certified ones and skip records for the rest.

    Raises:
        RegularityError: ``lams`` is non-empty and none of them is certified.
    """
    certified, skipped = [], []
    refusal = None
    for lam in lams:
        try:
            certify(group, group.translation(lam), regularity)
        except RegularityError as exc:
            refusal = refusal or exc
            skipped.append({"t": lam.to_list(), "bound": exc.bound, "margin": exc.pairing})
            continue
        certified.append(lam)
    if refusal is not None and not certified:
        raise refusal
    if skipped:
        logger.info("Skipping %d of %d λ below the %s bound", len(skipped), len(lams), regularity.scope)
    return certified, skipped


def verify_theorem(
    group,
    box,
    window,
    regularity,
    sample=None,
    seed=0,
    check_intervals=False,
    threads=1,
    box_mode=BoxMode.COORDINATES,
):
    """Run the sweep and return a :class:`VerificationReport`.

    Raises:
        RegularityError: the box holds antidominant λ but none is certified for ``regularity``.
    """
    if window < 0:
        raise InvalidInputError({"window": "The window must be non-negative"})
    started = time.monotonic()
    lams, skipped = certified_lams(group, antidominant_box(group.system, box, box_mode), regularity)
    report = VerificationReport(
        type_label=group.type_label,
        convention=str(group.convention),
        regularity=regularity.to_dict(),
        box=list(box),
        window=window,
        box_mode=str(box_mode),
        skipped=skipped,
    )

    tops = select_tops(group, lams, sample, seed)

    root_system = group.system
    tasks = [
        (
            root_system.cartan_matrix,
            root_system.type_label,
            str(Convention.UNTWISTED),
            group.cover_window_slack,
            y.w.reduced_word(),
            y.lam.coords,
            window,
            check_intervals,
        )
        for y in tops
    ]
    logger.info("Verifying %d tops of %s with %d worker(s)", len(tasks), group.type_label, threads)

    if threads > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(_check_task, tasks))
    else:
        results = [check_top(group, y, window, check_intervals) for y in tops]

    for pairs, nonzero, disagreements in results:
        report.pairs_checked += pairs
        report.nonzero_pairs += nonzero
        report.disagreements.extend(disagreements)
    report.tops_checked = len(tops)
    report.disagreements.sort(
        key=lambda record: (record["y"]["t"], record["y"]["w"], record["x"]["t"], record["x"]["w"])
    )
    report.runtime = round(time.monotonic() - started, 3)

    if report.disagreements:
        logger.warning("%d disagreement(s) in %s", len(report.disagreements), group.type_label)
    return report
