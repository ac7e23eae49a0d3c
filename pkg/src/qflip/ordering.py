"""Interleaving patterns of the initial and flipped eigenvalue triples.

Because the two cubics share A and differ only through B > Bprime, the sorted
spectra always interleave the same way; what varies is how the *printed root
labels* a1..a3 / b1..b3 arrange, and that depends on which representative
angle (principal 3t in [0, pi] or mirror 2pi - 3t) carries each spectrum.
The atlas below records the expected label chain per region pair of
(3t_initial, 3t_final), with regions the four quadrant intervals of [0, 2pi)
taken half-open.  A pair of spectra is verified against the atlas under every
valid representative combination; any mismatch raises instead of being
glossed over, since it would mean the table (or this implementation) is
wrong.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi

from .cubic import CubicSpectrum, labeled_roots

REGION_BOUNDS = {
    "Q1": "[0, pi/2)",
    "Q2": "[pi/2, pi)",
    "Q3": "[pi, 3pi/2)",
    "Q4": "[3pi/2, 2pi)",
}

_CHAIN_PP = ("a1", "b1", "b3", "a3", "a2", "b2")
_CHAIN_MM = ("a1", "b1", "b2", "a2", "a3", "b3")
_CHAIN_PM = ("a1", "b1", "b2", "a3", "a2", "b3")
_CHAIN_MP = ("a1", "b1", "b3", "a2", "a3", "b2")

# Region pair of (3t_initial, 3t_final) -> expected descending label chain.
# The left column only ever holds Q2/Q3 because B > 0 for every valid family
# point; Q1/Q4 on the right correspond to Bprime < 0.
PATTERN_ATLAS = {
    ("Q2", "Q2"): _CHAIN_PP,
    ("Q3", "Q3"): _CHAIN_MM,
    ("Q2", "Q3"): _CHAIN_PM,
    ("Q3", "Q2"): _CHAIN_MP,
    ("Q2", "Q1"): _CHAIN_PP,
    ("Q2", "Q4"): _CHAIN_PM,
    ("Q3", "Q1"): _CHAIN_MP,
    ("Q3", "Q4"): _CHAIN_MM,
}

ALL_PATTERN_IDS = tuple(f"{ri}{rf}" for ri, rf in PATTERN_ATLAS)

BOUNDARY_TOL = 1e-12
CHAIN_TIE_TOL = 1e-12
DEGENERACY_GAP_TOL = 1e-10


class DegenerateSpectraError(ValueError):
    """The two cubics coincide (B == Bprime): there is no ordering to classify."""


class OrderingMismatchError(RuntimeError):
    """Observed root ordering contradicts the atlas; never ignore this."""


@dataclass(frozen=True)
class OrderingPattern:
    """Classification result: the primary region pair and label chain, the
    actually observed descending label sequence, and every region case the
    point witnesses under the valid representative choices."""

    pattern_id: str
    region_initial: str
    region_final: str
    chain: tuple[str, ...]
    sorted_labels: tuple[str, ...]
    witnessed: tuple[str, ...]
    boundary: bool

    @property
    def label(self) -> str:
        return f"{self.pattern_id}:{'>'.join(self.chain)}"


def region_of(angle3: float) -> str:
    """Quadrant of an angle in [0, 2pi), half-open on the right."""
    x = angle3 % (2.0 * pi)
    return f"Q{int(x // (pi / 2.0)) % 4 + 1}"


def _label_values(a_coeff: float, angle3_i: float, angle3_f: float) -> dict[str, float]:
    ai = labeled_roots(a_coeff, angle3_i)
    bf = labeled_roots(a_coeff, angle3_f)
    return {
        "a1": ai[0], "a2": ai[1], "a3": ai[2],
        "b1": bf[0], "b2": bf[1], "b3": bf[2],
    }


def _chain_holds(values: dict[str, float], chain: tuple[str, ...], tol: float) -> bool:
    return all(values[x] >= values[y] - tol for x, y in zip(chain, chain[1:]))


def _is_boundary(angle3: float) -> bool:
    return abs(angle3 % (pi / 2.0)) <= BOUNDARY_TOL or (pi / 2.0) - (angle3 % (pi / 2.0)) <= BOUNDARY_TOL


def classify_ordering(
    init: CubicSpectrum,
    fin: CubicSpectrum,
    gap_tol: float = DEGENERACY_GAP_TOL,
    tie_tol: float = CHAIN_TIE_TOL,
) -> OrderingPattern:
    """Classify the six labeled roots of a non-degenerate spectrum pair.

    The primary pattern uses the principal representative angles; every other
    valid representative combination is verified against the atlas as well
    and reported in ``witnessed``.  Raises :class:`DegenerateSpectraError`
    when B and Bprime agree within ``gap_tol`` and
    :class:`OrderingMismatchError` when an observed ordering is not the
    atlas's.
    """
    if abs(init.A - fin.A) > 1e-12:
        raise ValueError("spectra do not share the coefficient A")
    if abs(init.b_val - fin.b_val) <= gap_tol:
        raise DegenerateSpectraError(
            f"|B - Bprime| = {abs(init.b_val - fin.b_val):.3e} is below {gap_tol:.0e}"
        )

    t_i = 3.0 * init.theta_angle
    t_f = 3.0 * fin.theta_angle
    reps_i = sorted({t_i, (2.0 * pi - t_i) % (2.0 * pi)})
    reps_f = sorted({t_f, (2.0 * pi - t_f) % (2.0 * pi)})

    witnessed = []
    for ri_angle in reps_i:
        for rf_angle in reps_f:
            pair = (region_of(ri_angle), region_of(rf_angle))
            chain = PATTERN_ATLAS.get(pair)
            if chain is None:
                raise OrderingMismatchError(f"region pair {pair} has no atlas entry")
            values = _label_values(init.A, ri_angle, rf_angle)
            if not _chain_holds(values, chain, tie_tol):
                raise OrderingMismatchError(
                    f"ordering for region pair {pair} deviates from the atlas chain "
                    f"{'>'.join(chain)}: {values}"
                )
            witnessed.append(pair[0] + pair[1])

    region_i, region_f = region_of(t_i), region_of(t_f)
    primary_chain = PATTERN_ATLAS[(region_i, region_f)]
    primary_values = _label_values(init.A, t_i, t_f)
    sorted_labels = tuple(sorted(primary_values, key=primary_values.get, reverse=True))
    return OrderingPattern(
        pattern_id=region_i + region_f,
        region_initial=region_i,
        region_final=region_f,
        chain=primary_chain,
        sorted_labels=sorted_labels,
        witnessed=tuple(dict.fromkeys(witnessed)),
        boundary=_is_boundary(t_i) or _is_boundary(t_f),
    )
