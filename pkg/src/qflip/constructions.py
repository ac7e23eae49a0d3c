"""Builders for the shared states of the flip experiments, and the experiments.

Each experiment pits an initial qutrit-times-two-qubit state against the state
a hypothetical exact flipping device would produce from it, then compares the
two local spectra under the majorization criterion.  A deterministic local
conversion between the two would have to exist if the device did; the spectra
come out incomparable instead, except exactly on great-circle (degenerate)
parameter sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import pi, sqrt

import numpy as np

from .bloch import (
    FlipParams,
    canonical_triple,
    density_to_bloch,
    flip,
    qubit_to_bloch,
    random_qubit,
)
from .cubic import CubicSpectrum, boundary_proximity, cubic_coefficients, cubic_roots
from .linalg import DimensionError, kron, partial_trace
from .ordering import DegenerateSpectraError, OrderingPattern, classify_ordering
from .schmidt import PureState, Verdict, schmidt_decompose, verdict

SPECTRUM_AGREEMENT_TOL = 1e-9
DEFAULT_DEGENERACY_MARGIN = 1e-6
DEFAULT_FLIPPER_SEED = 7

# Probability weights of the flipper experiment's two states.
FLIPPER_WEIGHTS_INITIAL = (0.51, 0.30, 0.19)
FLIPPER_WEIGHTS_FINAL = (0.49, 0.36, 0.15)
# Exact axes-case spectra: (2/3, 1/6, 1/6) against (1/3 +- 1/(2 sqrt 3)).
AXES_LAMBDA_INITIAL = (2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0)
AXES_LAMBDA_FINAL = (
    1.0 / 3.0 + 0.5 / sqrt(3.0),
    1.0 / 3.0,
    1.0 / 3.0 - 0.5 / sqrt(3.0),
)

AXES_PARAMS = FlipParams(a=1.0 / sqrt(2.0), c=1.0 / sqrt(2.0), theta=pi / 2.0)

_QUTRIT_BASIS = tuple(np.eye(3, dtype=complex)[j] for j in range(3))


class VerificationError(RuntimeError):
    """An experiment's built-in assertion failed."""


def _route_tolerance(coeff_a: float, *b_vals: float) -> float:
    """Cross-route agreement tolerance, widened near repeated-root boundaries.

    Within ~1e-9 of |B| = 2 A^{3/2} the closed-form roots split a near-double
    pair only to O(sqrt(eps)) while the eigensolver stays fully accurate, so
    the two routes legitimately differ by up to ~4 sqrt(A * eps) there.
    """
    tol = SPECTRUM_AGREEMENT_TOL
    for b_val in b_vals:
        if boundary_proximity(coeff_a, b_val) < 1e-9:
            tol = max(tol, 4.0 * sqrt(max(coeff_a, 0.0) * 1e-15))
    return tol


def _qutrit_sum(blocks: list[np.ndarray], phases: list[complex]) -> PureState:
    amps = sum(g * kron(e, blk) for e, blk, g in zip(_QUTRIT_BASIS, blocks, phases))
    return PureState(amps / sqrt(3.0), (3, 2, 2))


def build_axes_state() -> PureState:
    """Initial state of the axes experiment: each qutrit level tags a product
    of two of the x/y/z axis qubits."""
    psi_z = np.array([1.0, 0.0], dtype=complex)
    psi_x = np.array([1.0, 1.0], dtype=complex) / sqrt(2.0)
    psi_y = np.array([1.0, 1.0j], dtype=complex) / sqrt(2.0)
    blocks = [kron(psi_z, psi_z), kron(psi_x, psi_y), kron(psi_y, psi_x)]
    return _qutrit_sum(blocks, [1.0, 1.0, 1.0])


def build_axes_state_flipped(chi: float = 0.0, eta: float = 0.0) -> PureState:
    """Axes state after flipping each second qubit, with free phases."""
    psi_z = np.array([1.0, 0.0], dtype=complex)
    psi_x = np.array([1.0, 1.0], dtype=complex) / sqrt(2.0)
    psi_y = np.array([1.0, 1.0j], dtype=complex) / sqrt(2.0)
    blocks = [
        kron(psi_z, flip(psi_z)),
        kron(psi_x, flip(psi_y)),
        kron(psi_y, flip(psi_x)),
    ]
    return _qutrit_sum(blocks, [1.0, np.exp(1j * chi), np.exp(1j * eta)])


def build_flipper_pair(psi) -> tuple[PureState, PureState]:
    """The two correlated states whose interconversion would flip ``psi``.

    Bob's three orthogonal levels are realized on his two qubits as
    |psi psi>, |psibar psi>, |psibar psibar>, so that tracing everything but
    his first qubit leaves a mixture of |psi> and |psibar> whose weights
    differ between the two states.
    """
    psi = np.asarray(psi, dtype=complex)
    psi_bar = flip(psi)
    levels = [kron(psi, psi), kron(psi_bar, psi), kron(psi_bar, psi_bar)]

    def assemble(weights):
        amps = sum(
            sqrt(w) * kron(e, lvl) for e, lvl, w in zip(_QUTRIT_BASIS, levels, weights)
        )
        return PureState(amps, (3, 2, 2))

    return assemble(FLIPPER_WEIGHTS_INITIAL), assemble(FLIPPER_WEIGHTS_FINAL)


def bob_qubit_reduction(state: PureState) -> np.ndarray:
    """Density matrix of Bob's first qubit in a (3, 2, 2) state."""
    if state.dims != (3, 2, 2):
        raise DimensionError(f"expected dims (3, 2, 2), got {state.dims}")
    return partial_trace(state.density(), state.dims, keep=[1])


def build_family_state(p: FlipParams) -> PureState:
    """General family state: levels tag |0 0>, |psi phi> and |phi psi>."""
    zero, psi, phi = canonical_triple(p)
    blocks = [kron(zero, zero), kron(psi, phi), kron(phi, psi)]
    return _qutrit_sum(blocks, [1.0, 1.0, 1.0])


def build_family_state_flipped(p: FlipParams, mu: float = 0.0, nu: float = 0.0) -> PureState:
    """Family state after flipping Bob's second qubit, with device phases."""
    zero, psi, phi = canonical_triple(p)
    blocks = [kron(zero, flip(zero)), kron(psi, flip(phi)), kron(phi, flip(psi))]
    return _qutrit_sum(blocks, [1.0, np.exp(1j * nu), np.exp(1j * mu)])


def family_reduced_initial(p: FlipParams) -> np.ndarray:
    """Closed form of the qutrit-side reduction of :func:`build_family_state`."""
    _, psi, phi = canonical_triple(p)
    ac = p.a * p.c
    overlap2 = abs(np.vdot(psi, phi)) ** 2
    m = np.array(
        [
            [1.0, ac, ac],
            [ac, 1.0, overlap2],
            [ac, overlap2, 1.0],
        ],
        dtype=complex,
    )
    return m / 3.0


def family_reduced_flipped(p: FlipParams, mu: float = 0.0, nu: float = 0.0) -> np.ndarray:
    """Closed form of the qutrit-side reduction of the flipped family state.

    Under this package's complement convention the off-diagonal a*c entries
    carry a plus sign; conventions whose complement is the negative of ours
    produce the same matrix with both phases shifted by pi, and the spectrum
    is identical either way.
    """
    _, psi, phi = canonical_triple(p)
    ac = p.a * p.c
    phi_psi = np.vdot(phi, psi)
    psi_phi = np.vdot(psi, phi)
    m = np.array(
        [
            [1.0, ac * np.exp(-1j * nu), ac * np.exp(-1j * mu)],
            [ac * np.exp(1j * nu), 1.0, phi_psi**2 * np.exp(1j * (nu - mu))],
            [ac * np.exp(1j * mu), psi_phi**2 * np.exp(1j * (mu - nu)), 1.0],
        ],
        dtype=complex,
    )
    return m / 3.0


@dataclass(frozen=True)
class FlipExperimentResult:
    """Full record of one general-family evaluation."""

    params: FlipParams
    mu: float
    nu: float
    coeff_a: float
    coeff_b: float
    coeff_bprime: float
    analytic_initial: CubicSpectrum
    analytic_final: CubicSpectrum
    numeric_initial: np.ndarray
    numeric_final: np.ndarray
    max_err: float
    verdict: Verdict
    ordering: OrderingPattern | None
    degenerate: bool


def general_flip_experiment(
    p: FlipParams,
    mu: float = 0.0,
    nu: float = 0.0,
    margin: float = DEFAULT_DEGENERACY_MARGIN,
) -> FlipExperimentResult:
    """Evaluate one family point along both routes and classify the pair.

    The analytic route solves the two characteristic cubics in closed form;
    the numeric route builds the actual composite states and eigensolves
    their reductions.  The two must agree within ``SPECTRUM_AGREEMENT_TOL``.
    Points with |a b c d sin theta| <= ``margin`` are reported as degenerate
    (no ordering, no incomparability assertion); everywhere else the verdict
    must come out Incomparable, anything less raises
    :class:`VerificationError`.
    """
    coeff_a, coeff_b, coeff_bp = cubic_coefficients(p)
    analytic_i = cubic_roots(coeff_a, coeff_b)
    analytic_f = cubic_roots(coeff_a, coeff_bp)

    numeric_i = schmidt_decompose(build_family_state(p), cut=[0])
    numeric_f = schmidt_decompose(build_family_state_flipped(p, mu, nu), cut=[0])

    max_err = float(
        max(
            np.max(np.abs(analytic_i.roots - numeric_i)),
            np.max(np.abs(analytic_f.roots - numeric_f)),
        )
    )
    route_tol = _route_tolerance(coeff_a, coeff_b, coeff_bp)
    if max_err > route_tol:
        raise VerificationError(
            f"analytic and numeric spectra disagree by {max_err:.3e} at {p}"
        )

    degenerate = abs(p.degeneracy) <= margin
    result_verdict = verdict(numeric_i, numeric_f)

    ordering = None
    if not degenerate:
        if result_verdict is not Verdict.INCOMPARABLE:
            raise VerificationError(
                f"expected Incomparable at non-degenerate point {p}, got {result_verdict}"
            )
        try:
            ordering = classify_ordering(analytic_i, analytic_f, tie_tol=route_tol)
        except DegenerateSpectraError:
            ordering = None

    return FlipExperimentResult(
        params=p,
        mu=mu,
        nu=nu,
        coeff_a=coeff_a,
        coeff_b=coeff_b,
        coeff_bprime=coeff_bp,
        analytic_initial=analytic_i,
        analytic_final=analytic_f,
        numeric_initial=numeric_i,
        numeric_final=numeric_f,
        max_err=max_err,
        verdict=result_verdict,
        ordering=ordering,
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class AxesExperimentResult:
    chi: float
    eta: float
    lambda_initial: np.ndarray
    lambda_final: np.ndarray
    max_err: float
    verdict: Verdict
    ordering: OrderingPattern | None


def axes_experiment(chi: float = 0.0, eta: float = 0.0) -> AxesExperimentResult:
    """Run the axes experiment and assert the spectra are incomparable."""
    lam_i = schmidt_decompose(build_axes_state(), cut=[0])
    lam_f = schmidt_decompose(build_axes_state_flipped(chi, eta), cut=[0])
    max_err = float(
        max(
            np.max(np.abs(lam_i - np.array(AXES_LAMBDA_INITIAL))),
            np.max(np.abs(lam_f - np.array(AXES_LAMBDA_FINAL))),
        )
    )
    v = verdict(lam_i, lam_f)
    if v is not Verdict.INCOMPARABLE:
        raise VerificationError(f"axes experiment expected Incomparable, got {v}")

    coeff_a, coeff_b, coeff_bp = cubic_coefficients(AXES_PARAMS)
    ordering = classify_ordering(cubic_roots(coeff_a, coeff_b), cubic_roots(coeff_a, coeff_bp))
    return AxesExperimentResult(
        chi=chi,
        eta=eta,
        lambda_initial=lam_i,
        lambda_final=lam_f,
        max_err=max_err,
        verdict=v,
        ordering=ordering,
    )


@dataclass(frozen=True)
class FlipperExperimentResult:
    seed: int
    psi: np.ndarray
    direction: np.ndarray
    bloch_initial: np.ndarray
    bloch_final: np.ndarray
    lambda_initial: np.ndarray
    lambda_final: np.ndarray
    max_err: float
    verdict: Verdict


def flipper_experiment(seed: int = DEFAULT_FLIPPER_SEED) -> FlipperExperimentResult:
    """Run the flipper experiment for a seeded random qubit.

    Asserts that Bob's local qubit carries +0.02 times the qubit's Bloch
    vector in the initial state and -0.02 times it in the final one, and that
    the pair is incomparable: converting one state to the other would reverse
    an arbitrary spin direction.
    """
    rng = np.random.default_rng(seed)
    psi = random_qubit(rng)
    direction = qubit_to_bloch(psi)
    state_i, state_f = build_flipper_pair(psi)

    bloch_i = density_to_bloch(bob_qubit_reduction(state_i))
    bloch_f = density_to_bloch(bob_qubit_reduction(state_f))
    dev = max(
        np.max(np.abs(bloch_i - 0.02 * direction)),
        np.max(np.abs(bloch_f + 0.02 * direction)),
    )
    if dev > 1e-12:
        raise VerificationError(f"local Bloch vectors deviate from +-0.02 by {dev:.3e}")

    lam_i = schmidt_decompose(state_i, cut=[0])
    lam_f = schmidt_decompose(state_f, cut=[0])
    max_err = float(
        max(
            np.max(np.abs(lam_i - np.array(FLIPPER_WEIGHTS_INITIAL))),
            np.max(np.abs(lam_f - np.array(FLIPPER_WEIGHTS_FINAL))),
        )
    )
    v = verdict(lam_i, lam_f)
    if v is not Verdict.INCOMPARABLE:
        raise VerificationError(f"flipper experiment expected Incomparable, got {v}")
    return FlipperExperimentResult(
        seed=seed,
        psi=psi,
        direction=direction,
        bloch_initial=bloch_i,
        bloch_final=bloch_f,
        lambda_initial=lam_i,
        lambda_final=lam_f,
        max_err=max_err,
        verdict=v,
    )
