"""Exact state-vector simulation of the two resonant-transition algorithms.

Frequency sweeps drive an excited probe against the register, record the
probe decay probability on a frequency grid and annotate resonance peaks.
Collapse and iteration condition on the probe being found in its ground
state and renormalize the register: the exact conditional state is tracked
instead of sampling trajectories, so reported success probabilities are
exact products of per-step decay probabilities. Sampled measurement
statistics are available separately through a seeded generator.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matio, numerics
from .errors import NotNormalized, ZeroProbability
from .fitting import FitProblem, tls_solve
from .hamiltonian import (HamiltonianModel, RegisterEmbedding, build_F,
                          build_h1, build_h2, embed_vector, make_embedding,
                          reference_b, reference_ls, resonance_omega)

PEAK_THRESHOLD = 0.5
ZERO_PROBABILITY_ATOL = 1e-12
STATE_NORM_ATOL = 1e-9


@dataclass(frozen=True)
class SweepPlan:
    """Frequency grid plus the physics knobs shared by every grid point.

    The grid is half-open: ``omega_k = omega_min + k * delta_omega`` for
    ``k = 0 .. points - 1`` with ``delta_omega = (omega_max - omega_min) / points``.
    """

    omega_min: float
    omega_max: float
    points: int
    epsilon0: float
    coupling: float
    evolution_time: float

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("points must be at least one")
        if self.omega_max < self.omega_min:
            raise ValueError("omega_max must not be below omega_min")
        if self.evolution_time < 0:
            raise ValueError("evolution time must be nonnegative")

    @property
    def delta_omega(self) -> float:
        return (self.omega_max - self.omega_min) / self.points

    def grid(self) -> np.ndarray:
        return self.omega_min + self.delta_omega * np.arange(self.points)


@dataclass(frozen=True)
class SweepResult:
    """Decay probability per grid frequency plus annotated peaks."""

    omegas: np.ndarray
    p_decay: np.ndarray
    epsilon0: float
    peaks: list[tuple[float, float]]  # (omega_peak, lambda_estimate)


@dataclass(frozen=True)
class CollapseResult:
    state: np.ndarray   # register state conditioned on probe decay
    fidelity: float     # squared overlap with the TLS ground vector
    p_success: float    # probe decay probability before conditioning


@dataclass(frozen=True)
class Algorithm2Result:
    state: np.ndarray
    success_prob: float
    per_step_probs: list[float]
    fidelity: float


def excited_state(psi) -> np.ndarray:
    """Probe excited, register in ``psi``."""
    psi = numerics.as_complex_vector(psi, "psi")
    out = np.zeros(2 * psi.size, dtype=complex)
    out[psi.size:] = psi
    return out


def probe_decay_probability(state) -> float:
    """Total weight on the probe-ground half of the basis."""
    amps = numerics.as_complex_vector(state, "state")
    r = amps.size // 2
    return float(np.linalg.norm(amps[:r]) ** 2)


def evolve(model: HamiltonianModel, state, t: float) -> np.ndarray:
    """Propagate a normalized state for time ``t`` under the model."""
    state = numerics.as_complex_vector(state, "state")
    if abs(np.linalg.norm(state) - 1.0) > STATE_NORM_ATOL:
        raise NotNormalized("state must be normalized")
    if t < 0:
        raise ValueError("t must be nonnegative")
    return numerics.expm_unitary(model.h, t) @ state


def _propagate(eig: numerics.HermEig, state: np.ndarray, t: float) -> np.ndarray:
    # same spectral propagator as evolve(), applied to one vector so a sweep
    # pays a single eigendecomposition per frequency point
    phases = np.exp(-1j * eig.eigenvalues * float(t))
    return eig.eigenvectors @ (phases * (eig.eigenvectors.conj().T @ state))


def find_peaks(omegas, probs, epsilon0: float) -> list[tuple[float, float]]:
    """Samples beating both neighbors and the absolute 0.5 threshold.

    Each peak frequency is refined to the vertex of the parabola through
    the sample and its two neighbors before converting to a level estimate
    ``lambda = omega_peak + epsilon0``.
    """
    omegas = np.asarray(omegas, dtype=float)
    probs = np.asarray(probs, dtype=float)
    peaks = []
    for i in range(1, probs.size - 1):
        if probs[i] <= PEAK_THRESHOLD:
            continue
        if not (probs[i] > probs[i - 1] and probs[i] > probs[i + 1]):
            continue
        denom = probs[i - 1] - 2.0 * probs[i] + probs[i + 1]
        step = omegas[i + 1] - omegas[i]
        shift = 0.0 if denom == 0.0 else 0.5 * step * (probs[i - 1] - probs[i + 1]) / denom
        omega_peak = float(omegas[i] + shift)
        peaks.append((omega_peak, omega_peak + float(epsilon0)))
    return peaks


def _checked_reference(ref: np.ndarray) -> np.ndarray:
    if abs(np.linalg.norm(ref) - 1.0) > STATE_NORM_ATOL:
        raise NotNormalized("register reference state must be normalized")
    return ref


def _run_sweep(plan: SweepPlan, build, ref: np.ndarray) -> SweepResult:
    omegas = plan.grid()
    probs = np.empty(plan.points)
    initial = excited_state(ref)
    for k, omega in enumerate(omegas):
        model = build(float(omega))
        eig = numerics.hermitian_eig(model.h)
        final = _propagate(eig, initial, plan.evolution_time)
        probs[k] = probe_decay_probability(final)
    probs = np.clip(probs, 0.0, 1.0)
    return SweepResult(omegas, probs, plan.epsilon0,
                       find_peaks(omegas, probs, plan.epsilon0))


def sweep_algorithm1(problem: FitProblem, plan: SweepPlan, psi=None,
                     emb: RegisterEmbedding | None = None) -> SweepResult:
    """Scan the probe frequency against the projector-reference Hamiltonian.

    The register reference defaults to the normalized observation vector;
    resonances appear at ``lambda_k - epsilon0`` for every register level
    the pseudoinverse drive can reach from the reference.
    """
    emb = make_embedding(problem) if emb is None else emb
    ref = reference_b(problem, emb) if psi is None else embed_vector(psi, emb)
    _checked_reference(ref)

    def build(omega):
        return build_h1(problem, omega, plan.epsilon0, plan.coupling, emb, ref)

    return _run_sweep(plan, build, ref)


def sweep_algorithm2(problem: FitProblem, plan: SweepPlan, phi0=None,
                     emb: RegisterEmbedding | None = None,
                     ls_augmented: bool = False) -> SweepResult:
    """Scan the probe frequency against the flat-reference Hamiltonian.

    The register reference defaults to the normalized LS solution; peak
    weights follow the expansion of the reference in register eigenvectors.
    """
    emb = make_embedding(problem) if emb is None else emb
    ref = reference_ls(problem, emb, augmented=ls_augmented) if phi0 is None \
        else embed_vector(phi0, emb)
    _checked_reference(ref)

    def build(omega):
        return build_h2(problem, omega, plan.epsilon0, plan.coupling, emb)

    return _run_sweep(plan, build, ref)


def collapse_algorithm1(problem: FitProblem, omega: float, epsilon0: float,
                        c: float, t: float, psi=None,
                        emb: RegisterEmbedding | None = None,
                        f_op=None) -> CollapseResult:
    """Evolve at a resonant frequency and condition on probe decay.

    Projects the final state onto the probe-ground subspace, renormalizes
    the register and reports its squared overlap with the TLS ground
    vector together with the pre-measurement decay probability.
    """
    emb = make_embedding(problem) if emb is None else emb
    ref = reference_b(problem, emb) if psi is None else embed_vector(psi, emb)
    _checked_reference(ref)
    sol = tls_solve(problem)
    model = build_h1(problem, omega, epsilon0, c, emb, ref, f_op=f_op)
    eig = numerics.hermitian_eig(model.h)
    final = _propagate(eig, excited_state(ref), float(t))
    r = emb.register_dim
    p_decay = float(np.linalg.norm(final[:r]) ** 2)
    if p_decay < ZERO_PROBABILITY_ATOL:
        raise ZeroProbability(f"decay probability {p_decay:.3e} too small to condition on")
    register = final[:r] / np.linalg.norm(final[:r])
    target = embed_vector(sol.v_min, emb)
    fidelity = float(abs(np.vdot(target, register)) ** 2)
    return CollapseResult(register, fidelity, min(p_decay, 1.0))


def algorithm2_iterate(problem: FitProblem, phi0, epsilon0: float, c: float,
                       iterations: int, *, omega: float | None = None,
                       tau: float | None = None,
                       emb: RegisterEmbedding | None = None,
                       ls_augmented: bool = False) -> Algorithm2Result:
    """Purify a register guess toward the TLS ground vector.

    Each round excites the probe, evolves for a quarter drive period
    ``tau = pi / (2 c)`` at the ground-level resonance, conditions on probe
    decay and renormalizes. ``phi0 = None`` starts from the normalized LS
    solution; ``omega = None`` sets the exact resonance from the computed
    ground level. The success probability is the product of per-round
    decay probabilities and, for a good guess, is dominated by the squared
    guess/ground-state overlap.
    """
    if iterations < 1:
        raise ValueError("iterations must be at least one")
    c = float(c)
    if c <= 0:
        raise ValueError("coupling must be positive")
    emb = make_embedding(problem) if emb is None else emb
    sol = tls_solve(problem)
    phi = reference_ls(problem, emb, augmented=ls_augmented) if phi0 is None \
        else embed_vector(phi0, emb)
    _checked_reference(phi)
    if omega is None:
        omega = resonance_omega(sol.sigma_min ** 2, epsilon0)
    if tau is None:
        tau = np.pi / (2.0 * c)
    model = build_h2(problem, omega, epsilon0, c, emb)
    eig = numerics.hermitian_eig(model.h)
    r = emb.register_dim
    per_step = []
    success = 1.0
    for _ in range(int(iterations)):
        final = _propagate(eig, excited_state(phi), float(tau))
        p = float(np.linalg.norm(final[:r]) ** 2)
        if p < ZERO_PROBABILITY_ATOL:
            raise ZeroProbability(f"decay probability {p:.3e} too small to condition on")
        per_step.append(min(p, 1.0))
        success *= min(p, 1.0)
        phi = final[:r] / np.linalg.norm(final[:r])
    target = embed_vector(sol.v_min, emb)
    fidelity = float(abs(np.vdot(target, phi)) ** 2)
    return Algorithm2Result(phi, success, per_step, fidelity)


def two_level_model(q: float, t: float) -> float:
    """Resonant two-level decay probability ``sin^2(q t / 2)``."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    return float(np.sin(0.5 * float(q) * float(t)) ** 2)


def ground_transition_element(problem: FitProblem, psi=None,
                              emb: RegisterEmbedding | None = None) -> complex:
    """Matrix element ``<v_ground| F |psi>`` that sets the resonant Rabi rate.

    On resonance the decay probability follows ``sin^2(Q t / 2)`` with
    ``Q = 2 c |<v_ground| F |psi>|`` as long as the register gap dwarfs the
    drive strength.
    """
    emb = make_embedding(problem) if emb is None else emb
    ref = reference_b(problem, emb) if psi is None else embed_vector(psi, emb)
    sol = tls_solve(problem)
    target = embed_vector(sol.v_min, emb)
    return complex(np.vdot(target, build_F(problem, emb) @ ref))


def sample_measurements(probabilities, shots: int, seed: int) -> np.ndarray:
    """Per-frequency success counts from seeded Bernoulli sampling.

    Counts are drawn in grid order as ``Generator.binomial(shots, p)`` from
    ``numpy.random.default_rng(seed)`` (PCG64), so a fixed seed reproduces
    the counts bit for bit.
    """
    probs = np.asarray(probabilities, dtype=float)
    if shots < 1:
        raise ValueError("shots must be at least one")
    if probs.size and (probs.min() < 0.0 or probs.max() > 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    return np.array([int(rng.binomial(int(shots), p)) for p in probs])


def apply_sampling(result: SweepResult, shots: int, seed: int) -> SweepResult:
    """Replace exact probabilities with sampled frequencies, re-annotating peaks."""
    counts = sample_measurements(result.p_decay, shots, seed)
    estimates = counts / float(shots)
    return SweepResult(result.omegas, estimates, result.epsilon0,
                       find_peaks(result.omegas, estimates, result.epsilon0))


def sweep_csv(result: SweepResult, comments=()) -> str:
    """Comma-separated spectrum with peak annotations as trailing comments."""
    lines = [f"# {line}" for line in comments]
    lines.append("omega,p_decay")
    for omega, p in zip(result.omegas, result.p_decay):
        lines.append(f"{matio.format_float(omega)},{matio.format_float(p)}")
    for omega_peak, lam in result.peaks:
        lines.append(f"# peak omega={matio.format_float(omega_peak)}"
                     f" lambda={matio.format_float(lam)}")
    return "\n".join(lines) + "\n"
