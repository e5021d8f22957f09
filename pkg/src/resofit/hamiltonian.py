"""Probe-plus-register Hamiltonians for the resonant-transition algorithms.

The simulated space is probe (x) register with the probe as the most
significant factor and its ground state |0> first, so index ``q * R + r``
addresses probe level ``q`` and register coordinate ``r``. With the probe
term ``-(omega/2) sigma_z (x) I`` and ``sigma_z |0> = +|0>``, probe |0>
carries energy ``-omega/2`` and |1> carries ``+omega/2``, and a register
level ``lam`` crosses the excited reference level exactly at
``omega = lam - epsilon0``.

The register packs objects of different natural dimension into one space of
size ``R >= max(rows, cols + 1)``: the observation vector occupies the
first ``rows`` coordinates, the Gram matrix of the augmented system the
top-left ``(cols + 1) x (cols + 1)`` block, and the pseudoinverse coupling
block maps the first ``rows`` coordinates onto the first ``cols``. Unused
diagonal entries are parked at ``pad_value`` above the whole spectrum so
they stay off-resonant for any scanned frequency; reference states carry no
weight there, so the dynamics are unaffected.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import DimMismatch, NotNormalized, RankDeficient
from .fitting import FitProblem, augment, ls_solve

MAX_COUPLING = 0.1  # keeps the perturbative two-level picture valid
NORM_ATOL = 1e-12


@dataclass(frozen=True)
class RegisterEmbedding:
    """Register size and padding energy for one fitting problem."""

    logical_dim: int
    register_dim: int
    pad_value: float
    mode: str  # "exact" or "qubit"


@dataclass(frozen=True)
class HamiltonianModel:
    """Assembled Hermitian operator on the probe (x) register space."""

    h: np.ndarray
    omega: float
    epsilon0: float
    coupling: float
    kind: str  # "algo1" or "algo2"
    embedding: RegisterEmbedding | None = None
    reference_state: np.ndarray | None = None


def next_power_of_two(n: int) -> int:
    return 1 << max(0, n - 1).bit_length()


def make_embedding(problem: FitProblem, mode: str = "exact") -> RegisterEmbedding:
    """Smallest register that fits the problem, optionally rounded to a qubit count."""
    if mode not in ("exact", "qubit"):
        raise ValueError(f"unknown embedding mode {mode!r}")
    needed = max(problem.rows, problem.cols + 1)
    register_dim = needed if mode == "exact" else next_power_of_two(needed)
    top = float(numerics.hermitian_eig(augment(problem).d).eigenvalues[-1])
    return RegisterEmbedding(problem.cols + 1, register_dim, top + 1.0, mode)


def embed_vector(v, emb: RegisterEmbedding) -> np.ndarray:
    """Zero-pad a vector into the register coordinates."""
    v = numerics.as_complex_vector(v, "vector")
    if v.size > emb.register_dim:
        raise DimMismatch("vector does not fit in the register")
    out = np.zeros(emb.register_dim, dtype=complex)
    out[:v.size] = v
    return out


def embed_operator(d, emb: RegisterEmbedding) -> np.ndarray:
    """Top-left block plus ``pad_value`` on the unused diagonal."""
    d = numerics.as_complex_matrix(d, "operator")
    k = d.shape[0]
    if d.shape[0] != d.shape[1] or k > emb.register_dim:
        raise DimMismatch("operator does not fit in the register")
    out = np.zeros((emb.register_dim, emb.register_dim), dtype=complex)
    out[:k, :k] = d
    for i in range(k, emb.register_dim):
        out[i, i] = emb.pad_value
    return out


def reference_b(problem: FitProblem, emb: RegisterEmbedding) -> np.ndarray:
    """Normalized observation vector as a register state."""
    return embed_vector(problem.b / np.linalg.norm(problem.b), emb)


def reference_ls(problem: FitProblem, emb: RegisterEmbedding,
                 augmented: bool = False) -> np.ndarray:
    """Normalized LS solution as a register state.

    With ``augmented`` the solution gets a trailing ``-1`` before
    normalization, mirroring the homogeneous form of the TLS ground
    vector. The plain form is the package default; it is the convention
    that reproduces the documented benchmark success probability.
    """
    x = ls_solve(problem)
    if augmented:
        x = np.concatenate([x, [-1.0]])
    return embed_vector(x / np.linalg.norm(x), emb)


def build_F(problem: FitProblem, emb: RegisterEmbedding) -> np.ndarray:
    """Pseudoinverse coupling operator on the register.

    The top-left ``cols x rows`` block is the Moore-Penrose pseudoinverse
    of the observation matrix and every other entry is zero, so applied to
    the embedded observation state it yields the embedded (unnormalized)
    LS solution.
    """
    if emb.register_dim < max(problem.rows, problem.cols + 1):
        raise DimMismatch("register too small for the coupling operator")
    fac = numerics.svd(problem.a)
    if fac.singulars[-1] <= 1e-12 * fac.singulars[0]:
        raise RankDeficient("observation matrix is rank deficient")
    k = fac.singulars.size
    pinv = fac.right[:, :k] @ ((1.0 / fac.singulars)[:, None] * fac.left.conj().T)
    out = np.zeros((emb.register_dim, emb.register_dim), dtype=complex)
    out[:problem.cols, :problem.rows] = pinv
    return out


def _checked_coupling(c) -> float:
    c = float(c)
    if c < 0 or c > MAX_COUPLING:
        raise ValueError(f"coupling must lie in [0, {MAX_COUPLING}]")
    return c


def _assemble(top: np.ndarray, bottom: np.ndarray, drive: np.ndarray) -> np.ndarray:
    r = top.shape[0]
    h = np.zeros((2 * r, 2 * r), dtype=complex)
    h[:r, :r] = top
    h[r:, r:] = bottom
    h[:r, r:] = drive
    h[r:, :r] = drive.conj().T
    return h


def build_h1(problem: FitProblem, omega: float, epsilon0: float, c: float,
             emb: RegisterEmbedding, psi, f_op=None) -> HamiltonianModel:
    """Hamiltonian with a projector reference level and pseudoinverse drive.

    The reference ``|1>|psi>`` is an exact eigenstate of the register term
    with eigenvalue ``epsilon0``. The drive is Hermitized as
    ``c (|0><1| (x) F + |1><0| (x) F^H)``: a bare ``sigma_x (x) F`` would
    not be Hermitian for the pseudoinverse block, while this form is and
    it preserves every transition element ``<0,v| H |1,psi> = c <v|F|psi>``
    that sets the resonant dynamics.
    """
    c = _checked_coupling(c)
    psi = numerics.as_complex_vector(psi, "psi")
    if psi.size != emb.register_dim:
        raise DimMismatch("psi must live on the register")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_ATOL:
        raise NotNormalized("psi must be normalized")
    if f_op is None:
        f_op = build_F(problem, emb)
    else:
        f_op = numerics.as_complex_matrix(f_op, "F")
        if f_op.shape != (emb.register_dim, emb.register_dim):
            raise DimMismatch("F must be register_dim x register_dim")
    r = emb.register_dim
    top = embed_operator(augment(problem).d, emb) - 0.5 * float(omega) * np.eye(r)
    bottom = 0.5 * float(omega) * np.eye(r) + float(epsilon0) * np.outer(psi, psi.conj())
    return HamiltonianModel(_assemble(top, bottom, c * f_op), float(omega),
                            float(epsilon0), c, "algo1", emb, psi)


def build_h2(problem: FitProblem, omega: float, epsilon0: float, c: float,
             emb: RegisterEmbedding) -> HamiltonianModel:
    """Hamiltonian with a flat reference level and identity drive.

    Every probe-excited product state sits at ``omega/2 + epsilon0``, and
    the identity drive connects ``|1>|v>`` to ``|0>|v>`` with strength
    ``c`` for any register vector ``v``; the register reference is chosen
    at simulation time.
    """
    c = _checked_coupling(c)
    r = emb.register_dim
    top = embed_operator(augment(problem).d, emb) - 0.5 * float(omega) * np.eye(r)
    bottom = (0.5 * float(omega) + float(epsilon0)) * np.eye(r)
    return HamiltonianModel(_assemble(top, bottom, c * np.eye(r, dtype=complex)),
                            float(omega), float(epsilon0), c, "algo2", emb, None)


def resonance_omega(lambda_target: float, epsilon0: float) -> float:
    """Probe frequency that makes a register level cross the reference level."""
    return float(lambda_target) - float(epsilon0)
