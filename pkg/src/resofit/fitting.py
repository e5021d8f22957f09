"""Classical least-squares and total-least-squares solvers.

A fitting problem is the overdetermined system ``a @ x ~ b`` with more rows
than unknowns. The LS route keeps ``a`` exact and minimizes the residual on
``b`` alone; the TLS route admits corrections to both sides and minimizes
their joint Frobenius norm, which reduces to the smallest singular pair of
the augmented matrix ``c = [a, b]``. The Gram matrix ``d = c^H c`` is the
Hermitian operator whose ground eigenvector encodes the TLS solution; the
quantum-simulation modules target exactly that operator, and this module is
the classical oracle they are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import numerics
from .errors import (DimMismatch, GenericityViolated, NonGeneric,
                     RankDeficient, ZeroVector)

RANK_CUTOFF = 1e-12      # pseudoinverse cutoff relative to the top singular value
GENERICITY_RTOL = 1e-10  # required margin relative to sigma_1 of [a, b]


@dataclass(frozen=True)
class FitProblem:
    """Overdetermined system ``a @ x ~ b`` with rows > cols >= 1."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = numerics.as_complex_matrix(self.a, "a")
        b = numerics.as_complex_vector(self.b, "b")
        if a.shape[1] < 1 or a.shape[0] <= a.shape[1]:
            raise DimMismatch(f"need rows > cols >= 1, got shape {a.shape}")
        if b.size != a.shape[0]:
            raise DimMismatch("b length must equal the row count of a")
        a = a.copy()
        b = b.copy()
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]


@dataclass(frozen=True)
class AugmentedSystem:
    """Augmented matrix ``c = [a, b]`` and its Gram matrix ``d = c^H c``."""

    c: np.ndarray
    d: np.ndarray


@dataclass(frozen=True)
class TlsSolution:
    """TLS solution with its singular pair and the attaining correction.

    ``v_min`` is the unit null-direction of the corrected augmented matrix,
    scaled so its last component is real and strictly negative; ``e`` and
    ``f`` are the rank-one corrections to ``a`` and ``b`` whose joint
    Frobenius norm equals ``sigma_min``.
    """

    x_tls: np.ndarray
    sigma_min: float
    v_min: np.ndarray
    genericity_margin: float
    e: np.ndarray
    f: np.ndarray


class BoundCheck(NamedTuple):
    lhs: float
    rhs: float


def augment(problem: FitProblem) -> AugmentedSystem:
    c = np.hstack([problem.a, problem.b[:, None]])
    return AugmentedSystem(c, c.conj().T @ c)


def ls_solve(problem: FitProblem) -> np.ndarray:
    """Minimizer of ``||a @ x - b||_2`` via the SVD pseudoinverse."""
    fac = numerics.svd(problem.a)
    if fac.singulars[-1] <= RANK_CUTOFF * fac.singulars[0]:
        raise RankDeficient("observation matrix is rank deficient")
    k = fac.singulars.size
    weights = fac.left.conj().T @ problem.b
    return fac.right[:, :k] @ (weights / fac.singulars)


def tls_solve(problem: FitProblem) -> TlsSolution:
    """TLS solution from the smallest singular pair of ``[a, b]``.

    Requires the smallest singular value of the augmented matrix to be
    strictly separated from the smallest one of ``a`` (unique solution)
    and the null direction to have weight on the ``b`` column.
    """
    aug = augment(problem)
    fac_c = numerics.svd(aug.c)
    fac_a = numerics.svd(problem.a)
    sigma_min = float(fac_c.singulars[-1])
    margin = float(fac_a.singulars[-1]) - sigma_min
    if margin <= GENERICITY_RTOL * float(fac_c.singulars[0]):
        raise GenericityViolated(margin)
    n = problem.cols
    u = fac_c.left[:, n]
    v_raw = fac_c.right[:, n]
    v_last = v_raw[n]
    if abs(v_last) < 1e-12:
        raise NonGeneric("null direction has no weight on b; solution not representable")
    v = v_raw * (-v_last.conj() / abs(v_last))
    # rank-one correction; the phase rotation cancels in u v^H, so the raw
    # singular pair can be used directly
    delta = -sigma_min * np.outer(u, v_raw.conj())
    return TlsSolution(
        x_tls=-v[:n] / v[n],
        sigma_min=sigma_min,
        v_min=v,
        genericity_margin=margin,
        e=delta[:, :n],
        f=delta[:, n],
    )


def tls_closed_form(problem: FitProblem, sigma_min: float) -> np.ndarray:
    """TLS solution from the shifted normal equations.

    Solves ``(a^H a - sigma_min^2 I) x = a^H b``; agrees with the singular
    pair route whenever the shift is strictly inside the spectrum gap.
    """
    gram = problem.a.conj().T @ problem.a
    shifted = gram - float(sigma_min) ** 2 * np.eye(problem.cols)
    return numerics.solve_hermitian(shifted, problem.a.conj().T @ problem.b)


def ls_tls_bound(problem: FitProblem) -> BoundCheck:
    """Relative LS-to-TLS distance and its singular-value bound.

    ``lhs = ||x_tls - x_ls|| / ||x_tls||`` never exceeds
    ``rhs = (sigma_min / sbar_n)^2``, which quantifies how good an initial
    guess the LS solution is for the TLS solution.
    """
    sol = tls_solve(problem)
    x_ls = ls_solve(problem)
    fac_a = numerics.svd(problem.a)
    scale = float(np.linalg.norm(sol.x_tls))
    lhs = 0.0 if scale == 0.0 else float(np.linalg.norm(sol.x_tls - x_ls) / scale)
    rhs = float((sol.sigma_min / fac_a.singulars[-1]) ** 2)
    return BoundCheck(lhs, rhs)


def identity_check_eq11(problem: FitProblem) -> float:
    """Residual of the exact identity linking the LS and TLS solutions.

    ``x_tls - x_ls`` equals ``sigma_min^2 (a^H a)^{-1} x_tls`` whenever both
    solutions exist; the returned norm measures how well the two solver
    routes satisfy it.
    """
    sol = tls_solve(problem)
    x_ls = ls_solve(problem)
    gram = problem.a.conj().T @ problem.a
    shifted_term = numerics.solve_hermitian(gram, sol.x_tls)
    return float(np.linalg.norm((sol.x_tls - x_ls) - sol.sigma_min ** 2 * shifted_term))


def fit_quality(problem: FitProblem, x) -> float:
    """Squared overlap of ``b`` and ``a @ x`` as normalized states.

    This is the scalar a swap test between the observation state and the
    fitted state estimates: one exactly when ``a @ x`` is parallel to
    ``b``, zero when orthogonal, and invariant to the scale of either
    input.
    """
    x = numerics.as_complex_vector(x, "x")
    if x.size != problem.cols:
        raise DimMismatch("x length must equal the column count of a")
    norm_b = float(np.linalg.norm(problem.b))
    norm_x = float(np.linalg.norm(x))
    if norm_b == 0.0 or norm_x == 0.0:
        raise ZeroVector("b and x must be nonzero")
    image = problem.a @ (x / norm_x)
    norm_image = float(np.linalg.norm(image))
    if norm_image == 0.0:
        return 0.0
    return float(abs(np.vdot(problem.b / norm_b, image / norm_image)) ** 2)


def solver_report(problem: FitProblem) -> dict[str, float]:
    """Scalar diagnostics for one problem as a flat mapping."""
    sol = tls_solve(problem)
    bound = ls_tls_bound(problem)
    return {
        "sigma_min": sol.sigma_min,
        "genericity_margin": sol.genericity_margin,
        "bound_lhs": bound.lhs,
        "bound_rhs": bound.rhs,
    }
