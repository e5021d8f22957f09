"""Damped-exponential test signals and their linear-prediction systems.

A signal ``s_k = sum_j c_j z_j**k`` with ``z_j = exp(lambda_j * dt)`` obeys
a linear prediction rule of any order at least the number of modes, so the
predictor coefficients solve a Hankel system whose right-hand side is the
next column of samples. Mode frequencies come back as roots of the monic
characteristic polynomial built from those coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import matio, numerics
from .errors import InsufficientSamples
from .fitting import FitProblem


@dataclass(frozen=True)
class PronyParams:
    """Continuous-time modes ``lambdas`` with ``amplitudes``, sampled every ``dt``."""

    lambdas: np.ndarray
    amplitudes: np.ndarray
    dt: float

    def __post_init__(self):
        lam = numerics.as_complex_vector(self.lambdas, "lambdas")
        amp = numerics.as_complex_vector(self.amplitudes, "amplitudes")
        if lam.shape != amp.shape:
            raise ValueError("lambdas and amplitudes must have equal length")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        lam = lam.copy()
        amp = amp.copy()
        lam.setflags(write=False)
        amp.setflags(write=False)
        object.__setattr__(self, "lambdas", lam)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def mode_count(self) -> int:
        return self.lambdas.size


def vanblaricum12() -> PronyParams:
    """Classic 12-mode linear-prediction benchmark.

    Six conjugate mode pairs with unit amplitudes sampled at dt = 0.2; the
    resulting signal is real and starts at ``s_0 = 12``.
    """
    base = [-0.082 + 0.926j, -0.147 + 2.874j, -0.188 + 4.835j,
            -0.220 + 6.800j, -0.247 + 8.767j, -0.270 + 10.733j]
    lams = []
    for lam in base:
        lams.extend([lam, lam.conjugate()])
    return PronyParams(np.array(lams), np.ones(12, dtype=complex), 0.2)


PRESETS = {"vanblaricum12": vanblaricum12}


def gen_signal(params: PronyParams, count: int) -> np.ndarray:
    """First ``count`` samples of the mode sum."""
    if count < 1:
        raise ValueError("count must be at least one")
    z = np.exp(params.lambdas * params.dt)
    powers = z[None, :] ** np.arange(count)[:, None]
    return powers @ params.amplitudes


def build_lp_system(samples, order: int, rows: int) -> FitProblem:
    """Hankel prediction system with ``order`` unknowns over ``rows`` windows.

    ``a[i, j] = s[i + j]`` and ``b[i] = -s[order + i]`` (zero-based), so a
    predictor ``x`` makes ``s[order + i] + sum_j x[j] s[i + j] = 0`` exact
    on noiseless data of at most ``order`` modes.
    """
    s = numerics.as_complex_vector(samples, "samples")
    if order < 1 or rows < 1:
        raise ValueError("order and rows must be positive")
    if s.size < order + rows:
        raise InsufficientSamples(f"need at least {order + rows} samples, have {s.size}")
    a = s[np.add.outer(np.arange(rows), np.arange(order))]
    b = -s[order:order + rows]
    return FitProblem(a, b)


def add_noise(problem: FitProblem, sigma: float, seed: int) -> FitProblem:
    """Perturb every entry of ``a`` and ``b`` with real Gaussian noise.

    Draws come from ``numpy.random.default_rng(seed)`` (PCG64): matrix
    entries first in row-major order, then the right-hand side, so a fixed
    seed pins the perturbed problem exactly. ``sigma = 0`` returns the
    problem unchanged.
    """
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    if sigma == 0.0:
        return FitProblem(problem.a, problem.b)
    rng = np.random.default_rng(seed)
    a = problem.a + rng.normal(0.0, sigma, problem.a.shape)
    b = problem.b + rng.normal(0.0, sigma, problem.b.shape)
    return FitProblem(a, b)


def recover_modes(x, dt: float) -> list[tuple[complex, complex]]:
    """Mode pairs ``(z_j, lambda_j)`` from predictor coefficients.

    The characteristic polynomial is monic with ascending coefficients
    ``x``. Exponents use the principal logarithm, so recovered imaginary
    parts live in ``(-pi/dt, pi/dt]``; modes beyond that Nyquist band alias
    back into it.
    """
    x = numerics.as_complex_vector(x, "x")
    if not dt > 0:
        raise ValueError("dt must be positive")
    roots = numerics.poly_roots(np.concatenate([x, [1.0]]))
    return [(complex(z), complex(np.log(z) / dt)) for z in roots]


def write_signal(path, samples, comments=()) -> None:
    """Signal file: sample count on the first significant line, then ``re im`` lines."""
    s = numerics.as_complex_vector(samples, "samples")
    lines = [str(s.size)]
    lines.extend(matio.format_entry(z) for z in s)
    Path(path).write_text(matio.comment_block(comments) + "\n".join(lines) + "\n")


def read_signal(path) -> np.ndarray:
    lines = matio.significant_lines(Path(path).read_text())
    if not lines:
        raise ValueError(f"{path}: empty signal file")
    try:
        count = int(lines[0])
    except ValueError:
        raise ValueError(f"{path}: malformed sample count {lines[0]!r}") from None
    if count < 1:
        raise ValueError(f"{path}: sample count must be positive")
    if len(lines) - 1 != count:
        raise ValueError(f"{path}: expected {count} samples, found {len(lines) - 1}")
    out = np.empty(count, dtype=complex)
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}: sample {i} must be 're im'")
        try:
            out[i] = complex(float(parts[0]), float(parts[1]))
        except ValueError:
            raise ValueError(f"{path}: sample {i} is non-numeric") from None
    return out


def read_params(path) -> PronyParams:
    """Mode file: ``T <dt>`` first, then ``re(l) im(l) re(c) im(c)`` per mode."""
    lines = matio.significant_lines(Path(path).read_text())
    if not lines:
        raise ValueError(f"{path}: empty parameter file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "T":
        raise ValueError(f"{path}: first significant line must be 'T <value>'")
    try:
        dt = float(head[1])
    except ValueError:
        raise ValueError(f"{path}: malformed sample interval {head[1]!r}") from None
    lams, amps = [], []
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"{path}: mode {i} must have four fields")
        try:
            values = [float(part) for part in parts]
        except ValueError:
            raise ValueError(f"{path}: mode {i} is non-numeric") from None
        lams.append(complex(values[0], values[1]))
        amps.append(complex(values[2], values[3]))
    if not lams:
        raise ValueError(f"{path}: no modes")
    return PronyParams(np.array(lams), np.array(amps), dt)
