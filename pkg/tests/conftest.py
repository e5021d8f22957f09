import sys
from pathlib import Path

import numpy as np
import pytest

SRC = Path(__file__).resolve().parents[1] / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

import resofit as rf  # noqa: E402


def random_generic_problem(rng, max_rows=24, max_cols=6, complex_entries=False,
                           noise=0.05):
    """Random overdetermined problem with a comfortable genericity margin."""
    while True:
        cols = int(rng.integers(1, max_cols + 1))
        rows = int(rng.integers(cols + 2, max(cols + 3, max_rows + 1)))
        if complex_entries:
            a = rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))
            x0 = rng.normal(size=cols) + 1j * rng.normal(size=cols)
            e = rng.normal(size=rows) + 1j * rng.normal(size=rows)
        else:
            a = rng.normal(size=(rows, cols))
            x0 = rng.normal(size=cols)
            e = rng.normal(size=rows)
        problem = rf.FitProblem(a, a @ x0 + noise * e)
        try:
            sol = rf.tls_solve(problem)
        except rf.NonGeneric:
            continue
        sigma_top = rf.svd(rf.augment(problem).c).singulars[0]
        if sol.genericity_margin > 1e-6 * sigma_top:
            return problem


@pytest.fixture(scope="session")
def benchmark_problem():
    signal = rf.gen_signal(rf.vanblaricum12(), 267)
    return rf.build_lp_system(signal, 11, 256)


@pytest.fixture(scope="session")
def benchmark_solution(benchmark_problem):
    return rf.tls_solve(benchmark_problem)


@pytest.fixture(scope="session")
def benchmark_levels(benchmark_problem):
    return rf.hermitian_eig(rf.augment(benchmark_problem).d).eigenvalues


@pytest.fixture()
def toy_problem():
    # C = [[1, 1], [1, 0]]: everything about this problem is known in closed form
    return rf.FitProblem([[1.0], [1.0]], [1.0, 0.0])
