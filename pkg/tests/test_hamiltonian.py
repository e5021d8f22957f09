import math

import numpy as np
import pytest
from conftest import random_generic_problem

import resofit as rf


def two_level_problem(lam1=0.5, lam2=2.0):
    """Problem whose augmented Gram matrix is diag(lam1, lam2).

    The ground register state is e1 and only that level is reachable from
    the e1 reference through the pseudoinverse drive.
    """
    return rf.FitProblem([[math.sqrt(lam1)], [0.0]], [0.0, math.sqrt(lam2)])


class TestEmbedding:
    def test_exact_mode_size(self, toy_problem):
        emb = rf.make_embedding(toy_problem)
        assert emb.mode == "exact"
        assert emb.logical_dim == 2
        assert emb.register_dim == 2  # max(rows, cols + 1)

    def test_qubit_mode_power_of_two(self):
        rng = np.random.default_rng(31)
        p = random_generic_problem(rng, max_rows=11, max_cols=3)
        emb = rf.make_embedding(p, "qubit")
        assert emb.register_dim >= max(p.rows, p.cols + 1)
        assert emb.register_dim & (emb.register_dim - 1) == 0

    def test_pad_above_spectrum(self):
        rng = np.random.default_rng(32)
        p = random_generic_problem(rng)
        emb = rf.make_embedding(p, "qubit")
        top = rf.hermitian_eig(rf.augment(p).d).eigenvalues[-1]
        assert emb.pad_value > top

    def test_embedded_spectrum(self):
        rng = np.random.default_rng(33)
        p = random_generic_problem(rng, max_rows=9, max_cols=3)
        emb = rf.make_embedding(p, "qubit")
        d = rf.augment(p).d
        levels = rf.hermitian_eig(rf.embed_operator(d, emb)).eigenvalues
        expected = np.sort(np.concatenate([
            rf.hermitian_eig(d).eigenvalues,
            np.full(emb.register_dim - p.cols - 1, emb.pad_value)]))
        np.testing.assert_allclose(levels, expected, atol=1e-12)

    def test_embed_vector_too_long(self, toy_problem):
        emb = rf.make_embedding(toy_problem)
        with pytest.raises(rf.DimMismatch):
            rf.embed_vector(np.ones(5), emb)


class TestBuildF:
    def test_identity_block(self):
        # identity columns plus a zero row: the pseudoinverse block is I
        a = np.vstack([np.eye(2), np.zeros(2)])
        p = rf.FitProblem(a, [0.0, 0.0, 1.0])
        emb = rf.make_embedding(p)
        f = rf.build_F(p, emb)
        np.testing.assert_allclose(f[:2, :2], np.eye(2), atol=1e-12)
        assert np.abs(f[2:, :]).max() == 0.0  # rows beyond the unknowns stay empty

    def test_maps_b_to_ls_solution(self, toy_problem):
        emb = rf.make_embedding(toy_problem)
        f = rf.build_F(toy_problem, emb)
        image = f @ rf.reference_b(toy_problem, emb)
        norm_b = np.linalg.norm(toy_problem.b)
        expected = rf.embed_vector(rf.ls_solve(toy_problem) / norm_b, emb)
        np.testing.assert_allclose(image, expected, atol=1e-12)

    def test_zero_rows_do_not_change_image(self):
        a = np.vstack([np.eye(2), np.zeros(2)])
        b = np.array([1.0, 2.0, 0.0])
        p3 = rf.FitProblem(a, b)
        p4 = rf.FitProblem(np.vstack([a, np.zeros(2)]), np.append(b, 0.0))
        img3 = rf.build_F(p3, rf.make_embedding(p3)) @ rf.reference_b(p3, rf.make_embedding(p3))
        img4 = rf.build_F(p4, rf.make_embedding(p4)) @ rf.reference_b(p4, rf.make_embedding(p4))
        np.testing.assert_allclose(img4[:3], img3[:3], atol=1e-12)

    def test_rank_deficient(self):
        p = rf.FitProblem([[1.0, 1.0], [1.0, 1.0], [1.0, 1.0]], [1.0, 0.0, 0.0])
        with pytest.raises(rf.RankDeficient):
            rf.build_F(p, rf.make_embedding(p))


class TestBuildH1:
    def test_uncoupled_reference_is_eigenstate(self):
        p = two_level_problem()
        emb = rf.make_embedding(p)
        psi = rf.embed_vector([1.0, 0.0], emb)
        model = rf.build_h1(p, 1.5, -1.0, 0.0, emb, psi)
        state = rf.excited_state(psi)
        image = model.h @ state
        expected = (0.5 * 1.5 + (-1.0)) * state
        np.testing.assert_allclose(image, expected, atol=1e-12)

    def test_degeneracy_at_resonance(self):
        # ground level 0.5 with epsilon0 = -1 crosses at omega = 1.5
        p = two_level_problem()
        emb = rf.make_embedding(p)
        psi = rf.embed_vector([1.0, 0.0], emb)
        model = rf.build_h1(p, 1.5, -1.0, 0.0, emb, psi)
        levels = rf.hermitian_eig(model.h).eigenvalues
        crossing = (0.5 + (-1.0)) / 2.0
        assert np.sum(np.abs(levels - crossing) < 1e-12) == 2

    def test_anticrossing_split(self):
        # with coupling the degenerate pair splits by 2 c |<v1|F|psi>| = 2 c sqrt(2)
        p = two_level_problem()
        emb = rf.make_embedding(p)
        psi = rf.embed_vector([1.0, 0.0], emb)
        c = 0.001
        levels = rf.hermitian_eig(rf.build_h1(p, 1.5, -1.0, c, emb, psi).h).eigenvalues
        pair = levels[np.abs(levels - (-0.25)) < 0.01]
        assert pair.size == 2
        assert pair.mean() == pytest.approx(-0.25, abs=1e-12)
        assert pair[1] - pair[0] == pytest.approx(2.0 * c * math.sqrt(2.0), rel=1e-6)

    def test_identity_drive_transition_element(self, toy_problem):
        emb = rf.make_embedding(toy_problem)
        sol = rf.tls_solve(toy_problem)
        psi = rf.embed_vector(sol.v_min, emb)
        c = 0.01
        model = rf.build_h1(toy_problem, 1.0, -1.0, c, emb, psi,
                            f_op=np.eye(emb.register_dim))
        r = emb.register_dim
        bra = np.zeros(2 * r, dtype=complex)
        bra[:r] = psi
        ket = rf.excited_state(psi)
        assert np.vdot(bra, model.h @ ket) == pytest.approx(c, abs=1e-14)

    def test_transition_elements_preserved(self):
        rng = np.random.default_rng(34)
        p = random_generic_problem(rng, max_rows=7, max_cols=3)
        emb = rf.make_embedding(p)
        f = rf.build_F(p, emb)
        psi = rng.normal(size=emb.register_dim) + 1j * rng.normal(size=emb.register_dim)
        psi /= np.linalg.norm(psi)
        c = 0.02
        model = rf.build_h1(p, 0.8, -0.5, c, emb, psi)
        r = emb.register_dim
        for _ in range(5):
            v = rng.normal(size=r) + 1j * rng.normal(size=r)
            v /= np.linalg.norm(v)
            bra = np.zeros(2 * r, dtype=complex)
            bra[:r] = v
            element = np.vdot(bra, model.h @ rf.excited_state(psi))
            assert element == pytest.approx(c * np.vdot(v, f @ psi), abs=1e-12)

    def test_requires_normalized_psi(self, toy_problem):
        emb = rf.make_embedding(toy_problem)
        with pytest.raises(rf.NotNormalized):
            rf.build_h1(toy_problem, 1.0, -1.0, 0.01, emb, np.array([2.0, 0.0]))

    def test_coupling_cap(self, toy_problem):
        emb = rf.make_embedding(toy_problem)
        psi = rf.reference_b(toy_problem, emb)
        with pytest.raises(ValueError):
            rf.build_h1(toy_problem, 1.0, -1.0, 0.5, emb, psi)


class TestBuildH2:
    def test_uncoupled_spectrum(self):
        p = two_level_problem()
        emb = rf.make_embedding(p)
        omega, eps0 = 1.3, -1.0
        levels = rf.hermitian_eig(rf.build_h2(p, omega, eps0, 0.0, emb).h).eigenvalues
        d_levels = rf.hermitian_eig(rf.embed_operator(rf.augment(p).d, emb)).eigenvalues
        expected = np.sort(np.concatenate([
            np.full(emb.register_dim, omega / 2.0 + eps0),
            -omega / 2.0 + d_levels]))
        np.testing.assert_allclose(levels, expected, atol=1e-12)

    def test_degeneracy_at_resonance(self):
        p = two_level_problem()
        emb = rf.make_embedding(p)
        levels = rf.hermitian_eig(rf.build_h2(p, 1.5, -1.0, 0.0, emb).h).eigenvalues
        crossing = (0.5 + (-1.0)) / 2.0
        # the whole excited manifold sits at the crossing plus the ground level
        assert np.sum(np.abs(levels - crossing) < 1e-12) == emb.register_dim + 1

    def test_pad_states_above_logical(self):
        rng = np.random.default_rng(35)
        p = random_generic_problem(rng, max_rows=6, max_cols=2)
        emb = rf.make_embedding(p, "qubit")
        omega = 1.0
        levels = rf.hermitian_eig(rf.build_h2(p, omega, -1.0, 0.0, emb).h).eigenvalues
        top_logical = rf.hermitian_eig(rf.augment(p).d).eigenvalues[-1]
        pad_level = -omega / 2.0 + emb.pad_value
        assert pad_level > -omega / 2.0 + top_logical
        assert np.sum(np.abs(levels - pad_level) < 1e-9) >= emb.register_dim - p.cols - 1


class TestHermiticity:
    @pytest.mark.parametrize("kind", ["algo1", "algo2"])
    def test_assembled_hermitian(self, kind):
        rng = np.random.default_rng(36)
        for k in range(5):
            p = random_generic_problem(rng, max_rows=8, max_cols=3,
                                       complex_entries=bool(k % 2))
            emb = rf.make_embedding(p)
            if kind == "algo1":
                psi = rf.reference_b(p, emb)
                model = rf.build_h1(p, 1.1, -0.7, 0.05, emb, psi)
            else:
                model = rf.build_h2(p, 1.1, -0.7, 0.05, emb)
            assert np.abs(model.h - model.h.conj().T).max() <= 1e-12

    def test_resonance_alignment_every_level(self):
        rng = np.random.default_rng(37)
        p = random_generic_problem(rng, max_rows=6, max_cols=2)
        emb = rf.make_embedding(p)
        eps0 = -2.0
        d_levels = rf.hermitian_eig(rf.augment(p).d).eigenvalues
        for lam in d_levels:
            omega = rf.resonance_omega(lam, eps0)
            levels = rf.hermitian_eig(rf.build_h2(p, omega, eps0, 0.0, emb).h).eigenvalues
            crossing = (lam + eps0) / 2.0
            assert np.abs(levels - crossing).min() <= 1e-10
            assert np.sum(np.abs(levels - crossing) < 1e-10) >= 2


class TestResonanceOmega:
    def test_reference_values(self):
        assert rf.resonance_omega(0.0046, -1.0) == pytest.approx(1.0046, abs=1e-15)
        assert rf.resonance_omega(0.908, -1.0) == pytest.approx(1.908, abs=1e-15)
        assert rf.resonance_omega(0.0, 0.0) == 0.0
