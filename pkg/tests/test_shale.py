import numpy as np
import pytest

from quantamp.caves_bound import AmplifierDCSpec, optimal_dc_matrix
from quantamp.dup_linalg import bogoliubov_residual
from quantamp.errors import ContractError, DimensionError, NotSymplecticError
from quantamp.shale import (
    BeamsplitterParams,
    ShaleFactors,
    beamsplitter_params,
    bs_matrix,
    residual_phase,
    shale_decompose,
    shale_reconstruct,
    takagi,
    wrap_angle,
)

SIX_DB_S1 = np.array([[0.5240, 0.8517], [0.8517, -0.5240]])
SIX_DB_S2 = np.array([[-0.6840, -0.7295], [-0.7295, 0.6840]])


def random_unitary(rng, n=2):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def angle_close(a, b, tol):
    return abs(wrap_angle(a - b)) < tol


class TestShaleDecompose:
    """Test suite for shale_decompose and shale_reconstruct"""

    def setup_method(self):
        """Setup optimal matrix for g11 = 2"""
        self.optimal = optimal_dc_matrix(AmplifierDCSpec(2)).full()
        self.rng = np.random.default_rng(1234)

    def test_optimal_matrix(self):
        """Squeeze parameters match and reconstruction is exact"""
        f = shale_decompose(self.optimal)
        assert f.r1 == pytest.approx(1.6139, abs=1e-3)
        assert f.r2 == pytest.approx(-1.1327, abs=1e-3)
        assert abs(f.r1) >= abs(f.r2)
        assert np.abs(shale_reconstruct(f) - self.optimal).max() < 1e-9

    def test_rounded_factors_reconstruct(self):
        """Printed factors reproduce the optimal matrix to print precision"""
        f = ShaleFactors(SIX_DB_S1 / np.linalg.norm(SIX_DB_S1[0]), SIX_DB_S2 / np.linalg.norm(SIX_DB_S2[0]),
                         1.6139, -1.1327)
        assert np.abs(shale_reconstruct(f) - self.optimal).max() < 1e-3

    def test_identity(self):
        """Identity decomposes with r = 0 and S1 S2 = -I"""
        f = shale_decompose(np.eye(4))
        assert f.r1 == 0.0 and f.r2 == 0.0
        assert np.allclose(f.S1 @ f.S2, -np.eye(2), atol=1e-12)

    def test_zero_squeeze_gauge(self):
        """Free gauge puts a real positive first nonzero entry in each S1 column"""
        f = shale_decompose(np.eye(4))
        for k in range(2):
            column = f.S1[:, k]
            first = column[np.argmax(np.abs(column) > 1e-12)]
            assert abs(first.imag) < 1e-12 and first.real > 0

    def test_reconstruct_trivial(self):
        """r = 0 with identity unitaries gives -I"""
        f = ShaleFactors(np.eye(2), np.eye(2), 0.0, 0.0)
        assert np.array_equal(shale_reconstruct(f), -np.eye(4))

    def test_reconstruct_symplectic(self):
        """Any factors give a symplectic matrix"""
        for _ in range(20):
            f = ShaleFactors(random_unitary(self.rng), random_unitary(self.rng), *self.rng.uniform(-3, 3, 2))
            assert bogoliubov_residual(shale_reconstruct(f)) < 1e-10 * np.cosh(3) ** 2

    def test_reconstruct_rejects_non_unitary(self):
        """Non-unitary S is a contract error"""
        with pytest.raises(ContractError):
            shale_reconstruct(ShaleFactors(2 * np.eye(2), np.eye(2), 0.0, 0.0))

    def test_round_trip_random(self):
        """decompose(reconstruct(f)) reconstructs the same matrix"""
        for _ in range(50):
            f = ShaleFactors(random_unitary(self.rng), random_unitary(self.rng), *self.rng.uniform(-3, 3, 2))
            Gbar = shale_reconstruct(f)
            g = shale_decompose(Gbar)
            assert np.abs(shale_reconstruct(g) - Gbar).max() < 1e-9
            assert sorted([abs(g.r1), abs(g.r2)]) == pytest.approx(sorted([abs(f.r1), abs(f.r2)]), abs=1e-9)

    def test_round_trip_degenerate(self):
        """Equal squeeze parameters go through the degenerate branch"""
        for r in (0.0, 0.4, 1.2, -2.5):
            f = ShaleFactors(random_unitary(self.rng), random_unitary(self.rng), r, r)
            Gbar = shale_reconstruct(f)
            g = shale_decompose(Gbar)
            assert np.abs(shale_reconstruct(g) - Gbar).max() < 1e-9

    def test_round_trip_near_degenerate(self):
        """Singular values a hair apart still reconstruct exactly"""
        for gap in (1e-9, 3e-9, 1e-8, 1e-7, 1e-6, 1e-5):
            r1 = np.arccosh(np.cosh(1.0) + gap)
            for _ in range(5):
                f = ShaleFactors(random_unitary(self.rng), random_unitary(self.rng), r1, 1.0)
                Gbar = shale_reconstruct(f)
                g = shale_decompose(Gbar)
                assert np.abs(shale_reconstruct(g) - Gbar).max() < 1e-9
                assert sorted([abs(g.r1), abs(g.r2)]) == pytest.approx([1.0, r1], abs=1e-9)

    def test_near_degenerate_opposite_signs(self):
        """r and -r + gap with complex unitaries"""
        for gap in (1e-8, 1e-6):
            f = ShaleFactors(random_unitary(self.rng), random_unitary(self.rng), 0.7, -0.7 - gap)
            Gbar = shale_reconstruct(f)
            assert np.abs(shale_reconstruct(shale_decompose(Gbar)) - Gbar).max() < 1e-9

    def test_cosh_sinh_consistency(self):
        """Recovered parameters satisfy cosh^2 - sinh^2 = 1 against the singular values"""
        f = shale_decompose(self.optimal)
        sigma = np.linalg.svd(self.optimal[:2, :2], compute_uv=False)
        assert np.allclose(np.cosh([f.r1, f.r2]), sigma, atol=1e-12)

    def test_not_symplectic(self):
        """2I is rejected"""
        with pytest.raises(NotSymplecticError):
            shale_decompose(2 * np.eye(4))

    def test_wrong_shape(self):
        """Only 4x4 matrices are decomposed"""
        with pytest.raises(DimensionError):
            shale_decompose(np.eye(2))


class TestTakagi:
    """Test suite for takagi"""

    def test_reconstructs(self):
        """N = U diag(l) U^T for random symmetric N"""
        rng = np.random.default_rng(8)
        for _ in range(10):
            X = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
            N = X + X.T
            l, U = takagi(N)
            assert np.allclose(U @ np.diag(l) @ U.T, N, atol=1e-10)
            assert np.allclose(U.conj().T @ U, np.eye(3), atol=1e-10)

    def test_degenerate(self):
        """Degenerate singular values are handled"""
        rng = np.random.default_rng(9)
        W = random_unitary(rng)
        N = 1.5 * W @ W.T
        l, U = takagi(N)
        assert np.allclose(l, [1.5, 1.5])
        assert np.allclose(U @ np.diag(l) @ U.T, N, atol=1e-10)

    def test_near_degenerate(self):
        """Close singular values keep N = U diag(l) U^T"""
        rng = np.random.default_rng(10)
        for gap in (1e-12, 1e-9, 1e-6):
            W = random_unitary(rng)
            N = W @ np.diag([1.5 + gap, 1.5]) @ W.T
            l, U = takagi(N)
            assert np.allclose(l, [1.5 + gap, 1.5], atol=1e-12)
            assert np.abs(U @ np.diag(l) @ U.T - N).max() < 1e-12
            assert np.abs(U.conj().T @ U - np.eye(2)).max() < 1e-12

    def test_rank_deficient(self):
        """A zero singular value gets a unit vector orthogonal to the others"""
        rng = np.random.default_rng(11)
        W = random_unitary(rng)
        N = W @ np.diag([2.0, 0.0]) @ W.T
        l, U = takagi(N)
        assert l[1] == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(U @ np.diag(l) @ U.T, N, atol=1e-12)
        assert np.allclose(U.conj().T @ U, np.eye(2), atol=1e-12)

    def test_rejects_non_symmetric(self):
        """Non-symmetric input is a contract error"""
        with pytest.raises(ContractError):
            takagi([[0, 1], [2, 0]])


class TestBeamsplitter:
    """Test suite for beamsplitter parameters"""

    def test_bs_matrix_identity_point(self):
        """θ = π/2 with zero phases gives diag(1, -1)"""
        assert np.allclose(bs_matrix(BeamsplitterParams(np.pi / 2)), [[1, 0], [0, -1]], atol=1e-15)

    def test_bs_matrix_six_db_s1(self):
        """θ = 0.5515 reproduces the printed S1"""
        assert np.abs(bs_matrix(BeamsplitterParams(0.5515)) - SIX_DB_S1).max() < 1e-4

    def test_bs_matrix_six_db_s2(self):
        """θ = -0.7532, φ2 = φ3 = π reproduces the printed S2"""
        p = BeamsplitterParams(-0.7532, 0.0, np.pi, np.pi)
        assert np.abs(bs_matrix(p) - SIX_DB_S2).max() < 1e-4

    def test_params_six_db_s1(self):
        """S1 gives θ = 0.5515 and zero phases"""
        p = beamsplitter_params(bs_matrix(BeamsplitterParams(0.5515)))
        assert p.theta == pytest.approx(0.5515, abs=1e-12)
        assert all(abs(phi) < 1e-12 for phi in (p.phi1, p.phi2, p.phi3))

    def test_params_six_db_s2(self):
        """S2 gives θ = -0.7532, φ1 = 0, φ2 = φ3 = π"""
        p = beamsplitter_params(bs_matrix(BeamsplitterParams(-0.7532, 0.0, np.pi, np.pi)))
        assert p.theta == pytest.approx(-0.7532, abs=1e-12)
        assert abs(p.phi1) < 1e-12
        assert angle_close(p.phi2, np.pi, 1e-12)
        assert angle_close(p.phi3, np.pi, 1e-12)

    def test_params_identity(self):
        """I gives θ = π/2, φ2 = π"""
        p = beamsplitter_params(np.eye(2))
        assert p.theta == pytest.approx(np.pi / 2)
        assert abs(p.phi1) < 1e-12 and abs(p.phi3) < 1e-12
        assert angle_close(p.phi2, np.pi, 1e-12)

    def test_params_round_trip_random(self):
        """Any unitary is reproduced exactly"""
        rng = np.random.default_rng(77)
        for _ in range(100):
            S = random_unitary(rng)
            p = beamsplitter_params(S)
            assert abs(residual_phase(S, p)) < 1e-10
            assert np.abs(bs_matrix(p) - S).max() < 1e-10
            for angle in (p.theta, p.phi1, p.phi2, p.phi3):
                assert -np.pi < angle <= np.pi

    def test_params_phi1_lower_boundary(self):
        """φ1 = -π/2 folds to π/2 with θ negated"""
        S = np.diag([-1j, 1]) @ bs_matrix(BeamsplitterParams(0.3, 0.0, 0.2, 0.4))
        assert np.angle(S[0, 0]) == -np.pi / 2
        p = beamsplitter_params(S)
        assert p.phi1 == pytest.approx(np.pi / 2, abs=1e-15)
        assert p.theta == pytest.approx(-0.3, abs=1e-12)
        assert np.abs(bs_matrix(p) - S).max() < 1e-12

    def test_params_phi1_range(self):
        """φ1 always lands in (-π/2, π/2]"""
        rng = np.random.default_rng(78)
        for _ in range(100):
            p = beamsplitter_params(random_unitary(rng))
            assert -np.pi / 2 < p.phi1 <= np.pi / 2

    def test_determinant(self):
        """det = -exp(i(φ1 + φ2 + φ3))"""
        rng = np.random.default_rng(13)
        for _ in range(20):
            p = BeamsplitterParams(*rng.uniform(-np.pi, np.pi, 4))
            S = bs_matrix(p)
            assert np.linalg.det(S) == pytest.approx(-np.exp(1j * (p.phi1 + p.phi2 + p.phi3)), abs=1e-12)
            assert np.allclose(S.conj().T @ S, np.eye(2), atol=1e-12)

    def test_params_rejects_non_unitary(self):
        """Non-unitary input is a contract error"""
        with pytest.raises(ContractError):
            beamsplitter_params(2 * np.eye(2))

    def test_params_dict_missing(self):
        """Missing parameter names the field"""
        from quantamp.errors import ArtifactParseError

        with pytest.raises(ArtifactParseError) as exc:
            BeamsplitterParams.from_dict({"theta": 0.1, "phi1": 0, "phi2": 0}, field="bs_in")
        assert exc.value.field == "bs_in.phi3"
