import numpy as np
import pytest

from quantamp.dup_linalg import j_matrix
from quantamp.errors import ArtifactParseError, DomainError
from quantamp.qsys import check_realizability, is_stable, system_scale, transfer_at
from quantamp.squeezer import (
    SqueezerParams,
    alpha_from_r,
    dc_gain_from_alpha,
    design_squeezer,
    rejected_alpha_root,
    squeezer_system,
    squeezing_db,
)

KAPPA = 2 * np.pi * 1e6


def core(r):
    return np.array([[-np.cosh(r), -np.sinh(r)], [-np.sinh(r), -np.cosh(r)]])


class TestSqueezerSystem:
    """Test suite for squeezer_system"""

    def test_passive_cavity(self):
        """κ = 1, χ = 0 gives -I at DC"""
        G = transfer_at(squeezer_system(SqueezerParams(1.0, 0.0, 1.0)), 0.0)
        assert np.allclose(G, -np.eye(2), atol=1e-15)

    def test_six_db_squeezer(self):
        """Squeezer 1 of the 6 dB design is stable and realizable with Θ = J"""
        sys = squeezer_system(SqueezerParams(KAPPA, -2.0983e6, KAPPA))
        assert is_stable(sys)
        cert = check_realizability(sys, j_matrix(1))
        assert cert.passed
        assert max(cert.residual_lyap, cert.residual_B) < 1e-9 * system_scale(sys)

    def test_unstable_constructed(self):
        """κ = 1, χ = 0.6 is built but unstable"""
        p = SqueezerParams(1.0, 0.6, 1.0)
        assert not p.is_stable
        assert not is_stable(squeezer_system(p))

    def test_nonpositive_kappa(self):
        """κ <= 0 is a domain error"""
        with pytest.raises(DomainError):
            squeezer_system(SqueezerParams(0.0, 0.1, 1.0))

    def test_complex_chi_accepted(self):
        """Complex χ is allowed for verification"""
        sys = squeezer_system(SqueezerParams(2.0, 0.3 + 0.4j, 2.0))
        assert check_realizability(sys, j_matrix(1)).passed

    def test_dict_round_trip(self):
        """Parameters survive serialization"""
        p = SqueezerParams(KAPPA, 1.5 - 0.25j, KAPPA)
        data = p.to_dict()
        assert set(data) == {"kappa_rad_s", "chi_re_rad_s", "chi_im_rad_s", "epsilon_rad_s"}
        assert SqueezerParams.from_dict(data) == p

    def test_dict_bad_value(self):
        """Non-numeric value names the field"""
        data = SqueezerParams(1.0, 0.2, 1.0).to_dict()
        data["kappa_rad_s"] = "fast"
        with pytest.raises(ArtifactParseError) as exc:
            SqueezerParams.from_dict(data, field="sq1")
        assert exc.value.field == "sq1.kappa_rad_s"

    def test_dict_non_positive_rates(self):
        """κ and ε must be positive and finite"""
        for key, value in (("kappa_rad_s", 0.0), ("kappa_rad_s", -2.0), ("epsilon_rad_s", 0.0),
                           ("epsilon_rad_s", float("inf"))):
            data = SqueezerParams(1.0, 0.2, 1.0).to_dict()
            data[key] = value
            with pytest.raises(ArtifactParseError) as exc:
                SqueezerParams.from_dict(data, field="sq2")
            assert exc.value.field == f"sq2.{key}"


class TestDesignEquation:
    """Test suite for the α parametrization"""

    def test_dc_gain_zero(self):
        """α = 0 gives -I"""
        assert np.array_equal(dc_gain_from_alpha(0.0), -np.eye(2))

    def test_dc_gain_six_db_alpha1(self):
        """α = -0.6679 matches the core for r = 1.6139"""
        assert np.allclose(dc_gain_from_alpha(-0.6679), core(1.6139), rtol=1e-3)

    def test_dc_gain_six_db_alpha2(self):
        """α = 0.5127 matches the core for r = -1.1327"""
        assert np.allclose(dc_gain_from_alpha(0.5127), core(-1.1327), rtol=1e-3)

    def test_dc_gain_unstable(self):
        """|α| >= 1 is a domain error"""
        with pytest.raises(DomainError):
            dc_gain_from_alpha(1.0)

    def test_alpha_from_r(self):
        """α values of the 6 dB design"""
        assert alpha_from_r(0.0) == 0.0
        assert alpha_from_r(1.6139) == pytest.approx(-0.6679, abs=1e-4)
        assert alpha_from_r(-1.1327) == pytest.approx(0.5127, abs=1e-4)

    def test_alpha_reproduces_core(self):
        """dc_gain_from_alpha(alpha_from_r(r)) is the hyperbolic core"""
        for r in np.linspace(-3, 3, 13):
            assert np.allclose(dc_gain_from_alpha(alpha_from_r(r)), core(r), rtol=0, atol=1e-12 * np.cosh(r))

    def test_cosh_sinh_identity(self):
        """α parametrization satisfies cosh^2 - sinh^2 = 1"""
        rng = np.random.default_rng(21)
        for alpha in rng.uniform(-0.99, 0.99, size=100):
            G = dc_gain_from_alpha(alpha)
            assert abs(G[0, 0] ** 2 - G[0, 1] ** 2 - 1) < 1e-12 * abs(G[0, 0]) ** 2

    def test_rejected_root(self):
        """The other root is never a stable α"""
        rng = np.random.default_rng(22)
        for r in rng.uniform(-5, 5, size=100):
            assert abs(rejected_alpha_root(r)) >= 1.0

    def test_rejected_root_zero(self):
        """The other root is unbounded at r = 0"""
        with pytest.raises(DomainError):
            rejected_alpha_root(0.0)


class TestDesignSqueezer:
    """Test suite for design_squeezer"""

    def test_six_db_squeezer_one(self):
        """r = 1.6139 gives χ = -2.0983e6"""
        p = design_squeezer(1.6139, KAPPA)
        assert p.kappa == KAPPA
        assert p.chi.real == pytest.approx(-2.0983e6, rel=1e-3)
        assert p.chi.imag == 0.0

    def test_six_db_squeezer_two(self):
        """r = -1.1327 gives χ = 1.6106e6"""
        assert design_squeezer(-1.1327, KAPPA).chi.real == pytest.approx(1.6106e6, rel=1e-3)

    def test_zero_squeeze(self):
        """r = 0 gives a passive cavity"""
        p = design_squeezer(0.0, 1.0)
        assert p.kappa == 1.0 and p.chi == 0

    def test_bad_epsilon(self):
        """ε <= 0 is a domain error"""
        with pytest.raises(DomainError):
            design_squeezer(1.0, 0.0)

    def test_dc_matches_core(self):
        """Designed squeezer implements the core at DC"""
        for r in (-2.0, -0.3, 0.0, 0.7, 1.6139):
            G = transfer_at(squeezer_system(design_squeezer(r, KAPPA)), 0.0)
            assert np.allclose(G, core(r), atol=1e-9 * np.cosh(r))

    def test_bandwidth_scaling(self):
        """Frequency axis scales with ε"""
        rng = np.random.default_rng(23)
        for _ in range(20):
            r, w0 = rng.uniform(-2, 2), rng.uniform(0.01, 10)
            reference = transfer_at(squeezer_system(design_squeezer(r, 1.0)), 1j * w0)
            for eps in rng.uniform(1e-2, 1e7, size=3):
                scaled = transfer_at(squeezer_system(design_squeezer(r, eps)), 1j * eps * w0)
                assert np.allclose(scaled, reference, rtol=0, atol=1e-10 * np.cosh(r) ** 2)

    def test_designed_realizable(self):
        """Every designed squeezer passes with Θ = J"""
        for r in np.linspace(-3, 3, 7):
            sys = squeezer_system(design_squeezer(r, KAPPA))
            cert = check_realizability(sys, j_matrix(1))
            assert cert.passed
            assert cert.residual_lyap / system_scale(sys) < 1e-9

    def test_squeezing_db(self):
        """Level in dB of e^|r|"""
        assert squeezing_db(0.0) == 0.0
        assert squeezing_db(-1.0) == pytest.approx(20 / np.log(10))
