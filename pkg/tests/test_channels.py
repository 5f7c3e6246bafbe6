import math

import numpy as np
import pytest

from entdisc import channels, smallmat
from entdisc.channels import ExtremalChannel, QubitChannel


def bell_phi_plus():
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / math.sqrt(2)
    return np.outer(v, v.conj())


class TestKrausOf:
    def test_identity_channel(self):
        ks = channels.kraus_of(ExtremalChannel(0.0, 0.0))
        np.testing.assert_allclose(ks.operators[0], np.eye(2))
        np.testing.assert_allclose(ks.operators[1], np.zeros((2, 2)))
        assert ks.weights == (1.0,)

    def test_full_amplitude_damping(self):
        ks = channels.kraus_of(ExtremalChannel(math.pi / 2, 0.0))
        np.testing.assert_allclose(ks.operators[0], np.diag([1.0, 0.0]), atol=1e-15)
        np.testing.assert_allclose(
            ks.operators[1], [[0.0, 1.0], [0.0, 0.0]], atol=1e-15
        )

    def test_partial_damping(self):
        ks = channels.kraus_of(ExtremalChannel(math.pi / 3, 0.0))
        np.testing.assert_allclose(ks.operators[0], np.diag([1.0, 0.5]), atol=1e-15)
        np.testing.assert_allclose(
            ks.operators[1], [[0.0, math.sqrt(3) / 2], [0.0, 0.0]], atol=1e-15
        )

    def test_angle_range_enforced(self):
        with pytest.raises(ValueError, match="phi"):
            ExtremalChannel(4.0, 0.0)
        with pytest.raises(ValueError, match="lambda"):
            QubitChannel(1.5, ExtremalChannel(0, 0), ExtremalChannel(0, 0))


class TestKrausOfMixture:
    def test_degenerate_weight_acts_like_component(self):
        c = QubitChannel.extremal(1.0, 0.4)
        rho = np.array([[0.7, 0.2 + 0.1j], [0.2 - 0.1j, 0.3]])
        out_mix = channels.apply(c, rho)
        ks = channels.kraus_of(c.first)
        expected = sum(k @ rho @ k.conj().T for k in ks.operators)
        np.testing.assert_allclose(out_mix, expected, atol=1e-12)

    def test_equal_components_act_like_one(self):
        e = ExtremalChannel(0.9, 0.2)
        c = QubitChannel.mixture(0.5, e, e)
        rho = np.diag([0.25, 0.75]).astype(complex)
        one = sum(
            k @ rho @ k.conj().T for k in channels.kraus_of(e).operators
        )
        np.testing.assert_allclose(channels.apply(c, rho), one, atol=1e-12)

    def test_pauli_channel_mixture(self):
        # lam * N(theta, theta) + (1-lam) * N(theta2, pi - theta2) has all
        # four Kraus operators proportional to Pauli matrices
        theta, theta2 = 0.6, 1.1
        c = QubitChannel.mixture(
            0.3, ExtremalChannel(theta, theta), ExtremalChannel(theta2, math.pi - theta2)
        )
        paulis = [
            np.eye(2, dtype=complex),
            np.array([[0, 1], [1, 0]], dtype=complex),
            np.array([[0, -1j], [1j, 0]], dtype=complex),
            np.array([[1, 0], [0, -1]], dtype=complex),
        ]
        for op in channels.kraus_of_mixture(c).operators:
            scale = np.max(np.abs(op))
            assert scale > 0
            overlaps = [abs(np.trace(p.conj().T @ op)) / (2 * scale) for p in paulis]
            assert max(overlaps) == pytest.approx(1.0, abs=1e-12)
        mapped = channels.affine_map(c)
        assert np.allclose(mapped.t, 0.0, atol=1e-12)

    def test_completeness(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            c = QubitChannel.mixture(
                float(rng.uniform(0, 1)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
            )
            assert channels.kraus_of_mixture(c).completeness_deviation() < 1e-10


class TestApply:
    def test_identity(self):
        rho = np.array([[0.6, 0.1j], [-0.1j, 0.4]])
        np.testing.assert_allclose(
            channels.apply(QubitChannel.extremal(0, 0), rho), rho, atol=1e-14
        )

    def test_full_damping_ground_state(self):
        c = QubitChannel.extremal(math.pi / 2, 0.0)
        out = channels.apply(c, np.diag([0.0, 1.0]).astype(complex))
        np.testing.assert_allclose(out, np.diag([1.0, 0.0]), atol=1e-14)

    def test_partial_damping_populations(self):
        c = QubitChannel.extremal(math.pi / 3, 0.0)
        out = channels.apply(c, np.diag([0.0, 1.0]).astype(complex))
        np.testing.assert_allclose(out, np.diag([0.75, 0.25]), atol=1e-14)

    def test_rejects_non_density(self):
        c = QubitChannel.extremal(0.3, 0.2)
        with pytest.raises(ValueError, match="trace"):
            channels.apply(c, np.diag([0.5, 0.9]).astype(complex))
        with pytest.raises(ValueError, match="eigenvalue"):
            channels.apply(c, np.array([[1.5, 0], [0, -0.5]], dtype=complex))

    def test_preserves_density_properties(self):
        rng = np.random.default_rng(22)
        for _ in range(100):
            c = QubitChannel.mixture(
                float(rng.uniform(0, 1)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
            )
            v = rng.normal(size=2) + 1j * rng.normal(size=2)
            v /= np.linalg.norm(v)
            out = channels.apply(c, np.outer(v, v.conj()))
            assert abs(np.trace(out).real - 1.0) < 1e-10
            assert smallmat.hermitian_eigenvalues(out)[0] > -1e-10


class TestApplyExtended:
    def test_identity(self):
        rho = bell_phi_plus()
        out = channels.apply_extended(QubitChannel.extremal(0, 0), rho)
        np.testing.assert_allclose(out, rho, atol=1e-14)

    def test_full_damping_on_bell_state(self):
        c = QubitChannel.extremal(math.pi / 2, 0.0)
        out = channels.apply_extended(c, bell_phi_plus())
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = expected[2, 2] = 0.5
        np.testing.assert_allclose(out, expected, atol=1e-14)

    def test_schmidt_probe_splits_into_two_pure_pieces(self):
        phi, theta = 1.1, 0.4
        a0, a1 = math.sqrt(0.3), math.sqrt(0.7)
        psi = np.zeros(4, dtype=complex)
        psi[0], psi[3] = a0, a1
        out = channels.apply_extended(
            QubitChannel.extremal(phi, theta), np.outer(psi, psi.conj())
        )
        piece1 = np.zeros(4, dtype=complex)
        piece1[0] = a0 * math.cos(theta)
        piece1[3] = a1 * math.cos(phi)
        piece2 = np.zeros(4, dtype=complex)
        piece2[1] = a0 * math.sin(theta)
        piece2[2] = a1 * math.sin(phi)
        expected = np.outer(piece1, piece1.conj()) + np.outer(piece2, piece2.conj())
        np.testing.assert_allclose(out, expected, atol=1e-12)

    def test_product_state_factorizes(self):
        rng = np.random.default_rng(23)
        for _ in range(30):
            c = QubitChannel.mixture(
                float(rng.uniform(0, 1)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
            )
            va = rng.normal(size=2) + 1j * rng.normal(size=2)
            vb = rng.normal(size=2) + 1j * rng.normal(size=2)
            va /= np.linalg.norm(va)
            vb /= np.linalg.norm(vb)
            ra, rb = np.outer(va, va.conj()), np.outer(vb, vb.conj())
            lhs = channels.apply_extended(c, np.kron(ra, rb))
            rhs = np.kron(ra, channels.apply(c, rb))
            assert np.max(np.abs(lhs - rhs)) < 1e-10


class TestAffineMap:
    def test_identity(self):
        m = channels.affine_map(QubitChannel.extremal(0, 0))
        assert m.lambdas == (1.0, 1.0, 1.0)
        assert m.t == (0.0, 0.0, 0.0)

    def test_full_damping(self):
        m = channels.affine_map(QubitChannel.extremal(math.pi / 2, 0))
        np.testing.assert_allclose(m.lambdas, (0.0, 0.0, 0.0), atol=1e-15)
        np.testing.assert_allclose(m.t, (0.0, 0.0, 1.0), atol=1e-15)

    @staticmethod
    def _bloch(rho):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        y = np.array([[0, -1j], [1j, 0]], dtype=complex)
        z = np.array([[1, 0], [0, -1]], dtype=complex)
        return np.array([np.trace(rho @ s).real for s in (x, y, z)])

    def test_matches_reconstruction_from_basis_states(self):
        rng = np.random.default_rng(24)
        paulis = [
            np.array([[0, 1], [1, 0]], dtype=complex),
            np.array([[0, -1j], [1j, 0]], dtype=complex),
            np.array([[1, 0], [0, -1]], dtype=complex),
        ]
        for _ in range(40):
            c = QubitChannel.mixture(
                float(rng.uniform(0, 1)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
            )
            m = channels.affine_map(c)
            t = self._bloch(channels.apply(c, 0.5 * np.eye(2, dtype=complex)))
            np.testing.assert_allclose(t, m.t, atol=1e-10)
            for k, sigma in enumerate(paulis):
                out = channels.apply(c, 0.5 * (np.eye(2, dtype=complex) + sigma))
                col = self._bloch(out) - t
                expected = np.zeros(3)
                expected[k] = m.lambdas[k]
                np.testing.assert_allclose(col, expected, atol=1e-10)

    def test_image_inside_bloch_ball(self):
        rng = np.random.default_rng(25)
        c = QubitChannel.extremal(*rng.uniform(0, math.pi, 2))
        m = channels.affine_map(c)
        lam = np.array(m.lambdas)
        t = np.array(m.t)
        for _ in range(2000):
            v = rng.normal(size=3)
            v /= np.linalg.norm(v)
            assert np.linalg.norm(lam * v + t) <= 1.0 + 1e-12


class TestValidateCptp:
    def test_extremal_channels_valid(self):
        rng = np.random.default_rng(26)
        for _ in range(30):
            ks = channels.kraus_of(ExtremalChannel(*rng.uniform(0, math.pi, 2)))
            report = channels.validate_cptp(ks)
            assert report.trace_preserving and report.completely_positive
            assert report.max_violation < 1e-10

    def test_incomplete_kraus_detected(self):
        k0 = channels.kraus_of(ExtremalChannel(math.pi / 3, 0.0)).operators[0]
        report = channels.validate_cptp(channels.KrausSet((k0,), (1.0,)))
        assert not report.trace_preserving

    def test_mixtures_valid(self):
        rng = np.random.default_rng(27)
        for _ in range(30):
            c = QubitChannel.mixture(
                float(rng.uniform(0, 1)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
                ExtremalChannel(*rng.uniform(0, math.pi, 2)),
            )
            report = channels.validate_cptp(channels.kraus_of_mixture(c))
            assert report.trace_preserving and report.completely_positive

    def test_extremal_choi_rank_at_most_two(self):
        rng = np.random.default_rng(28)
        for _ in range(50):
            ks = channels.kraus_of(ExtremalChannel(*rng.uniform(0, math.pi, 2)))
            vals = smallmat.hermitian_eigenvalues(channels.choi_matrix(ks))
            assert vals[0] > -1e-10
            assert vals[1] < 1e-9


class TestQuasiExtreme:
    def test_equal_angles(self):
        assert channels.is_quasi_extreme(ExtremalChannel(math.pi / 4, math.pi / 4))

    def test_supplementary_angles(self):
        assert channels.is_quasi_extreme(
            ExtremalChannel(math.pi / 4, 3 * math.pi / 4)
        )

    def test_generic_pair_not_quasi(self):
        assert not channels.is_quasi_extreme(ExtremalChannel(math.pi / 3, math.pi / 6))


class TestLiterals:
    @pytest.mark.parametrize(
        "text",
        [
            "identity",
            "ad(0.7)",
            "extremal(1.2,0.4)",
            "mix(0.25;1.2,0.4;0.3,2.0)",
            "pauli(0.5,0.6,1.1)",
        ],
    )
    def test_round_trip(self, text):
        c = channels.parse_channel(text)
        again = channels.parse_channel(channels.format_channel(c))
        assert again == c

    def test_identity_is_extremal_zero(self):
        assert channels.parse_channel("identity") == QubitChannel.extremal(0, 0)

    def test_ad_preset(self):
        assert channels.parse_channel("ad(0.9)") == QubitChannel.extremal(0.9, 0.0)

    def test_pauli_preset_components_quasi_extreme(self):
        c = channels.parse_channel("pauli(0.4,0.5,1.0)")
        assert channels.is_quasi_extreme(c.first)
        assert channels.is_quasi_extreme(c.second)

    def test_angle_out_of_range_names_literal(self):
        with pytest.raises(channels.ChannelParseError, match="extremal"):
            channels.parse_channel("extremal(4.0,0)")

    def test_bad_token_named(self):
        with pytest.raises(channels.ChannelParseError, match="spam"):
            channels.parse_channel("extremal(spam,0)")

    def test_unknown_kind(self):
        with pytest.raises(channels.ChannelParseError, match="bogus"):
            channels.parse_channel("bogus(1,2)")
