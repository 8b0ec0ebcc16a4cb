import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinwigner import states
from spinwigner.errors import DegenerateSuperposition, InvalidArgument

R2 = 1 / np.sqrt(2)


class TestBell:
    def test_phi_minus(self):
        np.testing.assert_allclose(states.bell("phi-"), [R2, 0, 0, -R2], atol=1e-15)

    def test_psi_plus(self):
        np.testing.assert_allclose(states.bell("psi+"), [0, R2, R2, 0], atol=1e-15)

    @pytest.mark.parametrize("which", ["phi+", "phi-", "psi+", "psi-", "Φ+", "Ψ-"])
    def test_normalised(self, which):
        assert np.linalg.norm(states.bell(which)) == pytest.approx(1, abs=1e-15)

    def test_unknown(self):
        with pytest.raises(InvalidArgument):
            states.bell("chi+")


class TestGhzAndW:
    def test_ghz5_amplitudes(self):
        psi = states.ghz(5)
        expected = np.zeros(32)
        expected[[0, 31]] = R2
        np.testing.assert_allclose(psi, expected, atol=1e-15)

    def test_ghz2_is_phi_plus(self):
        np.testing.assert_allclose(states.ghz(2), states.bell("phi+"))

    def test_ghz3_norm(self):
        assert np.vdot(states.ghz(3), states.ghz(3)).real == pytest.approx(1, abs=1e-15)

    @pytest.mark.parametrize("n", [0, 1, 13])
    def test_ghz_rejects_bad_n(self, n):
        with pytest.raises(InvalidArgument) as exc:
            states.ghz(n)
        assert exc.value.field == "n"

    def test_w2_is_psi_plus(self):
        np.testing.assert_allclose(states.w_state(2), states.bell("psi+"), atol=1e-15)

    def test_w3_support(self):
        psi = states.w_state(3)
        assert set(np.flatnonzero(psi)) == {1, 2, 4}
        np.testing.assert_allclose(psi[[1, 2, 4]], 1 / np.sqrt(3))

    def test_w5_count(self):
        psi = states.w_state(5)
        assert np.count_nonzero(psi) == 5
        np.testing.assert_allclose(psi[psi != 0], 1 / np.sqrt(5))

    def test_w_rejects_single_qubit(self):
        with pytest.raises(InvalidArgument):
            states.w_state(1)


class TestClock:
    def test_single_qubit(self):
        np.testing.assert_allclose(states.clock_state(1), [R2, R2], atol=1e-15)

    def test_two_qubits_hand_expansion(self):
        # k=1 factor (1, -1)/sqrt2 at position 0, k=2 factor (1, 1)/sqrt2 at position 1
        np.testing.assert_allclose(states.clock_state(2), [0.5, 0.5, -0.5, -0.5], atol=1e-15)

    def test_five_qubit_moduli(self):
        np.testing.assert_allclose(np.abs(states.clock_state(5)), 2**-2.5)


class TestGhzFamily:
    def test_pure_limit(self):
        np.testing.assert_allclose(states.ghz_family(4, 1), states.density(states.ghz(4)), atol=1e-15)

    def test_mixed_limit(self):
        rho = states.ghz_family(3, 0)
        expected = np.zeros((8, 8))
        expected[0, 0] = expected[7, 7] = 0.5
        np.testing.assert_allclose(rho, expected)

    def test_half_corners(self):
        rho = states.ghz_family(2, 0.5)
        assert rho[0, 3] == rho[3, 0] == 0.25

    @pytest.mark.parametrize("gamma", [-0.1, 1.5])
    def test_gamma_range(self, gamma):
        with pytest.raises(InvalidArgument) as exc:
            states.ghz_family(3, gamma)
        assert exc.value.field == "gamma"

    @pytest.mark.parametrize("n", range(2, 9))
    @pytest.mark.parametrize("gamma", np.linspace(0, 1, 5))
    def test_four_entries(self, n, gamma):
        rho = states.ghz_family(n, gamma)
        d = 2**n
        assert rho[0, 0] == rho[-1, -1] == 0.5
        assert rho[0, -1] == rho[-1, 0] == gamma / 2
        mask = np.ones((d, d), bool)
        mask[[0, 0, -1, -1], [0, -1, 0, -1]] = False
        assert not np.any(rho[mask])
        states.check_density(rho)


class TestProductAndSuperpose:
    def test_north_pole(self):
        psi = states.product_state([(0, 0)] * 5)
        np.testing.assert_allclose(psi, states.basis_state("00000"), atol=1e-15)

    def test_first_flipped(self):
        psi = states.product_state([(np.pi, 0)] + [(0, 0)] * 4)
        np.testing.assert_allclose(psi, states.basis_state("10000"), atol=1e-15)

    def test_right_pointing(self):
        psi = states.product_state([(np.pi / 2, 0)] * 5)
        np.testing.assert_allclose(psi, np.full(32, 2**-2.5), atol=1e-15)

    def test_orthogonal_superposition(self):
        s = states.superpose(states.basis_state("0"), states.basis_state("1"))
        np.testing.assert_allclose(s, [R2, R2])

    def test_superposition_gives_ghz(self):
        s = states.superpose(states.basis_state("0000"), states.basis_state("1111"))
        np.testing.assert_allclose(s, states.ghz(4))

    def test_idempotent(self):
        z = states.basis_state("0")
        np.testing.assert_allclose(states.superpose(z, z), z)

    def test_degenerate(self):
        z = states.basis_state("0")
        with pytest.raises(DegenerateSuperposition):
            states.superpose(z, -z)


class TestMixtureAndDensity:
    def test_single_term(self):
        rho = states.ghz_family(3, 0.3)
        np.testing.assert_allclose(states.mixture([(1.0, rho)]), rho)

    def test_fig6g_mixture_trace(self):
        a = states.density(states.basis_state("00000"))
        b = states.density(states.product_state([(np.pi / 2, 0)] * 5))
        rho = states.mixture([(0.5, a), (0.5, b)])
        assert np.trace(rho).real == pytest.approx(1, abs=1e-12)
        states.check_density(rho)

    def test_bad_weights(self):
        rho = states.density(states.basis_state("0"))
        with pytest.raises(InvalidArgument):
            states.mixture([(0.6, rho), (0.6, rho)])

    def test_density_of_zero(self):
        np.testing.assert_allclose(states.density(states.basis_state("0")), np.diag([1, 0]))

    def test_density_ghz2(self):
        rho = states.density(states.ghz(2))
        expected = np.zeros((4, 4))
        expected[np.ix_([0, 3], [0, 3])] = 0.5
        np.testing.assert_allclose(rho, expected, atol=1e-15)
        assert np.trace(rho @ rho).real == pytest.approx(1)


class TestReducedDensity:
    def test_product(self):
        rho = states.density(states.basis_state("01"))
        np.testing.assert_allclose(states.reduced_density(rho, {0}), np.diag([1, 0]))
        np.testing.assert_allclose(states.reduced_density(rho, {1}), np.diag([0, 1]))

    def test_bell(self):
        rho = states.density(states.bell("psi+"))
        np.testing.assert_allclose(states.reduced_density(rho, {0}), np.eye(2) / 2, atol=1e-15)

    def test_empty_keep(self):
        with pytest.raises(InvalidArgument):
            states.reduced_density(np.eye(4) / 4, set())

    def test_keep_order_against_einsum(self):
        rng = np.random.default_rng(3)
        rho = states.random_density(3, rng)
        t = rho.reshape([2] * 6)
        expected = np.einsum("abcdbf->acdf", t).reshape(4, 4)
        np.testing.assert_allclose(states.reduced_density(rho, {2, 0}), expected, atol=1e-14)

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(
            st.tuples(st.floats(0, np.pi), st.floats(-np.pi, np.pi)), min_size=2, max_size=4
        ),
        st.data(),
    )
    def test_product_marginals(self, angles, data):
        i = data.draw(st.integers(0, len(angles) - 1))
        rho = states.density(states.product_state(angles))
        single = states.density(states.product_state([angles[i]]))
        red = states.reduced_density(rho, {i})
        assert np.linalg.norm(red - single) < 1e-12
        assert np.trace(red).real == pytest.approx(1, abs=1e-12)


def test_check_density_rejects_non_hermitian():
    with pytest.raises(InvalidArgument):
        states.check_density(np.array([[0.5, 1], [0, 0.5]]))
