import numpy as np
import pytest
from scipy.linalg import expm

from spinwigner import kernels, states
from spinwigner.kernels import SIGMA_X, SIGMA_Y, SIGMA_Z, Kind

S3, S5 = np.sqrt(3), np.sqrt(5)
KINDS = [Kind.SU2N, Kind.TENSOR]


def expm_rotation(theta, phi, Phi):
    """Independent oracle: matrix exponentials multiplied in order."""
    return expm(1j * SIGMA_Z * phi) @ expm(-1j * SIGMA_Y * theta) @ expm(1j * SIGMA_Z * Phi)


def axis_formula(theta, phi):
    return np.array(
        [np.sin(2 * theta) * np.cos(2 * phi), -np.sin(2 * theta) * np.sin(2 * phi), np.cos(2 * theta)]
    )


class TestSu2Rotation:
    def test_identity(self):
        np.testing.assert_allclose(kernels.su2_rotation(0, 0, 0), np.eye(2))

    def test_pure_theta(self):
        t = 0.37
        c, s = np.cos(t), np.sin(t)
        np.testing.assert_allclose(kernels.su2_rotation(t), [[c, -s], [s, c]], atol=1e-15)

    def test_matches_expm(self):
        rng = np.random.default_rng(0)
        for t, f, F in rng.uniform(-4, 4, (50, 3)):
            np.testing.assert_allclose(kernels.su2_rotation(t, f, F), expm_rotation(t, f, F), atol=1e-14)

    def test_unitary(self):
        rng = np.random.default_rng(1)
        u = kernels.su2_rotation(*rng.uniform(-10, 10, (3, 200)))
        err = np.abs(np.einsum("kba,kbc->kac", u.conj(), u) - np.eye(2)).max()
        assert err < 1e-14


class TestCompositeRotation:
    def test_zero(self):
        np.testing.assert_allclose(kernels.composite_rotation(np.zeros((3, 3))), np.eye(8))

    def test_single_qubit(self):
        p = [[0.3, 1.1, -0.4]]
        np.testing.assert_allclose(kernels.composite_rotation(p), kernels.su2_rotation(0.3, 1.1, -0.4))

    def test_tensor_structure(self):
        p = [[0.3, 1.1, -0.4], [0, 0, 0]]
        expected = np.kron(kernels.su2_rotation(0.3, 1.1, -0.4), np.eye(2))
        np.testing.assert_allclose(kernels.composite_rotation(p), expected)

    def test_batched_matches_kron(self):
        rng = np.random.default_rng(2)
        pts = rng.uniform(-3, 3, (5, 3, 3))
        batch = kernels.composite_rotations(pts)
        for p, u in zip(pts, batch):
            ref = np.kron(np.kron(expm_rotation(*p[0]), expm_rotation(*p[1])), expm_rotation(*p[2]))
            np.testing.assert_allclose(u, ref, atol=1e-13)


class TestExtendedParity:
    def test_su2n_one(self):
        np.testing.assert_allclose(
            kernels.extended_parity(Kind.SU2N, 1), np.diag([(1 + S3) / 2, (1 - S3) / 2]), atol=1e-15
        )

    def test_su2n_two(self):
        expected = np.diag([1 + 3 * S5, 1 - S5, 1 - S5, 1 - S5]) / 4
        np.testing.assert_allclose(kernels.extended_parity(Kind.SU2N, 2), expected, atol=1e-15)

    def test_su2n_two_pauli_form(self):
        i2 = np.eye(2)
        expected = (np.kron(i2, i2) + S5 * (np.kron(i2, SIGMA_Z) + np.kron(SIGMA_Z, i2) + np.kron(SIGMA_Z, SIGMA_Z))) / 4
        np.testing.assert_allclose(kernels.extended_parity(Kind.SU2N, 2), expected, atol=1e-15)

    def test_tensor_two(self):
        expected = np.diag([2 + S3, -1, -1, 2 - S3]) / 2
        np.testing.assert_allclose(kernels.extended_parity(Kind.TENSOR, 2), expected, atol=1e-15)

    def test_kinds_coincide_for_one_qubit(self):
        np.testing.assert_allclose(
            kernels.extended_parity(Kind.TENSOR, 1), kernels.extended_parity(Kind.SU2N, 1)
        )

    @pytest.mark.parametrize("n", range(1, 7))
    def test_unit_trace(self, n):
        for kind in KINDS:
            assert kernels.parity_diagonal(kind, n).sum() == pytest.approx(1, abs=1e-12)

    def test_parse(self):
        assert Kind.parse("su2n") is Kind.SU2N
        assert Kind.parse("TensorSU2") is Kind.TENSOR
        with pytest.raises(ValueError):
            Kind.parse("wootters")


class TestKernel:
    @pytest.mark.parametrize("kind", KINDS)
    def test_origin_is_parity(self, kind):
        np.testing.assert_allclose(kernels.kernel_at(np.zeros((3, 3)), kind), kernels.extended_parity(kind, 3))

    def test_single_qubit_closed_form(self):
        rng = np.random.default_rng(3)
        for t, f, F in rng.uniform(-3, 3, (100, 3)):
            nx, ny, nz = axis_formula(t, f)
            expected = 0.5 * (np.eye(2) + S3 * (nx * SIGMA_X + ny * SIGMA_Y + nz * SIGMA_Z))
            np.testing.assert_allclose(kernels.kernel_at([[t, f, F]], Kind.TENSOR), expected, atol=1e-14)

    @pytest.mark.parametrize("kind", KINDS)
    def test_trace_preserved(self, kind):
        rng = np.random.default_rng(4)
        for _ in range(20):
            d = kernels.kernel_at(rng.uniform(-3, 3, (3, 3)), kind)
            assert np.trace(d).real == pytest.approx(1, abs=1e-12)

    @pytest.mark.parametrize("kind", KINDS)
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_hermitian(self, kind, n):
        rng = np.random.default_rng(n)
        worst = 0.0
        for _ in range(1000 if n <= 2 else 250):
            d = kernels.kernel_at(rng.uniform(-np.pi, np.pi, (n, 3)), kind)
            worst = max(worst, np.abs(d - d.conj().T).max())
        assert worst < 1e-12

    @pytest.mark.parametrize("kind", KINDS)
    def test_big_phi_independence(self, kind):
        rng = np.random.default_rng(5)
        for _ in range(50):
            p = rng.uniform(-3, 3, (3, 3))
            q = p.copy()
            q[:, 2] = rng.uniform(-10, 10, 3)
            assert np.abs(kernels.kernel_at(p, kind) - kernels.kernel_at(q, kind)).max() < 1e-13

    @pytest.mark.parametrize("kind", KINDS)
    def test_spectrum_preserved(self, kind):
        rng = np.random.default_rng(6)
        ref = np.sort(kernels.parity_diagonal(kind, 3))
        for _ in range(20):
            vals = np.linalg.eigvalsh(kernels.kernel_at(rng.uniform(-3, 3, (3, 3)), kind))
            assert np.abs(np.sort(vals) - ref).max() < 1e-12

    @pytest.mark.parametrize("kind", KINDS)
    def test_z_covariance(self, kind):
        rng = np.random.default_rng(7)
        for _ in range(50):
            n = rng.integers(1, 4)
            rho = states.random_density(n, rng)
            p = rng.uniform(-3, 3, (n, 3))
            j = rng.integers(n)
            alpha = rng.uniform(-3, 3)
            v = np.array([[1.0]])
            for q in range(n):
                v = np.kron(v, expm(1j * SIGMA_Z * alpha) if q == j else np.eye(2))
            shifted = p.copy()
            shifted[j, 1] -= alpha
            lhs = np.trace(v @ rho @ v.conj().T @ kernels.kernel_at(p, kind))
            rhs = np.trace(rho @ kernels.kernel_at(shifted, kind))
            assert abs(lhs - rhs) < 1e-12

    @pytest.mark.parametrize("kind", KINDS)
    def test_y_covariance_at_zero_phi(self, kind):
        rng = np.random.default_rng(8)
        for _ in range(50):
            n = rng.integers(1, 4)
            rho = states.random_density(n, rng)
            p = rng.uniform(-3, 3, (n, 3))
            j = rng.integers(n)
            p[j, 1] = 0.0
            alpha = rng.uniform(-3, 3)
            v = np.array([[1.0]])
            for q in range(n):
                v = np.kron(v, expm(-1j * SIGMA_Y * alpha) if q == j else np.eye(2))
            shifted = p.copy()
            shifted[j, 0] -= alpha
            lhs = np.trace(v @ rho @ v.conj().T @ kernels.kernel_at(p, kind))
            rhs = np.trace(rho @ kernels.kernel_at(shifted, kind))
            assert abs(lhs - rhs) < 1e-12


class TestKernelAxis:
    def test_origin(self):
        np.testing.assert_allclose(kernels.kernel_axis(0, 0, 0), [0, 0, 1])

    @pytest.mark.parametrize("Phi", [0.0, 1.3, -2.0])
    def test_quarter_theta(self, Phi):
        np.testing.assert_allclose(kernels.kernel_axis(np.pi / 4, 0, Phi), [1, 0, 0], atol=1e-15)

    def test_unit_norm_and_agrees_with_kernel(self):
        rng = np.random.default_rng(9)
        for t, f, F in rng.uniform(-5, 5, (100, 3)):
            n = kernels.kernel_axis(t, f, F)
            assert abs(np.linalg.norm(n) - 1) < 1e-14
            d = kernels.kernel_at([[t, f, F]], Kind.TENSOR)
            measured = [np.trace(d @ s).real / S3 for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
            np.testing.assert_allclose(measured, n, atol=1e-14)

    def test_inverse(self):
        rng = np.random.default_rng(10)
        for v in rng.normal(size=(50, 3)):
            v /= np.linalg.norm(v)
            a = kernels.angles_for_axis(v)
            assert 0 <= a[0] <= np.pi / 2 and 0 <= a[1] < np.pi
            np.testing.assert_allclose(kernels.kernel_axis(*a), v, atol=1e-12)


def test_pauli_basis_orthonormal():
    b = kernels.pauli_basis(2)
    gram = np.einsum("aij,bji->ab", b, b)
    np.testing.assert_allclose(gram, np.eye(16), atol=1e-15)
