"""Pointwise, sliced and integrated spin Wigner functions.

Two evaluation routes are kept deliberately separate:

* :func:`wigner_at` forms the displaced kernel and takes ``Tr(rho Delta)``.
* :func:`wigner_via_populations` / :func:`wigner_many` rotate the state and
  weight its diagonal by the parity entries, which is what an experiment
  that reads out populations actually does.

Phase-space integrals use the product measure
``(2/pi) sin(2 theta) dtheta dphi`` per qubit on theta in [0, pi/2],
phi in [0, pi), so each qubit contributes total measure 2.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument, UnsupportedForKind
from .kernels import (
    Kind,
    SQRT3,
    as_point,
    composite_rotations,
    kernel_at,
    parity_diagonal,
)
from .states import as_density, num_qubits

IMAG_TOL = 1e-10
_CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class WignerSample:
    point: np.ndarray
    value: float


@dataclass
class SliceGrid:
    """Wigner values on a 2-D grid; ``values[i, j]`` belongs to
    ``(axis_values[0][i], axis_values[1][j])``."""

    axis_names: list
    axis_values: list
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.axis_values = [np.asarray(a, dtype=float) for a in self.axis_values]
        self.values = np.asarray(self.values, dtype=float)
        expected = tuple(len(a) for a in self.axis_values)
        if self.values.shape != expected:
            raise InvalidArgument(
                f"grid values have shape {self.values.shape}, axes imply {expected}"
            )

    def to_dict(self):
        return {
            "axis_names": list(self.axis_names),
            "axis_values": [a.tolist() for a in self.axis_values],
            "values": self.values.tolist(),
            **({"meta": self.meta} if self.meta else {}),
        }


def _density_and_n(rho):
    rho = as_density(rho)
    return rho, num_qubits(rho.shape[0])


def wigner_at(rho, point, kind):
    """Tr(rho Delta(point)) for the chosen parity kind."""
    rho, n = _density_and_n(rho)
    p = as_point(point, n)
    value = np.trace(rho @ kernel_at(p, kind))
    if abs(value.imag) > IMAG_TOL:
        raise InvalidArgument(f"Wigner value has imaginary part {value.imag:.3e}")
    return float(value.real)


def rotated_populations(rho, points):
    """Diagonals of ``U^dagger rho U`` for a ``(K, n, 3)`` stack of points.

    Returns a real ``(K, 2**n)`` array.
    """
    rho = np.asarray(rho, dtype=complex)
    pts = np.asarray(points, dtype=float)
    d = rho.shape[0]
    chunk = max(1, _CHUNK_ELEMENTS // (d * d))
    out = np.empty((pts.shape[0], d))
    for start in range(0, pts.shape[0], chunk):
        u = composite_rotations(pts[start : start + chunk])
        m = rho @ u
        out[start : start + chunk] = np.einsum("kai,kai->ki", u.conj(), m).real
    return out


def wigner_many(rho, points, kind):
    """Population-route Wigner values at a ``(K, n, 3)`` stack of points."""
    rho, n = _density_and_n(rho)
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 3 or pts.shape[1] != n or pts.shape[2] not in (2, 3):
        raise InvalidArgument(f"points must have shape (K, {n}, 3), got {pts.shape}")
    if pts.shape[2] == 2:
        pts = np.concatenate([pts, np.zeros(pts.shape[:2] + (1,))], axis=2)
    return rotated_populations(rho, pts) @ parity_diagonal(kind, n)


def wigner_via_populations(rho, point, kind):
    """sum_n rho~_nn Pi_nn with rho~ = U^dagger rho U."""
    rho, n = _density_and_n(rho)
    p = as_point(point, n)
    return float(wigner_many(rho, p[None], kind)[0])


def _equal_angle_points(n, thetas, phis):
    t, f = np.meshgrid(thetas, phis, indexing="ij")
    pts = np.zeros((t.size, n, 3))
    pts[:, :, 0] = t.reshape(-1, 1)
    pts[:, :, 1] = f.reshape(-1, 1)
    return pts


def equal_angle_slice(rho, kind, thetas, phis):
    """W with theta_i = theta and phi_i = phi on every qubit."""
    rho, n = _density_and_n(rho)
    thetas, phis = np.atleast_1d(thetas), np.atleast_1d(phis)
    if thetas.size == 0 or phis.size == 0:
        raise InvalidArgument("slice axes must be nonempty")
    values = wigner_many(rho, _equal_angle_points(n, thetas, phis), kind)
    return SliceGrid(["theta", "phi"], [thetas, phis], values.reshape(thetas.size, phis.size))


def theta_theta_slice(rho, kind, thetas1, thetas2):
    """Two-qubit slice over (theta_1, theta_2) with every phi and Phi zero."""
    rho, n = _density_and_n(rho)
    if n != 2:
        raise InvalidArgument(f"theta-theta slice needs 2 qubits, got {n}")
    thetas1, thetas2 = np.atleast_1d(thetas1), np.atleast_1d(thetas2)
    if thetas1.size == 0 or thetas2.size == 0:
        raise InvalidArgument("slice axes must be nonempty")
    t1, t2 = np.meshgrid(thetas1, thetas2, indexing="ij")
    pts = np.zeros((t1.size, 2, 3))
    pts[:, 0, 0] = t1.ravel()
    pts[:, 1, 0] = t2.ravel()
    values = wigner_many(rho, pts, kind).reshape(t1.shape)
    return SliceGrid(["theta1", "theta2"], [thetas1, thetas2], values)


def equator_points(n, phi_values):
    phi_values = np.atleast_1d(np.asarray(phi_values, dtype=float))
    pts = np.zeros((phi_values.size, n, 3))
    pts[:, :, 0] = np.pi / 4
    pts[:, :, 1] = phi_values[:, None]
    return pts


def equator_scan(rho, kind, phi_values):
    """Samples at theta_i = pi/4, phi_i = phi for each phi."""
    rho, n = _density_and_n(rho)
    pts = equator_points(n, phi_values)
    values = wigner_many(rho, pts, kind)
    return [WignerSample(p, float(v)) for p, v in zip(pts, values)]


def analytic_ghz_wigner(n, gamma, point):
    """Closed-form tensor-kernel Wigner function of the GHZ/mixture family."""
    p = as_point(point, n)
    c2 = np.cos(2 * p[:, 0])
    s2 = np.sin(2 * p[:, 0])
    poles = (np.prod(1 + SQRT3 * c2) + np.prod(1 - SQRT3 * c2)) / 2 ** (n + 1)
    fringe = gamma / 2**n * np.prod(SQRT3 * s2) * np.cos(2 * np.sum(p[:, 1]))
    return float(poles + fringe)


def analytic_clock_wigner(n, point):
    """Closed-form tensor-kernel Wigner function of the n-qubit clock state."""
    p = as_point(point, n)
    k = np.arange(1, n + 1)
    factors = 1 + SQRT3 * np.sin(2 * p[:, 0]) * np.cos(2 * p[:, 1] + 2 * np.pi * k / n)
    return float(np.prod(factors) / 2**n)


@dataclass(frozen=True)
class Quadrature:
    """Per-qubit product rule: Gauss-Legendre in cos(2 theta), trapezoid in phi.

    ``theta_weights`` already include the (2/pi) sin(2 theta) density, so one
    qubit's weights sum to 2.
    """

    theta_nodes: np.ndarray
    theta_weights: np.ndarray
    phi_nodes: np.ndarray
    phi_weights: np.ndarray

    @classmethod
    def build(cls, n_theta=16, n_phi=6):
        if n_theta < 1 or n_phi < 1:
            raise InvalidArgument("quadrature needs at least one node per axis")
        u, w = np.polynomial.legendre.leggauss(n_theta)
        # u = cos(2 theta), sin(2 theta) dtheta = du / 2
        theta = 0.5 * np.arccos(u)
        theta_w = w / np.pi
        phi = np.pi * np.arange(n_phi) / n_phi
        phi_w = np.full(n_phi, np.pi / n_phi)
        return cls(theta, theta_w, phi, phi_w)

    @classmethod
    def default(cls, n):
        return cls.build(16, 4 * n + 2)

    def single_qubit(self):
        """Nodes ``(m, 3)`` and weights ``(m,)`` for one qubit."""
        t, f = np.meshgrid(self.theta_nodes, self.phi_nodes, indexing="ij")
        wt, wf = np.meshgrid(self.theta_weights, self.phi_weights, indexing="ij")
        nodes = np.stack([t.ravel(), f.ravel(), np.zeros(t.size)], axis=1)
        return nodes, (wt * wf).ravel()

    def product(self, n):
        """Nodes ``(m**n, n, 3)`` and weights of the n-qubit product rule."""
        nodes, weights = self.single_qubit()
        m = len(weights)
        idx = np.indices((m,) * n).reshape(n, -1).T
        return nodes[idx], np.prod(weights[idx], axis=1)


def _check_tensor(kind, what):
    if Kind.parse(kind) is not Kind.TENSOR:
        raise UnsupportedForKind(
            f"{what} is only defined for the tensor-product kernel; the SU(2^N) "
            "kernel has no integration measure in this parametrisation"
        )


def integrate_kernel(kind, n, q=None):
    """Quadrature of Delta(Omega) over the product measure (a 2**n matrix)."""
    q = Quadrature.default(n) if q is None else q
    pts, w = q.product(n)
    diag = parity_diagonal(kind, n)
    d = 2**n
    total = np.zeros((d, d), dtype=complex)
    chunk = max(1, _CHUNK_ELEMENTS // (d * d))
    for start in range(0, len(w), chunk):
        u = composite_rotations(pts[start : start + chunk])
        total += np.einsum("k,kab,b,kcb->ac", w[start : start + chunk], u, diag, u.conj())
    return total


def integrate_wigner(rho, kind, q=None):
    """Quadrature of W over phase space; equals Tr(rho) for a valid kernel."""
    rho, n = _density_and_n(rho)
    q = Quadrature.default(n) if q is None else q
    pts, w = q.product(n)
    return float(w @ wigner_many(rho, pts, kind))


def overlap_integral(rho1, rho2, kind=Kind.TENSOR, q=None):
    """Quadrature of W1 * W2; equals Tr(rho1 rho2) for the tensor kernel."""
    _check_tensor(kind, "overlap integral")
    rho1, n = _density_and_n(rho1)
    rho2, n2 = _density_and_n(rho2)
    if n != n2:
        raise InvalidArgument("states must have the same number of qubits")
    q = Quadrature.default(n) if q is None else q
    pts, w = q.product(n)
    return float(np.sum(w * wigner_many(rho1, pts, kind) * wigner_many(rho2, pts, kind)))


def marginal_slice(rho, kind=Kind.TENSOR, keep=0, q=None):
    """Marginal of W over every qubit except ``keep``, as a function of that
    qubit's Euler angles ``f(theta, phi, Phi=0)``."""
    _check_tensor(kind, "marginal")
    rho, n = _density_and_n(rho)
    if n < 2:
        raise InvalidArgument("marginal needs at least two qubits")
    if not 0 <= keep < n:
        raise InvalidArgument(f"keep must lie in [0, {n})", field="keep")
    q = Quadrature.default(n) if q is None else q
    others, w = q.product(n - 1)

    def marginal(theta, phi=0.0, Phi=0.0):
        pts = np.empty((len(w), n, 3))
        pts[:, [i for i in range(n) if i != keep]] = others
        pts[:, keep] = (theta, phi, Phi)
        return float(w @ wigner_many(rho, pts, kind))

    return marginal
