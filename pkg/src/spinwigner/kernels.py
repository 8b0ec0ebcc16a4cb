"""Euler-angle rotations, extended parity operators and displaced kernels.

A phase point is an ``(n, 3)`` array of per-qubit Euler angles
``(theta, phi, Phi)`` in radians; ``(n, 2)`` input is accepted with
``Phi = 0``. The kernel at a point is ``U Pi U^dagger`` where ``U`` is the
Kronecker product of the single-qubit rotations in qubit-index order.

Rotation convention::

    U(theta, phi, Phi) = exp(i sz phi) exp(-i sy theta) exp(i sz Phi)

With this sign the single-qubit kernel axis is
``(sin 2theta cos 2phi, -sin 2theta sin 2phi, cos 2theta)``, which is the
orientation under which the GHZ and clock-state closed forms in
:mod:`spinwigner.wigner` hold for every qubit count.
"""

import enum
from functools import reduce

import numpy as np

from .errors import InvalidArgument

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)
PAULIS = (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z)

SQRT3 = np.sqrt(3.0)


class Kind(str, enum.Enum):
    """Which extended parity defines the kernel."""

    SU2N = "su2n"
    TENSOR = "tensor"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("-", "").replace("_", "")
        aliases = {
            "su2n": cls.SU2N,
            "su2^n": cls.SU2N,
            "tensor": cls.TENSOR,
            "tensorsu2": cls.TENSOR,
        }
        if key not in aliases:
            raise InvalidArgument(f"unknown parity kind {value!r}", field="kind")
        return aliases[key]


def as_point(point, n=None):
    """Coerce a phase point to a float ``(n, 3)`` array."""
    p = np.asarray(point, dtype=float)
    if p.ndim == 1 and p.size in (2, 3):
        p = p[None, :]
    if p.ndim != 2 or p.shape[1] not in (2, 3):
        raise InvalidArgument(f"phase point must have shape (n, 3), got {p.shape}")
    if p.shape[1] == 2:
        p = np.concatenate([p, np.zeros((p.shape[0], 1))], axis=1)
    if not np.all(np.isfinite(p)):
        raise InvalidArgument("phase point angles must be finite")
    if n is not None and p.shape[0] != n:
        raise InvalidArgument(
            f"phase point has {p.shape[0]} qubits, state has {n}", field="point"
        )
    return p


def su2_rotation(theta, phi=0.0, Phi=0.0):
    """Single-qubit rotation for Euler angles (theta, phi, Phi).

    Broadcasts over array arguments; the result has shape ``(..., 2, 2)``.
    """
    theta, phi, Phi = np.broadcast_arrays(
        np.asarray(theta, float), np.asarray(phi, float), np.asarray(Phi, float)
    )
    c, s = np.cos(theta), np.sin(theta)
    ep, eP = np.exp(1j * phi), np.exp(1j * Phi)
    u = np.empty(theta.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = ep * c * eP
    u[..., 0, 1] = -ep * s / eP
    u[..., 1, 0] = s * eP / ep
    u[..., 1, 1] = c / (ep * eP)
    return u


def batched_kron(factors):
    """Kronecker product along axis -3 of a ``(..., n, 2, 2)`` stack."""
    factors = np.asarray(factors)
    out = factors[..., 0, :, :]
    for q in range(1, factors.shape[-3]):
        f = factors[..., q, :, :]
        d = out.shape[-1]
        out = (out[..., :, None, :, None] * f[..., None, :, None, :]).reshape(
            out.shape[:-2] + (2 * d, 2 * d)
        )
    return out


def composite_rotation(point):
    """Kronecker product of the per-qubit rotations at a phase point."""
    p = as_point(point)
    return batched_kron(su2_rotation(p[:, 0], p[:, 1], p[:, 2]))


def composite_rotations(points):
    """Vectorised :func:`composite_rotation` for a ``(K, n, 3)`` array."""
    pts = np.asarray(points, dtype=float)
    return batched_kron(su2_rotation(pts[..., 0], pts[..., 1], pts[..., 2]))


def parity_diagonal(kind, n):
    """Diagonal of the extended parity operator as a real vector."""
    kind = Kind.parse(kind)
    if kind is Kind.SU2N:
        d = 2**n
        root = np.sqrt(d + 1.0)
        diag = np.full(d, (1 - root) / d)
        diag[0] = (1 + (d - 1) * root) / d
        return diag
    single = np.array([(1 + SQRT3) / 2, (1 - SQRT3) / 2])
    return reduce(np.kron, [single] * n)


def extended_parity(kind, n):
    return np.diag(parity_diagonal(kind, n)).astype(complex)


def kernel_at(point, kind):
    """Displaced kernel ``U Pi U^dagger`` at a phase point."""
    p = as_point(point)
    u = composite_rotation(p)
    diag = parity_diagonal(kind, p.shape[0])
    return (u * diag) @ u.conj().T


def kernel_axis(theta, phi=0.0, Phi=0.0):
    """Unit vector n with single-qubit kernel equal to (I + sqrt(3) n.sigma)/2.

    Phi does not enter; it is accepted so Euler triples can be splatted in.
    """
    s2 = np.sin(2 * np.asarray(theta, float))
    phi = np.asarray(phi, float)
    return np.stack(
        np.broadcast_arrays(s2 * np.cos(2 * phi), -s2 * np.sin(2 * phi), np.cos(2 * theta)),
        axis=-1,
    )


def angles_for_axis(axis):
    """Euler angles (theta, phi, 0) whose kernel axis is ``axis``.

    Inverse of :func:`kernel_axis` on the fundamental domain
    theta in [0, pi/2], phi in [0, pi).
    """
    v = np.asarray(axis, dtype=float)
    v = v / np.linalg.norm(v)
    theta = 0.5 * np.arccos(np.clip(v[2], -1, 1))
    phi = (-0.5 * np.arctan2(v[1], v[0])) % np.pi
    return np.array([theta, phi, 0.0])


def pauli_basis(n):
    """Orthonormal Hermitian operator basis: n-fold tensor products of
    {I, sx, sy, sz} scaled by 2**(-n/2), in lexicographic order."""
    ops = np.array(PAULIS)
    basis = ops
    for _ in range(n - 1):
        basis = np.einsum("aij,bkl->abikjl", basis, ops).reshape(
            basis.shape[0] * 4, basis.shape[1] * 2, basis.shape[2] * 2
        )
    return basis / np.sqrt(2.0**n)
