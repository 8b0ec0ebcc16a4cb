"""N-qubit pure and mixed states.

Pure states are complex vectors of length ``2**n`` and density matrices are
complex ``2**n x 2**n`` arrays. Qubit 0 is the leftmost tensor factor, so in
a basis index the most significant bit belongs to qubit 0.
"""

from functools import reduce

import numpy as np

from .errors import DegenerateSuperposition, InvalidArgument

MAX_QUBITS = 12

NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
EIGEN_FLOOR = -1e-10

_SQRT_HALF = 1 / np.sqrt(2)


def num_qubits(dim):
    """Number of qubits for a Hilbert-space dimension, which must be 2**n."""
    n = int(dim).bit_length() - 1
    if dim < 2 or 1 << n != dim:
        raise InvalidArgument(f"dimension {dim} is not a power of two >= 2")
    return n


def _check_n(n, minimum=1):
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidArgument(f"n must be an integer, got {n!r}", field="n")
    if n < minimum or n > MAX_QUBITS:
        raise InvalidArgument(
            f"n must lie in [{minimum}, {MAX_QUBITS}], got {n}", field="n"
        )
    return int(n)


def check_pure(psi):
    """Validate a state vector and return it as a complex array."""
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1:
        raise InvalidArgument("state vector must be one-dimensional")
    num_qubits(psi.size)
    norm = np.linalg.norm(psi)
    if abs(norm - 1) > NORM_TOL:
        raise InvalidArgument(f"state vector has norm {norm!r}, expected 1")
    return psi


def check_density(rho):
    """Validate a density matrix (Hermitian, unit trace, PSD up to round-off)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidArgument(f"density matrix must be square, got {rho.shape}")
    num_qubits(rho.shape[0])
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise InvalidArgument("density matrix is not Hermitian")
    tr = np.trace(rho)
    if abs(tr - 1) > TRACE_TOL:
        raise InvalidArgument(f"density matrix has trace {tr!r}, expected 1")
    if np.linalg.eigvalsh(rho).min() < EIGEN_FLOOR:
        raise InvalidArgument("density matrix has a negative eigenvalue")
    return rho


def clip_psd(rho):
    """Zero out round-off negative eigenvalues in (EIGEN_FLOOR, 0)."""
    vals, vecs = np.linalg.eigh(rho)
    if vals.min() < EIGEN_FLOOR:
        raise InvalidArgument("density matrix has a negative eigenvalue")
    vals = np.clip(vals, 0, None)
    return (vecs * vals) @ vecs.conj().T


def basis_state(bits):
    """Computational basis ket for a bit sequence such as ``"0110"`` or ``[0, 1]``."""
    bits = [int(b) for b in bits]
    if not bits or any(b not in (0, 1) for b in bits):
        raise InvalidArgument(f"invalid bitstring {bits!r}")
    psi = np.zeros(2 ** len(bits), dtype=complex)
    psi[int("".join(map(str, bits)), 2)] = 1
    return psi


def bell(which):
    """Two-qubit Bell state; ``which`` is one of ``"phi+"``, ``"phi-"``,
    ``"psi+"``, ``"psi-"``."""
    key = str(which).lower().replace("φ", "phi").replace("ψ", "psi")
    key = key.replace("plus", "+").replace("minus", "-")
    table = {
        "phi+": (1, 0, 0, 1),
        "phi-": (1, 0, 0, -1),
        "psi+": (0, 1, 1, 0),
        "psi-": (0, 1, -1, 0),
    }
    if key not in table:
        raise InvalidArgument(f"unknown Bell state {which!r}", field="which")
    return np.array(table[key], dtype=complex) * _SQRT_HALF


def ghz(n):
    """(|0...0> + |1...1>)/sqrt(2)."""
    n = _check_n(n, minimum=2)
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = psi[-1] = _SQRT_HALF
    return psi


def w_state(n):
    """Equal superposition of all weight-one bitstrings."""
    n = _check_n(n, minimum=2)
    psi = np.zeros(2**n, dtype=complex)
    psi[[1 << k for k in range(n)]] = 1 / np.sqrt(n)
    return psi


def clock_state(n):
    """Product of (|0> + exp(2 pi i k/n)|1>)/sqrt(2) for k = 1..n.

    Factor k sits at tensor position k - 1.
    """
    n = _check_n(n)
    factors = [
        np.array([1, np.exp(2j * np.pi * k / n)]) * _SQRT_HALF for k in range(1, n + 1)
    ]
    return reduce(np.kron, factors)


def ghz_family(n, gamma):
    """gamma |GHZ><GHZ| + (1 - gamma)(|0..0><0..0| + |1..1><1..1|)/2."""
    n = _check_n(n, minimum=2)
    gamma = float(gamma)
    if not 0 <= gamma <= 1:
        raise InvalidArgument(f"gamma must lie in [0, 1], got {gamma}", field="gamma")
    d = 2**n
    rho = np.zeros((d, d), dtype=complex)
    rho[0, 0] = rho[-1, -1] = 0.5
    rho[0, -1] = rho[-1, 0] = gamma / 2
    return rho


def product_state(bloch_angles):
    """Tensor product of cos(T/2)|0> + exp(i f) sin(T/2)|1> for each (T, f)."""
    bloch_angles = list(bloch_angles)
    if not bloch_angles:
        raise InvalidArgument("need at least one qubit", field="bloch_angles")
    _check_n(len(bloch_angles))
    factors = [
        np.array([np.cos(t / 2), np.exp(1j * f) * np.sin(t / 2)])
        for t, f in bloch_angles
    ]
    return reduce(np.kron, factors).astype(complex)


def superpose(a, b):
    """Normalised (|a> + |b>)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise InvalidArgument("superposed states must have the same number of qubits")
    s = a + b
    norm = np.linalg.norm(s)
    if norm < 1e-12:
        raise DegenerateSuperposition("superposition has zero norm")
    return s / norm


def density(psi):
    """|psi><psi|."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def as_density(state):
    """Accept either a ket or a density matrix and return a density matrix."""
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        return density(check_pure(state))
    return check_density(state)


def mixture(terms):
    """Convex combination of density matrices given as ``(weight, rho)`` pairs."""
    terms = list(terms)
    if not terms:
        raise InvalidArgument("mixture needs at least one term", field="terms")
    weights = np.array([float(w) for w, _ in terms])
    if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise InvalidArgument("mixture weights must be nonnegative and sum to 1")
    rhos = [as_density(r) for _, r in terms]
    if len({r.shape for r in rhos}) != 1:
        raise InvalidArgument("mixture terms must have the same number of qubits")
    return sum(w * r for w, r in zip(weights, rhos))


def reduced_density(rho, keep):
    """Partial trace over every qubit not in ``keep``.

    Kept qubits appear in ascending index order.
    """
    rho = np.asarray(rho, dtype=complex)
    n = num_qubits(rho.shape[0])
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise InvalidArgument("keep must be nonempty", field="keep")
    if keep[0] < 0 or keep[-1] >= n:
        raise InvalidArgument(f"qubit indices must lie in [0, {n})", field="keep")
    traced = [q for q in range(n) if q not in keep]
    t = rho.reshape([2] * (2 * n))
    # trace out from the highest index down so remaining axis numbers stay valid
    for count, q in enumerate(reversed(traced)):
        m = n - count
        t = np.trace(t, axis1=q, axis2=q + m)
    k = 2 ** len(keep)
    return t.reshape(k, k)


def maximally_mixed(n):
    n = _check_n(n)
    return np.eye(2**n, dtype=complex) / 2**n


def random_density(n, rng, rank=None):
    """Random density matrix from a Ginibre ensemble of the given rank."""
    d = 2 ** _check_n(n)
    rank = d if rank is None else rank
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure(n, rng):
    d = 2 ** _check_n(n)
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    return psi / np.linalg.norm(psi)
