"""Simulated rotate-and-read-out measurement and density-matrix reconstruction.

Randomness comes from numpy's ``PCG64`` bit generator. A batch simulated
with :func:`simulate_records` derives the generator for setting ``k`` from
``SeedSequence(seed).spawn(K)[k]``, so every record is reproducible on its
own and independent of how the batch is split across workers.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import states
from .errors import InvalidArgument, NotInformationallyComplete, NumericFailure
from .kernels import (
    Kind,
    angles_for_axis,
    as_point,
    composite_rotation,
    composite_rotations,
    pauli_basis,
    parity_diagonal,
)
from .wigner import Quadrature, _check_tensor, rotated_populations

TETRAHEDRON_AXES = np.array(
    [
        [0.0, 0.0, 1.0],
        [np.sqrt(8 / 9), 0.0, -1 / 3],
        [-np.sqrt(2 / 9), np.sqrt(2 / 3), -1 / 3],
        [-np.sqrt(2 / 9), -np.sqrt(2 / 3), -1 / 3],
    ]
)


@dataclass(frozen=True)
class NoiseModel:
    """Per-qubit readout bit-flip and pre-rotation depolarizing probabilities.

    Either field may be a scalar (same for every qubit) or a per-qubit sequence.
    """

    readout_flip: object = 0.0
    depolarizing: object = 0.0

    def __post_init__(self):
        for name in ("readout_flip", "depolarizing"):
            v = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            if np.any(v < 0) or np.any(v > 1):
                raise InvalidArgument(f"{name} must lie in [0, 1]", field=name)

    def per_qubit(self, name, n):
        v = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
        if v.size == 1:
            return np.full(n, v[0])
        if v.size != n:
            raise InvalidArgument(f"{name} has {v.size} entries for {n} qubits", field=name)
        return v

    @property
    def is_ideal(self):
        return not (np.any(np.asarray(self.readout_flip)) or np.any(np.asarray(self.depolarizing)))


@dataclass(frozen=True)
class MeasurementSetting:
    point: np.ndarray
    shots: int

    def __post_init__(self):
        object.__setattr__(self, "point", as_point(self.point))
        if int(self.shots) < 1:
            raise InvalidArgument("shots must be a positive integer", field="shots")
        object.__setattr__(self, "shots", int(self.shots))


@dataclass
class CountRecord:
    """Shot counts for one setting; bitstrings put qubit 0 leftmost."""

    setting: MeasurementSetting
    counts: dict

    def __post_init__(self):
        n = self.n
        total = 0
        for bits, c in self.counts.items():
            if len(bits) != n or set(bits) - {"0", "1"}:
                raise InvalidArgument(f"bitstring {bits!r} is not {n} bits long")
            if int(c) < 0:
                raise InvalidArgument(f"negative count for {bits!r}")
            total += int(c)
        if total != self.setting.shots:
            raise InvalidArgument(
                f"counts sum to {total} but shots is {self.setting.shots}", field="counts"
            )

    @property
    def n(self):
        return self.setting.point.shape[0]

    @property
    def point(self):
        return self.setting.point

    @property
    def shots(self):
        return self.setting.shots

    def frequencies(self):
        """Outcome frequencies as a dense vector indexed by basis state."""
        f = np.zeros(2**self.n)
        for bits, c in self.counts.items():
            f[int(bits, 2)] += c
        return f / self.shots


@dataclass
class ReconstructionResult:
    rho_hat: np.ndarray
    residual_norm: float
    condition_number: float
    projected: bool
    rank: int = 0
    meta: dict = field(default_factory=dict)


def rotate_state(rho, point):
    """U^dagger rho U for the composite rotation at ``point``."""
    rho = states.as_density(rho)
    n = states.num_qubits(rho.shape[0])
    u = composite_rotation(as_point(point, n))
    return u.conj().T @ rho @ u


def depolarize(rho, probabilities):
    """Apply single-qubit depolarizing channels, qubit by qubit.

    Qubit ``q`` is replaced by I/2 with probability ``probabilities[q]``.
    """
    rho = np.asarray(rho, dtype=complex)
    n = states.num_qubits(rho.shape[0])
    for q, p in enumerate(probabilities):
        if p == 0:
            continue
        t = rho.reshape(2**q, 2, 2 ** (n - q - 1), 2**q, 2, 2 ** (n - q - 1))
        traced = np.einsum("aibcid->abcd", t)
        mixed = np.einsum("abcd,ij->aibcjd", traced, np.eye(2) / 2)
        rho = (1 - p) * rho + p * mixed.reshape(rho.shape)
    return rho


def _bitstrings(n):
    return [format(i, f"0{n}b") for i in range(2**n)]


def _draw(probs, shots, flips, rng):
    """Multinomial draw, then independent per-bit readout flips on every shot."""
    if np.min(probs) < -1e-10:
        raise NumericFailure("rotated state has a negative population")
    probs = np.clip(probs, 0, None)
    probs = probs / probs.sum()
    counts = rng.multinomial(shots, probs)
    n = len(flips)
    if np.any(flips > 0):
        outcomes = np.repeat(np.arange(probs.size), counts)
        masks = rng.random((shots, n)) < flips
        weights = 1 << np.arange(n - 1, -1, -1)
        outcomes ^= masks.astype(np.int64) @ weights
        counts = np.bincount(outcomes, minlength=probs.size)
    return counts


def _record(point, shots, counts, n):
    labels = _bitstrings(n)
    return CountRecord(
        MeasurementSetting(point, shots),
        {labels[i]: int(c) for i, c in enumerate(counts) if c},
    )


def sample_counts(rho, setting, noise=None, seed=0):
    """Simulate one rotate-and-read-out experiment.

    Depolarizing noise acts on ``rho`` before the rotation; readout flips act
    on each recorded bit. ``seed`` may be an int or a ``SeedSequence``.
    """
    noise = NoiseModel() if noise is None else noise
    rho = states.as_density(rho)
    n = states.num_qubits(rho.shape[0])
    if not isinstance(setting, MeasurementSetting):
        setting = MeasurementSetting(*setting)
    point = as_point(setting.point, n)
    noisy = depolarize(rho, noise.per_qubit("depolarizing", n))
    probs = rotated_populations(noisy, point[None])[0]
    rng = np.random.default_rng(seed)
    counts = _draw(probs, setting.shots, noise.per_qubit("readout_flip", n), rng)
    return _record(point, setting.shots, counts, n)


def simulate_records(rho, points, shots, noise=None, seed=0):
    """Simulate a batch of settings with per-setting derived generators."""
    noise = NoiseModel() if noise is None else noise
    rho = states.as_density(rho)
    n = states.num_qubits(rho.shape[0])
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 2:
        pts = pts[None]
    pts = np.stack([as_point(p, n) for p in pts])
    if int(shots) < 1:
        raise InvalidArgument("shots must be a positive integer", field="shots")
    noisy = depolarize(rho, noise.per_qubit("depolarizing", n))
    probs = rotated_populations(noisy, pts)
    flips = noise.per_qubit("readout_flip", n)
    children = np.random.SeedSequence(seed).spawn(len(pts))
    return [
        _record(p, int(shots), _draw(pr, int(shots), flips, np.random.default_rng(ss)), n)
        for p, pr, ss in zip(pts, probs, children)
    ]


def correct_readout(freqs, flips):
    """Invert independent per-qubit bit-flip confusion matrices."""
    freqs = np.asarray(freqs, dtype=float)
    n = len(flips)
    t = freqs.reshape([2] * n)
    for q, e in enumerate(flips):
        if e == 0:
            continue
        if abs(1 - 2 * e) < 1e-12:
            raise NumericFailure("readout flip probability 0.5 is not invertible")
        inv = np.linalg.inv(np.array([[1 - e, e], [e, 1 - e]]))
        t = np.moveaxis(np.tensordot(inv, t, axes=([1], [q])), 0, q)
    return t.reshape(-1)


def estimate_wigner(record, kind, readout_flip=None):
    """Plug-in Wigner estimate and its standard error from one count record.

    ``readout_flip`` (scalar or per-qubit) enables confusion-matrix inversion
    before weighting by the parity entries.
    """
    if record.shots <= 0:
        raise InvalidArgument("record has no shots", field="shots")
    values = parity_diagonal(kind, record.n)
    f = record.frequencies()
    if readout_flip is not None:
        flips = NoiseModel(readout_flip=readout_flip).per_qubit("readout_flip", record.n)
        f = correct_readout(f, flips)
    mean = float(f @ values)
    var = max(float(f @ values**2) - mean**2, 0.0)
    return mean, float(np.sqrt(var / record.shots))


def tetrahedral_points(n):
    """Product grid of the four per-qubit points whose kernel axes form a
    regular tetrahedron: ``(4**n, n, 3)``."""
    single = np.array([angles_for_axis(a) for a in TETRAHEDRON_AXES])
    idx = np.indices((4,) * n).reshape(n, -1).T
    return single[idx]


def kernel_stack(points, kind):
    """Displaced kernels at a ``(K, n, 3)`` stack of points."""
    pts = np.asarray(points, dtype=float)
    u = composite_rotations(pts)
    diag = parity_diagonal(kind, pts.shape[1])
    return np.einsum("kab,b,kcb->kac", u, diag, u.conj())


def design_matrix(points, kind):
    """Real matrix mapping Pauli-basis coefficients of rho to Wigner values.

    Row k, column P is Tr(P Delta(point_k)) with P from :func:`pauli_basis`.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 2:
        pts = pts[None]
    n = pts.shape[1]
    d = 2**n
    deltas = kernel_stack(pts, kind)
    basis = pauli_basis(n)
    # Tr(P D) = sum_ab P_ab D_ba
    return (deltas.transpose(0, 2, 1).reshape(len(pts), d * d) @ basis.reshape(-1, d * d).T).real


def _project_psd(rho):
    vals, vecs = np.linalg.eigh(rho)
    vals = np.clip(vals, 0, None)
    if vals.sum() <= 0:
        raise NumericFailure("projection removed the whole spectrum")
    vals = vals / vals.sum()
    return (vecs * vals) @ vecs.conj().T


def reconstruct_density(data, kind, project=False, readout_flip=None):
    """Linear-inversion reconstruction of rho from Wigner values.

    ``data`` is either a sequence of :class:`CountRecord` or a pair
    ``(points, values)``. Solved by QR least squares in the Pauli basis, then
    Hermitised and trace-normalised; ``project`` clips negative eigenvalues.
    """
    if isinstance(data, tuple) and len(data) == 2:
        points, values = data
        pts = np.asarray(points, dtype=float)
        values = np.asarray(values, dtype=float)
    else:
        records = list(data)
        if not records:
            raise InvalidArgument("no data to reconstruct from")
        pts = np.stack([r.point for r in records])
        values = np.array([estimate_wigner(r, kind, readout_flip)[0] for r in records])
    if pts.ndim != 3 or len(pts) != len(values):
        raise InvalidArgument("points and values must align")
    n = pts.shape[1]
    a = design_matrix(pts, kind)
    required = 4**n
    rank = int(np.linalg.matrix_rank(a))
    if rank < required:
        raise NotInformationallyComplete(rank, required)
    q, r = scipy.linalg.qr(a, mode="economic")
    coeffs = scipy.linalg.solve_triangular(r, q.T @ values)
    residual = float(np.linalg.norm(a @ coeffs - values))
    sv = np.linalg.svd(a, compute_uv=False)
    rho = np.einsum("p,pab->ab", coeffs, pauli_basis(n))
    rho = (rho + rho.conj().T) / 2
    tr = np.trace(rho).real
    if abs(tr) < 1e-12:
        raise NumericFailure("reconstructed operator has zero trace")
    rho = rho / tr
    if project:
        rho = _project_psd(rho)
    return ReconstructionResult(
        rho_hat=rho,
        residual_norm=residual,
        condition_number=float(sv[0] / sv[-1]),
        projected=bool(project),
        rank=rank,
    )


def weyl_inverse_tensor(wigner, n, q=None, kind=Kind.TENSOR):
    """rho = integral of W(Omega) Delta(Omega) over the product measure.

    ``wigner`` is either a callable taking a ``(K, n, 3)`` array of points, or
    an array of values on the nodes of ``q.product(n)``.
    """
    _check_tensor(kind, "Weyl inverse")
    q = Quadrature.default(n) if q is None else q
    pts, w = q.product(n)
    values = wigner(pts) if callable(wigner) else np.asarray(wigner, dtype=float)
    if values.shape != w.shape:
        raise InvalidArgument(f"expected {w.size} Wigner values, got {values.size}")
    d = 2**n
    rho = np.zeros((d, d), dtype=complex)
    chunk = max(1, (1 << 22) // (d * d))
    for start in range(0, len(w), chunk):
        sl = slice(start, start + chunk)
        rho += np.einsum("k,kab->ab", w[sl] * values[sl], kernel_stack(pts[sl], kind))
    return rho


def _psd_sqrt(rho):
    vals, vecs = np.linalg.eigh(rho)
    if vals.min() < states.EIGEN_FLOOR:
        raise InvalidArgument("fidelity needs positive semidefinite inputs")
    return (vecs * np.sqrt(np.clip(vals, 0, None))) @ vecs.conj().T


def fidelity(rho, sigma):
    """Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))**2."""
    rho = np.asarray(rho, dtype=complex)
    sigma = np.asarray(sigma, dtype=complex)
    if rho.ndim == 1:
        rho = states.density(rho)
    if sigma.ndim == 1:
        sigma = states.density(sigma)
    if rho.shape != sigma.shape:
        raise InvalidArgument("states must have the same dimension")
    if np.linalg.eigvalsh(sigma).min() < states.EIGEN_FLOOR:
        raise InvalidArgument("fidelity needs positive semidefinite inputs")
    s = _psd_sqrt(rho)
    inner = s @ sigma @ s
    vals = np.clip(np.linalg.eigvalsh((inner + inner.conj().T) / 2), 0, None)
    return float(min(np.sum(np.sqrt(vals)) ** 2, 1.0))


def frobenius_distance(rho, sigma):
    return float(np.linalg.norm(np.asarray(rho) - np.asarray(sigma)))
