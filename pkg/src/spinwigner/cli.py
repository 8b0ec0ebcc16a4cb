"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 data/schema errors, 4 numeric/model errors.
Angles are radians, shots are counts, error rates are probabilities.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__, io, states
from .errors import (
    InvalidArgument,
    NotInformationallyComplete,
    NumericFailure,
    SchemaError,
    SpinWignerError,
    UnderdeterminedFit,
    UnsupportedForKind,
)
from .kernels import Kind, kernel_at, parity_diagonal
from .tomography import (
    NoiseModel,
    design_matrix,
    fidelity,
    reconstruct_density,
    simulate_records,
    tetrahedral_points,
)
from .wigner import (
    Quadrature,
    equal_angle_slice,
    equator_points,
    integrate_kernel,
    overlap_integral,
    theta_theta_slice,
    wigner_many,
)
from .witness import (
    EquatorScanResult,
    certify_ghz_entanglement,
    equator_grid,
    simulate_equator_scan,
)

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    pass


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _probability(text):
    value = float(text)
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"must be a probability in [0, 1], got {text}")
    return value


def _metadata(args):
    argv = list(getattr(args, "_argv", []))
    # output path is left out so reruns to different files stay byte-identical
    if "--out" in argv:
        i = argv.index("--out")
        del argv[i : i + 2]
    meta = {"tool": "spinwigner", "version": __version__, "command": " ".join(argv)}
    if getattr(args, "seed", None) is not None:
        meta["seed"] = args.seed
    return meta


def _write(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _density(arg):
    return states.as_density(io.load_state_arg(arg))


def _points(spec, n):
    """Resolve a ``--points`` value: builtin name or JSON file of phase points."""
    if spec.startswith("equator:"):
        return equator_points(n, equator_grid(int(spec.split(":", 1)[1])))
    if spec == "tetrahedral-grid":
        return tetrahedral_points(n)
    if spec.startswith("raster:"):
        res = int(spec.split(":", 1)[1])
        thetas = np.linspace(0, np.pi / 2, res)
        phis = np.pi * np.arange(res) / res
        t, f = np.meshgrid(thetas, phis, indexing="ij")
        pts = np.zeros((t.size, n, 3))
        pts[:, :, 0] = t.reshape(-1, 1)
        pts[:, :, 1] = f.reshape(-1, 1)
        return pts
    with open(spec, encoding="utf-8") as fh:
        pts = io.parse_phase_points(fh.read())
    if pts.shape[1] != n:
        raise InvalidArgument(f"points describe {pts.shape[1]} qubits, state has {n}")
    return pts


def _noise(args):
    return NoiseModel(readout_flip=args.readout_error, depolarizing=args.depolarizing)


# ---------------------------------------------------------------- commands

def cmd_state(args):
    rho = _density(args.state)
    n = states.num_qubits(rho.shape[0])
    doc = {
        "n": n,
        "purity": float(np.trace(rho @ rho).real),
        "rho": io.matrix_to_pairs(rho),
        "meta": _metadata(args),
    }
    _write(json.dumps(doc, indent=1) + "\n", args.out)


def cmd_slice(args):
    rho = _density(args.state)
    kind = Kind.parse(args.kind)
    res = args.res
    if args.slice == "equal-angle":
        grid = equal_angle_slice(rho, kind, np.linspace(0, np.pi / 2, res), np.pi * np.arange(res) / res)
    else:
        grid = theta_theta_slice(rho, kind, np.pi * np.arange(res) / res, np.pi * np.arange(res) / res)
    if args.format == "json":
        grid.meta = _metadata(args)
        _write(io.dumps_grid_json(grid), args.out)
    else:
        _write(io.dumps_grid_csv(grid, _metadata(args)), args.out)


def cmd_scan(args):
    rho = _density(args.state)
    n = states.num_qubits(rho.shape[0])
    phi = equator_grid(args.count)
    values = wigner_many(rho, equator_points(n, phi), args.kind)
    scan = EquatorScanResult.exact(phi, values)
    _write(io.dumps_scan(scan, n, args.angle_convention, _metadata(args)), args.out)


def cmd_simulate(args):
    rho = _density(args.state)
    n = states.num_qubits(rho.shape[0])
    pts = _points(args.points, n)
    records = simulate_records(rho, pts, args.shots, _noise(args), args.seed)
    _write(io.dumps_count_records(records, _metadata(args)), args.out)


def cmd_reconstruct(args):
    with open(args.records, encoding="utf-8") as fh:
        records, _ = io.parse_count_records(fh.read())
    result = reconstruct_density(
        records, Kind.parse(args.kind), project=args.project, readout_flip=args.readout_correction
    )
    fid = None
    if args.truth:
        fid = fidelity(_density(args.truth), result.rho_hat)
    _write(io.dumps_reconstruction(result, fid, _metadata(args)), args.out)
    if fid is not None:
        print(f"fidelity vs truth: {fid:.12f}", file=sys.stderr)


def cmd_certify(args):
    convention = args.angle_convention
    if args.scan:
        with open(args.scan, encoding="utf-8") as fh:
            scan, convention, n_doc = io.parse_scan(fh.read())
        n = args.n or n_doc
        if n is None:
            raise UsageError("--n is required when the scan file does not record n")
    else:
        rho = _density(args.simulate_from)
        n = states.num_qubits(rho.shape[0])
        if args.n and args.n != n:
            raise UsageError(f"--n {args.n} disagrees with the {n}-qubit state")
        scan = simulate_equator_scan(rho, n, args.count, args.shots, _noise(args), args.seed)
    verdict = certify_ghz_entanglement(scan, n, args.threshold, convention)
    _write(io.dumps_verdict(verdict, _metadata(args)), args.out)


def _parse_quadrature(text, n):
    if text == "default":
        return Quadrature.default(n) if n <= 2 else Quadrature.build(6, 6)
    try:
        nt, nf = (int(v) for v in text.lower().split("x"))
    except ValueError as exc:
        raise UsageError(f"quadrature must look like 16x10, got {text!r}") from exc
    return Quadrature.build(nt, nf)


def swcheck(kind, n, q, tol=None, seed=0, samples=200):
    """Run the Stratonovich-Weyl property checks; returns a list of row dicts."""
    kind = Kind.parse(kind)
    rng = np.random.default_rng(seed)
    tol = tol if tol is not None else (1e-11 if n == 1 else 1e-9)
    rows = []

    def row(name, error, limit, note=""):
        rows.append({
            "check": name,
            "status": "pass" if error <= limit else "fail",
            "error": float(error),
            "tolerance": limit,
            **({"note": note} if note else {}),
        })

    a = design_matrix(tetrahedral_points(n), kind)
    rank = np.linalg.matrix_rank(a)
    row("S-W.1", float(4**n - rank), 0, f"design-matrix rank {rank} of {4**n}")

    herm = 0.0
    for _ in range(samples):
        d = kernel_at(rng.uniform(-np.pi, np.pi, (n, 3)), kind)
        herm = max(herm, np.abs(d - d.conj().T).max())
    row("S-W.2", herm, 1e-12)

    if kind is Kind.TENSOR:
        err = np.abs(integrate_kernel(kind, n, q) - np.eye(2**n)).max()
        row("S-W.3", err, tol)
        worst = 0.0
        for _ in range(5):
            r1 = states.random_density(n, rng)
            r2 = states.random_density(n, rng)
            exact = np.trace(r1 @ r2).real
            worst = max(worst, abs(overlap_integral(r1, r2, kind, q) - exact))
        row("S-W.4", worst, max(tol, 1e-8) if n > 1 else tol)
    else:
        for name in ("S-W.3", "S-W.4"):
            rows.append({"check": name, "status": "skipped", "note": "measure unspecified"})

    worst = 0.0
    for _ in range(20):
        rho = states.random_density(n, rng)
        p = rng.uniform(-np.pi, np.pi, (n, 3))
        j = rng.integers(n)
        alpha = rng.uniform(-np.pi, np.pi)
        v = np.array([[1.0]])
        for q_ in range(n):
            f = np.diag([np.exp(1j * alpha), np.exp(-1j * alpha)]) if q_ == j else np.eye(2)
            v = np.kron(v, f)
        shifted = p.copy()
        shifted[j, 1] -= alpha
        lhs = np.trace(v @ rho @ v.conj().T @ kernel_at(p, kind)).real
        rhs = np.trace(rho @ kernel_at(shifted, kind)).real
        worst = max(worst, abs(lhs - rhs))
    row("S-W.5", worst, 1e-12)
    return rows


def cmd_swcheck(args):
    q = _parse_quadrature(args.quadrature, args.n)
    rows = swcheck(args.kind, args.n, q, args.tol, args.seed)
    for r in rows:
        err = f"{r['error']:.3e}" if "error" in r else "-"
        print(f"{r['check']:6s} {r['status']:8s} {err:>10s}  {r.get('note', '')}", file=sys.stderr)
    doc = {
        "kind": Kind.parse(args.kind).value,
        "n": args.n,
        "parity_trace": float(parity_diagonal(args.kind, args.n).sum()),
        "checks": rows,
        "meta": _metadata(args),
    }
    _write(json.dumps(doc, indent=1) + "\n", args.out)
    if any(r["status"] == "fail" for r in rows):
        return EXIT_NUMERIC
    return 0


# ------------------------------------------------------------------ parser

def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinwigner",
        description="Spin Wigner functions: evaluate, simulate measurement, reconstruct, certify.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def state_arg(p, required=True, flag="--state"):
        p.add_argument(flag, required=required,
                       help='state spec: inline JSON such as \'{"kind":"ghz","n":5}\' or a JSON file path')

    def kind_arg(p, default="tensor"):
        p.add_argument("--kind", choices=["su2n", "tensor"], default=default,
                       help="extended parity: su2n (full-group) or tensor (product of qubit parities)")

    def out_arg(p, required=False):
        p.add_argument("--out", required=required, default=None,
                       help="output path (stdout when omitted)")

    def noise_args(p):
        p.add_argument("--readout-error", type=_probability, default=0.0,
                       help="per-bit readout flip probability [probability, default 0]")
        p.add_argument("--depolarizing", type=_probability, default=0.0,
                       help="per-qubit depolarizing probability before rotation [probability, default 0]")
        p.add_argument("--seed", type=int, default=0, help="RNG seed [integer, default 0]")

    p = sub.add_parser("state", help="print the density matrix of a state spec")
    state_arg(p)
    out_arg(p)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("slice", help="evaluate a Wigner slice on a grid (CSV or JSON)")
    state_arg(p)
    kind_arg(p)
    p.add_argument("--slice", choices=["equal-angle", "theta-theta"], default="equal-angle",
                   help="equal-angle: theta in [0, pi/2], phi in [0, pi) on all qubits [radians]; "
                        "theta-theta: theta1, theta2 in [0, pi) with phi = 0 (2 qubits) [radians]")
    p.add_argument("--res", type=_positive_int, default=64, help="grid points per axis [count]")
    p.add_argument("--format", choices=["csv", "json"], default="csv", help="output format")
    out_arg(p, required=True)
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("scan", help="exact equatorial scan (theta = pi/4) as a scan document")
    state_arg(p)
    kind_arg(p)
    p.add_argument("--count", type=_positive_int, default=50, help="phi samples on [0, pi) [count]")
    p.add_argument("--angle-convention", choices=["paper", "hardware"], default="paper",
                   help="paper: phi; hardware: phi_tilde = 2 phi [radians]")
    out_arg(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("simulate", help="simulate rotate-and-read-out count records")
    state_arg(p)
    p.add_argument("--points", default="tetrahedral-grid",
                   help="phase points: equator:<count>, tetrahedral-grid, raster:<res>, "
                        "or a JSON file of {\"angles\": [[theta, phi, Phi], ...]} [radians]")
    p.add_argument("--shots", type=_positive_int, required=True, help="shots per setting [count]")
    noise_args(p)
    out_arg(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("reconstruct", help="reconstruct rho from count records")
    p.add_argument("--records", required=True, help="count-record batch JSON file")
    kind_arg(p)
    p.add_argument("--project", action="store_true",
                   help="clip negative eigenvalues and renormalise")
    p.add_argument("--readout-correction", type=_probability, default=None,
                   help="invert per-qubit readout confusion with this flip rate [probability]")
    state_arg(p, required=False, flag="--truth")
    out_arg(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("certify", help="equatorial-fringe GHZ entanglement test")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--scan", help="scan document JSON file")
    src.add_argument("--simulate-from", help="state spec to simulate a scan from (inline JSON or path)")
    p.add_argument("--n", type=_positive_int, default=None, help="number of qubits [count]")
    p.add_argument("--threshold", type=float, default=5.0,
                   help="certification threshold [standard deviations, default 5]")
    p.add_argument("--angle-convention", choices=["paper", "hardware"], default="paper",
                   help="label for simulated scans; scan files carry their own tag")
    p.add_argument("--count", type=_positive_int, default=50, help="simulated phi samples [count]")
    p.add_argument("--shots", type=_positive_int, default=8192, help="simulated shots per point [count]")
    noise_args(p)
    out_arg(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("swcheck", help="Stratonovich-Weyl property table")
    kind_arg(p)
    p.add_argument("--n", type=_positive_int, default=2, help="number of qubits [count, <= 3]")
    p.add_argument("--quadrature", default="default",
                   help="NTHETAxNPHI nodes per qubit, e.g. 16x10 [count]; default 16x(4n+2), 6x6 for n = 3")
    p.add_argument("--tol", type=float, default=None,
                   help="S-W.3/S-W.4 tolerance [absolute; default 1e-11 for n = 1, else 1e-9]")
    p.add_argument("--seed", type=int, default=0, help="seed for random test states [integer]")
    out_arg(p)
    p.set_defaults(func=cmd_swcheck)
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = [args.command] + argv[1:]
    try:
        if args.command == "swcheck" and args.n > 3:
            raise UsageError("swcheck supports n <= 3")
        code = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotInformationallyComplete, UnderdeterminedFit, NumericFailure, UnsupportedForKind) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SchemaError, InvalidArgument, OSError) as exc:
        field = getattr(exc, "field", None)
        suffix = f" (field {field})" if field else ""
        print(f"{type(exc).__name__}: {exc}{suffix}", file=sys.stderr)
        return EXIT_DATA
    except SpinWignerError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
