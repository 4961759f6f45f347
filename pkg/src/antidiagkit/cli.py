"""Command line front end.

Subcommands: analyze, decompose, verify, graph.  Exit codes: 0 pass,
1 verification failure, 2 parse error, 3 solver failure, 4 precondition
violated.  ANTIDIAG_TOL provides the default relative tolerance; --tol
overrides it per invocation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import duodiag, eigenjordan, matcore, matio, permsim, schur
from .antidiag import from_dense, to_dense
from .errors import (AntidiagError, NoConvergence, NotAntidiagonal,
                     SingularMatrix)
from .matcore import frobenius
from .spectra import spectrum_symmetry
from .tolerances import Tolerance

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARSE = 2
EXIT_SOLVER = 3
EXIT_PRECONDITION = 4

KINDS = ("perm_quasidiag", "eigen", "jordan", "unitary_diag", "schur",
         "sym_antidiag", "antisym_antidiag", "orth_antisym")

_ANCHORS = {
    "perm_quasidiag": "constant row-pairing permutation to hollow quasidiagonal form",
    "eigen": "pairwise modal diagonalization of an antidiagonal matrix",
    "jordan": "generalized modal matrix; one 2x2 nilpotent block per defective pair",
    "unitary_diag": "scaled modal matrix, unitary exactly when pair moduli agree",
    "schur": "per-pair unitary triangularization with free phase parameters",
    "sym_antidiag": "constant modal transport to a symmetric antidiagonal target",
    "antisym_antidiag": "modal transport to an antisymmetric antidiagonal target",
    "orth_antisym": "invariant-plane rotation basis for a real antisymmetric matrix",
}


def _fmt_complex(z, digits=6):
    z = complex(z)
    return f"{z.real:.{digits}g}{z.imag:+.{digits}g}i"


def _resolve_tolerance(args) -> Tolerance:
    rel = None
    if getattr(args, "tol", None) is not None:
        rel = args.tol
    else:
        env = os.environ.get("ANTIDIAG_TOL")
        if env:
            try:
                rel = float(env)
            except ValueError:
                raise matio.ParseError(f"ANTIDIAG_TOL is not a number: {env!r}")
    return Tolerance() if rel is None else Tolerance(rel=rel)


def _emit(payload, fmt):
    if fmt == "json":
        json.dump(payload, sys.stdout, indent=2, default=str)
        sys.stdout.write("\n")
    else:
        for line in payload["lines"]:
            print(line)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    tol = _resolve_tolerance(args)
    m = matio.load_matrix(args.input)
    m = matcore.ensure_square(m)
    flags = matcore.predicates(m, tol)
    eig = matcore.eig_dense(m, tol=tol)
    report = spectrum_symmetry(eig.values, trace=np.trace(m), tol=tol)
    cls = eigenjordan.classify_antidiagonalizable(m, tol)
    duo = duodiag.classify_duodiagonalizable(m, tol)
    try:
        spec = from_dense(m, tol)
        coeffs = [_fmt_complex(c) for c in spec.coeffs]
    except NotAntidiagonal:
        coeffs = None

    payload = {
        "structure": {
            "is_unitary": flags.is_unitary, "is_normal": flags.is_normal,
            "is_symmetric": flags.is_symmetric, "is_antisymmetric": flags.is_antisymmetric,
            "is_hollow": flags.is_hollow, "is_pseudo_hollow": flags.is_pseudo_hollow,
            "is_antidiagonal": coeffs is not None,
        },
        "antidiagonal_coefficients": coeffs,
        "spectrum": {
            "eigenvalues": [_fmt_complex(v) for v in report.eigenvalues],
            "symmetric": report.symmetric,
            "c_symmetric": report.c_symmetric,
            "center": _fmt_complex(report.center) if report.center is not None else None,
        },
        "antidiagonalizable": cls.antidiagonalizable,
        "antidiagonalizable_reason": cls.reason,
        "duodiagonalizable": duo.duodiagonalizable,
        "duodiagonalizable_reason": duo.reason,
    }
    lines = [f"matrix: {m.shape[0]} x {m.shape[1]}"]
    on = [k for k, v in payload["structure"].items() if v]
    lines.append("structure: " + (", ".join(on) if on else "(none)"))
    if coeffs is not None:
        lines.append("antidiagonal coefficients (center-outward): " + ", ".join(coeffs))
    lines.append("eigenvalues: " + ", ".join(payload["spectrum"]["eigenvalues"]))
    sym = "symmetric" if report.symmetric else (
        f"c-symmetric (center {payload['spectrum']['center']})" if report.c_symmetric
        else "neither symmetric nor c-symmetric")
    lines.append(f"spectrum: {sym}")
    verdict = "antidiagonalizable" if cls.antidiagonalizable else "not antidiagonalizable"
    lines.append(f"{verdict}: {cls.reason}")
    verdict = "duodiagonalizable" if duo.duodiagonalizable else "not duodiagonalizable"
    lines.append(f"{verdict}: {duo.reason}")
    payload["lines"] = lines
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# decompose
# ---------------------------------------------------------------------------

def _decompose_factors(kind, m, tol):
    """Returns (factors dict, transform name, core name)."""
    if kind in ("perm_quasidiag", "eigen", "jordan", "unitary_diag", "schur"):
        spec = from_dense(m, tol)
    if kind == "perm_quasidiag":
        dec = permsim.perm_quasidiag(spec)
        return {"P": dec.p, "Q": dec.q}
    if kind == "eigen":
        res = eigenjordan.antidiag_eigendecomposition(spec, tol=tol)
        if isinstance(res, eigenjordan.Defective):
            ks = ", ".join(str(p.k) for p in res.pairs)
            raise AntidiagError(
                f"defective transpose pair(s) at coefficient index {ks}: "
                "a defective pair has exactly one zero element, so no "
                "eigendecomposition exists")
        return {"Lambda": res.lam, "D": res.d}
    if kind == "jordan":
        jd = eigenjordan.antidiag_jordan(spec, tol=tol)
        return {"Modal": jd.modal_full, "J": jd.jordan}
    if kind == "unitary_diag":
        u, d = duodiag.unitary_diagonalize_normal_antidiag(spec, tol=tol)
        return {"U": u, "D": d}
    if kind == "schur":
        dec = schur.quasidiag_schur(spec, tol=tol)
        return {"Upsilon": dec.upsilon, "S": dec.s}
    if kind in ("sym_antidiag", "antisym_antidiag"):
        duo = duodiag.classify_duodiagonalizable(m, tol)
        if not duo.duodiagonalizable:
            raise AntidiagError(f"matrix is not duodiagonalizable: {duo.reason}")
        if kind == "sym_antidiag":
            res = duodiag.symmetric_antidiagonalization(m, duo.v, duo.d, tol)
        else:
            res = duodiag.antisymmetric_antidiagonalization(m, duo.v, duo.d, +1, tol)
        return {"V": res.v, "A": to_dense(res.a)}
    if kind == "orth_antisym":
        r, spec = permsim.orth_antidiagonalize_real_antisym(m, tol)
        return {"R": r, "A": to_dense(spec)}
    raise ValueError(f"unknown kind {kind!r}")


def _reconstruction_residual(m, factors, tol):
    names = list(factors)
    v = factors[names[0]]
    x = factors[names[1]]
    rec = v @ x @ matcore.mat_inverse(v, tol)
    return frobenius(rec - m) / max(1.0, frobenius(m))


def _cmd_decompose(args) -> int:
    tol = _resolve_tolerance(args)
    m = matcore.ensure_square(matio.load_matrix(args.input))
    factors = _decompose_factors(args.kind, m, tol)
    residual = _reconstruction_residual(m, factors, tol)
    bundle = matio.bundle_to_obj(args.kind, factors, residual, tol.rel,
                                 _ANCHORS[args.kind], seed=args.seed)
    if args.out:
        matio.save_bundle(args.out, bundle)
        target = args.out
    else:
        json.dump(bundle, sys.stdout)
        sys.stdout.write("\n")
        target = "(stdout)"
    gate = max(tol.abs, tol.rel)
    print(f"kind: {args.kind}", file=sys.stderr)
    print(f"bundle: {target}", file=sys.stderr)
    print(f"residual: {residual:.3e} (gate {gate:.1e})", file=sys.stderr)
    return EXIT_OK if residual <= gate else EXIT_VERIFY_FAIL


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _is_permutation(p, tol):
    n = p.shape[0]
    close01 = np.all((np.abs(p) <= tol.rel * 10 + tol.abs)
                     | (np.abs(p - 1.0) <= tol.rel * 10 + tol.abs))
    ones = np.abs(p) > 0.5
    return bool(close01 and np.all(ones.sum(0) == 1) and np.all(ones.sum(1) == 1))


def _structural_checks(kind, m, factors, tol):
    checks = {}
    names = list(factors)
    v, x = factors[names[0]], factors[names[1]]
    n = m.shape[0]
    unitary_gate = max(tol.abs, tol.rel * n * 10.0)
    if kind == "perm_quasidiag":
        checks["P is a permutation"] = _is_permutation(v, tol)
        checks["Q is Q-pseudo-hollow quasidiagonal"] = \
            permsim.is_q_pseudo_hollow_quasidiagonal(x, tol)
    elif kind == "eigen":
        checks["D is diagonal"] = matcore.is_diagonal_matrix(x, tol)
    elif kind == "jordan":
        checks["J is upper triangular"] = matcore.is_upper_triangular(x, tol)
        checks["J is quasidiagonal"] = matcore.quasidiagonal_partition(x, tol) is not None
    elif kind == "unitary_diag":
        checks["U is unitary"] = frobenius(v.conj().T @ v - np.eye(n)) <= unitary_gate
        checks["D is diagonal"] = matcore.is_diagonal_matrix(x, tol)
    elif kind == "schur":
        checks["Upsilon is unitary"] = frobenius(v.conj().T @ v - np.eye(n)) <= unitary_gate
        checks["S is upper triangular"] = matcore.is_upper_triangular(x, tol)
        checks["S is quasidiagonal"] = matcore.quasidiagonal_partition(x, tol) is not None
    elif kind == "sym_antidiag":
        checks["A is antidiagonal"] = matcore.is_antidiagonal_matrix(x, tol)
        checks["A is symmetric"] = matcore.predicates(x, tol).is_symmetric
    elif kind == "antisym_antidiag":
        checks["A is antidiagonal"] = matcore.is_antidiagonal_matrix(x, tol)
        checks["A is antisymmetric"] = matcore.predicates(x, tol).is_antisymmetric
    elif kind == "orth_antisym":
        checks["R is real"] = frobenius(v.imag) <= tol.abs + tol.rel * frobenius(v)
        checks["R is orthogonal"] = frobenius(v.T @ v - np.eye(n)) <= unitary_gate
        checks["A is antidiagonal"] = matcore.is_antidiagonal_matrix(x, tol)
        checks["A is real antisymmetric"] = (
            frobenius(x.imag) <= tol.abs + tol.rel * frobenius(x)
            and matcore.predicates(x, tol).is_antisymmetric)
    else:
        checks[f"kind {kind!r} is known"] = False
    return checks


def _cmd_verify(args) -> int:
    tol = _resolve_tolerance(args)
    bundle = matio.load_bundle(args.bundle)
    m = matcore.ensure_square(matio.load_matrix(args.matrix))
    factors = bundle["factors"]
    if len(factors) < 2:
        raise matio.ParseError("bundle must contain at least two factor matrices")
    for name, f in factors.items():
        if f.shape != m.shape:
            print(f"FAIL shape of factor {name} {f.shape} != matrix {m.shape}")
            return EXIT_VERIFY_FAIL

    checks = _structural_checks(bundle["kind"], m, factors, tol)
    try:
        residual = _reconstruction_residual(m, factors, tol)
    except SingularMatrix:
        residual = float("inf")
    gate = max(tol.abs, tol.rel)
    checks["reconstruction residual under tolerance"] = residual <= gate
    checks["residual within 2x recorded"] = residual <= max(2.0 * bundle["residual"], gate)

    if args.spot_checks:
        rng = np.random.default_rng(args.seed if args.seed is not None else 0)
        names = list(factors)
        v, x = factors[names[0]], factors[names[1]]
        try:
            vinv = matcore.mat_inverse(v, tol)
            worst = 0.0
            for _ in range(args.spot_checks):
                w = rng.normal(size=m.shape[0]) + 1j * rng.normal(size=m.shape[0])
                w /= np.linalg.norm(w)
                worst = max(worst, float(np.linalg.norm(m @ w - v @ (x @ (vinv @ w)))))
            checks[f"spot residual over {args.spot_checks} probes"] = \
                worst <= max(tol.abs, tol.rel * max(1.0, frobenius(m)) * 10)
        except SingularMatrix:
            checks["spot residual"] = False

    failed = [name for name, ok in checks.items() if not ok]
    for name, ok in checks.items():
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    print(f"residual: {residual:.3e} (recorded {bundle['residual']:.3e})")
    return EXIT_OK if not failed else EXIT_VERIFY_FAIL


# ---------------------------------------------------------------------------
# graph
# ---------------------------------------------------------------------------

def _cmd_graph(args) -> int:
    tol = _resolve_tolerance(args)
    m = matcore.ensure_square(matio.load_matrix(args.input))
    n = m.shape[0]
    warnings = []
    if frobenius(m.imag) > tol.abs + tol.rel * frobenius(m):
        raise matio.ParseError("adjacency matrix must be real")
    a = m.real
    symmetric = bool(np.allclose(a, a.T, atol=max(tol.abs, tol.rel * frobenius(a))))
    nonneg = bool(np.all(a >= -tol.abs))
    if not symmetric:
        warnings.append("adjacency matrix is not symmetric (digraph); "
                        "verdict limited to spectrum symmetry")
    if not nonneg:
        warnings.append("negative weights present; bipartite verdict assumes "
                        "an unsigned graph and is omitted")

    eig = matcore.eig_dense(m, tol=tol)
    report = spectrum_symmetry(eig.values, trace=np.trace(m), tol=tol)
    bipartite = report.symmetric if (symmetric and nonneg) else None
    antidiagonalizable = None
    if symmetric:
        # real symmetric input: diagonalizable, so spectrum symmetry decides
        antidiagonalizable = report.symmetric or (n % 2 == 1 and report.c_symmetric)

    payload = {
        "eigenvalues": [_fmt_complex(v) for v in report.eigenvalues],
        "symmetric_spectrum": report.symmetric,
        "c_symmetric_spectrum": report.c_symmetric,
        "bipartite": bipartite,
        "antidiagonalizable": antidiagonalizable,
        "warnings": warnings,
    }
    lines = [f"graph on {n} vertices"]
    lines += [f"warning: {w}" for w in warnings]
    lines.append("eigenvalues: " + ", ".join(payload["eigenvalues"]))
    lines.append(f"symmetric spectrum: {'yes' if report.symmetric else 'no'}")
    if bipartite is not None:
        lines.append(f"bipartite: {'yes' if bipartite else 'no'}")
    if antidiagonalizable is not None:
        lines.append(f"antidiagonalizable: {'yes' if antidiagonalizable else 'no'}")
    payload["lines"] = lines
    _emit(payload, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser():
    ap = argparse.ArgumentParser(
        prog="antidiag",
        description="Analyze, decompose, and verify antidiagonal and "
                    "antidiagonalizable matrices.")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="relative tolerance (default 1e-9; env ANTIDIAG_TOL)")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized verification paths")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("analyze", parents=[common],
                       help="structural flags, spectrum, classification")
    p.add_argument("input", help="matrix JSON file")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("decompose", parents=[common],
                       help="compute a decomposition bundle")
    p.add_argument("input", help="matrix JSON file")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--out", default=None, help="bundle output path (default stdout)")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", parents=[common],
                       help="re-verify a decomposition bundle against a matrix")
    p.add_argument("bundle", help="bundle JSON file")
    p.add_argument("matrix", help="matrix JSON file")
    p.add_argument("--spot-checks", type=int, default=0,
                   help="number of randomized matvec probes")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("graph", parents=[common],
                       help="bipartiteness via spectrum symmetry")
    p.add_argument("input", help="adjacency matrix JSON file")
    p.set_defaults(func=_cmd_graph)
    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (matio.ParseError, NotAntidiagonal) as exc:
        if isinstance(exc, NotAntidiagonal):
            print(f"error: input is not antidiagonal: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoConvergence as exc:
        print(f"error: eigensolver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (AntidiagError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
