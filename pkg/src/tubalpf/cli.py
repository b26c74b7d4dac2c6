"""``tubalpf`` command-line front end.

Exit status: 0 on success, 1 on a domain or parse error (or a failed
pf-report item), 2 on usage errors.  ``TUBAL_TOL`` supplies the zero
tolerance whenever ``--tol`` is not given.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import io
from .cone import classify, classify_tubes
from .core import TubalMatrix, tprod, tprod_fft, tprod_vec
from .errors import TubalError
from .generate import ENSURE_MODES, InstanceSpec, generate
from .irreducibility import MAX_SUBSET_N, condensation, is_irreducible_power, is_reducible_scc, is_reducible_subset
from .pfverify import Status, pf_report
from .spectra import left_t_eigenvector, t_eigenvector, t_spectrum

__all__ = ["main", "build_parser"]


class _UsageError(Exception):
    pass


def _tol(args) -> float | None:
    if getattr(args, "tol", None) is not None:
        return args.tol
    env = os.environ.get("TUBAL_TOL")
    if env is None or env == "":
        return None
    try:
        value = float(env)
    except ValueError:
        raise _UsageError(f"TUBAL_TOL={env!r} is not a number") from None
    if not value >= 0:
        raise _UsageError(f"TUBAL_TOL must be >= 0, got {env}")
    return value


def _nonneg_float(text: str) -> float:
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# ------------------------------------------------------------ subcommands


def cmd_classify(args) -> int:
    x = io.load(args.tensor)
    tol = _tol(args)
    cls = classify(x, tol)
    tubes = classify_tubes(x, tol)
    out = {"kind": "matrix" if isinstance(x, TubalMatrix) else "vector", "n": x.n, "p": x.p,
           "class": cls.value, "tubes": np.vectorize(lambda c: c.value, otypes=[object])(tubes).tolist()}
    if args.json:
        _emit(out)
    else:
        print(cls.value)
    return 0


def cmd_irreducible(args) -> int:
    A = io.load_matrix(args.tensor)
    tol = _tol(args)
    out = {"method": args.method, "n": A.n, "p": A.p}
    if args.method == "power":
        crit = is_irreducible_power(A, tol)
        out.update(verdict=crit.verdict.value, witness=None, permutation=None, block_sizes=None)
    else:
        if args.method == "subset" and A.n > MAX_SUBSET_N:
            raise TubalError(f"subset method limited to n <= {MAX_SUBSET_N}")
        cert = (is_reducible_subset if args.method == "subset" else is_reducible_scc)(A, tol)
        out.update(verdict=cert.verdict.value,
                   witness=list(cert.witness) if cert.witness else None,
                   permutation=list(cert.permutation.perm) if cert.permutation else None,
                   block_sizes=list(cert.block_sizes) if cert.block_sizes else None)
    out["components"] = condensation(A, tol)
    if args.json:
        _emit(out)
    else:
        print(out["verdict"])
        if out["witness"] is not None:
            print(f"witness: {{{', '.join(map(str, out['witness']))}}}")
            print(f"permutation: {out['permutation']}")
            print(f"block sizes: {tuple(out['block_sizes'])}")
    return 0


def _vector_json(X) -> dict:
    data = X.data
    return {"real": np.real(data).tolist(), "imag": np.imag(data).tolist() if np.iscomplexobj(data)
            else np.zeros_like(data, dtype=float).tolist()}


def cmd_eig(args) -> int:
    A = io.load_matrix(args.tensor)
    if args.left:
        A_spec = t_spectrum(A.T)
    else:
        A_spec = t_spectrum(A)
    out = {
        "side": "left" if args.left else "right",
        "eigenvalues": [_pair(v) for v in A_spec.eigenvalues],
        "distinct": [{"value": _pair(v), "multiplicity": m} for v, m in A_spec.distinct],
        "rho": A_spec.rho,
        "rho_attaining": [_pair(v) for v in A_spec.rho_attaining],
    }
    if args.vectors is not None:
        solver = left_t_eigenvector if args.left else t_eigenvector
        pair = solver(A, args.vectors)
        out["eigenpair"] = {"lambda": _pair(pair.lam), "vector": _vector_json(pair.vector),
                            "residual": pair.residual}
    _emit(out)
    return 0


def _text_report(report) -> str:
    lines = [f"n={report.n} p={report.p} class={report.input_class.value} "
             f"irreducible={report.irreducible} strongly_positive_tube={report.has_strongly_positive_tube}",
             f"rho={report.rho}"]
    for it in report.items:
        lines.append(f"{it.group:18s} {it.id:45s} {it.status.value}")
    return "\n".join(lines)


def cmd_pf_report(args) -> int:
    A = io.load_matrix(args.tensor)
    report = pf_report(A, support_tol=_tol(args), left=args.left)
    if args.text:
        print(_text_report(report))
    else:
        _emit(report.to_dict())
    return 1 if any(it.status is Status.FAIL for it in report.items) else 0


def cmd_tprod(args) -> int:
    A = io.load_matrix(args.a)
    B = io.load(args.b)
    if isinstance(B, TubalMatrix):
        C = tprod_fft(A, B) if args.fft else tprod(A, B)
    else:
        C = tprod_fft(A, B) if args.fft else tprod_vec(A, B)
    if args.output:
        io.save(C, args.output)
    else:
        sys.stdout.write(io.dumps(C))
    return 0


def cmd_generate(args) -> int:
    spec = InstanceSpec(args.n, args.p, args.density, tuple(args.range), args.seed,
                        args.ensure, args.integer)
    A = generate(spec)
    if args.output:
        io.save(A, args.output)
    else:
        sys.stdout.write(io.dumps(A))
    return 0


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tubalpf", description="Nonnegative tubal matrix toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="cone class of a tensor file")
    p.add_argument("tensor")
    p.add_argument("--tol", type=_nonneg_float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("irreducible", help="irreducibility verdict and certificate")
    p.add_argument("tensor")
    p.add_argument("--method", choices=("scc", "subset", "power"), default="scc")
    p.add_argument("--tol", type=_nonneg_float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_irreducible)

    p = sub.add_parser("eig", help="t-eigenvalues and t-eigenvectors (JSON)")
    p.add_argument("tensor")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--values", action="store_true", help="eigenvalues only (default)")
    mode.add_argument("--vectors", type=_complex, metavar="LAMBDA", help="also an eigenvector for LAMBDA")
    p.add_argument("--left", action="store_true", help="left t-eigenvectors (those of the transpose)")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("pf-report", help="Perron-Frobenius verification report")
    p.add_argument("tensor")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--text", action="store_true")
    p.add_argument("--left", action="store_true", help="also check left t-eigenvectors")
    p.add_argument("--tol", type=_nonneg_float, help="zero tolerance for the support")
    p.set_defaults(func=cmd_pf_report)

    p = sub.add_parser("tprod", help="t-product of two tensor files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-o", "--output")
    p.add_argument("--fft", action="store_true", help="multiply through the FFT")
    p.set_defaults(func=cmd_tprod)

    p = sub.add_parser("generate", help="seeded random tubal matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--range", type=float, nargs=2, default=(0.0, 1.0), metavar=("LO", "HI"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ensure", choices=ENSURE_MODES, default="none")
    p.add_argument("--integer", action="store_true", help="integer entries")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tubalpf: error: {exc}", file=sys.stderr)
        return 2
    except (TubalError, ValueError) as exc:
        print(f"tubalpf: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
