"""Command-line interface: reproducible computations with JSON reports.

Exit codes: 0 success, 2 input or invariant error, 3 precondition failure,
4 internal inconsistency between independent computations.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import is_quasi_frobenius, mk_local_sq_zero, parse_ring
from .catalog import enumerate_modules
from .complexes import complex_to_json, filtration_by_small, load_complex, tensor_functor
from .counterexamples import CLI_NAMES, KINDS, by_name, build, hom_J_report
from .errors import InconsistencyError, PreconditionError, StablecatError
from .homalg import ext, fp_growth_probe, injective_resolution, projective_resolution, resolution_to_arrays, tor
from .modrep import LEFT, RIGHT, builtin, injective_hull, is_injective, is_projective, load_module, socle
from .stable import (
    COLLAPSE_AC_INJ,
    COLLAPSE_LEVEL,
    WINDOW_NOTE,
    classify_inj_complex,
    classify_proj_complex,
    duality_pair_check,
    stable_hom_inj,
    stable_hom_proj,
    tate_cohomology,
    tate_via_stable,
)

EXIT_OK, EXIT_INPUT, EXIT_PRECONDITION, EXIT_INCONSISTENT = 0, 2, 3, 4
RANGE_FLAGS = ("--degrees", "--range", "--n-range")


def parse_range(text: str) -> list:
    """``"a..b"`` (inclusive, negatives allowed) or a single integer."""
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from exc
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _module(ring, ref: str, side: str = LEFT):
    """A builtin name (``k``, ``R``, ``J``, ``m``, ``R^n``, ``J^n``, optionally ``builtin:``-prefixed) or a JSON file."""
    name = ref.split(":", 1)[1] if ref.startswith("builtin:") else ref
    if ref.startswith("builtin:") or not os.path.exists(ref):
        return builtin(ring, name, side)
    m = load_module(ref)
    if m.algebra != ring:
        raise PreconditionError(f"module {ref} lives over {m.algebra.name}, not {ring.name}")
    return m


def _report(args, ring: str | None, inputs: dict, results: dict, notes=(), window=None) -> dict:
    return {
        "command": args.command,
        "ring": ring,
        "inputs": inputs,
        "results": results,
        "metadata": {"collapse_notes": list(notes), "window": window, "version": __version__},
    }


def _table(rows) -> dict:
    return {str(k): v for k, v in rows}


# -- commands ---------------------------------------------------------------


def cmd_resolve(args):
    ring = parse_ring(args.ring)
    m = _module(ring, args.module, args.side)
    if args.direction == "proj":
        res = projective_resolution(m, args.length)
    else:
        res = injective_resolution(m, args.length)
    res.verify()
    results = resolution_to_arrays(res)
    table = list(enumerate(results["term_dims"]))
    return _report(args, ring.name, {"module": args.module, "length": args.length, "direction": args.direction}, results), table


def cmd_ext(args):
    ring = parse_ring(args.ring)
    m, n = _module(ring, args.M), _module(ring, args.N)
    dims = [(d, ext(m, n, d)) for d in args.degrees]
    results = {"dims": _table(dims)}
    return _report(args, ring.name, {"M": args.M, "N": args.N, "degrees": args.degrees}, results), dims


def cmd_tor(args):
    ring = parse_ring(args.ring)
    m, n = _module(ring, args.M, RIGHT), _module(ring, args.N, LEFT)
    dims = [(d, tor(m, n, d)) for d in args.degrees]
    balanced = [tor(m, n, d, resolve="right") for d in args.degrees]
    if balanced != [v for _, v in dims]:
        raise InconsistencyError("Tor computed from either side disagrees")
    results = {"dims": _table(dims), "balanced": True}
    return _report(args, ring.name, {"M": args.M, "N": args.N, "degrees": args.degrees}, results), dims


def cmd_stable_hom(args):
    ring = parse_ring(args.ring)
    m, n = _module(ring, args.M), _module(ring, args.N)
    if args.variant == "proj":
        dim, reps = stable_hom_proj(m, n)
    else:
        dim, reps = stable_hom_inj(m, n)
    results = {"dim": dim, "representatives": [f.matrix.tolist() for f in reps]}
    notes = ["projectives = injectives: quasi-Frobenius algebra"] if is_quasi_frobenius(ring) else []
    return _report(args, ring.name, {"M": args.M, "N": args.N, "variant": args.variant}, results, notes), [(0, dim)]


def cmd_tate(args):
    dims = tate_cohomology(args.p, args.e, args.range)
    rows = list(dims.items())
    results = {"dims": _table(rows)}
    if args.check:
        check = {n: tate_via_stable(args.p, args.e, n) for n in args.range if -2 <= n <= 2}
        if any(check[n] != dims[n] for n in check):
            raise InconsistencyError("complete resolution and stable Hom disagree")
        results["stable_hom_check"] = _table(check.items())
    ring = f"cyclic_group({args.p ** args.e},{args.p})"
    window = [min(args.range) - 2, max(args.range) + 2]
    return _report(args, ring, {"p": args.p, "e": args.e, "range": args.range}, results, window=window), rows


def _counterexample_results(spec, emit: bool):
    x = build(spec)
    report = classify_inj_complex(x, spec.kind) if spec.injective else classify_proj_complex(x, spec.kind)
    if not spec.injective and not report.checks["ac_equals_firm"]:
        raise InconsistencyError("AC-acyclic and firmly acyclic verdicts disagree")
    results = {
        "spec": {"kind": spec.kind, "p": spec.p, "depth": spec.depth, "base": spec.base},
        "ranks": {str(n): spec.rank(n) for n in range(spec.depth + 1)},
        "report": report.to_json(),
    }
    if spec.injective:
        h = hom_J_report(spec)
        h.pop("complex")
        results["hom_J"] = h
    if emit:
        results["complex"] = complex_to_json(x)
    return x, report, results


def cmd_counterexample(args):
    spec = by_name(args.name, args.p, args.depth, args.base)
    x, report, results = _counterexample_results(spec, args.emit_complex)
    ring = f"local_sq_zero(2,{args.p})"
    inputs = {"name": args.name, "p": args.p, "depth": args.depth, "base": args.base}
    return _report(args, ring, inputs, results, report.collapse_notes, list(x.window)), None


def _complex_arg(args):
    if os.path.exists(args.complex):
        return load_complex(args.complex), {"file": args.complex}
    spec = by_name(args.complex, args.p, args.depth, args.base)
    return build(spec), {"name": args.complex, "p": args.p, "depth": args.depth, "base": args.base}


def cmd_classify(args):
    x, inputs = _complex_arg(args)
    terms = [x.term(n) for n in range(x.lo, x.hi + 1)]
    kind = args.kind
    if kind == "auto":
        kind = "proj" if all(is_projective(t) for t in terms) and x.side == LEFT else "inj"
    if kind == "proj":
        report = classify_proj_complex(x)
        if not report.checks["ac_equals_firm"]:
            raise InconsistencyError("AC-acyclic and firmly acyclic verdicts disagree")
    else:
        report = classify_inj_complex(x)
    return _report(args, x.algebra.name, inputs, report.to_json(), report.collapse_notes, list(x.window)), None


def cmd_duality_check(args):
    x, inputs = _complex_arg(args)
    catalog = enumerate_modules(x.algebra, args.max_dim, RIGHT)
    out = duality_pair_check(x, catalog)
    if not out["all_agree"]:
        raise InconsistencyError("M ⊗ C and Hom(C, M*) disagree on exactness")
    inputs["max_dim"] = args.max_dim
    notes = [COLLAPSE_LEVEL, "character module realised as the k-linear dual", WINDOW_NOTE]
    return _report(args, x.algebra.name, inputs, out, notes, list(x.window)), None


def cmd_fp_probe(args):
    rows = fp_growth_probe(args.p, args.n_range)
    results = {
        "table": [{"n": r.n, "mu1": r.mu1, "mu2": r.mu2} for r in rows],
        "note": "syzygy growth over k[x_1..x_n]/(x)^2; the infinitely generated case is not computed",
    }
    return _report(args, f"local_sq_zero(n,{args.p})", {"p": args.p, "n_range": args.n_range}, results), [
        (r.n, r.mu1) for r in rows
    ]


def cmd_filtration(args):
    x, inputs = _complex_arg(args)
    a = _module(x.algebra, args.A, RIGHT)
    filt = filtration_by_small(x, a)
    check = filt.verify(tensor_functor(a))
    results = {
        "layers": len(filt.layers),
        "layer_tag_counts": [{str(n): c for n, c in layer.tag_counts().items()} for layer in filt.layers],
        "quotient_tag_counts": [{str(n): c for n, c in row.items()} for row in filt.rank_table()],
        "verification": check,
    }
    inputs["A"] = args.A
    return _report(args, x.algebra.name, inputs, results, [COLLAPSE_LEVEL, WINDOW_NOTE], list(x.window)), None


def _suite_checks():
    a = mk_local_sq_zero(2, 2)
    j = builtin(a, "J")
    e, mono = injective_hull(builtin(a, "R"))
    yield "dim J = 3", j.dim == 3
    yield "socle J is 1-dimensional", socle(j).dim == 1
    yield "hull of R is J^2 with 3-dimensional cokernel", e.dim == 6 and is_injective(e) and e.dim - mono.rank() == 3
    for name, kind in CLI_NAMES.items():
        for p in (2, 3, 5):
            _, report, _ = _counterexample_results(by_name(kind, p, 4, 1), False)
            v = report.verdicts
            expected = {
                "inj_X": (True, False),
                "inj_Y": (False, True),
                "proj_X": (True, False),
                "proj_Y": (False, True),
            }[kind]
            second = v["inj_acyclic"] if kind.startswith("inj") else v["ac_acyclic"]
            yield f"{name} p={p}", (v["exact_interior"], second) == expected
    for p in (2, 3, 5):
        yield f"Tate cohomology of Z/{p}", set(tate_cohomology(p, 1, range(-4, 5)).values()) == {1}
    rows = fp_growth_probe(2, range(1, 6))
    yield "syzygy growth n, n^2", all(r.mu1 == r.n and r.mu2 == r.n**2 for r in rows)


def cmd_suite(args):
    checks = [{"check": name, "passed": bool(ok)} for name, ok in _suite_checks()]
    results = {"checks": checks, "all_passed": all(c["passed"] for c in checks)}
    report = _report(args, None, {}, results, [COLLAPSE_AC_INJ, COLLAPSE_LEVEL, WINDOW_NOTE])
    if not results["all_passed"]:
        raise _SuiteFailure(report)
    return report, None


class _SuiteFailure(InconsistencyError):
    def __init__(self, report):
        super().__init__("suite checks failed")
        self.report = report


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stablecat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"stablecat {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json", help="tsv only for dimension tables")
    sub = parser.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("resolve", help="minimal projective or injective resolution")
    p.add_argument("ring")
    p.add_argument("module")
    p.add_argument("--length", type=int, default=3)
    p.add_argument("--direction", choices=("proj", "inj"), default="proj")
    p.add_argument("--side", choices=(LEFT, RIGHT), default=LEFT)
    p.set_defaults(func=cmd_resolve)

    for name, func, help_ in (("ext", cmd_ext, "dim Ext^n(M, N)"), ("tor", cmd_tor, "dim Tor_n(M, N), M right, N left")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("ring")
        p.add_argument("M")
        p.add_argument("N")
        p.add_argument("--degrees", type=parse_range, default=parse_range("0..3"))
        p.set_defaults(func=func)

    p = sub.add_parser("stable-hom", help="stable Hom modulo projectives or injectives")
    p.add_argument("ring")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--variant", choices=("proj", "inj"), default="proj")
    p.set_defaults(func=cmd_stable_hom)

    p = sub.add_parser("tate", help="Tate cohomology of Z/p^e with F_p coefficients")
    p.add_argument("p", type=int)
    p.add_argument("e", type=int)
    p.add_argument("--range", type=parse_range, default=parse_range("-4..4"))
    p.add_argument("--check", action="store_true", help="cross-check with stable Hom for |n| <= 2")
    p.set_defaults(func=cmd_tate)

    def complex_options(q):
        q.add_argument("--p", type=int, default=2)
        q.add_argument("--depth", type=int, default=4)
        q.add_argument("--base", type=int, default=1)

    p = sub.add_parser("counterexample", help="build and classify a named counterexample complex")
    p.add_argument("name", choices=sorted(CLI_NAMES) + list(KINDS))
    complex_options(p)
    p.add_argument("--emit-complex", action="store_true")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("classify", help="acyclicity report for a complex file or counterexample name")
    p.add_argument("complex")
    p.add_argument("--kind", choices=("auto", "inj", "proj"), default="auto")
    complex_options(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("duality-check", help="compare M ⊗ C with Hom(C, M*) over a module catalog")
    p.add_argument("complex")
    p.add_argument("--max-dim", type=int, default=3)
    complex_options(p)
    p.set_defaults(func=cmd_duality_check)

    p = sub.add_parser("fp-probe", help="syzygy generator growth over k[x_1..x_n]/(x)^2")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--n-range", type=parse_range, default=parse_range("1..4"))
    p.set_defaults(func=cmd_fp_probe)

    p = sub.add_parser("filtration", help="filtration of a complex of frees by A⊗-exact pieces")
    p.add_argument("complex")
    p.add_argument("--A", default="J", help="right module (builtin name or file)")
    complex_options(p)
    p.set_defaults(func=cmd_filtration)

    p = sub.add_parser("suite", help="run the built-in battery of checks")
    p.set_defaults(func=cmd_suite)
    return parser


def _merge_negative_ranges(argv: list) -> list:
    """Let ``--range -4..4`` through argparse by rewriting it as ``--range=-4..4``."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in RANGE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _emit(report: dict, table, fmt: str, out):
    if fmt == "tsv":
        if table is None:
            raise ValueError("--format tsv is only available for dimension tables")
        out.write("degree\tdim\n")
        for k, v in table:
            out.write(f"{k}\t{v}\n")
    else:
        out.write(json.dumps(report, indent=2) + "\n")


def main(argv=None) -> int:
    argv = _merge_negative_ranges(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, table = args.func(args)
        _emit(report, table, args.format, sys.stdout)
        return EXIT_OK
    except _SuiteFailure as exc:
        _emit(exc.report, None, "json", sys.stdout)
        return EXIT_INCONSISTENT
    except InconsistencyError as exc:
        print(f"error: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except PreconditionError as exc:
        print(f"error: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (StablecatError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
