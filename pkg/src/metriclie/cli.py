"""Command line front end: ``metriclie analyze | reduce | verify | generate``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import lie
from .catalog import CORPUS, FAMILIES, POSITIONAL, FamilySpec, corpus_path, generate
from .errors import (InvalidParams, JacobiError, MetricLieError, NonSolvable, NotNilInvariant,
                     SchemaError)
from .io import dumps, instance_to_json, load_instance, write_text
from .metric import (MetricLieAlgebra, invariance_witness, is_invariant, is_nondegenerate, j0,
                     metric_radical, nil_invariance_check, reduced_core, signature, witt_index)
from .reduction import complete_reduction
from .verify import FAIL, PASS, SKIP, run_checks

EXIT_OK, EXIT_FAIL = 0, 1
EXIT_PARSE, EXIT_JACOBI, EXIT_NOT_NIL_INVARIANT, EXIT_NON_SOLVABLE, EXIT_INVALID_PARAMS = 2, 3, 4, 5, 6


class CliError(Exception):
    def __init__(self, code: int, kind: str, message: str):
        super().__init__(message)
        self.code, self.kind, self.message = code, kind, message


def _load(path: str) -> MetricLieAlgebra:
    try:
        return load_instance(path)
    except JacobiError as exc:
        raise CliError(EXIT_JACOBI, "JacobiError", str(exc)) from exc
    except (SchemaError, OSError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, type(exc).__name__, str(exc)) from exc


def _emit(text: str, out: str | None) -> None:
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def analysis_report(m: MetricLieAlgebra, samples: int = 64, seed: int = 0) -> dict:
    g = m.algebra
    solvable = lie.is_solvable(g)
    plus, minus, null = signature(m)
    witness = invariance_witness(m)
    names = g.basis_names
    report = {
        "dim": m.dim,
        "basis_names": list(names),
        "abelian": g.is_abelian(),
        "solvable": solvable,
        "nilpotent": lie.is_nilpotent(g),
        "derived_series_dims": [s.dim for s in lie.derived_series(g)],
        "lower_central_series_dims": [s.dim for s in lie.lower_central_series(g)],
        "center": lie.center(g).to_json(),
        "nilradical": lie.nilradical(g).to_json() if solvable else None,
        "metric_radical": metric_radical(m).to_json(),
        "j0": j0(m).to_json() if solvable else None,
        "reduced_core": reduced_core(m).to_json(),
        "nondegenerate": is_nondegenerate(m),
        "signature": {"plus": plus, "minus": minus, "null": null},
        "witt_index": witt_index(m),
        "invariant": is_invariant(m),
        "invariance_witness": None if witness is None else {
            "triple": list(witness), "names": [names[t] for t in witness]},
        "nil_invariance": nil_invariance_check(m, samples, seed).to_json(),
    }
    return report


def _basis_text(rows) -> str:
    if rows is None:
        return "n/a"
    if not rows:
        return "0"
    return "span{" + ", ".join("(" + " ".join(r) + ")" for r in rows) + "}"


def render_analysis(r: dict) -> str:
    yn = {True: "yes", False: "no"}
    sig = r["signature"]
    lines = [
        f"dimension          {r['dim']}  basis {' '.join(r['basis_names'])}",
        f"abelian            {yn[r['abelian']]}",
        f"solvable           {yn[r['solvable']]}",
        f"nilpotent          {yn[r['nilpotent']]}",
        f"derived series     {r['derived_series_dims']}",
        f"lower central      {r['lower_central_series_dims']}",
        f"center             {_basis_text(r['center'])}",
        f"nilradical         {_basis_text(r['nilradical'])}",
        f"metric radical     {_basis_text(r['metric_radical'])}",
        f"j0                 {_basis_text(r['j0'])}",
        f"reduced core       {_basis_text(r['reduced_core'])}",
        f"signature          ({sig['plus']}, {sig['minus']}, {sig['null']})",
        f"witt index         {r['witt_index']}",
        f"invariant          {yn[r['invariant']]}",
    ]
    if r["invariance_witness"]:
        a, b, c = r["invariance_witness"]["names"]
        lines.append(f"  witness          <[{a},{b}],{c}> != -<{b},[{a},{c}]>")
    ni = r["nil_invariance"]
    verdict = "no counterexample" if ni["nil_invariant"] else "counterexample " + " ".join(ni["counterexample"])
    lines.append(f"nil-invariance     {verdict} (samples={ni['samples']}, seed={ni['seed']}, "
                 f"tested={ni['tested']})")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    m = _load(args.path)
    report = analysis_report(m, args.samples, args.seed)
    _emit(dumps(report) if args.json else render_analysis(report), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------

def cmd_reduce(args) -> int:
    m = _load(args.path)
    try:
        chain = complete_reduction(m)
    except NotNilInvariant as exc:
        raise CliError(EXIT_NOT_NIL_INVARIANT, "NotNilInvariant", str(exc)) from exc
    except NonSolvable as exc:
        raise CliError(EXIT_NON_SOLVABLE, "NonSolvable", str(exc)) from exc
    data = chain.to_json()
    if args.out:
        write_text(args.out, dumps(data))
    if args.json:
        sys.stdout.write(dumps(data["summary"]))
    else:
        s = data["summary"]
        rq = "yes" if chain.radical_step is not None else "no"
        sys.stdout.write(f"radical quotient   {rq}\nsteps              {s['steps']}\n"
                         f"terminal dimension {s['terminal_dim']}\n"
                         f"terminal form      {s['terminal_definiteness']} definite\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_targets(args) -> list[tuple[str, Path]]:
    if args.corpus:
        root = Path(args.corpus)
        if not root.is_dir():
            raise CliError(EXIT_PARSE, "FileNotFoundError", f"no corpus directory {root}")
        return [(p.relative_to(root).as_posix(), p) for p in sorted(root.rglob("*.json"))]
    if not args.path:
        raise CliError(EXIT_PARSE, "UsageError", "verify needs a path or --corpus")
    return [(p, Path(p)) for p in args.path]


def cmd_verify(args) -> int:
    results = []
    counts = {PASS: 0, FAIL: 0, SKIP: 0}
    for label, path in _verify_targets(args):
        m = _load(str(path))
        checks = run_checks(m, args.samples, args.seed)
        for c in checks:
            counts[c.status] += 1
        results.append({"instance": label, "checks": [c.to_json() for c in checks]})
    data = {"samples": args.samples, "seed": args.seed, "instances": results,
            "summary": {"passed": counts[PASS], "failed": counts[FAIL], "skipped": counts[SKIP]}}
    if args.json:
        text = dumps(data)
    else:
        lines = []
        for inst in results:
            for c in inst["checks"]:
                lines.append(f"{c['status'].upper():4}  {inst['instance']:40}  {c['name']:28}  {c['detail']}")
        lines.append(f"passed {counts[PASS]}, failed {counts[FAIL]}, skipped {counts[SKIP]}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_FAIL if counts[FAIL] else EXIT_OK


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def parse_params(family: str, raw: list[str]) -> dict:
    """Positional values fill the family's parameters in order; ``key=value`` sets one."""
    if family not in FAMILIES:
        raise InvalidParams(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    order = POSITIONAL[family]
    params: dict = {}
    pos = 0
    for item in raw:
        if "=" in item:
            key, value = item.split("=", 1)
        else:
            if pos >= len(order):
                raise InvalidParams(f"too many positional parameters for {family}")
            key, value = order[pos], item
            pos += 1
        if key in params:
            raise InvalidParams(f"parameter {key!r} given twice")
        params[key] = value
    return params


def cmd_generate(args) -> int:
    try:
        if args.corpus:
            if args.family:
                raise InvalidParams("--corpus writes the whole shipped corpus; omit the family")
            root = Path(args.corpus)
            for name, spec in CORPUS:
                spec = spec.normalized()
                write_text(root / corpus_path(name, spec), dumps(instance_to_json(generate(spec), spec)))
            return EXIT_OK
        if not args.family:
            raise InvalidParams("generate needs a family or --corpus")
        params = parse_params(args.family, args.params)
        seed = params.pop("seed", args.seed)
        spec = FamilySpec(args.family, params, seed).normalized()
        m = generate(spec)
    except InvalidParams as exc:
        raise CliError(EXIT_INVALID_PARAMS, "InvalidParams", str(exc)) from exc
    _emit(dumps(instance_to_json(m, spec)), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="metriclie", description="Exact metric Lie algebra toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, samples=True):
        sp.add_argument("--json", action="store_true", help="print JSON instead of text")
        sp.add_argument("--out", help="write output to this file")
        if samples:
            sp.add_argument("--samples", type=int, default=64, help="random nil-invariance samples")
            sp.add_argument("--seed", type=int, default=0, help="sampling seed")

    a = sub.add_parser("analyze", help="structure report for one instance")
    a.add_argument("path")
    common(a)
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reduce", help="complete reduction chain")
    r.add_argument("path")
    common(r, samples=False)
    r.set_defaults(func=cmd_reduce)

    v = sub.add_parser("verify", help="run the property suite")
    v.add_argument("path", nargs="*")
    v.add_argument("--corpus", help="verify every *.json below this directory")
    common(v)
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("generate", help="write a catalog instance")
    g.add_argument("family", nargs="?")
    g.add_argument("params", nargs="*", help="positional values or key=value")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--json", action="store_true", help="accepted for symmetry; output is JSON")
    g.add_argument("--out", help="write output to this file")
    g.add_argument("--corpus", help="write the shipped corpus below this directory")
    g.set_defaults(func=cmd_generate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(dumps({"error": exc.kind, "message": exc.message, "exit_code": exc.code}))
        return exc.code
    except MetricLieError as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": EXIT_FAIL}))
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
