"""Command-line interface.

Exit codes: 0 success, 1 failed check, 2 usage or parse errors.
"""

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import specfile
from .algebra import IncompatibleGrading, NotStratified, validate
from .cohomology import (cohomology, check_duality, check_eq9,
                         render_weight_table, table_to_json_dict)
from .group import coordinate_names
from .ranges import (RangeQuery, InvalidExponents, UndefinedWeights,
                     best_nonvanishing, classify, range_report,
                     VANISHES, DOES_NOT_VANISH)
from .rumin import RuminEngine
from .rationals import rat


class _Resolved:
    def __init__(self, algebra, grading_builders, source):
        self.algebra = algebra
        self._builders = grading_builders  # name -> callable
        self.source = source

    def grading_names(self):
        return list(self._builders)

    def grading(self, name):
        if name not in self._builders:
            raise KeyError(f"no grading named {name!r}; "
                           f"available: {', '.join(self._builders) or 'none'}")
        return self._builders[name]()

    def pick_grading(self, name):
        if name is None:
            names = self.grading_names()
            if len(names) != 1:
                raise KeyError(
                    "specify --grading; available: " + ", ".join(names))
            name = names[0]
        return name, self.grading(name)


def _resolve(spec_arg):
    """A corpus name or a path to a description file."""
    try:
        entry = corpus_mod.get(spec_arg)
    except KeyError:
        entry = None
    if entry is not None:
        builders = {name: (lambda g=g: g) for name, g in entry.gradings.items()}
        return _Resolved(entry.algebra, builders, f"corpus:{spec_arg}")
    path = Path(spec_arg)
    if not path.exists():
        raise specfile.SemanticError(
            f"{spec_arg!r} is neither a corpus algebra nor a file")
    parsed = specfile.parse_spec(path.read_text(encoding="utf-8"))
    builders = {d.name: (lambda d=d: d.build(parsed.algebra))
                for d in parsed.grading_decls}
    return _Resolved(parsed.algebra, builders, str(path))


def _cmd_check(args):
    resolved = _resolve(args.spec)
    problems = validate(resolved.algebra)
    for name in resolved.grading_names():
        try:
            resolved.grading(name)
        except (IncompatibleGrading, NotStratified, ValueError) as exc:
            problems.append(f"grading {name!r}: {exc}")
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 1
    print(f"ok: {resolved.algebra.name} "
          f"({len(resolved.grading_names())} grading(s))")
    return 0


def _cmd_cohomology(args):
    resolved = _resolve(args.spec)
    gname, grading = resolved.pick_grading(args.grading)
    table = cohomology(resolved.algebra, grading)
    if args.json:
        payload = table_to_json_dict(table)
        payload["algebra"] = resolved.algebra.name
        payload["grading"] = gname
        print(json.dumps(payload, indent=2))
        return 0
    print(f"algebra: {resolved.algebra.name}    grading: {gname}")
    print(render_weight_table(table), end="")
    print()
    for k in range(table.n + 1):
        ws = ", ".join(str(w) for w in table.weight_multisets[k])
        print(f"H^{k}: dim {table.betti[k]}, weights {{{ws}}}")
    problems = check_duality(table) + check_eq9(table)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return 1
    return 0


def _parse_exponent_arg(text):
    if text is None:
        return None
    if text.lower() in ("inf", "infinity", "oo"):
        from .ranges import INF
        return INF
    return rat(text)


def _cmd_ranges(args):
    resolved = _resolve(args.spec)
    if args.best is not None:
        names = resolved.grading_names()
        tables = [cohomology(resolved.algebra, resolved.grading(g)) for g in names]
        value, idx = best_nonvanishing(tables, args.best)
        print(f"best non-vanishing threshold in degree {args.best}: "
              f"{value} (grading {names[idx]!r}, side conditions 1 <= p,q < inf)")
        return 0
    gname, grading = resolved.pick_grading(args.grading)
    table = cohomology(resolved.algebra, grading)
    if (args.p is None) != (args.q is None):
        print("error: --p and --q go together", file=sys.stderr)
        return 2
    if args.p is not None:
        k = args.degree
        if k is None:
            print("error: --degree is required with --p/--q", file=sys.stderr)
            return 2
        query = RangeQuery.of(k, _parse_exponent_arg(args.p), _parse_exponent_arg(args.q))
        result = classify(table, query)
        if result.verdict == VANISHES:
            print(f"Vanishes (gap {result.gap} >= {result.vanish_threshold})")
        elif result.verdict == DOES_NOT_VANISH:
            print(f"DoesNotVanish (gap {result.gap} < {result.nonvanish_threshold})")
        else:
            lo, hi = result.unknown_interval
            note = f"; {result.note}" if result.note else ""
            print(f"Unknown (gap {result.gap} in [{lo}, {hi}){note})")
        return 0
    degrees = [args.degree] if args.degree is not None else None
    rows = range_report(table, degrees)
    if args.json:
        payload = {
            "algebra": resolved.algebra.name,
            "grading": gname,
            "rows": [{
                "degree": r.degree,
                "vanish_threshold": None if r.vanish_threshold is None
                else str(r.vanish_threshold),
                "nonvanish_threshold": None if r.nonvanish_threshold is None
                else str(r.nonvanish_threshold),
                "ws_threshold": str(r.ws_threshold),
            } for r in rows],
        }
        print(json.dumps(payload, indent=2))
        return 0
    print(f"algebra: {resolved.algebra.name}    grading: {gname}    "
          f"T = {table.homogeneous_dimension}")
    for r in rows:
        if r.vanish_threshold is not None:
            print(f"k={r.degree}: vanishes for gap >= {r.vanish_threshold} "
                  f"(1<p,q<inf); nonzero for gap < {r.nonvanish_threshold} "
                  f"(1<=p,q<=inf); ws bound {r.ws_threshold} (1<=p,q<inf)")
        else:
            print(f"k={r.degree}: nonzero for gap < {r.ws_threshold} (1<=p,q<inf)")
    return 0


def _cmd_rumin(args):
    resolved = _resolve(args.spec)
    gname, grading = resolved.pick_grading(args.grading)
    engine = RuminEngine(resolved.algebra, grading)
    cap = rat(args.weight_cap) if args.weight_cap is not None \
        else 2 * grading.homogeneous_dimension
    degrees = [args.degree] if args.degree is not None else None
    if args.witness is not None:
        witness = engine.find_nonclosed_witness(args.witness, args.witness_cap)
        if witness is None:
            print(f"no witness found in degree {args.witness} "
                  f"within polynomial weight {args.witness_cap}", file=sys.stderr)
            return 1
        coords = coordinate_names(resolved.algebra.basis)
        mono = "*".join(f"{coords[j]}^{e}" if e > 1 else coords[j]
                        for j, e in enumerate(witness.exponents) if e)
        print(f"degree {args.witness}: d_c({mono} * "
              f"{witness.base.pretty(resolved.algebra.basis)}) != 0")
        print(f"  value: {witness.value.pretty(resolved.algebra.basis)}")
        print(f"  polynomial weight {witness.polynomial_weight}, "
              f"output coframe weight {witness.value_weight}")
        return 0
    checks = [
        ("stabilization", engine.check_stabilization(cap, degrees)),
        ("E membership", engine.check_e_membership(cap, degrees)),
        ("chain map", engine.check_d_commutation(cap, degrees)),
        ("conjugation identities", engine.check_conjugation_identities(cap, degrees)),
        ("d_c squared", engine.check_dc_squared(cap, degrees)),
    ]
    wfail, gaps = engine.check_dc_weight_increase(cap, degrees)
    checks.append(("d_c weight increase", wfail))
    if grading.is_carnot:
        checks.append(("d_c on functions", engine.check_dc_on_functions(cap)))
    if args.json:
        payload = {
            "algebra": resolved.algebra.name,
            "grading": gname,
            "weight_cap": str(cap),
            "checks": [{"name": name, "failures": fails} for name, fails in checks],
            "min_weight_gaps": {str(k): str(v) for k, v in sorted(gaps.items())},
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"algebra: {resolved.algebra.name}    grading: {gname}    "
              f"weight cap {cap}")
        for name, fails in checks:
            status = "ok" if not fails else f"{len(fails)} failure(s)"
            print(f"  {name}: {status}")
            for f in fails:
                print(f"    {f}", file=sys.stderr)
        if gaps:
            gap_text = ", ".join(f"k={k}: {v}" for k, v in sorted(gaps.items()))
            print(f"  minimal d_c weight increase: {gap_text}")
    return 0 if all(not fails for _, fails in checks) else 1


def _cmd_corpus(_args):
    for name, entry in corpus_mod.corpus().items():
        qs = ", ".join(f"{g}: Q={gr.homogeneous_dimension}"
                       for g, gr in entry.gradings.items())
        print(f"{name:<12} dim {entry.algebra.n}  {qs}  ({entry.description})")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="carnot",
        description="Exact weight-graded cohomology, exponent ranges and the "
                    "contracted de Rham complex for nilpotent Lie algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate an algebra and its gradings")
    p.add_argument("spec", help="corpus name or description file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("cohomology", help="weight-graded cohomology table")
    p.add_argument("spec")
    p.add_argument("--grading")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_cohomology)

    p = sub.add_parser("ranges", help="exponent-range thresholds and queries")
    p.add_argument("spec")
    p.add_argument("--grading")
    p.add_argument("--degree", type=int)
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--best", type=int, metavar="K",
                   help="best non-vanishing threshold over all gradings")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_ranges)

    p = sub.add_parser("rumin", help="contracted-complex identity sweeps")
    p.add_argument("spec")
    p.add_argument("--grading")
    p.add_argument("--weight-cap", help="sweep cap on total weight (default 2Q)")
    p.add_argument("--degree", type=int)
    p.add_argument("--witness", type=int, metavar="K",
                   help="search a non-closed contracted witness in degree K")
    p.add_argument("--witness-cap", type=int, default=3)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_rumin)

    p = sub.add_parser("corpus", help="list built-in algebras")
    p.set_defaults(func=_cmd_corpus)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (specfile.ParseError, specfile.SemanticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyError, InvalidExponents, UndefinedWeights, ValueError) as exc:
        message = exc.args[0] if exc.args else str(exc)
        print(f"error: {message}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
