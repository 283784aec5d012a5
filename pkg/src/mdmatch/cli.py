"""Command-line interface.

Exit codes: 0 on success (or when a check stays within tolerance), 1 when a
checked property is violated, 2 on bad input.
"""
from __future__ import annotations

import argparse
import logging
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import random_inputs
from .complex import ComplexError, ScalarFiltration, SimplicialComplex, VectorFiltration, lower_star
from .diagram import (
    DiagramError,
    PersistenceDiagram,
    default_epsilon,
    diagram_from_csv,
    diagram_from_pairs,
    diagram_to_csv,
    multiplicity_infinity,
    multiplicity_proper,
    rank_from_diagram,
)
from .foliation import AdmissiblePair, Scheme, leaf_through, reduce_function
from .homology import FieldSpec, persistence_pairs, scalar_rank_oracle
from .io import InputError, complex_to_dict, dump_json, exact_string, json_number, load_complex
from .matching import d_match
from .multidist import GridSpec, default_offset_bound, dmatch_nd, invariance_report
from .plot import diagram_svg

log = logging.getLogger("mdmatch")

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def _vector(text: str, exact: bool) -> tuple:
    try:
        return tuple(Fraction(x) if exact else float(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad vector {text!r}") from exc


def _two_vectors(text: str, exact: bool) -> tuple[tuple, tuple]:
    parts = text.split(";")
    if len(parts) != 2:
        raise InputError(f"expected '<a1,a2,...>;<b1,b2,...>', got {text!r}")
    return _vector(parts[0], exact), _vector(parts[1], exact)


def _value_fields(x, key: str) -> dict:
    out = {key: json_number(x)}
    if isinstance(x, Fraction):
        out[f"{key}_exact"] = exact_string(x)
    return out


def _pair_json(pair: AdmissiblePair) -> dict:
    return {"lam": [json_number(x) for x in pair.lam], "beta": [json_number(x) for x in pair.beta],
            "scheme": pair.scheme.name if pair.scheme else None}


def _emit(args, payload: dict) -> None:
    text = dump_json(payload)
    sys.stdout.write(text)
    out = getattr(args, "out", None)
    if out and args.command != "diagram":
        Path(out).write_text(text)


def _load(args, path: str, values: str | None = None):
    return load_complex(path, values, exact=args.mode == "rational")


def _scalar(args, K: SimplicialComplex, phi: VectorFiltration) -> tuple[ScalarFiltration, AdmissiblePair | None]:
    """The 1-D filtration to work with: native when n == 1, else reduced on the chosen leaf."""
    exact = args.mode == "rational"
    scheme = Scheme.parse(args.scheme)
    if getattr(args, "pair", None):
        lam, beta = _two_vectors(args.pair, exact)
        try:
            pair = AdmissiblePair(lam, beta, scheme)
        except ValueError as exc:
            raise InputError(f"pair is not admissible: {exc}") from exc
    elif getattr(args, "point", None):
        u, v = _two_vectors(args.point, exact)
        try:
            pair = leaf_through(scheme, u, v)[0]
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    elif phi.n == 1:
        return lower_star(K, phi.component(0)), None
    else:
        raise InputError(f"filtration has {phi.n} components: give --pair or --point to pick a leaf")
    if pair.n != phi.n:
        raise InputError(f"leaf has {pair.n} components, filtration has {phi.n}")
    return reduce_function(K, phi, pair), pair


def _field(args) -> FieldSpec:
    try:
        return FieldSpec(args.field)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


# -- commands ------------------------------------------------------------

def cmd_diagram(args) -> int:
    K, phi = _load(args, args.input, args.values)
    F, pair = _scalar(args, K, phi)
    D = diagram_from_pairs(persistence_pairs(F, args.k, _field(args)))
    csv_text = diagram_to_csv(D)
    if args.out:
        prefix = Path(args.out)
        prefix.with_suffix(".csv").write_text(csv_text)
        prefix.with_suffix(".svg").write_text(diagram_svg(D, f"degree {args.k}"))
    else:
        sys.stdout.write(csv_text)
    if pair is not None:
        log.info("leaf %s", _pair_json(pair))
    return EXIT_OK


def _diagram_input(args, path: str) -> PersistenceDiagram:
    exact = args.mode == "rational"
    if path.lower().endswith(".csv"):
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc}") from exc
        return diagram_from_csv(text, exact, degree=args.k)
    K, phi = _load(args, path)
    F, _ = _scalar(args, K, phi)
    return diagram_from_pairs(persistence_pairs(F, args.k, _field(args)))


def cmd_match(args) -> int:
    D1, D2 = _diagram_input(args, args.first), _diagram_input(args, args.second)
    _emit(args, {**_value_fields(d_match(D1, D2), "distance"), "degree": args.k})
    return EXIT_OK


def _grid(args, phi, psi) -> GridSpec:
    bound = Fraction(args.bound) if args.bound else default_offset_bound(phi, psi)
    try:
        return GridSpec.parse(args.grid, bound)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_mdmatch(args) -> int:
    KX, phi = _load(args, args.first, args.values)
    KY, psi = _load(args, args.second, args.values2)
    if phi.n != psi.n:
        raise InputError(f"inputs have {phi.n} and {psi.n} components")
    grid = _grid(args, phi, psi)
    scheme = Scheme.parse(args.scheme)
    start = time.perf_counter()
    value, pair = dmatch_nd(KX, phi, KY, psi, args.k, scheme, grid, _field(args), args.workers)
    payload = {**_value_fields(value, "value"), "argmax_pair": _pair_json(pair), "grid": grid.as_dict(),
               "scheme": scheme.name, "degree": args.k, "lower_bound": True}
    if args.timings:
        payload["timings_seconds"] = {"total": time.perf_counter() - start}
    _emit(args, payload)
    return EXIT_OK


def _random_input(rng: random.Random, n: int, exact: bool) -> tuple[SimplicialComplex, VectorFiltration]:
    K = random_inputs.small_complex(rng, max_simplices=30)
    return K, random_inputs.random_filtration(rng, K, n, exact)


def cmd_invariance(args) -> int:
    exact = args.mode == "rational"
    rng = random.Random(args.seed)
    if args.first and args.second:
        KX, phi = _load(args, args.first, args.values)
        KY, psi = _load(args, args.second, args.values2)
    elif args.first or args.second:
        raise InputError("give two inputs, or none for seeded random ones")
    else:
        (KX, phi), (KY, psi) = _random_input(rng, args.n, exact), _random_input(rng, args.n, exact)
    if phi.n != psi.n:
        raise InputError(f"inputs have {phi.n} and {psi.n} components")
    try:
        schemes = [Scheme.parse(s) for s in args.schemes.split(",")]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    probes = [random_inputs.random_probe(rng, phi.n, exact) for _ in range(args.probes)]
    grid = _grid(args, phi, psi) if args.grid else None
    report = invariance_report(KX, phi, KY, psi, args.k, schemes, probes, _field(args), grid, args.tol,
                               args.workers, args.timings)
    if not (args.first and args.second):
        report["inputs"] = {"seed": args.seed, "X": complex_to_dict(KX, phi), "Y": complex_to_dict(KY, psi)}
    _emit(args, report)
    return EXIT_OK if report["passed"] else EXIT_VIOLATION


def oracle_check(F: ScalarFiltration, k: int, field: FieldSpec, D: PersistenceDiagram | None = None) -> dict:
    """Compare the direct rank, the pairs count and the diagram count on the critical grid."""
    pairs = persistence_pairs(F, k, field)
    if D is None:
        D = diagram_from_pairs(pairs)
    crit = F.critical_values()
    one = Fraction(1) if all(isinstance(c, (int, Fraction)) for c in crit) else 1.0
    mids = [(a + b) / 2 for a, b in zip(crit, crit[1:])]
    nodes = sorted(set(crit) | set(mids) | {crit[0] - one, crit[-1] + one})
    disagreements = []
    checked = 0
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            direct = scalar_rank_oracle(F, k, u, v, field)
            by_pairs, by_diagram = pairs.rank(u, v), rank_from_diagram(D, u, v)
            checked += 1
            if not direct == by_pairs == by_diagram:
                disagreements.append({"u": json_number(u), "v": json_number(v), "oracle": direct,
                                      "pairs": by_pairs, "diagram": by_diagram})
    eps = default_epsilon(crit)
    stored = {(u, v): m for u, v, m in D.proper}
    stored_inf = dict(D.essential)

    def rank(a, b):
        return scalar_rank_oracle(F, k, a, b, field)

    for i, u in enumerate(crit):
        for v in crit[i + 1:]:
            m = multiplicity_proper(rank, (u, v), eps)
            if m != stored.get((u, v), 0):
                disagreements.append({"point": [json_number(u), json_number(v)], "multiplicity": m,
                                      "diagram": stored.get((u, v), 0)})
        m = multiplicity_infinity(rank, u, eps)
        if m != stored_inf.get(u, 0):
            disagreements.append({"point": [json_number(u), "inf"], "multiplicity": m,
                                  "diagram": stored_inf.get(u, 0)})
    off_grid = [p for p in D.proper if p[0] not in crit or p[1] not in crit]
    off_grid += [p for p in D.essential if p[0] not in crit]
    for p in off_grid:
        disagreements.append({"point": [json_number(x) for x in p[:-1]], "diagram": p[-1], "multiplicity": 0})
    return {"checked_rank_points": checked, "disagreements": disagreements}


def cmd_oracle(args) -> int:
    field = _field(args)
    results = []
    if args.random:
        rng = random.Random(args.seed)
        exact = args.mode == "rational"
        for _ in range(args.random):
            K = random_inputs.small_complex(rng)
            phi = random_inputs.random_filtration(rng, K, 1, exact)
            results.append(oracle_check(lower_star(K, phi.component(0)), args.k, field))
    elif args.input:
        K, phi = _load(args, args.input, args.values)
        F, _ = _scalar(args, K, phi)
        D = None
        if args.diagram:
            try:
                D = diagram_from_csv(Path(args.diagram).read_text(), args.mode == "rational", degree=args.k)
            except OSError as exc:
                raise InputError(f"cannot read {args.diagram}: {exc}") from exc
        results.append(oracle_check(F, args.k, field, D))
    else:
        raise InputError("give an input file or --random N")
    total = sum(len(r["disagreements"]) for r in results)
    _emit(args, {"inputs": len(results), "degree": args.k, "field": field.characteristic,
                 "checked_rank_points": sum(r["checked_rank_points"] for r in results),
                 "disagreements": total,
                 "details": [r["disagreements"] for r in results if r["disagreements"]]})
    return EXIT_OK if total == 0 else EXIT_VIOLATION


def cmd_generate(args) -> int:
    rng = random.Random(args.seed)
    K, phi = _random_input(rng, args.n, args.mode == "rational")
    _emit(args, complex_to_dict(K, phi))
    return EXIT_OK


# -- parser --------------------------------------------------------------

def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=0, help="homology degree (default 0)")
    p.add_argument("--field", type=int, default=2, help="prime characteristic of the coefficient field")
    p.add_argument("--mode", choices=("rational", "float"), default="rational")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scheme", default="ladm", help="adm | ladm | pnorm:<p>")
    p.add_argument("--out", help="output path (prefix for diagram)")


def _leaf_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pair", help="leaf as 'lam1,lam2,...;beta1,beta2,...'")
    p.add_argument("--point", help="leaf through 'u1,u2,...;v1,v2,...'")


def _grid_options(p: argparse.ArgumentParser, default: str | None) -> None:
    p.add_argument("--grid", default=default, help="<directions>x<offsets>, e.g. 32x16")
    p.add_argument("--bound", help="offset bound (default: largest absolute input value)")
    p.add_argument("--workers", type=int, default=1, help="processes for leaf evaluation")
    p.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mdmatch", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="persistence diagram as CSV and SVG")
    p.add_argument("input")
    p.add_argument("--values", help="per-vertex values CSV for an OFF input")
    _common(p)
    _leaf_options(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("match", help="matching distance of two 1-D inputs or diagram CSVs")
    p.add_argument("first")
    p.add_argument("second")
    _common(p)
    _leaf_options(p)
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("mdmatch", help="grid lower bound of the multidimensional matching distance")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--values", help="values CSV for the first input when it is OFF")
    p.add_argument("--values2", help="values CSV for the second input when it is OFF")
    _common(p)
    _grid_options(p, "32x16")
    p.set_defaults(func=cmd_mdmatch)

    p = sub.add_parser("invariance", help="compare leaf distances across parameterization schemes")
    p.add_argument("first", nargs="?")
    p.add_argument("second", nargs="?")
    p.add_argument("--values")
    p.add_argument("--values2")
    p.add_argument("--schemes", default="adm,ladm")
    p.add_argument("--probes", type=int, default=100)
    p.add_argument("--n", type=int, default=2, help="components of random inputs")
    p.add_argument("--tol", type=float, default=1e-9)
    _common(p)
    _grid_options(p, None)
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("oracle", help="cross-check rank oracle, persistence pairs and diagram")
    p.add_argument("input", nargs="?")
    p.add_argument("--values")
    p.add_argument("--diagram", help="diagram CSV to check instead of the computed one")
    p.add_argument("--random", type=int, default=0, help="check N seeded random 1-D inputs instead")
    _common(p)
    _leaf_options(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("generate", help="write a seeded random input JSON")
    p.add_argument("--n", type=int, default=2)
    _common(p)
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.k < 0:
        parser.error("--k must be non-negative")
    try:
        return args.func(args)
    except (InputError, ComplexError, DiagramError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
