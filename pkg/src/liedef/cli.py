"""Command-line interface: exact deformation computations on JSON algebras.

Exit codes: 0 success, 1 validation failure (bad document, bad flags,
closure violations), 2 a computation cap was reached before the answer
was definitive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import linalg
from .catalog import CATALOG_NAMES, catalog_algebra
from .cohomology import DerivationSet, cohomology, derivations, inner_derivations
from .documents import (
    AlgebraDocument,
    DocumentError,
    format_rational,
    load_document,
    validate_closure,
)
from .gauge import DeformationSeries
from .graded import (
    FiliationError,
    FiliationState,
    StepHints,
    WeightPath,
    central_extension_step,
    filiation_run,
    stratum_check,
)
from .ideals import DEFAULT_DEGREE_CAP
from .poly import parse_poly
from .series import TruncatedSeries
from .solver import (
    admissible_set,
    coordinate_name,
    essential_names,
    normalize_to_slice,
    rigidity_test,
    slice_presentation,
    solve_versal,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CAP = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(f"argument error: {message}")


def _degree_cap(args) -> int:
    if getattr(args, "degree_cap", None) is not None:
        return args.degree_cap
    env = os.environ.get("LIEDEF_DEGREE_CAP")
    if env is not None:
        try:
            return int(env)
        except ValueError as e:
            raise CliError(f"LIEDEF_DEGREE_CAP must be an integer: {env!r}") from e
    return DEFAULT_DEGREE_CAP


def _load(path: str) -> tuple[AlgebraDocument, LieAlgebra, str]:
    try:
        doc = load_document(path)
    except DocumentError as e:
        raise CliError("document invalid: " + "; ".join(e.problems)) from e
    with open(path, "rb") as fh:
        digest = hashlib.sha256(fh.read()).hexdigest()
    try:
        L = doc.to_algebra()
    except ValueError as e:
        raise CliError(f"document invalid: {e}") from e
    return doc, L, digest


def _invariance(doc: AlgebraDocument, args) -> DerivationSet | None:
    """Torus invariance from the document unless --full asks otherwise."""
    if getattr(args, "full", False):
        return None
    if doc.torus is None:
        return None
    return DerivationSet.diagonal(doc.dim, doc.torus.weight_columns(doc.dim))


def _require_torus(doc: AlgebraDocument) -> DerivationSet:
    if doc.torus is None:
        raise CliError("this command needs a document with a torus section")
    return DerivationSet.diagonal(doc.dim, doc.torus.weight_columns(doc.dim))


def _doc_path_weights(doc: AlgebraDocument) -> list[tuple[Fraction, ...]]:
    assert doc.torus is not None
    return [tuple(w) for w in doc.torus.weights]


def _render(obj, indent: int = 0, out=None) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                print(f"{pad}{k}:", file=out)
                _render(v, indent + 1, out)
            else:
                print(f"{pad}{k}: {_scalar(v)}", file=out)
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _render(v, indent + 1, out)
            else:
                print(f"{pad}- {_scalar(v)}", file=out)
    else:
        print(f"{pad}{_scalar(obj)}", file=out)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)) and not v:
        return "(none)"
    return str(v)


def _emit(args, report: dict) -> None:
    if getattr(args, "json", False):
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        _render(report)


def _report(args, digest: str, results: dict, metadata: dict | None = None) -> dict:
    return {
        "command": args.subcommand,
        "inputs_digest": digest,
        "exact_values": True,
        "metadata": metadata or {},
        "results": results,
    }


def _series_str(s: TruncatedSeries) -> str:
    return str(s.to_poly())


def _pair_name(p: tuple[int, int]) -> str:
    return f"X_{p[0]}_{p[1]}"


def _hints_from_file(path: str) -> dict[int, StepHints]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"cannot read hints file: {e}") from e
    hints: dict[int, StepHints] = {}
    if not isinstance(raw, dict):
        raise CliError("hints file must map levels to hint objects")
    for level, h in raw.items():
        try:
            lv = int(level)
            pivot = tuple(h["pivot"]) if "pivot" in h else None
            free = [tuple(x) for x in h.get("free", [])]
            a_value = Fraction(str(h.get("a_value", "1")))
        except (TypeError, KeyError, ValueError) as e:
            raise CliError(f"bad hints entry for level {level}: {e}") from e
        hints[lv] = StepHints(pivot=pivot, free=free, a_value=a_value)
    return hints


# ----------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------

def cmd_check(args) -> int:
    doc, L, digest = _load(args.document)
    problems = validate_closure(doc)
    results = {
        "dim": L.dim,
        "labels": dict(sorted(doc.labels.items())),
        "bracket_entries": sum(len(v) for v in L.brackets.values()),
        "nilpotent": L.is_nilpotent(),
        "jacobi_ok": not problems,
        "violations": problems,
    }
    _emit(args, _report(args, digest, results))
    return EXIT_OK if not problems else EXIT_VALIDATION


def cmd_cohomology(args) -> int:
    doc, L, digest = _load(args.document)
    inv = _invariance(doc, args)
    rep = cohomology(L, args.degree, invariance=inv)
    results = {
        "degree": args.degree,
        "invariant": inv is not None,
        "dim_z": rep.dim_z,
        "dim_b": rep.dim_b,
        "dim_h": rep.dim_h,
    }
    _emit(args, _report(args, digest, results))
    return EXIT_OK


def cmd_derivations(args) -> int:
    doc, L, digest = _load(args.document)
    der = derivations(L)
    inner = inner_derivations(L)
    flat = [
        {
            r * L.dim + c: m[r][c]
            for r in range(L.dim)
            for c in range(L.dim)
            if m[r][c] != 0
        }
        for m in inner.matrices
    ]
    inner_rank = linalg.rank(flat, L.dim * L.dim)
    results = {
        "dimension": len(der.matrices),
        "inner_dimension": inner_rank,
        "outer_dimension": len(der.matrices) - inner_rank,
        "matrices": [
            [[format_rational(x) for x in row] for row in m]
            for m in der.matrices
        ],
    }
    _emit(args, _report(args, digest, results))
    return EXIT_OK


def cmd_admissible(args) -> int:
    doc, L, digest = _load(args.document)
    inv = _invariance(doc, args)
    a_set = admissible_set(L, invariance=inv)
    results = {
        "invariant": inv is not None,
        "size": len(a_set.keys),
        "dim_b2": a_set.dim_b2,
        "coordinates": [coordinate_name(k) for k in a_set.keys],
    }
    _emit(args, _report(args, digest, results))
    return EXIT_OK


def cmd_slice(args) -> int:
    doc, L, digest = _load(args.document)
    inv = _invariance(doc, args)
    a_set = admissible_set(L, invariance=inv)
    pres = slice_presentation(L, a_set, invariance=inv)
    variables = pres.quotient.variables
    var_pos = {v: i for i, v in enumerate(variables)}
    linear_rows = []
    for g in pres.quotient.relations:
        row = {}
        for e, c in g.terms:
            if sum(e) == 1:
                (idx,) = [i for i, x in enumerate(e) if x == 1]
                row[var_pos[variables[idx]]] = c
        if row:
            linear_rows.append(row)
    tangent = len(variables) - linalg.rank(linear_rows, len(variables))
    results = {
        "invariant": inv is not None,
        "coordinates": [coordinate_name(k) for k in pres.coord_keys],
        "admissible": [coordinate_name(k) for k in a_set.keys],
        "generators": [str(g) for g in pres.quotient.relations],
        "tangent_dim": tangent,
    }
    meta = {"admissible": [coordinate_name(k) for k in a_set.keys]}
    _emit(args, _report(args, digest, results, meta))
    return EXIT_OK


def cmd_versal(args) -> int:
    doc, L, digest = _load(args.document)
    inv = _invariance(doc, args)
    a_set = admissible_set(L, invariance=inv)
    sol = solve_versal(L, a_set, order=args.order, invariance=inv)
    values = sol.coordinate_values(L)
    coords = [
        {"coordinate": coordinate_name(key), "value": _series_str(values[key])}
        for key in sol.coord_keys
    ]
    results = {
        "invariant": inv is not None,
        "order": sol.order,
        "parameters": list(sol.params),
        "essential_coordinates": [
            coordinate_name(k) for k in sol.essential_keys
        ],
        "tangent_dim": sol.tangent_dim,
        "coordinates": coords,
        "obstructions": [
            {"component": i, "value": _series_str(s)}
            for i, s in enumerate(sol.obstruction_set)
        ],
        "terminated": sol.terminated,
    }
    meta = {
        "order": args.order,
        "admissible": [coordinate_name(k) for k in sol.a_set.keys],
    }
    _emit(args, _report(args, digest, results, meta))
    return EXIT_OK if sol.terminated else EXIT_CAP


def cmd_normalize(args) -> int:
    doc, L, digest = _load(args.document)
    inv = _invariance(doc, args)
    try:
        with open(args.perturbation, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise CliError(f"cannot read perturbation: {e}") from e
    try:
        params = tuple(str(p) for p in raw["params"])
        order = int(raw.get("order", 4))
        entries = {}
        for ent in raw["entries"]:
            key = ((int(ent["i"]), int(ent["j"])), int(ent["k"]))
            value = parse_poly(str(ent["value"]), params)
            entries[key] = TruncatedSeries.from_poly(value, order)
        chi = DeformationSeries(L.dim, params, order, entries)
    except (KeyError, TypeError, ValueError) as e:
        raise CliError(f"bad perturbation: {e}") from e
    a_set = admissible_set(L, invariance=inv)
    normalized, gauge = normalize_to_slice(L, a_set, chi, invariance=inv)
    results = {
        "invariant": inv is not None,
        "order": order,
        "normalized": [
            {"coordinate": coordinate_name(k), "value": _series_str(s)}
            for k, s in sorted(normalized.entries.items())
        ],
        "gauge": [
            {"a": a, "b": b, "value": _series_str(s)}
            for (a, b), s in sorted(gauge.w.items())
        ],
    }
    meta = {"admissible": [coordinate_name(k) for k in a_set.keys]}
    _emit(args, _report(args, digest, results, meta))
    return EXIT_OK


def cmd_rigidity(args) -> int:
    doc, L, digest = _load(args.document)
    inv = _invariance(doc, args)
    cap = _degree_cap(args)
    a_set = admissible_set(L, invariance=inv)
    rep = rigidity_test(L, a_set, invariance=inv, degree_cap=cap)
    results = {
        "invariant": inv is not None,
        "verdict": rep.verdict,
        "k_dimension": rep.k_dimension if rep.finite else "infinite",
        "finite": rep.finite,
        "complete": rep.complete,
        "residual_variables": list(rep.residual_variables),
        "residual_relations": [str(g) for g in rep.residual_relations],
    }
    meta = {
        "degree_cap": cap,
        "monomial_order": "degrevlex",
        "admissible": [coordinate_name(k) for k in a_set.keys],
    }
    _emit(args, _report(args, digest, results, meta))
    return EXIT_OK if rep.verdict != "unknown" else EXIT_CAP


def _path_for(doc: AlgebraDocument, target: int) -> WeightPath:
    torus = doc.torus
    assert torus is not None
    weights = _doc_path_weights(doc)
    if len(weights) < target:
        if torus.rank == 1 and len(weights) >= 2:
            step = weights[1][0] - weights[0][0]
            if step > 0 and all(
                weights[i][0] - weights[i - 1][0] == step
                for i in range(1, len(weights))
            ):
                last = weights[-1][0]
                for _ in range(target - len(weights)):
                    last = last + step
                    weights.append((last,))
        if len(weights) < target:
            raise CliError(
                "document weights do not reach the target dimension and "
                "are not an arithmetic rank-1 sequence"
            )
    return WeightPath(1 if torus.rank == 1 else torus.rank, weights, doc.dim)


def cmd_extend(args) -> int:
    doc, L, digest = _load(args.document)
    _require_torus(doc)
    if args.weight is not None:
        try:
            new_w = tuple(
                Fraction(x) for x in str(args.weight).split(",")
            )
        except (ValueError, ZeroDivisionError) as e:
            raise CliError(f"bad --weight: {e}") from e
        if len(new_w) != doc.torus.rank:
            raise CliError("--weight length must match the torus rank")
        weights = _doc_path_weights(doc) + [new_w]
        path = WeightPath(doc.torus.rank, weights, doc.dim)
    else:
        path = _path_for(doc, doc.dim + 1)
    hints = StepHints()
    if args.pivot:
        try:
            i, j = (int(x) for x in args.pivot.split(","))
        except ValueError as e:
            raise CliError(f"bad --pivot: {e}") from e
        hints.pivot = (i, j)
    try:
        state = FiliationState.from_algebra(L, path)
        new_state, step = central_extension_step(
            state, hints, _degree_cap(args)
        )
    except (FiliationError, NotImplementedError) as e:
        raise CliError(str(e)) from e
    results = {
        "level": step.level,
        "beta": [format_rational(x) for x in step.beta],
        "pairs": [_pair_name(p) for p in step.pairs],
        "nu": step.nu,
        "case": step.case,
        "pivot": _pair_name(step.pivot) if step.pivot else None,
        "new_params": step.new_params,
        "relations": [str(r) for r in step.new_relations],
        "values": {
            _pair_name(p): str(v) for p, v in step.solved_level.items()
        },
        "extended": new_state is not None,
    }
    meta = {"pivot": _pair_name(step.pivot) if step.pivot else None}
    _emit(args, _report(args, digest, results, meta))
    return EXIT_OK


def cmd_filiate(args) -> int:
    doc, L, digest = _load(args.document)
    _require_torus(doc)
    path = _path_for(doc, args.target)
    hints = _hints_from_file(args.hints) if args.hints else {}
    try:
        result = filiation_run(
            path, args.target, L, hints, _degree_cap(args)
        )
    except (FiliationError, NotImplementedError) as e:
        raise CliError(str(e)) from e
    state = result.state
    values = state.display_solved()
    display = dict(zip(state.params, essential_names(len(state.params))))
    steps = []
    for step in result.steps:
        steps.append(
            {
                "level": step.level,
                "nu": step.nu,
                "case": step.case,
                "pivot": _pair_name(step.pivot) if step.pivot else None,
                "new_params": [display.get(p, p) for p in step.new_params],
                "relations": [
                    str(r.rename_variables(display)) for r in step.new_relations
                ],
            }
        )
    pres = state.presentation()
    results = {
        "target": args.target,
        "steps": steps,
        "parameters": list(pres.variables),
        "relations": [str(r) for r in pres.relations],
        "values": {_pair_name(p): str(v) for p, v in values.items()},
    }
    if args.expand is not None:
        results["series"] = {
            _pair_name(p): str(v.series_expand(args.expand).to_poly())
            for p, v in values.items()
        }
    meta = {
        "pivots": {
            str(level): _pair_name(pair)
            for level, (pair, _) in sorted(state.a_choices.items())
        },
        "monomial_order": "degrevlex",
        "degree_cap": _degree_cap(args),
    }
    _emit(args, _report(args, digest, results, meta))
    return EXIT_OK


def cmd_reduce_check(args) -> int:
    from .reduction import check_reduction_hypotheses, semidirect_assemble

    doc, L, digest = _load(args.document)
    action = _require_torus(doc)
    try:
        data = semidirect_assemble(L, action)
    except ValueError as e:
        raise CliError(str(e)) from e
    rep = check_reduction_hypotheses(data)
    results = {
        "assembled_dim": data.assembled.dim,
        "h1_epi": rep.h1_epi,
        "h2_iso": rep.h2_iso,
        "h3_mono": rep.h3_mono,
        "case": rep.prop_case,
        "dim_h1_quotient": rep.dim_h1_quotient,
        "dim_h2_quotient": rep.dim_h2_quotient,
        "dims_invariant": {str(k): v for k, v in rep.dims_invariant.items()},
        "dims_assembled": {str(k): v for k, v in rep.dims_assembled.items()},
        "assembled_complete": rep.assembled_complete,
    }
    _emit(args, _report(args, digest, results))
    return EXIT_OK


def cmd_stratum(args) -> int:
    doc, L, digest = _load(args.document)
    _require_torus(doc)
    try:
        rep = stratum_check(L, doc.torus.weight_columns(doc.dim))
    except ValueError as e:
        raise CliError(str(e)) from e
    results = {
        "in_stratum": rep.in_stratum,
        "torus_rank": rep.torus_rank,
        "commutant_dimension": rep.commutant_dimension,
    }
    _emit(args, _report(args, digest, results))
    return EXIT_OK


def cmd_catalog(args) -> int:
    try:
        L, weights, labels = catalog_algebra(args.name, args.size)
    except ValueError as e:
        raise CliError(str(e)) from e
    doc = AlgebraDocument.from_algebra(L, weights, labels)
    text = doc.dumps()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ----------------------------------------------------------------------
# parser assembly
# ----------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(
        prog="liedef",
        description=(
            "Exact deformation computations for finite-dimensional "
            "Lie algebras"
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, handler, doc_arg=True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        if doc_arg:
            p.add_argument("document", help="algebra document (JSON)")
        p.add_argument("--json", action="store_true", help="JSON output")
        p.set_defaults(handler=handler)
        return p

    add("check", cmd_check, help="validate a document and its closure")

    p = add("cohomology", cmd_cohomology, help="cohomology dimensions")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--full", action="store_true", help="ignore the torus")

    add("derivations", cmd_derivations, help="derivation algebra")

    p = add("admissible", cmd_admissible, help="admissible coordinate set")
    p.add_argument("--full", action="store_true", help="ignore the torus")

    p = add("slice", cmd_slice, help="slice presentation at the algebra")
    p.add_argument("--full", action="store_true", help="ignore the torus")

    p = add("versal", cmd_versal, help="versal deformation to given order")
    p.add_argument("--order", type=int, default=6)
    p.add_argument("--full", action="store_true", help="ignore the torus")

    p = add("normalize", cmd_normalize, help="gauge a deformation into the slice")
    p.add_argument("perturbation", help="deformation series (JSON)")
    p.add_argument("--full", action="store_true", help="ignore the torus")

    p = add("rigidity", cmd_rigidity, help="formal rigidity test")
    p.add_argument("--full", action="store_true", help="ignore the torus")
    p.add_argument("--degree-cap", type=int, default=None)

    p = add("extend", cmd_extend, help="one graded central extension step")
    p.add_argument("--weight", default=None, help="comma-separated rationals")
    p.add_argument("--pivot", default=None, help="pivot pair i,j")
    p.add_argument("--degree-cap", type=int, default=None)

    p = add("filiate", cmd_filiate, help="successive central extensions")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--hints", default=None, help="per-level hints (JSON)")
    p.add_argument("--expand", type=int, default=None)
    p.add_argument("--degree-cap", type=int, default=None)

    add("reduce-check", cmd_reduce_check, help="reduction hypothesis flags")

    add("stratum", cmd_stratum, help="maximal-torus stratum membership")

    p = add("catalog", cmd_catalog, doc_arg=False, help="emit a built-in algebra")
    p.add_argument("name", choices=CATALOG_NAMES)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--out", default=None)

    return parser


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except DocumentError as e:
        print("error: " + "; ".join(e.problems), file=sys.stderr)
        return EXIT_VALIDATION


def main() -> None:
    try:
        sys.exit(run_command(sys.argv[1:]))
    except BrokenPipeError:
        os.close(sys.stdout.fileno())
        sys.exit(EXIT_OK)
