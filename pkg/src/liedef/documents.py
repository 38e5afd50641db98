"""JSON documents describing an algebra, with exact rational coefficients.

The on-disk shape is a single object:

    {
      "dim": 5,
      "brackets": [{"i": 1, "j": 2, "k": 3, "coeff": "1"}, ...],
      "torus": {"rank": 1, "weights": [["1"], ["2"], ...]},
      "labels": {"family": "f_n", "size": "5"}
    }

Coefficients and weights are strings so nothing is ever rounded.  Loading
validates shape and closure; serialization is canonical, so a load/dump
round trip is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .liealg import LieAlgebra, check_jacobi


class DocumentError(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def _parse_rational(text, problems: list[str], where: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        problems.append(f"{where}: not a rational: {text!r}")
        return Fraction(0)


def format_rational(x: Fraction) -> str:
    return str(x)


@dataclass
class TorusData:
    rank: int
    weights: list[tuple[Fraction, ...]]   # one vector per basis index

    def weight_columns(self, dim: int) -> list[list[Fraction]]:
        return [
            [self.weights[i][s] for i in range(dim)] for s in range(self.rank)
        ]


@dataclass
class AlgebraDocument:
    dim: int
    brackets: dict[tuple[int, int], dict[int, Fraction]]
    torus: TorusData | None = None
    labels: dict[str, str] = field(default_factory=dict)

    def to_algebra(self) -> LieAlgebra:
        return LieAlgebra(self.dim, self.brackets)

    @staticmethod
    def from_algebra(
        L: LieAlgebra,
        weight_columns: list[list[Fraction]] | None = None,
        labels: dict[str, str] | None = None,
    ) -> "AlgebraDocument":
        torus = None
        if weight_columns is not None:
            rank = len(weight_columns)
            weights = [
                tuple(weight_columns[s][i] for s in range(rank))
                for i in range(L.dim)
            ]
            torus = TorusData(rank, weights)
        return AlgebraDocument(L.dim, dict(L.brackets), torus, labels or {})

    def to_json_obj(self) -> dict:
        entries = []
        for (i, j) in sorted(self.brackets):
            out = self.brackets[(i, j)]
            for k in sorted(out):
                if out[k] != 0:
                    entries.append(
                        {
                            "i": i,
                            "j": j,
                            "k": k,
                            "coeff": format_rational(out[k]),
                        }
                    )
        obj: dict = {"dim": self.dim, "brackets": entries}
        if self.torus is not None:
            obj["torus"] = {
                "rank": self.torus.rank,
                "weights": [
                    [format_rational(x) for x in w] for w in self.torus.weights
                ],
            }
        if self.labels:
            obj["labels"] = {k: str(v) for k, v in sorted(self.labels.items())}
        return obj

    def dumps(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2) + "\n"


def parse_document(obj: dict) -> AlgebraDocument:
    problems: list[str] = []
    if not isinstance(obj, dict):
        raise DocumentError(["document must be a JSON object"])

    dim = obj.get("dim")
    if not isinstance(dim, int) or dim < 1:
        problems.append("dim must be a positive integer")
        dim = 1

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    raw = obj.get("brackets", [])
    if not isinstance(raw, list):
        problems.append("brackets must be a list")
        raw = []
    for pos, entry in enumerate(raw):
        where = f"brackets[{pos}]"
        if not isinstance(entry, dict):
            problems.append(f"{where}: must be an object")
            continue
        try:
            i, j, k = int(entry["i"]), int(entry["j"]), int(entry["k"])
        except (KeyError, TypeError, ValueError):
            problems.append(f"{where}: needs integer fields i, j, k")
            continue
        if not (1 <= i < j <= dim and 1 <= k <= dim):
            problems.append(
                f"{where}: indices ({i},{j},{k}) out of range for dim {dim}"
            )
            continue
        c = _parse_rational(entry.get("coeff", "1"), problems, where)
        if c != 0:
            slot = brackets.setdefault((i, j), {})
            if k in slot:
                problems.append(f"{where}: duplicate entry for ({i},{j},{k})")
            slot[k] = c

    torus = None
    raw_torus = obj.get("torus")
    if raw_torus is not None:
        if not isinstance(raw_torus, dict):
            problems.append("torus must be an object")
        else:
            rank = raw_torus.get("rank")
            weights_raw = raw_torus.get("weights", [])
            if not isinstance(rank, int) or rank < 1:
                problems.append("torus.rank must be a positive integer")
                rank = 1
            if (
                not isinstance(weights_raw, list)
                or len(weights_raw) != dim
            ):
                problems.append(
                    f"torus.weights must list one vector per basis index "
                    f"({dim} expected)"
                )
                weights_raw = []
            weights = []
            for i, w in enumerate(weights_raw):
                if not isinstance(w, list) or len(w) != rank:
                    problems.append(
                        f"torus.weights[{i}] must have length {rank}"
                    )
                    weights.append(tuple(Fraction(0) for _ in range(rank)))
                    continue
                weights.append(
                    tuple(
                        _parse_rational(x, problems, f"torus.weights[{i}]")
                        for x in w
                    )
                )
            if weights_raw:
                torus = TorusData(rank, weights)

    labels_raw = obj.get("labels", {})
    labels: dict[str, str] = {}
    if labels_raw and not isinstance(labels_raw, dict):
        problems.append("labels must be an object")
    elif isinstance(labels_raw, dict):
        labels = {str(k): str(v) for k, v in labels_raw.items()}

    known = {"dim", "brackets", "torus", "labels"}
    for key in obj:
        if key not in known:
            problems.append(f"unknown top-level field: {key}")

    if problems:
        raise DocumentError(problems)
    return AlgebraDocument(dim, brackets, torus, labels)


def load_document(path: str) -> AlgebraDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as e:
        raise DocumentError([f"cannot read {path}: {e}"]) from e
    except json.JSONDecodeError as e:
        raise DocumentError([f"{path}: invalid JSON: {e}"]) from e
    return parse_document(obj)


def validate_closure(doc: AlgebraDocument) -> list[str]:
    """Closure violations of the bracket table, as display strings."""
    report = check_jacobi(doc.to_algebra())
    return [
        f"triple {t} fails at output {l}: defect {format_rational(v)}"
        for t, l, v in report.defects
    ]
