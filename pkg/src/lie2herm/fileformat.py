"""YAML file format for metric Lie algebras with an optional complex structure.

    dim: 4
    brackets:                 # [b_i, b_j] = sum value * b_k, 1-based, i < j
      - {i: 1, j: 3, coeffs: [{k: 1, value: 1.0}]}
    metric: [[1, 0, 0, 0], ...]   # optional, default identity
    J: [[0, -1, 0, 0], ...]       # optional, row-major; column i is J b_i
    hints: {e1: [1, 0, 0, 0], e2: [0, 1, 0, 0]}   # optional
    name: ex8-A412-typeI          # optional
    expected: {...}               # optional, free-form metadata

Numbers are written with 17 significant digits so that floats round-trip.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .errors import ParseError
from .lie2 import MetricLieAlgebra

KNOWN_KEYS = {"dim", "brackets", "metric", "J", "hints", "name", "expected"}


@dataclass(eq=False)
class AlgebraFile:
    algebra: MetricLieAlgebra
    J: np.ndarray | None = None
    hints: tuple[np.ndarray, np.ndarray] | None = None
    name: str | None = None
    expected: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraFile):
            return NotImplemented

        def same(x, y):
            if x is None or y is None:
                return x is None and y is None
            return np.array_equal(np.asarray(x), np.asarray(y))

        return (
            same(self.algebra.C, other.algebra.C)
            and same(self.algebra.G, other.algebra.G)
            and same(self.J, other.J)
            and same(None if self.hints is None else np.stack(self.hints),
                     None if other.hints is None else np.stack(other.hints))
            and self.name == other.name
            and self.expected == other.expected
        )


# --- writing ---------------------------------------------------------------------

def _float_rep(dumper, value):
    if not np.isfinite(value):
        return yaml.SafeDumper.represent_float(dumper, value)
    text = "%.17g" % value
    # YAML 1.1 floats need a dot in the mantissa
    mant, e, exp = text.partition("e")
    if "." not in mant:
        mant += ".0"
    return dumper.represent_scalar("tag:yaml.org,2002:float", mant + e + exp)


class _Dumper(yaml.SafeDumper):
    pass


_Dumper.add_representer(float, _float_rep)


class _FlowList(list):
    pass


_Dumper.add_representer(_FlowList, lambda d, v: d.represent_sequence("tag:yaml.org,2002:seq", v, flow_style=True))


def _row(v) -> _FlowList:
    return _FlowList(float(x) for x in np.asarray(v).ravel())


def _matrix(M) -> list:
    return [_row(r) for r in np.asarray(M)]


def to_dict(doc: AlgebraFile) -> dict:
    L = doc.algebra
    brackets = []
    for (i, j), coeffs in L.nonzero_brackets().items():
        brackets.append({
            "i": i,
            "j": j,
            "coeffs": [{"k": k, "value": float(v)} for k, v in coeffs.items()],
        })
    out: dict = {}
    if doc.name is not None:
        out["name"] = doc.name
    out["dim"] = L.dim
    out["brackets"] = brackets
    if not L.is_identity_metric():
        out["metric"] = _matrix(L.G)
    if doc.J is not None:
        out["J"] = _matrix(doc.J)
    if doc.hints is not None:
        out["hints"] = {"e1": _row(doc.hints[0]), "e2": _row(doc.hints[1])}
    if doc.expected:
        out["expected"] = doc.expected
    return out


def dumps(doc: AlgebraFile) -> str:
    return yaml.dump(to_dict(doc), Dumper=_Dumper, sort_keys=False, default_flow_style=None)


def dump(doc: AlgebraFile, path) -> None:
    Path(path).write_text(dumps(doc))


# --- reading ---------------------------------------------------------------------

def _num(x, what) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{what}: expected a number, got {x!r}")
    return float(x)


def _int(x, what) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what}: expected an integer, got {x!r}")
    return x


def _square(M, n, what) -> np.ndarray:
    if not isinstance(M, list) or len(M) != n or any(not isinstance(r, list) or len(r) != n for r in M):
        raise ParseError(f"{what}: expected a {n}x{n} matrix")
    return np.array([[_num(x, what) for x in r] for r in M])


def _vector(v, n, what) -> np.ndarray:
    if not isinstance(v, list) or len(v) != n:
        raise ParseError(f"{what}: expected a vector of length {n}")
    return np.array([_num(x, what) for x in v])


def from_dict(raw) -> AlgebraFile:
    if not isinstance(raw, dict):
        raise ParseError("document must be a mapping")
    unknown = set(raw) - KNOWN_KEYS
    if unknown:
        raise ParseError(f"unknown keys: {sorted(unknown)}")
    if "dim" not in raw:
        raise ParseError("missing 'dim'")
    n = _int(raw["dim"], "dim")
    if n < 1:
        raise ParseError("dim must be positive")
    C = np.zeros((n, n, n))
    seen = set()
    for rec in raw.get("brackets") or []:
        if not isinstance(rec, dict) or set(rec) != {"i", "j", "coeffs"}:
            raise ParseError(f"bracket record must have keys i, j, coeffs: {rec!r}")
        i, j = _int(rec["i"], "bracket i"), _int(rec["j"], "bracket j")
        if not (1 <= i < j <= n):
            raise ParseError(f"bracket indices must satisfy 1 <= i < j <= {n}, got ({i}, {j})")
        if (i, j) in seen:
            raise ParseError(f"duplicate bracket ({i}, {j})")
        seen.add((i, j))
        if not isinstance(rec["coeffs"], list):
            raise ParseError("coeffs must be a list")
        for c in rec["coeffs"]:
            if not isinstance(c, dict) or set(c) != {"k", "value"}:
                raise ParseError(f"coefficient record must have keys k, value: {c!r}")
            k = _int(c["k"], "k")
            if not 1 <= k <= n:
                raise ParseError(f"k out of range: {k}")
            v = _num(c["value"], "value")
            C[i - 1, j - 1, k - 1] += v
            C[j - 1, i - 1, k - 1] -= v
    G = _square(raw["metric"], n, "metric") if raw.get("metric") is not None else None
    try:
        L = MetricLieAlgebra(C, G)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    J = _square(raw["J"], n, "J") if raw.get("J") is not None else None
    hints = None
    if raw.get("hints") is not None:
        h = raw["hints"]
        if not isinstance(h, dict) or set(h) != {"e1", "e2"}:
            raise ParseError("hints must have keys e1, e2")
        hints = (_vector(h["e1"], n, "hints.e1"), _vector(h["e2"], n, "hints.e2"))
    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string")
    expected = raw.get("expected") or {}
    if not isinstance(expected, dict):
        raise ParseError("expected must be a mapping")
    return AlgebraFile(L, J, hints, name, expected)


def loads(text: str) -> AlgebraFile:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"invalid YAML: {exc}") from exc
    return from_dict(raw)


def load(path) -> AlgebraFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def from_catalog(entry) -> AlgebraFile:
    exp = entry.expected
    expected = {"type": exp.type.value}
    if exp.verdict is not None:
        expected["verdict"] = exp.verdict.value
    if exp.dc_top is not None:
        expected["dc_top"] = float(exp.dc_top)
    J = None if entry.J is None else np.array(entry.J.J)
    return AlgebraFile(entry.algebra, J, entry.hints, entry.name, expected)
