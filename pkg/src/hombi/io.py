"""Structure documents (JSON) and human-readable rendering.

A structure document looks like::

    {"name": "F4", "kind": "eps_hom_bialgebra", "basis": ["x", "y"],
     "alpha": [["1", "0"], ["0", "1"]],
     "mu": [{"i": 1, "j": 0, "k": 0, "c": "1"}, ...],
     "delta": [{"k": 0, "i": 0, "j": 0, "c": "1"}],
     "r": [{"i": 1, "j": 0, "c": "1"}, {"i": 0, "j": 1, "c": "-1"}]}

``alpha`` uses the column-is-image convention. Lie kinds keep the bracket in
``mu`` and the cobracket in ``delta``. Indices are 0-based into ``basis``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DocumentError, RationalParseError
from .linalg import FinSpace, LinMap, Tensor, format_rational, fzeros, parse_rational
from .structures import KIND_CLASSES, KINDS, Structure

MINUS = "−"
TENSOR = "⊗"


# ---------------------------------------------------------------- rendering


def _term_label(labels: Sequence[str], idx: tuple[int, ...]) -> str:
    return TENSOR.join(labels[i] for i in idx)


def format_terms(terms: list[tuple[Fraction, str]]) -> str:
    """Render ``[(coeff, label), ...]`` with the leading term positive when possible.

    Positive terms come first, then negative ones; each group keeps the given
    (row-major) order. Coefficients ±1 are omitted, others join with ``·``.
    """
    terms = [(Fraction(c), lab) for c, lab in terms if c != 0]
    if not terms:
        return "0"
    ordered = [t for t in terms if t[0] > 0] + [t for t in terms if t[0] < 0]
    out = []
    for pos, (c, lab) in enumerate(ordered):
        mag = abs(c)
        body = lab if mag == 1 else f"{format_rational(mag)}·{lab}"
        if pos == 0:
            out.append(body if c > 0 else MINUS + body)
        else:
            out.append((" + " if c > 0 else f" {MINUS} ") + body)
    return "".join(out)


def format_coords(coords: np.ndarray, labels: Sequence[str]) -> str:
    terms = [(coords[idx], _term_label(labels, idx)) for idx in np.ndindex(*coords.shape) if coords[idx] != 0]
    return format_terms(terms)


def format_tensor(t: Tensor) -> str:
    return format_coords(t.coords, t.space.labels)


def format_structure(S: Structure) -> list[str]:
    """Line-by-line description in basis-label notation."""
    labs = S.space.labels
    lines = []
    if S.name:
        lines.append(f"name: {S.name}")
    lines.append(f"kind: {S.kind}")
    lines.append("basis: " + ", ".join(labs))
    for j, lab in enumerate(labs):
        lines.append(f"α({lab}) = {format_coords(S.A[:, j], labs)}")
    lie = S.kind.startswith("hom_lie")
    if S.has_mu:
        for i, a in enumerate(labs):
            for j, b in enumerate(labs):
                if lie and j <= i:
                    continue
                head = f"[{a},{b}]" if lie else f"μ({a},{b})"
                lines.append(f"{head} = {format_coords(S.mu[i, j], labs)}")
    if S.has_delta:
        sym = "δ" if lie else "Δ"
        for k, lab in enumerate(labs):
            lines.append(f"{sym}({lab}) = {format_coords(S.delta[k], labs)}")
    if S.r is not None:
        lines.append(f"r = {format_tensor(S.r)}")
        if S.quasi_triangular:
            lines.append("quasi-triangular: yes")
    if S.provenance:
        lines.append("provenance: " + " → ".join(S.provenance))
    return lines


# ---------------------------------------------------------------- documents


def _sparse(arr: np.ndarray, keys: str) -> list[dict]:
    out = []
    for idx in np.ndindex(*arr.shape):
        v = arr[idx]
        if v != 0:
            item = {k: int(i) for k, i in zip(keys, idx)}
            item["c"] = format_rational(v)
            out.append(item)
    return out


def structure_to_doc(S: Structure) -> dict:
    doc = {"name": S.name, "kind": S.kind, "basis": list(S.space.labels)}
    doc["alpha"] = [[format_rational(v) for v in row] for row in S.A]
    if S.has_mu:
        doc["mu"] = _sparse(S.mu, "ijk")
    if S.has_delta:
        doc["delta"] = _sparse(S.delta, "kij")
    if S.r is not None:
        doc["r"] = _sparse(S.r.coords, "ij")
        if S.quasi_triangular:
            doc["quasi_triangular"] = True
    doc["provenance"] = list(S.provenance)
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def structure_to_json(S: Structure) -> str:
    return dumps(structure_to_doc(S))


def _index(value, n: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: index must be an integer, got {value!r}")
    if not 0 <= value < n:
        raise DocumentError(f"{where}: index {value} out of range 0..{n - 1}")
    return value


def _fill(entries, n: int, keys: str, where: str) -> np.ndarray:
    if not isinstance(entries, list):
        raise DocumentError(f"{where}: expected a list of entries")
    arr = fzeros((n,) * len(keys))
    seen = set()
    for pos, item in enumerate(entries):
        if not isinstance(item, dict):
            raise DocumentError(f"{where}[{pos}]: expected an object")
        missing = [k for k in keys + "c" if k not in item]
        if missing:
            raise DocumentError(f"{where}[{pos}]: missing field(s) {', '.join(missing)}")
        extra = set(item) - set(keys + "c")
        if extra:
            raise DocumentError(f"{where}[{pos}]: unknown field(s) {', '.join(sorted(extra))}")
        idx = tuple(_index(item[k], n, f"{where}[{pos}].{k}") for k in keys)
        if idx in seen:
            raise DocumentError(f"{where}[{pos}]: duplicate entry for {idx}")
        seen.add(idx)
        try:
            arr[idx] = parse_rational(item["c"])
        except RationalParseError as e:
            raise RationalParseError(f"{where}[{pos}].c: {e}") from None
    return arr


def tensor_from_entries(entries, space: FinSpace, where: str = "r") -> Tensor:
    return Tensor(space, _fill(entries, space.dim, "ij", where))


def structure_from_doc(doc) -> Structure:
    if not isinstance(doc, dict):
        raise DocumentError("a structure document is a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"kind must be one of {', '.join(KINDS)}; got {kind!r}")
    basis = doc.get("basis")
    if not isinstance(basis, list) or not basis or not all(isinstance(b, str) and b for b in basis):
        raise DocumentError("basis must be a non-empty list of labels")
    try:
        space = FinSpace(tuple(basis))
    except ValueError as e:
        raise DocumentError(f"basis: {e}") from None
    n = space.dim
    cls = KIND_CLASSES[kind]
    alpha_rows = doc.get("alpha")
    if alpha_rows is None:
        alpha = LinMap.identity(space)
    else:
        if not isinstance(alpha_rows, list) or len(alpha_rows) != n or any(
            not isinstance(row, list) or len(row) != n for row in alpha_rows
        ):
            raise DocumentError(f"alpha must be a {n}×{n} matrix")
        m = fzeros((n, n))
        for i, row in enumerate(alpha_rows):
            for j, v in enumerate(row):
                try:
                    m[i, j] = parse_rational(v)
                except RationalParseError as e:
                    raise RationalParseError(f"alpha[{i}][{j}]: {e}") from None
        alpha = LinMap(space, m)
    kw = {}
    if "mu" in doc:
        if not cls.has_mu:
            raise DocumentError(f"{kind} has no 'mu'")
        kw["mu"] = _fill(doc["mu"], n, "ijk", "mu")
    if "delta" in doc:
        if not cls.has_delta:
            raise DocumentError(f"{kind} has no 'delta'")
        kw["delta"] = _fill(doc["delta"], n, "kij", "delta")
    r = None
    if doc.get("r") is not None:
        r = tensor_from_entries(doc["r"], space)
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("name must be a string")
    prov = doc.get("provenance", [])
    if not isinstance(prov, list) or not all(isinstance(p, str) for p in prov):
        raise DocumentError("provenance must be a list of strings")
    qt = doc.get("quasi_triangular", False)
    if not isinstance(qt, bool):
        raise DocumentError("quasi_triangular must be true or false")
    return cls(space, alpha, r=r, name=name, provenance=prov, quasi_triangular=qt, **kw)


def loads_structure(text: str) -> Structure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return structure_from_doc(doc)


def load_structure(path) -> Structure:
    with open(path, encoding="utf-8") as fh:
        return loads_structure(fh.read())


def load_r(path, space: FinSpace) -> Tensor:
    """An r document: a list of {i, j, c} entries, or an object with an ``r`` list
    (and optionally a ``basis`` that must match)."""
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise DocumentError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if isinstance(doc, dict):
        if "basis" in doc and list(doc["basis"]) != list(space.labels):
            raise DocumentError("r document basis differs from the structure's basis")
        doc = doc.get("r")
    if doc is None:
        raise DocumentError("no r entries found")
    return tensor_from_entries(doc, space)


def r_to_doc(t: Tensor) -> dict:
    return {"basis": list(t.space.labels), "r": _sparse(t.coords, "ij")}
