import json
from fractions import Fraction

import numpy as np
import pytest

from hombi import fixtures as F
from hombi.constructions import coboundary_from_r, hom_lie_of
from hombi.errors import DocumentError, RationalParseError
from hombi.io import (
    format_coords,
    format_structure,
    format_terms,
    load_r,
    loads_structure,
    r_to_doc,
    structure_from_doc,
    structure_to_doc,
    structure_to_json,
)
from hombi.linalg import Tensor, fzeros


def same(S, T):
    if (S.kind, S.name, S.space.labels, S.provenance, S.quasi_triangular) != (
        T.kind, T.name, T.space.labels, T.provenance, T.quasi_triangular
    ):
        return False
    if not np.array_equal(S.A, T.A):
        return False
    for attr in ("mu", "delta"):
        a, b = getattr(S, attr, None), getattr(T, attr, None)
        if (a is None) != (b is None) or (a is not None and not np.array_equal(a, b)):
            return False
    if (S.r is None) != (T.r is None):
        return False
    return S.r is None or np.array_equal(S.r.coords, T.r.coords)


@pytest.mark.parametrize(
    "terms, text",
    [
        ([], "0"),
        ([(0, "x")], "0"),
        ([(1, "x")], "x"),
        ([(-1, "x")], "−x"),
        ([(Fraction(1, 2), "x⊗x"), (1, "y⊗x")], "1/2·x⊗x + y⊗x"),
        ([(-1, "x⊗y"), (1, "y⊗x")], "y⊗x − x⊗y"),
        ([(-3, "x⊗x"), (1, "y⊗x")], "y⊗x − 3·x⊗x"),
        ([(-2, "a"), (Fraction(-7, 5), "b")], "−2·a − 7/5·b"),
    ],
)
def test_format_terms(terms, text):
    assert format_terms(terms) == text


def test_format_coords_is_row_major():
    t = fzeros((2, 2))
    t[1, 0], t[0, 1], t[0, 0] = 1, 1, 2
    assert format_coords(t, ("x", "y")) == "2·x⊗x + x⊗y + y⊗x"


def test_format_structure_lines():
    S = coboundary_from_r(F.f4(), F.f4_r())
    lines = format_structure(S)
    assert "basis: x, y" in lines
    assert "α(x) = x" in lines
    assert "Δ(x) = x⊗x" in lines
    assert "r = y⊗x − x⊗y" in lines
    assert "quasi-triangular: yes" in lines
    L = format_structure(hom_lie_of(S))
    assert "[x,y] = −x" in L and "δ(y) = y⊗x − x⊗y" in L
    assert not any(line.startswith("[y,x]") for line in L)


@pytest.mark.parametrize("name", sorted(F.all_fixtures()))
def test_round_trip_fixtures(name):
    S = F.all_fixtures()[name]
    text = structure_to_json(S)
    T = loads_structure(text)
    assert same(S, T)
    assert structure_to_json(T) == text


def test_round_trip_lie_and_quasi_triangular():
    S = coboundary_from_r(F.f4(), F.f4_r())
    for X in (S, hom_lie_of(S), F.f4_algebra(2, -3), F.f6_algebra()):
        text = structure_to_json(X)
        assert structure_to_json(loads_structure(text)) == text
        assert same(X, loads_structure(text))


def test_document_layout():
    doc = structure_to_doc(F.f4())
    assert list(doc)[:4] == ["name", "kind", "basis", "alpha"]
    assert all(set(e) == {"i", "j", "k", "c"} for e in doc["mu"])
    assert all(isinstance(e["c"], str) for e in doc["mu"])


def base_doc():
    return json.loads(structure_to_json(F.f4()))


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.update(kind="bogus"),
        lambda d: d.update(basis=[]),
        lambda d: d.update(basis=["x", "x"]),
        lambda d: d.update(alpha=[["1"]]),
        lambda d: d["mu"].append(dict(d["mu"][0])),
        lambda d: d["mu"].append({"i": 0, "j": 0, "k": 5, "c": "1"}),
        lambda d: d["mu"].append({"i": 0, "j": 0, "c": "1"}),
        lambda d: d["mu"].append({"i": 0, "j": 0, "k": 0, "c": "1", "z": 1}),
        lambda d: d["mu"].append({"i": True, "j": 0, "k": 0, "c": "1"}),
        lambda d: d.update(mu={}),
        lambda d: d.update(provenance="x"),
        lambda d: d.update(quasi_triangular="yes"),
    ],
)
def test_document_errors(mutate):
    doc = base_doc()
    mutate(doc)
    with pytest.raises(DocumentError):
        structure_from_doc(doc)


def test_kind_without_delta_rejects_delta():
    doc = json.loads(structure_to_json(F.f6_algebra()))
    doc["delta"] = []
    with pytest.raises(DocumentError):
        structure_from_doc(doc)


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5.2", ""])
def test_bad_rationals(bad):
    doc = base_doc()
    doc["mu"][0]["c"] = bad
    with pytest.raises(RationalParseError, match=r"mu\[0\]\.c"):
        structure_from_doc(doc)
    doc = base_doc()
    doc["alpha"][0][1] = bad
    with pytest.raises(RationalParseError, match=r"alpha\[0\]\[1\]"):
        structure_from_doc(doc)


def test_invalid_json():
    with pytest.raises(DocumentError, match="line 1"):
        loads_structure("{not json")


def test_alpha_defaults_to_identity():
    doc = base_doc()
    del doc["alpha"]
    S = structure_from_doc(doc)
    assert np.array_equal(S.A, np.eye(2, dtype=int))


def test_r_documents(tmp_path):
    r = F.f4_r()
    p = tmp_path / "r.json"
    p.write_text(json.dumps(r_to_doc(r)))
    assert np.array_equal(load_r(p, r.space).coords, r.coords)
    p.write_text(json.dumps(r_to_doc(r)["r"]))
    assert np.array_equal(load_r(p, r.space).coords, r.coords)
    p.write_text(json.dumps({"basis": ["a", "b"], "r": []}))
    with pytest.raises(DocumentError):
        load_r(p, r.space)
    p.write_text(json.dumps({"basis": ["x", "y"]}))
    with pytest.raises(DocumentError):
        load_r(p, r.space)
    zero = Tensor(r.space, fzeros((2, 2)))
    p.write_text(json.dumps(r_to_doc(zero)))
    assert not load_r(p, r.space).coords.any()
