import random
from itertools import product

import numpy as np
import pytest

from hombi import fixtures as F
from hombi.errors import (
    CyclicQuiverError,
    DanglingReferenceError,
    DuplicateNameError,
    IncompatibleArrowError,
    IncompleteMapError,
    NonInjectiveVertexMapError,
    QuiverSyntaxError,
)
from hombi.quiver import (
    Arrow,
    Quiver,
    QuiverMorphism,
    enumerate_morphisms,
    enumerate_paths,
    induced_morphism,
    multiplication_is_closed,
    parse_quiver,
    parse_quiver_morphism,
    path_bialgebra,
    quiver_to_text,
    quiver_twist,
    random_morphism,
    random_quiver,
)
from hombi.structures import check_morphism, verify_structure


def same_constants(S, T):
    return (
        S.space.labels == T.space.labels
        and np.array_equal(S.A, T.A)
        and np.array_equal(S.mu, T.mu)
        and np.array_equal(S.delta, T.delta)
    )


# ---------------------------------------------------------------- parsing


def test_parse_text_and_json_agree():
    Q = parse_quiver(F.KRONECKER_TEXT)
    assert Q.vertices == ("v0", "v1")
    assert [a.name for a in Q.arrows] == ["phi1", "phi2"]
    js = '{"vertices": ["v0", "v1"], "arrows": [{"name": "phi1", "source": "v0", "target": "v1"},' \
         ' {"name": "phi2", "source": "v0", "target": "v1"}]}'
    assert parse_quiver(js) == Q
    assert parse_quiver(quiver_to_text(Q)) == Q


def test_comments_and_blank_lines_ignored():
    Q = parse_quiver("\n# c\nvertex a   # trailing\n\narrow f : a -> b\nvertex b\n")
    assert Q.vertices == ("a", "b")
    assert Q.arrows == (Arrow("f", "a", "b"),)


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("vertex a\nedge f : a -> a\n", 2, 1),
        ("vertex a\n  arrow f a -> b\n", 2, 11),
        ("vertex 1a\n", 1, 8),
        ("vertex a\narrow f : a -> b extra\n", 2, 18),
        ("vertex a b\n", 1, 10),
    ],
)
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(QuiverSyntaxError) as info:
        parse_quiver(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_json_syntax_error_position():
    with pytest.raises(QuiverSyntaxError) as info:
        parse_quiver('{"vertices": ["a",]}')
    assert info.value.line == 1 and info.value.column > 1


def test_empty_quiver_rejected():
    with pytest.raises(QuiverSyntaxError):
        parse_quiver("# nothing\n")


def test_duplicate_and_dangling_names():
    with pytest.raises(DuplicateNameError):
        parse_quiver("vertex a\nvertex a\n")
    with pytest.raises(DuplicateNameError):
        parse_quiver("vertex a\nvertex b\narrow a : a -> b\n")
    with pytest.raises(DanglingReferenceError):
        parse_quiver("vertex a\narrow f : a -> z\n")


def test_morphism_errors():
    Q = parse_quiver(F.KRONECKER_TEXT)
    with pytest.raises(IncompleteMapError):
        parse_quiver_morphism("vmap v0 -> v0\nvmap v1 -> v1\namap phi1 -> phi1\n", Q)
    with pytest.raises(NonInjectiveVertexMapError):
        parse_quiver_morphism("vmap v0 -> v1\nvmap v1 -> v1\namap phi1 -> phi1\namap phi2 -> phi2\n", Q)
    with pytest.raises(IncompatibleArrowError):
        parse_quiver_morphism("vmap v0 -> v1\nvmap v1 -> v0\namap phi1 -> phi1\namap phi2 -> phi2\n", Q)
    with pytest.raises(DanglingReferenceError):
        parse_quiver_morphism("vmap v0 -> v0\nvmap v1 -> v1\namap phi1 -> psi\namap phi2 -> phi2\n", Q)
    with pytest.raises(DanglingReferenceError):
        parse_quiver_morphism("vmap v0 -> v0\nvmap v1 -> v1\nvmap w -> v1\namap phi1 -> phi1\namap phi2 -> phi2\n", Q)
    with pytest.raises(DuplicateNameError):
        parse_quiver_morphism("vmap v0 -> v0\nvmap v0 -> v1\n", Q)
    with pytest.raises(QuiverSyntaxError) as info:
        parse_quiver_morphism("vmap v0 => v0\n", Q)
    assert info.value.line == 1 and info.value.column == 9


def test_morphism_json():
    Q = parse_quiver(F.KRONECKER_TEXT)
    m = parse_quiver_morphism('{"vmap": {"v0": "v0", "v1": "v1"}, "amap": {"phi1": "phi2", "phi2": "phi1"}}', Q)
    assert m.arrow_map == {"phi1": "phi2", "phi2": "phi1"}


# ---------------------------------------------------------------- paths


def test_cyclic_quivers_refused():
    loop = Quiver(("a",), (Arrow("f", "a", "a"),))
    two = Quiver(("a", "b"), (Arrow("f", "a", "b"), Arrow("g", "b", "a")))
    for Q in (loop, two):
        assert not Q.is_acyclic()
        with pytest.raises(CyclicQuiverError, match="infinite path algebra unsupported"):
            enumerate_paths(Q)
        with pytest.raises(CyclicQuiverError):
            path_bialgebra(Q)


def brute_paths(Q):
    """Composable arrow words, found by trying every word up to the number of arrows."""
    out = {(v,) for v in Q.vertices}
    for n in range(1, len(Q.arrows) + 1):
        for word in product(Q.arrows, repeat=n):
            if all(word[i].target == word[i + 1].source for i in range(n - 1)):
                out.add(tuple(a.name for a in word))
    return out


def test_path_enumeration_matches_brute_force():
    rng = random.Random(7)
    for _ in range(15):
        Q = random_quiver(rng, max_vertices=4, max_arrows=5)
        found = {(p.vertex,) if p.vertex else tuple(a.name for a in p.arrows) for p in enumerate_paths(Q)}
        assert found == brute_paths(Q)


def test_kronecker_and_triangular_reproduce_hand_written_fixtures():
    assert same_constants(path_bialgebra(parse_quiver(F.KRONECKER_TEXT)), F.f2())
    assert same_constants(path_bialgebra(parse_quiver(F.TRIANGULAR_TEXT)), F.f3())


def oracle_delta(path_arrows, source, target):
    """Δ(a1…an) = s(a1)⊗a2…an + Σ a1…a(i-1)⊗a(i+1)…an + a1…a(n-1)⊗t(an), as label pairs."""
    n = len(path_arrows)
    word = lambda part: ".".join(part)
    out = {}
    for i in range(n):
        left = word(path_arrows[:i]) if i > 0 else source
        right = word(path_arrows[i + 1:]) if i < n - 1 else target
        out[left, right] = out.get((left, right), 0) + 1
    return out


def test_path_comultiplication_oracle():
    rng = random.Random(11)
    for _ in range(10):
        Q = random_quiver(rng, max_vertices=5, max_arrows=6)
        B = path_bialgebra(Q)
        labels = B.space.labels
        for k, p in enumerate(enumerate_paths(Q)):
            got = {(labels[i], labels[j]): B.delta[k, i, j] for i in range(B.dim) for j in range(B.dim)
                   if B.delta[k, i, j] != 0}
            want = {} if p.length == 0 else oracle_delta([a.name for a in p.arrows], p.source, p.target)
            assert got == want


def test_products_are_concatenation():
    rng = random.Random(3)
    Q = random_quiver(rng, max_vertices=5, max_arrows=7)
    B = path_bialgebra(Q)
    assert multiplication_is_closed(B)
    paths = enumerate_paths(Q)
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            nz = [k for k in range(B.dim) if B.mu[i, j, k] != 0]
            if p.target != q.source:
                assert nz == []
            else:
                want = [a.name for a in p.arrows + q.arrows]
                got = paths[nz[0]]
                assert [a.name for a in got.arrows] == want
                if not want:
                    assert got.vertex == p.vertex == q.vertex


# ---------------------------------------------------------------- morphisms


def test_kronecker_endomorphisms():
    Q = parse_quiver(F.KRONECKER_TEXT)
    ends = enumerate_morphisms(Q)
    non_id = [m for m in ends if not m.is_identity()]
    assert len(ends) == 4
    assert sorted(tuple(sorted(m.arrow_map.items())) for m in non_id) == sorted(
        tuple(sorted(parse_quiver_morphism(t, Q).arrow_map.items())) for t in F.KRONECKER_MORPHISMS.values()
    )


@pytest.mark.parametrize("name", sorted(F.KRONECKER_MORPHISMS))
def test_kronecker_induced_maps_match_fixture(name):
    Q = parse_quiver(F.KRONECKER_TEXT)
    m = parse_quiver_morphism(F.KRONECKER_MORPHISMS[name], Q)
    sm = induced_morphism(m)
    assert np.array_equal(sm.map.matrix, F.f2_morphism(name).matrix)
    assert check_morphism(sm).ok
    T = quiver_twist(Q, m, label=name)
    assert verify_structure(T).ok


def test_triangular_swap_twist():
    Q = parse_quiver(F.TRIANGULAR_TEXT)
    m = parse_quiver_morphism(F.TRIANGULAR_SWAP, Q)
    assert np.array_equal(induced_morphism(m).map.matrix, F.f3_swap().matrix)


def test_twist_needs_endomorphism():
    Q = parse_quiver(F.KRONECKER_TEXT)
    R = Quiver(("w0", "w1", "w2"), (Arrow("b0", "w0", "w1"), Arrow("b1", "w0", "w1")))
    m = QuiverMorphism(Q, R, {"v0": "w0", "v1": "w1"}, {"phi1": "b0", "phi2": "b1"})
    assert check_morphism(induced_morphism(m)).ok
    with pytest.raises(IncompatibleArrowError):
        quiver_twist(Q, m)


def test_random_quivers_and_morphisms():
    rng = random.Random(2024)
    for _ in range(10):
        Q = random_quiver(rng)
        assert Q.is_acyclic()
        assert verify_structure(path_bialgebra(Q)).ok
        m = random_morphism(rng)
        assert check_morphism(induced_morphism(m)).ok
