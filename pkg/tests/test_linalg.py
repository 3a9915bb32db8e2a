from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hombi.errors import DimensionMismatchError, RationalParseError
from hombi.linalg import (
    FinSpace,
    LinMap,
    Tensor,
    apply_map_tensor,
    format_rational,
    fzeros,
    nullspace,
    parse_rational,
    permute2,
    permute3,
    rank,
    to_fraction_array,
    xeinsum,
)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def arrays(shape, elements=fracs):
    n = int(np.prod(shape))
    return st.lists(elements, min_size=n, max_size=n).map(lambda v: np.array(v, dtype=object).reshape(shape))


# ---------------------------------------------------------------- rationals


@pytest.mark.parametrize(
    "text, value",
    [("3", Fraction(3)), ("-2", Fraction(-2)), ("1/2", Fraction(1, 2)), (" 6/4 ", Fraction(3, 2)), ("+5", Fraction(5))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "x", "1.5", "", "1/-2", 0.5, True, None, [1]])
def test_parse_rational_rejects(bad):
    with pytest.raises(RationalParseError):
        parse_rational(bad)


@given(fracs)
def test_format_parse_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_to_fraction_array_shape_check():
    with pytest.raises(DimensionMismatchError):
        to_fraction_array([[1, 2]], shape=(2, 2))


# ---------------------------------------------------------------- exact einsum


def brute_einsum(spec, *ops):
    lhs, out = spec.split("->")
    ins = lhs.split(",")
    sizes = {}
    for s, op in zip(ins, ops):
        sizes.update(zip(s, op.shape))
    letters = sorted(sizes)
    res = {}
    for vals in product(*(range(sizes[c]) for c in letters)):
        env = dict(zip(letters, vals))
        term = Fraction(1)
        for s, op in zip(ins, ops):
            term *= op[tuple(env[c] for c in s)]
        key = tuple(env[c] for c in out)
        res[key] = res.get(key, Fraction(0)) + term
    arr = fzeros(tuple(sizes[c] for c in out))
    for k, v in res.items():
        arr[k] = v
    return arr


@settings(max_examples=40, deadline=None)
@given(arrays((3, 2)), arrays((2, 3, 2)), arrays((2, 2)))
def test_xeinsum_matches_brute_force(a, b, c):
    for spec, ops in [("ij,jkl->ikl", (a, b)), ("ij,jkl,lm->ikm", (a, b, c)), ("ij,jkm->km", (a, b)), ("lm,ml->", (c, c))]:
        assert np.array_equal(xeinsum(spec, *ops), brute_einsum(spec, *ops))


def test_xeinsum_big_integers_stay_exact():
    big = Fraction(3**40, 7)
    a = np.array([[big, 1], [2, big]], dtype=object)
    got = xeinsum("ij,jk->ik", a, a)
    assert got[0, 0] == big * big + 2
    assert np.array_equal(got, brute_einsum("ij,jk->ik", a, a))


def test_xeinsum_shape_errors():
    with pytest.raises(DimensionMismatchError):
        xeinsum("ij,jk->ik", fzeros((2, 3)), fzeros((2, 2)))


# ---------------------------------------------------------------- maps and tensors

XY = FinSpace(("x", "y"))


def test_finspace_rejects_duplicates():
    with pytest.raises(ValueError):
        FinSpace(("x", "x"))


def test_linmap_column_convention():
    f = LinMap.from_images(XY, [[1, 0], [Fraction(1, 2), 1]])  # f(x) = x, f(y) = x/2 + y
    assert f(Tensor.basis(XY, 1)) == Tensor.from_terms(XY, [(Fraction(1, 2), "x"), (1, "y")], 1)
    assert (f @ f.inverse()).is_identity()
    assert f.power(3) == f @ f @ f


def test_singular_map_has_no_inverse():
    f = LinMap(XY, [[1, 1], [1, 1]])
    assert not f.is_invertible()
    with pytest.raises(ValueError):
        f.inverse()


def test_rank_and_nullspace():
    m = to_fraction_array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(m) == 2
    ns = nullspace(m)
    assert len(ns) == 1
    assert all(v == 0 for v in xeinsum("ij,j->i", m, ns[0]))


@given(arrays((2, 2, 2)))
def test_permute3_against_definition(c):
    space = XY
    t = Tensor(space, c)
    # sigma(a⊗b⊗c) = c⊗a⊗b, sigma2 = sigma∘sigma, pi(a⊗b⊗c) = c⊗b⊗a
    s, s2, p = permute3(t, "sigma"), permute3(t, "sigma2"), permute3(t, "pi")
    for i, j, k in product(range(2), repeat=3):
        assert s.coords[k, i, j] == c[i, j, k]
        assert s2.coords[j, k, i] == c[i, j, k]
        assert p.coords[k, j, i] == c[i, j, k]
    assert permute3(s, "sigma2") == t
    assert permute2(permute2(Tensor(space, c[0]))) == Tensor(space, c[0])


@given(arrays((2, 2)), arrays((2, 2)), arrays((2, 2)))
def test_apply_map_tensor_is_kronecker(m1, m2, r):
    f, g = LinMap(XY, m1), LinMap(XY, m2)
    out = apply_map_tensor([f, g], Tensor(XY, r))
    assert np.array_equal(out.coords, brute_einsum("ai,bj,ij->ab", m1, m2, r))


def test_tensor_repr_uses_labels():
    t = Tensor.from_terms(XY, [(1, "y", "x"), (-1, "x", "y")], 2)
    assert "y⊗x − x⊗y" in repr(t)
