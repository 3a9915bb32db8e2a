"""Exact rational scalars, finite spaces, linear maps and small dense tensors.

Every coordinate array is a numpy ``object`` array of :class:`fractions.Fraction`.
Tensor coordinates are stored with shape ``(n,) * rank``, so numpy's C order is
the row-major layout used everywhere in the package: ``(i, j) -> i*n + j`` and
``(i, j, k) -> (i*n + j)*n + k``.

A linear map stores its matrix with column ``j`` holding the coordinates of the
image of basis vector ``j``.
"""

from __future__ import annotations

import functools
import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError, RationalParseError

__all__ = [
    "Fraction",
    "FinSpace",
    "LinMap",
    "Tensor",
    "parse_rational",
    "format_rational",
    "to_fraction_array",
    "fzeros",
    "xeinsum",
    "apply_map_tensor",
    "permute2",
    "permute3",
    "contract_mu",
    "nullspace",
    "rank",
]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")

_INT64_BOUND = 2**62


def parse_rational(value) -> Fraction:
    """Read a rational from ``"3"``, ``"-2"``, ``"1/2"`` or a Python int/Fraction.

    Floats are refused: they are not exact.
    """
    if isinstance(value, bool):
        raise RationalParseError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if not isinstance(value, str):
        raise RationalParseError(f"not a rational: {value!r}")
    m = _RATIONAL_RE.match(value)
    if m is None:
        raise RationalParseError(f"not a rational: {value!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RationalParseError(f"zero denominator: {value!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_fraction_array(data, shape: tuple[int, ...] | None = None) -> np.ndarray:
    """Copy ``data`` into an object array of Fractions."""
    arr = np.array(data, dtype=object)
    if shape is not None and arr.shape != tuple(shape):
        raise DimensionMismatchError("array", tuple(shape), arr.shape)
    out = np.empty(arr.shape, dtype=object)
    flat_in = arr.ravel()
    flat_out = out.ravel()
    for idx, v in enumerate(flat_in):
        flat_out[idx] = parse_rational(v)
    return out


def fzeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def fidentity(n: int) -> np.ndarray:
    out = fzeros((n, n))
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


_numerator = np.frompyfunc(operator.attrgetter("numerator"), 1, 1)
_denominator = np.frompyfunc(operator.attrgetter("denominator"), 1, 1)


def integerize(a) -> tuple[np.ndarray, int, int]:
    """(integer object array, common denominator, max |entry|) with a = ints / den."""
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return np.zeros(a.shape, dtype=object), 1, 0
    try:
        nums, dens = _numerator(a), _denominator(a)
    except AttributeError:  # floats or strings: go through Fraction
        a = np.frompyfunc(Fraction, 1, 1)(a)
        nums, dens = _numerator(a), _denominator(a)
    den = math.lcm(*set(dens.ravel().tolist()))
    ints = nums if den == 1 else nums * (den // dens)
    ints = np.asarray(ints, dtype=object).reshape(a.shape)
    top = max(abs(int(ints.max())), abs(int(ints.min())))
    return ints, den, top


def _fractions(raw: np.ndarray, den: int, shape) -> np.ndarray:
    """raw / den as Fractions, built once per distinct value."""
    vals, inv = np.unique(raw.ravel(), return_inverse=True)
    table = np.empty(len(vals), dtype=object)
    for i, v in enumerate(vals):
        table[i] = Fraction(int(v), den)
    return table[inv.ravel()].reshape(shape)


_NAIVE_LIMIT = 200_000


@functools.lru_cache(maxsize=1024)
def _einsum_path(subscripts: str, shapes: tuple) -> list:
    dummies = [np.broadcast_to(np.int8(0), s) for s in shapes]
    return np.einsum_path(subscripts, *dummies, optimize="greedy")[0]


def exact_sum(*arrays: np.ndarray, signs: Sequence[int] | None = None) -> np.ndarray:
    """Signed sum of same-shape Fraction arrays, computed on a common denominator."""
    signs = signs or [1] * len(arrays)
    scaled = [integerize(a) for a in arrays]
    den = math.lcm(*(d for _, d, _ in scaled))
    total = sum(sg * ints * (den // d) for sg, (ints, d, _) in zip(signs, scaled))
    return _fractions(np.asarray(total, dtype=object), den, np.shape(arrays[0]))


def xeinsum(subscripts: str, *operands: np.ndarray) -> np.ndarray:
    """Exact ``np.einsum`` over Fraction arrays.

    Operands are scaled to integers. When a bound on every partial sum fits in
    int64 the contraction runs natively, otherwise on Python ints.
    """
    lhs, out_spec = subscripts.replace(" ", "").split("->")
    in_specs = lhs.split(",")
    if len(in_specs) != len(operands):
        raise ValueError("subscript/operand count mismatch")
    sizes: dict[str, int] = {}
    for spec, op in zip(in_specs, operands):
        if len(spec) != op.ndim:
            raise DimensionMismatchError(f"operand {spec}", len(spec), op.ndim)
        for letter, size in zip(spec, op.shape):
            if sizes.setdefault(letter, size) != size:
                raise DimensionMismatchError(f"index {letter}", sizes[letter], size)
    out_shape = tuple(sizes[c] for c in out_spec)

    scaled = [integerize(op) for op in operands]
    if any(top == 0 for _, _, top in scaled):
        return fzeros(out_shape)
    summed = set("".join(in_specs)) - set(out_spec)
    terms = math.prod(sizes[c] for c in summed) if summed else 1
    bound = math.prod(top for _, _, top in scaled) * terms
    den = math.prod(d for _, d, _ in scaled)
    # small contractions are cheapest unplanned; large ones reuse a cached path
    naive = math.prod(sizes.values())
    path = False if len(operands) <= 2 or naive <= _NAIVE_LIMIT else _einsum_path(
        subscripts, tuple(op.shape for op in operands)
    )
    if bound < _INT64_BOUND:
        ints = [s.astype(np.int64) for s, _, _ in scaled]
        raw = np.einsum(subscripts, *ints, optimize=path)
    else:
        raw = np.einsum(subscripts, *(s for s, _, _ in scaled), optimize=path)
    return _fractions(np.asarray(raw).reshape(out_shape), den, out_shape)


def _is_zero_array(a: np.ndarray) -> bool:
    return all(x == 0 for x in a.ravel())


def _arrays_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.ravel(), b.ravel()))


@dataclass(frozen=True)
class FinSpace:
    """A finite-dimensional rational vector space with a labelled basis."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ValueError("a space needs at least one basis vector")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValueError(f"basis labels must be non-empty strings, got {lab!r}")
        if len(set(labels)) != len(labels):
            raise ValueError("basis labels must be distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def check_compatible(self, other: "FinSpace", operand: str) -> None:
        if other.dim != self.dim:
            raise DimensionMismatchError(operand, self.dim, other.dim)


class LinMap:
    """Linear map ``source -> target`` given by a matrix of Fractions."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FinSpace, matrix, target: FinSpace | None = None):
        target = source if target is None else target
        m = to_fraction_array(matrix)
        if m.shape != (target.dim, source.dim):
            raise DimensionMismatchError("matrix", (target.dim, source.dim), m.shape)
        self.source = source
        self.target = target
        self.matrix = m

    @classmethod
    def identity(cls, space: FinSpace) -> "LinMap":
        return cls(space, fidentity(space.dim))

    @classmethod
    def zero(cls, space: FinSpace, target: FinSpace | None = None) -> "LinMap":
        target = space if target is None else target
        return cls(space, fzeros((target.dim, space.dim)), target)

    @classmethod
    def from_images(cls, space: FinSpace, images: Sequence, target: FinSpace | None = None) -> "LinMap":
        """Build from the list of image coordinate vectors, one per basis vector."""
        target = space if target is None else target
        cols = [list(img.coords) if isinstance(img, Tensor) else list(img) for img in images]
        return cls(space, np.array(cols, dtype=object).T, target)

    @property
    def is_endo(self) -> bool:
        return self.source.dim == self.target.dim

    def __call__(self, v: "Tensor") -> "Tensor":
        if v.rank != 1:
            raise ValueError("LinMap applies to vectors; use apply_map_tensor for tensors")
        self.source.check_compatible(v.space, "vector")
        return Tensor(self.target, xeinsum("ij,j->i", self.matrix, v.coords))

    def __matmul__(self, other: "LinMap") -> "LinMap":
        self.source.check_compatible(other.target, "composite")
        return LinMap(other.source, xeinsum("ij,jk->ik", self.matrix, other.matrix), self.target)

    def __add__(self, other: "LinMap") -> "LinMap":
        return LinMap(self.source, self.matrix + other.matrix, self.target)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return LinMap(self.source, self.matrix - other.matrix, self.target)

    def __neg__(self) -> "LinMap":
        return LinMap(self.source, -self.matrix, self.target)

    def power(self, k: int) -> "LinMap":
        if k < 0:
            raise ValueError("negative power")
        result = LinMap.identity(self.source)
        base = self
        while k:
            if k & 1:
                result = base @ result
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "LinMap":
        return LinMap(self.target, self.matrix.T.copy(), self.source)

    def is_identity(self) -> bool:
        return self.is_endo and _arrays_equal(self.matrix, fidentity(self.source.dim))

    def is_invertible(self) -> bool:
        return self.is_endo and rank(self.matrix) == self.source.dim

    def inverse(self) -> "LinMap":
        inv = _inverse(self.matrix)
        return LinMap(self.target, inv, self.source)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return _arrays_equal(self.matrix, other.matrix)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        rows = [[format_rational(x) for x in row] for row in self.matrix]
        return f"LinMap({rows})"


class Tensor:
    """An element of ``V``, ``V⊗V`` or ``V⊗V⊗V`` in basis coordinates."""

    __slots__ = ("space", "coords")

    def __init__(self, space: FinSpace, coords):
        c = to_fraction_array(coords)
        if c.ndim < 1 or any(s != space.dim for s in c.shape):
            raise DimensionMismatchError("tensor", (space.dim,) * max(c.ndim, 1), c.shape)
        self.space = space
        self.coords = c

    @classmethod
    def zero(cls, space: FinSpace, rank: int) -> "Tensor":
        return cls(space, fzeros((space.dim,) * rank))

    @classmethod
    def basis(cls, space: FinSpace, *indices: int) -> "Tensor":
        t = fzeros((space.dim,) * len(indices))
        t[tuple(indices)] = Fraction(1)
        return cls(space, t)

    @classmethod
    def from_terms(cls, space: FinSpace, terms: Iterable[tuple], rank: int) -> "Tensor":
        """``terms`` is an iterable of ``(coefficient, label_or_index, ...)``."""
        t = fzeros((space.dim,) * rank)
        for coeff, *idx in terms:
            if len(idx) != rank:
                raise ValueError("term rank mismatch")
            key = tuple(space.index(i) if isinstance(i, str) else i for i in idx)
            t[key] += parse_rational(coeff)
        return cls(space, t)

    @property
    def rank(self) -> int:
        return self.coords.ndim

    @property
    def flat(self) -> list[Fraction]:
        return list(self.coords.ravel())

    def is_zero(self) -> bool:
        return _is_zero_array(self.coords)

    def _check(self, other: "Tensor") -> None:
        self.space.check_compatible(other.space, "tensor")
        if other.rank != self.rank:
            raise DimensionMismatchError("tensor rank", self.rank, other.rank)

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        return Tensor(self.space, self.coords + other.coords)

    def __sub__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        return Tensor(self.space, self.coords - other.coords)

    def __neg__(self) -> "Tensor":
        return Tensor(self.space, -self.coords)

    def __mul__(self, scalar) -> "Tensor":
        return Tensor(self.space, self.coords * parse_rational(scalar))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.space.dim == other.space.dim and _arrays_equal(self.coords, other.coords)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        from .io import format_tensor

        return f"Tensor({format_tensor(self)})"


def apply_map_tensor(maps: Sequence[LinMap], t: Tensor) -> Tensor:
    """Apply ``f⊗g`` (rank 2) or ``f⊗g⊗h`` (rank 3) to ``t``."""
    if len(maps) != t.rank:
        raise DimensionMismatchError("maps", t.rank, len(maps))
    for name, f in zip("fgh", maps):
        if f.source.dim != t.space.dim:
            raise DimensionMismatchError(name, t.space.dim, f.source.dim)
    target = maps[0].target
    if t.rank == 1:
        return Tensor(target, xeinsum("ai,i->a", maps[0].matrix, t.coords))
    if t.rank == 2:
        return Tensor(target, xeinsum("ai,bj,ij->ab", maps[0].matrix, maps[1].matrix, t.coords))
    if t.rank == 3:
        return Tensor(
            target,
            xeinsum("ai,bj,ck,ijk->abc", maps[0].matrix, maps[1].matrix, maps[2].matrix, t.coords),
        )
    raise ValueError("only ranks 1 to 3 are supported")


def permute2(t: Tensor) -> Tensor:
    """The flip ``v⊗w -> w⊗v``."""
    if t.rank != 2:
        raise DimensionMismatchError("tensor rank", 2, t.rank)
    return Tensor(t.space, t.coords.T.copy())


# np.transpose axes; sigma(a⊗b⊗c) = c⊗a⊗b means out[i0, i1, i2] = t[i1, i2, i0]
_PERM3 = {
    "sigma": (2, 0, 1),
    "sigma2": (1, 2, 0),
    "pi": (2, 1, 0),
    "id": (0, 1, 2),
}


def permute3(t: Tensor, perm: str) -> Tensor:
    """Permute the factors of a 3-tensor.

    ``perm`` is ``"sigma"`` (a⊗b⊗c -> c⊗a⊗b), ``"sigma2"`` (a⊗b⊗c -> b⊗c⊗a)
    or ``"pi"`` (a⊗b⊗c -> c⊗b⊗a).
    """
    if t.rank != 3:
        raise DimensionMismatchError("tensor rank", 3, t.rank)
    try:
        axes = _PERM3[perm]
    except KeyError:
        raise ValueError(f"unknown permutation {perm!r}") from None
    return Tensor(t.space, np.transpose(t.coords, axes).copy())


def contract_mu(mu: np.ndarray, x: Tensor, y: Tensor) -> Tensor:
    """Evaluate the bilinear map with structure constants ``mu[i, j, k]`` on ``x, y``."""
    n = mu.shape[0]
    for name, v in (("x", x), ("y", y)):
        if v.rank != 1 or v.space.dim != n:
            raise DimensionMismatchError(name, n, v.coords.shape)
    return Tensor(x.space, xeinsum("i,j,ijk->k", x.coords, y.coords, mu))


def _rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    out = np.empty((rows, cols), dtype=object)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = a[i][j]
    return out, pivots


def rank(m: np.ndarray) -> int:
    return len(_rref(np.asarray(m, dtype=object))[1])


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """A basis of ``{v : m v = 0}`` as Fraction vectors."""
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    red, pivots = _rref(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = fzeros(cols)
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -red[row, f]
        basis.append(v)
    return basis


def _inverse(m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    aug = np.concatenate([np.asarray(m, dtype=object), fidentity(n)], axis=1)
    red, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return red[:, n:].copy()
