"""Worked examples used by the tests, the acceptance run and the CLI docs.

F1  dual numbers k[x]/(x²), Δ(1) = 0, Δ(x) = x⊗x
F2  Kronecker path ε-bialgebra (basis v0, v1, phi1, phi2)
F3  lower-triangular path ε-bialgebra (basis v1, v2, v3, phi1, phi2)
F4  the 2-dim algebra x² = 0 = xy, yx = x, y² = y
F5  k[x]/(x⁴) with Δ(xⁱ) = xⁱ⊗x² − 1⊗x^{i+2}
F6  k[x]/(x²) as a unital algebra with the square-zero element x, r = 1⊗x
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .constructions import coboundary_from_r, twist_by_morphism
from .linalg import FinSpace, LinMap, Tensor, fzeros, nullspace, parse_rational
from .structures import EpsHomBialgebra, HomAlgebra


def _constants(space: FinSpace, entries) -> np.ndarray:
    """Entries are (label, label, label, coefficient)."""
    n = space.dim
    arr = fzeros((n, n, n))
    for a, b, c, coeff in entries:
        arr[space.index(a), space.index(b), space.index(c)] += parse_rational(coeff)
    return arr


def _map(space: FinSpace, images: dict) -> LinMap:
    """``images`` maps a label to {label: coefficient}; unspecified vectors map to 0."""
    n = space.dim
    m = fzeros((n, n))
    for src, img in images.items():
        for tgt, coeff in img.items():
            m[space.index(tgt), space.index(src)] += parse_rational(coeff)
    return LinMap(space, m)


def _identity_except(space: FinSpace, images: dict) -> LinMap:
    full = {lab: {lab: 1} for lab in space.labels}
    full.update(images)
    return _map(space, full)


# ---------------------------------------------------------------- F1 and F6


def truncated_poly_mu(space: FinSpace) -> np.ndarray:
    """x^i · x^j = x^{i+j} (zero past the top degree); basis labelled 1, x, x2, x3, ..."""
    n = space.dim
    return _constants(space, [(space.labels[i], space.labels[j], space.labels[i + j], 1)
                              for i in range(n) for j in range(n) if i + j < n])


DUAL = FinSpace(("1", "x"))


def f1() -> EpsHomBialgebra:
    return EpsHomBialgebra(
        DUAL,
        mu=truncated_poly_mu(DUAL),
        delta=_constants(DUAL, [("x", "x", "x", 1)]),
        name="F1 dual numbers",
    )


def f1_projection() -> LinMap:
    """c + dx -> c."""
    return _map(DUAL, {"1": {"1": 1}})


def f6_algebra() -> HomAlgebra:
    return HomAlgebra(DUAL, mu=truncated_poly_mu(DUAL), name="F6 unital square-zero")


def f6_r() -> Tensor:
    return Tensor.from_terms(DUAL, [(1, "1", "x")], 2)


def f6() -> EpsHomBialgebra:
    """Coboundary from r = 1⊗x."""
    return coboundary_from_r(f6_algebra(), f6_r())


# ---------------------------------------------------------------- quiver examples


KRONECKER_TEXT = """\
# Kronecker quiver
vertex v0
vertex v1
arrow phi1 : v0 -> v1
arrow phi2 : v0 -> v1
"""

KRONECKER_MORPHISMS = {
    "alpha_t": "vmap v0 -> v0\nvmap v1 -> v1\namap phi1 -> phi1\namap phi2 -> phi1\n",
    "alpha_b": "vmap v0 -> v0\nvmap v1 -> v1\namap phi1 -> phi2\namap phi2 -> phi2\n",
    "alpha_p": "vmap v0 -> v0\nvmap v1 -> v1\namap phi1 -> phi2\namap phi2 -> phi1\n",
}

TRIANGULAR_TEXT = """\
# lower-triangular quiver
vertex v1
vertex v2
vertex v3
arrow phi1 : v2 -> v1
arrow phi2 : v3 -> v1
"""

TRIANGULAR_SWAP = "vmap v1 -> v1\nvmap v2 -> v3\nvmap v3 -> v2\namap phi1 -> phi2\namap phi2 -> phi1\n"

KRONECKER = FinSpace(("v0", "v1", "phi1", "phi2"))
TRIANGULAR = FinSpace(("v1", "v2", "v3", "phi1", "phi2"))


def f2() -> EpsHomBialgebra:
    """Written out by hand; the quiver module must reproduce it."""
    s = KRONECKER
    mu = _constants(
        s,
        [
            ("v0", "v0", "v0", 1),
            ("v1", "v1", "v1", 1),
            ("v0", "phi1", "phi1", 1),
            ("v0", "phi2", "phi2", 1),
            ("phi1", "v1", "phi1", 1),
            ("phi2", "v1", "phi2", 1),
        ],
    )
    delta = _constants(s, [("phi1", "v0", "v1", 1), ("phi2", "v0", "v1", 1)])
    return EpsHomBialgebra(s, mu=mu, delta=delta, name="F2 Kronecker")


def f2_morphism(which: str) -> LinMap:
    arrows = {
        "alpha_t": {"phi1": {"phi1": 1}, "phi2": {"phi1": 1}},
        "alpha_b": {"phi1": {"phi2": 1}, "phi2": {"phi2": 1}},
        "alpha_p": {"phi1": {"phi2": 1}, "phi2": {"phi1": 1}},
    }[which]
    return _identity_except(KRONECKER, arrows)


def f3() -> EpsHomBialgebra:
    s = TRIANGULAR
    mu = _constants(
        s,
        [
            ("v1", "v1", "v1", 1),
            ("v2", "v2", "v2", 1),
            ("v3", "v3", "v3", 1),
            ("phi1", "v1", "phi1", 1),
            ("phi2", "v1", "phi2", 1),
            ("v2", "phi1", "phi1", 1),
            ("v3", "phi2", "phi2", 1),
        ],
    )
    delta = _constants(s, [("phi1", "v2", "v1", 1), ("phi2", "v3", "v1", 1)])
    return EpsHomBialgebra(s, mu=mu, delta=delta, name="F3 lower-triangular")


def f3_swap() -> LinMap:
    return _identity_except(
        TRIANGULAR,
        {"v2": {"v3": 1}, "v3": {"v2": 1}, "phi1": {"phi2": 1}, "phi2": {"phi1": 1}},
    )


# ---------------------------------------------------------------- F4


XY = FinSpace(("x", "y"))


def f4_mu() -> np.ndarray:
    return _constants(XY, [("y", "x", "x", 1), ("y", "y", "y", 1)])


def f4_alpha(a=1, c=0) -> LinMap:
    """α(x) = a x, α(y) = c x + y: the non-zero algebra endomorphisms."""
    return _map(XY, {"x": {"x": a}, "y": {"x": c, "y": 1}})


def f4_r() -> Tensor:
    return Tensor.from_terms(XY, [(1, "y", "x"), (-1, "x", "y")], 2)


def f4() -> EpsHomBialgebra:
    """The untwisted algebra with Δ = 0."""
    return EpsHomBialgebra(XY, mu=f4_mu(), name="F4")


def f4_algebra(a=1, c=0) -> HomAlgebra:
    """A_α = (A, α∘μ, α)."""
    base = HomAlgebra(XY, mu=f4_mu(), name="F4")
    if parse_rational(a) == 1 and parse_rational(c) == 0:
        return base
    tw = twist_by_morphism(f4(), f4_alpha(a, c), label=f"alpha(a={a},c={c})")
    return HomAlgebra(XY, tw.alpha, mu=tw.mu, name=f"F4 twisted a={a} c={c}", provenance=tw.provenance)


def f4_untwisted_coboundary() -> EpsHomBialgebra:
    return coboundary_from_r(HomAlgebra(XY, mu=f4_mu(), name="F4"), f4_r())


def f4_coboundary(c=0) -> EpsHomBialgebra:
    """A_α with a = 1 and Δ = [−, r]_*, r = y⊗x − x⊗y."""
    return coboundary_from_r(f4_algebra(1, c), f4_r())


# ---------------------------------------------------------------- F5


QUARTIC = FinSpace(("1", "x", "x2", "x3"))


def f5() -> EpsHomBialgebra:
    s = QUARTIC
    delta = []
    for i in range(4):
        delta.append((s.labels[i], s.labels[i], "x2", 1))
        if i + 2 < 4:
            delta.append((s.labels[i], "1", s.labels[i + 2], -1))
    return EpsHomBialgebra(s, mu=truncated_poly_mu(s), delta=_constants(s, delta), name="F5 k[x]/(x^4)")


def f5_r() -> Tensor:
    return Tensor.from_terms(QUARTIC, [(1, "1", "x2")], 2)


def f5_morphism(sign=1, a3=0) -> LinMap:
    """Unit-preserving algebra map with x -> sign·x + a3·x³."""
    sign, a3 = parse_rational(sign), parse_rational(a3)
    # powers of p(x) = sign x + a3 x³ modulo x⁴
    return _map(
        QUARTIC,
        {
            "1": {"1": 1},
            "x": {"x": sign, "x3": a3},
            "x2": {"x2": sign * sign},
            "x3": {"x3": sign**3},
        },
    )


def f5_constant_morphism(a0=0) -> LinMap:
    """x -> a0 (so x^i -> a0^i)."""
    a0 = parse_rational(a0)
    return _map(QUARTIC, {lab: {"1": a0**i} for i, lab in enumerate(QUARTIC.labels)})


# ---------------------------------------------------------------- catalogue


def all_fixtures() -> dict:
    return {
        "F1": f1(),
        "F2": f2(),
        "F3": f3(),
        "F4": f4(),
        "F4-coboundary": f4_coboundary(Fraction(1, 2)),
        "F5": f5(),
        "F6": f6(),
    }


def admissible_morphisms() -> list[tuple[str, EpsHomBialgebra, str, LinMap]]:
    """(fixture name, untwisted structure, morphism name, morphism) pairs."""
    out = [
        ("F1", f1(), "projection", f1_projection()),
        ("F3", f3(), "swap", f3_swap()),
        ("F5", f5(), "x+x^3", f5_morphism(1, 1)),
        ("F5", f5(), "-x+2x^3", f5_morphism(-1, 2)),
        ("F5", f5(), "const 0", f5_constant_morphism(0)),
        ("F6", f6(), "identity", LinMap.identity(DUAL)),
    ]
    for name in ("alpha_t", "alpha_b", "alpha_p"):
        out.append(("F2", f2(), name, f2_morphism(name)))
    for a in (0, 1, 2, Fraction(1, 2)):
        for c in (0, 1, -3):
            out.append(("F4", f4(), f"a={a},c={c}", f4_alpha(a, c)))
    for c in (0, 1, -3):
        out.append(("F4-coboundary-untwisted", f4_untwisted_coboundary(), f"a=1,c={c}", f4_alpha(1, c)))
    return out


# ---------------------------------------------------------------- random 2-tensors


def _random_coeff(rng, bound: int = 3) -> Fraction:
    num = rng.randint(-bound, bound)
    return Fraction(num, rng.choice((1, 1, 1, 2, 3)))


def random_r(rng, space: FinSpace, symmetry: str | None = None, density: float = 0.6) -> Tensor:
    """A random 2-tensor with small rational entries; ``symmetry`` is None, "sym" or "anti"."""
    n = space.dim
    m = fzeros((n, n))
    for i in range(n):
        for j in range(n):
            if rng.random() < density:
                m[i, j] = _random_coeff(rng)
    if symmetry == "sym":
        m = m + m.T
    elif symmetry == "anti":
        m = m - m.T
    elif symmetry is not None:
        raise ValueError(f"unknown symmetry {symmetry!r}")
    return Tensor(space, m)


def alpha_invariant_basis(alpha: LinMap) -> list[np.ndarray]:
    """Basis (as n×n arrays) of the 2-tensors fixed by α⊗α."""
    n = alpha.source.dim
    A = alpha.matrix
    big = np.array([[A[a, i] * A[b, j] for i in range(n) for j in range(n)] for a in range(n) for b in range(n)],
                   dtype=object)
    for k in range(n * n):
        big[k, k] -= 1
    return [v.reshape(n, n) for v in nullspace(big)]


def random_alpha_invariant_r(rng, alpha: LinMap) -> Tensor:
    """A random combination of α-invariant basis tensors (0 if there are none)."""
    n = alpha.source.dim
    m = fzeros((n, n))
    for b in alpha_invariant_basis(alpha):
        c = _random_coeff(rng)
        if c:
            m = m + c * b
    return Tensor(alpha.source, m)
