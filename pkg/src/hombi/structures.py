"""Hom-structures given by structure constants, and their axiom checkers.

Structure constants:

* ``mu[i, j, k]``: coefficient of ``e_k`` in ``μ(e_i, e_j)`` (also used for a Lie bracket)
* ``delta[k, i, j]``: coefficient of ``e_i⊗e_j`` in ``Δ(e_k)`` (also used for a cobracket)

Every axiom is checked on basis tuples; multilinearity extends it to the whole
space. A failing check carries the lexicographically smallest failing tuple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import DimensionMismatchError, UnsupportedCheckError
from .linalg import (
    FinSpace,
    LinMap,
    Tensor,
    exact_sum,
    format_rational,
    fzeros,
    integerize,
    to_fraction_array,
    xeinsum,
)

KINDS = (
    "hom_algebra",
    "hom_coalgebra",
    "eps_hom_bialgebra",
    "hom_lie_algebra",
    "hom_lie_coalgebra",
    "hom_lie_bialgebra",
)


# ---------------------------------------------------------------- reports


@dataclass(frozen=True)
class Witness:
    inputs: tuple[int, ...]
    output: tuple[int, ...]
    lhs: object
    rhs: object

    def describe(self, labels: Sequence[str] | None = None) -> str:
        def lab(i):
            return labels[i] if labels is not None else str(i)

        ins = ", ".join(lab(i) for i in self.inputs)
        out = "⊗".join(lab(i) for i in self.output)
        where = f" at {out}" if out else ""
        return f"({ins}){where}: {format_rational(self.lhs)} ≠ {format_rational(self.rhs)}"


@dataclass(frozen=True)
class AxiomResult:
    name: str
    verdict: str  # "pass", "fail" or "skipped"
    witness: Witness | None = None
    note: str = ""
    required: bool = True

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


@dataclass
class Report:
    labels: tuple[str, ...] = ()
    results: list[AxiomResult] = field(default_factory=list)

    def add(self, result: AxiomResult) -> None:
        if (result.verdict == "fail") != (result.witness is not None):
            raise ValueError("a witness accompanies exactly the failing verdicts")
        self.results.append(result)

    def extend(self, other: "Report") -> "Report":
        for res in other.results:
            self.results.append(res)
        return self

    @property
    def ok(self) -> bool:
        return all(r.verdict != "fail" for r in self.results if r.required)

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results if r.verdict == "fail"]

    def get(self, name: str) -> AxiomResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def __iter__(self) -> Iterator[AxiomResult]:
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def lines(self) -> list[str]:
        out = []
        for r in self.results:
            tag = r.verdict if r.required or r.verdict == "skipped" else f"{r.verdict} (info)"
            line = f"{r.name}: {tag}"
            if r.witness is not None:
                line += "  witness " + r.witness.describe(self.labels or None)
            if r.note:
                line += f"  [{r.note}]"
            out.append(line)
        return out

    def to_json(self) -> dict:
        items = []
        for r in self.results:
            item = {"axiom": r.name, "verdict": r.verdict, "required": r.required}
            if r.note:
                item["note"] = r.note
            if r.witness is not None:
                w = r.witness
                item["witness"] = {
                    "inputs": [self.labels[i] if self.labels else i for i in w.inputs],
                    "output": [self.labels[i] if self.labels else i for i in w.output],
                    "lhs": format_rational(w.lhs),
                    "rhs": format_rational(w.rhs),
                }
            items.append(item)
        return {"ok": self.ok, "results": items}


def compare(name: str, lhs: np.ndarray, rhs, n_inputs: int, required: bool = True) -> AxiomResult:
    """Compare two coordinate arrays whose first ``n_inputs`` axes index basis inputs."""
    lhs = np.asarray(lhs, dtype=object)
    if isinstance(rhs, (int,)) and rhs == 0:
        rhs = fzeros(lhs.shape)
    rhs = np.asarray(rhs, dtype=object)
    if lhs.shape != rhs.shape:
        raise DimensionMismatchError(name, lhs.shape, rhs.shape)
    if lhs.size:
        li, ld, _ = integerize(lhs)
        ri, rd, _ = integerize(rhs)
        bad = np.argwhere(li * rd != ri * ld)
        if len(bad):
            idx = tuple(int(i) for i in bad[0])
            return AxiomResult(
                name,
                "fail",
                Witness(tuple(idx[:n_inputs]), tuple(idx[n_inputs:]), lhs[idx], rhs[idx]),
                required=required,
            )
    return AxiomResult(name, "pass", required=required)


def skipped(name: str, note: str) -> AxiomResult:
    return AxiomResult(name, "skipped", note=note)


# ---------------------------------------------------------------- structures


def _constants(data, n: int, what: str) -> np.ndarray:
    arr = to_fraction_array(data)
    if arr.shape != (n, n, n):
        raise DimensionMismatchError(what, (n, n, n), arr.shape)
    return arr


class Structure:
    """Common carrier: a labelled space, a twisting map and optional (co)products.

    Subclasses fix which of ``mu``/``delta`` are present. Only shapes are
    validated here; the axioms are separate checks so deliberately broken data
    can be built.
    """

    kind = ""
    has_mu = False
    has_delta = False

    def __init__(
        self,
        space: FinSpace,
        alpha: LinMap | None = None,
        mu=None,
        delta=None,
        r: Tensor | None = None,
        name: str = "",
        provenance: Sequence[str] = (),
        quasi_triangular: bool = False,
    ):
        n = space.dim
        self.space = space
        alpha = LinMap.identity(space) if alpha is None else alpha
        if alpha.source.dim != n or alpha.target.dim != n:
            raise DimensionMismatchError("alpha", (n, n), alpha.matrix.shape)
        self.alpha = LinMap(space, alpha.matrix)
        if self.has_mu:
            self.mu = fzeros((n, n, n)) if mu is None else _constants(mu, n, "mu")
        elif mu is not None:
            raise ValueError(f"{self.kind} has no multiplication")
        if self.has_delta:
            self.delta = fzeros((n, n, n)) if delta is None else _constants(delta, n, "delta")
        elif delta is not None:
            raise ValueError(f"{self.kind} has no comultiplication")
        if r is not None:
            if r.rank != 2 or r.space.dim != n:
                raise DimensionMismatchError("r", (n, n), r.coords.shape)
            r = Tensor(space, r.coords)
        self.r = r
        self.name = name
        self.provenance = tuple(provenance)
        self.quasi_triangular = bool(quasi_triangular)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def A(self) -> np.ndarray:
        return self.alpha.matrix

    def replace(self, **changes) -> "Structure":
        cls = changes.pop("cls", type(self))
        kw = dict(
            space=self.space,
            alpha=self.alpha,
            r=self.r,
            name=self.name,
            provenance=self.provenance,
            quasi_triangular=self.quasi_triangular,
        )
        if cls.has_mu:
            kw["mu"] = getattr(self, "mu", None)
        if cls.has_delta:
            kw["delta"] = getattr(self, "delta", None)
        kw.update(changes)
        return cls(**kw)

    def same_data(self, other: "Structure") -> bool:
        """Equality of kind, basis, and all structure constants (name/provenance ignored)."""
        if type(self) is not type(other) or self.space.labels != other.space.labels:
            return False
        if self.alpha != other.alpha:
            return False
        if self.has_mu and not _eq(self.mu, other.mu):
            return False
        if self.has_delta and not _eq(self.delta, other.delta):
            return False
        if (self.r is None) != (other.r is None):
            return False
        return self.r is None or self.r == other.r

    def __eq__(self, other) -> bool:
        if not isinstance(other, Structure):
            return NotImplemented
        return self.same_data(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, basis={list(self.space.labels)})"


def _eq(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and all(x == y for x, y in zip(a.ravel(), b.ravel()))


class HomAlgebra(Structure):
    kind = "hom_algebra"
    has_mu = True


class HomCoalgebra(Structure):
    kind = "hom_coalgebra"
    has_delta = True


class EpsHomBialgebra(Structure):
    kind = "eps_hom_bialgebra"
    has_mu = True
    has_delta = True

    @property
    def algebra(self) -> HomAlgebra:
        return HomAlgebra(self.space, self.alpha, mu=self.mu, r=self.r, name=self.name)

    @property
    def coalgebra(self) -> HomCoalgebra:
        return HomCoalgebra(self.space, self.alpha, delta=self.delta, name=self.name)


class HomLieAlgebra(Structure):
    kind = "hom_lie_algebra"
    has_mu = True

    @property
    def bracket(self) -> np.ndarray:
        return self.mu


class HomLieCoalgebra(Structure):
    kind = "hom_lie_coalgebra"
    has_delta = True

    @property
    def cobracket(self) -> np.ndarray:
        return self.delta


class HomLieBialgebra(Structure):
    kind = "hom_lie_bialgebra"
    has_mu = True
    has_delta = True

    @property
    def bracket(self) -> np.ndarray:
        return self.mu

    @property
    def cobracket(self) -> np.ndarray:
        return self.delta

    @property
    def lie_algebra(self) -> HomLieAlgebra:
        return HomLieAlgebra(self.space, self.alpha, mu=self.mu, name=self.name)

    @property
    def lie_coalgebra(self) -> HomLieCoalgebra:
        return HomLieCoalgebra(self.space, self.alpha, delta=self.delta, name=self.name)


KIND_CLASSES = {
    cls.kind: cls
    for cls in (HomAlgebra, HomCoalgebra, EpsHomBialgebra, HomLieAlgebra, HomLieCoalgebra, HomLieBialgebra)
}


@dataclass
class StructureMorphism:
    source: Structure
    target: Structure
    map: LinMap

    def __post_init__(self):
        if type(self.source) is not type(self.target):
            raise TypeError("morphism source and target must be of the same kind")
        if self.map.matrix.shape != (self.target.dim, self.source.dim):
            raise DimensionMismatchError("morphism", (self.target.dim, self.source.dim), self.map.matrix.shape)


# ---------------------------------------------------------------- evaluation helpers
# All of these return coordinate arrays indexed by basis inputs first.


def multiply(mu: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return xeinsum("i,j,ijk->k", x, y, mu)


def mu_after_alpha_mu(mu, A):
    """(i,j,k,m) -> coefficient of e_m in μ(α e_i, μ(e_j, e_k))."""
    return xeinsum("pi,jkq,pqm->ijkm", A, mu, mu)


def mu_after_mu_alpha(mu, A):
    """(i,j,k,m) -> coefficient of e_m in μ(μ(e_i, e_j), α e_k)."""
    return xeinsum("ijq,pk,qpm->ijkm", mu, A, mu)


def alpha_after_mu(mu, A):
    return xeinsum("ijk,mk->ijm", mu, A)


def mu_after_alpha2(mu, A):
    return xeinsum("pi,qj,pqm->ijm", A, A, mu)


def alpha_delta_after_delta(delta, A):
    """(k,a,b,c) -> coordinates of (α⊗Δ)Δ(e_k)."""
    return xeinsum("kij,ai,jbc->kabc", delta, A, delta)


def delta_alpha_after_delta(delta, A):
    """(k,a,b,c) -> coordinates of (Δ⊗α)Δ(e_k)."""
    return xeinsum("kij,iab,cj->kabc", delta, delta, A)


def alpha2_after_delta(delta, A):
    return xeinsum("kij,ai,bj->kab", delta, A, A)


def delta_after_alpha(delta, A):
    return xeinsum("pk,pab->kab", A, delta)


def delta_after_mu(mu, delta):
    """(i,j,a,b) -> coordinates of Δ(μ(e_i, e_j))."""
    return xeinsum("ijk,kab->ijab", mu, delta)


def cocycle_rhs(mu, delta, A):
    """(i,j,a,b) -> coordinates of α(a)b₁⊗α(b₂) + α(a₁)⊗a₂α(b) for a=e_i, b=e_j."""
    t1 = xeinsum("pi,jqs,pqa,bs->ijab", A, delta, mu, A)
    t2 = xeinsum("ipq,sj,ap,qsb->ijab", delta, A, A, mu)
    return exact_sum(t1, t2)


def _cyclic_sum(t: np.ndarray) -> np.ndarray:
    """t[x,a,b,c] + t[x,b,c,a] + t[x,c,a,b] over the last three axes."""
    return t + np.einsum("xbca->xabc", t) + np.einsum("xcab->xabc", t)


def jacobi_tensor(bracket, A):
    """(i,j,k,m) -> coefficient of e_m in [[x,y],αz] + [[z,x],αy] + [[y,z],αx]."""
    j = mu_after_mu_alpha(bracket, A)  # [[e_i,e_j], α e_k]
    return j + np.einsum("kijm->ijkm", j) + np.einsum("jkim->ijkm", j)


def cojacobi_tensor(cobracket, A):
    """(k,a,b,c) -> coordinates of (Id + σ + σ²)(α⊗δ)δ(e_k)."""
    return _cyclic_sum(alpha_delta_after_delta(cobracket, A))


def ad_on_tensor2(bracket, A, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """ad_x(t) = [x,t₁]⊗αt₂ + αt₁⊗[x,t₂] for a vector ``x`` and 2-tensor ``t``."""
    return xeinsum("p,qs,pqa,bs->ab", x, t, bracket, A) + xeinsum("p,qs,aq,psb->ab", x, t, A, bracket)


def ad_alpha_basis(bracket, A, cobracket):
    """(i,j,a,b) -> coordinates of ad_{α e_i}(δ(e_j))."""
    t1 = xeinsum("pi,jqs,pqa,bs->ijab", A, cobracket, bracket, A)
    t2 = xeinsum("pi,jqs,aq,psb->ijab", A, cobracket, A, bracket)
    return t1 + t2


def ad_of_r(bracket, A, r: np.ndarray):
    """(i,a,b) -> coordinates of ad_{e_i}(r)."""
    t1 = xeinsum("pq,ipa,bq->iab", r, bracket, A)
    t2 = xeinsum("pq,ap,iqb->iab", r, A, bracket)
    return t1 + t2


# ---------------------------------------------------------------- checks


def check_hom_algebra(A: Structure) -> Report:
    rep = Report(A.space.labels)
    rep.add(compare("multiplicativity", alpha_after_mu(A.mu, A.A), mu_after_alpha2(A.mu, A.A), 2))
    rep.add(compare("hom-associativity", mu_after_alpha_mu(A.mu, A.A), mu_after_mu_alpha(A.mu, A.A), 3))
    return rep


def check_hom_coalgebra(C: Structure) -> Report:
    rep = Report(C.space.labels)
    rep.add(compare("comultiplicativity", delta_after_alpha(C.delta, C.A), alpha2_after_delta(C.delta, C.A), 1))
    rep.add(
        compare(
            "hom-coassociativity",
            alpha_delta_after_delta(C.delta, C.A),
            delta_alpha_after_delta(C.delta, C.A),
            1,
        )
    )
    return rep


def check_cocycle(B: EpsHomBialgebra) -> Report:
    rep = Report(B.space.labels)
    rep.add(compare("cocycle", delta_after_mu(B.mu, B.delta), cocycle_rhs(B.mu, B.delta, B.A), 2))
    return rep


def check_eps_hom_bialgebra(B: EpsHomBialgebra) -> Report:
    rep = check_hom_algebra(B)
    rep.extend(check_hom_coalgebra(B))
    rep.extend(check_cocycle(B))
    return rep


def check_hom_lie(L: Structure) -> Report:
    b, A = L.mu, L.A
    rep = Report(L.space.labels)
    rep.add(compare("antisymmetry", b, -np.einsum("jik->ijk", b), 2))
    rep.add(compare("multiplicativity", alpha_after_mu(b, A), mu_after_alpha2(b, A), 2))
    rep.add(compare("hom-jacobi", jacobi_tensor(b, A), 0, 3))
    return rep


def check_hom_lie_coalgebra(L: Structure) -> Report:
    d, A = L.delta, L.A
    rep = Report(L.space.labels)
    rep.add(compare("co-antisymmetry", d, -np.einsum("kji->kij", d), 1))
    rep.add(compare("comultiplicativity", delta_after_alpha(d, A), alpha2_after_delta(d, A), 1))
    rep.add(compare("hom-co-jacobi", cojacobi_tensor(d, A), 0, 1))
    return rep


def check_compatibility(L: HomLieBialgebra) -> Report:
    b, d, A = L.mu, L.delta, L.A
    ad = ad_alpha_basis(b, A, d)
    rep = Report(L.space.labels)
    rep.add(compare("compatibility", delta_after_mu(b, d), ad - np.einsum("jiab->ijab", ad), 2))
    return rep


def check_cobracket_is_ad_r(L: HomLieBialgebra) -> AxiomResult:
    if L.r is None:
        return skipped("cobracket = ad(r)", "no r")
    return compare("cobracket = ad(r)", L.delta, ad_of_r(L.mu, L.A, L.r.coords), 1)


def check_hom_lie_bialgebra(L: HomLieBialgebra) -> Report:
    rep = check_hom_lie(L)
    rep.extend(check_hom_lie_coalgebra(L))
    rep.extend(check_compatibility(L))
    if L.r is not None:
        rep.add(check_cobracket_is_ad_r(L))
    return rep


def verify_structure(S: Structure) -> Report:
    """Run every axiom check for the declared kind of ``S``."""
    if isinstance(S, EpsHomBialgebra):
        return check_eps_hom_bialgebra(S)
    if isinstance(S, HomAlgebra):
        return check_hom_algebra(S)
    if isinstance(S, HomCoalgebra):
        return check_hom_coalgebra(S)
    if isinstance(S, HomLieBialgebra):
        return check_hom_lie_bialgebra(S)
    if isinstance(S, HomLieAlgebra):
        return check_hom_lie(S)
    if isinstance(S, HomLieCoalgebra):
        return check_hom_lie_coalgebra(S)
    raise TypeError(f"not a structure: {S!r}")


def generated_span_rank(mu: np.ndarray, generators: Iterable[int]) -> int:
    """Dimension of the subalgebra generated by the given basis vectors."""
    from .linalg import rank

    n = mu.shape[0]
    vecs = []
    for g in generators:
        v = fzeros(n)
        v[g] = 1
        vecs.append(v)
    current = rank(np.array(vecs, dtype=object)) if vecs else 0
    while vecs:
        new = list(vecs)
        for x in vecs:
            for y in vecs:
                new.append(multiply(mu, x, y))
        basis = _row_basis(new)
        if len(basis) == current:
            break
        vecs, current = basis, len(basis)
    return current


def _row_basis(vectors: list[np.ndarray]) -> list[np.ndarray]:
    from .linalg import _rref

    red, pivots = _rref(np.array(vectors, dtype=object))
    return [red[i].copy() for i in range(len(pivots))]


def check_morphism(m: StructureMorphism, generators: Sequence[int] | None = None) -> Report:
    """Check that ``m.map`` commutes with α, μ and Δ (whichever the kind has).

    With ``generators`` (only for structures with α = Id on both sides) the
    Δ-condition is checked on the generators alone, which suffices when they
    generate the algebra.
    """
    S, T, F = m.source, m.target, m.map.matrix
    rep = Report(S.space.labels)
    if generators is not None:
        if not (S.has_mu and S.has_delta) or not isinstance(S, EpsHomBialgebra):
            raise UnsupportedCheckError("generator-based morphism checks need ε-bialgebras")
        if not (S.alpha.is_identity() and T.alpha.is_identity()):
            raise UnsupportedCheckError("generator-based morphism checks are only defined when α = Id")
        gens = sorted(set(int(g) for g in generators))
        if any(g < 0 or g >= S.dim for g in gens):
            raise ValueError(f"generator index out of range: {gens}")

    rep.add(compare("commutes with alpha", xeinsum("mk,ki->mi", F, S.A), xeinsum("mk,ki->mi", T.A, F), 1))
    if S.has_mu:
        lhs = xeinsum("ijk,mk->ijm", S.mu, F)
        rhs = xeinsum("pi,qj,pqm->ijm", F, F, T.mu)
        rep.add(compare("commutes with mu", lhs, rhs, 2))
    if S.has_delta:
        lhs = xeinsum("pk,pab->kab", F, T.delta)
        rhs = xeinsum("kij,ai,bj->kab", S.delta, F, F)
        if generators is None:
            rep.add(compare("commutes with delta", lhs, rhs, 1))
        else:
            res = compare("commutes with delta (generators)", lhs[gens], rhs[gens], 1)
            if res.witness is not None:
                w = res.witness
                res = AxiomResult(res.name, "fail", Witness((gens[w.inputs[0]],), w.output, w.lhs, w.rhs))
            rep.add(res)
            span = generated_span_rank(S.mu, gens)
            if span == S.dim:
                rep.add(AxiomResult("generators generate", "pass"))
            else:
                rep.add(
                    AxiomResult(
                        "generators generate",
                        "fail",
                        Witness(tuple(gens), (), span, S.dim),
                        note="generated subalgebra dimension vs. dimension",
                    )
                )
    return rep


# ---------------------------------------------------------------- small predicates


def is_symmetric2(t: np.ndarray) -> bool:
    return _eq(t, t.T)


def is_antisymmetric2(t: np.ndarray) -> bool:
    return _eq(t, -t.T)


def is_alpha_invariant(A: np.ndarray, t: np.ndarray) -> bool:
    return _eq(xeinsum("ai,bj,ij->ab", A, A, t), t)
