"""Constructions producing new structures from old ones.

Each constructor validates its hypotheses and refuses (``ConstructionError``)
rather than returning data that fails the axioms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, InternalConsistencyError
from .linalg import FinSpace, LinMap, Tensor, xeinsum
from .rmatrix import (
    RTensor,
    _coords,
    assoc_yb_coords,
    classical_yb_coords,
    cocommutator_constants,
    commutator_constants,
    is_A_invariant,
    is_balanceator_symmetric,
    perturbation_condition,
    star_delta,
)
from .structures import (
    EpsHomBialgebra,
    HomLieAlgebra,
    HomLieBialgebra,
    HomLieCoalgebra,
    Structure,
    StructureMorphism,
    _eq,
    ad_of_r,
    check_morphism,
    is_alpha_invariant,
    is_antisymmetric2,
)


@dataclass(frozen=True)
class PerturbationOutcome:
    result: EpsHomBialgebra | None
    condition_holds: bool
    witness: int | None = None

    def __post_init__(self):
        if (self.result is not None) != self.condition_holds:
            raise ValueError("a result is present exactly when the condition holds")


def _is_zero(a: np.ndarray) -> bool:
    return all(v == 0 for v in a.ravel())


def _with_r(S: Structure, r: np.ndarray | None) -> Structure:
    """Attach ``r`` when ``S`` is coboundary for it (α-invariant, Δ = [−, r]_*), else drop it."""
    if r is None or not isinstance(S, EpsHomBialgebra):
        return S.replace(r=None, quasi_triangular=False)
    if not is_alpha_invariant(S.A, r) or not _eq(S.delta, star_delta(S.mu, S.A, r)):
        return S.replace(r=None, quasi_triangular=False)
    qt = _is_zero(assoc_yb_coords(S.mu, S.A, r))
    return S.replace(r=Tensor(S.space, r), quasi_triangular=qt)


def _step(S: Structure, label: str) -> tuple[str, ...]:
    return S.provenance + (label,)


# ---------------------------------------------------------------- opposites and duals

OPPOSITE_VARIANTS = ("neg-mu", "neg-delta", "op")


def opposite(B: EpsHomBialgebra, variant: str) -> EpsHomBialgebra:
    """(A,−μ,Δ,α), (A,μ,−Δ,α) or (A,μ^op,Δ^op,α)."""
    r = B.r.coords if B.r is not None else None
    if variant == "neg-mu":
        out = B.replace(mu=-B.mu)
        r2 = None if r is None else -r
    elif variant == "neg-delta":
        out = B.replace(delta=-B.delta)
        r2 = None if r is None else -r
    elif variant == "op":
        out = B.replace(mu=np.einsum("jik->ijk", B.mu), delta=np.einsum("kji->kij", B.delta))
        r2 = None if r is None else -r.T.copy()
    else:
        raise ValueError(f"unknown opposite variant {variant!r}; expected one of {OPPOSITE_VARIANTS}")
    out = _with_r(out, r2)
    return out.replace(provenance=_step(B, f"opposite({variant})"))


def opposite_variants(B: EpsHomBialgebra) -> tuple[EpsHomBialgebra, EpsHomBialgebra, EpsHomBialgebra]:
    return tuple(opposite(B, v) for v in OPPOSITE_VARIANTS)  # type: ignore[return-value]


def _toggle_star(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def dualize(B: EpsHomBialgebra) -> EpsHomBialgebra:
    """(A*, Δ*, μ*, α*) in the dual basis."""
    labels = tuple(_toggle_star(lab) for lab in B.space.labels)
    if len(set(labels)) != len(labels):
        labels = tuple(lab + "*" for lab in B.space.labels)
    space = FinSpace(labels)
    return EpsHomBialgebra(
        space,
        LinMap(space, B.A.T.copy()),
        mu=np.einsum("kab->abk", B.delta),
        delta=np.einsum("ijk->kij", B.mu),
        name=B.name,
        provenance=_step(B, "dual"),
    )


# ---------------------------------------------------------------- twisting principles


def _as_linmap(S: Structure, f) -> LinMap:
    if isinstance(f, StructureMorphism):
        return f.map
    if isinstance(f, LinMap):
        return f
    return LinMap(S.space, f)


def twist_by_morphism(B: EpsHomBialgebra, f, r=None, label: str = "f") -> EpsHomBialgebra:
    """A_f = (A, f∘μ, Δ∘f, f) for an ε-bialgebra A and an ε-bialgebra endomorphism f.

    If ``r`` is given (or ``B`` carries one) and ``B`` is coboundary for it with
    f^{⊗2}(r) = r, the result is coboundary with the same r.
    """
    if not B.alpha.is_identity():
        raise ConstructionError("twisting needs an untwisted input (alpha = Id); use derived() instead")
    F = _as_linmap(B, f)
    rep = check_morphism(StructureMorphism(B, B, LinMap(B.space, F.matrix)))
    if not rep.ok:
        bad = rep.failures()[0]
        raise ConstructionError(f"not a morphism: {bad.name} fails", report=rep, witness=bad.witness)
    M = F.matrix
    rc = None
    if r is not None:
        rc = _coords(B, r, 2, "r")
        if not _eq(xeinsum("ai,bj,ij->ab", M, M, rc), rc):
            raise ConstructionError("f⊗f does not fix r")
    elif B.r is not None:
        rc = B.r.coords
        if not _eq(xeinsum("ai,bj,ij->ab", M, M, rc), rc):
            rc = None
    out = EpsHomBialgebra(
        B.space,
        LinMap(B.space, M),
        mu=xeinsum("ijk,mk->ijm", B.mu, M),
        delta=xeinsum("pk,pab->kab", M, B.delta),
        name=B.name,
        provenance=_step(B, f"twist({label})"),
    )
    if rc is not None and r is not None and not _eq(B.delta, star_delta(B.mu, B.A, rc)):
        raise ConstructionError("the input is not coboundary for the supplied r")
    return _with_r(out, rc)


def derived(B: Structure, n: int) -> Structure:
    """A^n = (A, α^{2^n−1}∘μ, Δ∘α^{2^n−1}, α^{2^n})."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return B
    P = B.alpha.power(2**n - 1).matrix
    changes: dict = {"alpha": B.alpha.power(2**n)}
    if B.has_mu:
        changes["mu"] = xeinsum("ijk,mk->ijm", B.mu, P)
    if B.has_delta:
        changes["delta"] = xeinsum("pk,pab->kab", P, B.delta)
    out = B.replace(provenance=_step(B, f"derive({n})"), **changes)
    if isinstance(out, EpsHomBialgebra):
        out = _with_r(out, B.r.coords if B.r is not None else None)
    return out


# ---------------------------------------------------------------- coboundary structures


def coboundary_from_r(A: Structure, r) -> EpsHomBialgebra:
    """(A, μ, [−, r]_*, α, r), provided r is α-invariant and A(r) is A-invariant."""
    rc = _coords(A, r, 2, "r")
    if not is_alpha_invariant(A.A, rc):
        raise ConstructionError("r is not alpha-invariant")
    ar = assoc_yb_coords(A.mu, A.A, rc)
    ok, idx = is_A_invariant(A, ar)
    if not ok:
        raise ConstructionError(f"A(r) is not A-invariant (fails at basis vector {A.space.labels[idx]})", witness=idx)
    return EpsHomBialgebra(
        A.space,
        A.alpha,
        mu=A.mu,
        delta=star_delta(A.mu, A.A, rc),
        r=Tensor(A.space, rc),
        name=A.name,
        provenance=_step(A, "coboundary-from-r"),
        quasi_triangular=_is_zero(ar),
    )


def perturb(B: EpsHomBialgebra, r) -> PerturbationOutcome:
    """Δ' = Δ + [−, r]_* when the perturbation condition holds on every basis vector."""
    rc = _coords(B, r, 2, "r")
    if not is_alpha_invariant(B.A, rc):
        raise ConstructionError("r is not alpha-invariant")
    ok, idx = perturbation_condition(B, rc)
    if not ok:
        return PerturbationOutcome(None, False, idx)
    if _is_zero(rc):
        return PerturbationOutcome(B, True)
    out = B.replace(delta=B.delta + star_delta(B.mu, B.A, rc), provenance=_step(B, "perturb"))
    if B.r is not None:
        new_r = B.r.coords + rc
    elif _is_zero(B.delta):
        new_r = rc
    else:
        new_r = None
    return PerturbationOutcome(_with_r(out, new_r), True)


# ---------------------------------------------------------------- Hom-Lie transitions


def commutator_hom_lie(A: Structure) -> HomLieAlgebra:
    """(A, μ∘(Id − τ), α)."""
    return HomLieAlgebra(A.space, A.alpha, mu=commutator_constants(A.mu), name=A.name, provenance=_step(A, "commutator"))


def cocommutator_hom_lie_coalgebra(C: Structure) -> HomLieCoalgebra:
    """(C, (Id − τ)∘Δ, α)."""
    return HomLieCoalgebra(
        C.space, C.alpha, delta=cocommutator_constants(C.delta), name=C.name, provenance=_step(C, "cocommutator")
    )


def to_hom_lie_bialgebra(B: EpsHomBialgebra) -> HomLieBialgebra:
    """Commutator bracket and cocommutator cobracket, when the balanceator is symmetric."""
    ok, pair = is_balanceator_symmetric(B)
    if not ok:
        i, j = pair
        labs = B.space.labels
        raise ConstructionError(f"balanceator is not symmetric: B({labs[i]},{labs[j]}) ≠ B({labs[j]},{labs[i]})", witness=pair)
    return HomLieBialgebra(
        B.space,
        B.alpha,
        mu=commutator_constants(B.mu),
        delta=cocommutator_constants(B.delta),
        name=B.name,
        provenance=_step(B, "hom-lie"),
    )


def coboundary_hom_lie_from_r(B: EpsHomBialgebra) -> HomLieBialgebra:
    """The coboundary Hom-Lie bialgebra of a coboundary structure with anti-symmetric r."""
    if B.r is None:
        raise ConstructionError("no r attached")
    rc = B.r.coords
    if not is_antisymmetric2(rc):
        raise ConstructionError("r is not anti-symmetric")
    if not is_alpha_invariant(B.A, rc) or not _eq(B.delta, star_delta(B.mu, B.A, rc)):
        raise ConstructionError("the input is not coboundary for its r")
    L = to_hom_lie_bialgebra(B)
    if not _eq(L.delta, ad_of_r(L.mu, L.A, rc)):
        raise InternalConsistencyError("cobracket differs from ad(r) for a coboundary input")
    qt = _is_zero(assoc_yb_coords(B.mu, B.A, rc))
    if qt and not _is_zero(classical_yb_coords(L.mu, L.A, rc)):
        raise InternalConsistencyError("r solves the AHYBE but not the CHYBE")
    return L.replace(r=Tensor(B.space, rc), quasi_triangular=qt)


def hom_lie_of(B: EpsHomBialgebra) -> HomLieBialgebra:
    """Coboundary version when an anti-symmetric r is attached, plain version otherwise."""
    if B.r is not None and is_antisymmetric2(B.r.coords):
        return coboundary_hom_lie_from_r(B)
    return to_hom_lie_bialgebra(B)


def r_tensor(S: Structure, r) -> RTensor:
    return RTensor.of(S, r)
