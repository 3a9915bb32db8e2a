"""Two-tensor machinery: star and bullet brackets, the contraction patterns,
A(r), A(r)', C(r), the Yang-Baxter predicates, the balanceator and λ/ρ maps.

Functions taking an algebra only use its ``mu`` constants and twisting matrix,
so they apply equally to Hom-associative and Hom-Lie structures.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ConstructionError, DimensionMismatchError
from .linalg import FinSpace, LinMap, Tensor, fzeros, xeinsum
from .structures import (
    AxiomResult,
    Report,
    Structure,
    _eq,
    ad_alpha_basis,
    alpha_delta_after_delta,
    compare,
    delta_alpha_after_delta,
    delta_after_mu,
    is_alpha_invariant,
    is_antisymmetric2,
    is_symmetric2,
)


class ContractionPattern(enum.Enum):
    P13Q12 = "p13q12"
    P12Q23 = "p12q23"
    P23Q13 = "p23q13"


@dataclass(frozen=True)
class RTensor:
    """A 2-tensor together with its symmetry flags under a given twisting map."""

    value: Tensor
    is_symmetric: bool
    is_antisymmetric: bool
    is_alpha_invariant: bool

    @classmethod
    def of(cls, S: Structure, r) -> "RTensor":
        t = _tensor(S, r, 2, "r")
        c = t.coords
        return cls(t, is_symmetric2(c), is_antisymmetric2(c), is_alpha_invariant(S.A, c))


def _coords(S: Structure, v, rank: int, what: str) -> np.ndarray:
    if isinstance(v, RTensor):
        v = v.value
    c = v.coords if isinstance(v, Tensor) else np.asarray(v, dtype=object)
    if c.shape != (S.dim,) * rank:
        raise DimensionMismatchError(what, (S.dim,) * rank, c.shape)
    return c


def _tensor(S: Structure, v, rank: int, what: str) -> Tensor:
    if isinstance(v, RTensor):
        return v.value
    if isinstance(v, Tensor):
        _coords(S, v, rank, what)
        return v
    return Tensor(S.space, _coords(S, v, rank, what))


def _basis_vector(n: int, i: int) -> np.ndarray:
    v = fzeros(n)
    v[i] = 1
    return v


# ---------------------------------------------------------------- star bracket


def star_delta(mu: np.ndarray, A: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Constants D[k,p,q] of Δ = [-, r]_*, Δ(a) = Σ a u_i ⊗ α(v_i) − α(u_i) ⊗ v_i a."""
    return xeinsum("ij,kip,qj->kpq", r, mu, A) - xeinsum("ij,pi,jkq->kpq", r, A, mu)


def star_bracket(S: Structure, a, r) -> Tensor:
    x = _coords(S, a, 1, "a")
    rc = _coords(S, r, 2, "r")
    return Tensor(S.space, xeinsum("k,kpq->pq", x, star_delta(S.mu, S.A, rc)))


# ---------------------------------------------------------------- bullet bracket


def bullet_table(mu: np.ndarray, A: np.ndarray, t: np.ndarray) -> np.ndarray:
    """(x, ...) -> coordinates of [e_x, t]_• = e_x • t − t • e_x (t of rank 2 or 3)."""
    if t.ndim == 2:
        left = xeinsum("yx,yip,ij,qj->xpq", A, mu, t, A)
        right = xeinsum("ij,pi,jyq,yx->xpq", t, A, mu, A)
    elif t.ndim == 3:
        left = xeinsum("yx,yip,ijk,qj,sk->xpqs", A, mu, t, A, A)
        right = xeinsum("ijk,pi,qj,kys,yx->xpqs", t, A, A, mu, A)
    else:
        raise ValueError("bullet bracket is defined here for ranks 2 and 3")
    return left - right


def bullet_bracket(S: Structure, a, t) -> Tensor:
    """[a, t]_• = a•t − t•a with a•(b₁⊗…⊗bₙ) = α(a)b₁⊗α(b₂)⊗… and t•a = …⊗α(bₙ₋₁)⊗bₙα(a)."""
    x = _coords(S, a, 1, "a")
    tc = t.coords if isinstance(t, Tensor) else np.asarray(t, dtype=object)
    if tc.ndim not in (2, 3) or any(s != S.dim for s in tc.shape):
        raise DimensionMismatchError("t", (S.dim,) * max(tc.ndim, 2), tc.shape)
    table = bullet_table(S.mu, S.A, tc)
    return Tensor(S.space, np.tensordot(x, table, axes=1))


def is_A_invariant(S: Structure, t) -> tuple[bool, int | None]:
    """True iff [e_i, t]_• = 0 for every basis vector; otherwise the first failing index."""
    tc = t.coords if isinstance(t, Tensor) else np.asarray(t, dtype=object)
    table = bullet_table(S.mu, S.A, tc)
    for i in range(S.dim):
        if any(v != 0 for v in table[i].ravel()):
            return False, i
    return True, None


# ---------------------------------------------------------------- contractions


def contract_pair_coords(mu, A, p, q, pat: ContractionPattern) -> np.ndarray:
    if pat is ContractionPattern.P13Q12:
        # Σ μ(p_u, q_u) ⊗ α(q_v) ⊗ α(p_v)
        return xeinsum("ij,kl,ika,bl,cj->abc", p, q, mu, A, A)
    if pat is ContractionPattern.P12Q23:
        # Σ α(p_u) ⊗ μ(p_v, q_u) ⊗ α(q_v)
        return xeinsum("ij,kl,ai,jkb,cl->abc", p, q, A, mu, A)
    if pat is ContractionPattern.P23Q13:
        # Σ α(q_u) ⊗ α(p_u) ⊗ μ(p_v, q_v)
        return xeinsum("ij,kl,ak,bi,jlc->abc", p, q, A, A, mu)
    raise ValueError(f"unknown pattern {pat!r}")


def contract_pair(S: Structure, p, q, pat: ContractionPattern) -> Tensor:
    pc = _coords(S, p, 2, "p")
    qc = _coords(S, q, 2, "q")
    return Tensor(S.space, contract_pair_coords(S.mu, S.A, pc, qc, ContractionPattern(pat)))


def assoc_yb_coords(mu, A, r) -> np.ndarray:
    P = ContractionPattern
    return (
        contract_pair_coords(mu, A, r, r, P.P13Q12)
        - contract_pair_coords(mu, A, r, r, P.P12Q23)
        + contract_pair_coords(mu, A, r, r, P.P23Q13)
    )


def assoc_yb_prime_coords(mu, A, r) -> np.ndarray:
    """r₁₂r₁₃ − r₂₃r₁₂ + r₁₃r₂₃ (see the A(r)' formula)."""
    t1 = xeinsum("pq,st,spa,bt,cq->abc", r, r, mu, A, A)
    t2 = xeinsum("pq,st,ap,sqb,ct->abc", r, r, A, mu, A)
    t3 = xeinsum("pq,st,ap,bs,qtc->abc", r, r, A, A, mu)
    return t1 - t2 + t3


def assoc_yb_tensor(S: Structure, r) -> Tensor:
    """A(r) = r₁₃r₁₂ − r₁₂r₂₃ + r₂₃r₁₃."""
    return Tensor(S.space, assoc_yb_coords(S.mu, S.A, _coords(S, r, 2, "r")))


def assoc_yb_tensor_prime(S: Structure, r) -> Tensor:
    return Tensor(S.space, assoc_yb_prime_coords(S.mu, S.A, _coords(S, r, 2, "r")))


def classical_yb_coords(bracket, A, r) -> np.ndarray:
    c12_13 = xeinsum("pq,st,psa,bq,ct->abc", r, r, bracket, A, A)
    c12_23 = xeinsum("pq,st,ap,qsb,ct->abc", r, r, A, bracket, A)
    c13_23 = xeinsum("pq,st,ap,bs,qtc->abc", r, r, A, A, bracket)
    return c12_13 + c12_23 + c13_23


def classical_yb_tensor(L: Structure, r) -> Tensor:
    """C(r) = [r₁₂,r₁₃] + [r₁₂,r₂₃] + [r₁₃,r₂₃] in a Hom-Lie algebra."""
    return Tensor(L.space, classical_yb_coords(L.mu, L.A, _coords(L, r, 2, "r")))


def check_ahybe(S: Structure, r) -> bool:
    return assoc_yb_tensor(S, r).is_zero()


def check_chybe(L: Structure, r) -> bool:
    return classical_yb_tensor(L, r).is_zero()


# ---------------------------------------------------------------- balanceator


def balanceator_coords(B: Structure) -> np.ndarray:
    """(i,j,a,b) -> coordinates of B(e_i, e_j) = [e_i, Δ^op(e_j)]_• + τ([e_j, Δ^op(e_i)]_•)."""
    mu, A = B.mu, B.A
    dop = np.einsum("kij->kji", B.delta)
    t = xeinsum("yi,ypa,jpq,bq->ijab", A, mu, dop, A) - xeinsum("jpq,ap,qyb,yi->ijab", dop, A, mu, A)
    return t + np.einsum("jiba->ijab", t)


def balanceator_table(B: Structure) -> list[list[Tensor]]:
    c = balanceator_coords(B)
    return [[Tensor(B.space, c[i, j]) for j in range(B.dim)] for i in range(B.dim)]


def balanceator(B: Structure, x, y) -> Tensor:
    xc = _coords(B, x, 1, "x")
    yc = _coords(B, y, 1, "y")
    return Tensor(B.space, xeinsum("i,j,ijab->ab", xc, yc, balanceator_coords(B)))


def is_balanceator_symmetric(B: Structure) -> tuple[bool, tuple[int, int] | None]:
    c = balanceator_coords(B)
    n = B.dim
    for i in range(n):
        for j in range(n):
            if not _eq(c[i, j], c[j, i]):
                return False, (i, j)
    return True, None


def commutator_constants(mu: np.ndarray) -> np.ndarray:
    return mu - np.einsum("jik->ijk", mu)


def cocommutator_constants(delta: np.ndarray) -> np.ndarray:
    return delta - np.einsum("kji->kij", delta)


def homliebi_defect_coords(B: Structure) -> np.ndarray:
    """(i,j,a,b) -> δ([x,y]) − ad_{αx}δ(y) + ad_{αy}δ(x) for x=e_i, y=e_j."""
    b = commutator_constants(B.mu)
    d = cocommutator_constants(B.delta)
    ad = ad_alpha_basis(b, B.A, d)
    return delta_after_mu(b, d) - ad + np.einsum("jiab->ijab", ad)


def homliebi_defect(B: Structure, x, y) -> Tensor:
    xc = _coords(B, x, 1, "x")
    yc = _coords(B, y, 1, "y")
    return Tensor(B.space, xeinsum("i,j,ijab->ab", xc, yc, homliebi_defect_coords(B)))


# ---------------------------------------------------------------- coboundary-side identities


def coboundchar_identity(S: Structure, r) -> AxiomResult:
    """(α⊗Δ)∘Δ − (Δ⊗α)∘Δ = −[−, A(r)]_• for Δ = [−, r]_*, on all basis vectors."""
    rc = _coords(S, r, 2, "r")
    D = star_delta(S.mu, S.A, rc)
    lhs = alpha_delta_after_delta(D, S.A) - delta_alpha_after_delta(D, S.A)
    rhs = -bullet_table(S.mu, S.A, assoc_yb_coords(S.mu, S.A, rc))
    return compare("coboundary coassociator = -[-, A(r)]", lhs, rhs, 1)


def alpha_delta_of_r(mu, A, delta, r) -> np.ndarray:
    """(α⊗Δ)(r)."""
    return xeinsum("pq,ap,qbc->abc", r, A, delta)


def delta_alpha_of_r(mu, A, delta, r) -> np.ndarray:
    """(Δ⊗α)(r)."""
    return xeinsum("pq,pab,cq->abc", r, delta, A)


def lambda_rho_maps(B: Structure) -> tuple[LinMap, LinMap, LinMap, LinMap]:
    """Matrices of λ₁, λ₂, ρ₁, ρ₂ : A* -> A (column s is the image of the dual basis vector e_s*)."""
    if B.r is None:
        raise ConstructionError("λ/ρ maps need a 2-tensor r")
    r, A = B.r.coords, B.A
    dual = FinSpace(tuple(lab + "*" for lab in B.space.labels))
    l1 = xeinsum("sp,pq->qs", A, r)  # <φ, α(u)> v
    l2 = xeinsum("mq,sq->ms", A, r)  # <φ, u> α(v)
    r1 = xeinsum("pq,sq->ps", r, A)  # u <φ, α(v)>
    r2 = xeinsum("mp,ps->ms", A, r)  # α(u) <φ, v>
    return tuple(LinMap(dual, m, B.space) for m in (l1, l2, r1, r2))  # type: ignore[return-value]


STATEMENT_NAMES = (
    "(1) A(r) = 0",
    "(2) (alpha⊗Delta)(r) = r13 r12",
    "(3) (Delta⊗alpha)(r) = -r23 r13",
    "(4) lambda2 Delta* = -mu^op lambda1⊗lambda1",
    "(5) rho2 Delta* = mu^op rho1⊗rho1",
    "(6) Delta lambda1 = lambda2⊗lambda2 mu*op",
    "(7) -Delta rho1 = rho2⊗rho2 mu*op",
)


def statement_results(mu, A, delta, r) -> list[AxiomResult]:
    """The seven statements, each as a coordinate comparison (no coboundary check)."""
    P = ContractionPattern
    res = [compare(STATEMENT_NAMES[0], assoc_yb_coords(mu, A, r), 0, 0)]
    res.append(
        compare(STATEMENT_NAMES[1], alpha_delta_of_r(mu, A, delta, r), contract_pair_coords(mu, A, r, r, P.P13Q12), 0)
    )
    res.append(
        compare(STATEMENT_NAMES[2], delta_alpha_of_r(mu, A, delta, r), -contract_pair_coords(mu, A, r, r, P.P23Q13), 0)
    )
    l1 = xeinsum("sp,pq->qs", A, r)
    l2 = xeinsum("mq,sq->ms", A, r)
    r1 = xeinsum("pq,sq->ps", r, A)
    r2 = xeinsum("mp,ps->ms", A, r)
    # (4),(5): maps A*⊗A* -> A, indexed (a, b, m) on e_a*⊗e_b*
    res.append(
        compare(
            STATEMENT_NAMES[3],
            xeinsum("mk,kab->abm", l2, delta),
            -xeinsum("sb,ta,stm->abm", l1, l1, mu),
            2,
        )
    )
    res.append(
        compare(
            STATEMENT_NAMES[4],
            xeinsum("mk,kab->abm", r2, delta),
            xeinsum("sb,ta,stm->abm", r1, r1, mu),
            2,
        )
    )
    # (6),(7): maps A* -> A⊗A, indexed (k, p, q) on e_k*
    res.append(
        compare(
            STATEMENT_NAMES[5],
            xeinsum("mk,mpq->kpq", l1, delta),
            xeinsum("ijk,pj,qi->kpq", mu, l2, l2),
            1,
        )
    )
    res.append(
        compare(
            STATEMENT_NAMES[6],
            -xeinsum("mk,mpq->kpq", r1, delta),
            xeinsum("ijk,pj,qi->kpq", mu, r2, r2),
            1,
        )
    )
    return res


def is_coboundary(B: Structure) -> tuple[bool, str]:
    if B.r is None:
        return False, "no r"
    r = B.r.coords
    if not is_alpha_invariant(B.A, r):
        return False, "r is not alpha-invariant"
    if not _eq(B.delta, star_delta(B.mu, B.A, r)):
        return False, "Delta differs from [-, r]_*"
    return True, ""


def quasi_triangular_equivalences(B: Structure) -> Report:
    ok, why = is_coboundary(B)
    if not ok:
        raise ConstructionError(f"not a coboundary structure: {why}")
    rep = Report(B.space.labels)
    for res in statement_results(B.mu, B.A, B.delta, B.r.coords):
        rep.add(res)
    return rep


def statement2_standalone(S: Structure, r) -> bool:
    """Statement (2) with Δ = [−, r]_* built from r."""
    rc = _coords(S, r, 2, "r")
    D = star_delta(S.mu, S.A, rc)
    return statement_results(S.mu, S.A, D, rc)[1].passed


def statement3_standalone(S: Structure, r) -> bool:
    rc = _coords(S, r, 2, "r")
    D = star_delta(S.mu, S.A, rc)
    return statement_results(S.mu, S.A, D, rc)[2].passed


# ---------------------------------------------------------------- perturbation condition


def perturbation_condition(B: Structure, r) -> tuple[bool, int | None]:
    """Check [a, (α⊗Δ)(r) − (Δ⊗α)(r) − A(r)]_• = r₂₃Δ(a)₁₃ + Δ(a)₁₃r₁₂ for each basis a.

    Returns the verdict and the first failing basis index.
    """
    mu, A, d = B.mu, B.A, B.delta
    rc = _coords(B, r, 2, "r")
    inner = alpha_delta_of_r(mu, A, d, rc) - delta_alpha_of_r(mu, A, d, rc) - assoc_yb_coords(mu, A, rc)
    lhs = bullet_table(mu, A, inner)
    P = ContractionPattern
    for k in range(B.dim):
        da = d[k]
        rhs = contract_pair_coords(mu, A, rc, da, P.P23Q13) + contract_pair_coords(mu, A, da, rc, P.P13Q12)
        if not _eq(lhs[k], rhs):
            return False, k
    return True, None
