"""Identity suites run by ``hombi report``.

Each suite is one ``AxiomResult`` named after the identity it exercises:

* ``aalphar``   A_α((α^{⊗2})ⁿ r) = (α^{⊗3})^{n+1} A(r), n = 0..3, for S = (S₀)_α
* ``anr``       Aⁿ(r) = (α^{⊗3})^{2ⁿ−1} A(r) in the derived structures, n = 0..3
* ``deltaB``    δ([x,y]) − ad_{αx}δ(y) + ad_{αy}δ(x) = B(x,y) − B(y,x)
* ``Btp``       B_α = (α²)^{⊗2}∘B₀ for S = (S₀)_α
* ``Btp2``      Bⁿ = (α^{2(2ⁿ−1)})^{⊗2}∘B, n = 1..3
* ``lem1:chybe``  C(r) = A(r)′ − A(r) in the commutator Hom-Lie algebra
* ``lem2:chybe``  A(r)′ = π(A(r)) for symmetric or anti-symmetric r
* ``cobahybe-equivalence``  the seven quasi-triangularity statements agree

Suites that need ``r`` (or Δ) are skipped when it is missing. ``aalphar`` and
``Btp`` recover S₀ by untwisting with α⁻¹; they are skipped when α is singular
or the untwisted data is not an (ε-)bialgebra with α a morphism.
"""

from __future__ import annotations

import numpy as np

from .constructions import derived
from .linalg import LinMap, fidentity, xeinsum
from .rmatrix import (
    assoc_yb_coords,
    assoc_yb_prime_coords,
    balanceator_coords,
    classical_yb_coords,
    commutator_constants,
    homliebi_defect_coords,
    is_coboundary,
    statement_results,
)
from .structures import (
    AxiomResult,
    EpsHomBialgebra,
    HomAlgebra,
    Report,
    Structure,
    StructureMorphism,
    Witness,
    check_eps_hom_bialgebra,
    check_hom_algebra,
    check_morphism,
    compare,
    is_antisymmetric2,
    is_symmetric2,
    skipped,
)

SUITE_NAMES = ("aalphar", "anr", "deltaB", "Btp", "Btp2", "lem1:chybe", "lem2:chybe", "cobahybe-equivalence")


def _power3(M: np.ndarray, t: np.ndarray) -> np.ndarray:
    return xeinsum("ai,bj,ck,ijk->abc", M, M, M, t)


def _power2_table(M: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Apply M⊗M to the values of an (i, j, a, b) table."""
    return xeinsum("ap,bq,ijpq->ijab", M, M, t)


def _tag(res: AxiomResult, name: str, note: str) -> AxiomResult:
    return AxiomResult(name, res.verdict, res.witness, note=note if res.verdict == "fail" else "")


def untwist(S: Structure) -> tuple[Structure | None, str]:
    """S₀ with μ₀ = α⁻¹∘μ (and Δ₀ = Δ∘α⁻¹), α = Id, such that S = (S₀)_α.

    Returns (None, reason) when α is singular, S₀ fails its axioms, or α is
    not a morphism of S₀.
    """
    if not S.alpha.is_invertible():
        return None, "alpha is not invertible"
    inv = S.alpha.inverse().matrix
    ident = LinMap.identity(S.space)
    mu0 = xeinsum("ijm,km->ijk", S.mu, inv)
    if isinstance(S, EpsHomBialgebra):
        S0 = EpsHomBialgebra(S.space, ident, mu=mu0, delta=xeinsum("pk,pab->kab", inv, S.delta))
        rep = check_eps_hom_bialgebra(S0)
    else:
        S0 = HomAlgebra(S.space, ident, mu=mu0)
        rep = check_hom_algebra(S0)
    if not rep.ok:
        return None, f"untwisted data fails {rep.failures()[0].name}"
    mrep = check_morphism(StructureMorphism(S0, S0, S.alpha))
    if not mrep.ok:
        return None, f"alpha is not a morphism of the untwisted data ({mrep.failures()[0].name})"
    return S0, ""


def aalphar_result(mu0: np.ndarray, A: np.ndarray, r: np.ndarray, ns=range(4)) -> AxiomResult:
    """A_α((α^{⊗2})ⁿ r) = (α^{⊗3})^{n+1} A₀(r) with A₀ = (μ₀, Id) and A_α = (α∘μ₀, α)."""
    mu = xeinsum("ijm,km->ijk", mu0, A)
    base = assoc_yb_coords(mu0, fidentity(A.shape[0]), r)
    M = fidentity(A.shape[0])  # α^n
    for n in range(max(ns) + 1):
        if n in ns:
            rn = xeinsum("ai,bj,ij->ab", M, M, r)
            res = compare("aalphar", assoc_yb_coords(mu, A, rn), _power3(xeinsum("ij,jk->ik", A, M), base), 0)
            if not res.passed:
                return _tag(res, "aalphar", f"n={n}")
        M = xeinsum("ij,jk->ik", A, M)
    return AxiomResult("aalphar", "pass")


def suite_aalphar(S: Structure) -> AxiomResult:
    if S.r is None:
        return skipped("aalphar", "no r")
    S0, why = untwist(S)
    if S0 is None:
        return skipped("aalphar", why)
    return aalphar_result(S0.mu, S.A, S.r.coords)


def suite_anr(S: Structure) -> AxiomResult:
    if S.r is None:
        return skipped("anr", "no r")
    r = S.r.coords
    base = assoc_yb_coords(S.mu, S.A, r)
    for n in range(4):
        Dn = derived(S, n)
        P = S.alpha.power(2**n - 1).matrix
        res = compare("anr", assoc_yb_coords(Dn.mu, Dn.A, r), _power3(P, base), 0)
        if not res.passed:
            return _tag(res, "anr", f"n={n}")
    return AxiomResult("anr", "pass")


def suite_deltaB(S: Structure) -> AxiomResult:
    if not isinstance(S, EpsHomBialgebra):
        return skipped("deltaB", "needs an eps-Hom-bialgebra")
    bal = balanceator_coords(S)
    return compare("deltaB", homliebi_defect_coords(S), bal - np.einsum("jiab->ijab", bal), 2)


def suite_Btp(S: Structure) -> AxiomResult:
    if not isinstance(S, EpsHomBialgebra):
        return skipped("Btp", "needs an eps-Hom-bialgebra")
    S0, why = untwist(S)
    if S0 is None:
        return skipped("Btp", why)
    A2 = S.alpha.power(2).matrix
    return compare("Btp", balanceator_coords(S), _power2_table(A2, balanceator_coords(S0)), 2)


def suite_Btp2(S: Structure) -> AxiomResult:
    if not isinstance(S, EpsHomBialgebra):
        return skipped("Btp2", "needs an eps-Hom-bialgebra")
    bal = balanceator_coords(S)
    for n in range(1, 4):
        P = S.alpha.power(2 * (2**n - 1)).matrix
        res = compare("Btp2", balanceator_coords(derived(S, n)), _power2_table(P, bal), 2)
        if not res.passed:
            return _tag(res, "Btp2", f"n={n}")
    return AxiomResult("Btp2", "pass")


def suite_lem1_chybe(S: Structure) -> AxiomResult:
    if S.r is None:
        return skipped("lem1:chybe", "no r")
    r = S.r.coords
    lhs = classical_yb_coords(commutator_constants(S.mu), S.A, r)
    rhs = assoc_yb_prime_coords(S.mu, S.A, r) - assoc_yb_coords(S.mu, S.A, r)
    return compare("lem1:chybe", lhs, rhs, 0)


def _lem2(S: Structure, r: np.ndarray) -> AxiomResult:
    pi = np.einsum("abc->cba", assoc_yb_coords(S.mu, S.A, r))
    return compare("lem2:chybe", assoc_yb_prime_coords(S.mu, S.A, r), pi, 0)


def suite_lem2_chybe(S: Structure) -> AxiomResult:
    """Uses r itself when it is (anti-)symmetric, else its two halves separately."""
    if S.r is None:
        return skipped("lem2:chybe", "no r")
    r = S.r.coords
    if is_symmetric2(r) or is_antisymmetric2(r):
        return _lem2(S, r)
    for part, label in (((r + r.T) / 2, "symmetric part"), ((r - r.T) / 2, "anti-symmetric part")):
        res = _lem2(S, part)
        if not res.passed:
            return _tag(res, "lem2:chybe", label)
    return AxiomResult("lem2:chybe", "pass", note="checked on the symmetric and anti-symmetric parts of r")


def suite_cobahybe(S: Structure) -> AxiomResult:
    name = "cobahybe-equivalence"
    if not isinstance(S, EpsHomBialgebra):
        return skipped(name, "needs an eps-Hom-bialgebra")
    ok, why = is_coboundary(S)
    if not ok:
        return skipped(name, f"not coboundary: {why}")
    verdicts = [res.verdict for res in statement_results(S.mu, S.A, S.delta, S.r.coords)]
    summary = "".join("T" if v == "pass" else "F" for v in verdicts)
    if len(set(verdicts)) == 1:
        return AxiomResult(name, "pass", note=f"all {'true' if verdicts[0] == 'pass' else 'false'}")
    first = verdicts[0]
    k = next(i for i, v in enumerate(verdicts) if v != first)
    return AxiomResult(name, "fail", Witness((), (), int(verdicts[k] == "pass"), int(first == "pass")),
                       note=f"statement {k + 1} disagrees with statement 1 ({summary})")


SUITES = {
    "aalphar": suite_aalphar,
    "anr": suite_anr,
    "deltaB": suite_deltaB,
    "Btp": suite_Btp,
    "Btp2": suite_Btp2,
    "lem1:chybe": suite_lem1_chybe,
    "lem2:chybe": suite_lem2_chybe,
    "cobahybe-equivalence": suite_cobahybe,
}


def run_suites(S: Structure, names=SUITE_NAMES) -> Report:
    """Run the named suites. Lie kinds have no associative product, so every suite is skipped."""
    rep = Report(S.space.labels)
    for name in names:
        if S.kind.startswith("hom_lie") or not S.has_mu:
            rep.add(skipped(name, f"not defined for {S.kind}"))
        else:
            rep.add(SUITES[name](S))
    return rep
