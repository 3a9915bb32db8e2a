import random
from fractions import Fraction
from itertools import product

import pytest

import oracle
from hombi import fixtures as F
from hombi.errors import ConstructionError
from hombi.linalg import Tensor
from hombi.rmatrix import (
    ContractionPattern,
    RTensor,
    assoc_yb_tensor,
    assoc_yb_tensor_prime,
    balanceator,
    balanceator_coords,
    bullet_bracket,
    classical_yb_coords,
    commutator_constants,
    contract_pair,
    is_A_invariant,
    is_balanceator_symmetric,
    lambda_rho_maps,
    perturbation_condition,
    quasi_triangular_equivalences,
    star_bracket,
    statement_results,
)
from hombi.structures import HomLieAlgebra

ALGEBRAS = {
    "F4": F.f4_algebra(),
    "F4 a=1 c=1/2": F.f4_algebra(1, Fraction(1, 2)),
    "F4 a=2 c=-3": F.f4_algebra(2, -3),
    "F5": F.f5(),
    "F6": F.f6_algebra(),
    "F2": F.f2(),
}


def as_dict(t: Tensor) -> dict:
    return oracle.from_array(t.coords)


def samples(S, count=6, seed=0):
    rng = random.Random(seed)
    return [F.random_r(rng, S.space) for _ in range(count)]


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_brackets_and_contractions_match_oracle(name):
    S = ALGEBRAS[name]
    alg = oracle.Alg(S)
    rs = samples(S)
    for r, s in zip(rs, rs[1:]):
        rd, sd = as_dict(r), as_dict(s)
        assert as_dict(contract_pair(S, r, s, ContractionPattern.P13Q12)) == alg.r13s12(rd, sd)
        assert as_dict(contract_pair(S, r, s, ContractionPattern.P12Q23)) == alg.r12s23(rd, sd)
        assert as_dict(contract_pair(S, r, s, ContractionPattern.P23Q13)) == alg.r23s13(rd, sd)
        assert as_dict(assoc_yb_tensor(S, r)) == alg.A_of(rd)
        assert as_dict(assoc_yb_tensor_prime(S, r)) == alg.A_prime(rd)
        for a in range(S.dim):
            e = Tensor.basis(S.space, a)
            assert as_dict(star_bracket(S, e, r)) == alg.star(oracle.basis(a), rd)
            assert as_dict(bullet_bracket(S, e, r)) == alg.bullet(oracle.basis(a), rd)
            t3 = alg.A_of(rd)
            assert as_dict(bullet_bracket(S, e, assoc_yb_tensor(S, r))) == alg.bullet(oracle.basis(a), t3)


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_classical_yb_matches_oracle(name):
    S = ALGEBRAS[name]
    L = HomLieAlgebra(S.space, S.alpha, mu=commutator_constants(S.mu))
    alg = oracle.Alg(L)
    for r in samples(S, 4, seed=1):
        assert oracle.from_array(classical_yb_coords(L.mu, L.A, r.coords)) == alg.C_of(as_dict(r), alg.mul)


@pytest.mark.parametrize("name", ["F1", "F2", "F3", "F4-coboundary", "F5", "F6"])
def test_balanceator_matches_oracle(name):
    B = F.all_fixtures()[name]
    alg = oracle.Alg(B)
    c = balanceator_coords(B)
    for i, j in product(range(B.dim), repeat=2):
        assert oracle.from_array(c[i, j]) == alg.balanceator(oracle.basis(i), oracle.basis(j))


def test_published_balanceator_facts():
    # F5: symmetric but not zero; F4 coboundary: zero
    f5 = F.f5()
    ok, _ = is_balanceator_symmetric(f5)
    assert ok and any(v != 0 for v in balanceator_coords(f5).ravel())
    assert all(v == 0 for v in balanceator_coords(F.f4_coboundary(Fraction(1, 2))).ravel())
    x, y = Tensor.basis(f5.space, 1), Tensor.basis(f5.space, 2)
    assert balanceator(f5, x, y) == balanceator(f5, y, x)


def test_f6_is_quasi_triangular_with_stated_comultiplication():
    # Δ(b) = b⊗a − 1⊗ab with a = x, r = 1⊗x
    B = F.f6()
    alg = oracle.Alg(B)
    for b in range(2):
        want = oracle.add(oracle.tensor(oracle.basis(b), oracle.basis(1)),
                          oracle.tensor(oracle.basis(0), alg.mul(oracle.basis(1), oracle.basis(b))), signs=[1, -1])
        assert alg.delta(oracle.basis(b)) == want
    assert assoc_yb_tensor(B, B.r).is_zero()
    assert B.quasi_triangular


def test_f4_coboundary_stated_values():
    for c in (0, 1, Fraction(1, 2), -3):
        B = F.f4_coboundary(c)
        alg = oracle.Alg(B)
        x, y = oracle.basis(0), oracle.basis(1)
        assert alg.delta(x) == {(0, 0): 1}
        assert alg.delta(y) == oracle.clean({(0, 0): Fraction(c), (1, 0): Fraction(1)})
        assert assoc_yb_tensor(B, B.r).is_zero()


def test_a_invariance_agrees_with_oracle():
    rng = random.Random(3)
    for S in (F.f4_algebra(1, 1), F.f6_algebra()):
        alg = oracle.Alg(S)
        for _ in range(15):
            r = F.random_alpha_invariant_r(rng, S.alpha)
            t = alg.A_of(as_dict(r))
            ok, idx = is_A_invariant(S, assoc_yb_tensor(S, r))
            bad = [a for a in range(S.dim) if alg.bullet(oracle.basis(a), t)]
            assert ok == (not bad)
            assert idx == (bad[0] if bad else None)


def test_perturbation_condition_matches_oracle():
    rng = random.Random(4)
    for B in (F.f5(), F.f4_coboundary(1)):
        alg = oracle.Alg(B)
        for _ in range(8):
            r = F.random_alpha_invariant_r(rng, B.alpha)
            ok, idx = perturbation_condition(B, r)
            bad = [a for a in range(B.dim)
                   if (lambda s: s[0] != s[1])(alg.perturbation_sides(oracle.basis(a), as_dict(r)))]
            assert ok == (not bad)
            assert idx == (bad[0] if bad else None)


def test_rtensor_flags():
    S = F.f4_algebra(1, 1)
    anti = RTensor.of(S, F.f4_r())
    assert anti.is_antisymmetric and not anti.is_symmetric and anti.is_alpha_invariant
    sym = RTensor.of(S, Tensor.from_terms(S.space, [(1, "x", "y"), (1, "y", "x")], 2))
    assert sym.is_symmetric and not sym.is_alpha_invariant


def test_lambda_rho_definitions():
    # λ1(φ) = <φ, α(u)> v, λ2(φ) = <φ, u> α(v), ρ1(φ) = u <φ, α(v)>, ρ2(φ) = α(u) <φ, v>
    B = F.f4_coboundary(Fraction(1, 2))
    l1, l2, r1, r2 = lambda_rho_maps(B)
    alg = oracle.Alg(B)
    rd = as_dict(B.r)
    for s in range(B.dim):
        def pair(vec):  # <e_s*, vec>
            return vec.get((s,), Fraction(0))
        want = {"l1": {}, "l2": {}, "r1": {}, "r2": {}}
        for c, (u, v) in alg.terms(rd):
            want["l1"] = oracle.add(want["l1"], oracle.scale(c * pair(alg.alpha(u)), v))
            want["l2"] = oracle.add(want["l2"], oracle.scale(c * pair(u), alg.alpha(v)))
            want["r1"] = oracle.add(want["r1"], oracle.scale(c * pair(alg.alpha(v)), u))
            want["r2"] = oracle.add(want["r2"], oracle.scale(c * pair(v), alg.alpha(u)))
        for key, m in zip(("l1", "l2", "r1", "r2"), (l1, l2, r1, r2)):
            assert oracle.from_array(m.matrix[:, s]) == want[key]
    with pytest.raises(ConstructionError):
        lambda_rho_maps(F.f5())


def test_equivalences_need_coboundary_input():
    with pytest.raises(ConstructionError):
        quasi_triangular_equivalences(F.f5())
    rep = quasi_triangular_equivalences(F.f6())
    assert rep.ok and len(rep) == 7


def test_statements_all_false_on_a_coboundary_structure():
    # on F6, r = x⊗1 + x⊗x gives an A-invariant but non-zero A(r)
    S = F.f6_algebra()
    r = Tensor.from_terms(S.space, [(1, "x", "1"), (1, "x", "x")], 2)
    assert not assoc_yb_tensor(S, r).is_zero()
    from hombi.constructions import coboundary_from_r

    B = coboundary_from_r(S, r)
    assert not B.quasi_triangular
    verdicts = [res.passed for res in statement_results(B.mu, B.A, B.delta, B.r.coords)]
    assert verdicts == [False] * 7
