"""Squarefree factor extraction, factor tables, and exact reassembly."""

import math
import os

import pytest

from mandelpoly import (
    FactorTable,
    FamilyIndex,
    IntPoly,
    InvalidIndex,
    clear_caches,
    eta,
    factorize,
    gleason,
    hyp_count,
    mis_count,
    misiurewicz_factor,
    mt_poly,
    orbit_poly,
    simple_part,
    strict_divisors,
    verify,
)

from oracles import divmod_oracle, mul_oracle


def P(*coeffs: int) -> IntPoly:
    return IntPoly(tuple(coeffs))


def _gcd_degree_mod_p(a: list[int], b: list[int], p: int) -> int:
    """Test-local Euclid over GF(p), degree of the gcd."""
    a = [c % p for c in a]
    b = [c % p for c in b]

    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, cb in enumerate(b):
                a[shift + j] = (a[shift + j] - c * cb) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


# -- the period factors ------------------------------------------------------------


def test_gleason_small_values():
    assert gleason(1) == P(0, 1)
    assert gleason(2) == P(1, 1)
    assert gleason(3) == P(1, 1, 2, 1)
    assert gleason(4) == P(1, 0, 2, 3, 3, 3, 1)


def test_gleason_4_matches_long_division_oracle():
    lower = mul_oracle([0, 1], [1, 1])  # h_1 * h_2
    quo, rem = divmod_oracle(list(orbit_poly(4).coeffs), lower)
    assert rem == []
    assert list(gleason(4).coeffs) == quo


def test_gleason_properties():
    for n in range(1, 13):
        h = gleason(n)
        assert h.degree == hyp_count(n)
        assert h.is_monic
        assert h.is_squarefree()


def test_orbit_poly_is_product_of_gleasons():
    for n in range(1, 13):
        prod = P(1)
        for k in range(1, n + 1):
            if n % k == 0:
                prod = prod * gleason(k)
        assert prod == orbit_poly(n)


def test_gleasons_pairwise_coprime():
    p = 2_147_483_647
    for a in range(1, 13):
        for b in range(a + 1, 13):
            deg = _gcd_degree_mod_p(list(gleason(a).coeffs), list(gleason(b).coeffs), p)
            assert deg == 0


def test_gleason_rejects_bad_index():
    with pytest.raises(InvalidIndex):
        gleason(0)


# -- the pre-periodic factors ---------------------------------------------------------


def test_misiurewicz_factor_small_values():
    assert misiurewicz_factor(2, 1) == P(2, 1)
    assert misiurewicz_factor(2, 2) == P(1, 0, 1)
    assert misiurewicz_factor(2, 4).degree == 12


def test_misiurewicz_factor_2_4_from_simple_part():
    s = simple_part(FamilyIndex(2, 4))
    p4 = orbit_poly(4)
    assert s == p4 * p4 + IntPoly((0, 2))
    recombined = gleason(1) * misiurewicz_factor(2, 1) * misiurewicz_factor(2, 2)
    assert s.exact_div(recombined) == misiurewicz_factor(2, 4)


def test_misiurewicz_factor_properties():
    for ell in range(2, 11):
        for n in range(1, 13 - ell):
            m = misiurewicz_factor(ell, n)
            assert m.degree == mis_count(ell, n)
            assert m.is_monic
            assert m.is_squarefree()


def test_misiurewicz_factor_rejects_small_preperiod():
    for ell in (0, 1):
        with pytest.raises(InvalidIndex):
            misiurewicz_factor(ell, 3)


def test_simple_part_divisibility_by_period_factor():
    # h_k | s_{l,n} exactly when k divides gcd(n, l-1).
    for ell in range(2, 11):
        for n in range(1, 11 - ell + 1):
            s = simple_part(FamilyIndex(ell, n))
            for k in range(1, 7):
                divides = True
                try:
                    s.exact_div(gleason(k))
                except ArithmeticError:
                    divides = False
                assert divides == (math.gcd(n, ell - 1) % k == 0)


# -- tables -----------------------------------------------------------------------------


def test_factorize_theorem_one_case():
    table = factorize(FamilyIndex(0, 6))
    assert set(table.hyp_factors) == {1, 2, 3, 6}
    assert all(exp == 1 for _, exp in table.hyp_factors.values())
    assert table.mis_factors == {}


def test_factorize_squared_case():
    table = factorize(FamilyIndex(1, 6))
    assert all(exp == 2 for _, exp in table.hyp_factors.values())
    assert table.mis_factors == {}


def test_factorize_worked_example():
    table = factorize(FamilyIndex(2, 4))
    exps = {k: e for k, (_, e) in table.hyp_factors.items()}
    assert exps == {1: 3, 2: 2, 4: 2}
    degs = {jk: int(m.degree) for jk, m in table.mis_factors.items()}
    assert degs == {(2, 1): 1, (2, 2): 2, (2, 4): 12}


def test_factor_exponents_match_eta():
    for ell in range(0, 7):
        for n in range(1, 9 - ell):
            table = factorize(FamilyIndex(ell, n))
            for k, (_, exp) in table.hyp_factors.items():
                assert exp == eta(ell, k)
            assert set(table.mis_factors) == {
                (j, k)
                for j in range(2, ell + 1)
                for k in range(1, n + 1)
                if n % k == 0
            }


def test_verify_accepts_fresh_tables():
    for ell in range(0, 6):
        for n in range(1, 8 - ell):
            assert verify(factorize(FamilyIndex(ell, n))) is True


def test_verify_rejects_bumped_exponent():
    table = factorize(FamilyIndex(2, 4))
    bumped = dict(table.hyp_factors)
    h4, _ = bumped[4]
    bumped[4] = (h4, 3)
    bad = FactorTable(index=table.index, hyp_factors=bumped, mis_factors=table.mis_factors)
    assert verify(bad) is False


def test_verify_rejects_corrupted_factor():
    table = factorize(FamilyIndex(2, 4))
    tweaked = dict(table.mis_factors)
    tweaked[(2, 1)] = P(3, 1)  # z+3 instead of z+2
    bad = FactorTable(index=table.index, hyp_factors=table.hyp_factors, mis_factors=tweaked)
    assert verify(bad) is False


def test_reassembly_equals_direct_construction():
    idx = FamilyIndex(3, 3)
    table = factorize(idx)
    prod = P(1)
    for h, exp in table.hyp_factors.values():
        prod = prod * h**exp
    for m in table.mis_factors.values():
        prod = prod * m
    assert prod == mt_poly(idx)


# -- persistent cache ---------------------------------------------------------------------


def test_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv("MANDELPOLY_CACHE", str(tmp_path))
    clear_caches()
    try:
        first = gleason(6)
        assert (tmp_path / "h_6.poly").exists()
        clear_caches()
        again = gleason(6)  # loaded from disk this time
        assert again == first

        # A corrupted cache entry is ignored, not trusted.
        (tmp_path / "h_6.poly").write_text("poly v1 deg=0\n7\n")
        clear_caches()
        recomputed = gleason(6)
        assert recomputed == first
    finally:
        clear_caches()


def test_cache_disabled_without_env(tmp_path, monkeypatch):
    monkeypatch.delenv("MANDELPOLY_CACHE", raising=False)
    clear_caches()
    try:
        gleason(5)
        assert list(tmp_path.iterdir()) == []
    finally:
        clear_caches()
