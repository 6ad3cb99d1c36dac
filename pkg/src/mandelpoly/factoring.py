"""Extraction of the exact-period and exact-pre-period factors of q_{ell,n}.

``gleason(n)`` isolates the monic squarefree polynomial h_n whose roots are
the period-n parameters, by dividing p_n by the h_k of all strict divisors.
``misiurewicz_factor(ell, n)`` isolates m_{ell,n}, whose roots have exact
pre-period ell >= 2 and period n, by dividing the simple part
p_{ell+n-1} + p_{ell-1} by the h_k with k | gcd(n, ell-1) and the m_{ell,k}
of strict divisors k of n.  ``factorize`` assembles the complete factor table
of q_{ell,n} and ``verify`` reassembles it by exact multiplication.

Factors are memoized per process; set the MANDELPOLY_CACHE environment
variable to a directory to persist them as text files across runs.
"""

from __future__ import annotations

import heapq
import math
import os
import tempfile
from dataclasses import dataclass

from .counting import degree_budget, divisors, eta, hyp_count, mis_count, strict_divisors
from .families import DEFAULT_CAP, FamilyIndex, InvalidIndex, _check_cap, mt_poly, orbit_poly, simple_part
from .intpoly import ONE, IntPoly

CACHE_ENV = "MANDELPOLY_CACHE"

_gleason_memo: dict[int, IntPoly] = {}
_mis_memo: dict[tuple[int, int], IntPoly] = {}


@dataclass(frozen=True, eq=True)
class FactorTable:
    """Complete factorization of one q_{ell,n}.

    ``hyp_factors`` maps each divisor k of n to (h_k, exponent); every
    ``mis_factors`` entry (j, k) -> m_{j,k} has exponent 1.
    """

    index: FamilyIndex
    hyp_factors: dict[int, tuple[IntPoly, int]]
    mis_factors: dict[tuple[int, int], IntPoly]


def clear_caches() -> None:
    """Drop the in-process factor memos (mainly for tests)."""
    _gleason_memo.clear()
    _mis_memo.clear()


# -- persistent cache ------------------------------------------------------


def _cache_path(name: str) -> str | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return os.path.join(root, name)


def _cache_load(name: str, expect_degree: int) -> IntPoly | None:
    path = _cache_path(name)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path, "r", encoding="ascii") as fh:
            poly = IntPoly.from_text(fh.read())
    except (OSError, ValueError):
        return None
    if poly.degree != expect_degree or not poly.is_monic:
        return None
    return poly


def _cache_store(name: str, poly: IntPoly) -> None:
    path = _cache_path(name)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(poly.to_text())
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)


# -- balanced products -----------------------------------------------------


def _balanced_product(factors: list[IntPoly]) -> IntPoly:
    """Multiply smallest degrees first via a heap, keeping operands balanced."""
    if not factors:
        return ONE
    heap = [(len(p.coeffs), i, p) for i, p in enumerate(factors)]
    heapq.heapify(heap)
    seq = len(factors)
    while len(heap) > 1:
        _, _, a = heapq.heappop(heap)
        _, _, b = heapq.heappop(heap)
        prod = a * b
        heapq.heappush(heap, (len(prod.coeffs), seq, prod))
        seq += 1
    return heap[0][2]


# -- factor extraction -----------------------------------------------------


def gleason(n: int, cap: int = DEFAULT_CAP) -> IntPoly:
    """The monic squarefree factor of p_n carrying the exact-period-n roots."""
    if n < 1:
        raise InvalidIndex(f"need n >= 1, got {n}")
    _check_cap(n, cap)
    cached = _gleason_memo.get(n)
    if cached is not None:
        return cached
    expect = hyp_count(n)
    poly = _cache_load(f"h_{n}.poly", expect)
    if poly is None:
        lower = _balanced_product([gleason(k, cap) for k in strict_divisors(n)])
        poly = orbit_poly(n, cap).exact_div(lower)
        assert poly.degree == expect and poly.is_monic
        _cache_store(f"h_{n}.poly", poly)
    _gleason_memo[n] = poly
    return poly


def misiurewicz_factor(ell: int, n: int, cap: int = DEFAULT_CAP) -> IntPoly:
    """The monic squarefree factor with exact pre-period ell >= 2, period n."""
    if ell < 2:
        raise InvalidIndex(f"need ell >= 2, got {ell}")
    if n < 1:
        raise InvalidIndex(f"need n >= 1, got {n}")
    _check_cap(ell + n, cap)
    key = (ell, n)
    cached = _mis_memo.get(key)
    if cached is not None:
        return cached
    expect = mis_count(ell, n)
    poly = _cache_load(f"m_{ell}_{n}.poly", expect)
    if poly is None:
        parts = [gleason(k, cap) for k in divisors(math.gcd(n, ell - 1))]
        parts += [misiurewicz_factor(ell, k, cap) for k in strict_divisors(n)]
        s = simple_part(FamilyIndex(ell, n), cap)
        poly = s.exact_div(_balanced_product(parts))
        assert poly.degree == expect and poly.is_monic
        _cache_store(f"m_{ell}_{n}.poly", poly)
    _mis_memo[key] = poly
    return poly


# -- table assembly and verification ----------------------------------------


def factorize(idx: FamilyIndex, cap: int = DEFAULT_CAP) -> FactorTable:
    """Compute the full factor table of q_{ell,n}.

    The degree bookkeeping (exponents times factor degrees summing to
    2**(ell+n-1)) is established by ``degree_budget`` before any polynomial
    is touched, then re-checked against the actual factor degrees.
    """
    _check_cap(idx.order, cap)
    record = degree_budget(idx.ell, idx.n)
    eta_map = record.eta_map()
    hyp_factors: dict[int, tuple[IntPoly, int]] = {}
    mis_factors: dict[tuple[int, int], IntPoly] = {}
    for k in divisors(idx.n):
        h = gleason(k, cap)
        assert h.degree == hyp_count(k)
        hyp_factors[k] = (h, eta_map[k])
        for j in range(2, idx.ell + 1):
            m = misiurewicz_factor(j, k, cap)
            assert m.degree == mis_count(j, k)
            mis_factors[(j, k)] = m
    total = sum(h.degree * e for h, e in hyp_factors.values())
    total += sum(m.degree for m in mis_factors.values())
    assert total == record.degree_budget
    return FactorTable(index=idx, hyp_factors=hyp_factors, mis_factors=mis_factors)


def verify(table: FactorTable, cap: int = DEFAULT_CAP) -> bool:
    """True iff the table's factors multiply back to q_{ell,n} exactly.

    Also cross-checks the difference-of-squares split: for ell >= 1 the
    product q_{ell-1,n} * (p_{ell+n-1} + p_{ell-1}) must equal q_{ell,n}.
    """
    idx = table.index
    target = mt_poly(idx, cap)
    parts = [h ** e for h, e in table.hyp_factors.values()]
    parts += [m for m in table.mis_factors.values()]
    if _balanced_product(parts) != target:
        return False
    if idx.ell >= 1:
        lower, simple = (
            mt_poly(FamilyIndex(idx.ell - 1, idx.n), cap),
            simple_part(idx, cap),
        )
        if lower * simple != target:
            return False
    return True
