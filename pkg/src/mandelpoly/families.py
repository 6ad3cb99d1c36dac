"""The two polynomial families generated by the critical orbit of z**2 + c.

``orbit_poly(n)`` is the n-th iterate polynomial: p_0 = 0 and
p_{n+1} = p_n**2 + z, so p_n(c) is the n-th point of the orbit of 0 under
z -> z**2 + c.  ``mt_poly`` builds the preperiodic-parameter polynomial
q_{ell,n} = p_{ell+n} - p_ell, whose roots are the parameters where the
critical orbit repeats with pre-period ell and period n.

Construction degrees grow as 2**(ell+n-1); an order cap (default 28) guards
against runaway memory and must be raised explicitly, never implicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .intpoly import IntPoly, Z, ZERO

DEFAULT_CAP = 28


class CapExceeded(ValueError):
    """A requested construction exceeds the configured order cap."""


class InvalidIndex(ValueError):
    """The (pre-period, period) pair is outside the family's domain."""


@dataclass(frozen=True)
class FamilyIndex:
    """Pre-period ``ell`` >= 0 and period ``n`` >= 1 of one family member."""

    ell: int
    n: int

    def __post_init__(self) -> None:
        if self.ell < 0 or self.n < 1:
            raise InvalidIndex(f"need ell >= 0 and n >= 1, got ({self.ell}, {self.n})")

    @property
    def order(self) -> int:
        return self.ell + self.n


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise CapExceeded(f"order {order} exceeds cap {cap}; raise the cap explicitly")


@lru_cache(maxsize=None)
def _orbit_poly(n: int) -> IntPoly:
    if n == 0:
        return ZERO
    prev = _orbit_poly(n - 1)
    return prev * prev + Z


def orbit_poly(n: int, cap: int = DEFAULT_CAP) -> IntPoly:
    """Return p_n; monic of degree 2**(n-1) for n >= 1, and p_0 = 0."""
    if n < 0:
        raise InvalidIndex(f"need n >= 0, got {n}")
    _check_cap(n, cap)
    p = _orbit_poly(n)
    assert n == 0 or p.degree == 1 << (n - 1)
    return p


def mt_poly(idx: FamilyIndex, cap: int = DEFAULT_CAP) -> IntPoly:
    """Return q_{ell,n} = p_{ell+n} - p_ell, monic of degree 2**(ell+n-1)."""
    _check_cap(idx.order, cap)
    q = _orbit_poly(idx.order) - _orbit_poly(idx.ell)
    assert q.degree == 1 << (idx.order - 1)
    if __debug__ and idx.ell == 1 and idx.order <= 12:
        p = _orbit_poly(idx.n)
        assert q == p * p
    return q


def simple_part(idx: FamilyIndex, cap: int = DEFAULT_CAP) -> IntPoly:
    """Return p_{ell+n-1} + p_{ell-1}, the repeated-root-free layer of q_{ell,n}.

    Equals exact_div(q_{ell,n}, q_{ell-1,n}); requires ell >= 1.
    """
    if idx.ell < 1:
        raise InvalidIndex("simple_part needs ell >= 1")
    _check_cap(idx.order, cap)
    return _orbit_poly(idx.order - 1) + _orbit_poly(idx.ell - 1)


def diff_squares_step(idx: FamilyIndex, cap: int = DEFAULT_CAP) -> tuple[IntPoly, IntPoly]:
    """Return (q_{ell-1,n}, p_{ell+n-1} + p_{ell-1}), whose product is q_{ell,n}.

    Difference of squares through the orbit recursion: q_{ell,n} =
    p_{ell+n-1}**2 - p_{ell-1}**2, so it splits off one pre-period level.
    """
    if idx.ell < 1:
        raise InvalidIndex("diff_squares_step needs ell >= 1")
    _check_cap(idx.order, cap)
    return mt_poly(FamilyIndex(idx.ell - 1, idx.n), cap), simple_part(idx, cap)
