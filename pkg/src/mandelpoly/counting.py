"""Divisor and Möbius machinery plus every closed-form count the factor
tables must satisfy.

``hyp_count(n)`` counts parameters whose critical orbit has exact period n,
``mis_count(ell, n)`` those with exact pre-period ell >= 2 and period n, and
``eta(ell, k)`` is the multiplicity of the period-k layer inside
q_{ell,n}.  ``degree_budget`` assembles all of them for an index and proves
the bookkeeping adds up to the full degree 2**(ell+n-1) before any factor
is ever computed.
"""

from __future__ import annotations

from dataclasses import dataclass


class BudgetMismatch(ArithmeticError):
    """The per-factor degree bookkeeping failed to add up to the full degree."""


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def strict_divisors(n: int) -> list[int]:
    """All divisors of n except n itself, ascending."""
    return divisors(n)[:-1]


def mobius(n: int) -> int:
    """Möbius function: (-1)**k for squarefree n with k prime factors, else 0."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def hyp_count(n: int) -> int:
    """Number of parameters with critical orbit of exact period n."""
    return sum(mobius(n // k) * (1 << (k - 1)) for k in divisors(n))


def phi(ell: int, n: int) -> int:
    """Pre-periodic points of pre-period ell per period-n point.

    1 when ell = 0; 2**(ell-1) - 1 when n divides ell - 1 (one branch closes
    back onto the cycle); 2**(ell-1) otherwise.  Note phi(1, n) = 0 for every
    n, matching the fact that pre-period exactly 1 cannot occur.
    """
    if ell < 0:
        raise ValueError(f"need ell >= 0, got {ell}")
    if ell == 0:
        return 1
    if (ell - 1) % n == 0:
        return (1 << (ell - 1)) - 1
    return 1 << (ell - 1)


def mis_count(ell: int, n: int) -> int:
    """Number of parameters with exact pre-period ell and period n."""
    return phi(ell, n) * hyp_count(n)


def eta(ell: int, k: int) -> int:
    """Multiplicity of the period-k factor inside q_{ell,n} for k | n.

    floor((ell - 1) / k) + 2 with the mathematical floor, so eta(0, k) = 1
    (each period-k factor appears once in p_n) and eta(1, k) = 2 (squared
    in q_{1,n} = p_n**2).
    """
    if ell < 0 or k < 1:
        raise ValueError(f"need ell >= 0 and k >= 1, got ({ell}, {k})")
    return (ell - 1) // k + 2


@dataclass(frozen=True, eq=True)
class CountRecord:
    """Predicted cardinalities and multiplicities for one (ell, n) index."""

    ell: int
    n: int
    hyp_count: int
    phi: int
    mis_count: int
    eta_by_divisor: tuple[tuple[int, int], ...]  # (divisor k, exponent) pairs
    degree_budget: int

    def eta_map(self) -> dict[int, int]:
        return dict(self.eta_by_divisor)


def degree_budget(ell: int, n: int) -> CountRecord:
    """Assemble the CountRecord for (ell, n) and prove the degree identity.

    The identity distributes the full degree 2**(ell+n-1) over the factor
    layers: sum over k | n of eta_ell(k) * hyp_count(k) plus the simple
    pre-periodic factors for every pre-period level 2..ell.  A cross-check
    via Möbius inversion (sum over k | n of 2 * hyp_count(k) = 2**n) guards
    the count implementations themselves.
    """
    divs = divisors(n)
    budget = 1 << (ell + n - 1)
    total = 0
    for k in divs:
        total += eta(ell, k) * hyp_count(k)
        for j in range(2, ell + 1):
            total += mis_count(j, k)
    if total != budget:
        raise BudgetMismatch(f"degree bookkeeping for ({ell}, {n}): {total} != {budget}")
    inversion = sum(
        mobius(k // m) * (1 << m) for k in divs for m in divisors(k)
    )
    if inversion != 1 << n:
        raise BudgetMismatch(f"Möbius inversion for n={n}: {inversion} != {1 << n}")
    return CountRecord(
        ell=ell,
        n=n,
        hyp_count=hyp_count(n),
        phi=phi(ell, n),
        mis_count=mis_count(ell, n),
        eta_by_divisor=tuple((k, eta(ell, k)) for k in divs),
        degree_budget=budget,
    )
