"""Independent reference implementations used only by the tests.

Everything here is written in the most naive style possible so that it
cannot share a bug with the optimized library code it checks.
"""

from __future__ import annotations


def mul_oracle(a: list[int], b: list[int]) -> list[int]:
    """Schoolbook product of two coefficient lists (ascending order)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    while out and out[-1] == 0:
        out.pop()
    return out


def divmod_oracle(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Long division by a monic divisor over the integers."""
    assert b and b[-1] == 1, "oracle divisor must be monic"
    rem = list(a)
    deg_b = len(b) - 1
    quo = [0] * max(0, len(rem) - deg_b)
    while len(rem) - 1 >= deg_b and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < deg_b:
            break
        shift = len(rem) - 1 - deg_b
        c = rem[-1]
        quo[shift] = c
        for j, cb in enumerate(b):
            rem[shift + j] -= c * cb
    while rem and rem[-1] == 0:
        rem.pop()
    while quo and quo[-1] == 0:
        quo.pop()
    return quo, rem


def orbit_value(c: complex, n: int) -> complex:
    """p_n(c) by direct iteration of z -> z**2 + c from 0."""
    z = 0.0 + 0.0j
    for _ in range(n):
        z = z * z + c
    return z


def bisect_h3_real_root(lo: float = -2.0, hi: float = -1.7, steps: int = 80) -> float:
    """The real root of the period-3 factor, by bisection on p_3(c)/c.

    p_3 factors as c * h_3(c), so on an interval excluding 0 the sign of
    p_3(c)/c tracks the sign of h_3(c).
    """

    def f(c: float) -> float:
        return orbit_value(complex(c), 3).real / c

    flo = f(lo)
    assert flo * f(hi) < 0, "bracket must straddle the root"
    for _ in range(steps):
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return (lo + hi) / 2
