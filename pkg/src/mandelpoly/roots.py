"""Multiprecision root location for the squarefree factors, plus dynamical
classification of the parameters found.

The solver is a simultaneous Newton-with-repulsion iteration (Aberth–Ehrlich)
run synchronously: every sweep updates all approximations from the previous
sweep's values, so the result is independent of update order.  A fast
double-precision phase brings all points into their basins, then each point
is polished by Newton steps in mpmath and certified by residual and pairwise
separation checks; failing that, the working precision doubles (up to eight
times the request) before PrecisionExhausted is raised.

Two evaluation routes feed the iteration.  Arbitrary polynomials are
evaluated by an overflow-guarded Horner scheme on their coefficients.  The
structured factors (gleason / misiurewicz_factor) are instead evaluated
through the orbit recursion v -> v**2 + z and value ratios, which never
touches their astronomically large coefficients; their starting points are
seeded near the Mandelbrot boundary, where all their roots lie, instead of
on the coefficient-bound circle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np
from mpmath import mpc, mpf, workprec

from .counting import divisors, strict_divisors
from .factoring import gleason, misiurewicz_factor
from .families import DEFAULT_CAP
from .intpoly import IntPoly


class PrecisionExhausted(RuntimeError):
    """Root certification failed even at the maximum precision escalation."""


@dataclass(frozen=True)
class Hyperbolic:
    """Parameter whose critical orbit is periodic with the given period."""

    period: int


@dataclass(frozen=True)
class Misiurewicz:
    """Parameter whose critical orbit is strictly pre-periodic."""

    preperiod: int
    period: int


@dataclass(frozen=True)
class Unclassified:
    """No orbit recurrence found within the search box."""


Kind = Hyperbolic | Misiurewicz | Unclassified


@dataclass(frozen=True)
class ParamPoint:
    """One located parameter: value, classification, and solve metadata."""

    value: mpc
    kind: Kind
    residual: mpf
    precision_bits: int


# -- double-precision evaluation helpers -------------------------------------


def _orbit_ratio_arrays(z: np.ndarray, kmax: int):
    """u[k] = p_k'(z)/p_k(z) and w[k] = 1/p_k(z) for k = 1..kmax.

    The ratio recursion stays bounded where the raw orbit values overflow:
    w_{k+1} = w_k**2 / (1 + z w_k**2) and u_{k+1} = (2 u_k + w_k**2) / same.
    """
    u: dict[int, np.ndarray] = {}
    w: dict[int, np.ndarray] = {}
    with np.errstate(all="ignore"):
        wk = 1.0 / z
        uk = 1.0 / z
        u[1] = uk
        w[1] = wk
        for k in range(1, kmax):
            w2 = wk * wk
            den = 1.0 + z * w2
            uk = (2.0 * uk + w2) / den
            wk = w2 / den
            u[k + 1] = uk
            w[k + 1] = wk
    return u, w


def _period_logderivs(u, ks):
    """Log derivatives of the exact-period factors h_k over the divisor lattice."""
    out = {}
    for k in ks:
        out[k] = u[k] - sum(out[j] for j in strict_divisors(k))
    return out


# -- evaluators ---------------------------------------------------------------


class _CoeffEval:
    """Evaluate an arbitrary integer polynomial through its coefficients."""

    def __init__(self, poly: IntPoly):
        self.coeffs = poly.coeffs
        self.bits = poly.coeff_bits()
        mant, exps = [], []
        for c in poly.coeffs:
            if c == 0:
                mant.append(0.0)
                exps.append(0)
            else:
                shift = max(0, abs(c).bit_length() - 53)
                mant.append(float(c >> shift))
                exps.append(shift)
        self._mant = np.array(mant)
        self._exps = np.array(exps, dtype=np.int64)

    def eval_bits(self, requested: int) -> int:
        # Horner on large coefficients loses up to their bit length.
        return max(requested, self.bits + 32)

    def sweep_budget(self, deg: int) -> int:
        return min(40 * deg + 400, 4000)

    def init_points(self, deg: int, attempt: int) -> np.ndarray:
        """Deterministic points on a circle bounding all roots.

        Radius is the smaller of the two classical coefficient bounds
        (1 + max|a_i|/|a_d| and 2 max over i of |a_{d-i}|/|a_d| to the 1/i);
        both bound every root, and the tighter one keeps the walk inward
        short when the coefficient spread is huge.
        """
        d = len(self.coeffs) - 1
        lead_log2 = _log2_abs(self.coeffs[-1])
        lower = [
            (_log2_abs(c) - lead_log2, i)
            for i, c in enumerate(self.coeffs[:-1])
            if c
        ]
        if not lower:
            radius = 1.0
        else:
            cauchy = 1.0 + 2.0 ** min(512.0, max(r for r, _ in lower))
            fuji_log2 = 1.0 + max(r / (d - i) for r, i in lower)
            radius = min(cauchy, 2.0 ** min(512.0, fuji_log2))
        j = np.arange(deg)
        ang = 2.0 * np.pi * j / deg + 0.4 + 0.029 * attempt
        return radius * (1.0 + 0.003 * attempt) * np.exp(1j * ang)

    def logderiv_np(self, z: np.ndarray) -> np.ndarray:
        """p'(z)/p(z) via Horner with per-point power-of-two renormalization."""
        val = np.zeros_like(z)
        der = np.zeros_like(z)
        scale = np.zeros(z.shape, dtype=np.int64)
        with np.errstate(all="ignore"):
            for i in range(len(self.coeffs) - 1, -1, -1):
                der = der * z + val
                d = self._exps[i] - scale
                over = d > 900
                if over.any():
                    sc = np.exp2(-d[over].astype(float))
                    val[over] *= sc
                    der[over] *= sc
                    scale[over] += d[over]
                    d = self._exps[i] - scale
                term = np.exp2(np.maximum(d, -1074).astype(float))
                val = val * z + self._mant[i] * term
                mag = np.abs(val.real) + np.abs(val.imag)
                _, ex = np.frexp(mag)
                adj = np.where(np.abs(ex) > 256, ex, 0).astype(np.int64)
                if adj.any():
                    sc = np.exp2(-adj.astype(float))
                    val *= sc
                    der *= sc
                    scale += adj
            out = der / val
        return np.nan_to_num(out, nan=0.0, posinf=1e300, neginf=-1e300)

    def mp_value(self, z: mpc) -> mpc:
        acc = mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def mp_logderiv(self, z: mpc) -> mpc:
        val = mpc(0)
        der = mpc(0)
        for c in reversed(self.coeffs):
            der = der * z + val
            val = val * z + c
        return der / val


class _GleasonEval:
    """Evaluate h_n through the orbit recursion and divisor-lattice ratios."""

    def __init__(self, n: int):
        self.n = n

    def eval_bits(self, requested: int) -> int:
        # The orbit route never meets the large coefficients; a constant
        # guard above the request suffices.
        return requested + 32

    def sweep_budget(self, deg: int) -> int:
        return min(3 * deg + 300, 1500)

    def init_points(self, deg: int, attempt: int) -> np.ndarray:
        return _boundary_seeds(deg, attempt)

    def logderiv_np(self, z: np.ndarray) -> np.ndarray:
        u, _ = _orbit_ratio_arrays(z, self.n)
        l = _period_logderivs(u, divisors(self.n))
        return np.nan_to_num(l[self.n], nan=0.0, posinf=1e300, neginf=-1e300)

    def _mp_orbit(self, z: mpc, kmax: int, with_der: bool):
        vs, ds = [None], [None]
        v, d = mpc(0), mpc(0)
        for _ in range(kmax):
            if with_der:
                d = 2 * v * d + 1
            v = v * v + z
            vs.append(v)
            ds.append(d)
        return vs, ds

    def mp_value(self, z: mpc) -> mpc:
        vs, _ = self._mp_orbit(z, self.n, with_der=False)
        vals: dict[int, mpc] = {}
        for k in divisors(self.n):
            acc = vs[k]
            for j in strict_divisors(k):
                acc = acc / vals[j]
            vals[k] = acc
        return vals[self.n]

    def mp_logderiv(self, z: mpc) -> mpc:
        vs, ds = self._mp_orbit(z, self.n, with_der=True)
        l: dict[int, mpc] = {}
        for k in divisors(self.n):
            l[k] = ds[k] / vs[k] - sum(l[j] for j in strict_divisors(k))
        return l[self.n]


class _MisEval:
    """Evaluate m_{ell,n} through orbit recursion and layered value ratios."""

    def __init__(self, ell: int, n: int):
        self.ell = ell
        self.n = n

    def eval_bits(self, requested: int) -> int:
        return requested + 32

    def sweep_budget(self, deg: int) -> int:
        return min(3 * deg + 300, 1500)

    def init_points(self, deg: int, attempt: int) -> np.ndarray:
        return _boundary_seeds(deg, attempt)

    def logderiv_np(self, z: np.ndarray) -> np.ndarray:
        ell, n = self.ell, self.n
        u, w = _orbit_ratio_arrays(z, ell + n - 1)
        lh = _period_logderivs(u, divisors(math.gcd(n, ell - 1)))
        lm: dict[int, np.ndarray] = {}
        with np.errstate(all="ignore"):
            for k in divisors(n):
                last = ell + k - 1
                rho = w[last] / w[ell - 1]  # = p_{ell-1}(z) / p_{last}(z)
                sratio = (u[last] + u[ell - 1] * rho) / (1.0 + rho)
                val = sratio
                val = val - sum(lh[j] for j in divisors(math.gcd(k, ell - 1)))
                val = val - sum(lm[i] for i in strict_divisors(k))
                lm[k] = val
        return np.nan_to_num(lm[n], nan=0.0, posinf=1e300, neginf=-1e300)

    def _layers(self, z: mpc, with_der: bool):
        ell, n = self.ell, self.n
        vs, ds = [None], [None]
        v, d = mpc(0), mpc(0)
        for _ in range(ell + n - 1):
            if with_der:
                d = 2 * v * d + 1
            v = v * v + z
            vs.append(v)
            ds.append(d)
        hvals: dict[int, mpc] = {}
        for k in divisors(math.gcd(n, ell - 1)):
            acc = vs[k]
            for j in strict_divisors(k):
                acc = acc / hvals[j]
            hvals[k] = acc
        return vs, ds, hvals

    def mp_value(self, z: mpc) -> mpc:
        ell, n = self.ell, self.n
        vs, _, hvals = self._layers(z, with_der=False)
        mvals: dict[int, mpc] = {}
        for k in divisors(n):
            acc = vs[ell + k - 1] + vs[ell - 1]
            for j in divisors(math.gcd(k, ell - 1)):
                acc = acc / hvals[j]
            for i in strict_divisors(k):
                acc = acc / mvals[i]
            mvals[k] = acc
        return mvals[n]

    def mp_logderiv(self, z: mpc) -> mpc:
        ell, n = self.ell, self.n
        vs, ds, hvals = self._layers(z, with_der=True)
        lh: dict[int, mpc] = {}
        for k in divisors(math.gcd(n, ell - 1)):
            lh[k] = ds[k] / vs[k] - sum(lh[j] for j in strict_divisors(k))
        lm: dict[int, mpc] = {}
        for k in divisors(n):
            last = ell + k - 1
            sratio = (ds[last] + ds[ell - 1]) / (vs[last] + vs[ell - 1])
            val = sratio - sum(lh[j] for j in divisors(math.gcd(k, ell - 1)))
            val = val - sum(lm[i] for i in strict_divisors(k))
            lm[k] = val
        return lm[n]


def _log2_abs(c: int) -> float:
    b = abs(c).bit_length()
    if b <= 900:
        return math.log2(abs(c))
    return (b - 53) + math.log2(float(abs(c) >> (b - 53)))


# -- deterministic starting points --------------------------------------------


@lru_cache(maxsize=8)
def _escape_grid(nx: int, kmax: int = 40):
    """Coarse escape-time classification of a fixed parameter rectangle."""
    xs = np.linspace(-2.2, 0.8, nx)
    ys = np.linspace(-1.3, 1.3, nx)
    re, im = np.meshgrid(xs, ys)
    c = re + 1j * im
    z = np.zeros_like(c)
    count = np.zeros(c.shape, dtype=np.int64)
    alive = np.ones(c.shape, dtype=bool)
    for k in range(kmax):
        z[alive] = z[alive] ** 2 + c[alive]
        escaped = alive & (np.abs(z) > 2.0)
        count[escaped] = k + 1
        alive &= ~escaped
    return c, count, xs[1] - xs[0]


def _boundary_seeds(deg: int, attempt: int) -> np.ndarray:
    """Deterministic points hugging the Mandelbrot boundary, where every
    root of the structured factors lies; a ring or disk of starting points
    needs hundreds of extra sweeps to migrate onto the boundary curve."""
    for nx in (768, 1536, 3072):
        c, count, step = _escape_grid(nx)
        slow = (count >= 6)
        interior = count == 0
        edge = np.zeros_like(interior)
        edge[1:, :] |= interior[1:, :] & (count[:-1, :] > 0)
        edge[:-1, :] |= interior[:-1, :] & (count[1:, :] > 0)
        edge[:, 1:] |= interior[:, 1:] & (count[:, :-1] > 0)
        edge[:, :-1] |= interior[:, :-1] & (count[:, 1:] > 0)
        pts = c[slow | edge]
        if len(pts) >= deg:
            idx = ((np.arange(deg) * len(pts)) // deg + 37 * attempt) % len(pts)
            return pts[idx] + 0.5j * step
    # Degree beyond the finest grid: reuse seeds cyclically, nudged apart.
    reps = -(-deg // len(pts))
    tiled = np.tile(pts, reps)[:deg]
    nudge = (np.arange(deg) // len(pts)) * (3e-4 + 7e-4j)
    return tiled + nudge + 0.5j * step


# -- the solver ----------------------------------------------------------------


def _aberth_sweeps(ev, deg: int, attempt: int) -> np.ndarray:
    """Synchronous Aberth–Ehrlich sweeps in double precision.

    Converged points freeze (their repulsion still acts on the rest); steps
    are capped and halved on direction reversal to damp limit cycles.
    """
    z = ev.init_points(deg, attempt).astype(complex)
    prev = np.zeros(deg, dtype=complex)
    active = np.ones(deg, dtype=bool)
    cap = 0.3
    for _ in range(ev.sweep_budget(deg)):
        za = z[active]
        logd = ev.logderiv_np(za)
        diff = za[:, None] - z[None, :]
        with np.errstate(all="ignore"):
            inv = 1.0 / diff
        inv[~np.isfinite(inv)] = 0.0
        repel = inv.sum(axis=1)
        with np.errstate(all="ignore"):
            delta = -1.0 / (logd - repel)
        delta = np.nan_to_num(delta)
        mag = np.abs(delta)
        big = mag > cap
        delta[big] *= cap / mag[big]
        pa = prev[active]
        osc = (delta.real * pa.real + delta.imag * pa.imag) < -0.25 * np.abs(delta) * np.abs(pa)
        delta[osc] *= 0.5
        prev[active] = delta
        z[active] = za + delta
        done = np.abs(delta) <= 1e-10 * (1.0 + np.abs(z[active]))
        idx = np.where(active)[0]
        active[idx[done]] = False
        if not active.any():
            break
    return z


def _polish(ev, start: complex, limit: mpf) -> mpc:
    z = mpc(start)
    try:
        for _ in range(60):
            step = -1 / ev.mp_logderiv(z)
            z += step
            if abs(step) < limit:
                break
    except ZeroDivisionError:
        pass  # point fails certification and triggers escalation
    return z


def _residual(ev, value: mpc) -> mpf:
    try:
        return abs(ev.mp_value(value))
    except ZeroDivisionError:
        return mpf("inf")


def _solve(ev, deg: int, precision_bits: int, label: str):
    """Locate, polish, and certify all deg roots; returns (values, residuals, bits)."""
    for attempt in range(4):
        bits = precision_bits << attempt
        eval_bits = ev.eval_bits(bits)
        threshold = mpf(2) ** -(bits // 2)
        approx = _aberth_sweeps(ev, deg, attempt)
        with workprec(eval_bits + 10):
            limit = mpf(2) ** (8 - eval_bits)
            values = [_polish(ev, complex(p), limit) for p in approx]
            residuals = [_residual(ev, v) for v in values]
            if max(residuals) < threshold and _separated(values, 2 * threshold):
                return values, residuals, bits
    raise PrecisionExhausted(
        f"{label}: could not certify {deg} distinct roots below "
        f"2^-{precision_bits // 2} within 8x precision escalation"
    )


def _separated(values: list[mpc], bound: mpf) -> bool:
    """All pairwise distances exceed bound; exact recheck of near pairs only."""
    pts = np.array([complex(v) for v in values])
    if len(pts) < 2:
        return True
    diff = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(diff, np.inf)
    suspect = np.argwhere(diff < max(float(bound) * 4.0, 1e-12))
    for i, j in suspect:
        if i < j and abs(values[i] - values[j]) <= bound:
            return False
    return True


def _sorted_points(points: list[ParamPoint]) -> list[ParamPoint]:
    return sorted(points, key=lambda p: (p.value.real, p.value.imag))


def _matching_family_evaluator(a: IntPoly):
    """Orbit-recursion evaluator when a is an already-computed factor.

    The degree-first equality comparisons cost nothing next to a solve, and
    the orbit route evaluates these factors far more accurately and starts
    its iteration where their roots actually live.
    """
    from . import factoring

    for n, h in factoring._gleason_memo.items():
        if h == a:
            return _GleasonEval(n)
    for (ell, n), m in factoring._mis_memo.items():
        if m == a:
            return _MisEval(ell, n)
    return None


def find_roots(a: IntPoly, precision_bits: int) -> list[ParamPoint]:
    """All deg(a) distinct roots of a squarefree polynomial, unclassified.

    Points come back sorted by (real, imaginary); each residual |a(root)|
    is below 2**-(precision_bits/2) at the achieved precision, and pairwise
    separations exceed twice that bound, else PrecisionExhausted is raised.
    """
    if a.degree < 1:
        raise ValueError("need degree >= 1")
    if precision_bits < 8:
        raise ValueError("need precision_bits >= 8")
    ev = _matching_family_evaluator(a) or _CoeffEval(a)
    values, residuals, bits = _solve(ev, int(a.degree), precision_bits, "polynomial")
    points = [
        ParamPoint(value=v, kind=Unclassified(), residual=r, precision_bits=bits)
        for v, r in zip(values, residuals)
    ]
    return _sorted_points(points)


# -- orbit classification -------------------------------------------------------


def orbit_classify(c, max_preperiod: int, max_period: int, tol) -> Kind:
    """Classify a parameter by searching its critical orbit for a recurrence.

    Returns the smallest (pre-period, period) pair, scanning periods first,
    with |z_{pre+per} - z_pre| < tol.  Pre-periods 0 and 1 both mean the
    orbit is genuinely periodic, so they collapse to Hyperbolic.
    """
    tol = mpf(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    needed = int(2 * math.log2(1 / tol)) + 40
    with workprec(max(mpmath.mp.prec, needed)):
        orbit = [mpc(0)]
        point = mpc(c)
        for _ in range(max_preperiod + max_period):
            orbit.append(orbit[-1] ** 2 + point)
        for period in range(1, max_period + 1):
            for pre in range(0, max_preperiod + 1):
                if abs(orbit[pre + period] - orbit[pre]) < tol:
                    if pre <= 1:
                        return Hyperbolic(period)
                    return Misiurewicz(pre, period)
    return Unclassified()


# -- family sweeps ---------------------------------------------------------------


def points_of_order(max_order: int, precision_bits: int, cap: int = DEFAULT_CAP) -> list[ParamPoint]:
    """Roots of every h_n (n <= max_order) and m_{ell,n} (ell + n <= max_order).

    Each point's kind comes from the factor it was solved from and is
    cross-checked against orbit_classify; a disagreement emits a warning but
    keeps the factor-derived kind.
    """
    if max_order < 1:
        raise ValueError("need max_order >= 1")
    tol = mpf(2) ** -(precision_bits // 4)
    points: list[ParamPoint] = []
    for n in range(1, max_order + 1):
        poly = gleason(n, cap)
        points += _solve_factor(
            _GleasonEval(n), int(poly.degree), precision_bits,
            Hyperbolic(n), f"period-{n} factor", max_order, tol,
        )
    for ell in range(2, max_order):
        for n in range(1, max_order - ell + 1):
            poly = misiurewicz_factor(ell, n, cap)
            points += _solve_factor(
                _MisEval(ell, n), int(poly.degree), precision_bits,
                Misiurewicz(ell, n), f"pre-period-({ell},{n}) factor", max_order, tol,
            )
    return _sorted_points(points)


def _solve_factor(ev, deg, precision_bits, kind, label, max_order, tol):
    values, residuals, bits = _solve(ev, deg, precision_bits, label)
    points = []
    for v, r in zip(values, residuals):
        observed = orbit_classify(v, max_order + 2, max_order + 2, tol)
        if observed != kind:
            warnings.warn(
                f"{label}: root {complex(v)} classified as {observed}, "
                f"expected {kind}", stacklevel=2,
            )
        points.append(ParamPoint(value=v, kind=kind, residual=r, precision_bits=bits))
    return points
