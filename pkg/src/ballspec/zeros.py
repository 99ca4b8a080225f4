"""Certified location of Bessel-derived zeros by exhaustive sign census.

Three target families, all driven by one kernel pair evaluation per point:

* ``BesselJ``      - zeros j_{nu,m} of J_nu;
* ``DirichletXi``  - zeros of the scaled radial function (identical to the
  j_{nu,m} because the power prefactor never vanishes for r > 0);
* ``NeumannXiPrime`` - zeros of its derivative, located through
  g(r) = (l/r) J_nu(r) - J_{nu+1}(r), which shares the derivative's zeros.

The m-th zero is found by walking a sign scan with a fixed step from a
rigorous zero-free lower bound (never from an asymptotic count), so the
returned zero is guaranteed to be the m-th one:

* first J_nu zero satisfies j_{nu,1}^2 > nu(nu+2);
* first Neumann zero (l >= 1) satisfies
  beta^2 > 2l(nu+1) / (1 + 2l(nu+1)/(nu(nu+2))), obtained from the Rayleigh
  sum of inverse squared zeros; below these bounds the targets keep a known
  sign, which seeds the scan.
* l = 0 Neumann targets reduce to -J_{nu+1} (the degree-zero derivative
  recursion), so their positive zeros use the J bound at order nu+1 and the
  scan starts with negative sign; the conventional zero at r = 0 is
  special-cased, never scanned.

Each scanned cell is screened for a hidden pair of zeros: when the
derivative changes sign inside a no-crossing cell, a cubic Hermite model of
the cell is checked for a dip through zero, and any suspicious dip is
confirmed by locating the true extremum; a confirmed double crossing raises
StepTooCoarse. Brackets are polished by bisection to 1e-10 relative followed
by bracket-safeguarded Newton steps to the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from ballspec import bessel
from ballspec.bessel import Order
from ballspec.errors import BracketFailure, RangeError, StepTooCoarse

X_BOX = 200.0
DEFAULT_STEP = 0.2
DEFAULT_TOL = 1e-13
_TOL_FLOOR = 1e-15  # float grid + kernel noise; tighter cannot be honored
_TINY = 1e-290  # endpoint magnitudes below this trigger the widen rule
_DIP_MARGIN = 1e-3  # Hermite dip screen threshold, relative to cell scale


class RootKind(Enum):
    BESSEL_J = "BesselJ"
    DIRICHLET_XI = "DirichletXi"
    NEUMANN_XI_PRIME = "NeumannXiPrime"


@dataclass(frozen=True)
class RootRequest:
    """One zero request: kind, degree l, dimension d, index m, tolerance."""

    kind: RootKind
    l: int
    d: int
    m: int
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if not isinstance(self.kind, RootKind):
            raise RangeError(f"kind must be a RootKind, got {self.kind!r}")
        if not isinstance(self.l, int) or self.l < 0:
            raise RangeError(f"l must be a nonnegative int, got {self.l!r}")
        if not isinstance(self.d, int) or self.d < 2:
            raise RangeError(f"d must be an int >= 2, got {self.d!r}")
        if not isinstance(self.m, int) or self.m < 1:
            raise RangeError(f"m must be a positive int, got {self.m!r}")
        _check_tol(self.tol)


@dataclass(frozen=True)
class Bracket:
    """Sign-change interval: the target has opposite signs at lo and hi."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise RangeError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not math.isfinite(tol) or not _TOL_FLOOR <= tol <= 1e-2:
        raise RangeError(
            f"tol={tol!r} outside supported range [{_TOL_FLOOR}, 1e-2]"
        )
    return tol


# ---------------------------------------------------------------------------
# targets: value-and-derivative callables built on one kernel pair call


def _target_J(twice_nu: int):
    nu = 0.5 * twice_nu
    order = Order(twice_nu)

    def f_df(x: float):
        a, b = bessel.eval_J_pair(order, x)
        return a.value, (nu / x) * a.value - b.value

    return f_df


def _target_g(l: int, twice_nu: int):
    # g(r) = (l/r) J_nu - J_{nu+1};  g'(r) from the two J recursions:
    # g' = J_nu (l(nu-1)/r^2 - 1) + J_{nu+1} (nu+1-l)/r
    nu = 0.5 * twice_nu
    order = Order(twice_nu)

    def f_df(x: float):
        a, b = bessel.eval_J_pair(order, x)
        g = (l / x) * a.value - b.value
        dg = a.value * (l * (nu - 1.0) / (x * x) - 1.0) + b.value * (
            (nu + 1.0 - l) / x
        )
        return g, dg

    return f_df


def _dirichlet_lower(twice_nu: int) -> float:
    # j_{nu,1}^2 > nu(nu+2); shrink a hair so float rounding stays safe
    return math.sqrt(twice_nu * (twice_nu + 4)) * 0.5 * (1.0 - 1e-9)


def _neumann_lower(l: int, twice_nu: int) -> float:
    # beta_{l,1}^2 > 2l(nu+1) / (1 + 2l(nu+1)/(nu(nu+2))) for l >= 1
    a = l * (twice_nu + 2)  # = 2l(nu+1)
    dsq = twice_nu * (twice_nu + 4) / 4.0  # = nu(nu+2)
    return math.sqrt(a / (1.0 + a / dsq)) * (1.0 - 1e-9)


def _scan_setup(kind: RootKind, l: int, d: int):
    """(f_df, start, start_sign) with (0, start] certified zero-free."""
    twice_nu = 2 * l + d - 2
    if kind in (RootKind.BESSEL_J, RootKind.DIRICHLET_XI):
        return _target_J(twice_nu), _dirichlet_lower(twice_nu), 1
    if l == 0:
        # derivative target is exactly -J_{nu+1}: negative near 0+
        return _target_g(0, twice_nu), _dirichlet_lower(twice_nu + 2), -1
    return _target_g(l, twice_nu), _neumann_lower(l, twice_nu), 1


# ---------------------------------------------------------------------------
# the scan: walk cells, screen each for hidden zero pairs, yield brackets


def _hermite_dip(fa, dfa, fb, dfb, h, scale) -> bool:
    """True if the cubic model of the cell dips to (or through) zero."""
    c0, c1 = fa, h * dfa
    c2 = -3.0 * fa - 2.0 * h * dfa + 3.0 * fb - h * dfb
    c3 = 2.0 * fa + h * dfa - 2.0 * fb + h * dfb
    # extrema: 3 c3 t^2 + 2 c2 t + c1 = 0 on (0, 1)
    s = 1.0 if fa > 0.0 else -1.0
    if c3 == 0.0:
        roots = [-c1 / (2.0 * c2)] if c2 != 0.0 else []
    else:
        disc = 4.0 * c2 * c2 - 12.0 * c3 * c1
        if disc < 0.0:
            return False
        sq = math.sqrt(disc)
        roots = [(-2.0 * c2 - sq) / (6.0 * c3), (-2.0 * c2 + sq) / (6.0 * c3)]
    for t in roots:
        if 0.0 < t < 1.0:
            val = ((c3 * t + c2) * t + c1) * t + c0
            if s * val <= _DIP_MARGIN * scale:
                return True
    return False


def _confirm_pair(f_df, a, dfa, b, dfb, sign_a) -> bool:
    """Locate the true extremum by derivative bisection; True if f crosses."""
    lo, hi = a, b
    dlo = dfa
    for _ in range(60):
        if hi - lo <= 1e-9 * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        fm, dfm = f_df(mid)
        if sign_a * fm <= 0.0:
            return True  # found an actual crossing inside the cell
        if (dfm > 0.0) == (dlo > 0.0):
            lo, dlo = mid, dfm
        else:
            hi = mid
    fm, _ = f_df(0.5 * (lo + hi))
    return sign_a * fm <= 0.0


def _walk_brackets(f_df, start: float, start_sign: int, step: float,
                   x_limit: float):
    """Yield (lo, hi, sign_lo) sign-change cells over (start, x_limit].

    The target must have the sign ``start_sign`` throughout (0, start]
    (start may be 0 for targets positive near the origin). Cells without a
    crossing are screened for a hidden pair of zeros; a confirmed pair
    raises StepTooCoarse so the caller can retry with a smaller step.
    """
    prev_x = start
    prev_sign = 1 if start_sign > 0 else -1
    prev_f = None
    prev_df = None
    while prev_x < x_limit:
        x = min(prev_x + step, x_limit)
        f, df = f_df(x)
        if abs(f) < _TINY:
            # endpoint sits on (or straddles underflow near) a zero: widen
            # one step so the zero lands strictly inside the bracket
            x2 = x + step
            f2, df2 = f_df(x2)
            if (f2 > 0.0) == (prev_sign > 0) or abs(f2) < _TINY:
                raise BracketFailure(
                    f"sign did not flip across near-zero endpoint x={x!r}"
                )
            yield prev_x, x2, prev_sign
            prev_x, prev_sign, prev_f, prev_df = x2, -prev_sign, f2, df2
            continue
        sign = 1 if f > 0.0 else -1
        if sign != prev_sign:
            yield prev_x, x, prev_sign
        elif (
            prev_df is not None
            and (df > 0.0) != (prev_df > 0.0)
            and _hermite_dip(prev_f, prev_df, f, df, x - prev_x,
                             max(abs(prev_f), abs(f)))
            and _confirm_pair(f_df, prev_x, prev_df, x, df, prev_sign)
        ):
            raise StepTooCoarse(
                f"two zeros inside one scan cell [{prev_x!r}, {x!r}]; "
                f"retry with step below {0.5 * step!r}"
            )
        prev_x, prev_sign, prev_f, prev_df = x, sign, f, df


# ---------------------------------------------------------------------------
# refinement: bisection + bracket-safeguarded Newton


def _refine(f_df, lo: float, hi: float, sign_lo: int, tol: float) -> float:
    while hi - lo > 1e-10 * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # float grid exhausted
        fm, _ = f_df(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (sign_lo > 0):
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(12):
        f, df = f_df(x)
        if f == 0.0:
            return x
        if (f > 0.0) == (sign_lo > 0):
            lo = max(lo, x)
        else:
            hi = min(hi, x)
        if df == 0.0:
            x = 0.5 * (lo + hi)
            continue
        dx = f / df
        x_new = x - dx
        if not lo <= x_new <= hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 0.5 * tol * max(x, 1.0):
            return x_new
        x = x_new
    if hi - lo <= tol * max(hi, 1.0):
        return 0.5 * (lo + hi)
    raise BracketFailure(
        f"refinement stalled in [{lo!r}, {hi!r}] at tol={tol!r}; "
        "kernel accuracy may be insufficient"
    )


# ---------------------------------------------------------------------------
# census: m-th zero via cached incremental scanning


@lru_cache(maxsize=8192)
def _census_bracket(kind_tag: str, l: int, twice_nu: int, m: int):
    """Bracket of the m-th positive zero: (lo, hi, sign_lo)."""
    if kind_tag == "J":
        f_df = _target_J(twice_nu)
        start, sign = _dirichlet_lower(twice_nu), 1
    else:
        f_df = _target_g(l, twice_nu)
        if l == 0:
            start, sign = _dirichlet_lower(twice_nu + 2), -1
        else:
            start, sign = _neumann_lower(l, twice_nu), 1
    if m > 1:
        prev = _census_bracket(kind_tag, l, twice_nu, m - 1)
        start, sign = prev[1], -prev[2]
    for cell in _walk_brackets(f_df, start, sign, DEFAULT_STEP, X_BOX):
        return cell
    raise RangeError(
        f"zero #{m} of {kind_tag}(l={l}, twice_nu={twice_nu}) lies beyond "
        f"the supported box x <= {X_BOX}"
    )


@lru_cache(maxsize=8192)
def _census_zero(kind_tag: str, l: int, twice_nu: int, m: int, tol: float):
    lo, hi, sign_lo = _census_bracket(kind_tag, l, twice_nu, m)
    f_df = _target_J(twice_nu) if kind_tag == "J" else _target_g(l, twice_nu)
    return _refine(f_df, lo, hi, sign_lo, tol)


# ---------------------------------------------------------------------------
# public API


def bessel_zero(nu: Order, m: int, tol: float = DEFAULT_TOL) -> float:
    """m-th positive zero j_{nu,m} of J_nu, certified by sign census."""
    if not isinstance(nu, Order):
        raise RangeError(f"nu must be an Order, got {nu!r}")
    if not isinstance(m, int) or m < 1:
        raise RangeError(f"m must be a positive int, got {m!r}")
    return _census_zero("J", 0, nu.twice_nu, m, _check_tol(tol))


def dirichlet_zero(l: int, d: int, m: int, tol: float = DEFAULT_TOL) -> float:
    """m-th interior-problem zero: equals j_{l+d/2-1, m} because the power
    prefactor of the scaled radial function never vanishes for r > 0."""
    _check_l_d(l, d)
    return bessel_zero(Order.from_l_d(l, d), m, tol)


def neumann_zero(l: int, d: int, m: int, tol: float = DEFAULT_TOL) -> float:
    """m-th zero of the scaled radial derivative.

    For l = 0 the count starts at the conventional zero at r = 0 (the
    ground state), so m = 1 returns exactly 0.0 and the m-th entry for
    m >= 2 is the (m-1)-th positive zero.
    """
    _check_l_d(l, d)
    if not isinstance(m, int) or m < 1:
        raise RangeError(f"m must be a positive int, got {m!r}")
    tol = _check_tol(tol)
    twice_nu = 2 * l + d - 2
    if l == 0:
        if m == 1:
            return 0.0
        return _census_zero("G", 0, twice_nu, m - 1, tol)
    return _census_zero("G", l, twice_nu, m, tol)


def find_zero(req: RootRequest) -> float:
    """Resolve a RootRequest through the matching census function."""
    if req.kind is RootKind.NEUMANN_XI_PRIME:
        return neumann_zero(req.l, req.d, req.m, req.tol)
    return dirichlet_zero(req.l, req.d, req.m, req.tol)


def scan_brackets(kind: RootKind, l: int, d: int, x_max: float,
                  step: float = DEFAULT_STEP) -> list[Bracket]:
    """All sign-change brackets of the target over (0, x_max], in order.

    The bracket count equals the number of zeros in (0, x_max] (for the
    derivative targets with l = 0 this excludes the conventional zero at
    r = 0, which is not a sign change).
    """
    if not isinstance(kind, RootKind):
        raise RangeError(f"kind must be a RootKind, got {kind!r}")
    _check_l_d(l, d)
    x_max = float(x_max)
    if not 0.0 < x_max <= X_BOX:
        raise RangeError(f"x_max={x_max!r} outside (0, {X_BOX}]")
    step = float(step)
    if not 0.0 < step <= math.pi / 2.0:
        raise RangeError(f"step={step!r} outside (0, pi/2]")
    f_df, start, sign = _scan_setup(kind, l, d)
    out = []
    if start < x_max:
        for lo, hi, _ in _walk_brackets(f_df, start, sign, step, x_max):
            out.append(Bracket(lo, hi))
    return out


def _check_l_d(l: int, d: int) -> None:
    if not isinstance(l, int) or l < 0:
        raise RangeError(f"l must be a nonnegative int, got {l!r}")
    if not isinstance(d, int) or d < 2:
        raise RangeError(f"d must be an int >= 2, got {d!r}")
