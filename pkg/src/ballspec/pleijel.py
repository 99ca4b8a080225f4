"""Pleijel constant gamma(d) of the d-dimensional unit ball.

gamma(d) = 2^(d-2) d^2 Gamma(d/2)^2 / j^d, where j is the first positive
zero of the Bessel function of order d/2 - 1.  It bounds the asymptotic
fraction (nodal domain count) / (eigenvalue index) for Dirichlet
eigenfunctions, and gamma(d-1) plays the same role on the Neumann side.

The module computes gamma entirely in log space (the 2^(d-2) / j^d ratio
over- and underflows long before the supported dimension cap), emits the
table and the quotient curve gamma(d+1)/gamma(d), and certifies that gamma
is strictly decreasing by numerically checking every link of an inequality
chain that proves it:

  1. gamma_eq       [Gamma(d/2+1/2)/Gamma(d/2)]^2 < (d-1)^2 / (2(d-2)),
                    from log-convexity of the Gamma function;
  2. asb            the ratio of first zeros at consecutive orders is
                    controlled by the ratio of the first two eigenvalues of
                    a d-cube (first-zero ratio bound, applied here with
                    dimension parameter d-1);
  3. convexity_step the squared first zero is convex in the order, so the
                    half-step ratio interpolates the full-step one;
  4. control        combining 2. and 3.: j(d/2-1)^2/j(d/2-1/2)^2
                     < 1 - 3/(2(d+2));
  5. jest_lower/upper  two-sided classical estimates for the first zero,
                    sqrt(nu(nu+2)) < j < sqrt(nu+1)(sqrt(nu+2)+1);
  6. gamma_ratio_bound  the assembled bound on gamma(d+1)/gamma(d);
  7. exp_bound      (1 - 3/(2(d+2)))^((d+2)/2) < e^(-3/4);
  8. interval_bound (d+1/2)^2 < (d-1)(d+3) for d >= 4 (exact integers);
  9. poly_bound     the remaining rational function of d is < 1 + 5/d for
                    d >= 4 (exact rational arithmetic);
 10. combined_bound gamma(d+1)/gamma(d) < (2/e^(3/4)) (1 + 5/d);
 11. e34_lt_95      2/e^(3/4) < 95/100;
 12. the final bound (95/100)(1+5/d) is decreasing, equals exactly 1 at
     d = 95 (final_bound_equality) and is < 1 for d >= 96
     (ninetyfive_bound_lt_1), both in exact rational arithmetic;
 13. final_lt_1     the computed quotient itself is < 1.

Checks whose two sides are rational numbers are decided with exact
arbitrary-precision arithmetic before being recorded as floats; the float
views in the certificate are for reporting only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from functools import lru_cache

from ballspec import zeros
from ballspec._format import dumps, format_float
from ballspec.bessel import log_gamma
from ballspec.errors import CertificateFailure, RangeError

__all__ = [
    "D_MAX",
    "TWO_OVER_E",
    "Check",
    "MonotonicityCertificate",
    "PleijelRow",
    "curve_to_plot_json",
    "gamma",
    "gamma_table",
    "monotonicity_certificate",
    "neumann_pleijel_bound",
    "quotient_curve",
    "rows_to_csv",
    "six_decimals",
]

# The zero census evaluates the Bessel pair (nu, nu+1) at order
# nu = d/2 - 1, so the kernel's order cap (twice_nu <= 240) admits first
# zeros for every dimension up to 240; the first zero itself stays far
# inside the argument box (j < 1.9 * 240 never happens: j(119) ~ 128).
D_MAX = 240

# Limit of the quotient gamma(d+1)/gamma(d) as d grows.
TWO_OVER_E = 2.0 / math.e

_STRICT = "strict_less"
_EQUAL = "equal"

_REQUIRED_CHECKS = frozenset(
    [
        "gamma_ratio_bound",
        "gamma_eq",
        "control",
        "asb",
        "exp_bound",
        "poly_bound",
        "final_lt_1",
    ]
)


def _check_d(d: int, minimum: int, what: str = "d") -> None:
    if not isinstance(d, int) or isinstance(d, bool) or d < minimum:
        raise RangeError(f"{what} must be an int >= {minimum}, got {d!r}")


# ---------------------------------------------------------------------------
# gamma(d) and rows


@lru_cache(maxsize=None)
def _log_gamma_value(d: int) -> float:
    """ln gamma(d) assembled term by term; the only exp happens at the end."""
    j = zeros.dirichlet_zero(0, d, 1)
    return (
        (d - 2) * math.log(2.0)
        + 2.0 * math.log(d)
        + 2.0 * log_gamma(0.5 * d)
        - d * math.log(j)
    )


def gamma(d: int) -> float:
    """Pleijel constant of the d-dimensional unit ball, d = 2..240.

    Relative error <= 1e-10 (dominated by d times the first-zero tolerance).
    """
    _check_d(d, 2)
    if d > D_MAX:
        raise RangeError(
            f"gamma({d}) needs the first zero at order {d / 2 - 1}, beyond "
            f"the supported order box (d <= {D_MAX})"
        )
    return math.exp(_log_gamma_value(d))


def _quotient(d: int) -> float:
    """gamma(d+1)/gamma(d), formed in log space so both entries cancel."""
    return math.exp(_log_gamma_value(d + 1) - _log_gamma_value(d))


@dataclass(frozen=True)
class PleijelRow:
    """One table row: dimension, gamma, its log, and the forward quotient."""

    d: int
    gamma: float
    log_gamma_value: float
    quotient_next: float | None

    def __post_init__(self) -> None:
        _check_d(self.d, 2)
        if not math.isfinite(self.log_gamma_value):
            raise CertificateFailure(
                f"pleijel row d={self.d}: non-finite log_gamma_value"
            )
        expected = math.exp(self.log_gamma_value)
        if abs(self.gamma - expected) > 4.0 * math.ulp(expected):
            raise CertificateFailure(
                f"pleijel row d={self.d}: gamma={self.gamma!r} does not match "
                f"exp(log_gamma_value)={expected!r}"
            )
        if not 0.0 < self.gamma < 1.0:
            raise CertificateFailure(
                f"pleijel row d={self.d}: gamma={self.gamma!r} outside (0, 1)"
            )
        if self.quotient_next is not None and not (
            math.isfinite(self.quotient_next) and self.quotient_next > 0.0
        ):
            raise CertificateFailure(
                f"pleijel row d={self.d}: bad quotient {self.quotient_next!r}"
            )


def gamma_table(d_min: int, d_max: int) -> list[PleijelRow]:
    """Rows for d = d_min..d_max; quotient_next is None on the last row."""
    _check_d(d_min, 2, "d_min")
    _check_d(d_max, 2, "d_max")
    if d_min > d_max:
        raise RangeError(f"need d_min <= d_max, got {d_min} > {d_max}")
    if d_max > D_MAX:
        raise RangeError(f"d_max={d_max} beyond supported {D_MAX}")
    rows = []
    for d in range(d_min, d_max + 1):
        lgv = _log_gamma_value(d)
        quotient = _quotient(d) if d < d_max else None
        rows.append(PleijelRow(d, math.exp(lgv), lgv, quotient))
    return rows


def quotient_curve(d_min: int, d_max: int) -> list[tuple[int, float]]:
    """(d, gamma(d+1)/gamma(d)) for d = d_min..d_max; every quotient < 1."""
    _check_d(d_min, 2, "d_min")
    _check_d(d_max, 2, "d_max")
    if d_min > d_max:
        raise RangeError(f"need d_min <= d_max, got {d_min} > {d_max}")
    if d_max + 1 > D_MAX:
        raise RangeError(
            f"quotient at d={d_max} needs gamma({d_max + 1}), beyond "
            f"supported dimension {D_MAX}"
        )
    points = [(d, _quotient(d)) for d in range(d_min, d_max + 1)]
    for d, q in points:
        if not q < 1.0:
            raise CertificateFailure(
                f"pleijel quotient gamma({d + 1})/gamma({d}) = {q!r} "
                f"violates the strict decrease"
            )
    return points


# ---------------------------------------------------------------------------
# monotonicity certificate


@dataclass(frozen=True)
class Check:
    """One certified comparison; construction fails unless it holds.

    kind "strict_less" requires lhs < rhs, kind "equal" requires lhs == rhs
    (used for the links of the chain that are exact identities).
    """

    name: str
    lhs: float
    rhs: float
    kind: str = _STRICT

    def __post_init__(self) -> None:
        if self.kind not in (_STRICT, _EQUAL):
            raise RangeError(f"unknown check kind {self.kind!r}")
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            raise CertificateFailure(
                f"pleijel monotonicity check '{self.name}': non-finite side "
                f"(lhs={self.lhs!r}, rhs={self.rhs!r})"
            )
        holds = self.lhs < self.rhs if self.kind == _STRICT else self.lhs == self.rhs
        if not holds:
            wanted = "<" if self.kind == _STRICT else "=="
            raise CertificateFailure(
                f"pleijel monotonicity check '{self.name}' failed: "
                f"lhs={self.lhs!r} {wanted} rhs={self.rhs!r} does not hold"
            )

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "kind": self.kind,
        }


def _exact_check(name: str, lhs: Fraction, rhs: Fraction, kind: str = _STRICT) -> Check:
    """Decide a rational comparison exactly, then record it as floats."""
    holds = lhs < rhs if kind == _STRICT else lhs == rhs
    if not holds:
        wanted = "<" if kind == _STRICT else "=="
        raise CertificateFailure(
            f"pleijel monotonicity check '{name}' failed in exact "
            f"arithmetic: {lhs} {wanted} {rhs} does not hold"
        )
    return Check(name, float(lhs), float(rhs), kind)


@dataclass(frozen=True)
class MonotonicityCertificate:
    """Every link of the strict-decrease chain, evaluated at one dimension."""

    d: int
    checks: tuple[Check, ...]

    def __post_init__(self) -> None:
        _check_d(self.d, 4)
        names = [c.name for c in self.checks]
        if len(set(names)) != len(names):
            raise RangeError(f"duplicate check names in certificate: {names}")
        missing = _REQUIRED_CHECKS.difference(names)
        if missing:
            raise RangeError(
                f"certificate at d={self.d} missing checks: {sorted(missing)}"
            )

    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise RangeError(f"certificate at d={self.d} has no check {name!r}")

    def as_dict(self) -> dict:
        return {"d": self.d, "checks": [c.as_dict() for c in self.checks]}


def monotonicity_certificate(d: int) -> MonotonicityCertificate:
    """Certify gamma(d+1) < gamma(d) by checking the whole proof chain at d.

    Valid for d >= 4 (two of the algebraic links genuinely need it) up to
    d = 239 (the chain reads first zeros for dimensions d-1 .. d+1).
    """
    _check_d(d, 4)
    if d + 1 > D_MAX:
        raise RangeError(
            f"certificate at d={d} needs first zeros up to dimension "
            f"{d + 1}; supported d <= {D_MAX - 1}"
        )

    # First zeros at the three consecutive half-integer-spaced orders the
    # chain touches: order (dim)/2 - 1 for dim = d-1, d, d+1.
    j_dm1 = zeros.dirichlet_zero(0, d - 1, 1)
    j_d = zeros.dirichlet_zero(0, d, 1)
    j_dp1 = zeros.dirichlet_zero(0, d + 1, 1)
    ratio = _quotient(d)

    checks = []

    # Log-convexity of Gamma: the half-step ratio of Gamma values squared.
    gamma_step = math.exp(2.0 * (log_gamma(0.5 * d + 0.5) - log_gamma(0.5 * d)))
    checks.append(Check("gamma_eq", gamma_step, (d - 1) ** 2 / (2.0 * (d - 2))))

    # First-zero ratio at consecutive integer order steps, bounded by the
    # first-two-eigenvalue ratio of a cube; the instance with dimension
    # parameter d-1 is the one the interpolation below consumes.
    checks.append(Check("asb", j_dm1 / j_dp1, math.sqrt(1.0 - 3.0 / (d + 2.0))))

    # Convexity of the squared first zero in the order: the half-step ratio
    # is at most the average of the full-step ratio and 1.
    checks.append(
        Check(
            "convexity_step",
            (j_d / j_dp1) ** 2,
            0.5 * ((j_dm1 / j_dp1) ** 2 + 1.0),
        )
    )

    # The averaging above turns the asb bound 1 - 3/(d+2) into exactly
    # 1 - 3/(2(d+2)).
    checks.append(
        _exact_check(
            "interpolation_algebra",
            Fraction(1, 2) * (1 - Fraction(3, d + 2) + 1),
            1 - Fraction(3, 2 * (d + 2)),
            _EQUAL,
        )
    )

    # End-to-end half-step control used in the quotient bound.
    checks.append(
        Check("control", (j_d / j_dp1) ** 2, 1.0 - 3.0 / (2.0 * (d + 2.0)))
    )

    # Two-sided first-zero estimates at the order entering the quotient.
    nu = 0.5 * (d - 1.0)
    checks.append(Check("jest_lower", math.sqrt(nu * (nu + 2.0)), j_dp1))
    checks.append(
        Check(
            "jest_upper",
            j_dp1,
            math.sqrt(nu + 1.0) * (math.sqrt(nu + 2.0) + 1.0),
        )
    )

    # Assembled bound on the quotient itself.
    assembled = (
        2.0
        / math.sqrt((d - 1.0) * (d + 3.0))
        * ((d + 1.0) / d) ** 2
        * (d - 1.0) ** 2
        / (d - 2.0)
        * (1.0 - 3.0 / (2.0 * (d + 2.0))) ** (0.5 * d)
    )
    checks.append(Check("gamma_ratio_bound", ratio, assembled))

    # (1 - a/x)^x < e^(-a) with x = (d+2)/2, a = 3/4.
    checks.append(
        Check(
            "exp_bound",
            (1.0 - 3.0 / (2.0 * (d + 2.0))) ** (0.5 * d + 1.0),
            math.exp(-0.75),
        )
    )

    # (d+1/2)^2 < (d-1)(d+3), exact for d >= 4.
    checks.append(
        _exact_check(
            "interval_bound",
            Fraction(2 * d + 1, 2) ** 2,
            Fraction((d - 1) * (d + 3)),
        )
    )

    # The remaining rational factor is below 1 + 5/d, exact for d >= 4.
    poly = (
        Fraction((d + 1) ** 2, d**2)
        * Fraction((d - 1) ** 2, d - 2)
        * Fraction(4 * (d + 2), (2 * d + 1) ** 2)
    )
    checks.append(_exact_check("poly_bound", poly, Fraction(d + 5, d)))

    if d == 4:
        # Spot value anchoring the decreasing majorant of the difference
        # polynomial: -4 + 39/d^2 + 41/d^3 at d = 4 is exactly -59/64.
        checks.append(
            _exact_check(
                "poly_spot",
                Fraction(-4) + Fraction(39, 16) + Fraction(41, 64),
                Fraction(-59, 64),
                _EQUAL,
            )
        )

    # Chain conclusion before the numeric constant: quotient < (2/e^0.75)(1+5/d).
    checks.append(
        Check("combined_bound", ratio, 2.0 * math.exp(-0.75) * (1.0 + 5.0 / d))
    )

    # 2/e^(3/4) = 0.9447... < 95/100.
    checks.append(Check("e34_lt_95", 2.0 * math.exp(-0.75), 0.95))

    # The closing bound (95/100)(1+5/d) is decreasing, exactly 1 at d = 95
    # and strictly below 1 from d = 96 on.
    closing = Fraction(95, 100) * (1 + Fraction(5, d))
    if d == 95:
        checks.append(
            _exact_check("final_bound_equality", closing, Fraction(1), _EQUAL)
        )
    elif d >= 96:
        checks.append(_exact_check("ninetyfive_bound_lt_1", closing, Fraction(1)))

    # And the certified conclusion: the computed quotient is below 1.
    checks.append(Check("final_lt_1", ratio, 1.0))

    return MonotonicityCertificate(d, tuple(checks))


# ---------------------------------------------------------------------------
# Neumann-side bound


def neumann_pleijel_bound(d: int) -> float:
    """Asymptotic nodal-count bound gamma(d-1) for the Neumann ball, d >= 3.

    The binding constant is the one for dimension d-1; this relies on the
    strict decrease of gamma, which is asserted here for the pair involved.
    """
    _check_d(d, 3)
    value = gamma(d - 1)
    if not gamma(d) < value:
        raise CertificateFailure(
            f"pleijel neumann bound at d={d}: gamma({d}) >= gamma({d - 1}), "
            f"strict decrease violated"
        )
    return value


# ---------------------------------------------------------------------------
# serialization


def six_decimals(x: float) -> str:
    """x rounded to 6 decimal places, halves away from zero."""
    x = float(x)
    if not math.isfinite(x):
        raise RangeError(f"cannot round non-finite value {x!r}")
    return str(Decimal(x).quantize(Decimal("0.000001"), rounding=ROUND_HALF_UP))


def rows_to_csv(rows: list[PleijelRow]) -> str:
    """CSV with columns d, gamma, quotient (empty on the last row)."""
    lines = ["d,gamma,quotient"]
    for row in rows:
        quotient = "" if row.quotient_next is None else format_float(row.quotient_next)
        lines.append(f"{row.d},{format_float(row.gamma)},{quotient}")
    return "\n".join(lines) + "\n"


def curve_to_plot_json(points: list[tuple[int, float]], indent: int | None = None) -> str:
    """Plot payload for the quotient curve: x, y and the limit line 2/e."""
    payload = {
        "x": [d for d, _ in points],
        "y": [q for _, q in points],
        "hline": TWO_OVER_E,
    }
    return dumps(payload, indent=indent)
