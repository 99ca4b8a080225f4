"""Courant-sharpness decisions for ball eigenvalues.

An eigenvalue with minimal label n is Courant sharp when some eigenfunction
has exactly n nodal domains. The decision pipeline mirrors the structure of
the underlying proofs: the first two labels are always sharp; repeated
radial indices are excluded by an angular-twist argument (no numerics);
higher radial modes are excluded by the radial ordering inequality; for
d >= 3 the degree series is excluded by comparing a symmetry bound on nodal
counts against the label; on the disc the explicit product count decides
directly. Every numeric exclusion carries strict-inequality certificates
with both sides evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import _format, zeros
from .errors import CertificateFailure, RangeError, Unsupported
from .spectrum import (
    BoundaryCondition,
    EigenvalueRecord,
    _binom,
    _coerce_bc,
    enumerate_spectrum,
)


class SharpnessStatus(Enum):
    SHARP = "Sharp"
    EXCLUDED_TWIST = "ExcludedTwist"
    EXCLUDED_RADIAL_ORDERING = "ExcludedRadialOrdering"
    EXCLUDED_SPHERE_LABEL = "ExcludedSphereLabel"
    EXCLUDED_DIRECT_COUNT = "ExcludedDirectCount"


@dataclass(frozen=True)
class Certificate:
    """A strict inequality lhs < rhs with both sides evaluated."""

    name: str
    lhs: float
    rhs: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lhs) and math.isfinite(self.rhs)):
            raise CertificateFailure(
                f"certificate {self.name} has non-finite sides"
            )
        if not self.lhs < self.rhs:
            raise CertificateFailure(
                f"certificate {self.name} is not strict: "
                f"{self.lhs!r} >= {self.rhs!r}"
            )

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class SphereLabeling:
    """Label bookkeeping for the degree-l sphere eigenvalue in R^d."""

    l: int
    d: int
    min_label: int
    symmetry_bound: int

    def __post_init__(self) -> None:
        if not isinstance(self.l, int) or self.l < 0:
            raise RangeError(f"l must be a nonnegative int, got {self.l!r}")
        if not isinstance(self.d, int) or self.d < 3:
            raise RangeError(f"d must be an int >= 3, got {self.d!r}")
        if self.min_label != _min_label(self.l, self.d):
            raise RangeError("min_label does not match the labeling formula")
        want_sym = 2 * (_binom(self.l + self.d - 3, self.d - 1) + 1)
        if self.symmetry_bound != want_sym:
            raise RangeError("symmetry_bound does not match 2*(C+1)")


@dataclass(frozen=True)
class SharpnessVerdict:
    """Decision for one eigenvalue block, with its numeric evidence."""

    record: EigenvalueRecord
    status: SharpnessStatus
    mu: int | None
    certificate: tuple[Certificate, ...]

    def __post_init__(self) -> None:
        if self.status is SharpnessStatus.SHARP:
            if self.mu != self.record.label_first:
                raise CertificateFailure(
                    "Sharp verdict requires a nodal count equal to the label"
                )
            if self.certificate:
                raise CertificateFailure(
                    "Sharp is an equality; it carries no inequality entries"
                )

    def as_dict(self) -> dict:
        return {
            "l": self.record.l,
            "m": self.record.m,
            "bc": self.record.bc.value,
            "status": self.status.value,
            "label_first": self.record.label_first,
            "mu": self.mu,
            "certificate": [c.as_dict() for c in self.certificate],
        }


def nodal_count_disc(l: int, m: int, bc, d: int = 2) -> int:
    """Nodal domains of the (l, m) disc eigenfunction: m bands x 2l sectors."""
    _coerce_bc(bc)  # both conditions share the product structure
    if not isinstance(l, int) or l < 0:
        raise RangeError(f"l must be a nonnegative int, got {l!r}")
    if not isinstance(m, int) or m < 1:
        raise RangeError(f"m must be a positive int, got {m!r}")
    if d != 2:
        raise Unsupported(
            "per-eigenfunction nodal counts are only computed on the disc "
            f"(d=2); got d={d!r}"
        )
    return m if l == 0 else 2 * l * m


def _min_label(l: int, d: int) -> int:
    if l == 0:
        return 1
    if l == 1:
        return 2
    return 1 + _binom(l + d - 2, d - 1) + _binom(l + d - 3, d - 1)


def sphere_labeling(l: int, d: int) -> SphereLabeling:
    """Minimal label and nodal-count symmetry bound on the (d-1)-sphere."""
    if not isinstance(d, int) or d < 3:
        raise RangeError(f"d must be an int >= 3, got {d!r}")
    if not isinstance(l, int) or l < 0:
        raise RangeError(f"l must be a nonnegative int, got {l!r}")
    return SphereLabeling(
        l=l, d=d,
        min_label=_min_label(l, d),
        symmetry_bound=2 * (_binom(l + d - 3, d - 1) + 1),
    )


def _sphere_checks(d: int, lmax: int) -> list[Certificate]:
    """Strict certificates excluding every degree l >= 2 on the sphere."""
    checks = []
    for l in range(2, lmax + 1):
        lab = sphere_labeling(l, d)
        checks.append(Certificate(
            name=f"reduced_binomial[l={l}]",
            lhs=1, rhs=_binom(l + d - 3, d - 2),
        ))
        checks.append(Certificate(
            name=f"symmetry_vs_min_label[l={l}]",
            lhs=lab.symmetry_bound, rhs=lab.min_label,
        ))
    return checks


def sphere_courant_sharp(d: int, lmax: int = 50) -> set[int]:
    """Courant-sharp labels on the (d-1)-sphere: always {1, 2}.

    Degrees l = 0, 1 give labels 1 and 2 (sharp); every degree up to lmax
    is excluded by strict certificates, and the excluding binomial is
    increasing in l, so larger degrees are immediate.
    """
    if not isinstance(d, int) or d < 3:
        raise RangeError(f"d must be an int >= 3, got {d!r}")
    if not isinstance(lmax, int) or lmax < 2:
        raise RangeError(f"lmax must be an int >= 2, got {lmax!r}")
    _sphere_checks(d, lmax)  # raises CertificateFailure on any violation
    return {1, 2}


def _verdict(rec: EigenvalueRecord, bc: BoundaryCondition,
             lam_11: float, lam_02: float) -> SharpnessVerdict:
    d, l, m = rec.d, rec.l, rec.m
    label = rec.label_first
    mu = nodal_count_disc(l, m, bc) if d == 2 else None

    if label <= 2:
        if d == 2 and mu != label:
            raise CertificateFailure(
                f"disc count mu={mu} disagrees with low label {label}"
            )
        return SharpnessVerdict(rec, SharpnessStatus.SHARP, label, ())
    if l >= 1 and m >= 2:
        # a repeated radial index admits an angular twist that merges
        # domains, so the count always stays below the label: rule only
        return SharpnessVerdict(rec, SharpnessStatus.EXCLUDED_TWIST, mu, ())
    if l == 0 and m >= 2:
        certs = [Certificate("radial_ordering", lam_11, lam_02)]
        if d == 2:
            certs.append(Certificate("count_vs_label", mu, label))
        return SharpnessVerdict(
            rec, SharpnessStatus.EXCLUDED_RADIAL_ORDERING, mu, tuple(certs))
    if l >= 2 and m == 1:
        if d == 2:
            if mu == label:
                return SharpnessVerdict(rec, SharpnessStatus.SHARP, mu, ())
            cert = Certificate("count_vs_label", mu, label)
            return SharpnessVerdict(
                rec, SharpnessStatus.EXCLUDED_DIRECT_COUNT, mu, (cert,))
        lab = sphere_labeling(l, d)
        certs = (
            Certificate(f"reduced_binomial[l={l}]",
                        1, _binom(l + d - 3, d - 2)),
            Certificate(f"symmetry_vs_label[l={l}]",
                        lab.symmetry_bound, label),
        )
        return SharpnessVerdict(
            rec, SharpnessStatus.EXCLUDED_SPHERE_LABEL, mu, certs)
    raise CertificateFailure(
        f"mode (l={l}, m={m}) has label {label}: the expected low-spectrum "
        f"ordering failed"
    )


def courant_sharp_ball(d: int, bc, lmax: int = 8,
                       mmax: int = 4) -> list[SharpnessVerdict]:
    """Verdicts for every mode with l <= lmax, m <= mmax, in label order."""
    bc = _coerce_bc(bc)
    zeros._check_l_d(0, d)
    if not isinstance(lmax, int) or lmax < 1:
        raise RangeError(f"lmax must be an int >= 1, got {lmax!r}")
    if not isinstance(mmax, int) or mmax < 1:
        raise RangeError(f"mmax must be an int >= 1, got {mmax!r}")
    finder = (zeros.dirichlet_zero if bc is BoundaryCondition.DIRICHLET
              else zeros.neumann_zero)
    z_top = finder(lmax, d, mmax)  # zeros increase in both l and m
    table = enumerate_spectrum(d, bc, z_top * z_top)
    lam_11 = finder(1, d, 1) ** 2
    lam_02 = finder(0, d, 2) ** 2
    verdicts = [
        _verdict(table.record_for(l, m), bc, lam_11, lam_02)
        for l in range(0, lmax + 1)
        for m in range(1, mmax + 1)
    ]
    verdicts.sort(key=lambda v: v.record.label_first)
    return verdicts


def sharp_labels(verdicts: list[SharpnessVerdict]) -> set[int]:
    """Labels of the Sharp verdicts in a report."""
    return {v.record.label_first for v in verdicts
            if v.status is SharpnessStatus.SHARP}


def verdicts_to_json(verdicts: list[SharpnessVerdict],
                     indent: int | None = 2) -> str:
    return _format.dumps([v.as_dict() for v in verdicts], indent=indent)
