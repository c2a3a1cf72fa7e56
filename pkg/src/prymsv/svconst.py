"""Volumes and Siegel-Veech constants of the eigenform loci.

All quantities are exact rationals built from the Euler characteristics: the
external table supplies chi(W_D(2)) and chi(W_D(4)), while chi(W_D(0^3)) is
always recomputed from :func:`prymsv.euler.chi_W03` (the table's column is a
cross-check only).  Note the volume formulas evaluate to *negative*
coefficients of pi^2 with the table's negative chi inputs; they are returned
verbatim, with the absolute value exposed separately for reporting.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NotDivisibleBy4,
    OutsideTheoremHypotheses,
    SquareDiscriminant,
    UnsupportedResidue,
)
from .euler import BUILTIN_TABLE, EulerTable, chi_W03
from .exactq import check_discriminant, is_square

CONJECTURED = (Fraction(25, 9), Fraction(3), Fraction(2, 9))


def b_D(D: int) -> int:
    """The correction term attached to the quarter-discriminant.

    ``0`` if ``D/4 ≡ 2, 3 (mod 4)``; ``4`` if ``D/4 ≡ 0 (mod 4)``;
    ``3`` if ``D/4 ≡ 1 (mod 8)``; ``5`` if ``D/4 ≡ 5 (mod 8)``.
    """
    if D % 4 != 0:
        raise NotDivisibleBy4(f"b_D needs 4 | D, got {D}")
    q = D // 4
    if q % 4 in (2, 3):
        return 0
    if q % 4 == 0:
        return 4
    return 3 if q % 8 == 1 else 5


def _check_volume_D(D: int) -> None:
    check_discriminant(D)
    if is_square(D):
        raise SquareDiscriminant(f"D = {D} is a square")
    if D <= 4:
        raise UnsupportedResidue(f"D = {D} too small")
    if D % 8 == 5:
        raise UnsupportedResidue(
            f"the locus is empty for D = {D} ≡ 5 (mod 8)"
        )


def volume(D: int, table: EulerTable = BUILTIN_TABLE) -> Fraction:
    """Coefficient of pi^2 in the volume of the whole locus, for ``4 | D``.

    ``(1/36) * (chi(W_D(2)) + b_D * chi(W_{D/4}(2)) + 9 * chi(W_D(0^3)))``.
    The ``D/4`` term only enters when ``b_D != 0``.
    """
    _check_volume_D(D)
    if D % 4 != 0:
        raise NotDivisibleBy4(f"use volume_pm for odd D, got {D}")
    b = b_D(D)
    total = table.chi_w2(D) + 9 * chi_W03(D)
    if b != 0:
        total += b * table.chi_w2(D // 4)
    return total / 36


def volume_pm(D: int, table: EulerTable = BUILTIN_TABLE) -> Fraction:
    """Coefficient of pi^2 in the volume of either component, ``D ≡ 1 (mod 8)``.

    ``(1/72) * (2 * chi(W_D(2)) + 9 * chi(W_D(0^3)))``.
    """
    _check_volume_D(D)
    if D % 8 != 1:
        raise UnsupportedResidue(f"volume_pm needs D ≡ 1 (mod 8), got {D}")
    return (2 * table.chi_w2(D) + 9 * chi_W03(D)) / 72


def volume_cover(D: int, table: EulerTable = BUILTIN_TABLE) -> Fraction:
    """Coefficient of pi^2 for the degree-24 covering space: ``24 * volume``."""
    if D % 8 == 1:
        return 24 * volume_pm(D, table)
    return 24 * volume(D, table)


@dataclass(frozen=True)
class SVResult:
    """Siegel-Veech constants for one component of the discriminant-D locus."""

    D: int
    component: str  # "whole", "plus" or "minus"
    b_D: int | None
    volume_pi2_coeff: Fraction
    c1: Fraction
    c2: Fraction
    c3: Fraction

    @property
    def volume_pi2_abs(self) -> Fraction:
        return abs(self.volume_pi2_coeff)

    @property
    def constants(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c1, self.c2, self.c3)

    def matches_conjecture(self) -> bool:
        return self.constants == CONJECTURED

    def to_dict(self) -> dict:
        return {
            "D": self.D,
            "component": self.component,
            "c1": str(self.c1),
            "c2": str(self.c2),
            "c3": str(self.c3),
            "volume_pi2": str(self.volume_pi2_coeff),
            "b_D": self.b_D,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def sv_constants(D: int, table: EulerTable = BUILTIN_TABLE) -> list[SVResult]:
    """The exact Siegel-Veech constants ``(c1, c2, c3)``, one result per component.

    For ``4 | D`` (one component, with ``Delta`` the volume numerator):
    ``c1 = 15 chi(W_D(4)) / Delta``,
    ``c2 = 9 (chi(W_D(2)) + b_D chi(W_{D/4}(2))) / Delta``,
    ``c3 = 3 chi(W_D(0^3)) / Delta``.
    For ``D ≡ 1 (mod 8)`` (two equal components, ``Delta' = 2 chi(W_D(2)) +
    9 chi(W_D(0^3))``): ``c1 = 15 chi(W_D(4)) / Delta'``, ``c2 = 18
    chi(W_D(2)) / Delta'``, ``c3 = 3 chi(W_D(0^3)) / Delta'``.
    """
    try:
        _check_volume_D(D)
    except (SquareDiscriminant, UnsupportedResidue) as exc:
        raise OutsideTheoremHypotheses(str(exc)) from exc
    if D <= 9:
        raise OutsideTheoremHypotheses(f"the theorem needs D > 9, got {D}")
    chi03 = chi_W03(D)
    chi4 = table.chi_w4(D)
    chi2 = table.chi_w2(D)
    if D % 4 == 0:
        b = b_D(D)
        chi2_term = chi2 + (b * table.chi_w2(D // 4) if b != 0 else 0)
        delta = chi2_term + 9 * chi03
        return [
            SVResult(
                D=D,
                component="whole",
                b_D=b,
                volume_pi2_coeff=delta / 36,
                c1=15 * chi4 / delta,
                c2=9 * chi2_term / delta,
                c3=3 * chi03 / delta,
            )
        ]
    delta = 2 * chi2 + 9 * chi03
    vol = delta / 72
    return [
        SVResult(
            D=D,
            component=component,
            b_D=None,
            volume_pi2_coeff=vol,
            c1=15 * chi4 / delta,
            c2=18 * chi2 / delta,
            c3=3 * chi03 / delta,
        )
        for component in ("plus", "minus")
    ]


@dataclass(frozen=True)
class ConjectureReport:
    checked: list[int]
    skipped: dict[int, str]
    failures: list[int]

    @property
    def all_match(self) -> bool:
        return not self.failures


def check_conjecture(
    dmin: int, dmax: int, table: EulerTable = BUILTIN_TABLE
) -> ConjectureReport:
    """Check ``sv_constants(D) == (25/9, 3, 2/9)`` over a discriminant range.

    Discriminants outside the hypotheses, or missing from the table, are
    recorded as skipped with the reason.
    """
    checked: list[int] = []
    skipped: dict[int, str] = {}
    failures: list[int] = []
    for D in range(dmin, dmax + 1):
        if D % 4 not in (0, 1):
            continue
        try:
            results = sv_constants(D, table)
        except Exception as exc:  # noqa: BLE001 - reported per D
            skipped[D] = f"{type(exc).__name__}: {exc}"
            continue
        checked.append(D)
        if not all(r.matches_conjecture() for r in results):
            failures.append(D)
    return ConjectureReport(checked=checked, skipped=skipped, failures=failures)
