"""Divisor sums, degrees of the torus projection, and Euler characteristics.

The central quantity is ``m_D(e)``, the degree of the projection of the
``e``-slice of the triple-of-tori locus to the modular curve; summing it over
admissible ``e`` gives the Euler characteristic of W_D(0^3).  The chapter-one
table of known Euler characteristics for W_D(2) and W_D(4) is carried as
built-in data, since those values come from external computations.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .errors import (
    MissingTableEntry,
    ParseError,
    ResidueMismatch,
    SquareDiscriminant,
    UnsupportedResidue,
)
from .exactq import check_discriminant, is_square
from .prototypes import enumerate_triple_e

# ---------------------------------------------------------------------------
# Multiplicative helpers, backed by a growable smallest-prime-factor sieve.
# ---------------------------------------------------------------------------

_spf: list[int] = [0, 1]


def _ensure_sieve(n: int) -> None:
    global _spf
    if n < len(_spf):
        return
    size = max(2 * len(_spf), n + 1)
    spf = list(range(size))
    for p in range(2, math.isqrt(size - 1) + 1):
        if spf[p] == p:
            for multiple in range(p * p, size, p):
                if spf[multiple] == multiple:
                    spf[multiple] = p
    _spf = spf


def factorize(n: int) -> dict[int, int]:
    """Prime factorization ``{p: multiplicity}`` of ``n >= 1``."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    _ensure_sieve(n)
    out: dict[int, int] = {}
    while n > 1:
        p = _spf[n]
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out[p] = k
    return out


def sigma1(n: int) -> int:
    """Sum of the positive divisors of ``n``."""
    total = 1
    for p, k in factorize(n).items():
        total *= (p ** (k + 1) - 1) // (p - 1)
    return total


@lru_cache(maxsize=None)
def c_index(m: int) -> int:
    """The index of Gamma_0(m) in SL(2,Z): ``m * prod_{p | m} (1 + 1/p)``."""
    num, den = m, 1
    for p in factorize(m):
        num *= p + 1
        den *= p
    return num // den


def p1_count(m: int) -> int:
    """Number of points of the projective line over Z/m, by enumeration.

    Counts pairs ``(c, d)`` with ``gcd(c, d, m) = 1`` and divides by the
    number of units: the scaling action of (Z/m)* on such pairs is free, so
    every projective class contains exactly phi(m) pairs.  The pair count is
    tallied through the enumerated distribution of ``gcd(c, m)`` over one
    period (``gcd(c, d, m) = 1`` iff ``gcd(gcd(c, m), gcd(d, m)) = 1``).
    Independent of the multiplicative formula behind :func:`c_index`.
    """
    if m == 1:
        return 1
    gcd = math.gcd
    units = 0
    gcd_counts: dict[int, int] = {}
    for c in range(m):
        g = gcd(c, m)
        gcd_counts[g] = gcd_counts.get(g, 0) + 1
        if g == 1:
            units += 1
    pairs = sum(
        n1 * n2
        for g1, n1 in gcd_counts.items()
        for g2, n2 in gcd_counts.items()
        if gcd(g1, g2) == 1
    )
    assert pairs % units == 0
    return pairs // units


@lru_cache(maxsize=None)
def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = f**2 * q`` with ``q`` squarefree; returns ``(f, q)``."""
    f = q = 1
    for p, k in factorize(n).items():
        f *= p ** (k // 2)
        if k % 2:
            q *= p
    return f, q


# ---------------------------------------------------------------------------
# Degrees of the torus projection and the Euler characteristic of W_D(0^3).
# ---------------------------------------------------------------------------


def _check_admissible(D: int, e: int) -> None:
    check_discriminant(D)
    if e * e >= D:
        raise ResidueMismatch(f"need e^2 < D, got e = {e}, D = {D}")
    if (D - e * e) % 8 != 0:
        raise ResidueMismatch(f"e = {e} has e^2 !≡ D (mod 8) for D = {D}")


def m_D(D: int, e: int) -> int:
    """Degree of the projection of the ``e``-slice of the triple-tori locus.

    With ``(D - e^2)/8 = f^2 * q`` (``q`` squarefree), this is
    ``sum of c((D - e^2) / (8 r^2))`` over ``r | f`` with ``gcd(r, e) = 1``.
    The convention ``gcd(r, 0) = r`` means ``e = 0`` only admits ``r = 1``.
    """
    _check_admissible(D, e)
    n = (D - e * e) // 8
    f, _ = squarefree_decompose(n)
    total = 0
    for r in range(1, f + 1):
        if f % r == 0 and math.gcd(r, e) == 1:
            total += c_index(n // (r * r))
    return total


def m_D_bruteforce(D: int, e: int) -> int:
    """Oracle for :func:`m_D`: the number of triple prototypes with this ``e``."""
    _check_admissible(D, e)
    return len(enumerate_triple_e(D, e))


def is_12_primitive(D: int) -> bool:
    """True when no ``f > 1`` has ``f**2 | D`` with ``D / f**2 ≡ 0, 1, 4 (mod 8)``."""
    check_discriminant(D)
    f = 2
    while f * f <= D:
        if D % (f * f) == 0 and (D // (f * f)) % 8 in (0, 1, 4):
            return False
        f += 1
    return True


def _check_chi_D(D: int) -> None:
    check_discriminant(D)
    if D % 8 == 5:
        raise UnsupportedResidue(f"W_D(0^3) is empty for D = {D} ≡ 5 (mod 8)")
    if is_square(D):
        raise SquareDiscriminant(f"D = {D} is a square")
    if D <= 4:
        raise UnsupportedResidue(f"D = {D} too small")


def chi_W03(D: int) -> Fraction:
    """Euler characteristic of W_D(0^3): ``(-1/6) * sum of m_D(e)``."""
    _check_chi_D(D)
    bound = math.isqrt(D - 1)
    total = sum(
        m_D(D, e) for e in range(-bound, bound + 1) if (D - e * e) % 8 == 0
    )
    return Fraction(-total, 6)


def chi_W03_pm(D: int) -> Fraction:
    """Euler characteristic of either component W_{D+-}(0^3) for D ≡ 1 (mod 8)."""
    _check_chi_D(D)
    if D % 8 != 1:
        raise UnsupportedResidue(f"components only split for D ≡ 1 (mod 8), got {D}")
    return chi_W03(D) / 2


# ---------------------------------------------------------------------------
# The table of external Euler characteristics (chapter-one data).
# ---------------------------------------------------------------------------

_W4, _W2, _W03 = "w4", "w2", "w03"

# chi values for W_D(4), W_D(2), W_D(0^3); None marks a nonexistent locus.
_BUILTIN_ROWS: dict[int, tuple[Fraction | None, Fraction, Fraction | None]] = {
    5: (None, Fraction(-3, 10), None),
    8: (Fraction(-12, 5), Fraction(-3, 4), Fraction(-1, 6)),
    12: (Fraction(-5, 6), Fraction(-3, 2), Fraction(-1, 3)),
    13: (None, Fraction(-3, 2), None),
    17: (Fraction(-10, 3), Fraction(-3), Fraction(-4, 3)),
    20: (Fraction(-5, 2), Fraction(-3), Fraction(-1)),
    21: (None, Fraction(-3), None),
    24: (Fraction(-5, 2), Fraction(-9, 2), Fraction(-1)),
    28: (Fraction(-10, 3), Fraction(-6), Fraction(-4, 3)),
    29: (None, Fraction(-9, 2), None),
    32: (Fraction(-5), Fraction(-6), Fraction(-2)),
    33: (Fraction(-10), Fraction(-9), Fraction(-4)),
    37: (None, Fraction(-15, 6), None),
    40: (Fraction(-35, 6), Fraction(-21, 2), Fraction(-7, 3)),
    41: (Fraction(-40, 3), Fraction(-12), Fraction(-16, 3)),
    44: (Fraction(-35, 6), Fraction(-21, 2), Fraction(-7, 3)),
    45: (None, Fraction(-6), None),
    48: (Fraction(-10), Fraction(-12), Fraction(-4)),
}


@dataclass(frozen=True)
class EulerTable:
    """Known Euler characteristics keyed by discriminant.

    Rows carry ``chi(W_D(4))``, ``chi(W_D(2))`` and, as a cross-check only,
    ``chi(W_D(0^3))``; all present values are negative rationals.
    """

    rows: Mapping[int, tuple[Fraction | None, Fraction, Fraction | None]]

    def chi_w4(self, D: int) -> Fraction:
        return self._get(D, 0, "W_D(4)")

    def chi_w2(self, D: int) -> Fraction:
        return self._get(D, 1, "W_D(2)")

    def chi_w03_expected(self, D: int) -> Fraction:
        return self._get(D, 2, "W_D(0^3)")

    def _get(self, D: int, col: int, label: str) -> Fraction:
        if D not in self.rows:
            raise MissingTableEntry(f"no table row for D = {D}")
        value = self.rows[D][col]
        if value is None:
            raise MissingTableEntry(f"table has no chi({label}) entry at D = {D}")
        return value

    def discriminants(self) -> list[int]:
        return sorted(self.rows)


BUILTIN_TABLE = EulerTable(rows=dict(_BUILTIN_ROWS))


def _parse_cell(cell: str, where: str) -> Fraction | None:
    cell = cell.strip()
    if cell == "-":
        return None
    try:
        return Fraction(cell)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {cell!r} in {where}") from exc


def load_table(path: str) -> EulerTable:
    """Read a CSV table ``D,chi_w4,chi_w2,chi_w03`` and merge over built-ins.

    File rows override built-in rows on key collision (with a warning to
    stderr); ``-`` marks an absent entry.
    """
    rows = dict(_BUILTIN_ROWS)
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#") or line.lower().startswith("d,"):
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise ParseError(f"{path}:{lineno}: expected 4 columns, got {len(parts)}")
            where = f"{path}:{lineno}"
            try:
                D = int(parts[0])
            except ValueError as exc:
                raise ParseError(f"{where}: bad discriminant {parts[0]!r}") from exc
            w4 = _parse_cell(parts[1], where)
            w2 = _parse_cell(parts[2], where)
            w03 = _parse_cell(parts[3], where)
            if w2 is None:
                raise ParseError(f"{where}: chi_w2 may not be absent")
            if D in rows:
                print(f"warning: table row D={D} overrides built-in", file=sys.stderr)
            rows[D] = (w4, w2, w03)
    return EulerTable(rows=rows)


def lookup_chi(table: EulerTable, D: int, stratum: str) -> Fraction:
    """Look up ``chi(W_D(stratum))`` for stratum in ``{"4", "2", "03"}``."""
    columns = {"4": table.chi_w4, "2": table.chi_w2, "03": table.chi_w03_expected}
    if stratum not in columns:
        raise ParseError(f"unknown stratum {stratum!r}; expected one of 4, 2, 03")
    return columns[stratum](D)


def chi_report(dmin: int, dmax: int, table: EulerTable = BUILTIN_TABLE) -> str:
    """CSV report ``D,chi_w03_computed,chi_w03_table,match`` over a D range."""
    lines = ["D,chi_w03_computed,chi_w03_table,match"]
    for D in range(dmin, dmax + 1):
        if D % 4 not in (0, 1) or D % 8 == 5 or D <= 4 or is_square(D):
            continue
        computed = chi_W03(D)
        try:
            expected = table.chi_w03_expected(D)
            match = "yes" if computed == expected else "NO"
            expected_str = str(expected)
        except MissingTableEntry:
            expected_str, match = "-", "-"
        lines.append(f"{D},{computed},{expected_str},{match}")
    return "\n".join(lines)
