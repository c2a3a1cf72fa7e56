"""Exact q-expansion verification of the weight-3/2 vanishing identity.

The series ``f = G2(8z) * theta(z) + theta'(z)/(48 pi i)`` vanishes
identically; its coefficients admit a closed form as alternating divisor
sums, whose vanishing in turn encodes the alternating-sum identity for the
torus-projection degrees (``S_D = 0``).  Everything here is a finite, exact
rational computation: the derivative series is only ever stored with its
``1/(48 pi i)`` scaling, so no transcendental constant materializes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SquareDiscriminant, UnsupportedResidue
from .euler import m_D, sigma1, squarefree_decompose
from .exactq import check_discriminant, is_square


@dataclass(frozen=True)
class QSeries:
    """A q-expansion truncated at exponent ``N``, with sparse rational coefficients."""

    N: int
    coeffs: dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        bad = [n for n in self.coeffs if n < 0 or n > self.N]
        if bad:
            raise ValueError(f"exponents outside [0, {self.N}]: {bad[:5]}")

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs.get(n, Fraction(0))

    def __add__(self, other: "QSeries") -> "QSeries":
        N = min(self.N, other.N)
        coeffs = {n: c for n, c in self.coeffs.items() if n <= N}
        for n, c in other.coeffs.items():
            if n <= N:
                total = coeffs.get(n, Fraction(0)) + c
                if total:
                    coeffs[n] = total
                else:
                    coeffs.pop(n, None)
        return QSeries(N, coeffs)

    def __mul__(self, other: "QSeries") -> "QSeries":
        N = min(self.N, other.N)
        coeffs: dict[int, Fraction] = {}
        for n1, c1 in self.coeffs.items():
            if n1 > N:
                continue
            for n2, c2 in other.coeffs.items():
                n = n1 + n2
                if n > N:
                    continue
                total = coeffs.get(n, Fraction(0)) + c1 * c2
                if total:
                    coeffs[n] = total
                else:
                    coeffs.pop(n, None)
        return QSeries(N, coeffs)

    def support(self) -> list[int]:
        return sorted(n for n, c in self.coeffs.items() if c)


def psi(n: int) -> int:
    """The Dirichlet character of conductor 4: ``+1, -1, 0`` as ``n ≡ 1, 3, 0 (mod 2 or 4)``."""
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def theta_psi(N: int) -> QSeries:
    """The twisted theta series: coefficient ``psi(s) * s`` at ``n = s**2``."""
    coeffs: dict[int, Fraction] = {}
    s = 1
    while s * s <= N:
        if psi(s):
            coeffs[s * s] = Fraction(psi(s) * s)
        s += 1
    return QSeries(N, coeffs)


def theta_prime_scaled(N: int) -> QSeries:
    """The theta derivative scaled by ``1/(48 pi i)``: ``psi(s) * s**3 / 24`` at ``n = s**2``.

    Term-wise differentiation multiplies the ``s**2``-th term by ``2 pi i s**2``;
    the ``1/(48 pi i)`` normalization cancels the ``2 pi i`` exactly, leaving
    rational coefficients.
    """
    coeffs: dict[int, Fraction] = {}
    s = 1
    while s * s <= N:
        if psi(s):
            coeffs[s * s] = Fraction(psi(s) * s ** 3, 24)
        s += 1
    return QSeries(N, coeffs)


def g2_8(N: int) -> QSeries:
    """The weight-2 Eisenstein series at ``8z``: ``-1/24`` at 0, ``sigma1(k)`` at ``8k``."""
    coeffs: dict[int, Fraction] = {0: Fraction(-1, 24)}
    for k in range(1, N // 8 + 1):
        coeffs[8 * k] = Fraction(sigma1(k))
    return QSeries(N, coeffs)


def f_coeffs(N: int) -> QSeries:
    """The combination ``g2_8 * theta_psi + theta_prime_scaled`` up to exponent ``N``."""
    return g2_8(N) * theta_psi(N) + theta_prime_scaled(N)


def c_n_closed(n: int) -> Fraction:
    """Closed form of the ``n``-th coefficient of :func:`f_coeffs`.

    Zero unless ``n ≡ 1 (mod 8)``; an alternating divisor sum over odd
    ``e < sqrt(n)`` otherwise, with an extra polynomial term when ``n`` is a
    perfect square.
    """
    if n % 8 != 1:
        return Fraction(0)
    total = Fraction(0)
    root = math.isqrt(n)
    bound = root if root * root == n else root + 1
    for e in range(1, bound, 2):
        total += psi(e) * e * sigma1((n - e * e) // 8)
    if root * root == n:
        total += Fraction(psi(root) * (root ** 3 - root), 24)
    return total


@dataclass(frozen=True)
class VanishingReport:
    N: int
    violations: list[int]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> str:
        return json.dumps({"N": self.N, "violations": self.violations})


def verify_vanishing(N: int) -> VanishingReport:
    """Check that every coefficient of ``f`` up to ``N`` is zero and matches the closed form."""
    series = f_coeffs(N)
    violations = sorted(
        set(series.support())
        | {n for n in range(1, N + 1, 8) if c_n_closed(n) != series[n]}
    )
    return VanishingReport(N=N, violations=violations)


def S_D(D: int) -> Fraction:
    """The alternating degree sum ``sum over odd 0 < e < sqrt(D)`` of ``(-1)^((e-1)/2) e m_D(e)``.

    Vanishes for every non-square ``D ≡ 1 (mod 8)``.
    """
    check_discriminant(D)
    if D % 8 != 1:
        raise UnsupportedResidue(f"S_D needs D ≡ 1 (mod 8), got {D}")
    if is_square(D):
        raise SquareDiscriminant(f"D = {D} is a square")
    total = Fraction(0)
    for e in range(1, math.isqrt(D) + 1, 2):
        total += psi(e) * e * m_D(D, e)
    return total


def S_D_sigma(D: int) -> Fraction:
    """The same alternating sum with ``sigma1((D - e^2)/8)`` in place of ``m_D(e)``.

    Agrees with :func:`S_D` exactly when ``D`` admits no square divisor
    (the degrees then reduce to plain divisor sums).
    """
    total = Fraction(0)
    for e in range(1, math.isqrt(D) + 1, 2):
        if (D - e * e) % 8 == 0:
            total += psi(e) * e * sigma1((D - e * e) // 8)
    return total


@dataclass(frozen=True)
class RecursionReport:
    D: int
    f: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def verify_S_recursion(D: int) -> RecursionReport:
    """Verify the divisor recursion tying the sigma1 sum to the ``S`` values.

    With ``D = f**2 * D0`` (``D0`` squarefree, necessarily ``≡ 1 (mod 8)``):
    ``sum over odd e of psi(e) e sigma1((D - e^2)/8)`` equals
    ``sum over r | f of psi(r) r S_{D/r^2}``.
    """
    check_discriminant(D)
    if D % 8 != 1:
        raise UnsupportedResidue(f"recursion needs D ≡ 1 (mod 8), got {D}")
    if is_square(D):
        raise SquareDiscriminant(f"D = {D} is a square")
    f, _ = squarefree_decompose(D)
    rhs = Fraction(0)
    for r in range(1, f + 1):
        if f % r == 0:
            rhs += psi(r) * r * S_D(D // (r * r))
    return RecursionReport(D=D, f=f, lhs=S_D_sigma(D), rhs=rhs)
