import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from prymsv.errors import (
    MissingTableEntry,
    NotDivisibleBy4,
    OutsideTheoremHypotheses,
    UnsupportedResidue,
)
from prymsv.euler import BUILTIN_TABLE
from prymsv.svconst import (
    CONJECTURED,
    b_D,
    check_conjecture,
    sv_constants,
    volume,
    volume_cover,
    volume_pm,
)

F = Fraction


@pytest.mark.parametrize(
    "D,b",
    [(20, 5), (32, 4), (40, 0), (8, 0), (12, 0), (16, 4), (24, 0), (28, 0), (36, 3), (44, 0), (48, 4), (52, 5), (68, 3)],
)
def test_b_D(D, b):
    assert b_D(D) == b


def test_b_D_needs_divisibility():
    with pytest.raises(NotDivisibleBy4):
        b_D(17)


@pytest.mark.parametrize("D,coeff", [(12, F(-1, 8)), (20, F(-3, 8))])
def test_volume(D, coeff):
    assert volume(D) == coeff


def test_volume_pm_17():
    assert volume_pm(17) == F(-1, 4)


def test_volume_cover_factor():
    assert volume_cover(12) == 24 * volume(12)
    assert volume_cover(17) == 24 * volume_pm(17)


def test_volume_routing():
    with pytest.raises(NotDivisibleBy4):
        volume(17)
    with pytest.raises(UnsupportedResidue):
        volume_pm(12)
    with pytest.raises(UnsupportedResidue):
        volume(13)


def test_volume_needs_table_entry():
    with pytest.raises(MissingTableEntry):
        volume(52)  # not in the built-in table


TABLE_DS = [12, 17, 20, 24, 28, 32, 33, 40, 41, 44, 48]


def test_universal_constants_on_table():
    for D in TABLE_DS:
        results = sv_constants(D)
        expected_components = ["plus", "minus"] if D % 8 == 1 else ["whole"]
        assert [r.component for r in results] == expected_components
        for r in results:
            assert r.constants == CONJECTURED
            assert r.c1 + r.c2 + r.c3 == 6


def test_sv_D48_pieces():
    (r,) = sv_constants(48)
    assert r.b_D == 4
    # Delta = chi2 + 4*chi2(12) + 9*chi03 = -12 - 6 - 36 = -54
    assert r.volume_pi2_coeff == F(-54, 36)
    assert r.c1 == 15 * F(-10) / F(-54)


def test_sv_plus_minus_equal():
    plus, minus = sv_constants(17)
    assert plus.constants == minus.constants
    assert plus.volume_pi2_coeff == minus.volume_pi2_coeff


@pytest.mark.parametrize("D,err", [(8, OutsideTheoremHypotheses), (5, OutsideTheoremHypotheses), (16, OutsideTheoremHypotheses), (13, OutsideTheoremHypotheses)])
def test_sv_hypotheses(D, err):
    with pytest.raises(err):
        sv_constants(D)


def test_result_json():
    plus = sv_constants(17)[0]
    data = json.loads(plus.to_json())
    assert data == {
        "D": 17,
        "component": "plus",
        "c1": "25/9",
        "c2": "3",
        "c3": "2/9",
        "volume_pi2": "-1/4",
        "b_D": None,
    }
    assert plus.volume_pi2_abs == F(1, 4)


def test_check_conjecture_report():
    report = check_conjecture(5, 48)
    assert report.all_match
    assert set(report.checked) == set(TABLE_DS)
    assert 8 in report.skipped  # too small
    assert 16 in report.skipped  # square
    assert 13 in report.skipped  # empty locus


positive_scalars = st.fractions(min_value=F(1, 20), max_value=50, max_denominator=20)


@given(positive_scalars)
def test_constants_are_scale_invariant(s):
    # Multiplying every chi input by a positive rational leaves (c1,c2,c3)
    # unchanged: recompute D=48 by hand with scaled inputs.
    chi4, chi2, chi2_q, chi03 = F(-10), F(-12), F(-3, 2), F(-4)
    delta = (chi2 + 4 * chi2_q) + 9 * chi03
    base = (15 * chi4 / delta, 9 * (chi2 + 4 * chi2_q) / delta, 3 * chi03 / delta)
    delta_s = s * (chi2 + 4 * chi2_q) + 9 * s * chi03
    scaled = (
        15 * s * chi4 / delta_s,
        9 * (s * chi2 + 4 * s * chi2_q) / delta_s,
        3 * s * chi03 / delta_s,
    )
    assert scaled == base
    (r,) = sv_constants(48, BUILTIN_TABLE)
    assert base == r.constants
