from fractions import Fraction

import pytest

from prymsv.errors import BRequired
from prymsv.eigencheck import (
    CYL_CASES,
    SPLIT_CASES,
    area_ratio,
    build_T,
    build_T_triple,
    cyl_ratios,
    mat_mul,
    mat_scale_plus,
    pairing_form,
    ratio_height,
    ratio_length,
    row_times_matrix,
    split_matrices,
    split_period_vector,
    split_period_vector_uncorrected,
    verification_csv,
    verification_rows,
    verify_cyl_IA,
    verify_selfadjoint,
    verify_split_endo,
    verify_triple,
)
from prymsv.exactq import QuadComplex, QuadNum, lambda_of
from prymsv.prototypes import (
    CylProto,
    SplitProto,
    TripleProto,
    enumerate_cyl,
    enumerate_split,
    enumerate_triple,
)

F = Fraction


def test_selfadjoint_basic():
    T = build_T(1, 0, 1, 0)
    assert verify_selfadjoint(T, pairing_form(1, 2))
    # Breaking one entry destroys self-adjointness.
    T[0][2] += 1
    assert not verify_selfadjoint(T, pairing_form(1, 2))


class TestCylinder:
    @pytest.mark.parametrize("quad", [(1, 0, 1, 0), (2, 0, 1, 1), (1, 0, 2, 1), (2, 1, 2, 1)])
    def test_examples(self, quad):
        assert verify_cyl_IA(CylProto(*quad))

    def test_ratios_for_unit_prototype(self):
        p = CylProto(1, 0, 1, 0)  # D = 8, lambda = sqrt(2)
        lam = lambda_of(8, 0)
        assert ratio_length(p) == QuadNum.rational(1, 8) / lam
        assert ratio_length(p) == ratio_height(p)
        # a/lambda = 1/sqrt(2) = sqrt(8)/4.
        assert ratio_length(p) == QuadNum(0, F(1, 4), 8)

    def test_case_names(self):
        p = CylProto(2, 0, 1, 1)
        assert set(cyl_ratios(p, "I.A")) == {"l3/l1", "(h2+h3)/(h1+h2)"}
        assert set(cyl_ratios(p, "I.B")) == {"(l3-l1)/l1", "(h2+h3)/(h1+h2+h3+h4)"}
        for case in CYL_CASES:
            vals = sorted(cyl_ratios(p, case).values())
            assert vals == sorted([ratio_length(p), ratio_height(p)])
        with pytest.raises(ValueError):
            cyl_ratios(p, "III.A")

    def test_perturbed_matrix_fails(self):
        # A perturbed generator is no longer self-adjoint, so the full
        # verification must reject it: emulate by checking directly.
        p = CylProto(2, 0, 1, 1)
        T = build_T(p.a, p.b, p.d, p.e)
        for i in range(4):
            for j in range(4):
                T2 = [row[:] for row in T]
                T2[i][j] += 1
                sa = verify_selfadjoint(T2, pairing_form(1, 2))
                quad = mat_mul(T2, T2) == mat_scale_plus(T2, p.e, 2 * p.a * p.d)
                assert not (sa and quad)


class TestTriple:
    @pytest.mark.parametrize("quad", [(1, 0, 1, 0), (2, 1, 1, 1), (3, 2, 1, -3)])
    def test_examples(self, quad):
        assert verify_triple(TripleProto(*quad))

    def test_unit_area_ratio(self):
        # (1,0,1,0): lambda = sqrt(2), ratio lambda^2/(lambda^2+2) = 1/2.
        assert area_ratio(TripleProto(1, 0, 1, 0)) == QuadNum(F(1, 2), 0, 8)

    def test_area_ratio_closed_form(self):
        for p in enumerate_triple(41):
            lam = lambda_of(p.D, p.e)
            sqrtD = QuadNum.sqrt_D(p.D)
            assert area_ratio(p) == (sqrtD + p.e) / (2 * sqrtD)
            r = area_ratio(p)
            assert QuadNum.rational(0, p.D) < r < QuadNum.rational(1, p.D)

    def test_quadratic_relation_example(self):
        # (4,0,1,-1) splitting-style quad reused as a plain matrix check:
        # T^2 = -T + 8*Id for the triple generator with e=-1, ad=4.
        T = build_T(4, 0, 1, -1)
        assert mat_mul(T, T) == mat_scale_plus(T, -1, 8)

    def test_perturbation_fails(self):
        p = TripleProto(2, 1, 1, 1)
        T = build_T_triple(p)
        for i in range(4):
            for j in range(4):
                T2 = [row[:] for row in T]
                T2[i][j] += 1
                sa = verify_selfadjoint(T2, pairing_form(1, 2))
                quad = mat_mul(T2, T2) == mat_scale_plus(T2, p.e, 2 * p.a * p.d)
                assert not (sa and quad)


class TestSplit:
    @pytest.mark.parametrize("quad", [(2, 0, 1, 0), (4, 0, 1, -1), (4, 0, 1, 1), (3, 0, 2, 0)])
    def test_all_cases_pass(self, quad):
        p = SplitProto(*quad)
        for case in SPLIT_CASES:
            assert verify_split_endo(p, case)

    def test_quadratic_relation(self):
        p = SplitProto(4, 0, 1, -1)
        for case in SPLIT_CASES:
            T, J = split_matrices(p, case)
            assert verify_selfadjoint(T, J)
            assert mat_mul(T, T) == mat_scale_plus(T, 2 * p.e, 4 * p.a * p.d)

    def test_pairings(self):
        p = SplitProto(2, 0, 1, 0)
        assert split_matrices(p, "w1")[1] == pairing_form(2, 1)
        assert split_matrices(p, "w2")[1] == pairing_form(2, 1)
        assert split_matrices(p, "w3")[1] == pairing_form(1, 2)
        with pytest.raises(ValueError):
            split_matrices(p, "w4")

    def test_w2_has_no_period_vector(self):
        assert split_period_vector(SplitProto(2, 0, 1, 0), "w2") is None

    def test_uncorrected_w1_vector_fails(self):
        # The vector (2l', 2il', a, id) misses the eigen-relation in its
        # second component by -2ad*i; the corrected (2l', il', a, id) passes.
        p = SplitProto(4, 0, 1, -1)
        D = p.Dprime
        T, _ = split_matrices(p, "w1")
        two_lam = QuadComplex.from_parts(2 * lambda_of(D, p.e), 0, D)

        bad = split_period_vector_uncorrected(p)
        diffs = [
            li - two_lam * vi
            for li, vi in zip(row_times_matrix(bad, T), bad)
        ]
        assert diffs[0].is_zero() and diffs[2].is_zero()
        assert not diffs[1].is_zero()
        assert diffs[1] == QuadComplex.from_parts(0, -2 * p.a * p.d, D)

        good = split_period_vector(p, "w1")
        assert all(
            (li - two_lam * vi).is_zero()
            for li, vi in zip(row_times_matrix(good, T), good)
        )

    def test_b_required(self):
        with pytest.raises(BRequired):
            verify_split_endo(SplitProto(4, 2, 4, -3), "w1")

    def test_perturbation_fails(self):
        p = SplitProto(2, 0, 1, 0)
        for case in SPLIT_CASES:
            T, J = split_matrices(p, case)
            for i in range(4):
                for j in range(4):
                    T2 = [row[:] for row in T]
                    T2[i][j] += 1
                    sa = verify_selfadjoint(T2, J)
                    quad = mat_mul(T2, T2) == mat_scale_plus(
                        T2, 2 * p.e, 4 * p.a * p.d
                    )
                    assert not (sa and quad)


class TestBatch:
    def test_rows_cover_all_kinds(self):
        rows = list(verification_rows(50))
        kinds = {r[1] for r in rows}
        assert kinds == {"cyl", "triple", "split"}
        assert all(r[4] for r in rows)
        ds = [D for D in range(5, 51) if D % 4 in (0, 1)]
        cyl_count = sum(1 for r in rows if r[1] == "cyl")
        assert cyl_count == sum(len(enumerate_cyl(D)) for D in ds)
        split_rows = [r for r in rows if r[1] == "split"]
        assert all(r[2].b == 0 for r in split_rows)
        assert len(split_rows) == 3 * sum(
            sum(1 for p in enumerate_split(D) if p.b == 0) for D in ds
        )

    def test_csv_shape(self):
        text = verification_csv(20)
        lines = text.splitlines()
        assert lines[0] == "D,kind,a,b,d,e,check,pass"
        assert all(line.endswith(",pass") for line in lines[1:])
        assert "8,cyl,1,0,1,0,IA,pass" in lines
