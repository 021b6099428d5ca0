import random

import sympy
import pytest

from derbar.bar import (BarWord, NotApplicable, bar_boundary, bar_differential, bar_rank_formula, bar_term_basis,
                        coker_series_coefficients, composite_witnesses, d3_block_signs, der_presentation_matrix,
                        der_series_rational, euler_identity, generators_check, linearity_check,
                        poincare_coefficients, series_coefficients, truncate_to_der, verify_bar)
from derbar.determinantal import build_generic
from derbar.homological import label, variety_point
from derbar.poly import PolyMatrix, x
from oracles import load_tsv

P = 2**31 - 1


def sympy_series(num, den, count):
    t = sympy.Symbol("t")
    expr = sum(c * t**k for k, c in enumerate(num)) / sum(c * t**k for k, c in enumerate(den))
    s = sympy.series(expr, t, 0, count).removeO()
    return [int(s.coeff(t, k)) for k in range(count)]


class TestWords:
    def test_degree(self):
        w = BarWord.make([label("e", 1), label("T", 2)], label("a", 3))
        assert w.degree == 2 + 3 + 0 and w.p == 2 and w.a_degrees == (1, 2)
        assert str(w) == "[e[1]|T[2]]a[3]"
        assert str(BarWord.make([], label("b", 1, 2))) == "b[1,2]"

    def test_B2_order_n2(self):
        names = [str(w) for w in bar_term_basis(2, build_generic(2))]
        assert names[:3] == ["c[2,1]", "c[1,2]", "c[2,2]"]
        assert names[3:] == [f"[e[{i}]]a[{j}]" for i in (1, 2, 3) for j in (1, 2, 3)]

    def test_low_terms(self):
        g = build_generic(2)
        assert [str(w) for w in bar_term_basis(0, g)] == ["a[1]", "a[2]", "a[3]"]
        assert len(bar_term_basis(1, g)) == 6
        with pytest.raises(ValueError):
            bar_term_basis(-1, g)
        with pytest.raises(ValueError):
            bar_differential(0, g)


class TestRanks:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_enumeration_matches_formula(self, n):
        g = build_generic(n)
        top = 6 if n < 4 else 5
        for r in range(top + 1):
            assert len(bar_term_basis(r, g)) == bar_rank_formula(r, n)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_formula_matches_poincare_recurrence(self, n):
        coeffs = poincare_coefficients(n, 8)
        assert [bar_rank_formula(r + 2, n) for r in range(9)] == coeffs
        for i in range(2, 9):
            assert coeffs[i] == coeffs[i - 1] + n * coeffs[i - 2]

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_poincare_against_sympy(self, n):
        num, den = der_series_rational(n)
        assert poincare_coefficients(n, 7) == sympy_series(num, den, 8)
        assert sympy_series([n * (n + 1) * 2, n * (n + 1) * n], [1, -1, -n], 8) == poincare_coefficients(n, 7)

    def test_n2_sequence(self):
        assert poincare_coefficients(2, 4) == [12, 24, 48, 96, 192]
        assert poincare_coefficients(3, 4) == [24, 60, 132, 312, 708]

    @pytest.mark.parametrize("n", [2, 3])
    def test_coker_series(self, n):
        assert coker_series_coefficients(n, 7) == sympy_series([n + 1, (n + 1) * (n - 1)], [1, -1, -n], 7)
        assert coker_series_coefficients(n, 7) == [bar_rank_formula(r, n) for r in range(7)]

    def test_series_errors_and_fractions(self):
        with pytest.raises(ValueError):
            series_coefficients([1], [0, 1], 3)
        assert series_coefficients([1], [2], 2) == [sympy.Rational(1, 2), 0]
        with pytest.raises(ValueError):
            poincare_coefficients(2, -1)


class TestDifferentials:
    def test_d1_is_jacobian(self):
        rows, cols, entries = load_tsv("jacobian_n2.tsv")
        assert bar_differential(1, build_generic(2)).entries == entries

    def test_der_presentation_golden(self):
        rows, cols, entries = load_tsv("der_presentation_n2.tsv")
        m = der_presentation_matrix(build_generic(2))
        assert m.row_labels == rows and m.col_labels == cols and m.entries == entries

    @pytest.mark.parametrize("n", [2, 3])
    def test_d3_blocks(self, n):
        rep = d3_block_signs(build_generic(n))
        assert rep.passed
        assert rep.params["block_signs"] == {"J^T": 1, "phi2": 1, "M11": 1, "M20": -1}

    def test_boundary_of_unit_word(self):
        g = build_generic(2)
        w = BarWord.make([label("e", 1)], label("a", 2))
        bd = bar_boundary(w, g)
        # internal term d(e1) lands in A_0 and is dropped; only the action e1.a2 survives
        assert all(v.p == 0 for v in bd.coords)

    def test_verify_n2(self):
        rep = verify_bar(5, build_generic(2), points=20)
        assert rep.passed, rep.witnesses[:3]

    def test_verify_n3_low(self):
        assert verify_bar(3, build_generic(3), points=20).passed

    def test_argument_errors(self):
        g = build_generic(2)
        with pytest.raises(ValueError):
            verify_bar(1, g)
        with pytest.raises(ValueError):
            verify_bar(3, g, points=0)

    def test_sign_flip_is_detected(self):
        g = build_generic(2)
        d2, d3 = bar_differential(2, g), bar_differential(3, g)
        i, j, e = next(iter(d3.nonzero_entries()))
        flipped = [row[:] for row in d3.entries]
        flipped[i][j] = -e
        bad = PolyMatrix(flipped, d3.row_labels, d3.col_labels)
        rng = random.Random(0)
        pts = [variety_point(2, rng, P) for _ in range(20)]
        witnesses, _ = composite_witnesses(d2, bad, g.ideal_gens, pts, P)
        assert witnesses
        assert all(not w["normal_form_zero"] and not w["vanishes_on_points"] for w in witnesses)
        assert composite_witnesses(d2, d3, g.ideal_gens, pts, P)[0] == []

    def test_d1d2_not_exact_over_q(self):
        # the L columns compose to zero only modulo the ideal
        g = build_generic(2)
        comp = bar_differential(1, g) @ bar_differential(2, g)
        nonzero_cols = {comp.col_labels[j].p for _, j, _ in comp.nonzero_entries()}
        assert nonzero_cols == {1}


class TestGenerators:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_count_and_annihilation(self, n):
        rep = generators_check(build_generic(n))
        assert rep.passed and rep.params["count"] == 2 * n * (n + 1)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_euler(self, n):
        assert euler_identity(build_generic(n)).passed

    def test_names_n2(self):
        names = truncate_to_der(build_generic(2)).names()
        assert names[:3] == ["V[2,1]", "V[1,2]", "B[2]"] and names[-1] == "L[3,3]"

    def test_sample_generator(self):
        gens = dict(truncate_to_der(build_generic(2)).generators)
        assert str(gens["V[2,1]"]) == "x[2,1]*d/dx[1,1] + x[2,2]*d/dx[1,2] + x[2,3]*d/dx[1,3]"


class TestLinearity:
    def test_n2(self):
        assert linearity_check(build_generic(2), 5).passed

    def test_not_applicable(self):
        with pytest.raises(NotApplicable):
            linearity_check(build_generic(3))

    def test_negative_control(self):
        m = PolyMatrix([[x(1, 1), x(1, 1) * x(2, 2)], [2 * x(1, 2), -x(2, 3)]])
        rep = linearity_check(build_generic(2), matrices=[m])
        assert len(rep.witnesses) == 2
