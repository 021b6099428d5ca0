import json
import random

import pytest

from derbar.coker import build_U
from derbar.determinantal import build_generic, jacobian_transpose
from derbar.hilbert_burch import build_hilbert_burch
from derbar.homological import (UNIT, BasisLabel, ChainElement, GradedComplex, InvalidLabel,
                                VerificationReport, be_condition_one, compose_check, label,
                                minimality_check, rank_mod_p, rank_probe, variety_point)
from derbar.poly import ONE, ZERO, PolyMatrix, Polynomial, x

P = 2**31 - 1


class TestLabels:
    def test_c11_rejected(self):
        with pytest.raises(InvalidLabel):
            label("c", 1, 1)

    def test_unknown_kind(self):
        with pytest.raises(InvalidLabel):
            BasisLabel("z", (1,))

    def test_degrees_and_text(self):
        assert (UNIT.degree, label("e", 2).degree, label("T", 1).degree) == (0, 1, 2)
        assert (label("a", 1).degree, label("b", 1, 2).degree, label("c", 2, 1).degree) == (0, 1, 2)
        assert str(UNIT) == "1" and str(label("b", 1, 2)) == "b[1,2]"


class TestChainElement:
    def test_print(self):
        c = ChainElement(2, {label("T", 2): -x(1, 3), label("T", 1): x(2, 3)})
        assert str(c) == "x[2,3]*T[1] - x[1,3]*T[2]"
        assert str(ChainElement(1)) == "0"

    def test_compound_coefficient(self):
        c = ChainElement(1, {label("e", 1): x(1, 1) - x(2, 2)})
        assert str(c) == "(x[1,1] - x[2,2])*e[1]"

    def test_arithmetic(self):
        a = ChainElement.basis(label("e", 1), x(1, 1))
        b = ChainElement.basis(label("e", 2))
        assert (a + b - a) == b
        assert (a.scale(ZERO)) == ChainElement(1)
        assert a[label("e", 2)] == ZERO

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            ChainElement.basis(label("e", 1)) + ChainElement.basis(label("T", 1))


def _complex(entries):
    a = [label("a", 1)]
    b = [label("b", 1, 1), label("b", 1, 2)]
    return GradedComplex([a, b], {1: PolyMatrix(entries, a, b)}, name="toy")


class TestComplexChecks:
    def test_shape_validation(self):
        with pytest.raises(ValueError):
            GradedComplex([[label("a", 1)], [label("b", 1, 1)]], {1: PolyMatrix([[ONE, ONE]])})

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_hilbert_burch_composes(self, n):
        assert compose_check(build_hilbert_burch(build_generic(n)).complex).passed

    def test_U_composes_n2(self):
        assert compose_check(build_U(build_generic(2)).complex).passed

    def test_compose_failure_reported(self):
        a = [label("a", 1)]
        b = [label("b", 1, 1)]
        c = [label("c", 2, 1)]
        cx = GradedComplex([a, b, c], {1: PolyMatrix([[x(1, 1)]], a, b), 2: PolyMatrix([[x(1, 2)]], b, c)})
        rep = compose_check(cx)
        assert not rep.passed and rep.witnesses == [[1, "a[1]", "c[2,1]"]]

    def test_compose_modulo(self):
        g = build_generic(2)
        a = [label("a", 1)]
        b = [label("b", 1, 1)]
        c = [label("c", 2, 1)]
        cx = GradedComplex([a, b, c], {1: PolyMatrix([[x(1, 1)]], a, b), 2: PolyMatrix([[g.F(1)]], b, c)})
        assert not compose_check(cx).passed
        assert compose_check(cx, modulo=g.ideal_gens).passed

    def test_minimality(self):
        assert minimality_check(build_hilbert_burch(build_generic(3)).complex).passed
        rep = minimality_check(_complex([[ONE, x(1, 1)]]))
        assert not rep.passed and rep.witnesses[0][:3] == [1, "a[1]", "b[1,1]"]


class TestRank:
    def test_rank_mod_p(self):
        assert rank_mod_p([[1, 2], [2, 4]], 7) == 1
        assert rank_mod_p([[1, 2], [3, 4]], 7) == 2
        assert rank_mod_p([], 7) == 0

    def test_jacobian_n2(self):
        assert rank_probe(jacobian_transpose(build_generic(2)).matrix) == 3

    def test_partial2_n3(self):
        assert rank_probe(build_U(build_generic(3)).partial2) == 8

    def test_zero(self):
        assert rank_probe(PolyMatrix([[ZERO, ZERO]])) == 0

    def test_bounds_and_monotone(self):
        m = jacobian_transpose(build_generic(3)).matrix
        trials: list[int] = []
        r = rank_probe(m, trials=4, seed=3, per_trial=trials)
        assert r == max(trials) <= min(m.shape)
        assert rank_probe(m, trials=8, seed=3) >= r

    def test_bad_arguments(self):
        m = PolyMatrix([[ONE]])
        with pytest.raises(ValueError):
            rank_probe(m, prime=101)
        with pytest.raises(ValueError):
            rank_probe(m, trials=0)

    def test_variety_point_kills_minors(self):
        rng = random.Random(1)
        for n in (2, 3):
            g = build_generic(n)
            for _ in range(5):
                pt = variety_point(n, rng, P)
                assert all(F.evaluate_mod(pt, P) == 0 for F in g.minors)


class TestBuchsbaumEisenbud:
    def test_U_n2(self):
        U = build_U(build_generic(2))
        rep = be_condition_one(U.complex, [3, 3])
        assert rep.passed and rep.notes

    def test_U_n3(self):
        assert be_condition_one(build_U(build_generic(3)).complex, {1: 4, 2: 8}).passed

    def test_A_n2(self):
        assert be_condition_one(build_hilbert_burch(build_generic(2)).complex, [1, 2]).passed

    def test_failure(self):
        rep = be_condition_one(build_U(build_generic(2)).complex, [3, 2])
        assert not rep.passed


def test_report_json():
    rep = VerificationReport("demo", {"n": 2}, seed=7)
    rep.fail({"i": 2})
    rep.fail({"i": 1})
    data = json.loads(rep.finalize().to_json())
    assert data == {"check": "demo", "params": {"n": 2}, "status": "fail",
                    "witnesses": [{"i": 1}, {"i": 2}], "seed": 7}
