import random
from fractions import Fraction

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from derbar.bar import BarWord, bar_boundary, poincare_coefficients, series_coefficients, structures
from derbar.determinantal import build_generic
from derbar.homological import variety_point
from derbar.poly import ZERO, PolyMatrix, Polynomial, determinant, normal_form, parse_poly

P = 2**31 - 1
VARS2 = [(i, j) for i in (1, 2) for j in (1, 2, 3)]
G2 = build_generic(2)

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def monomials(draw, variables=VARS2, max_exp=2):
    chosen = draw(st.lists(st.sampled_from(variables), max_size=3, unique=True))
    return tuple(sorted((v, draw(st.integers(1, max_exp))) for v in chosen))


@st.composite
def polys(draw, variables=VARS2, max_terms=4, rational=False):
    coeff = (st.fractions(min_value=-5, max_value=5, max_denominator=4) if rational
             else st.integers(-5, 5))
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        m = draw(monomials(variables))
        terms[m] = terms.get(m, 0) + draw(coeff)
    return Polynomial(terms)


points = st.fixed_dictionaries({v: st.integers(0, P - 1) for v in VARS2})


class TestRing:
    @given(polys(), polys(), polys())
    def test_associative_and_distributive(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r

    @given(polys(), polys())
    def test_commutative_and_inverse(self, p, q):
        assert p + q == q + p and p * q == q * p
        assert p - p == ZERO and p + ZERO == p

    @given(polys(), polys(), points)
    def test_evaluation_is_a_homomorphism(self, p, q, pt):
        assert (p * q).evaluate_mod(pt, P) == p.evaluate_mod(pt, P) * q.evaluate_mod(pt, P) % P
        assert (p + q).evaluate_mod(pt, P) == (p.evaluate_mod(pt, P) + q.evaluate_mod(pt, P)) % P

    @given(polys(), polys())
    def test_degree_of_product(self, p, q):
        if p and q:
            assert (p * q).degree() == p.degree() + q.degree()


class TestDerivative:
    @given(polys(), polys(), st.sampled_from(VARS2))
    def test_leibniz(self, p, q, v):
        assert (p * q).derivative(v) == p.derivative(v) * q + p * q.derivative(v)

    @given(polys(), polys(), st.sampled_from(VARS2))
    def test_linear(self, p, q, v):
        assert (p - 3 * q).derivative(v) == p.derivative(v) - 3 * q.derivative(v)

    @given(polys(), st.sampled_from(VARS2), st.sampled_from(VARS2))
    def test_mixed_partials_commute(self, p, u, v):
        assert p.derivative(u).derivative(v) == p.derivative(v).derivative(u)


class TestText:
    @given(polys(rational=True))
    def test_roundtrip(self, p):
        assert parse_poly(str(p)) == p

    @given(st.lists(st.lists(polys(max_terms=2), min_size=2, max_size=2), min_size=1, max_size=3))
    def test_matrix_roundtrip(self, rows):
        m = PolyMatrix(rows)
        assert PolyMatrix.from_text(m.to_text()) == m


class TestDeterminant:
    @given(st.integers(2, 4).flatmap(lambda k: st.lists(
        st.lists(polys(max_terms=2), min_size=k, max_size=k), min_size=k, max_size=k)))
    def test_laplace_equals_bareiss(self, rows):
        assert determinant(rows, "laplace") == determinant(rows, "bareiss")

    @given(st.lists(st.lists(polys(max_terms=2), min_size=3, max_size=3), min_size=3, max_size=3), points)
    def test_commutes_with_evaluation(self, rows, pt):
        det = determinant(rows).evaluate_mod(pt, P)
        vals = [[e.evaluate_mod(pt, P) for e in row] for row in rows]
        a, b, c = vals
        direct = (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                  + a[2] * (b[0] * c[1] - b[1] * c[0])) % P
        assert det == direct


class TestNormalForm:
    @given(polys(), polys(max_terms=3), st.integers(1, 3))
    def test_invariant_under_ideal_shift(self, p, h, r):
        gens = G2.ideal_gens
        assert normal_form(p + h * G2.F(r), gens) == normal_form(p, gens)

    @given(polys(max_terms=3), polys(max_terms=3), st.integers(0, 2**32))
    def test_zero_normal_form_vanishes_on_variety(self, h1, h2, seed):
        p = h1 * G2.F(1) + h2 * G2.F(3)
        assert normal_form(p, G2.ideal_gens) == ZERO
        pt = variety_point(2, random.Random(seed), P)
        assert p.evaluate_mod(pt, P) == 0

    @given(polys())
    def test_idempotent(self, p):
        once = normal_form(p, G2.ideal_gens)
        assert normal_form(once, G2.ideal_gens) == once


A_LABELS = [lab for deg in (1, 2) for lab in structures(G2).A.complex.bases[deg]]


@st.composite
def bar_words(draw):
    U = structures(G2)
    a = draw(st.lists(st.sampled_from(A_LABELS), max_size=3))
    u = draw(st.sampled_from([lab for deg in U.complex.bases for lab in deg]))
    return BarWord.make(a, u)


class TestBar:
    @given(bar_words())
    def test_boundary_lowers_degree(self, w):
        bd = bar_boundary(w, G2)
        assert all(v.degree == w.degree - 1 for v in bd.coords)

    @given(bar_words())
    def test_words_order_consistent(self, w):
        assert BarWord.make(w.a_labels, w.u_label) == w


class TestSeries:
    @given(st.integers(2, 8), st.integers(2, 10))
    def test_recurrence(self, n, deg):
        b = poincare_coefficients(n, deg)
        assert all(b[i] == b[i - 1] + n * b[i - 2] for i in range(2, deg + 1))

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=4),
           st.lists(st.integers(-5, 5), min_size=1, max_size=4).filter(lambda d: d[0] != 0))
    def test_series_times_denominator(self, num, den):
        count = 8
        s = series_coefficients(num, den, count)
        for i in range(count):
            conv = sum(Fraction(den[k]) * s[i - k] for k in range(min(i, len(den) - 1) + 1))
            assert conv == (num[i] if i < len(num) else 0)
