"""The Hilbert-Burch resolution of R = Q/I_n as a dg algebra."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian

from .determinantal import GenericMatrixData, sign, signed_subminor
from .homological import UNIT, ChainElement, GradedComplex, VerificationReport, label
from .poly import ZERO, PolyMatrix


@dataclass
class MultTable:
    """Products of basis labels.  Missing pairs are zero; the unit is handled implicitly."""

    entries: dict = field(default_factory=dict)

    def __getitem__(self, key) -> ChainElement:
        a, b = key
        if a == UNIT:
            return ChainElement.basis(b)
        if b == UNIT:
            return ChainElement.basis(a)
        found = self.entries.get(key)
        return found if found is not None else ChainElement(a.degree + b.degree)

    def __setitem__(self, key, value: ChainElement) -> None:
        if value:
            self.entries[key] = value

    def dump(self, sep: str = "*") -> list[str]:
        return sorted(f"{a}{sep}{b} = {v}" for (a, b), v in self.entries.items())


def multiply(table: MultTable, x: ChainElement, y: ChainElement) -> ChainElement:
    """Bilinear extension of ``table`` to chain elements."""
    out = ChainElement(x.degree + y.degree)
    for a, p in x.coords.items():
        for b, q in y.coords.items():
            out = out + table[a, b].scale(p * q)
    return out


@dataclass(eq=False)
class HilbertBurchDGA:
    g: GenericMatrixData
    complex: GradedComplex
    product: MultTable

    @property
    def n(self) -> int:
        return self.g.n

    def e(self, i: int):
        return label("e", i)

    def T(self, i: int):
        return label("T", i)

    def mul(self, a, b) -> ChainElement:
        return self.product[a, b]

    def d(self, chain: ChainElement) -> ChainElement:
        return self.complex.apply_d(chain)

    def table_dump(self) -> list[str]:
        return self.product.dump("*")


def build_hilbert_burch(g: GenericMatrixData) -> HilbertBurchDGA:
    n = g.n
    es = [label("e", i) for i in range(1, n + 2)]
    ts = [label("T", k) for k in range(1, n + 1)]
    phi1 = PolyMatrix([[g.F(i) * sign(i + 1) for i in range(1, n + 2)]], [UNIT], es)
    phi2 = PolyMatrix([[g.x(k, l) for k in range(1, n + 1)] for l in range(1, n + 2)], es, ts)
    cx = GradedComplex([[UNIT], es, ts], {1: phi1, 2: phi2}, name=f"A(n={n})")
    table = MultTable()
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            prod = minor_form(g, i, j)
            table[es[i - 1], es[j - 1]] = prod
            table[es[j - 1], es[i - 1]] = -prod
    return HilbertBurchDGA(g, cx, table)


def minor_form(g: GenericMatrixData, i: int, j: int) -> ChainElement:
    """sum_k (-1)^(i+j+k) det X^k_{i,j} T_k; symmetric in i and j."""
    return ChainElement(2, {label("T", k): signed_subminor(g, [i, j], [k]) * sign(i + j + k)
                            for k in range(1, g.n + 1)})


def alternative_product(g: GenericMatrixData, i: int, j: int) -> ChainElement:
    """The minor form rewritten through partial derivatives of F_i (i != j).

    For i < j this is e_i*e_j.  For i > j it is still the minor form, which
    then equals e_j*e_i by antisymmetry.
    """
    s = sign(i + 1) if i < j else sign(i)
    return ChainElement(2, {label("T", k): g.dF(i, k, j) * s for k in range(1, g.n + 1)})


def verify_dga(h: HilbertBurchDGA) -> VerificationReport:
    n = h.n
    rep = VerificationReport("dga-axioms", {"n": n})
    basis = [lab for deg in h.complex.bases for lab in deg]
    positive = [lab for lab in basis if lab.degree > 0]
    top = h.complex.top

    for a, b in cartesian(basis, basis):
        ab = h.mul(a, b)
        if a.degree + b.degree > top and ab:
            rep.fail({"axiom": "degree", "pair": [str(a), str(b)]})
        # Leibniz: d(ab) = d(a) b + (-1)^|a| a d(b)
        lhs = h.d(ab)
        rhs = multiply(h.product, h.d(ChainElement.basis(a)), ChainElement.basis(b)) + \
            multiply(h.product, ChainElement.basis(a), h.d(ChainElement.basis(b))).scale(sign(a.degree))
        if lhs != rhs:
            rep.fail({"axiom": "leibniz", "pair": [str(a), str(b)], "lhs": str(lhs), "rhs": str(rhs)})
        # graded commutativity
        ba = h.mul(b, a)
        if ab != ba.scale(sign(a.degree * b.degree)):
            rep.fail({"axiom": "graded-commutativity", "pair": [str(a), str(b)]})
    for a in positive:
        if a.degree % 2 and h.mul(a, a):
            rep.fail({"axiom": "odd-square", "element": str(a)})
    for a in basis:
        one = ChainElement.basis(a)
        if h.mul(UNIT, a) != one or h.mul(a, UNIT) != one:
            rep.fail({"axiom": "unit", "element": str(a)})
    for a, b, c in cartesian(positive, positive, positive):
        left = multiply(h.product, h.mul(a, b), ChainElement.basis(c))
        right = multiply(h.product, ChainElement.basis(a), h.mul(b, c))
        if left != right:
            rep.fail({"axiom": "associativity", "triple": [str(a), str(b), str(c)]})
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            if i == j:
                continue
            alt = alternative_product(h.g, i, j)
            if alt != minor_form(h.g, i, j):
                rep.fail({"axiom": "partial-derivative-form", "pair": [i, j]})
            if alt != h.mul(h.e(min(i, j)), h.e(max(i, j))):
                rep.fail({"axiom": "partial-derivative-product", "pair": [i, j]})
    return rep.finalize()


def golod_condition_ring(h: HilbertBurchDGA, table: MultTable | None = None) -> VerificationReport:
    """Products of positive-degree basis elements must land in m*A."""
    table = table if table is not None else h.product
    rep = VerificationReport("golod-ring", {"n": h.n})
    positive = [lab for deg in h.complex.bases[1:] for lab in deg]
    for a, b in cartesian(positive, positive):
        bad = table[a, b].constant_coordinates()
        if bad:
            rep.fail({"pair": [str(a), str(b)], "coordinates": sorted(str(x) for x in bad)})
    return rep.finalize()


__all__ = ["MultTable", "multiply", "HilbertBurchDGA", "build_hilbert_burch", "alternative_product", "minor_form",
           "verify_dga", "golod_condition_ring", "ZERO"]
