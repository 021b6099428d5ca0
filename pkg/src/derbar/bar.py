"""Relative bar resolution of coker J^T_R over R and its truncation resolving Der_{R|k}.

A bar word [a_1|...|a_p]u has degree sum(|a_k| + 1) + |u|.  With eps_k the sum of
shifted degrees |a_l| + 1 over l < k, the differential is

    internal    (-1)^eps_k       [.. | d a_k | ..] u
    U           (-1)^eps_{p+1}   [a_1 | .. | a_p] d u
    product     (-1)^eps_{k+1}   [.. | a_k a_{k+1} | ..] u
    action      (-1)^eps_{p+1}   [a_1 | .. | a_{p-1}] a_p u

so the two multiplication families carry the shifted degree of their left factor.
Every matrix is stored over Q and read modulo I_n.  In degree 3 this gives the
blocks [[J^T, phi_2], [M_11, -M_20]].
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import Sequence

from .coker import CokerResolution, DerivationVector, build_U, euler_derivation
from .determinantal import GenericMatrixData, jacobian_transpose, sign
from .homological import (UNIT, BasisLabel, ChainElement, VerificationReport, label, matmul_mod,
                          specialize_matrix, variety_point)
from .poly import DEFAULT_PRIME, ZERO, PolyMatrix, normal_form


class NotApplicable(ValueError):
    pass


def basis_position(lab: BasisLabel) -> tuple:
    """Sort key matching the basis order of A and U (c[i,k] blocks by k, then c[l,l])."""
    if lab.kind == "c":
        i, k = lab.index
        return (1, i, i) if i == k else (0, k, i)
    return lab.index


@dataclass(frozen=True, order=True)
class BarWord:
    sort_key: tuple
    a_labels: tuple
    u_label: BasisLabel

    @classmethod
    def make(cls, a_labels: Sequence[BasisLabel], u_label: BasisLabel) -> "BarWord":
        a_labels = tuple(a_labels)
        comp = tuple(a.degree for a in a_labels) + (u_label.degree,)
        return cls((len(a_labels), comp, tuple(map(basis_position, a_labels + (u_label,)))),
                   a_labels, u_label)

    @property
    def p(self) -> int:
        return len(self.a_labels)

    @property
    def a_degrees(self) -> tuple:
        return tuple(a.degree for a in self.a_labels)

    @property
    def degree(self) -> int:
        return sum(d + 1 for d in self.a_degrees) + self.u_label.degree

    def __str__(self) -> str:
        if not self.a_labels:
            return str(self.u_label)
        return "[" + "|".join(str(a) for a in self.a_labels) + "]" + str(self.u_label)


@functools.lru_cache(maxsize=None)
def structures(g: GenericMatrixData) -> CokerResolution:
    return build_U(g)


def bar_term_basis(r: int, g: GenericMatrixData) -> list[BarWord]:
    if r < 0:
        raise ValueError("degree must be non-negative")
    return list(_basis(r, g))


@functools.lru_cache(maxsize=None)
def _basis(r: int, g: GenericMatrixData) -> tuple:
    U = structures(g)
    a_by_deg = U.A.complex.bases
    u_by_deg = U.complex.bases
    words = []

    def compositions(total):
        if total == 0:
            yield ()
            return
        for d in (1, 2):
            if d + 1 <= total:
                for rest in compositions(total - d - 1):
                    yield (d,) + rest

    for j in range(len(u_by_deg)):
        if j > r:
            break
        for comp in compositions(r - j):
            for labels in cartesian(*[a_by_deg[d] for d in comp]):
                for u in u_by_deg[j]:
                    words.append(BarWord.make(labels, u))
    return tuple(sorted(words))


def bar_rank_formula(r: int, n: int) -> int:
    """Sum over compositions of (n+1)^#(i=1) n^#(i=2) rank U_j."""
    ranks_u = [n + 1, n * (n + 1), (n - 1) * (n + 1)]

    @functools.lru_cache(maxsize=None)
    def words(total):
        if total == 0:
            return 1
        out = 0
        if total >= 2:
            out += (n + 1) * words(total - 2)
        if total >= 3:
            out += n * words(total - 3)
        return out

    return sum(ranks_u[j] * words(r - j) for j in range(3) if j <= r)


def bar_boundary(word: BarWord, g: GenericMatrixData) -> ChainElement:
    U = structures(g)
    A = U.A
    a = word.a_labels
    u = word.u_label
    out: dict = {}

    def add(labels, ulab, coeff):
        w = BarWord.make(labels, ulab)
        out[w] = out.get(w, ZERO) + coeff

    eps = [0]
    for x in a:
        eps.append(eps[-1] + x.degree + 1)
    for k, x in enumerate(a):
        for y, c in A.d(ChainElement.basis(x)).coords.items():
            if y != UNIT:
                add(a[:k] + (y,) + a[k + 1:], u, c * sign(eps[k]))
    for v, c in U.d(ChainElement.basis(u)).coords.items():
        add(a, v, c * sign(eps[len(a)]))
    for k in range(len(a) - 1):
        for y, c in A.mul(a[k], a[k + 1]).coords.items():
            add(a[:k] + (y,) + a[k + 2:], u, c * sign(eps[k + 1]))
    if a:
        for v, c in U.act(a[-1], u).coords.items():
            add(a[:-1], v, c * sign(eps[len(a)]))
    return ChainElement(word.degree - 1, out)


@functools.lru_cache(maxsize=None)
def _differential(r: int, g: GenericMatrixData) -> PolyMatrix:
    rows = _basis(r - 1, g)
    cols = _basis(r, g)
    index = {w: i for i, w in enumerate(rows)}
    entries = [[ZERO] * len(cols) for _ in rows]
    for j, w in enumerate(cols):
        for v, c in bar_boundary(w, g).coords.items():
            entries[index[v]][j] = c
    return PolyMatrix(entries, list(rows), list(cols))


def bar_differential(r: int, g: GenericMatrixData) -> PolyMatrix:
    if r < 1:
        raise ValueError("differential degree must be at least 1")
    return _differential(r, g)


def verify_bar(rmax: int, g: GenericMatrixData, prime: int = DEFAULT_PRIME, points: int = 20,
               seed: int = 0) -> VerificationReport:
    """d_{r-1} d_r = 0 mod I_n for 2 <= r <= rmax, by normal form and by points on the variety."""
    if rmax < 2:
        raise ValueError("rmax must be at least 2")
    if points < 1:
        raise ValueError("need at least one specialization point")
    gens = g.ideal_gens
    rep = VerificationReport("bar-resolution", {"n": g.n, "rmax": rmax, "points": points,
                                                "prime": prime}, seed=seed)
    rng = random.Random(seed)
    pts = [variety_point(g.n, rng, prime) for _ in range(points)]
    checked = 0
    for r in range(2, rmax + 1):
        lo, hi = bar_differential(r - 1, g), bar_differential(r, g)
        witnesses, n_checked = composite_witnesses(lo, hi, gens, pts, prime, exact_cols=(r == 2))
        checked += n_checked
        for w in witnesses:
            rep.fail({"r": r, **w})
    for r in range(1, rmax + 1):
        d = bar_differential(r, g)
        for i, j, e in d.nonzero_entries():
            if e.constant_term():
                rep.fail({"r": r, "reason": "entry outside the maximal ideal",
                          "row": str(d.row_labels[i]), "col": str(d.col_labels[j])})
    rep.params["entries_checked"] = checked
    return rep.finalize()


def composite_witnesses(lo: PolyMatrix, hi: PolyMatrix, gens, points, prime: int,
                        exact_cols: bool = False) -> tuple[list, int]:
    """Entries of lo*hi that fail either oracle (normal form, vanishing at the points).

    With ``exact_cols`` the columns labeled by words with p = 0 must vanish over Q.
    """
    comp = lo @ hi
    exact = {(i, j): e for i, j, e in comp.nonzero_entries()}
    out = []
    if exact_cols:
        over_q = sorted((i, j) for (i, j) in exact if getattr(comp.col_labels[j], "p", 0) == 0)
        if over_q:
            out.append({"reason": "not zero over Q on the U columns", "entries": len(over_q)})
    vanish = [[True] * comp.cols for _ in range(comp.rows)]
    for pt in points:
        prod = matmul_mod(specialize_matrix(lo, pt, prime), specialize_matrix(hi, pt, prime), prime)
        for i, row in enumerate(prod):
            for j, v in enumerate(row):
                if v:
                    vanish[i][j] = False
    for i in range(comp.rows):
        for j in range(comp.cols):
            e = exact.get((i, j))
            nf_zero = e is None or not normal_form(e, gens)
            if not (nf_zero and vanish[i][j]):
                out.append({"row": str(comp.row_labels[i]), "col": str(comp.col_labels[j]),
                            "normal_form_zero": nf_zero, "vanishes_on_points": vanish[i][j]})
    return out, comp.rows * comp.cols


def d3_block_signs(g: GenericMatrixData) -> VerificationReport:
    """Compare d_3 label-wise with the block matrix [[J^T, phi_2], [M_11, M_20]].

    Each block must agree with the reference up to one global sign; the sign found for
    every block is recorded in ``params['block_signs']``.
    """
    n = g.n
    U = structures(g)
    d3 = bar_differential(3, g)
    rows = {w: i for i, w in enumerate(d3.row_labels)}
    cols = {w: j for j, w in enumerate(d3.col_labels)}
    reference: dict[str, dict] = {"J^T": {}, "phi2": {}, "M11": {}, "M20": {}}
    es = [label("e", i) for i in range(1, n + 2)]
    ts = [label("T", i) for i in range(1, n + 1)]
    a_lab, b_lab, c_lab = U.complex.bases
    jt = jacobian_transpose(g).matrix
    for e in es:
        for r, a in enumerate(a_lab):
            for k, b in enumerate(b_lab):
                reference["J^T"][BarWord.make([e], a), BarWord.make([e], b)] = jt.entries[r][k]
        for b in b_lab:
            for c, p in U.act(e, b).coords.items():
                reference["M11"][BarWord.make([], c), BarWord.make([e], b)] = p
    for t in ts:
        for a in a_lab:
            for e, p in U.A.d(ChainElement.basis(t)).coords.items():
                reference["phi2"][BarWord.make([e], a), BarWord.make([t], a)] = p
            for c, p in U.act(t, a).coords.items():
                reference["M20"][BarWord.make([], c), BarWord.make([t], a)] = p
    block_of = {}
    for name, ref in reference.items():
        for key in ref:
            block_of[key] = name
    rep = VerificationReport("bar-d3-blocks", {"n": n})
    signs = {}
    for name, ref in reference.items():
        found = set()
        for (rw, cw), p in ref.items():
            got = d3.entries[rows[rw]][cols[cw]]
            if got == p:
                found.add(1)
            elif got == -p:
                found.add(-1)
            else:
                found.add(None)
        signs[name] = found.pop() if len(found) == 1 else None
        if signs[name] is None:
            rep.fail({"block": name, "reason": "not a signed copy of the reference block"})
    col_kind = {w: ("eb" if w.p == 1 and w.u_label.kind == "b" else "Ta") for w in d3.col_labels}
    for i, j, p in d3.nonzero_entries():
        rw, cw = d3.row_labels[i], d3.col_labels[j]
        key = (rw, cw)
        if key not in block_of:
            rep.fail({"reason": "entry outside the four blocks", "row": str(rw), "col": str(cw),
                      "kind": col_kind[cw]})
    rep.params["block_signs"] = signs
    return rep.finalize()


# --- truncation: the resolution of Der_{R|k} ---------------------------------------------

@dataclass
class DerivationPresentation:
    n: int
    generators: list  # (name, DerivationVector)
    relations: PolyMatrix

    def names(self) -> list[str]:
        return [name for name, _ in self.generators]

    def lines(self) -> list[str]:
        return [f"{name}: {vec}" for name, vec in self.generators]


def generator_name(word: BarWord) -> str:
    if word.p == 0:
        i, k = word.u_label.index
        return f"B[{i}]" if i == k else f"V[{i},{k}]"
    (e,) = word.a_labels
    return f"L[{e.index[0]},{word.u_label.index[0]}]"


def truncate_to_der(g: GenericMatrixData) -> DerivationPresentation:
    d2 = bar_differential(2, g)
    gens = []
    for j, w in enumerate(d2.col_labels):
        vec = DerivationVector({d2.row_labels[i].u_label.index: d2.entries[i][j] for i in range(d2.rows)})
        gens.append((generator_name(w), vec))
    return DerivationPresentation(g.n, gens, bar_differential(3, g))


def der_presentation_matrix(g: GenericMatrixData) -> PolyMatrix:
    """[d_2 | M_10] with columns c[i,k] and L[i,j], rows b[i,j]."""
    d2 = bar_differential(2, g)
    cols = [str(w) if w.p == 0 else generator_name(w) for w in d2.col_labels]
    rows = [str(w) for w in d2.row_labels]
    return PolyMatrix(d2.entries, rows, cols)


def generators_check(g: GenericMatrixData) -> VerificationReport:
    pres = truncate_to_der(g)
    n = g.n
    rep = VerificationReport("derivation-generators", {"n": n, "count": len(pres.generators),
                                                       "expected": 2 * n * (n + 1)})
    if len(pres.generators) != 2 * n * (n + 1):
        rep.fail({"reason": "generator count"})
    for name, vec in pres.generators:
        for r in range(1, n + 2):
            if normal_form(vec(g.F(r)), g.ideal_gens):
                rep.fail({"generator": name, "r": r})
    return rep.finalize()


def euler_identity(g: GenericMatrixData) -> VerificationReport:
    """E = n sum_k (-1)^(k+1) L[k,k] + (n+1) sum_l B[l]."""
    n = g.n
    gens = dict(truncate_to_der(g).generators)
    rhs = DerivationVector()
    for k in range(1, n + 2):
        rhs = rhs + gens[f"L[{k},{k}]"].scale(n * sign(k + 1))
    for l in range(2, n + 1):
        rhs = rhs + gens[f"B[{l}]"].scale(n + 1)
    E = euler_derivation(n)
    rep = VerificationReport("euler-identity", {"n": n})
    for v in sorted(set(E.coords) | set(rhs.coords)):
        if E[v] != rhs[v]:
            rep.fail({"variable": list(v), "lhs": str(E[v]), "rhs": str(rhs[v])})
    return rep.finalize()


# --- Poincare series ---------------------------------------------------------------------

def series_coefficients(numerator: Sequence, denominator: Sequence, count: int) -> list:
    """First ``count`` coefficients of numerator/denominator as a power series (denominator[0] != 0)."""
    if not denominator or denominator[0] == 0:
        raise ValueError("denominator must have a nonzero constant term")
    out = []
    d0 = Fraction(denominator[0])
    for i in range(count):
        acc = Fraction(numerator[i]) if i < len(numerator) else Fraction(0)
        for k in range(1, min(i, len(denominator) - 1) + 1):
            acc -= denominator[k] * out[i - k]
        out.append(acc / d0)
    return [int(c) if c.denominator == 1 else c for c in out]


def poincare_coefficients(g_or_n, degree: int) -> list[int]:
    """b_0..b_degree of n(n+1)(2+nt)/(1-t-nt^2), via b_i = b_{i-1} + n b_{i-2}."""
    n = g_or_n if isinstance(g_or_n, int) else g_or_n.n
    if degree < 0:
        raise ValueError("degree must be non-negative")
    b = [2 * n * (n + 1), n * (n + 1) * (n + 2)]
    while len(b) <= degree:
        b.append(b[-1] + n * b[-2])
    return b[:degree + 1]


def coker_series_coefficients(n: int, count: int) -> list[int]:
    """(n+1)(1+(n-1)t)/(1-t-nt^2)."""
    return series_coefficients([n + 1, (n + 1) * (n - 1)], [1, -1, -n], count)


def der_series_rational(n: int) -> tuple[list[int], list[int]]:
    return [2 * n * (n + 1), n * n * (n + 1)], [1, -1, -n]


# --- linearity at n = 2 ------------------------------------------------------------------

def linearity_check(g: GenericMatrixData, rmax: int = 5,
                    matrices: Sequence[PolyMatrix] | None = None) -> VerificationReport:
    """Every nonzero entry is plus or minus a single variable."""
    if g.n != 2:
        raise NotApplicable("linearity is only claimed for n = 2")
    mats = list(matrices) if matrices is not None else [bar_differential(r, g) for r in range(1, rmax + 1)]
    rep = VerificationReport("linearity", {"n": 2, "matrices": len(mats)})
    for idx, m in enumerate(mats):
        for i, j, e in m.nonzero_entries():
            ok = len(e) == 1
            if ok:
                (mono, c), = e.items()
                ok = abs(c) == 1 and len(mono) == 1 and mono[0][1] == 1
            if not ok:
                rep.fail({"matrix": idx, "row": str(m.row_labels[i]), "col": str(m.col_labels[j]),
                          "entry": str(e)})
    return rep.finalize()
