"""The minimal Q-free resolution U of coker J^T and its dg module structure over A."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Mapping

from .determinantal import GenericMatrixData, jacobian_transpose, sign
from .hilbert_burch import HilbertBurchDGA, MultTable, build_hilbert_burch, multiply
from .homological import (UNIT, BasisLabel, ChainElement, GradedComplex, InvalidLabel,
                          VerificationReport, fmt_coeff_times, label, rank_mod_p, specialize_matrix, random_assignment,
                          all_variables)
from .poly import DEFAULT_PRIME, ZERO, Polynomial, PolyMatrix


class DerivationVector:
    """sum coeff * d/dx[i,j], stored as a sparse map from variable to coefficient."""

    __slots__ = ("coords",)

    def __init__(self, coords: Mapping | None = None):
        self.coords = {v: p for v, p in (coords or {}).items() if p}

    @classmethod
    def from_chain(cls, chain: ChainElement) -> "DerivationVector":
        """Read a degree-1 chain of U through b[i,j] <-> d/dx[i,j]."""
        return cls({lab.index: p for lab, p in chain.coords.items()})

    def __call__(self, f: Polynomial) -> Polynomial:
        return sum((c * f.derivative(v) for v, c in self.coords.items()), ZERO)

    def __add__(self, other):
        out = dict(self.coords)
        for v, p in other.coords.items():
            out[v] = out.get(v, ZERO) + p
        return DerivationVector(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "DerivationVector":
        return DerivationVector({v: p * c for v, p in self.coords.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, DerivationVector) and self.coords == other.coords

    def __getitem__(self, v) -> Polynomial:
        return self.coords.get(v, ZERO)

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for (i, j) in sorted(self.coords):
            neg, body = fmt_coeff_times(self.coords[i, j], f"d/dx[{i},{j}]")
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __repr__ = __str__


def euler_derivation(n: int) -> DerivationVector:
    return DerivationVector({(i, j): Polynomial.var(i, j) for (i, j) in all_variables(n)})


def u_basis(n: int) -> list[list[BasisLabel]]:
    a = [label("a", i) for i in range(1, n + 2)]
    b = [label("b", j, k) for j in range(1, n + 1) for k in range(1, n + 2)]
    return [a, b, c_labels(n)]


def c_labels(n: int) -> list[BasisLabel]:
    """Column order of d_2: blocks c[i,k] (i != k) for k = 1..n, then c[l,l] for l = 2..n."""
    out = [label("c", i, k) for k in range(1, n + 1) for i in range(1, n + 1) if i != k]
    return out + [label("c", l, l) for l in range(2, n + 1)]


def c_boundary(g: GenericMatrixData, i: int, j: int) -> ChainElement:
    """d(c[i,j]) = sum_l x[i,l] b[j,l] - delta(i,j) sum_k x[1,k] b[1,k]; c[1,1] = 0."""
    n = g.n
    if (i, j) == (1, 1):
        return ChainElement(1)
    out = ChainElement(1, {label("b", j, l): g.x(i, l) for l in range(1, n + 2)})
    if i == j:
        out = out - ChainElement(1, {label("b", 1, k): g.x(1, k) for k in range(1, n + 2)})
    return out


def build_partial2(g: GenericMatrixData) -> PolyMatrix:
    n = g.n
    a, b, c = u_basis(n)
    row = {lab: r for r, lab in enumerate(b)}
    entries = [[ZERO] * len(c) for _ in b]
    for col, lab in enumerate(c):
        for blab, p in c_boundary(g, *lab.index).coords.items():
            entries[row[blab]][col] = p
    return PolyMatrix(entries, b, c)


def _c(i: int, j: int) -> BasisLabel | None:
    return None if (i, j) == (1, 1) else label("c", i, j)


def _chain(degree: int, pairs) -> ChainElement:
    out: dict = {}
    for lab, p in pairs:
        if lab is None or not p:
            continue
        out[lab] = out.get(lab, ZERO) + p
    return ChainElement(degree, out)


def e_times_a_diag(g: GenericMatrixData, i: int, s: int = 1) -> ChainElement:
    """e_i * a_i using row s as the distinguished row (the installed action uses s = 1)."""
    n = g.n
    pos = [(label("b", s, k), g.x(s, k)) for k in range(1, n + 2) if k != i]
    neg = [(label("b", l, i), -g.x(l, i)) for l in range(1, n + 1) if l != s]
    return _chain(1, pos + neg).scale(sign(i + 1))


def dg_action(a: BasisLabel, u: BasisLabel, g: GenericMatrixData) -> ChainElement:
    n = g.n
    _check_a(a, n)
    _check_u(u, n)
    if a == UNIT:
        return ChainElement.basis(u)
    if a.kind == "e":
        (i,) = a.index
        if u.kind == "a":
            (j,) = u.index
            if i != j:
                return _chain(1, [(label("b", k, i), g.x(k, j)) for k in range(1, n + 1)]).scale(sign(j))
            return e_times_a_diag(g, i)
        if u.kind == "b":
            j, k = u.index
            return _chain(2, [(_c(l, j), g.dF(i, l, k)) for l in range(1, n + 1)]).scale(sign(i + 1))
        return ChainElement(3)
    (i,) = a.index
    if u.kind == "a":
        (j,) = u.index
        return _chain(2, [(_c(i, k), g.x(k, j)) for k in range(1, n + 1)]).scale(sign(j))
    return ChainElement(2 + u.degree)


def _check_a(a, n: int) -> None:
    ok = isinstance(a, BasisLabel) and (
        a == UNIT
        or (a.kind == "e" and len(a.index) == 1 and 1 <= a.index[0] <= n + 1)
        or (a.kind == "T" and len(a.index) == 1 and 1 <= a.index[0] <= n))
    if not ok:
        raise InvalidLabel(f"{a} is not a basis element of A for n={n}")


def _check_u(u, n: int) -> None:
    ok = isinstance(u, BasisLabel) and (
        (u.kind == "a" and len(u.index) == 1 and 1 <= u.index[0] <= n + 1)
        or (u.kind == "b" and len(u.index) == 2 and 1 <= u.index[0] <= n and 1 <= u.index[1] <= n + 1)
        or (u.kind == "c" and len(u.index) == 2 and all(1 <= t <= n for t in u.index)))
    if not ok:
        raise InvalidLabel(f"{u} is not a basis element of U for n={n}")


@dataclass(eq=False)
class CokerResolution:
    g: GenericMatrixData
    complex: GradedComplex
    action: MultTable
    A: HilbertBurchDGA

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def partial2(self) -> PolyMatrix:
        return self.complex.d(2)

    def act(self, a, u) -> ChainElement:
        return self.action[a, u]

    def d(self, chain: ChainElement) -> ChainElement:
        return self.complex.apply_d(chain)

    def action_dump(self) -> list[str]:
        return self.action.dump(".")


def build_U(g: GenericMatrixData) -> CokerResolution:
    n = g.n
    a, b, c = u_basis(n)
    jt = jacobian_transpose(g).matrix
    d1 = PolyMatrix(jt.entries, a, b)
    cx = GradedComplex([a, b, c], {1: d1, 2: build_partial2(g)}, name=f"U(n={n})")
    A = build_hilbert_burch(g)
    table = MultTable()
    for alab in [lab for deg in A.complex.bases[1:] for lab in deg]:
        for ulab in a + b + c:
            table[alab, ulab] = dg_action(alab, ulab, g)
    return CokerResolution(g, cx, table, A)


def act_chain(U: CokerResolution, x: ChainElement, y: ChainElement) -> ChainElement:
    return multiply(U.action, x, y)


def verify_dg_module(U: CokerResolution) -> VerificationReport:
    n = U.n
    A = U.A
    rep = VerificationReport("dg-module-axioms", {"n": n})
    a_basis = [lab for deg in A.complex.bases for lab in deg]
    a_pos = a_basis[1:]
    u_all = [lab for deg in U.complex.bases for lab in deg]
    one = ChainElement.basis

    for a, u in cartesian(a_basis, u_all):
        au = U.act(a, u)
        if a.degree + u.degree > U.complex.top and au:
            rep.fail({"axiom": "degree", "pair": [str(a), str(u)]})
        lhs = U.d(au)
        rhs = act_chain(U, A.d(one(a)), one(u)) + act_chain(U, one(a), U.d(one(u))).scale(sign(a.degree))
        if lhs != rhs:
            rep.fail({"axiom": "leibniz", "pair": [str(a), str(u)], "lhs": str(lhs), "rhs": str(rhs)})
    for u in u_all:
        if U.act(UNIT, u) != one(u):
            rep.fail({"axiom": "unit", "element": str(u)})
    for a, b, u in cartesian(a_pos, a_pos, u_all):
        left = act_chain(U, A.mul(a, b), one(u))
        right = act_chain(U, one(a), U.act(b, u))
        if left != right:
            rep.fail({"axiom": "associativity", "triple": [str(a), str(b), str(u)],
                      "left": str(left), "right": str(right)})
    for a, u in cartesian(a_pos, u_all):
        bad = U.act(a, u).constant_coordinates()
        if bad:
            rep.fail({"axiom": "golod-module", "pair": [str(a), str(u)]})
    for i in range(1, n + 2):
        chosen = e_times_a_diag(U.g, i)
        for s in range(1, n + 1):
            cs = _c(s, s)
            expected = U.d(one(cs)).scale(sign(i + 1)) if cs else ChainElement(1)
            if e_times_a_diag(U.g, i, s) - chosen != expected:
                rep.fail({"axiom": "alternative-row", "i": i, "s": s})
    return rep.finalize()


def golod_condition_module(U: CokerResolution, table: MultTable | None = None) -> VerificationReport:
    table = table if table is not None else U.action
    rep = VerificationReport("golod-module", {"n": U.n})
    a_pos = [lab for deg in U.A.complex.bases[1:] for lab in deg]
    u_all = [lab for deg in U.complex.bases for lab in deg]
    for a, u in cartesian(a_pos, u_all):
        bad = table[a, u].constant_coordinates()
        if bad:
            rep.fail({"pair": [str(a), str(u)], "coordinates": sorted(str(x) for x in bad)})
    return rep.finalize()


def derivation_columns_check(U: CokerResolution) -> VerificationReport:
    """Each column of d_2, read as a derivation, kills every F_r exactly."""
    g = U.g
    rep = VerificationReport("partial2-derivations", {"n": g.n})
    for lab in U.complex.bases[2]:
        delta = DerivationVector.from_chain(U.complex.boundary(lab))
        for r in range(1, g.n + 2):
            val = delta(g.F(r))
            if val:
                rep.fail({"column": str(lab), "r": r, "value": str(val)})
    return rep.finalize()


def coker_descent_check(g: GenericMatrixData) -> VerificationReport:
    """Each F_j e_i is a Q-combination of the columns of J^T.

    For i != j: sum_k x[k,i] b[k,j] = (-1)^(i+j+1) F_j e_i.
    For i = j: sum_{u != i} x[s,u] b[s,u] - sum_{k != s} x[k,i] b[k,i] = F_i e_i, for every
    row s; s = i is the form used when i <= n, and i = n+1 needs some s <= n.
    """
    n = g.n
    jt = jacobian_transpose(g).matrix
    col = {v: idx for idx, v in enumerate(g.variables)}
    rep = VerificationReport("coker-descent", {"n": n})

    def combo(pairs):
        out = [ZERO] * (n + 1)
        for coeff, v in pairs:
            c = col[v]
            for r in range(n + 1):
                out[r] = out[r] + coeff * jt.entries[r][c]
        return out

    def target(i, p):
        return [p if r == i - 1 else ZERO for r in range(n + 1)]

    checked = 0
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            if i == j:
                continue
            checked += 1
            got = combo([(g.x(k, i), (k, j)) for k in range(1, n + 1)])
            if got != target(i, g.F(j) * sign(i + j + 1)):
                rep.fail({"case": "i!=j", "i": i, "j": j})
    for i in range(1, n + 2):
        for s in range(1, n + 1):
            checked += 1
            pairs = [(g.x(s, u), (s, u)) for u in range(1, n + 2) if u != i]
            pairs += [(-g.x(k, i), (k, i)) for k in range(1, n + 1) if k != s]
            if combo(pairs) != target(i, g.F(i)):
                rep.fail({"case": "i=j", "i": i, "s": s})
    rep.params["checked"] = checked
    return rep.finalize()


def highlighted_rows(n: int, choice: Mapping[int, list[int]] | None = None) -> list[BasisLabel]:
    """Rows of d_2 for the block-triangular maximal minor.

    Block 1 contributes n-1 of the rows b[1,*], each block k >= 2 contributes n of the
    rows b[k,*].  ``choice`` maps a block to column indices; defaults take the first ones.
    """
    choice = dict(choice or {})
    rows = []
    for k in range(1, n + 1):
        size = n - 1 if k == 1 else n
        picked = sorted(choice.get(k, range(1, size + 1)))
        if len(picked) != size or not all(1 <= u <= n + 1 for u in picked):
            raise ValueError(f"block {k} needs {size} distinct indices in 1..{n + 1}")
        rows += [label("b", k, u) for u in picked]
    return rows


def highlighted_minor_check(U: CokerResolution, choice=None, prime: int = DEFAULT_PRIME,
                            trials: int = 5, seed: int = 0) -> VerificationReport:
    """The chosen maximal minor of d_2 is nonzero at some random point mod prime."""
    n = U.n
    rows = highlighted_rows(n, choice)
    d2 = U.partial2
    idx = {lab: r for r, lab in enumerate(d2.row_labels)}
    sub = d2.submatrix([idx[r] for r in rows], range(d2.cols))
    rep = VerificationReport("highlighted-minor", {"n": n, "rows": [str(r) for r in rows],
                                                   "prime": prime, "trials": trials}, seed=seed)
    rng = random.Random(seed)
    size = len(rows)
    for _ in range(trials):
        pt = random_assignment(all_variables(n), rng, prime)
        if rank_mod_p(specialize_matrix(sub, pt, prime), prime) == size:
            return rep.finalize()
    rep.fail({"reason": "minor vanished at every trial point"})
    return rep.finalize()
