"""Generic n x (n+1) matrix, its maximal minors, and the transposed Jacobian."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from .homological import VerificationReport
from .poly import ZERO, Polynomial, PolyMatrix, determinant, x


class BadDimension(ValueError):
    pass


class NonSquareAfterDeletion(ValueError):
    pass


def sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(eq=False)
class GenericMatrixData:
    n: int
    X: PolyMatrix
    minors: tuple[Polynomial, ...]
    _partials: dict = field(default_factory=dict, repr=False)

    @property
    def ideal_gens(self) -> list[Polynomial]:
        return list(self.minors)

    @property
    def variables(self) -> list[tuple[int, int]]:
        """Variables in row-major order."""
        return [(i, j) for i in range(1, self.n + 1) for j in range(1, self.n + 2)]

    def x(self, i: int, j: int) -> Polynomial:
        return self.X.entries[i - 1][j - 1]

    def F(self, r: int) -> Polynomial:
        return self.minors[r - 1]

    def dF(self, r: int, i: int, j: int) -> Polynomial:
        """Partial derivative of F_r with respect to x[i,j]."""
        return self._partials[r, i, j]


@functools.lru_cache(maxsize=None)
def build_generic(n: int) -> GenericMatrixData:
    if n < 2:
        raise BadDimension(f"n must be at least 2, got {n}")
    X = PolyMatrix([[x(i, j) for j in range(1, n + 2)] for i in range(1, n + 1)],
                   [f"row{i}" for i in range(1, n + 1)], [f"col{j}" for j in range(1, n + 2)])
    minors = []
    for r in range(1, n + 2):
        cols = [j for j in range(n + 1) if j != r - 1]
        minors.append(determinant(X.submatrix(range(n), cols)))
    g = GenericMatrixData(n, X, tuple(minors))
    for r in range(1, n + 2):
        for v in g.variables:
            g._partials[(r, *v)] = minors[r - 1].derivative(v)
    return g


@dataclass
class JacobianTranspose:
    matrix: PolyMatrix

    @property
    def row_labels(self):
        return self.matrix.row_labels

    @property
    def col_labels(self):
        return self.matrix.col_labels


def jacobian_transpose(g: GenericMatrixData) -> JacobianTranspose:
    """Rows indexed by F_1..F_{n+1}; columns by x[i,j] in row-major order."""
    entries = [[g.dF(r, i, j) for (i, j) in g.variables] for r in range(1, g.n + 2)]
    return JacobianTranspose(PolyMatrix(entries, [f"F[{r}]" for r in range(1, g.n + 2)],
                                        [f"x[{i},{j}]" for (i, j) in g.variables]))


def signed_subminor(g: GenericMatrixData, delete_cols, delete_rows=()) -> Polynomial:
    """Plain determinant of X with the given (1-based) columns and rows removed."""
    rows = [i for i in range(g.n) if i + 1 not in set(delete_rows)]
    cols = [j for j in range(g.n + 1) if j + 1 not in set(delete_cols)]
    if len(rows) != len(cols):
        raise NonSquareAfterDeletion(f"{len(rows)} rows and {len(cols)} columns remain")
    return determinant(g.X.submatrix(rows, cols))


def check_identities(g: GenericMatrixData) -> VerificationReport:
    """Exhaustive check of the minor/partial-derivative identities.

    row-euler           sum_u x[i,u] dF_r/dx[s,u] = delta(i,s) F_r
    column-contraction  sum_k x[k,i] dF_i/dx[k,j] = (-1)^(i+j+1) F_j            (i != j)
    alternating-sum     sum_{r != i} (-1)^r dF_r/dx[j,i] x[l,r] = delta(j,l) (-1)^(i+1) F_i
    distinct-zero       sum_l dF_i/dx[l,k] x[l,t] = 0                           (i, k, t distinct)
    swap                dF_i/dx[k,j] = (-1)^(i+j+1) dF_j/dx[k,i]                (i != j)

    Row indices run over 1..n, column indices over 1..n+1.
    """
    n = g.n
    rows = range(1, n + 1)
    cols = range(1, n + 2)
    rep = VerificationReport("minor-identities", {"n": n})
    counts = dict.fromkeys(["row-euler", "column-contraction", "alternating-sum", "distinct-zero", "swap"], 0)

    def expect(name, idx, lhs, rhs):
        counts[name] += 1
        if lhs != rhs:
            rep.fail({"identity": name, "indices": list(idx), "lhs": str(lhs), "rhs": str(rhs)})

    for i in rows:
        for s in rows:
            for r in cols:
                lhs = sum((g.x(i, u) * g.dF(r, s, u) for u in cols), ZERO)
                expect("row-euler", (i, s, r), lhs, g.F(r) if i == s else ZERO)
    for i in cols:
        for j in cols:
            if i == j:
                continue
            lhs = sum((g.x(k, i) * g.dF(i, k, j) for k in rows), ZERO)
            expect("column-contraction", (i, j), lhs, g.F(j) * sign(i + j + 1))
            for k in rows:
                expect("swap", (i, j, k), g.dF(i, k, j), g.dF(j, k, i) * sign(i + j + 1))
    for i in cols:
        for j in rows:
            for ell in rows:
                lhs = sum((g.dF(r, j, i) * g.x(ell, r) * sign(r) for r in cols if r != i), ZERO)
                expect("alternating-sum", (i, j, ell), lhs, g.F(i) * sign(i + 1) if j == ell else ZERO)
    for i in cols:
        for k in cols:
            for t in cols:
                if len({i, k, t}) < 3:
                    continue
                lhs = sum((g.dF(i, ell, k) * g.x(ell, t) for ell in rows), ZERO)
                expect("distinct-zero", (i, k, t), lhs, ZERO)
    rep.params["checked"] = counts
    return rep.finalize()
