"""Exact sparse multivariate polynomials in the variables x[i,j].

A monomial is a tuple of ``((row, col), exponent)`` pairs sorted by variable,
with variables ordered row-major.  Term order is lexicographic with
``x[1,1] > x[1,2] > ... > x[1,n+1] > x[2,1] > ...``; under this order the
leading term of a maximal minor of the generic matrix is its main diagonal.
"""

from __future__ import annotations

import heapq
import json
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

DEFAULT_PRIME = 2**31 - 1

Var = tuple[int, int]
Monomial = tuple[tuple[Var, int], ...]

ONE_MONO: Monomial = ()


class NonSquare(ValueError):
    pass


class MissingAssignment(KeyError):
    pass


class ParseError(ValueError):
    pass


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_divides(m1: Monomial, m2: Monomial) -> bool:
    """True when ``m1`` divides ``m2``."""
    if len(m1) > len(m2):
        return False
    d = dict(m2)
    return all(d.get(v, 0) >= e for v, e in m1)


def mono_div(m2: Monomial, m1: Monomial) -> Monomial:
    d = dict(m2)
    for v, e in m1:
        d[v] -= e
    return tuple(sorted((v, e) for v, e in d.items() if e))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def lex_key(m: Monomial):
    """Sort key realizing the lex-rowmajor term order (larger key = larger monomial)."""
    return tuple((-v[0], -v[1], e) for v, e in m)


def mono_str(m: Monomial) -> str:
    parts = []
    for (i, j), e in m:
        parts.append(f"x[{i},{j}]" if e == 1 else f"x[{i},{j}]^{e}")
    return "*".join(parts)


class Polynomial:
    """Immutable sparse polynomial with exact (integer or rational) coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _norm(c)
                if c:
                    clean[tuple(sorted(m))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, i: int, j: int) -> "Polynomial":
        return cls._raw({(((i, j), 1),): 1})

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = _norm(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # arithmetic

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Polynomial._raw({m: _norm(c * other) for m, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return ZERO
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw({m: _norm(c) for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # structure

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in descending term order."""
        return sorted(self._terms.items(), key=lambda t: lex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self._terms, key=lex_key)
        return m, self._terms[m]

    def degree(self):
        """Total degree; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return -math.inf
        return max(mono_degree(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self._terms}) <= 1

    def constant_term(self):
        return self._terms.get(ONE_MONO, 0)

    def variables(self) -> set[Var]:
        return {v for m in self._terms for v, _ in m}

    def derivative(self, v: Var) -> "Polynomial":
        out: dict = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if not e:
                continue
            if e == 1:
                del d[v]
            else:
                d[v] = e - 1
            nm = tuple(sorted(d.items()))
            out[nm] = out.get(nm, 0) + c * e
        return Polynomial(out)

    def evaluate_mod(self, assignment: Mapping[Var, int], prime: int = DEFAULT_PRIME) -> int:
        total = 0
        for m, c in self._terms.items():
            if isinstance(c, Fraction):
                t = c.numerator * pow(c.denominator, -1, prime)
            else:
                t = c
            for v, e in m:
                try:
                    a = assignment[v]
                except KeyError:
                    raise MissingAssignment(v) from None
                t = t * pow(a, e, prime) % prime
            total += t
        return total % prime

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if not m:
                body = str(a)
            elif a == 1:
                body = mono_str(m)
            else:
                body = f"{a}*{mono_str(m)}"
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    return NotImplemented


ZERO = Polynomial._raw({})
ONE = Polynomial._raw({ONE_MONO: 1})


def x(i: int, j: int) -> Polynomial:
    return Polynomial.var(i, j)


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def partial_derivative(p: Polynomial, v: Var) -> Polynomial:
    return p.derivative(tuple(v))


def specialize(p: Polynomial, assignment: Mapping[Var, int], prime: int = DEFAULT_PRIME) -> int:
    """Evaluate ``p`` in the prime field; every variable of ``p`` must be assigned."""
    return p.evaluate_mod(assignment, prime)


# parsing

_TOKEN = re.compile(r"\s*(?:(x\[\s*(\d+)\s*,\s*(\d+)\s*\])|(\d+(?:/\d+)?)|(\^)|([*+\-]))")


def parse_poly(text: str) -> Polynomial:
    """Parse the canonical text syntax, e.g. ``"x[1,2]*x[2,3] - x[1,3]*x[2,2]"``."""
    s = text.strip()
    if s == "0":
        return ZERO
    pos = 0
    tokens = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {pos}: {s[pos:]!r}")
        if m.group(1):
            tokens.append(("var", (int(m.group(2)), int(m.group(3)))))
        elif m.group(4):
            tokens.append(("num", Fraction(m.group(4))))
        elif m.group(5):
            tokens.append(("pow", None))
        else:
            tokens.append(("op", m.group(6)))
        pos = m.end()

    terms: dict = {}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def factor():
        nonlocal pos
        kind, val = peek()
        if kind == "num":
            pos += 1
            return val, {}
        if kind == "var":
            pos += 1
            e = 1
            if peek()[0] == "pow":
                pos += 1
                k2, v2 = peek()
                if k2 != "num" or v2.denominator != 1:
                    raise ParseError(f"bad exponent in {text!r}")
                pos += 1
                e = int(v2)
            return Fraction(1), {val: e}
        raise ParseError(f"expected a factor in {text!r}")

    sign = 1
    if peek() == ("op", "-") or peek() == ("op", "+"):
        sign = -1 if tokens[0][1] == "-" else 1
        pos += 1
    while True:
        coeff, mono = factor()
        while peek() == ("op", "*"):
            pos += 1
            c, m = factor()
            coeff *= c
            for v, e in m.items():
                mono[v] = mono.get(v, 0) + e
        key = tuple(sorted(mono.items()))
        terms[key] = terms.get(key, 0) + sign * coeff
        if pos == len(tokens):
            break
        kind, val = peek()
        if kind != "op" or val not in "+-":
            raise ParseError(f"unexpected token {val!r} in {text!r}")
        sign = -1 if val == "-" else 1
        pos += 1
    return Polynomial(terms)


# division

class _TermQueue:
    """Pending terms of a division, popped largest first under lex-rowmajor."""

    def __init__(self, terms: dict, variables):
        self.order = sorted(variables)
        self.terms = dict(terms)
        self.heap = [(self._key(m), m) for m in self.terms]
        heapq.heapify(self.heap)

    def _key(self, m: Monomial):
        d = dict(m)
        return tuple(-d.get(v, 0) for v in self.order)

    def __bool__(self) -> bool:
        while self.heap and self.heap[0][1] not in self.terms:
            heapq.heappop(self.heap)
        return bool(self.heap)

    def pop(self) -> tuple[Monomial, object]:
        _, m = heapq.heappop(self.heap)
        while self.heap and self.heap[0][1] == m:
            heapq.heappop(self.heap)
        return m, self.terms.pop(m)

    def subtract(self, m: Monomial, c) -> None:
        s = self.terms.get(m, 0) - c
        if s:
            if m not in self.terms:
                heapq.heappush(self.heap, (self._key(m), m))
            self.terms[m] = _norm(s)
        else:
            self.terms.pop(m, None)


def exact_div(p: Polynomial, d: Polynomial) -> Polynomial:
    """Quotient of ``p`` by ``d``; raises ArithmeticError unless ``d`` divides ``p``."""
    if d == ONE:
        return p
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    lm, lc = d.leading_term()
    work = _TermQueue(p.terms, p.variables() | d.variables())
    quo: dict = {}
    while work:
        m, c = work.pop()
        if not mono_divides(lm, m):
            raise ArithmeticError("inexact polynomial division")
        qm = mono_div(m, lm)
        qc = _norm(Fraction(c) / lc)
        quo[qm] = qc
        for dm, dc in d.items():
            if dm != lm:
                work.subtract(mono_mul(qm, dm), qc * dc)
    return Polynomial(quo)


def normal_form(p: Polynomial, gens: Sequence[Polynomial], order: str = "lex-rowmajor") -> Polynomial:
    """Remainder of multivariate division of ``p`` by ``gens``.

    No term of the result is divisible by a leading monomial of a generator,
    and ``p - result`` lies in the ideal generated by ``gens``.
    """
    if order != "lex-rowmajor":
        raise ValueError(f"unsupported term order {order!r}")
    if not gens or any(not g for g in gens):
        raise ValueError("generators must be a nonempty list of nonzero polynomials")
    leads = [(g.leading_term(), g) for g in gens]
    variables = set(p.variables())
    for g in gens:
        variables |= g.variables()
    work = _TermQueue(p.terms, variables)
    rem: dict = {}
    while work:
        m, c = work.pop()
        for (lm, lc), g in leads:
            if mono_divides(lm, m):
                qm = mono_div(m, lm)
                qc = Fraction(c) / lc
                for gm, gc in g.items():
                    if gm != lm:
                        work.subtract(mono_mul(qm, gm), qc * gc)
                break
        else:
            rem[m] = c
    return Polynomial(rem)


# matrices

class PolyMatrix:
    """Dense grid of polynomials with row and column labels."""

    __slots__ = ("entries", "row_labels", "col_labels")

    def __init__(self, entries, row_labels=None, col_labels=None):
        self.entries = [list(r) for r in entries]
        nrows = len(self.entries)
        ncols = len(self.entries[0]) if nrows else (len(col_labels) if col_labels else 0)
        for r in self.entries:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.row_labels = list(row_labels) if row_labels is not None else [str(i + 1) for i in range(nrows)]
        self.col_labels = list(col_labels) if col_labels is not None else [str(j + 1) for j in range(ncols)]
        if len(self.row_labels) != nrows or len(self.col_labels) != ncols:
            raise ValueError("label counts do not match dimensions")

    @classmethod
    def zeros(cls, row_labels, col_labels) -> "PolyMatrix":
        return cls([[ZERO] * len(col_labels) for _ in row_labels], row_labels, col_labels)

    @property
    def rows(self) -> int:
        return len(self.row_labels)

    @property
    def cols(self) -> int:
        return len(self.col_labels)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[Polynomial]:
        return [r[j] for r in self.entries]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(c) for c in zip(*self.entries)] if self.rows else [],
                          self.col_labels, self.row_labels)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        # sparse row representation of the right factor
        right = [[(j, e) for j, e in enumerate(row) if e] for row in other.entries]
        out = []
        for row in self.entries:
            acc: dict[int, Polynomial] = {}
            for k, a in enumerate(row):
                if not a:
                    continue
                for j, b in right[k]:
                    acc[j] = acc.get(j, ZERO) + a * b
            out.append([acc.get(j, ZERO) for j in range(other.cols)])
        return PolyMatrix(out, self.row_labels, other.col_labels)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "PolyMatrix":
        rows, cols = list(rows), list(cols)
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows],
                          [self.row_labels[i] for i in rows], [self.col_labels[j] for j in cols])

    def nonzero_entries(self):
        for i, r in enumerate(self.entries):
            for j, e in enumerate(r):
                if e:
                    yield i, j, e

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def to_text(self) -> str:
        """Tab-separated rendering: header row of column labels, then one labeled row per line."""
        lines = ["\t" + "\t".join(str(c) for c in self.col_labels)]
        for lab, r in zip(self.row_labels, self.entries):
            lines.append(str(lab) + "\t" + "\t".join(str(e) for e in r))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "rows": [str(r) for r in self.row_labels],
            "cols": [str(c) for c in self.col_labels],
            "entries": [[str(e) for e in r] for r in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_text(cls, text: str) -> "PolyMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        cols = lines[0].split("\t")[1:]
        rows, entries = [], []
        for ln in lines[1:]:
            fields = ln.split("\t")
            rows.append(fields[0])
            entries.append([parse_poly(f) for f in fields[1:]])
        return cls(entries, rows, cols)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"


def _laplace(m: list[list[Polynomial]]) -> Polynomial:
    size = len(m)
    if size == 0:
        return ONE
    if size == 1:
        return m[0][0]
    if size == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = ZERO
    for j, a in enumerate(m[0]):
        if not a:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = a * _laplace(minor)
        total = total - term if j % 2 else total + term
    return total


def _bareiss(m: list[list[Polynomial]]) -> Polynomial:
    a = [list(r) for r in m]
    size = len(a)
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(size - 1):
        if not a[k][k]:
            for i in range(k + 1, size):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        pivot = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = exact_div(a[i][j] * pivot - a[i][k] * a[k][j], prev)
        prev = pivot
    return a[-1][-1] * sign


def determinant(m, method: str | None = None) -> Polynomial:
    """Exact determinant.  Default: Laplace expansion below size 4, fraction-free Bareiss otherwise."""
    rows = m.entries if isinstance(m, PolyMatrix) else [list(r) for r in m]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise NonSquare(f"matrix is not square ({size} rows)")
    if method is None:
        method = "bareiss" if size >= 4 else "laplace"
    if method == "laplace":
        return _laplace(rows)
    if method == "bareiss":
        return _bareiss(rows)
    raise ValueError(f"unknown determinant method {method!r}")
