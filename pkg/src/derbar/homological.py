"""Graded complexes of free modules over the polynomial ring and checks on them."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .poly import DEFAULT_PRIME, ONE, ZERO, Polynomial, PolyMatrix, normal_form

# homological degree of each label kind
KIND_DEGREE = {"unit": 0, "e": 1, "T": 2, "a": 0, "b": 1, "c": 2}


class InvalidLabel(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BasisLabel:
    kind: str
    index: tuple = ()

    def __post_init__(self):
        if self.kind not in KIND_DEGREE:
            raise InvalidLabel(f"unknown label kind {self.kind!r}")
        if self.kind == "c" and tuple(self.index) == (1, 1):
            raise InvalidLabel("c[1,1] is not a basis element (taken to be 0)")

    @property
    def degree(self) -> int:
        return KIND_DEGREE[self.kind]

    def __str__(self) -> str:
        if self.kind == "unit":
            return "1"
        return f"{self.kind}[{','.join(str(i) for i in self.index)}]"


UNIT = BasisLabel("unit")


def label(kind: str, *index: int) -> BasisLabel:
    return BasisLabel(kind, tuple(index))


def fmt_coeff_times(coeff: Polynomial, name: str) -> tuple[bool, str]:
    """Render ``coeff*name``; returns (negative, body) so callers can join with signs."""
    if len(coeff) == 1:
        (m, c), = coeff.items()
        neg = c < 0
        mag = -coeff if neg else coeff
        if mag == ONE:
            return neg, name
        return neg, f"{mag}*{name}"
    return False, f"({coeff})*{name}"


class ChainElement:
    """Sparse combination of basis labels of one homological degree with polynomial coefficients."""

    __slots__ = ("degree", "coords")

    def __init__(self, degree: int, coords: Mapping | None = None):
        self.degree = degree
        self.coords = {k: v for k, v in (coords or {}).items() if v}

    @classmethod
    def basis(cls, lab, coeff: Polynomial = ONE) -> "ChainElement":
        return cls(lab.degree, {lab: coeff})

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __getitem__(self, lab) -> Polynomial:
        return self.coords.get(lab, ZERO)

    def __add__(self, other: "ChainElement") -> "ChainElement":
        if not other.coords:
            return self
        if not self.coords:
            return other
        if other.degree != self.degree:
            raise ValueError(f"adding chains of degrees {self.degree} and {other.degree}")
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, ZERO) + v
        return ChainElement(self.degree, out)

    def __neg__(self) -> "ChainElement":
        return ChainElement(self.degree, {k: -v for k, v in self.coords.items()})

    def __sub__(self, other: "ChainElement") -> "ChainElement":
        return self + (-other)

    def scale(self, p) -> "ChainElement":
        if not p:
            return ChainElement(self.degree)
        return ChainElement(self.degree, {k: v * p for k, v in self.coords.items()})

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainElement):
            return NotImplemented
        return self.coords == other.coords

    def constant_coordinates(self) -> list:
        return [k for k, v in self.coords.items() if v.constant_term()]

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        out = []
        for k in sorted(self.coords):
            neg, body = fmt_coeff_times(self.coords[k], str(k))
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"ChainElement({self.degree}, {str(self)!r})"


@dataclass
class GradedComplex:
    """Free modules in degrees ``0..s`` with differentials ``d_i`` from degree i to i-1."""

    bases: list[list]
    differentials: dict[int, PolyMatrix]
    name: str = ""

    def __post_init__(self):
        for i, d in self.differentials.items():
            if d.rows != len(self.bases[i - 1]) or d.cols != len(self.bases[i]):
                raise ValueError(f"d_{i} has shape {d.shape}, expected "
                                 f"{len(self.bases[i - 1])}x{len(self.bases[i])}")
        self._index = [{b: k for k, b in enumerate(basis)} for basis in self.bases]

    @property
    def top(self) -> int:
        return len(self.bases) - 1

    @property
    def free_ranks(self) -> list[int]:
        return [len(b) for b in self.bases]

    def d(self, i: int) -> PolyMatrix:
        return self.differentials[i]

    def boundary(self, lab) -> ChainElement:
        """Image of a basis element under the differential."""
        deg = lab.degree
        if deg == 0 or deg not in self.differentials:
            return ChainElement(deg - 1)
        col = self._index[deg][lab]
        m = self.differentials[deg]
        return ChainElement(deg - 1, {self.bases[deg - 1][i]: m.entries[i][col] for i in range(m.rows)})

    def apply_d(self, chain: ChainElement) -> ChainElement:
        out = ChainElement(chain.degree - 1)
        for lab, coeff in chain.coords.items():
            out = out + self.boundary(lab).scale(coeff)
        return out


@dataclass
class VerificationReport:
    check: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    witnesses: list = field(default_factory=list)
    seed: int | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status in ("pass", "assumed")

    def fail(self, *witness) -> None:
        self.status = "fail"
        self.witnesses.append(witness[0] if len(witness) == 1 else list(witness))

    def finalize(self) -> "VerificationReport":
        self.witnesses.sort(key=lambda w: json.dumps(w, default=str))
        return self

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "status": self.status,
            "witnesses": json.loads(json.dumps(self.witnesses, default=str)),
            "seed": self.seed,
            **({"notes": self.notes} if self.notes else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def summary(self) -> str:
        extra = f" ({len(self.witnesses)} witnesses)" if self.witnesses else ""
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        return f"{self.status.upper():5s} {self.check} [{params}]{extra}"


def compose_check(c: GradedComplex, modulo: Sequence[Polynomial] | None = None) -> VerificationReport:
    """Check ``d_i o d_{i+1} = 0``, exactly or modulo the ideal generated by ``modulo``."""
    rep = VerificationReport("compose", {"complex": c.name, "modulo": "I_n" if modulo else "none"})
    for i in sorted(c.differentials):
        if i + 1 not in c.differentials:
            continue
        comp = c.d(i) @ c.d(i + 1)
        for r, col, e in comp.nonzero_entries():
            if modulo and not normal_form(e, modulo):
                continue
            rep.fail([i, str(comp.row_labels[r]), str(comp.col_labels[col])])
    return rep.finalize()


def minimality_check(c: GradedComplex) -> VerificationReport:
    """Every differential entry must lie in the homogeneous maximal ideal."""
    rep = VerificationReport("minimality", {"complex": c.name})
    for i, d in sorted(c.differentials.items()):
        for r, col, e in d.nonzero_entries():
            if e.constant_term():
                rep.fail([i, str(d.row_labels[r]), str(d.col_labels[col]), str(e)])
    return rep.finalize()


def all_variables(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 2)]


def matrix_variables(m: PolyMatrix) -> set:
    out = set()
    for _, _, e in m.nonzero_entries():
        out |= e.variables()
    return out


def random_assignment(variables: Iterable, rng: random.Random, prime: int = DEFAULT_PRIME) -> dict:
    return {v: rng.randrange(prime) for v in sorted(variables)}


def variety_point(n: int, rng: random.Random, prime: int = DEFAULT_PRIME) -> dict:
    """Random point of the determinantal variety: X = P*Q with inner dimension n-1."""
    p = [[rng.randrange(prime) for _ in range(n - 1)] for _ in range(n)]
    q = [[rng.randrange(prime) for _ in range(n + 1)] for _ in range(n - 1)]
    return {(i + 1, j + 1): sum(p[i][k] * q[k][j] for k in range(n - 1)) % prime
            for i in range(n) for j in range(n + 1)}


def specialize_matrix(m: PolyMatrix, assignment: Mapping, prime: int = DEFAULT_PRIME) -> list[list[int]]:
    return [[e.evaluate_mod(assignment, prime) if e else 0 for e in row] for row in m.entries]


def matmul_mod(a: list[list[int]], b: list[list[int]], prime: int) -> list[list[int]]:
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, v in enumerate(row):
            if v:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += v * bk[j]
        out.append([t % prime for t in acc])
    return out


def rank_mod_p(rows: list[list[int]], prime: int = DEFAULT_PRIME) -> int:
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][col] % prime), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], -1, prime)
        prow = [v * inv % prime for v in a[rank]]
        a[rank] = prow
        for i in range(len(a)):
            if i != rank and a[i][col] % prime:
                f = a[i][col]
                a[i] = [(v - f * w) % prime for v, w in zip(a[i], prow)]
        rank += 1
        if rank == len(a):
            break
    return rank


def rank_probe(m: PolyMatrix, prime: int = DEFAULT_PRIME, trials: int = 5,
               seed: int = 0, per_trial: list | None = None) -> int:
    """Max rank over ``trials`` random specializations mod ``prime``.

    Always a lower bound for the rank over the fraction field.  Pass a list as
    ``per_trial`` to collect the individual trial ranks.
    """
    if prime <= 2**30:
        raise ValueError("prime must exceed 2^30")
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    vars_ = matrix_variables(m)
    best = 0
    for _ in range(trials):
        a = random_assignment(vars_, rng, prime)
        r = rank_mod_p(specialize_matrix(m, a, prime), prime)
        if per_trial is not None:
            per_trial.append(r)
        best = max(best, r)
    return best


def be_condition_one(c: GradedComplex, ranks: Mapping[int, int] | Sequence[int]) -> VerificationReport:
    """Rank half of the Buchsbaum-Eisenbud criterion: ``f_i = r_i + r_{i+1}`` for ``1 <= i <= s``.

    ``ranks`` maps i to the rank of ``d_i`` (a sequence is read as ``r_1, r_2, ...``).
    """
    if not isinstance(ranks, Mapping):
        ranks = {i + 1: r for i, r in enumerate(ranks)}
    s = c.top
    rep = VerificationReport("buchsbaum-eisenbud-rank", {"complex": c.name,
                                                         "ranks": [ranks.get(i, 0) for i in range(1, s + 1)]})
    f = c.free_ranks
    for i in range(1, s + 1):
        lhs = f[i]
        rhs = ranks.get(i, 0) + ranks.get(i + 1, 0)
        if lhs != rhs:
            rep.fail({"i": i, "f_i": lhs, "r_i + r_i+1": rhs})
    rep.notes.append("grade condition (ii) not computed: assumed (grade of the ideals of "
                     "rank-size minors taken as proved)")
    return rep.finalize()
