"""Command-line interface: build, verify, betti, generators, emit."""

from __future__ import annotations

import argparse
import json
import sys

from .bar import (bar_differential, poincare_coefficients, truncate_to_der)
from .coker import build_U
from .determinantal import build_generic, jacobian_transpose
from .hilbert_burch import build_hilbert_burch
from .poly import DEFAULT_PRIME, PolyMatrix
from .suite import full_suite, run_suite

OBJECTS = ("X", "minors", "jacobian", "hilbert-burch", "partial2", "U", "bar:<r>", "generators")


def is_prime(m: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24)."""
    if m < 2:
        return False
    bases = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if m in bases:
        return True
    if any(m % p == 0 for p in bases):
        return False
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        y = pow(a, d, m)
        if y in (1, m - 1):
            continue
        for _ in range(s - 1):
            y = y * y % m
            if y == m - 1:
                break
        else:
            return False
    return True


def parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="derbar", description="Resolutions of derivation modules of "
                                "generic n x (n+1) determinantal rings.")
    p.add_argument("command", choices=["build", "verify", "betti", "generators", "emit"])
    p.add_argument("--n", type=int, default=None, help="matrix size n >= 2 (default 2)")
    p.add_argument("--degree", type=int, default=None, help="degree limit >= 1 (default 4)")
    p.add_argument("--object", default=None, help="emit target: " + ", ".join(OBJECTS))
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p.add_argument("--trials", type=int, default=5)
    return p


def validate(p: argparse.ArgumentParser, args) -> None:
    if args.n is not None and args.n < 2:
        p.error("--n must be at least 2")
    if args.degree is not None and args.degree < 1:
        p.error("--degree must be at least 1")
    if args.prime <= 2**30 or not is_prime(args.prime):
        p.error("--prime must be a prime larger than 2^30")
    if args.trials < 1:
        p.error("--trials must be positive")
    if not -2**63 <= args.seed < 2**64:
        p.error("--seed must fit in 64 bits")
    if args.command == "emit":
        if args.object is None:
            p.error("emit needs --object")
        if args.object not in OBJECTS[:-2] + ("generators",) and not _bar_degree(args.object):
            p.error(f"unknown --object {args.object!r}")
    elif args.object is not None:
        p.error("--object only applies to emit")


def _bar_degree(obj: str) -> int | None:
    if obj.startswith("bar:"):
        try:
            r = int(obj[4:])
        except ValueError:
            return None
        return r if r >= 1 else None
    return None


def _matrix_json(m: PolyMatrix) -> dict:
    return m.to_dict()


def emit(obj: str, n: int, fmt: str) -> str:
    g = build_generic(n)
    if obj == "X":
        m = g.X
        return m.to_json() if fmt == "json" else m.to_text()
    if obj == "minors":
        if fmt == "json":
            return json.dumps({f"F[{r}]": str(g.F(r)) for r in range(1, n + 2)}, indent=2)
        return "\n".join(f"F[{r}] = {g.F(r)}" for r in range(1, n + 2))
    if obj == "jacobian":
        m = jacobian_transpose(g).matrix
        return m.to_json() if fmt == "json" else m.to_text()
    if obj == "hilbert-burch":
        h = build_hilbert_burch(g)
        d1, d2 = h.complex.d(1), h.complex.d(2)
        if fmt == "json":
            return json.dumps({"d1": d1.to_dict(), "d2": d2.to_dict(), "products": h.table_dump()},
                              indent=2)
        return "\n".join(["# d1", d1.to_text(), "# d2", d2.to_text(), "# products"] + h.table_dump())
    if obj == "partial2":
        m = build_U(g).partial2
        return m.to_json() if fmt == "json" else m.to_text()
    if obj == "U":
        U = build_U(g)
        d1, d2 = U.complex.d(1), U.complex.d(2)
        if fmt == "json":
            return json.dumps({"d1": d1.to_dict(), "d2": d2.to_dict(), "action": U.action_dump()},
                              indent=2)
        return "\n".join(["# d1", d1.to_text(), "# d2", d2.to_text(), "# action"] + U.action_dump())
    if obj == "generators":
        return generators(n, fmt)
    m = bar_differential(_bar_degree(obj), g)
    m = PolyMatrix(m.entries, [str(w) for w in m.row_labels], [str(w) for w in m.col_labels])
    return m.to_json() if fmt == "json" else m.to_text()


def generators(n: int, fmt: str) -> str:
    pres = truncate_to_der(build_generic(n))
    if fmt == "json":
        return json.dumps({name: {f"x[{i},{j}]": str(c) for (i, j), c in sorted(v.coords.items())}
                           for name, v in pres.generators}, indent=2)
    return "\n".join(pres.lines())


def build_summary(n: int, degree: int, fmt: str) -> str:
    g = build_generic(n)
    U = build_U(g)
    data = {
        "n": n,
        "A_ranks": U.A.complex.free_ranks,
        "U_ranks": U.complex.free_ranks,
        "bar_ranks": [len(bar_differential(r, g).col_labels) if r else n + 1 for r in range(degree + 1)],
        "generators": len(truncate_to_der(g).generators),
    }
    if fmt == "json":
        return json.dumps(data, indent=2)
    return "\n".join(f"{k}: {' '.join(map(str, v)) if isinstance(v, list) else v}" for k, v in data.items())


def main(argv=None) -> int:
    p = parser()
    args = p.parse_args(argv)
    validate(p, args)
    n = args.n if args.n is not None else 2
    degree = args.degree if args.degree is not None else 4
    out = sys.stdout
    if args.command == "emit":
        out.write(emit(args.object, n, args.format).rstrip("\n") + "\n")
        return 0
    if args.command == "betti":
        coeffs = poincare_coefficients(n, degree)
        if args.format == "json":
            out.write(json.dumps({"n": n, "degree": degree, "betti": coeffs}) + "\n")
        else:
            out.write(" ".join(map(str, coeffs)) + "\n")
        return 0
    if args.command == "generators":
        out.write(generators(n, args.format) + "\n")
        return 0
    if args.command == "build":
        out.write(build_summary(n, degree, args.format) + "\n")
        return 0
    if args.n is None and args.degree is None:
        reports = full_suite(args.prime, args.trials, args.seed)
    else:
        reports = run_suite(n, degree, args.prime, args.trials, args.seed)
    ok = all(r.passed for r in reports)
    for r in reports:
        if r.seed is None:
            r.seed = args.seed
    if args.format == "json":
        out.write(json.dumps({"seed": args.seed, "status": "pass" if ok else "fail",
                              "reports": [r.to_dict() for r in reports]}, indent=2) + "\n")
    else:
        for r in reports:
            out.write(r.summary() + "\n")
        failed = sum(not r.passed for r in reports)
        out.write(f"{'ALL PASS' if ok else f'{failed} FAILED'} ({len(reports)} checks, seed {args.seed})\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
