"""N-coefficient polynomials, finitely presented partial rings and their points.

A presentation ``F1<x_1..x_n | ∃ s_1..s_r> / <Q>`` is never built as a ring.
It is only evaluated through its Hom-sets: a homomorphism into a finite
partial ring A is the same as an assignment of the generators under which
every s in S can be calculated and every pair in Q evaluates equal.  (The
kernel pair of any such homomorphism is a congruence containing Q, hence
containing the congruence Q generates.)
"""

from __future__ import annotations

import ast
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import config
from .core import UNDEF, PartialRing, sum_multiset
from .errors import BudgetExceeded, ParseError

log = logging.getLogger(__name__)

Exp = tuple[int, ...]


@dataclass(frozen=True)
class NatPoly:
    """Polynomial in ``nvars`` variables with positive natural coefficients."""

    nvars: int
    terms: tuple[tuple[Exp, int], ...] = ()

    @classmethod
    def make(cls, nvars: int, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]]) -> "NatPoly":
        acc: dict[Exp, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            if len(e) != nvars:
                raise ParseError(f"exponent {e} does not have {nvars} entries")
            if c < 0:
                raise ParseError("coefficients must be natural numbers")
            if c:
                acc[e] = acc.get(e, 0) + c
        return cls(nvars, tuple(sorted(acc.items())))

    @classmethod
    def const(cls, nvars: int, c: int) -> "NatPoly":
        return cls.make(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "NatPoly":
        return cls.make(nvars, {tuple(1 if k == i else 0 for k in range(nvars)): 1})

    def __add__(self, other: "NatPoly") -> "NatPoly":
        return NatPoly.make(self.nvars, list(self.terms) + list(other.terms))

    def __mul__(self, other: "NatPoly") -> "NatPoly":
        out: dict[Exp, int] = {}
        for e, c in self.terms:
            for f, d in other.terms:
                g = tuple(x + y for x, y in zip(e, f))
                out[g] = out.get(g, 0) + c * d
        return NatPoly.make(self.nvars, out)

    def __pow__(self, k: int) -> "NatPoly":
        out = NatPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def variables(self) -> set[int]:
        return {i for e, _ in self.terms for i, x in enumerate(e) if x}

    def is_zero(self) -> bool:
        return not self.terms

    def show(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            factors = [names[i] if x == 1 else f"{names[i]}^{x}" for i, x in enumerate(e) if x]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)


def monomials(p: NatPoly) -> list[Exp]:
    """Monomials with coefficient 1, repeated according to the coefficients."""
    return [e for e, c in p.terms for _ in range(c)]


def eval_monomial(A: PartialRing, m: Exp, asg: Sequence[int]) -> int:
    acc = A.one
    for i, k in enumerate(m):
        for _ in range(k):
            acc = A.mul[acc][asg[i]]
    return acc


def evaluate(A: PartialRing, p: NatPoly, asg: Sequence[int]) -> int | None:
    """Value of p at the assignment, or None if it cannot be calculated."""
    return sum_multiset(A, [eval_monomial(A, m, asg) for m in monomials(p)])


def can_calculate(A: PartialRing, p: NatPoly, asg: Sequence[int]) -> bool:
    return evaluate(A, p, asg) is not None


# --------------------------------------------------------------------------
# parsing


_ALLOWED = (ast.Expression, ast.BinOp, ast.Add, ast.Mult, ast.Pow, ast.Name, ast.Constant, ast.Load)


def parse_poly(text: str, generators: Sequence[str]) -> NatPoly:
    """Parse ``+``, ``*``, ``^`` over generator names and natural literals."""
    src = str(text).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as e:
        raise ParseError(f"cannot parse polynomial {text!r}: {e.msg}") from None
    pos = {g: i for i, g in enumerate(generators)}
    n = len(generators)

    def walk(node) -> NatPoly:
        if not isinstance(node, _ALLOWED):
            raise ParseError(f"unsupported syntax in {text!r}: {type(node).__name__}")
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if not isinstance(node.value, int) or isinstance(node.value, bool) or node.value < 0:
                raise ParseError(f"only natural literals are allowed in {text!r}")
            return NatPoly.const(n, node.value)
        if isinstance(node, ast.Name):
            if node.id not in pos:
                raise ParseError(f"unknown generator {node.id!r} in {text!r}")
            return NatPoly.var(n, pos[node.id])
        if not isinstance(node.op, (ast.Add, ast.Mult, ast.Pow)):
            raise ParseError(f"unsupported operator in {text!r}: {type(node.op).__name__}")
        if isinstance(node.op, ast.Pow):
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise ParseError(f"exponents must be natural literals in {text!r}")
            return walk(node.left) ** node.right.value
        left, right = walk(node.left), walk(node.right)
        return left + right if isinstance(node.op, ast.Add) else left * right

    return walk(tree)


# --------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    summable: tuple[NatPoly, ...] = ()
    relations: tuple[tuple[NatPoly, NatPoly], ...] = ()
    label: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise ParseError("generator names must be distinct")
        for p in list(self.summable) + [q for pair in self.relations for q in pair]:
            if p.nvars != n:
                raise ParseError("polynomial arity does not match the generator count")

    @classmethod
    def parse(cls, generators: Sequence[str], summable: Iterable[str] = (),
              relations: Iterable[tuple[str, str]] = (), label: str = "") -> "Presentation":
        gens = tuple(generators)
        S = tuple(parse_poly(s, gens) for s in summable)
        Q = []
        for pair in relations:
            if len(pair) != 2:
                raise ParseError(f"relation {pair!r} is not a pair")
            Q.append((parse_poly(pair[0], gens), parse_poly(pair[1], gens)))
        return cls(gens, S, tuple(Q), label)

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def show(self) -> str:
        g = self.generators
        s = ", ".join(p.show(g) for p in self.summable)
        q = ", ".join(f"({u.show(g)}, {v.show(g)})" for u, v in self.relations)
        return f"F1<{', '.join(g)} | ∃ {s}> / <{q}>"


# --------------------------------------------------------------------------
# solver


@dataclass
class SolveStats:
    nodes: int = 0
    solutions: int = 0
    order: tuple[int, ...] = ()


def _variable_order(P: Presentation, tracks: list[list[Exp]]) -> list[int]:
    """Greedy static order: prefer variables that complete monomials soonest."""
    n = P.ngens
    supports = [[{i for i, x in enumerate(m) if x} for m in t] for t in tracks]
    chosen: list[int] = []
    done: set[int] = set()
    while len(chosen) < n:
        best, best_key = None, None
        for v in range(n):
            if v in done:
                continue
            completes = touches = 0
            for sup in supports:
                for s in sup:
                    if v in s:
                        touches += 1
                        if s - done <= {v}:
                            completes += 1
            key = (completes, touches, -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        chosen.append(best)
        done.add(best)
    return chosen


def solve_homs(P: Presentation, A: PartialRing, *, max_nodes: int | None = None,
               limit: int | None = None, stats: SolveStats | None = None) -> list[tuple[int, ...]]:
    """All generator assignments that define a homomorphism ``P -> A``.

    Backtracking with forward checking: every summability polynomial (and
    both sides of every relation, which must be calculable) is tracked as a
    running partial sum over the monomials whose variables are already
    fixed.  Sub-sums of summable multisets are summable, so an undefined
    partial sum prunes the whole subtree.
    """
    max_nodes = config.MAX_NODES if max_nodes is None else max_nodes
    n = P.ngens
    polys = list(P.summable) + [p for pair in P.relations for p in pair]
    tracks = [monomials(p) for p in polys]
    order = _variable_order(P, tracks)
    depth_of = {v: d for d, v in enumerate(order)}

    due: list[list[tuple[int, Exp]]] = [[] for _ in range(n + 1)]
    last_depth = []
    for t, mons in enumerate(tracks):
        deepest = -1
        for m in mons:
            d = max((depth_of[i] for i, x in enumerate(m) if x), default=-1)
            due[d + 1].append((t, m))
            deepest = max(deepest, d)
        last_depth.append(deepest)
    nS = len(P.summable)
    # relation k compares tracks nS+2k and nS+2k+1; check once both are complete
    checks: list[list[int]] = [[] for _ in range(n + 1)]
    for k in range(len(P.relations)):
        d = max(last_depth[nS + 2 * k], last_depth[nS + 2 * k + 1])
        checks[d + 1].append(k)

    add, mul, one, zero = A.add, A.mul, A.one, A.zero
    asg = [zero] * n
    sums = [zero] * len(tracks)
    out: list[tuple[int, ...]] = []
    nodes = 0

    def mon_value(m):
        acc = one
        for i, k in enumerate(m):
            for _ in range(k):
                acc = mul[acc][asg[i]]
        return acc

    def settle(level) -> list[tuple[int, int]] | None:
        """Fold monomials due at ``level``; return the undo log or None on failure."""
        undo = []
        for t, m in due[level]:
            s = add[sums[t]][mon_value(m)]
            if s == UNDEF:
                for tt, old in reversed(undo):
                    sums[tt] = old
                return None
            undo.append((t, sums[t]))
            sums[t] = s
        for k in checks[level]:
            if sums[nS + 2 * k] != sums[nS + 2 * k + 1]:
                for tt, old in reversed(undo):
                    sums[tt] = old
                return None
        return undo

    def rec(d):
        nonlocal nodes
        if d == n:
            out.append(tuple(asg))
            return limit is not None and len(out) >= limit
        v = order[d]
        for c in A.elements:
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceeded(f"solver exceeded {max_nodes} nodes", used=nodes, limit=max_nodes)
            asg[v] = c
            undo = settle(d + 1)
            if undo is None:
                continue
            stop = rec(d + 1)
            for t, old in reversed(undo):
                sums[t] = old
            if stop:
                return True
        asg[v] = zero
        return False

    if settle(0) is not None:
        rec(0)
    else:
        log.debug("constant part of %s is not calculable in %s", P.label or "presentation", A.label)
    if stats is not None:
        stats.nodes, stats.solutions, stats.order = nodes, len(out), tuple(order)
    return sorted(out)


def solve_homs_brute_force(P: Presentation, A: PartialRing) -> list[tuple[int, ...]]:
    """Reference enumeration over all |A|^n assignments."""
    import itertools

    total = A.size ** P.ngens
    if total > config.MAX_CANDIDATES:
        raise BudgetExceeded(f"{total} candidate assignments", used=total, limit=config.MAX_CANDIDATES)
    out = []
    for asg in itertools.product(A.elements, repeat=P.ngens):
        if not all(can_calculate(A, s, asg) for s in P.summable):
            continue
        ok = True
        for u, v in P.relations:
            a, b = evaluate(A, u, asg), evaluate(A, v, asg)
            if a is None or b is None or a != b:
                ok = False
                break
        if ok:
            out.append(asg)
    return out


# --------------------------------------------------------------------------
# compiled membership test


@lru_cache(maxsize=64)
def _compiled(P: Presentation):
    def comp(p):
        return [[i for i, k in enumerate(m) for _ in range(k)] for m in monomials(p)]

    return [comp(s) for s in P.summable], [(comp(u), comp(v)) for u, v in P.relations]


def is_point(P: Presentation, A: PartialRing, asg: Sequence[int]) -> bool:
    """Whether an assignment defines a homomorphism ``P -> A``."""
    S, Q = _compiled(P)
    mul, one = A.mul, A.one

    def value(mons):
        vals = []
        for m in mons:
            acc = one
            for i in m:
                acc = mul[acc][asg[i]]
            vals.append(acc)
        return sum_multiset(A, vals)

    if any(value(s) is None for s in S):
        return False
    for u, v in Q:
        a = value(u)
        if a is None or a != value(v):
            return False
    return True
