"""Command line front end.

Exit codes: 0 everything held, 1 axiom/validation failure, 2 unreadable
input, 3 budget exceeded, 4 an internal cross-check disagreed.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from typing import Callable

import yaml

from .config import WorkspaceConfig
from .core import Kind, PartialRing, validate
from .errors import AxiomError, BudgetExceeded, CrossCheckFailure, NotAPartialField, ParseError, StructureError
from .io import dump_ring, resolve_ring

log = logging.getLogger("pring")

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_BUDGET, EXIT_CROSSCHECK = 0, 1, 2, 3, 4


class Report:
    """Collects delimited text sections or a YAML document, plus cross-check verdicts."""

    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout
        self.doc: dict = {}
        self.checks: list[tuple[str, bool]] = []
        self.figures: list[str] = []

    def section(self, title: str, lines):
        if self.fmt == "text":
            print(f"== {title} ==", file=self.out)
            for ln in lines:
                print(ln, file=self.out)

    def put(self, key, value):
        self.doc[key] = value

    def check(self, name: str, ok: bool):
        self.checks.append((name, bool(ok)))

    def figure(self, path: str):
        self.figures.append(path)

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)

    def finish(self, document: str | None = None):
        if self.checks:
            self.section("checks", [f"{'ok  ' if ok else 'FAIL'} {name}" for name, ok in self.checks])
            self.doc["checks"] = {name: ok for name, ok in self.checks}
        if self.figures:
            self.section("figures", self.figures)
            self.doc["figures"] = self.figures
        if self.fmt == "doc":
            if document is not None:
                self.out.write(document)
            else:
                yaml.safe_dump(self.doc, self.out, sort_keys=False, allow_unicode=True)
        return EXIT_OK if self.ok else EXIT_CROSSCHECK


def _load(args, spec: str) -> PartialRing:
    return resolve_ring(spec, args.path).structure


# --------------------------------------------------------------------------
# commands


def cmd_validate(args, rep: Report) -> int:
    from .io import load_ring_document

    doc = load_ring_document(args.file)
    A = doc.structure
    level = Kind(args.level) if args.level else (Kind.RING if isinstance(A, PartialRing) else Kind.MONOID)
    result = validate(A, level)
    rep.section("structure", [f"{A.label or args.file}: {A.size} elements, level {level.value}",
                              f"raw tables: {doc.raw}"])
    rep.section("validation", str(result).splitlines())
    rep.put("valid", result.ok)
    rep.put("violations", [{"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
                           for v in result.violations])
    if args.figures:
        from .plots import cayley_figure
        rep.figure(cayley_figure(A, args.figures))
    code = rep.finish()
    return EXIT_INVALID if not result.ok else code


def cmd_spec(args, rep: Report) -> int:
    from .spectrum import gamma, spec, spec_gamma_check

    A = _load(args, args.ring)
    X = spec(A)
    G, g = gamma(A, X)
    iso = spec_gamma_check(A)
    rep.section("points", [f"p{i} = {p}" for i, p in enumerate(X.points)] or ["(empty space)"])
    rep.section("basis", [f"D({A.names[a]}) = {{{', '.join(f'p{i}' for i in sorted(X.D(a)))}}}"
                          for a in A.elements])
    rep.section("stalks", [f"p{i}: |A_p| = {X.stalk(i).ring.size}" for i in range(X.size)])
    rep.section("global sections", [f"|Γ| = {G.ring.size}", f"γ injective: {g.is_injective()}",
                                    f"γ bijective: {g.is_injective() and g.is_surjective()}"])
    rep.put("ring", A.label)
    rep.put("points", [p.names() for p in X.points])
    rep.put("basis", {A.names[a]: sorted(X.D(a)) for a in A.elements})
    rep.put("stalk_sizes", [X.stalk(i).ring.size for i in range(X.size)])
    rep.put("gamma_size", G.ring.size)
    rep.check("γ injective", g.is_injective())
    rep.check("Spec Γ ≅ Spec A", iso.ok)
    for f in iso.failures:
        rep.section("spec-gamma failure", [f])
    if args.figures:
        from .plots import spectrum_figure
        rep.figure(spectrum_figure(X, args.figures))
    return rep.finish()


def cmd_group(args, rep: Report) -> int:
    from .groups import cycle_notation, evaluate_group, functor_matrix_agreement, symmetric_group_iso
    from .linalg import gl_prime
    from .pointgroup import is_group, is_partial_group

    if len(args.rest) == 1:
        n, ring = args.n or 1, args.rest[0]
    elif len(args.rest) == 2:
        n, ring = int(args.rest[0]), args.rest[1]
    else:
        raise ParseError("usage: group KIND [N] RING")
    A = _load(args, ring)
    G = evaluate_group(args.kind, A, n)
    pg, gg = is_partial_group(G), is_group(G)
    lines = [f"order {G.order}", f"partial group: {pg.ok}" + (f" ({pg.witness})" if pg.witness else ""),
             f"group: {gg.ok}" + (f" ({gg.witness})" if gg.witness else ""),
             f"defined products: {100 * G.defined_fraction():.1f}%"]
    if gg.ok:
        lines.append(f"abelian: {G.is_abelian()}")
    rep.section(f"{G.label}", lines)
    rep.put("group", G.label)
    rep.put("order", G.order)
    rep.put("partial_group", pg.ok)
    rep.put("group_law", gg.ok)
    rep.check("partial group", pg.ok)
    if G.order <= 12:
        width = max(len(s) for s in G.labels) if G.labels else 1
        rows = [" ".join(c.ljust(width) for c in row) for row in G.cayley()]
        rep.section("elements", [f"{k}: {s}" for k, s in enumerate(G.labels)])
        rep.section("cayley table", rows)
    if args.kind == "gln":
        M = gl_prime(A, n)
        agree = functor_matrix_agreement(A, n, G=G, M=M)
        rep.section("matrix route", [f"|GL'_{n}| = {M.order}", f"agreement: {agree.ok}"
                                     + (f" ({agree.mismatch})" if agree.mismatch else "")])
        rep.check("functor and matrix routes agree", agree.ok)
        if A.label == "F1":
            sym = symmetric_group_iso(G, A, n)
            rep.check(f"isomorphic to S{n}", sym.ok)
            if sym.ok:
                rep.section(f"S{n} labels", [f"{G.labels[k]} -> {cycle_notation(p)}" for k, p in enumerate(sym.perms)])
                lines = [f"order {G.order}, S{n}"]
            else:
                lines = [f"order {G.order}, not S{n}: {sym.failure}"]
            rep.section("summary", lines)
            rep.put("symmetric", sym.ok)
    if args.figures:
        from .plots import group_figure
        rep.figure(group_figure(G, args.figures))
    return rep.finish()


def cmd_points(args, rep: Report) -> int:
    from .projective import projective_report

    ring = args.field or args.ring
    n = args.n if args.n is not None else args.dim
    if ring is None or n is None:
        raise ParseError("usage: points RING N  (or --field RING --n N)")
    F = _load(args, ring)
    r = projective_report(F, n)
    rep.section("counts", [f"κ={r['kappa']}, formula={r['formula']}, enumerated={r['enumerated']}, glued={r['glued']}"])
    if r["enumerated"] <= 40:
        rep.section("points", ["(" + ",".join(F.names[x] for x in p) + ")" for p in r["points"]])
    rep.put("kappa", r["kappa"])
    rep.put("formula", r["formula"])
    rep.put("enumerated", r["enumerated"])
    rep.put("glued", r["glued"])
    rep.check("formula = orbits = charts", r["agree"])
    if args.figures:
        from .plots import points_figure
        rows = []
        for k in range(n + 1):
            rk = projective_report(F, k)
            rows.append({"n": k, **{key: rk[key] for key in ("formula", "enumerated", "glued")}})
        rep.figure(points_figure(rows, args.figures))
    return rep.finish()


def cmd_quotient(args, rep: Report) -> int:
    from .constructions import congruence_closure, quotient_ring

    doc = resolve_ring(args.ring, args.path)
    A = doc.structure
    pairs = list(doc.relate)
    pos = {nm: i for i, nm in enumerate(A.names)}
    for item in args.relate or []:
        pairs.append(_split_pair(item, pos))
    C = congruence_closure(A, pairs)
    Q, pi = quotient_ring(A, C)
    from .core import validate as _v
    ok = _v(Q, Kind.RING).ok
    rep.section("congruence", [C.relation.describe(A), f"total: {C.is_total}"])
    rep.section("quotient", dump_ring(Q).splitlines())
    rep.check("quotient is a partial ring", ok)
    rep.check("projection is a ring homomorphism", _hom_ok(pi))
    if args.figures:
        from .plots import cayley_figure
        rep.figure(cayley_figure(Q, args.figures, "quotient"))
    return rep.finish(dump_ring(Q))


def cmd_tensor(args, rep: Report) -> int:
    from .constructions import tensor, tensor_ring

    A, B = _load(args, args.left), _load(args, args.right)
    if isinstance(A, PartialRing) and isinstance(B, PartialRing):
        T, _ = tensor_ring(A, B)
        level = Kind.RING
    else:
        T = tensor(A, B).monoid
        level = Kind.MONOID
    ok = validate(T, level).ok
    rep.section("tensor", dump_ring(T).splitlines())
    rep.check(f"tensor is a valid {level.value}", ok)
    if args.figures:
        from .plots import cayley_figure
        rep.figure(cayley_figure(T, args.figures, "tensor"))
    return rep.finish(dump_ring(T))


def _split_pair(item: str, pos: dict[str, int]) -> tuple[int, int]:
    # names may contain commas, e.g. "(1,0),(0,1)"; take the unique split into two names
    cuts = [k for k, ch in enumerate(item) if ch == ","]
    hits = [(item[:k], item[k + 1:]) for k in cuts if item[:k] in pos and item[k + 1:] in pos]
    if len(hits) != 1:
        raise ParseError(f"bad --relate pair {item!r}")
    return pos[hits[0][0]], pos[hits[0][1]]


def _hom_ok(f) -> bool:
    from .core import is_homomorphism
    return is_homomorphism(f.source, f.target, f.values, f.kind)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pring", description="Finite partial rings: validation, spectra, "
                                "point groups, projective counts, quotients and tensor products.")
    # defaults from the dataclass, not the module globals a previous run may have changed
    d = WorkspaceConfig()
    p.add_argument("--budget-elems", type=int, default=d.budget_elems, help="saturation element cap")
    p.add_argument("--budget-states", type=int, default=d.budget_states, help="rewrite states per word query")
    p.add_argument("--budget-nodes", type=int, default=d.budget_nodes, help="solver node cap")
    p.add_argument("--budget-candidates", type=int, default=d.budget_candidates, help="enumeration cap")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized corpora")
    p.add_argument("--format", choices=("text", "doc"), default="text", help="delimited text or YAML document")
    p.add_argument("--figures", metavar="DIR", help="also write matplotlib figures into DIR")
    p.add_argument("--path", action="append", default=[], help="extra directory to search for ring documents")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a ring document against the axioms")
    s.add_argument("file")
    s.add_argument("--level", choices=[k.value for k in Kind])
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("spec", help="prime spectrum, stalks and global sections")
    s.add_argument("ring")
    s.set_defaults(func=cmd_spec)

    s = sub.add_parser("group", help="evaluate G_a, G_m or GL_n at a ring")
    s.add_argument("kind", choices=("ga", "gm", "gln"))
    s.add_argument("rest", nargs="+", metavar="[N] RING")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_group)

    s = sub.add_parser("points", help="count the points of projective n-space over a partial field")
    s.add_argument("ring", nargs="?")
    s.add_argument("dim", nargs="?", type=int)
    s.add_argument("--field")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_points)

    s = sub.add_parser("quotient", help="quotient by the congruence generated by pairs")
    s.add_argument("ring")
    s.add_argument("--relate", action="append", metavar="A,B")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("tensor", help="tensor product of two rings or monoids")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_tensor)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        WorkspaceConfig(args.budget_elems, args.budget_states, args.budget_candidates, args.budget_nodes,
                        args.format, list(args.path), args.seed).apply()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    random.seed(args.seed)
    rep = Report(args.format)
    handlers: dict[type, int] = {ParseError: EXIT_PARSE, StructureError: EXIT_PARSE,
                                 AxiomError: EXIT_INVALID, NotAPartialField: EXIT_INVALID,
                                 BudgetExceeded: EXIT_BUDGET, CrossCheckFailure: EXIT_CROSSCHECK}
    func: Callable = args.func
    try:
        return func(args, rep)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except tuple(handlers) as e:
        code = next(c for t, c in handlers.items() if isinstance(e, t))
        extra = f" (used {e.used}, limit {e.limit})" if isinstance(e, BudgetExceeded) else ""
        print(f"error: {e}{extra}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
