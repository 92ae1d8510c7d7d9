"""Text format for ribbon graphs and the ``ribbonpoly`` command.

A file holds any number of graph blocks::

    # comment
    graph <name>
    vertex <vid>: <dart> <dart> ...
    vertex <vid>:
    edge <eid>: <dartA> <dartB>
    weight <eid> <symbol>
    tangle <eid> w1|w2|w3|w4
    mark c3-subdivision

Exit codes: 0 when everything succeeded or passed, 1 when an identity
check failed, 2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass, field

from . import census, identities, invariants
from .laurent import LaurentError
from .ribbon import (
    DuplicateDart,
    RibbonGraph,
    RibbonGraphError,
    dual,
    from_rotation,
    serialize,
    tensor_cycle,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class ParseError(ValueError):
    """Syntax errors in a graph file; ``errors`` lists every ``(line, col, message)``."""

    def __init__(self, errors: list[tuple[int, int, str]]):
        self.errors = errors
        self.line, self.col, first = errors[0]
        more = f" (and {len(errors) - 1} more)" if len(errors) > 1 else ""
        super().__init__(f"line {self.line}, column {self.col}: {first}{more}")


@dataclass
class _Block:
    name: str
    line: int
    vertices: list = field(default_factory=list)   # (vid, darts, line)
    edges: list = field(default_factory=list)      # (eid, a, b, line)
    weights: dict = field(default_factory=dict)
    tangles: dict = field(default_factory=dict)
    marks: set = field(default_factory=set)


def _col(raw: str, token: str, start: int = 0) -> int:
    i = raw.find(token, start)
    return (i if i >= 0 else 0) + 1


def _split_labelled(body: str):
    """``"<id>: tok tok"`` -> ``(id, [tok, ...])`` or None."""
    if ":" not in body:
        return None
    head, _, rest = body.partition(":")
    head = head.strip()
    if not head or len(head.split()) != 1:
        return None
    return head, rest.split()


def _blocks(text: str) -> list[_Block]:
    blocks: list[_Block] = []
    errors: list[tuple[int, int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        keyword, _, body = line.strip().partition(" ")
        body = body.strip()
        kcol = _col(raw, keyword)
        if keyword == "graph":
            if len(body.split()) != 1:
                errors.append((lineno, kcol, "expected 'graph <name>'"))
                continue
            blocks.append(_Block(body, lineno))
            continue
        if not blocks:
            errors.append((lineno, kcol, f"{keyword!r} record before any 'graph' line"))
            continue
        B = blocks[-1]
        if keyword == "vertex":
            parsed = _split_labelled(body)
            if parsed is None:
                errors.append((lineno, kcol, "expected 'vertex <vid>: <dart> ...'"))
                continue
            B.vertices.append((parsed[0], parsed[1], lineno))
        elif keyword == "edge":
            parsed = _split_labelled(body)
            if parsed is None or len(parsed[1]) != 2:
                errors.append((lineno, kcol, "expected 'edge <eid>: <dartA> <dartB>'"))
                continue
            eid, (a, b) = parsed
            B.edges.append((eid, a, b, lineno))
        elif keyword in ("weight", "tangle"):
            parts = body.split()
            if len(parts) != 2:
                errors.append((lineno, kcol, f"expected '{keyword} <eid> <value>'"))
                continue
            table = B.weights if keyword == "weight" else B.tangles
            if parts[0] in table:
                errors.append((lineno, _col(raw, parts[0], len(keyword)), f"second {keyword} for edge {parts[0]!r}"))
                continue
            if keyword == "tangle" and parts[1] not in invariants.TANGLE_WEIGHTS:
                errors.append((lineno, _col(raw, parts[1], len(keyword)), f"unknown tangle type {parts[1]!r}"))
                continue
            table[parts[0]] = (parts[1], lineno)
        elif keyword == "mark":
            if body != "c3-subdivision":
                errors.append((lineno, _col(raw, body or keyword), f"unknown mark {body!r}"))
                continue
            B.marks.add(body)
        else:
            errors.append((lineno, kcol, f"unknown record {keyword!r}"))
    if errors:
        raise ParseError(errors)
    return blocks


def _build(B: _Block) -> RibbonGraph:
    # duplicates are found here so the error points at the offending line
    seen: dict[str, int] = {}
    for _, darts, lineno in B.vertices:
        for d in darts:
            if d in seen:
                raise DuplicateDart(f"dart {d!r} appears twice in vertex rotations", d, lineno)
            seen[d] = lineno
    in_edge: set[str] = set()
    for _, a, b, lineno in B.edges:
        for d in (a, b):
            if d in in_edge:
                raise DuplicateDart(f"dart {d!r} belongs to two edges", d, lineno)
            in_edge.add(d)
    line_of = dict(seen)
    for eid, a, b, lineno in B.edges:
        line_of.setdefault(eid, lineno)
        line_of.setdefault(a, lineno)
        line_of.setdefault(b, lineno)
    for table in (B.weights, B.tangles):
        for eid, (_, lineno) in table.items():
            line_of.setdefault(eid, lineno)
    try:
        return from_rotation(
            [darts for _, darts, _ in B.vertices],
            [(a, b) for _, a, b, _ in B.edges],
            edge_names=[eid for eid, _, _, _ in B.edges],
            vertex_names=[vid for vid, _, _ in B.vertices],
            weights={k: v for k, (v, _) in B.weights.items()},
            tangles={k: v for k, (v, _) in B.tangles.items()},
            name=B.name,
            c3_subdivision="c3-subdivision" in B.marks,
        )
    except RibbonGraphError as err:
        if err.line is None:
            err.line = line_of.get(err.token, B.line)
        raise


def parse(text: str) -> list[RibbonGraph]:
    """Parse every graph block in ``text``.

    >>> [str(G.name) for G in parse("graph loop\\nvertex v1: a a'\\nedge e1: a a'")]
    ['loop']
    """
    return [_build(B) for B in _blocks(text)]


# -- command dispatch ------------------------------------------------------------------


class InputError(Exception):
    pass


COMPUTE = ("br", "tutte", "homfly", "homfly-full", "jones-cp", "jones-homfly", "bracket")


def _read(path: str) -> list[RibbonGraph]:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from None
    return parse(text)


def _select(graphs: list[RibbonGraph], name: str | None) -> list[RibbonGraph]:
    if name is None:
        return graphs
    chosen = [G for G in graphs if G.name == name]
    if not chosen:
        raise InputError(f"no graph named {name!r}")
    return chosen


def _writhe(G: RibbonGraph, given: int | None) -> int:
    if given is not None:
        return given
    if G.c3_subdivision:
        return -G.num_edges
    raise InputError(f"graph {G.name}: --writhe is required unless the graph is marked c3-subdivision")


def _compute_one(what: str, G: RibbonGraph, writhe: int | None, jobs: int) -> str:
    if what == "br":
        return str(invariants.bollobas_riordan(G, jobs=jobs))
    if what == "tutte":
        return str(invariants.tutte(G))
    if what == "homfly":
        return str(invariants.homfly_resolution(G))
    if what == "homfly-full":
        H = G if len(G.weights) == G.num_edges else G.with_default_weights()
        return invariants.homfly_full(H).format(G.edge_names)
    if what == "jones-cp":
        return str(invariants.jones_cp(G, _writhe(G, writhe)))
    if what == "jones-homfly":
        return str(invariants.jones_from_homfly(G))
    if what == "bracket":
        return str(invariants.kauffman_bracket(G))
    raise InputError(f"unknown invariant {what!r}")


def _cmd_compute(ns) -> tuple[int, list[str]]:
    graphs = _select(_read(ns.file), ns.graph)
    results = [(G.name, _compute_one(ns.invariant, G, ns.writhe, ns.jobs)) for G in graphs]
    if len(results) == 1:
        return EXIT_OK, [results[0][1]]
    out = []
    for name, text in results:
        if "\n" in text:
            out.append(f"{name}:")
            out.extend("  " + ln for ln in text.splitlines())
        else:
            out.append(f"{name}: {text}")
    return EXIT_OK, out


def _cmd_transform(ns) -> tuple[int, list[str]]:
    args = list(ns.args)
    kind = args.pop(0)
    if kind == "dual":
        if len(args) != 1:
            raise InputError("usage: transform dual <file>")
        op = dual
    elif kind == "tensor":
        if len(args) != 2:
            raise InputError("usage: transform tensor Q <file>")
        q = _int(args.pop(0), "Q")
        if q < 2:
            raise InputError("Q must be at least 2")
        op = lambda G: tensor_cycle(G, q)  # noqa: E731
    else:
        raise InputError(f"unknown transform {kind!r}")
    graphs = _select(_read(args[0]), ns.graph)
    return EXIT_OK, serialize(op(G) for G in graphs).splitlines()


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {text!r}") from None


def _cmd_verify(ns) -> tuple[int, list[str]]:
    args = list(ns.args)
    which = args.pop(0)
    p = None
    if which == "tensor-odd":
        if len(args) != 2:
            raise InputError("usage: verify tensor-odd P <file>")
        p = _int(args.pop(0), "P")
        if p < 1:
            raise InputError("P must be at least 1")
    elif which != "all" and which not in identities.VERIFY_NAMES:
        raise InputError(f"unknown identity {which!r}")
    if len(args) != 1:
        raise InputError("expected exactly one graph file")
    graphs = _select(_read(args[0]), ns.graph)
    reports = []
    for G in graphs:
        reports.extend(identities.verify(G, which, seed=ns.seed, p=p))
    code = EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL
    return code, [r.line() for r in reports]


def _cmd_census(ns) -> tuple[int, list[str]]:
    if ns.max_edges < 0:
        raise InputError("--max-edges must be non-negative")
    graphs = census.connected_corpus(ns.max_edges, reflect=not ns.oriented)
    return EXIT_OK, serialize(graphs).splitlines()


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ribbonpoly", description="Ribbon graph polynomials with exact arithmetic.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="print an invariant of each graph in a file")
    c.add_argument("invariant", choices=COMPUTE)
    c.add_argument("file")
    c.add_argument("--writhe", type=int)
    c.add_argument("--graph")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(run=_cmd_compute)

    t = sub.add_parser("transform", help="dual or cycle tensor, written in the file format")
    t.add_argument("args", nargs="+", metavar="dual <file> | tensor Q <file>")
    t.add_argument("--graph")
    t.set_defaults(run=_cmd_transform)

    v = sub.add_parser("verify", help="check identities and print one report line per check")
    v.add_argument("args", nargs="+", metavar="IDENTITY [P] <file>")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--graph")
    v.set_defaults(run=_cmd_verify)

    s = sub.add_parser("census", help="every connected ribbon graph up to a number of edges")
    s.add_argument("--max-edges", type=int, required=True)
    s.add_argument("--oriented", action="store_true", help="do not identify mirror images")
    s.set_defaults(run=_cmd_census)
    return ap


@dataclass
class Result:
    code: int
    stdout: str
    stderr: str


def run(argv: list[str]) -> Result:
    """Run one command and capture its output instead of printing it."""
    err = io.StringIO()
    try:
        with contextlib.redirect_stderr(err):
            ns = _parser().parse_args(argv)
    except SystemExit as exc:
        return Result(int(exc.code or 0), "", err.getvalue())
    try:
        code, lines = ns.run(ns)
    except ParseError as exc:
        msgs = [f"line {ln}, column {col}: {m}" for ln, col, m in exc.errors]
        return Result(EXIT_INPUT, "", "".join(f"error: {m}\n" for m in msgs))
    except RibbonGraphError as exc:
        return Result(EXIT_INPUT, "", f"error: {exc}\n")
    except (InputError, LaurentError, invariants.MissingWeight, invariants.MissingTangle,
            identities.BadPoint, identities.TooLarge, ValueError) as exc:
        return Result(EXIT_INPUT, "", f"error: {exc}\n")
    return Result(code, "".join(ln + "\n" for ln in lines), err.getvalue())


def main(argv: list[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
