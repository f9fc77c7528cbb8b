"""Line-oriented text format for DG/ADG/ODG documents, plus DOT export.

::

    adg                       # first line: dg | adg | odg
    circles 1                 # optional, default 0
    vertex t triple           # triple | branch | db
    vertex b1 branch
    edge e1 t b1              # slot 0 = t, slot 1 = b1
    pair t e1.0 e2.0 pref e1.0
    order t e1.0 e3.0 e5.0    # odg only

``#`` starts a comment; blank lines are ignored.  Parsing is strict: any
syntax error or structural violation raises :class:`ParseError` carrying
line/column diagnostics.  :func:`serialize` writes the canonical form
(everything sorted, ODG orderings rotated smallest-first), so
``serialize(parse(serialize(parse(text))))`` equals ``serialize(parse(text))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .model import (
    AnyGraph,
    ArrowedDaisyGraph,
    DaisyError,
    DaisyGraph,
    HalfEdge,
    OrderedDaisyGraph,
    Pair,
    VertexKind,
    make_pair,
    odg_canonicalize,
    validate,
)

KINDS = ("dg", "adg", "odg")
_ID = re.compile(r"[A-Za-z0-9_]+\Z")
_HREF = re.compile(r"([A-Za-z0-9_]+)\.([01])\Z")
_TOKEN = re.compile(r"\S+")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    token: str
    message: str

    def __str__(self) -> str:
        where = f"line {self.line}, column {self.column}" if self.line else "document"
        tok = f" near {self.token!r}" if self.token else ""
        return f"{where}{tok}: {self.message}"


class ParseError(DaisyError, ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(map(str, diagnostics)))


@dataclass
class _Tok:
    text: str
    col: int


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.errors: list[Diagnostic] = []
        self.kind: str | None = None
        self.circles: int | None = None
        self.circles_line = 0
        self.vertices: dict[str, VertexKind] = {}
        self.edges: dict[str, tuple[str, str]] = {}
        self.pairing: dict[str, list[Pair]] = {}
        self.arrows: dict[tuple[str, Pair], HalfEdge] = {}
        self.ordering: dict[str, tuple[HalfEdge, HalfEdge, HalfEdge]] = {}
        self.lines: dict[tuple, int] = {}

    def error(self, lineno: int, tok: _Tok | None, message: str) -> None:
        self.errors.append(Diagnostic(lineno, tok.col if tok else 1, tok.text if tok else "", message))

    def ident(self, lineno: int, tok: _Tok, what: str) -> str | None:
        if not _ID.match(tok.text):
            self.error(lineno, tok, f"invalid {what} identifier (expected [A-Za-z0-9_]+)")
            return None
        return tok.text

    def href(self, lineno: int, tok: _Tok) -> HalfEdge | None:
        m = _HREF.match(tok.text)
        if not m:
            self.error(lineno, tok, "invalid half-edge reference (expected <edge>.<0|1>)")
            return None
        return HalfEdge(m.group(1), int(m.group(2)))

    def arity(self, lineno: int, toks: list[_Tok], counts: tuple[int, ...], usage: str) -> bool:
        if len(toks) in counts:
            return True
        extra = toks[max(counts)] if len(toks) > max(counts) else toks[0]
        self.error(lineno, extra, f"expected `{usage}`")
        return False

    def run(self) -> None:
        if "\r" in self.text:
            row = self.text[: self.text.index("\r")].count("\n") + 1
            self.error(row, None, "CR characters are not allowed (use LF line endings)")
        for lineno, raw in enumerate(self.text.split("\n"), start=1):
            line = raw.split("#", 1)[0]
            toks = [_Tok(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]
            if not toks:
                continue
            if self.kind is None:
                if len(toks) != 1 or toks[0].text not in KINDS:
                    self.error(lineno, toks[0], "document must start with `dg`, `adg` or `odg`")
                    return
                self.kind = toks[0].text
                continue
            handler = getattr(self, "_" + toks[0].text, None) if toks[0].text in (
                "circles", "vertex", "edge", "pair", "order") else None
            if handler is None:
                self.error(lineno, toks[0], f"unknown directive {toks[0].text!r}")
                continue
            handler(lineno, toks)
        if self.kind is None:
            self.errors.append(Diagnostic(0, 0, "", "empty document: expected `dg`, `adg` or `odg`"))

    def _circles(self, lineno: int, toks: list[_Tok]) -> None:
        if not self.arity(lineno, toks, (2,), "circles <n>"):
            return
        if self.circles is not None:
            self.error(lineno, toks[0], f"duplicate circles line (first on line {self.circles_line})")
            return
        if not toks[1].text.isdigit() or not toks[1].text.isascii():
            self.error(lineno, toks[1], "circle count must be a non-negative integer")
            return
        self.circles = int(toks[1].text)
        self.circles_line = lineno
        self.lines[("circles",)] = lineno

    def _vertex(self, lineno: int, toks: list[_Tok]) -> None:
        if not self.arity(lineno, toks, (3,), "vertex <id> triple|branch|db"):
            return
        v = self.ident(lineno, toks[1], "vertex")
        if toks[2].text not in ("triple", "branch", "db"):
            self.error(lineno, toks[2], "vertex kind must be triple, branch or db")
            return
        if v is None:
            return
        if v in self.vertices:
            self.error(lineno, toks[1], f"duplicate vertex {v} (first on line {self.lines[('vertex', v)]})")
            return
        self.vertices[v] = VertexKind(toks[2].text)
        self.lines[("vertex", v)] = lineno

    def _edge(self, lineno: int, toks: list[_Tok]) -> None:
        if not self.arity(lineno, toks, (4,), "edge <id> <vertex> <vertex>"):
            return
        ids = [self.ident(lineno, t, w) for t, w in zip(toks[1:], ("edge", "vertex", "vertex"))]
        if None in ids:
            return
        e, u, w = ids
        if e in self.edges:
            self.error(lineno, toks[1], f"duplicate edge {e} (first on line {self.lines[('edge', e)]})")
            return
        self.edges[e] = (u, w)
        self.lines[("edge", e)] = lineno

    def _pair(self, lineno: int, toks: list[_Tok]) -> None:
        if self.kind == "dg":
            if len(toks) > 4 and toks[4].text == "pref":
                self.error(lineno, toks[4], "arrows forbidden in dg")
                return
            if not self.arity(lineno, toks, (4,), "pair <vertex> <edge>.<slot> <edge>.<slot>"):
                return
        else:
            if len(toks) == 4:
                self.error(lineno, toks[3], f"missing `pref <edge>.<slot>` (required in {self.kind})")
                return
            if not self.arity(lineno, toks, (6,), "pair <vertex> <edge>.<slot> <edge>.<slot> pref <edge>.<slot>"):
                return
            if toks[4].text != "pref":
                self.error(lineno, toks[4], "expected `pref`")
                return
        v = self.ident(lineno, toks[1], "vertex")
        a, b = self.href(lineno, toks[2]), self.href(lineno, toks[3])
        pref = self.href(lineno, toks[5]) if self.kind != "dg" else None
        if v is None or a is None or b is None or (self.kind != "dg" and pref is None):
            return
        p = make_pair(a, b)
        if ("pair", v, p) in self.lines:
            self.error(lineno, toks[2], f"duplicate pair at {v} (first on line {self.lines[('pair', v, p)]})")
            return
        self.pairing.setdefault(v, []).append(p)
        self.lines[("pair", v, p)] = lineno
        self.lines.setdefault(("pairs-at", v), lineno)
        if pref is not None:
            self.arrows[(v, p)] = pref

    def _order(self, lineno: int, toks: list[_Tok]) -> None:
        if self.kind != "odg":
            self.error(lineno, toks[0], f"order lines only allowed in odg, not {self.kind}")
            return
        if not self.arity(lineno, toks, (5,), "order <vertex> <href> <href> <href>"):
            return
        v = self.ident(lineno, toks[1], "vertex")
        hs = [self.href(lineno, t) for t in toks[2:]]
        if v is None or None in hs:
            return
        if v in self.ordering:
            self.error(lineno, toks[1], f"duplicate order for {v} (first on line {self.lines[('order', v)]})")
            return
        self.ordering[v] = tuple(hs)  # type: ignore[assignment]
        self.lines[("order", v)] = lineno

    def build(self) -> AnyGraph:
        dg = DaisyGraph(self.vertices, self.edges,
                        {v: tuple(ps) for v, ps in self.pairing.items()}, self.circles or 0)
        if self.kind == "dg":
            return dg
        adg = ArrowedDaisyGraph(dg, self.arrows)
        if self.kind == "adg":
            return adg
        return OrderedDaisyGraph(adg, self.ordering)

    def line_of(self, subject: tuple) -> int:
        if not subject:
            return 0
        tag = subject[0]
        if tag in ("pair", "arrow"):
            return self.lines.get(("pair",) + tuple(subject[1:]), 0)
        if tag == "vertex":
            v = subject[1]
            return self.lines.get(("vertex", v)) or self.lines.get(("pairs-at", v)) or self.lines.get(("order", v), 0)
        return self.lines.get(tuple(subject), 0)


def parse(text: str) -> AnyGraph:
    """Parse a document; raises :class:`ParseError` on any problem."""
    p = _Parser(text)
    p.run()
    if p.errors:
        raise ParseError(p.errors)
    g = p.build()
    report = validate(g)
    if not report.ok:
        raise ParseError([Diagnostic(p.line_of(v.subject), 1 if p.line_of(v.subject) else 0, "", str(v))
                          for v in report.violations])
    return g


def document_kind(g: AnyGraph) -> str:
    if isinstance(g, OrderedDaisyGraph):
        return "odg"
    if isinstance(g, ArrowedDaisyGraph):
        return "adg"
    return "dg"


def serialize(g: AnyGraph) -> str:
    kind = document_kind(g)
    out = [kind]
    if g.circles:
        out.append(f"circles {g.circles}")
    for v in sorted(g.vertices):
        out.append(f"vertex {v} {g.vertices[v].value}")
    for e in sorted(g.edges):
        u, w = g.edges[e]
        out.append(f"edge {e} {u} {w}")
    arrows = g.arrows if kind != "dg" else {}
    for v in sorted(g.pairing):
        for p in sorted(g.pairing[v]):
            line = f"pair {v} {p[0]} {p[1]}"
            if kind != "dg":
                line += f" pref {arrows[(v, p)]}"
            out.append(line)
    if isinstance(g, OrderedDaisyGraph):
        canon = odg_canonicalize(g).ordering
        for v in sorted(canon):
            out.append(f"order {v} " + " ".join(map(str, canon[v])))
    return "\n".join(out) + "\n"


# -- DOT --------------------------------------------------------------------

# opposite compass points, so each consecutive pair is drawn as one straight line
_PORTS = (("n", "s"), ("ne", "sw"), ("nw", "se"))


def export_dot(g: AnyGraph) -> str:
    """Graphviz rendering.

    Triple vertices are points, branch vertices small black dots and DB
    vertices purple dots.  The two half-edges of a consecutive pair leave
    their vertex from opposite compass ports.  A preferred half-edge gets an
    arrow decoration at its own end.  Double circles appear as dashed rings
    in a separate legend cluster.
    """
    kind = document_kind(g)
    arrows = set(g.arrows.values()) if kind != "dg" else set()
    port: dict[HalfEdge, str] = {}
    for v in sorted(g.pairing):
        for k, p in enumerate(sorted(g.pairing[v])[:3]):
            port[p[0]], port[p[1]] = _PORTS[k]

    out = [f'graph "{kind}" {{']
    if g.vertices or g.circles:
        out.append('  node [label="", fixedsize=true];')
        out.append('  edge [dir=both, arrowhead=none, arrowtail=none];')
    for v in sorted(g.vertices):
        k = g.vertices[v]
        if k is VertexKind.TRIPLE:
            style = "shape=point, width=0.12"
        elif k is VertexKind.DB:
            style = 'shape=circle, width=0.12, style=filled, color=purple, fillcolor=purple'
        else:
            style = 'shape=circle, width=0.08, style=filled, color=black, fillcolor=black'
        out.append(f'  "{v}" [{style}, xlabel="{v}"];')
    for e in sorted(g.edges):
        u, w = g.edges[e]
        tail, head = HalfEdge(e, 0), HalfEdge(e, 1)
        attrs = [f'label="{e}"']
        if tail in port:
            attrs.append(f'tailport={port[tail]}')
        if head in port:
            attrs.append(f'headport={port[head]}')
        if tail in arrows:
            attrs.append("arrowtail=inv")
        if head in arrows:
            attrs.append("arrowhead=inv")
        out.append(f'  "{u}" -- "{w}" [{", ".join(attrs)}];')
    if g.circles:
        out.append("  subgraph cluster_circles {")
        out.append('    label="double circles"; style=dashed;')
        for k in range(g.circles):
            out.append(f'    "~circle{k}" [shape=circle, width=0.4, style=dashed, color=orange];')
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"
