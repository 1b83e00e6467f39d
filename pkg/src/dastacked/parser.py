"""Reading and writing ALGEBRA files.

Line-oriented format, ``#`` starts a comment::

    FIELD Q                    # or FIELD F 7
    VERTICES 1 2 3
    ARROW a : 1 -> 2
    ARROW b : 2 -> 3
    RELATION a.b               # coefficients: 2*a.b - 1/3*c.d
    ORDER ARROWS b > a         # optional, greatest first
    ORDER VERTICES 3 > 2 > 1   # optional
    CLASS x 2 a.b              # optional: arrow x of an Ext quiver names a class

CLASS lines are only meaningful for candidate Ext presentations: they say
which Ext class an arrow (or vertex) stands for, as an element of the
original algebra.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AdmissibleOrder, Element, FreeAlgebra
from .fields import Field
from .quiver import DEFAULT_MAX_PATH_LENGTH, Quiver


class InputError(ValueError):
    pass


class AlgebraSyntaxError(InputError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {msg}")
        self.line = line
        self.col = col


class UnknownLabel(InputError):
    pass


class DuplicateLabel(InputError):
    pass


class NonUniformRelation(InputError):
    pass


class NotAPath(InputError):
    pass


@dataclass
class ClassSpec:
    label: str
    degree: int
    text: str
    line: int


@dataclass
class AlgebraSpec:
    quiver: Quiver
    relations: list
    field: Field
    order: AdmissibleOrder
    classes: list = field(default_factory=list)
    explicit_order: bool = False

    @property
    def algebra(self) -> FreeAlgebra:
        return FreeAlgebra(self.quiver, self.field, self.order)

    def with_order(self, order: AdmissibleOrder) -> "AlgebraSpec":
        alg = FreeAlgebra(self.quiver, self.field, order)
        rels = [alg.element(r.terms) for r in self.relations]
        return AlgebraSpec(self.quiver, rels, self.field, order, self.classes, True)


_LABEL = r"[A-Za-z0-9_'\[\]{}^]+"
_ARROW_RE = re.compile(rf"^ARROW\s+({_LABEL})\s*:\s*({_LABEL})\s*->\s*({_LABEL})\s*$")
_TERM_RE = re.compile(rf"\s*((?:\d+(?:/\d+)?)\s*\*\s*)?({_LABEL}(?:\.{_LABEL})*)\s*")


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse_expression(alg: FreeAlgebra, text: str, lineno: int = 0, col0: int = 1) -> Element:
    """Parse ``c1*p1 + c2*p2 - ...`` into an element of ``alg``."""
    q = alg.quiver
    pos = 0
    n = len(text)
    terms = []
    first = True
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            if first:
                raise AlgebraSyntaxError("empty expression", lineno, col0 + pos)
            break
        sign = 1
        if text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos += 1
        elif not first:
            raise AlgebraSyntaxError(f"expected '+' or '-', found {text[pos]!r}", lineno, col0 + pos)
        m = _TERM_RE.match(text, pos)
        if not m or not m.group(2):
            raise AlgebraSyntaxError("expected a term", lineno, col0 + pos)
        coeff = Fraction(m.group(1).rstrip().rstrip("*").strip()) if m.group(1) else Fraction(1)
        labels = m.group(2).split(".")
        if len(labels) == 1 and q.has_vertex(labels[0]) and not q.has_arrow(labels[0]):
            path = q.trivial(q.vertex_index(labels[0]))
        else:
            idx = []
            for lab in labels:
                if not q.has_arrow(lab):
                    raise UnknownLabel(f"line {lineno}: unknown arrow {lab!r}")
                idx.append(q.arrow_index(lab))
            try:
                path = q.path(idx)
            except ValueError as e:
                raise NotAPath(f"line {lineno}: {m.group(2)} is not a path ({e})") from None
        terms.append((path, sign * coeff))
        pos = m.end()
        first = False
    return alg.element(terms)


def parse_algebra(text: str, max_path_length: int = DEFAULT_MAX_PATH_LENGTH) -> AlgebraSpec:
    field_ = Field.rationals()
    vertices: list[str] | None = None
    arrows: list[tuple[str, str, str, int]] = []
    rel_lines: list[tuple[int, int, str]] = []
    class_lines: list[ClassSpec] = []
    order_arrows = order_vertices = None
    seen_field = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        word = body.split()[0]
        if word == "FIELD":
            parts = body.split()
            if seen_field:
                raise AlgebraSyntaxError("FIELD given twice", lineno, indent + 1)
            seen_field = True
            if parts[1:] == ["Q"]:
                field_ = Field.rationals()
            elif len(parts) == 3 and parts[1] == "F" and parts[2].isdigit():
                try:
                    field_ = Field.prime(int(parts[2]))
                except ValueError as e:
                    raise AlgebraSyntaxError(str(e), lineno, raw.index(parts[2]) + 1) from None
            else:
                raise AlgebraSyntaxError("expected 'FIELD Q' or 'FIELD F <prime>'", lineno, indent + 1)
        elif word == "VERTICES":
            if vertices is not None:
                raise AlgebraSyntaxError("VERTICES given twice", lineno, indent + 1)
            vertices = body.split()[1:]
            for v in vertices:
                if not re.fullmatch(_LABEL, v):
                    raise AlgebraSyntaxError(f"bad vertex label {v!r}", lineno, raw.index(v) + 1)
            dup = {v for v in vertices if vertices.count(v) > 1}
            if dup:
                raise DuplicateLabel(f"line {lineno}: duplicate vertex {sorted(dup)[0]!r}")
        elif word == "ARROW":
            m = _ARROW_RE.match(body)
            if not m:
                raise AlgebraSyntaxError("expected 'ARROW <label> : <src> -> <tgt>'", lineno, indent + 1)
            arrows.append((m.group(1), m.group(2), m.group(3), lineno))
        elif word == "RELATION":
            start = raw.index("RELATION") + len("RELATION")
            rel_lines.append((lineno, start + 1, line[start:]))
        elif word == "ORDER":
            parts = body.split(None, 2)
            if len(parts) < 3 or parts[1] not in ("ARROWS", "VERTICES"):
                raise AlgebraSyntaxError("expected 'ORDER ARROWS a > b > ...'", lineno, indent + 1)
            labels = [x.strip() for x in parts[2].split(">")]
            if any(not x for x in labels):
                raise AlgebraSyntaxError("empty label in ORDER", lineno, indent + 1)
            if parts[1] == "ARROWS":
                order_arrows = (labels, lineno)
            else:
                order_vertices = (labels, lineno)
        elif word == "CLASS":
            parts = body.split(None, 3)
            if len(parts) < 4 or not parts[2].isdigit():
                raise AlgebraSyntaxError("expected 'CLASS <label> <degree> <element>'", lineno, indent + 1)
            class_lines.append(ClassSpec(parts[1], int(parts[2]), parts[3], lineno))
        else:
            raise AlgebraSyntaxError(f"unknown directive {word!r}", lineno, indent + 1)

    if vertices is None:
        raise AlgebraSyntaxError("missing VERTICES line", 1, 1)
    vset = set(vertices)
    labels_seen = set()
    arrow_tuples = []
    for lab, s, t, lineno in arrows:
        if lab in labels_seen or lab in vset:
            raise DuplicateLabel(f"line {lineno}: duplicate label {lab!r}")
        labels_seen.add(lab)
        for v in (s, t):
            if v not in vset:
                raise UnknownLabel(f"line {lineno}: unknown vertex {v!r}")
        arrow_tuples.append((lab, vertices.index(s), vertices.index(t)))
    quiver = Quiver(tuple(vertices), tuple(arrow_tuples), max_path_length)

    order = AdmissibleOrder(quiver)
    if order_arrows or order_vertices:
        order = _order_from(quiver, order_arrows, order_vertices)
    alg = FreeAlgebra(quiver, field_, order)

    relations = []
    for lineno, col, expr in rel_lines:
        x = parse_expression(alg, expr, lineno, col)
        if x.is_zero():
            continue
        if not x.is_uniform():
            raise NonUniformRelation(f"line {lineno}: terms do not share endpoints")
        relations.append(x)
    return AlgebraSpec(quiver, relations, field_, order, class_lines,
                       bool(order_arrows or order_vertices))


def _order_from(quiver: Quiver, order_arrows, order_vertices) -> AdmissibleOrder:
    arrows = vertices = None
    if order_arrows:
        labels, lineno = order_arrows
        for x in labels:
            if not quiver.has_arrow(x):
                raise UnknownLabel(f"line {lineno}: unknown arrow {x!r} in ORDER")
        if sorted(labels) != sorted(a[0] for a in quiver.arrows):
            raise InputError(f"line {lineno}: ORDER ARROWS must list every arrow exactly once")
        arrows = labels
    if order_vertices:
        labels, lineno = order_vertices
        for x in labels:
            if not quiver.has_vertex(x):
                raise UnknownLabel(f"line {lineno}: unknown vertex {x!r} in ORDER")
        if sorted(labels) != sorted(quiver.vertices):
            raise InputError(f"line {lineno}: ORDER VERTICES must list every vertex exactly once")
        vertices = labels
    return AdmissibleOrder.from_labels(quiver, arrows, vertices)


def parse_order(text: str, quiver: Quiver) -> AdmissibleOrder:
    """Read ORDER lines (from an --order-file) against an existing quiver."""
    oa = ov = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw).strip()
        if not body:
            continue
        parts = body.split(None, 2)
        if parts[0] != "ORDER" or len(parts) < 3 or parts[1] not in ("ARROWS", "VERTICES"):
            raise AlgebraSyntaxError("expected 'ORDER ARROWS ...' or 'ORDER VERTICES ...'", lineno, 1)
        labels = [x.strip() for x in parts[2].split(">")]
        if parts[1] == "ARROWS":
            oa = (labels, lineno)
        else:
            ov = (labels, lineno)
    return _order_from(quiver, oa, ov)


def serialize_algebra(spec: AlgebraSpec, include_order: bool = True) -> str:
    q = spec.quiver
    out = [f"FIELD {spec.field.describe()}", "VERTICES " + " ".join(q.vertices)]
    for lab, s, t in q.arrows:
        out.append(f"ARROW {lab} : {q.vertices[s]} -> {q.vertices[t]}")
    for r in spec.relations:
        out.append(f"RELATION {r.format()}")
    if include_order:
        arrows, vertices = spec.order.labels()
        if arrows:
            out.append("ORDER ARROWS " + " > ".join(arrows))
        out.append("ORDER VERTICES " + " > ".join(vertices))
    for c in spec.classes:
        out.append(f"CLASS {c.label} {c.degree} {c.text}")
    return "\n".join(out) + "\n"


def load_algebra(path, max_path_length: int = DEFAULT_MAX_PATH_LENGTH) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_algebra(fh.read(), max_path_length)
