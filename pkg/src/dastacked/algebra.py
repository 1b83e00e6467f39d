"""The path algebra KQ: elements, the left length-lex order, reduction."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .fields import Field, FieldMismatch
from .quiver import ZERO, Path, Quiver


class AdmissibleOrder:
    """Left length-lexicographic order.

    ``arrow_rank[a]`` is the position of arrow ``a`` in the ranking, with 0
    the greatest arrow; likewise for vertices.  Every vertex is below every
    arrow because shorter paths are always smaller.
    """

    def __init__(self, quiver: Quiver, arrow_rank: Sequence[int] | None = None,
                 vertex_rank: Sequence[int] | None = None):
        self.quiver = quiver
        na, nv = quiver.num_arrows, quiver.num_vertices
        self.arrow_rank = tuple(range(na)) if arrow_rank is None else tuple(arrow_rank)
        self.vertex_rank = tuple(range(nv)) if vertex_rank is None else tuple(vertex_rank)
        if sorted(self.arrow_rank) != list(range(na)):
            raise ValueError("arrow ranking must be a permutation")
        if sorted(self.vertex_rank) != list(range(nv)):
            raise ValueError("vertex ranking must be a permutation")

    @classmethod
    def from_labels(cls, quiver: Quiver, arrows: Sequence[str] | None = None,
                    vertices: Sequence[str] | None = None) -> "AdmissibleOrder":
        """Build from labels listed greatest first."""
        arank = vrank = None
        if arrows is not None:
            arank = [0] * quiver.num_arrows
            for r, lab in enumerate(arrows):
                arank[quiver.arrow_index(lab)] = r
        if vertices is not None:
            vrank = [0] * quiver.num_vertices
            for r, lab in enumerate(vertices):
                vrank[quiver.vertex_index(lab)] = r
        return cls(quiver, arank, vrank)

    def key(self, p: Path):
        """Sort key: ascending keys list paths from greatest to least."""
        if not p.arrows:
            return (0, (self.vertex_rank[p.source],))
        r = self.arrow_rank
        return (-len(p.arrows), tuple(r[a] for a in p.arrows))

    def compare(self, p: Path, q: Path) -> int:
        """1 if p > q, 0 if equal, -1 if p < q."""
        kp, kq = self.key(p), self.key(q)
        if kp == kq:
            return 0
        return 1 if kp < kq else -1

    def arrows_descending(self) -> list[int]:
        return sorted(range(self.quiver.num_arrows), key=lambda a: self.arrow_rank[a])

    def vertices_descending(self) -> list[int]:
        return sorted(range(self.quiver.num_vertices), key=lambda v: self.vertex_rank[v])

    def labels(self) -> tuple[list[str], list[str]]:
        q = self.quiver
        return ([q.arrow_label(a) for a in self.arrows_descending()],
                [q.vertices[v] for v in self.vertices_descending()])

    def __eq__(self, other):
        return (isinstance(other, AdmissibleOrder) and self.quiver == other.quiver
                and self.arrow_rank == other.arrow_rank and self.vertex_rank == other.vertex_rank)

    def __hash__(self):
        return hash((self.arrow_rank, self.vertex_rank))


class FreeAlgebra:
    """KQ over a field, with a fixed admissible order."""

    def __init__(self, quiver: Quiver, field: Field | None = None,
                 order: AdmissibleOrder | None = None):
        self.quiver = quiver
        self.field = field or Field.rationals()
        self.order = order or AdmissibleOrder(quiver)

    def element(self, terms=None) -> "Element":
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            f = self.field
            for p, c in items:
                c = f(c)
                if p in clean:
                    c = clean[p] + c
                if c:
                    clean[p] = c
                else:
                    clean.pop(p, None)
        return Element(self, clean)

    def zero(self) -> "Element":
        return Element(self, {})

    def path(self, p: Path, c=1) -> "Element":
        return self.element({p: c})

    def vertex(self, v: int) -> "Element":
        return self.path(self.quiver.trivial(v))

    def arrow(self, a: int) -> "Element":
        return self.path(self.quiver.arrow(a))

    def from_labels(self, *labels: str, c=1) -> "Element":
        q = self.quiver
        if len(labels) == 1 and q.has_vertex(labels[0]):
            return self.vertex(q.vertex_index(labels[0])) * c
        return self.path(q.path([q.arrow_index(x) for x in labels]), c)

    def with_order(self, order: AdmissibleOrder) -> "FreeAlgebra":
        return FreeAlgebra(self.quiver, self.field, order)


class Element:
    """A finite K-linear combination of paths; zero coefficients are never stored."""

    __slots__ = ("alg", "terms", "_sorted")

    def __init__(self, alg: FreeAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms
        self._sorted = None

    # structure

    def sorted_terms(self) -> list[tuple[Path, object]]:
        if self._sorted is None:
            key = self.alg.order.key
            self._sorted = sorted(self.terms.items(), key=lambda t: key(t[0]))
        return self._sorted

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def tip(self) -> Path:
        if not self.terms:
            raise ValueError("the zero element has no tip")
        return self.sorted_terms()[0][0]

    def ctip(self):
        return self.sorted_terms()[0][1]

    def support(self) -> set:
        return set(self.terms)

    def coefficient(self, p: Path):
        return self.terms.get(p, self.alg.field.zero)

    def is_uniform(self) -> bool:
        ends = {(p.source, p.target) for p in self.terms}
        return len(ends) <= 1

    def lengths(self) -> set[int]:
        return {p.length for p in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.lengths()) <= 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monic(self) -> "Element":
        c = self.ctip()
        if c == 1:
            return self
        inv = 1 / c
        return Element(self.alg, {p: v * inv for p, v in self.terms.items()})

    # arithmetic

    def _check(self, other: "Element"):
        if other.alg.field != self.alg.field:
            raise FieldMismatch("elements over different fields")
        if other.alg.quiver is not self.alg.quiver and other.alg.quiver != self.alg.quiver:
            raise ValueError("elements over different quivers")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            v = out.get(p)
            v = c if v is None else v + c
            if v:
                out[p] = v
            else:
                out.pop(p, None)
        return Element(self.alg, out)

    def __neg__(self) -> "Element":
        return Element(self.alg, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = self.alg.field(c)
        if not c:
            return self.alg.zero()
        return Element(self.alg, {p: v * c for p, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def format(self) -> str:
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)})"

    __str__ = format


def multiply(x: Element, y: Element) -> Element:
    """Bilinear extension of path composition."""
    x._check(y)
    q = x.alg.quiver
    out: dict = {}
    for p1, c1 in x.terms.items():
        for p2, c2 in y.terms.items():
            pq = q.compose(p1, p2)
            if pq is ZERO:
                continue
            v = out.get(pq)
            v = c1 * c2 if v is None else v + c1 * c2
            if v:
                out[pq] = v
            else:
                out.pop(pq, None)
    return Element(x.alg, out)


def sandwich(u: Path, f: Element, v: Path, c=1) -> dict:
    """Terms of c·u·f·v as a dict (paths assumed composable)."""
    ua, va = u.arrows, v.arrows
    return {Path(u.source, v.target, ua + p.arrows + va): c * k for p, k in f.terms.items()}


def format_coeff_term(c, ptext: str, first: bool) -> str:
    s = str(c)
    neg = s.startswith("-")
    if neg:
        s = s[1:]
    body = ptext if s == "1" else f"{s}*{ptext}"
    if first:
        return ("-" if neg else "") + body
    return (" - " if neg else " + ") + body


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    q = x.alg.quiver
    return "".join(format_coeff_term(c, q.format_path(p), i == 0)
                   for i, (p, c) in enumerate(x.sorted_terms()))


@dataclass(frozen=True)
class ReductionStep:
    """One simple reduction: subtract ``coeff * u * X[index] * v``."""

    coeff: object
    u: Path
    index: int
    v: Path


class Reducer:
    """Normal forms modulo a fixed list of monic uniform elements."""

    def __init__(self, X: Sequence[Element]):
        self.X = list(X)
        self.by_tip: dict[tuple, int] = {}
        for i, f in enumerate(self.X):
            if f.is_zero():
                continue
            t = f.tip()
            if not t.arrows:
                raise ValueError("reducer with a vertex tip")
            self.by_tip.setdefault(t.arrows, i)
        self.tip_lengths = sorted({len(t) for t in self.by_tip})
        self.tips = [f.tip() if not f.is_zero() else None for f in self.X]
        self.inv = [1 / f.ctip() if not f.is_zero() else None for f in self.X]

    def find(self, p: Path):
        """Leftmost occurrence of a tip in ``p``: (start, index) or None."""
        arrows = p.arrows
        n = len(arrows)
        by_tip = self.by_tip
        for i in range(n):
            best = None
            for L in self.tip_lengths:
                if i + L > n:
                    break
                j = by_tip.get(arrows[i:i + L])
                if j is not None and (best is None or j < best):
                    best = j
            if best is not None:
                return i, best
        return None

    def reducible(self, p: Path) -> bool:
        return self.find(p) is not None

    def reduce(self, a: Element, certificate: bool = False):
        """Normal form of ``a``; with ``certificate`` also the list of steps."""
        alg = a.alg
        key = alg.order.key
        terms = dict(a.terms)
        heap = [(key(p), p) for p in terms]
        heapq.heapify(heap)
        done: dict = {}
        steps: list[ReductionStep] = []
        while heap:
            _, p = heapq.heappop(heap)
            c = terms.pop(p, None)
            if c is None:
                continue
            hit = self.find(p)
            if hit is None:
                done[p] = c
                continue
            i, j = hit
            f = self.X[j]
            L = len(self.tips[j].arrows)
            u = Path(p.source, self.tips[j].source, p.arrows[:i])
            v = Path(self.tips[j].target, p.target, p.arrows[i + L:])
            lam = c * self.inv[j]
            if certificate:
                steps.append(ReductionStep(lam, u, j, v))
            for path, k in sandwich(u, f, v, lam).items():
                if path == p:
                    continue
                old = terms.get(path)
                new = -k if old is None else old - k
                if new:
                    if old is None:
                        heapq.heappush(heap, (key(path), path))
                    terms[path] = new
                else:
                    terms.pop(path, None)
        out = Element(alg, done)
        return (out, steps) if certificate else out


def reduce(a: Element, X: Sequence[Element], certificate: bool = False):
    return Reducer(X).reduce(a, certificate=certificate)


def replay_certificate(a: Element, X: Sequence[Element], steps: Iterable[ReductionStep]) -> Element:
    """a minus the ideal combination recorded in ``steps``."""
    out = dict(a.terms)
    for s in steps:
        for p, k in sandwich(s.u, X[s.index], s.v, s.coeff).items():
            v = out.get(p)
            v = -k if v is None else v - k
            if v:
                out[p] = v
            else:
                out.pop(p, None)
    return Element(a.alg, out)
