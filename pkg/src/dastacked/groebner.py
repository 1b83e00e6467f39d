"""Noncommutative Groebner bases over path algebras.

Only length-homogeneous ideals are handled by completion, degree by degree,
so that a degree bound gives an honest truncation.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AdmissibleOrder, Element, FreeAlgebra, Reducer, sandwich
from .linalg import Echelon
from .quiver import Path


@dataclass(frozen=True)
class OverlapDifference:
    i: int
    j: int
    p: Path
    q: Path
    value: Element


@dataclass
class GroebnerBasis:
    elements: list
    order: AdmissibleOrder
    status: str = "Verified"          # or "DegreeBounded"
    bound: int | None = None

    @property
    def verified(self) -> bool:
        return self.status == "Verified"

    def tips(self) -> list[Path]:
        return [g.tip() for g in self.elements]

    def reducer(self) -> Reducer:
        return Reducer(self.elements)

    def max_length(self) -> int:
        return max((g.tip().length for g in self.elements), default=0)


@dataclass
class GBCheck:
    ok: bool
    failures: list = field(default_factory=list)   # (condition, detail dict)

    @property
    def first(self):
        return self.failures[0] if self.failures else None


def overlap_paths(t1: Path, t2: Path, quiver) -> list[tuple[Path, Path]]:
    """All (p, q) with t1·p = q·t2, 1 <= len(q) < len(t1), 1 <= len(p) < len(t2)."""
    a1, a2 = t1.arrows, t2.arrows
    out = []
    for k in range(min(len(a1), len(a2)) - 1, 0, -1):
        if len(a1) - k < 1 or len(a2) - k < 1:
            continue
        if a1[len(a1) - k:] == a2[:k]:
            p = quiver.path(a2[k:])
            q = quiver.path(a1[:len(a1) - k])
            out.append((p, q))
    return out


def overlap_differences(h1: Element, h2: Element, i: int = 0, j: int = 1) -> list[OverlapDifference]:
    alg = h1.alg
    q_ = alg.quiver
    out = []
    for p, q in overlap_paths(h1.tip(), h2.tip(), q_):
        left = Element(alg, sandwich(q_.trivial(h1.tip().source), h1, p, 1 / h1.ctip()))
        right = Element(alg, sandwich(q, h2, q_.trivial(h2.tip().target), 1 / h2.ctip()))
        out.append(OverlapDifference(i, j, p, q, left - right))
    return out


def verify_reduced_gb(H: Sequence[Element], order: AdmissibleOrder | None = None) -> GBCheck:
    """The three-condition criterion for a reduced Groebner basis.

    (i) every tip coefficient is 1; (ii) no support path of any element is
    divisible by the tip of another; (iii) every overlap difference,
    self-overlaps included, reduces to zero.  All failures are reported.
    """
    H = list(H)
    if order is not None:
        alg = FreeAlgebra(H[0].alg.quiver, H[0].alg.field, order) if H else None
        H = [alg.element(h.terms) for h in H]
    failures = []
    if not H:
        return GBCheck(True, [])   # the zero ideal, vacuously
    for k, h in enumerate(H):
        if h.is_zero():
            failures.append(("zero", {"index": k}))
        elif not h.is_uniform():
            failures.append(("uniform", {"index": k}))
        elif h.ctip() != 1:
            failures.append(("i", {"index": k, "ctip": str(h.ctip())}))
    if failures:
        return GBCheck(False, failures)
    for k, h in enumerate(H):
        others = Reducer([g if m != k else h.alg.zero() for m, g in enumerate(H)])
        for p in h.sorted_terms():
            hit = others.find(p[0])
            if hit is not None:
                failures.append(("ii", {"index": k, "over": hit[1], "path": h.alg.quiver.format_path(p[0])}))
                break
    red = Reducer(H)
    for a, h1 in enumerate(H):
        for b, h2 in enumerate(H):
            for od in overlap_differences(h1, h2, a, b):
                r = red.reduce(od.value)
                if not r.is_zero():
                    failures.append(("iii", {"h1": a, "h2": b, "p": od.p, "q": od.q,
                                             "value": od.value, "normal_form": r}))
    return GBCheck(not failures, failures)


class BoundTooSmall(ValueError):
    pass


def _interreduce_degree(alg: FreeAlgebra, cands: list[Element]) -> list[Element]:
    """Row reduce same-length elements; returns monic elements with distinct tips."""
    paths = sorted({p for c in cands for p in c.terms}, key=alg.order.key)
    col = {p: n for n, p in enumerate(paths)}
    e = Echelon(track=False)
    for c in sorted(cands, key=lambda x: alg.order.key(x.tip()), reverse=True):
        e.add({col[p]: v for p, v in c.terms.items()})
    return [Element(alg, {paths[k]: v for k, v in row.items()}) for row in e.basis()]


def complete_to_gb(gens: Sequence[Element], order: AdmissibleOrder | None = None,
                   degree_bound: int | None = None) -> GroebnerBasis:
    """Degree-by-degree completion of a length-homogeneous generating set."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis([], order, "Verified", degree_bound)
    alg = gens[0].alg
    if order is not None and order != alg.order:
        alg = alg.with_order(order)
        gens = [alg.element(g.terms) for g in gens]
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not length-homogeneous")
        if not g.is_uniform():
            raise ValueError(f"generator {g} is not uniform")
    top = max(g.tip().length for g in gens)
    if degree_bound is None:
        degree_bound = 2 * top + 4
    if degree_bound < top:
        raise BoundTooSmall(f"generator of length {top} exceeds bound {degree_bound}")

    pending: dict[int, list[Element]] = defaultdict(list)
    for g in gens:
        pending[g.tip().length].append(g)
    G: list[Element] = []
    red = Reducer(G)
    truncated = False
    d = min(pending)
    while pending:
        d = min(pending)
        batch = pending.pop(d)
        reduced = [red.reduce(c) for c in batch]
        reduced = [r for r in reduced if not r.is_zero()]
        if not reduced:
            continue
        new = _interreduce_degree(alg, reduced)
        start = len(G)
        G.extend(new)
        red = Reducer(G)
        for a in range(start, len(G)):
            for b in range(len(G)):
                pairs = [(a, b)] if a == b else [(a, b), (b, a)]
                if b > a:
                    continue
                for x, y in pairs:
                    for od in overlap_differences(G[x], G[y], x, y):
                        L = G[x].tip().length + od.p.length
                        if od.value.is_zero():
                            continue
                        if L > degree_bound:
                            truncated = True
                            continue
                        pending[L].append(od.value)
    G.sort(key=lambda g: alg.order.key(g.tip()))
    return GroebnerBasis(G, alg.order, "DegreeBounded" if truncated else "Verified", degree_bound)


def nontips(G, d: int, quiver=None) -> list[Path]:
    """Paths of length ``d`` containing no tip of ``G``, greatest first."""
    if isinstance(G, GroebnerBasis):
        elems, order = G.elements, G.order
    else:
        elems, order = list(G), None
    tips = {g.tip().arrows for g in elems}
    if quiver is None:
        quiver = elems[0].alg.quiver if elems else order.quiver
    if order is None:
        order = elems[0].alg.order if elems else AdmissibleOrder(quiver)
    return sorted(_nontips(quiver, tips, d), key=order.key)


def _nontips(quiver, tips: set, d: int) -> list[Path]:
    if d == 0:
        return [quiver.trivial(v) for v in range(quiver.num_vertices)]
    lengths = sorted({len(t) for t in tips})
    out = [quiver.arrow(a) for a in range(quiver.num_arrows) if (a,) not in tips]
    outgoing = [quiver.arrows_from(v) for v in range(quiver.num_vertices)]
    for _ in range(d - 1):
        nxt = []
        for p in out:
            for a in outgoing[p.target]:
                arr = p.arrows + (a,)
                n = len(arr)
                if any(L <= n and arr[n - L:] in tips for L in lengths):
                    continue
                nxt.append(Path(p.source, quiver.target(a), arr))
        out = nxt
    return out


def nontip_counts(G, quiver, max_d: int) -> list[int]:
    tips = {g.tip().arrows for g in (G.elements if isinstance(G, GroebnerBasis) else G)}
    return [len(_nontips(quiver, tips, d)) for d in range(max_d + 1)]


@dataclass
class KoszulResult:
    verdict: str             # "Koszul" or "Inconclusive"
    reason: str
    basis: GroebnerBasis | None = None


def koszul_certificate(quiver, gens: Sequence[Element], order: AdmissibleOrder | None = None,
                       degree_bound: int = 4) -> KoszulResult:
    """Quadratic reduced Groebner basis => Koszul; otherwise Inconclusive."""
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.lengths() != {2}:
            raise ValueError(f"non-quadratic generator {g}")
    if not gens:
        return KoszulResult("Koszul", "empty relation set; the reduced basis is vacuously quadratic",
                            GroebnerBasis([], order, "Verified", degree_bound))
    G = complete_to_gb(gens, order, max(degree_bound, 3))
    longer = [g for g in G.elements if g.tip().length > 2]
    if longer:
        return KoszulResult("Inconclusive",
                            f"reduced basis has an element of length {longer[0].tip().length}: {longer[0]}", G)
    if not G.verified:
        return KoszulResult("Inconclusive", "completion stopped at the degree bound", G)
    return KoszulResult("Koszul", f"reduced Groebner basis of {len(G.elements)} quadratic elements", G)
