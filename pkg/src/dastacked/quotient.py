"""Finite-dimensional quotients KQ/I on the nontip basis."""

from __future__ import annotations

from .algebra import Element, FreeAlgebra, Reducer
from .groebner import GroebnerBasis, _nontips, complete_to_gb
from .quiver import Path


class InfiniteDimensional(ValueError):
    pass


class QuotientAlgebra:
    """Λ = KQ/I with basis the nontips.

    ``basis[d]`` lists the nontips of length ``d`` (greatest first) and
    ``index`` maps a nontip path to its global position.  Right
    multiplication by an arrow is tabulated as a sparse vector over the
    global index.
    """

    def __init__(self, alg: FreeAlgebra, G: GroebnerBasis):
        self.alg = alg
        self.quiver = alg.quiver
        self.field = alg.field
        self.G = G
        self.reducer = Reducer(G.elements)
        tips = {g.tip().arrows for g in G.elements}
        bound = G.bound if G.bound is not None else G.max_length() + 1
        basis = []
        d = 0
        while True:
            layer = sorted(_nontips(self.quiver, tips, d), key=alg.order.key)
            if not layer:
                break
            if d > bound and not G.verified:
                raise InfiniteDimensional(f"nontips persist past the verified degree {bound}")
            if d > self.quiver.max_path_length:
                raise InfiniteDimensional("nontips persist past the path length cutoff")
            basis.append(layer)
            d += 1
        self.basis = basis
        self.top = len(basis) - 1
        self.paths = [p for layer in basis for p in layer]
        self.index = {p: i for i, p in enumerate(self.paths)}
        self.dim = len(self.paths)
        self._right: dict[tuple[int, int], dict] = {}

    @classmethod
    def from_relations(cls, alg: FreeAlgebra, relations, degree_bound: int | None = None):
        rel = [alg.element(r.terms) for r in relations if not r.is_zero()]
        if not rel:
            G = GroebnerBasis([], alg.order, "Verified", degree_bound)
        else:
            G = complete_to_gb(rel, alg.order, degree_bound)
        return cls(alg, G)

    def degree(self, i: int) -> int:
        return self.paths[i].length

    def normal_form(self, x: Element) -> dict:
        """Coordinates of x mod I over the nontip basis."""
        r = self.reducer.reduce(x)
        return {self.index[p]: c for p, c in r.terms.items()}

    def element(self, vec: dict) -> Element:
        return Element(self.alg, {self.paths[i]: c for i, c in vec.items()})

    def right_arrow(self, i: int, a: int) -> dict:
        """Coordinates of basis[i]·arrow(a)."""
        key = (i, a)
        out = self._right.get(key)
        if out is None:
            p = self.paths[i]
            q = self.quiver
            if p.target != q.source(a):
                out = {}
            else:
                pa = Path(p.source, q.target(a), p.arrows + (a,))
                j = self.index.get(pa)
                if j is not None:
                    out = {j: self.field.one}
                elif pa.length > self.top:
                    out = {}
                else:
                    out = self.normal_form(self.alg.path(pa))
            self._right[key] = out
        return out

    def right_path(self, vec: dict, path: Path) -> dict:
        """vec · path, one arrow at a time."""
        cur = vec
        for a in path.arrows:
            nxt: dict = {}
            for i, c in cur.items():
                for j, v in self.right_arrow(i, a).items():
                    w = nxt.get(j)
                    w = c * v if w is None else w + c * v
                    if w:
                        nxt[j] = w
                    else:
                        nxt.pop(j, None)
            cur = nxt
            if not cur:
                break
        if not path.arrows:
            cur = {i: c for i, c in vec.items() if self.paths[i].target == path.source}
        return cur

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for j, c in y.items():
            part = self.right_path(x, self.paths[j])
            for k, v in part.items():
                w = out.get(k)
                w = c * v if w is None else w + c * v
                if w:
                    out[k] = w
                else:
                    out.pop(k, None)
        return out

    def nontips_at(self, d: int, source: int | None = None, target: int | None = None) -> list[int]:
        if d < 0 or d > self.top:
            return []
        out = []
        for p in self.basis[d]:
            if source is not None and p.source != source:
                continue
            if target is not None and p.target != target:
                continue
            out.append(self.index[p])
        return out
