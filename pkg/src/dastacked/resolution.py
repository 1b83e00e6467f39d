"""Minimal graded projective resolutions of Λ₀ over Λ = KQ/I.

P^n is a direct sum of shifted indecomposable projectives e_v Λ, one per
generator ``(v, degree)``.  An element of P^n is a sparse dict
``(generator, nontip index) -> scalar``.  The differential is stored by
columns: ``differentials[n][j]`` maps generator j of P^n to
``{i: coordinates over Λ}``, meaning ``d(gen j) = Σ_i gen_i · λ_ij``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Element
from .linalg import complement, kernel
from .quotient import QuotientAlgebra


class CutoffExhausted(RuntimeError):
    pass


@dataclass
class Resolution:
    algebra: QuotientAlgebra
    generators: list            # generators[n] = [(vertex, degree), ...]
    differentials: list         # differentials[n][j] = {i: vec}; differentials[0] = []
    gelements: list = field(default_factory=list)   # generators as elements of KQ
    terminated: bool = False    # an empty level was reached
    exhausted: bool = False     # degree cutoff hit before the homological cutoff
    hom_cutoff: int = 0

    @property
    def length(self) -> int:
        return len(self.generators) - 1

    def ranks(self) -> list[int]:
        return [len(g) for g in self.generators]

    def degrees(self, n: int) -> list[int]:
        return sorted({d for _, d in self.generators[n]})

    def multiset(self, n: int) -> list[tuple[int, int]]:
        return sorted(self.generators[n])

    def gldim(self):
        """Global dimension when the resolution terminated, else None."""
        if not self.terminated:
            return None
        n = len(self.generators) - 1
        while n > 0 and not self.generators[n]:
            n -= 1
        return n

    def entry_element(self, n: int, i: int, j: int) -> Element:
        return self.algebra.element(self.differentials[n][j].get(i, {}))

    def level(self, n: int) -> list:
        if n < len(self.generators):
            return self.generators[n]
        return []

    # -- module arithmetic -------------------------------------------------

    def apply_differential(self, n: int, x: dict) -> dict:
        """d^n on an element of P^n."""
        A = self.algebra
        out: dict = {}
        col = self.differentials[n]
        for (j, b), c in x.items():
            bpath = A.paths[b]
            for i, lam in col[j].items():
                for k, v in A.right_path(lam, bpath).items():
                    key = (i, k)
                    w = out.get(key)
                    w = c * v if w is None else w + c * v
                    if w:
                        out[key] = w
                    else:
                        out.pop(key, None)
        return out

    def block(self, n: int, d: int, w: int) -> list[tuple[int, int]]:
        """Coordinates of P^n in internal degree d at vertex w (via e_w on the right)."""
        A = self.algebra
        out = []
        for i, (v, deg) in enumerate(self.generators[n]):
            for b in A.nontips_at(d - deg, source=v, target=w):
                out.append((i, b))
        return out

    def check(self) -> list[str]:
        """Complex, minimality and homogeneity violations (empty when sound)."""
        A = self.algebra
        bad = []
        for n in range(1, len(self.generators)):
            gens, prev = self.generators[n], self.generators[n - 1]
            for j, col in enumerate(self.differentials[n]):
                vj, dj = gens[j]
                for i, lam in col.items():
                    vi, di = prev[i]
                    for b in lam:
                        p = A.paths[b]
                        if p.length == 0:
                            bad.append(f"level {n}: entry ({i},{j}) has a degree-0 part")
                        if p.length != dj - di:
                            bad.append(f"level {n}: entry ({i},{j}) is not homogeneous")
                        if p.source != vi or p.target != vj:
                            bad.append(f"level {n}: entry ({i},{j}) has wrong endpoints")
                if n >= 2:
                    img = self.apply_differential(n - 1, {(i, b): c for i, lam in col.items() for b, c in lam.items()})
                    if img:
                        bad.append(f"d{n - 1} d{n} != 0 on generator {j}")
        return bad


def _module_times_arrow(A: QuotientAlgebra, x: dict, a: int) -> dict:
    out: dict = {}
    for (i, b), c in x.items():
        for k, v in A.right_arrow(b, a).items():
            key = (i, k)
            w = out.get(key)
            w = c * v if w is None else w + c * v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def _gelement(A: QuotientAlgebra, prev_g: list, col: dict) -> Element:
    alg = A.alg
    out = alg.zero()
    for i, lam in col.items():
        out = out + prev_g[i] * A.element(lam)
    return out


def minimal_resolution(A: QuotientAlgebra, hom_cutoff: int = 10, degree_cutoff: int = 64) -> Resolution:
    q = A.quiver
    alg = A.alg
    one = A.field.one

    gens0 = [(v, 0) for v in range(q.num_vertices)]
    g0 = [alg.vertex(v) for v in range(q.num_vertices)]
    res = Resolution(A, [gens0], [[]], [g0], hom_cutoff=hom_cutoff)
    if q.num_vertices == 0 or hom_cutoff == 0:
        res.terminated = q.num_arrows == 0
        return res

    gens1 = [(q.target(a), 1) for a in range(q.num_arrows)]
    d1 = [{q.source(a): {A.index[q.arrow(a)]: one}} for a in range(q.num_arrows)]
    res.generators.append(gens1)
    res.differentials.append(d1)
    res.gelements.append([alg.arrow(a) for a in range(q.num_arrows)])
    if not gens1:
        res.terminated = True
        return res
    if max(d for _, d in gens1) > degree_cutoff:
        res.exhausted = True
        return res

    incoming = [[a for a in range(q.num_arrows) if q.target(a) == w] for w in range(q.num_vertices)]
    for n in range(2, hom_cutoff + 1):
        prev = res.generators[n - 1]
        lo = min(d for _, d in prev)
        hi = max(d for _, d in prev) + A.top
        K: dict = {}
        new = []
        for d in range(lo, hi + 1):
            for w in range(q.num_vertices):
                coords = res.block(n - 1, d, w)
                if not coords:
                    continue
                pos = {c: k for k, c in enumerate(coords)}
                images = []
                for (i, b) in coords:
                    img = res.apply_differential(n - 1, {(i, b): one})
                    images.append(img)
                # flatten image coordinates
                tcols: dict = {}
                flat = []
                for img in images:
                    flat.append({tcols.setdefault(key, len(tcols)): c for key, c in img.items()})
                ker = kernel(flat, one)
                kvecs = [{coords[k]: c for k, c in v.items()} for v in ker]
                K[(d, w)] = kvecs
                if not kvecs:
                    continue
                sub = []
                for a in incoming[w]:
                    for x in K.get((d - 1, q.source(a)), []):
                        y = _module_times_arrow(A, x, a)
                        if y:
                            sub.append({pos[key]: c for key, c in y.items()})
                fresh = complement(sub, ker)
                for v in fresh:
                    col: dict = {}
                    for k, c in v.items():
                        i, b = coords[k]
                        col.setdefault(i, {})[b] = c
                    new.append(((w, d), col))
        if not new:
            res.generators.append([])
            res.differentials.append([])
            res.gelements.append([])
            res.terminated = True
            return res
        prev_g = res.gelements[n - 1]
        gl = [_gelement(A, prev_g, col) for _, col in new]
        order = alg.order
        perm = sorted(range(len(new)), key=lambda k: (new[k][0][1], order.key(gl[k].tip()) if gl[k] else (1,), k))
        res.generators.append([new[k][0] for k in perm])
        res.differentials.append([new[k][1] for k in perm])
        res.gelements.append([gl[k] for k in perm])
        if max(d for _, d in res.generators[n]) > degree_cutoff:
            res.exhausted = True
            return res
    return res


def resolve_algebra(alg, relations, hom_cutoff: int = 10, degree_cutoff: int = 64, gb_bound=None) -> Resolution:
    A = QuotientAlgebra.from_relations(alg, relations, gb_bound)
    return minimal_resolution(A, hom_cutoff, degree_cutoff)
