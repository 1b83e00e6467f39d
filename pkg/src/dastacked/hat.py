"""The hat-degree regrading of Ext and verification of candidate presentations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import complete_to_gb, nontip_counts
from .linalg import Echelon
from .parser import AlgebraSpec, InputError, parse_expression
from .resolution import Resolution
from .stacked import Classification
from .yoneda import Yoneda, hat_closure


class RegimeError(ValueError):
    pass


@dataclass
class HatReport:
    dims: list
    closure: object = None       # yoneda.Check or None
    note: str = ""


def hat_regime(cls: Classification, ext6_zero: bool, gldim=None) -> str:
    """Empty string when the hat grading applies, else the reason it does not."""
    if cls.gldim is not None and cls.gldim <= 3:
        return ""
    if not cls.stacked:
        return f"not (D,A)-stacked: {cls.describe()}"
    D, A = cls.D, cls.A
    if D <= 2 or A <= 1:
        return f"needs D > 2 and A > 1 (D={D}, A={A})"
    if D == 2 * A and not ext6_zero:
        return f"D = 2A = {D} with Ext^6 nonzero or unknown: run the obstruction check"
    if D == A + 1 and not (cls.gldim is not None and cls.gldim < 4):
        return f"D = A + 1 = {D}"
    return ""


def hat_dims(ext_dims: list[int]) -> list[int]:
    """Ê_k dimensions from dim Ext^n, as far as they are complete."""
    top = len(ext_dims) - 1
    out = [ext_dims[0]] if ext_dims else []
    if top >= 3:
        out.append(sum(ext_dims[1:4]))
    k = 2
    while 2 * k + 1 <= top:
        out.append(ext_dims[2 * k] + ext_dims[2 * k + 1])
        k += 1
    return out


def hat_grading(ext_dims: list[int], cls: Classification, Y: Yoneda | None = None,
                terminated: bool = False) -> HatReport:
    dims = list(ext_dims)
    if terminated:
        dims = dims + [0] * 3
    ext6_zero = len(dims) > 6 and dims[6] == 0
    why = hat_regime(cls, ext6_zero)
    if why:
        raise RegimeError(why)
    h = hat_dims(dims)
    if terminated:
        while len(h) > 1 and h[-1] == 0:
            h.pop()
    closure = hat_closure(Y) if Y is not None else None
    return HatReport(h, closure)


# -- candidate presentations ------------------------------------------------


@dataclass
class PresentationCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class PresentationReport:
    checks: list
    hat_dims: list
    nontip_counts: list
    class_map: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _solve_in_span(vectors: list[dict], target: dict):
    e = Echelon(track=True)
    for t, v in enumerate(vectors):
        e.add(v, tag=t)
    return e.solve(target)


def _invert(M: list[list], F) -> list[list] | None:
    n = len(M)
    A = [[F(x) for x in row] + [F(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def match_classes(res: Resolution, cand: AlgebraSpec):
    """Map each candidate arrow to a class vector in Ext^n and each vertex to a vertex of Q.

    Returns (arrow_classes: label -> (n, {i: c}), vertex_map: label -> vertex index).
    """
    Q = res.algebra.quiver
    alg = res.algebra.alg
    vmap = {}
    given = {}
    for c in cand.classes:
        if c.degree == 0:
            if not Q.has_vertex(c.text.strip()):
                raise InputError(f"line {c.line}: unknown vertex {c.text.strip()!r}")
            vmap[c.label] = Q.vertex_index(c.text.strip())
        else:
            given[c.label] = (c.degree, parse_expression(alg, c.text, c.line))
    G = cand.quiver
    for v in G.vertices:
        if v not in vmap:
            if not Q.has_vertex(v):
                raise InputError(f"candidate vertex {v!r} has no CLASS line and no matching vertex")
            vmap[v] = Q.vertex_index(v)
    arrows = {}
    by_tier: dict[int, list] = {}
    for lab, _, _ in G.arrows:
        if lab not in given:
            raise InputError(f"candidate arrow {lab!r} has no CLASS line")
        n, x = given[lab]
        by_tier.setdefault(n, []).append((lab, x))
    for n, items in by_tier.items():
        if n >= len(res.generators):
            raise InputError(f"class of degree {n} beyond the computed resolution")
        mine = res.gelements[n]
        paths = sorted({p for g in mine for p in g.terms} | {p for _, x in items for p in x.terms},
                       key=alg.order.key)
        col = {p: k for k, p in enumerate(paths)}
        vecs = [{col[p]: c for p, c in g.terms.items()} for g in mine]
        rows = []
        for lab, x in items:
            sol = _solve_in_span(vecs, {col[p]: c for p, c in x.terms.items()})
            if sol is None:
                raise InputError(f"CLASS {lab} is not a combination of the degree-{n} generators")
            rows.append([sol.get(i, 0) for i in range(len(mine))])
        if len(rows) != len(mine):
            raise InputError(f"degree {n}: {len(rows)} classes given, Ext^{n} has dimension {len(mine)}")
        # dual basis: N = (M^T)^{-1}
        MT = [[rows[k][i] for k in range(len(rows))] for i in range(len(mine))]
        N = _invert(MT, res.algebra.field)
        if N is None:
            raise InputError(f"degree-{n} classes are not a basis")
        for k, (lab, x) in enumerate(items):
            arrows[lab] = (n, {i: res.algebra.field(N[k][i]) for i in range(len(mine)) if N[k][i] != 0},
                           x)
    return arrows, vmap


def verify_ext_presentation(res: Resolution, cand: AlgebraSpec, Y: Yoneda | None = None) -> PresentationReport:
    Y = Y or Yoneda(res)
    G = cand.quiver
    ext = res.ranks()
    checks = []
    arrows, vmap = match_classes(res, cand)

    # (a) counts and endpoints
    nE1 = sum(ext[1:4]) if len(ext) > 3 else sum(ext[1:])
    ok = G.num_vertices == ext[0] and G.num_arrows == nE1 and len(set(vmap.values())) == G.num_vertices
    detail = f"vertices {G.num_vertices} vs dim Ext^0 {ext[0]}; arrows {G.num_arrows} vs dim Ext^1+Ext^2+Ext^3 {nE1}"
    bad_ends = []
    for lab, s, t in G.arrows:
        n, vec, x = arrows[lab]
        tip = x.tip()
        if vmap[G.vertices[s]] != tip.target or vmap[G.vertices[t]] != tip.source:
            bad_ends.append(lab)
    if bad_ends:
        ok = False
        detail += f"; wrong endpoints: {', '.join(bad_ends)}"
    checks.append(PresentationCheck("a: vertex and arrow counts", ok, detail))

    # (b) nontip counts against hat dimensions
    dims = list(ext) + ([0] * 3 if res.terminated else [])
    hd = hat_dims(dims)
    K = len(hd) - 1
    rels = [r for r in cand.relations]
    if rels:
        GB = complete_to_gb(rels, cand.order, max(K, max(r.tip().length for r in rels)))
        counts = nontip_counts(GB, G, K)
    else:
        counts = nontip_counts([], G, K)
    okb = counts == hd[:K + 1]
    first = next((k for k in range(K + 1) if counts[k] != hd[k]), None)
    checks.append(PresentationCheck(
        "b: nontip counts equal hat dimensions", okb,
        f"nontips {counts} vs hat dims {hd[:K + 1]}" + ("" if okb else f"; first mismatch at hat degree {first}")))

    # (c) every relation holds in Ext
    badc = []
    for r in cand.relations:
        total: dict = {}
        for p, c in r.terms.items():
            if p.length != 2:
                badc.append(f"{r} is not quadratic")
                break
            x, y = (G.arrow_label(a) for a in p.arrows)
            nx, vx, _ = arrows[x]
            ny, vy, _ = arrows[y]
            if nx + ny >= len(res.generators):
                if res.terminated:
                    continue
                badc.append(f"{r}: degree {nx + ny} beyond the computed resolution")
                break
            prod = Y.product_classes(nx, vx, ny, vy)
            part = total.setdefault(nx + ny, {})
            for h, v in prod.items():
                w = part.get(h, 0) + c * v
                if w:
                    part[h] = w
                else:
                    part.pop(h, None)
        else:
            if any(total.values()):
                badc.append(f"{r} is nonzero in Ext")
    checks.append(PresentationCheck("c: relations vanish in Ext", not badc, "; ".join(badc[:5])))
    cmap = {lab: (n, vec) for lab, (n, vec, _) in arrows.items()}
    return PresentationReport(checks, hd, counts, cmap)
