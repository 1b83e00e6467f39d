"""Monomial algebras: overlap sets, their resolution, Ext by concatenation,
and the quiver-with-relations presentation of the Ext algebra.

For the overlap set R^n each element is a path R^n_i = R^{n-1}_k · u.
Generator i of P^n sits at t(R^n_i) in degree len(R^n_i) and d^n maps it
to t(R^{n-1}_k)·u in the R^{n-1}_k component.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .algebra import AdmissibleOrder, FreeAlgebra
from .groebner import GroebnerBasis
from .quiver import Path, Quiver
from .quotient import QuotientAlgebra
from .resolution import Resolution
from .stacked import Classification, classify_degrees


class NotMonomial(ValueError):
    pass


class RegimeError(ValueError):
    pass


def overlaps(p: Path, q: Path) -> list[tuple[tuple, tuple, bool]]:
    """All (u, v) (as arrow tuples) with p·u = v·q and 1 <= len(u) < len(q).

    The flag is True when the overlap is proper, i.e. len(v) >= 1.
    """
    a, b = p.arrows, q.arrows
    out = []
    for k in range(min(len(a), len(b) - 1), 0, -1):
        # k = length of the shared piece: suffix of p equal to prefix of q
        if a[len(a) - k:] == b[:k]:
            u = b[k:]
            v = a[:len(a) - k]
            out.append((u, v, len(v) >= 1))
    return out


@dataclass
class OverlapElement:
    path: Path
    parent: int | None     # index into R^{n-1}
    tail: tuple            # the extension u (arrow indices)


@dataclass
class OverlapSet:
    n: int
    elements: list

    @property
    def paths(self) -> list[Path]:
        return [e.path for e in self.elements]

    def __len__(self):
        return len(self.elements)


def monomial_paths(relations) -> list[Path]:
    out = []
    for r in relations:
        if r.is_zero():
            continue
        if not r.is_monomial():
            raise NotMonomial(f"relation {r} is not a path")
        out.append(r.tip())
    return out


def tip_minimal(paths: list[Path], warn: bool = True) -> list[Path]:
    """Drop paths containing another path of the set."""
    uniq = list(dict.fromkeys(paths))
    keep = []
    for p in uniq:
        contained = False
        for q in uniq:
            if q == p or len(q.arrows) > len(p.arrows):
                continue
            L = len(q.arrows)
            if any(p.arrows[i:i + L] == q.arrows for i in range(len(p.arrows) - L + 1)):
                contained = True
                break
        if contained:
            if warn:
                warnings.warn(f"relation {p.arrows} contains another relation; dropped")
        else:
            keep.append(p)
    return keep


def build_overlap_sets(quiver: Quiver, R2: list[Path], n_max: int,
                       order: AdmissibleOrder | None = None) -> list[OverlapSet]:
    order = order or AdmissibleOrder(quiver)
    R2 = sorted(tip_minimal(R2), key=order.key)
    sets = [OverlapSet(0, [OverlapElement(quiver.trivial(v), None, ()) for v in range(quiver.num_vertices)])]
    if n_max >= 1 and quiver.num_arrows:
        sets.append(OverlapSet(1, [OverlapElement(quiver.arrow(a), quiver.source(a), (a,))
                                   for a in range(quiver.num_arrows)]))
    if n_max >= 1 and not quiver.num_arrows:
        sets.append(OverlapSet(1, []))
    if n_max >= 2 and sets[1].elements:
        els = []
        for p in R2:
            els.append(OverlapElement(p, p.arrows[0], p.arrows[1:]))
        sets.append(OverlapSet(2, els))
    for n in range(3, n_max + 1):
        prev = sets[-1]
        if not prev.elements:
            break
        els = []
        seen = set()
        for k, e in enumerate(prev.elements):
            p = e.tail
            cands = []
            for s in R2:
                for u, _, _ in _overlaps_arrows(p, s.arrows):
                    cands.append(u)
            # maximal overlaps: no candidate is a proper prefix of another
            for u in sorted(set(cands), key=len):
                if any(len(w) < len(u) and u[:len(w)] == w for w in cands):
                    continue
                arrows = e.path.arrows + u
                if len(arrows) > quiver.max_path_length:
                    raise ValueError("overlap path exceeds the path length cutoff")
                path = Path(e.path.source, quiver.target(u[-1]), arrows)
                if path in seen:
                    continue
                seen.add(path)
                els.append(OverlapElement(path, k, u))
        els.sort(key=lambda x: order.key(x.path))
        sets.append(OverlapSet(n, els))
        if not els:
            break
    for s in sets:
        _check_prefix_unique(s)
    return sets


def _overlaps_arrows(p: tuple, s: tuple):
    """Overlaps of s with p: first k arrows of s are the last k of p, 1 <= k <= min(len p, len s - 1)."""
    out = []
    for k in range(1, min(len(p), len(s) - 1) + 1):
        if p[len(p) - k:] == s[:k]:
            out.append((s[k:], p[:len(p) - k], True))
    return out


def _check_prefix_unique(s: OverlapSet):
    paths = [e.path.arrows for e in s.elements]
    for a in paths:
        for b in paths:
            if a is not b and len(a) < len(b) and b[:len(a)] == a:
                raise AssertionError(f"overlap set R^{s.n} is not prefix-unique")


def overlap_sets_for(spec_or_alg, relations, n_max: int) -> list[OverlapSet]:
    alg = spec_or_alg
    return build_overlap_sets(alg.quiver, monomial_paths(relations), n_max, alg.order)


def monomial_quotient(alg: FreeAlgebra, R2: list[Path]) -> QuotientAlgebra:
    G = GroebnerBasis([alg.path(p) for p in sorted(tip_minimal(R2, warn=False), key=alg.order.key)],
                      alg.order, "Verified", None)
    return QuotientAlgebra(alg, G)


def monomial_resolution(alg: FreeAlgebra, sets: list[OverlapSet], A: QuotientAlgebra | None = None) -> Resolution:
    if A is None:
        R2 = sets[2].paths if len(sets) > 2 else []
        A = monomial_quotient(alg, R2)
    one = A.field.one
    gens, diffs, gel = [], [], []
    for n, s in enumerate(sets):
        gens.append([(e.path.target, e.path.length) for e in s.elements])
        gel.append([alg.path(e.path) for e in s.elements])
        if n == 0:
            diffs.append([])
            continue
        col = []
        for e in s.elements:
            parent_path = sets[n - 1].elements[e.parent].path
            u = Path(parent_path.target, e.path.target, e.tail)
            col.append({e.parent: {A.index[u]: one}})
        diffs.append(col)
    terminated = len(sets[-1]) == 0
    res = Resolution(A, gens, diffs, gel, terminated=terminated, hom_cutoff=len(sets) - 1)
    return res


def classify_stacked_monomial(sets: list[OverlapSet], n_max: int | None = None) -> Classification:
    levels = [[e.path.length for e in s.elements] for s in sets]
    terminated = len(sets[-1]) == 0
    if n_max is not None:
        levels = levels[:n_max + 1]
        terminated = terminated and len(sets) - 1 <= n_max
    return classify_degrees(levels, terminated)


def ext_product(sets: list[OverlapSet], m: int, j: int, n: int, i: int):
    """f^m_j · f^n_i: index k with R^n_i R^m_j = R^{n+m}_k, else None."""
    if n + m >= len(sets):
        return None
    a = sets[n].elements[i].path
    b = sets[m].elements[j].path
    if m == 0:
        return i if b.source == a.target else None
    if n == 0:
        return j if a.source == b.source else None
    if a.target != b.source:
        return None
    arrows = a.arrows + b.arrows
    for k, e in enumerate(sets[n + m].elements):
        if e.path.arrows == arrows and e.path.source == a.source:
            return k
    return None


@dataclass
class R5Report:
    ok: bool
    pairs: dict = field(default_factory=dict)        # R^5 index -> [(("b", i), ("c", j)) ...]
    violations: list = field(default_factory=list)


def check_R5_factorization(sets: list[OverlapSet]) -> R5Report:
    """Every element of R^5 written as R^2·R^3 is also R^3·R^2, and vice versa."""
    if len(sets) <= 5 or not sets[5].elements:
        return R5Report(True)
    pairs: dict = {}
    viol = []
    for k in range(len(sets[5])):
        bc = [(i, j) for i in range(len(sets[2])) for j in range(len(sets[3]))
              if ext_product(sets, 3, j, 2, i) == k]
        cb = [(j, i) for j in range(len(sets[3])) for i in range(len(sets[2]))
              if ext_product(sets, 2, i, 3, j) == k]
        pairs[k] = {"R2R3": bc, "R3R2": cb}
        if bool(bc) != bool(cb):
            viol.append(k)
    return R5Report(not viol, pairs, viol)


@dataclass
class ExtPresentation:
    quiver: Quiver
    relations: list          # elements of K[ext quiver]
    dim_table: list          # |R^n|
    tiers: dict              # arrow label -> (n, index)
    order: AdmissibleOrder
    flags: list = field(default_factory=list)
    classes: dict = field(default_factory=dict)   # arrow label -> Path in Q

    @property
    def algebra(self) -> FreeAlgebra:
        return FreeAlgebra(self.quiver, None, self.order)


def build_ext_presentation(alg: FreeAlgebra, sets: list[OverlapSet], cls: Classification) -> ExtPresentation:
    """The quiver Δ and the relation set H_Δ of the Ext algebra."""
    if cls.verdict != "DAStacked":
        raise RegimeError(f"presentation needs a (D,A)-stacked algebra with A > 1, got {cls.describe()}")
    D, A = cls.D, cls.A
    if D <= 2 or A <= 1:
        raise RegimeError(f"presentation needs D > 2 and A > 1 (got D={D}, A={A})")
    last = len(sets) - 1
    ext6_zero = (last >= 6 and len(sets[6]) == 0) or (len(sets[last]) == 0 and last <= 6)
    if D == 2 * A and not ext6_zero:
        raise RegimeError(f"D = 2A = {D} with Ext^6 nonzero (or not computed): no hat grading; see obstruct")
    flags = []
    gl = next((n for n, s in enumerate(sets) if n > 0 and len(s) == 0), None)
    gldim = gl - 1 if gl is not None else None
    if D == 2 * A:
        flags.append(f"D = 2A with global dimension {gldim}: Ext^6 = 0, so the hat grading still applies")
    if D == A + 1:
        if gldim is not None and gldim < 4:
            flags.append("D = A + 1 with global dimension below 4: no products of degree 4 or more")
        else:
            flags.append("D = A + 1: outside the regime where the relation set is known to be complete")
    Q = alg.quiver
    verts = list(Q.vertices)
    letters = {1: "a", 2: "b", 3: "c"}
    arrows = []
    tiers = {}
    classes = {}
    for n in (1, 2, 3):
        if n >= len(sets):
            continue
        for i, e in enumerate(sets[n].elements):
            lab = f"{letters[n]}{i + 1}"
            while lab in verts:
                lab = "f" + lab
            arrows.append((lab, e.path.target, e.path.source))
            tiers[lab] = (n, i)
            classes[lab] = e.path
    Delta = Quiver(tuple(verts), tuple(arrows))
    order = AdmissibleOrder(Delta)
    dalg = FreeAlgebra(Delta, alg.field, order)
    idx = {lab: k for k, (lab, _, _) in enumerate(arrows)}

    def word(x, y):
        return dalg.path(Delta.path([idx[x], idx[y]]))

    rels = []
    labels = [a[0] for a in arrows]
    for x in labels:
        for y in labels:
            ax, ay = Delta.arrows[idx[x]], Delta.arrows[idx[y]]
            if ax[2] != ay[1]:
                continue
            nx, ix = tiers[x]
            ny, iy = tiers[y]
            # Δ-word x·y is the Yoneda product x·y; non-zero iff R_y R_x is in R^{nx+ny}
            prod = ext_product(sets, nx, ix, ny, iy)
            if nx == 1 or ny == 1 or (nx == 3 and ny == 3):
                rels.append(word(x, y))
            elif nx == 2 and ny == 2:
                if prod is None:
                    rels.append(word(x, y))
            else:
                if prod is None:
                    rels.append(word(x, y))
    # binomials bc - c'b' for bc != 0
    for x in labels:
        if tiers[x][0] != 2:
            continue
        for y in labels:
            if tiers[y][0] != 3 or Delta.arrows[idx[x]][2] != Delta.arrows[idx[y]][1]:
                continue
            k = ext_product(sets, 2, tiers[x][1], 3, tiers[y][1])
            if k is None:
                continue
            partner = None
            for c in labels:
                if tiers[c][0] != 3:
                    continue
                for b in labels:
                    if tiers[b][0] != 2 or Delta.arrows[idx[c]][2] != Delta.arrows[idx[b]][1]:
                        continue
                    if ext_product(sets, 3, tiers[c][1], 2, tiers[b][1]) == k:
                        partner = (c, b)
                        break
                if partner:
                    break
            if partner is None:
                flags.append(f"{x}{y} is nonzero but has no factorization through Ext^3·Ext^2")
                continue
            rels.append(word(x, y) - word(*partner))
    rels = [r.monic() for r in rels]
    rels.sort(key=lambda r: order.key(r.tip()))
    dims = [len(s) for s in sets]
    return ExtPresentation(Delta, rels, dims, tiers, order, flags, classes)
