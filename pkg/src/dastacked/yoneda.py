"""Yoneda products on Ext(Λ₀, Λ₀) by lifting cocycles to chain maps.

The basis class f^n_i of Ext^n is dual to generator i of P^n.  For the
product f·g with f in Ext^n and g in Ext^m, g is lifted to maps
L^k : P^{m+k} -> P^k and f·g = f ∘ L^n.  With this convention, for a
monomial algebra f^m_j · f^n_i corresponds to the concatenation
R^n_i R^m_j of overlap paths.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .linalg import Echelon, axpy, kernel
from .resolution import Resolution
from .stacked import Classification


class LiftingError(RuntimeError):
    pass


def _module_times(A, x: dict, lam: dict) -> dict:
    """x · λ for x in a free module (keys (i, b)) and λ in Λ."""
    out: dict = {}
    for (i, b), c in x.items():
        for k, v in A.multiply({b: c}, lam).items():
            key = (i, k)
            w = out.get(key)
            w = v if w is None else w + v
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


class Yoneda:
    def __init__(self, res: Resolution, rng: random.Random | None = None):
        self.res = res
        self.A = res.algebra
        self.rng = rng
        self._solvers: dict = {}
        self._lifts: dict = {}
        self._products: dict = {}

    def dim(self, n: int) -> int:
        return len(self.res.level(n))

    def _solver(self, k: int, d: int, w: int):
        key = (k, d, w)
        s = self._solvers.get(key)
        if s is None:
            res = self.res
            coords = res.block(k, d, w)
            one = self.A.field.one
            e = Echelon(track=True, one=one)
            imgs = []
            tcols: dict = {}
            for n_, c in enumerate(coords):
                img = res.apply_differential(k, {c: one}) if k > 0 else {}
                flat = {tcols.setdefault(key2, len(tcols)): v for key2, v in img.items()}
                imgs.append(flat)
                e.add(flat, tag=n_)
            ker = kernel(imgs, one) if self.rng is not None else []
            s = (coords, tcols, e, ker)
            self._solvers[key] = s
        return s

    def lift(self, m: int, j: int, upto: int) -> list:
        """L[k][h] = image in P^k of generator h of P^{m+k}, for k <= upto."""
        key = (m, j)
        L = self._lifts.get(key)
        res = self.res
        if L is None:
            vj, dj = res.generators[m][j]
            one = self.A.field.one
            L0 = []
            for h in range(len(res.level(m))):
                L0.append({(vj, self.A.index[self.A.quiver.trivial(vj)]): one} if h == j else {})
            L = [L0]
            self._lifts[key] = L
        dj = res.generators[m][j][1]
        while len(L) <= upto and m + len(L) < len(res.generators):
            k = len(L)
            level = res.level(m + k)
            cur = []
            for h, (vh, dh) in enumerate(level):
                rhs: dict = {}
                for l, lam in res.differentials[m + k][h].items():
                    prev = L[k - 1][l]
                    if prev:
                        axpy(rhs, 1, _module_times(self.A, prev, lam))
                if not rhs:
                    cur.append({})
                    continue
                coords, tcols, e, ker = self._solver(k, dh - dj, vh)
                target = {}
                for key2, v in rhs.items():
                    col = tcols.get(key2)
                    if col is None:
                        raise LiftingError(f"lifting system inconsistent at level {k}")
                    target[col] = v
                sol = e.solve(target)
                if sol is None:
                    raise LiftingError(f"lifting system inconsistent at level {k}")
                if self.rng is not None and ker:
                    for kv in ker:
                        c = self.rng.randint(-3, 3)
                        if c:
                            axpy(sol, self.A.field(c), kv)
                cur.append({coords[t]: v for t, v in sol.items()})
            L.append(cur)
        return L

    def product(self, f: tuple, g: tuple) -> dict:
        """f·g for basis classes f = (n, i), g = (m, j): coefficients over Ext^{n+m}."""
        key = (f, g)
        out = self._products.get(key)
        if out is not None:
            return out
        n, i = f
        m, j = g
        res = self.res
        out = {}
        if n + m < len(res.generators):
            L = self.lift(m, j, n)
            if len(L) > n:
                vi = res.generators[n][i][0]
                e = self.A.index[self.A.quiver.trivial(vi)]
                for h, x in enumerate(L[n]):
                    c = x.get((i, e))
                    if c:
                        out[h] = c
        self._products[key] = out
        return out

    def product_classes(self, n: int, x: dict, m: int, y: dict) -> dict:
        """Bilinear extension to arbitrary classes x in Ext^n, y in Ext^m."""
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                axpy(out, a * b, self.product((n, i), (m, j)))
        return out

    def is_zero_block(self, n: int, m: int) -> bool:
        return all(not self.product((n, i), (m, j))
                   for i in range(self.dim(n)) for j in range(self.dim(m)))


def yoneda_product(res: Resolution, f: tuple, g: tuple) -> dict:
    return Yoneda(res).product(f, g)


# -- structural checks ------------------------------------------------------


@dataclass
class Check:
    ok: bool
    name: str
    details: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def vanishing_laws(Y: Yoneda, cls: Classification, n_max: int | None = None) -> list[Check]:
    """The Ext product vanishing laws for a (D,A)-stacked algebra with D > 2."""
    D, A = cls.D, cls.A
    top = len(Y.res.generators) - 1 if n_max is None else min(n_max, len(Y.res.generators) - 1)
    out = []
    if D is None or D <= 2:
        return out

    def zero(n, m):
        return [(n, m, i, j) for i in range(Y.dim(n)) for j in range(Y.dim(m))
                if Y.product((n, i), (m, j))]

    out.append(Check(not (bad := zero(1, 1) if top >= 2 else []), "i: Ext1 x Ext1 = 0", bad))
    if D != A + 1:
        bad = []
        for n in range(1, top, 2):
            bad += zero(n, 1) + zero(1, n)
        out.append(Check(not bad, "ii: Ext^odd x Ext1 = 0 = Ext1 x Ext^odd", bad))
    if A is not None and A > 1:
        bad = []
        for n in range(2, top, 2):
            bad += zero(n, 1) + zero(1, n)
        out.append(Check(not bad, "iii: Ext^even x Ext1 = 0 = Ext1 x Ext^even", bad))
    if D != 2 * A:
        bad = []
        for a in range(3, top + 1, 2):
            for b in range(3, top + 1 - a, 2):
                bad += zero(a, b)
        out.append(Check(not bad, "iv: Ext^odd x Ext^odd = 0 (degrees >= 3)", bad))
    return out


def check_low_degree_generation(Y: Yoneda, n_max: int | None = None) -> Check:
    """Ext^2 x Ext^{n-2} spans Ext^n for 4 <= n <= n_max."""
    top = len(Y.res.generators) - 1 if n_max is None else min(n_max, len(Y.res.generators) - 1)
    for n in range(4, top + 1):
        dim = Y.dim(n)
        if dim == 0:
            continue
        e = Echelon(track=False)
        for i in range(Y.dim(2)):
            for j in range(Y.dim(n - 2)):
                e.add(Y.product((2, i), (n - 2, j)))
        if e.rank < dim:
            missing = [h for h in range(dim) if not e.contains({h: Y.A.field.one})]
            return Check(False, "generated in degrees 0-3",
                         [{"n": n, "rank": e.rank, "dim": dim, "witness": missing[0]}])
    return Check(True, "generated in degrees 0-3")


def characterization(Y: Yoneda, D: int, A: int, n_max: int | None = None) -> Check:
    """The product conditions that characterize (D,A)-stacked algebras.

    Uses only the Ext products, with D from the relation length and A from
    the single degree of P^3.
    """
    fake = Classification("DAStacked", D, A)
    checks = [check_low_degree_generation(Y, n_max)] + vanishing_laws(Y, fake, n_max)
    bad = [c.name for c in checks if not c.ok]
    return Check(not bad, "characterization", bad)


def hat_degree(n: int) -> int:
    if n == 0:
        return 0
    if n <= 3:
        return 1
    return n // 2


def hat_closure(Y: Yoneda, n_max: int | None = None) -> Check:
    """Every nonzero product respects the hat degree."""
    top = len(Y.res.generators) - 1 if n_max is None else min(n_max, len(Y.res.generators) - 1)
    bad = []
    for n in range(1, top + 1):
        for m in range(1, top + 1 - n):
            if hat_degree(n) + hat_degree(m) == hat_degree(n + m):
                continue
            if not Y.is_zero_block(n, m):
                bad.append((n, m))
    return Check(not bad, "hat grading closure", bad)


@dataclass
class Obstruction:
    verdict: str      # Obstructed | NoObstructionFound
    z: dict | None = None
    triple: tuple | None = None
    pairs: list = field(default_factory=list)   # (coeff, i, j): coeff * f3_i * f3_j
    reason: str = ""


def check_2A_obstruction(Y: Yoneda) -> Obstruction:
    """Search z in Ext^6 with z = x1 x2 x3 (Ext^2 classes) = Σ y y' (Ext^3 classes)."""
    res = Y.res
    if len(res.generators) <= 6:
        if res.terminated:
            return Obstruction("NoObstructionFound", reason="Ext^6 = 0")
        raise ValueError("the obstruction search needs the resolution to homological degree 6")
    if Y.dim(6) == 0:
        return Obstruction("NoObstructionFound", reason="Ext^6 = 0")
    e = Echelon(track=True)
    pairs = []
    for i in range(Y.dim(3)):
        for j in range(Y.dim(3)):
            v = Y.product((3, i), (3, j))
            if v:
                e.add(v, tag=len(pairs))
                pairs.append((i, j))
    for a in range(Y.dim(2)):
        for b in range(Y.dim(2)):
            ab = Y.product((2, a), (2, b))
            if not ab:
                continue
            for c in range(Y.dim(2)):
                z = Y.product_classes(4, ab, 2, {c: Y.A.field.one})
                if not z:
                    continue
                sol = e.solve(z)
                if sol is None:
                    continue
                terms = [(sol[t], pairs[t][0], pairs[t][1]) for t in sorted(sol)]
                return Obstruction("Obstructed", z, (a, b, c), terms,
                                   "z is a product of three Ext^2 classes and a sum of Ext^3 products")
    return Obstruction("NoObstructionFound", reason="no triple product of Ext^2 classes lies in Ext^3 x Ext^3")
