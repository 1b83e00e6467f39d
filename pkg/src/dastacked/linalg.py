"""Exact sparse linear algebra.

Vectors are dicts ``column -> nonzero scalar`` with integer columns.  The
pivot of a vector is its smallest column, so callers encode "most
important coordinate" as the smallest index.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ONE = Fraction(1)


def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place."""
    for k, v in x.items():
        w = y.get(k)
        w = a * v if w is None else w + a * v
        if w:
            y[k] = w
        else:
            y.pop(k, None)


def scaled(x: dict, a) -> dict:
    return {k: a * v for k, v in x.items()}


class Echelon:
    """Incremental row echelon form with combination tracking.

    Each stored row remembers which input vectors it is a combination of,
    so that ``solve`` can express a target in terms of the inputs.
    Stored rows are kept fully reduced against each other.
    """

    def __init__(self, track: bool = True, one=ONE):
        self.one = one
        self.rows: dict[int, dict] = {}    # pivot -> monic row
        self.combos: dict[int, dict] = {}  # pivot -> combination of inputs
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: dict, combo: dict | None):
        v = dict(v)
        rows = self.rows
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v, combo
            k = min(hits)
            c = v[k]
            axpy(v, -c, rows[k])
            if combo is not None:
                axpy(combo, -c, self.combos[k])

    def reduce(self, v: dict) -> dict:
        return self._reduce(v, None)[0]

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def add(self, v: dict, tag=None):
        """Insert ``v``; returns (independent?, dependency combination).

        When ``v`` is dependent the returned dict expresses ``v`` minus its
        reduction as a combination of earlier inputs; that is, it is a kernel
        relation among inputs (including ``tag`` with coefficient 1).
        """
        idx = self.count if tag is None else tag
        self.count += 1
        combo = {idx: self.one} if self.track else None
        r, combo = self._reduce(v, combo)
        if not r:
            return False, combo
        k = min(r)
        inv = 1 / r[k]
        r = scaled(r, inv)
        if combo is not None:
            combo = scaled(combo, inv)
        for p, row in self.rows.items():
            c = row.get(k)
            if c:
                axpy(row, -c, r)
                if combo is not None:
                    axpy(self.combos[p], -c, combo)
        self.rows[k] = r
        if combo is not None:
            self.combos[k] = combo
        return True, None

    def solve(self, target: dict):
        """Combination of inputs equal to ``target``, or None if outside the span."""
        combo: dict = {}
        r, combo = self._reduce(target, combo)
        if r:
            return None
        return scaled(combo, -1)

    def basis(self) -> list[dict]:
        """Reduced rows, sorted by pivot."""
        return [self.rows[k] for k in sorted(self.rows)]


def rref(vectors: Iterable[dict], one=ONE) -> list[dict]:
    e = Echelon(track=False, one=one)
    for v in vectors:
        e.add(v)
    return e.basis()


def rank(vectors: Iterable[dict]) -> int:
    e = Echelon(track=False)
    for v in vectors:
        e.add(v)
    return e.rank


def kernel(images: Sequence[dict], one=ONE) -> list[dict]:
    """Basis (in RREF over input coordinates) of {x : sum x_j images[j] = 0}."""
    e = Echelon(track=True, one=one)
    rel = []
    for j, v in enumerate(images):
        ok, combo = e.add(v, tag=j)
        if not ok:
            rel.append(combo)
    return rref(rel, one)


def complement(subspace: Iterable[dict], vectors: Iterable[dict]) -> list[dict]:
    """Vectors extending a basis of ``subspace`` to one of subspace + span(vectors).

    The returned vectors are reduced modulo ``subspace`` and put in RREF
    among themselves, so the choice depends only on the spans and the
    column ordering.
    """
    base = Echelon(track=False)
    for v in subspace:
        base.add(v)
    rest = Echelon(track=False)
    for v in vectors:
        r = base.reduce(v)
        if r:
            rest.add(r)
    out = []
    for r in rest.basis():
        out.append(base.reduce(r))
    return rref(out)
