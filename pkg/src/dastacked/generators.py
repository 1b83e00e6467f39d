"""Random monomial algebras on line and cycle quivers, for sweeps and tests."""

from __future__ import annotations

import random

from .algebra import AdmissibleOrder, FreeAlgebra
from .parser import AlgebraSpec
from .fields import Field
from .quiver import Quiver


def line_quiver(n: int) -> Quiver:
    return Quiver(tuple(str(i) for i in range(1, n + 1)),
                  tuple((f"a{i}", i - 1, i) for i in range(1, n)))


def cycle_quiver(n: int) -> Quiver:
    return Quiver(tuple(str(i) for i in range(1, n + 1)),
                  tuple((f"a{i}", i - 1, i % n) for i in range(1, n + 1)))


def random_monomial(rng: random.Random, max_vertices: int = 12, lengths=(2, 3, 4, 6),
                    kind: str | None = None) -> AlgebraSpec:
    """Line or cycle quiver with relations that are paths of one length D.

    Cycles always get at least one relation so the algebra stays finite
    dimensional.
    """
    kind = kind or rng.choice(["line", "cycle"])
    D = rng.choice(list(lengths))
    if kind == "line":
        n = rng.randint(D + 1, max(D + 1, max_vertices))
        Q = line_quiver(n)
        starts = list(range(n - D))          # arrow index where a relation may start
    else:
        n = rng.randint(2, max_vertices)
        Q = cycle_quiver(n)
        starts = list(range(n))
    k = rng.randint(1 if kind == "cycle" else 0, len(starts)) if starts else 0
    chosen = sorted(rng.sample(starts, k))
    alg = FreeAlgebra(Q, Field.rationals(), AdmissibleOrder(Q))
    rels = []
    for s in chosen:
        arrows = [(s + t) % Q.num_arrows for t in range(D)]
        rels.append(alg.path(Q.path(arrows)))
    return AlgebraSpec(Q, rels, alg.field, alg.order)
