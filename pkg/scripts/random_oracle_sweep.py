"""Compare the overlap-set resolution with the linear-algebra resolution on
random monomial algebras, including all Yoneda products of basis classes.

    python3 scripts/random_oracle_sweep.py --count 50 --seed 7 --hom-cutoff 8
"""
import argparse
import random
import sys
import time

from dastacked import monomial as mono
from dastacked.generators import random_monomial
from dastacked.resolution import minimal_resolution
from dastacked.yoneda import Yoneda


def compare(spec, hom_cutoff):
    """(level mismatches, product mismatches, products checked, ranks)."""
    sets = mono.overlap_sets_for(spec.algebra, spec.relations, hom_cutoff)
    A = mono.monomial_quotient(spec.algebra, [x.tip() for x in spec.relations])
    r = minimal_resolution(A, hom_cutoff)
    levels = [n for n in range(max(len(sets), len(r.generators)))
              if n >= len(sets) or n >= len(r.generators)
              or sorted((p.target, p.length) for p in sets[n].paths) != r.multiset(n)]
    if levels:
        return levels, 0, 0, r.ranks()
    Y = Yoneda(r)
    top = len(sets) - 1
    # generator i of P^n corresponds to the overlap path equal to its tip
    idx = [{g.tip(): i for i, g in enumerate(r.gelements[n])} for n in range(top + 1)]
    bad = total = 0
    for n in range(top + 1):
        for m in range(top + 1 - n):
            for i, ei in enumerate(sets[n].elements):
                for j, ej in enumerate(sets[m].elements):
                    k = mono.ext_product(sets, m, j, n, i)
                    want = {} if k is None else {idx[n + m][sets[n + m].elements[k].path]: 1}
                    total += 1
                    bad += Y.product((m, idx[m][ej.path]), (n, idx[n][ei.path])) != want
    return [], bad, total, r.ranks()


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--hom-cutoff", type=int, default=8)
    ap.add_argument("--max-vertices", type=int, default=12)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    failures = 0
    t0 = time.time()
    for it in range(args.count):
        spec = random_monomial(rng, max_vertices=args.max_vertices)
        levels, bad, total, ranks = compare(spec, args.hom_cutoff)
        kind = "cycle" if spec.quiver.num_arrows == spec.quiver.num_vertices else "line"
        lengths = sorted({r.tip().length for r in spec.relations})
        status = "ok" if not levels and not bad else "MISMATCH"
        failures += status != "ok"
        print(f"{it:3d} {kind:5s} |Q0|={spec.quiver.num_vertices:2d} relations={len(spec.relations):2d} "
              f"lengths={lengths} ranks={ranks} products={total} {status}"
              + (f" levels={levels}" if levels else "") + (f" bad={bad}" if bad else ""))
    print(f"{args.count} algebras, {failures} with discrepancies, {time.time() - t0:.1f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
