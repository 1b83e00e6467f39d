"""Shared random generators for property tests."""


def random_path(q, rng, max_len=6, source=None):
    v = rng.randrange(q.num_vertices) if source is None else source
    p = q.trivial(v)
    for _ in range(rng.randint(0, max_len)):
        out = q.arrows_from(p.target)
        if not out:
            break
        p = q.compose(p, q.arrow(rng.choice(out)))
    return p


def random_element(alg, rng, terms=4, max_len=6, coeffs=(-3, -2, -1, 1, 2, 3)):
    q = alg.quiver
    return alg.element([(random_path(q, rng, max_len), rng.choice(coeffs)) for _ in range(terms)])


def random_ideal_element(alg, gens, rng, terms=3, max_len=3):
    """An explicit combination sum c * u * g * v of the generators."""
    q = alg.quiver
    x = alg.zero()
    for _ in range(terms):
        g = rng.choice(gens)
        t = g.tip()
        # walk back so that u ends where g starts
        u = _path_ending_at(q, rng, t.source, max_len)
        v = random_path(q, rng, max_len, source=t.target)
        x = x + alg.path(u) * g * alg.path(v) * rng.choice((1, -1, 2))
    return x


def _path_ending_at(q, rng, v, max_len):
    arrows = []
    cur = v
    for _ in range(rng.randint(0, max_len)):
        into = [a for a in range(q.num_arrows) if q.target(a) == cur]
        if not into:
            break
        a = rng.choice(into)
        arrows.append(a)
        cur = q.source(a)
    arrows.reverse()
    return q.path(arrows, source=cur) if arrows else q.trivial(v)
