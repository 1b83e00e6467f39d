"""Command-line front end.

    dastacked classify ALGEBRA_FILE [--hom-cutoff N] [--format json]

Exit codes: 0 success, 1 property failure, 2 input error, 3 cutoff exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import monomial as mono
from .groebner import complete_to_gb, koszul_certificate, verify_reduced_gb
from .hat import RegimeError as HatRegimeError, hat_dims, verify_ext_presentation
from .parser import AlgebraSpec, InputError, load_algebra, parse_order, serialize_algebra
from .quiver import PathLengthError
from .quotient import InfiniteDimensional, QuotientAlgebra
from .resolution import minimal_resolution
from .stacked import Classification, classify_degrees
from .yoneda import Yoneda, check_2A_obstruction

OK, PROPERTY_FAILURE, INPUT_ERROR, CUTOFF = 0, 1, 2, 3

COMMANDS = ("resolve", "classify", "ext", "gb", "koszul", "obstruct", "yoneda", "verify-ext")


@dataclass
class RunConfig:
    command: str
    input: str
    hom_cutoff: int = 10
    degree_cutoff: int = 64
    gb_bound: int | None = None       # default: 2 * longest relation + 4
    order_file: str | None = None
    candidate: str | None = None
    format: str = "text"
    gb_action: str | None = None      # verify | complete
    product: tuple | None = None      # (n, i, m, j), 1-based indices

    def __post_init__(self):
        if self.hom_cutoff < 1 or self.degree_cutoff < 1:
            raise InputError("cutoffs must be positive")
        if self.gb_bound is not None and self.gb_bound < 1:
            raise InputError("--gb-bound must be positive")


class Failure(Exception):
    def __init__(self, code: int, report: dict):
        self.code = code
        self.report = report


def _report(cfg: RunConfig, verdict: str, tables=None, witnesses=None) -> dict:
    cmd = cfg.command if cfg.command != "gb" else f"gb {cfg.gb_action}"
    return {"command": cmd, "input": cfg.input, "verdict": verdict,
            "tables": tables or {}, "witnesses": witnesses or {}}


def _s(x) -> str:
    return str(x)


# -- pipeline pieces ----------------------------------------------------------


def _load(cfg: RunConfig) -> AlgebraSpec:
    spec = load_algebra(cfg.input, max(cfg.degree_cutoff, 64))
    if cfg.order_file:
        with open(cfg.order_file, encoding="utf-8") as fh:
            spec = spec.with_order(parse_order(fh.read(), spec.quiver))
    top = max((r.tip().length for r in spec.relations), default=0)
    if top > cfg.degree_cutoff:
        raise InputError(f"relation of length {top} exceeds --degree-cutoff {cfg.degree_cutoff}")
    return spec


def _bound(cfg: RunConfig, spec: AlgebraSpec) -> int:
    top = max((r.tip().length for r in spec.relations), default=0)
    return cfg.gb_bound if cfg.gb_bound is not None else 2 * top + 4


def _is_monomial(spec: AlgebraSpec) -> bool:
    return all(r.is_monomial() for r in spec.relations)


def _resolution(cfg: RunConfig, spec: AlgebraSpec, hom_cutoff=None):
    for r in spec.relations:
        if not r.is_homogeneous():
            raise InputError(f"relation {r} is not length-homogeneous")
    A = QuotientAlgebra.from_relations(spec.algebra, spec.relations, _bound(cfg, spec))
    return minimal_resolution(A, hom_cutoff or cfg.hom_cutoff, cfg.degree_cutoff)


def _classify(res) -> Classification:
    return classify_degrees([[d for _, d in g] for g in res.generators], res.terminated)


def _level_table(spec, res) -> list:
    V = spec.quiver.vertices
    return [{"n": n, "rank": len(g), "generators": [[V[v], d] for v, d in g]}
            for n, g in enumerate(res.generators)]


def _exhausted(cfg, res) -> dict | None:
    if res.exhausted:
        return {"reason": f"degree cutoff {cfg.degree_cutoff} exceeded at level {len(res.generators) - 1}"}
    return None


# -- commands -------------------------------------------------------------------


def cmd_resolve(cfg, spec):
    res = _resolution(cfg, spec)
    levels = _level_table(spec, res)
    diffs = []
    for n in range(1, len(res.generators)):
        for j, col in enumerate(res.differentials[n]):
            for i in sorted(col):
                diffs.append({"n": n, "row": i + 1, "col": j + 1, "entry": res.algebra.element(col[i]).format()})
    bad = res.check()
    tables = {"levels": levels, "differentials": diffs}
    g = res.gldim()
    if bad:
        raise Failure(PROPERTY_FAILURE, _report(cfg, "resolution invariants violated", tables, {"violations": bad}))
    ex = _exhausted(cfg, res)
    if ex:
        raise Failure(CUTOFF, _report(cfg, "CutoffExhausted", tables, ex))
    verdict = (f"resolution terminates: global dimension {g}" if g is not None
               else f"resolution computed to n={res.length}")
    return OK, _report(cfg, verdict, tables)


def _classification_report(cls: Classification, res) -> dict:
    tab = {"degrees": [sorted({d for _, d in g}) for g in res.generators],
           "ranks": res.ranks()}
    if cls.stacked:
        tab["delta"] = cls.table()
    return tab


def cmd_classify(cfg, spec):
    res = _resolution(cfg, spec)
    cls = _classify(res)
    tables = _classification_report(cls, res)
    wit = {"witness": cls.witness} if cls.witness else {}
    if cls.note:
        wit["note"] = cls.note
    ex = _exhausted(cfg, res)
    if ex:
        raise Failure(CUTOFF, _report(cfg, "CutoffExhausted: " + cls.describe(), tables, ex))
    if cls.verdict == "UndeterminedBeyond":
        raise Failure(CUTOFF, _report(cfg, cls.describe(), tables, wit))
    if cls.verdict == "NotStacked":
        raise Failure(PROPERTY_FAILURE, _report(cfg, cls.describe(), tables, wit))
    return OK, _report(cfg, cls.describe(), tables, wit)


def _monomial_presentation(cfg, spec):
    sets = mono.overlap_sets_for(spec.algebra, spec.relations, cfg.hom_cutoff)
    cls = mono.classify_stacked_monomial(sets, cfg.hom_cutoff)
    tables = {"dim_table": [len(s) for s in sets]}
    if not cls.stacked:
        code = CUTOFF if cls.verdict == "UndeterminedBeyond" else PROPERTY_FAILURE
        raise Failure(code, _report(cfg, cls.describe(), tables, {"witness": cls.witness}))
    try:
        P = mono.build_ext_presentation(spec.algebra, sets, cls)
    except mono.RegimeError as e:
        raise Failure(PROPERTY_FAILURE, _report(cfg, f"RegimeError: {e}", tables)) from None
    return sets, cls, P


def _presentation_text(spec, P) -> str:
    Q = spec.quiver
    out = AlgebraSpec(P.quiver, P.relations, spec.field, P.order)
    text = serialize_algebra(out)
    lines = [text.rstrip("\n")]
    for lab, (n, i) in P.tiers.items():
        lines.append(f"CLASS {lab} {n} {Q.format_path(P.classes[lab])}")
    return "\n".join(lines) + "\n"


def cmd_ext(cfg, spec):
    if cfg.candidate:
        return cmd_verify_ext(cfg, spec)
    if not _is_monomial(spec):
        raise InputError("ext needs a monomial algebra, or --candidate to verify a supplied presentation")
    sets, cls, P = _monomial_presentation(cfg, spec)
    Q = spec.quiver
    tiers = [sum(1 for t in P.tiers.values() if t[0] == n) for n in (1, 2, 3)]
    hd = hat_dims(P.dim_table + [0, 0, 0])
    while len(hd) > 2 and hd[-1] == 0:
        hd.pop()
    tables = {"dim_table": P.dim_table, "hat_dims": hd, "vertices": len(P.quiver.vertices), "arrow_tiers": tiers,
              "arrows": [{"label": lab, "from": P.quiver.vertices[s], "to": P.quiver.vertices[t],
                          "degree": P.tiers[lab][0], "path": Q.format_path(P.classes[lab])}
                         for lab, s, t in P.quiver.arrows],
              "relations": [r.format() for r in P.relations],
              "presentation": _presentation_text(spec, P)}
    wit = {"flags": P.flags} if P.flags else {}
    return OK, _report(cfg, f"Ext presentation built for {cls.describe()}", tables, wit)


def cmd_verify_ext(cfg, spec):
    if not cfg.candidate:
        raise InputError("verify-ext needs --candidate PATH")
    cand = load_algebra(cfg.candidate)
    res = _resolution(cfg, spec)
    if not res.terminated and res.length < 3:
        raise Failure(CUTOFF, _report(cfg, "resolution too short to compare", {}))
    rep = verify_ext_presentation(res, cand)
    tables = {"hat_dims": rep.hat_dims, "nontip_counts": rep.nontip_counts,
              "checks": [{"check": c.name, "ok": c.ok, "detail": c.detail} for c in rep.checks]}
    if not rep.ok:
        raise Failure(PROPERTY_FAILURE, _report(cfg, "candidate presentation rejected", tables))
    return OK, _report(cfg, "candidate presentation verified", tables)


def cmd_gb(cfg, spec):
    if cfg.gb_action == "verify":
        res = verify_reduced_gb(spec.relations, spec.order)
        conds = {c: not any(f[0] == c for f in res.failures) for c in ("i", "ii", "iii")}
        tables = {"size": len(spec.relations), "conditions": conds}
        if not res.ok:
            raise Failure(PROPERTY_FAILURE, _report(cfg, "not a reduced Groebner basis", tables,
                                                    {"failures": _fmt_failures(spec, res.failures)}))
        return OK, _report(cfg, "reduced Groebner basis: all three conditions hold", tables)
    if cfg.gb_action == "complete":
        if not spec.relations:
            return OK, _report(cfg, "empty basis", {"basis": ""})
        G = complete_to_gb(spec.relations, spec.order, _bound(cfg, spec))
        arrows, vertices = spec.order.labels()
        lines = []
        if arrows:
            lines.append("ORDER ARROWS " + " > ".join(arrows))
        lines += [g.format() for g in G.elements]
        tables = {"status": G.status, "bound": G.bound, "size": len(G.elements),
                  "basis": "\n".join(lines) + "\n"}
        return OK, _report(cfg, f"{G.status} basis with {len(G.elements)} elements", tables)
    raise InputError("gb needs 'verify' or 'complete'")


def _fmt_failures(spec, failures):
    Q = spec.quiver
    out = []
    for cond, d in failures:
        item = {"condition": cond}
        for k, v in d.items():
            if hasattr(v, "arrows"):
                item[k] = Q.format_path(v)
            elif hasattr(v, "terms"):
                item[k] = v.format()
            elif isinstance(v, int):
                item[k] = v + 1 if k in ("index", "over", "h1", "h2") else v
            else:
                item[k] = str(v)
        out.append(item)
    return out


def cmd_koszul(cfg, spec):
    if _is_monomial(spec) and spec.relations and not cfg.candidate:
        sets, cls, P = _monomial_presentation(cfg, spec)
        chk = verify_reduced_gb(P.relations, P.order)
        tables = {"dim_table": P.dim_table, "relations": len(P.relations),
                  "conditions": {c: not any(f[0] == c for f in chk.failures) for c in ("i", "ii", "iii")}}
        if not chk.ok:
            raise Failure(PROPERTY_FAILURE, _report(cfg, "Ext relations are not a reduced Groebner basis", tables,
                                                    {"failures": _fmt_failures(spec, chk.failures)}))
        k = koszul_certificate(P.quiver, P.relations, P.order)
        if k.verdict != "Koszul":
            raise Failure(PROPERTY_FAILURE, _report(cfg, f"Inconclusive: {k.reason}", tables))
        return OK, _report(cfg, "Ext presentation built; H_Delta is a quadratic reduced Groebner basis; "
                                "regraded Ext algebra is Koszul", tables, {"classification": cls.describe()})
    if cfg.candidate:
        code, rep = cmd_verify_ext(cfg, spec)
        cand = load_algebra(cfg.candidate)
        chk = verify_reduced_gb(cand.relations, cand.order) if cand.relations else None
        k = koszul_certificate(cand.quiver, cand.relations, cand.order)
        tables = dict(rep["tables"])
        tables["reduced_gb"] = bool(chk is None or chk.ok)
        if k.verdict != "Koszul":
            raise Failure(PROPERTY_FAILURE, _report(cfg, f"Inconclusive: {k.reason}", tables))
        return OK, _report(cfg, "candidate presentation verified; its relations form a quadratic reduced "
                                "Groebner basis; regraded Ext algebra is Koszul", tables)
    if not spec.relations or all(r.lengths() == {2} for r in spec.relations):
        k = koszul_certificate(spec.quiver, spec.relations, spec.order, max(_bound(cfg, spec), 4))
        tables = {"basis_size": len(k.basis.elements) if k.basis else 0}
        if k.verdict != "Koszul":
            raise Failure(PROPERTY_FAILURE, _report(cfg, f"Inconclusive: {k.reason}", tables))
        return OK, _report(cfg, f"Koszul: {k.reason}", tables)
    raise Failure(PROPERTY_FAILURE, _report(cfg, "Inconclusive: non-monomial, non-quadratic input needs --candidate"))


def cmd_obstruct(cfg, spec):
    if cfg.hom_cutoff < 6:
        raise Failure(CUTOFF, _report(cfg, "hom cutoff below 6: Ext^6 not computed"))
    res = _resolution(cfg, spec)
    cls = _classify(res)
    tables = {"ranks": res.ranks(), "classification": cls.describe()}
    if not (cls.verdict == "DAStacked" and cls.D == 2 * cls.A and cls.A > 1):
        raise Failure(PROPERTY_FAILURE, _report(cfg, f"NotApplicable: needs D = 2A with A > 1 ({cls.describe()})",
                                                tables))
    Y = Yoneda(res)
    ob = check_2A_obstruction(Y)
    if ob.verdict == "Obstructed":
        a, b, c = ob.triple
        wit = {"z": {f"f6_{h + 1}": _s(v) for h, v in sorted(ob.z.items())},
               "triple": [f"f2_{a + 1}", f"f2_{b + 1}", f"f2_{c + 1}"],
               "pairs": [{"coeff": _s(k), "left": f"f3_{i + 1}", "right": f"f3_{j + 1}"} for k, i, j in ob.pairs]}
        return OK, _report(cfg, "Obstructed: no regrading makes the Ext algebra Koszul", tables, wit)
    return OK, _report(cfg, f"NoObstructionFound ({ob.reason})", tables)


def cmd_yoneda(cfg, spec):
    n, i, m, j = cfg.product
    res = _resolution(cfg, spec, max(cfg.hom_cutoff, n + m))
    for deg, idx in ((n, i), (m, j)):
        if deg >= len(res.generators) or not 1 <= idx <= len(res.generators[deg]):
            raise InputError(f"no class f{deg}_{idx}")
    Y = Yoneda(res)
    prod = Y.product((n, i - 1), (m, j - 1))
    terms = {f"f{n + m}_{h + 1}": _s(c) for h, c in sorted(prod.items())}
    text = " + ".join(f"{c}*{k}" for k, c in terms.items()) or "0"
    return OK, _report(cfg, f"f{n}_{i} * f{m}_{j} = {text}", {"product": terms})


# -- output -----------------------------------------------------------------------


def render_text(rep: dict) -> str:
    lines = [f"{rep['command']}: {rep['verdict']}"]

    def emit(key, val, indent=""):
        if isinstance(val, str) and "\n" in val:
            lines.append(f"{indent}{key}:")
            lines.extend(indent + "  " + x for x in val.rstrip("\n").split("\n"))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{indent}{key}:")
            for item in val:
                lines.append(indent + "  " + ", ".join(f"{k}={_flat(v)}" for k, v in item.items()))
        elif isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            for k, v in val.items():
                emit(k, v, indent + "  ")
        else:
            lines.append(f"{indent}{key}: {_flat(val)}")

    for section in ("tables", "witnesses"):
        if rep[section]:
            emit(section, rep[section])
    return "\n".join(lines) + "\n"


def _flat(v) -> str:
    if isinstance(v, bool):
        return "pass" if v else "fail"
    if isinstance(v, list):
        return "(" + ", ".join(_flat(x) for x in v) + ")"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    return str(v)


def render(rep: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep, indent=2, ensure_ascii=False) + "\n"
    return render_text(rep)


HANDLERS = {"resolve": cmd_resolve, "classify": cmd_classify, "ext": cmd_ext, "gb": cmd_gb,
            "koszul": cmd_koszul, "obstruct": cmd_obstruct, "yoneda": cmd_yoneda,
            "verify-ext": cmd_verify_ext}


def run(cfg: RunConfig) -> tuple[int, dict]:
    try:
        spec = _load(cfg)
        return HANDLERS[cfg.command](cfg, spec)
    except Failure as f:
        return f.code, f.report
    except (InputError, OSError, PathLengthError) as e:
        return INPUT_ERROR, _report(cfg, f"InputError: {e}")
    except InfiniteDimensional as e:
        return INPUT_ERROR, _report(cfg, f"InputError: {e}")
    except HatRegimeError as e:
        return PROPERTY_FAILURE, _report(cfg, f"RegimeError: {e}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dastacked", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--hom-cutoff", type=int, default=10)
        p.add_argument("--degree-cutoff", type=int, default=64)
        p.add_argument("--gb-bound", type=int, default=None)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--order-file", default=None)
        p.add_argument("--candidate", default=None)

    for name in ("resolve", "classify", "ext", "koszul", "obstruct", "verify-ext"):
        p = sub.add_parser(name)
        p.add_argument("input")
        common(p)
    g = sub.add_parser("gb")
    g.add_argument("action", choices=("verify", "complete"))
    g.add_argument("input")
    common(g)
    y = sub.add_parser("yoneda", help="product f^n_i * f^m_j (1-based indices)")
    y.add_argument("input")
    for k in ("n", "i", "m", "j"):
        y.add_argument(k, type=int)
    common(y)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig(command=args.command, input=args.input, hom_cutoff=args.hom_cutoff,
                        degree_cutoff=args.degree_cutoff, gb_bound=args.gb_bound,
                        order_file=args.order_file, candidate=args.candidate, format=args.format,
                        gb_action=getattr(args, "action", None),
                        product=(args.n, args.i, args.m, args.j) if args.command == "yoneda" else None)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    code, rep = run(cfg)
    sys.stdout.write(render(rep, cfg.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
