"""Command line interface.

Exit codes: 0 all determined checks pass, 2 a check failed, 3 a result is
undetermined because a resolution hit its cap, 1 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path as FsPath

from . import homology as H
from .corner import EmptyKeptSet, corner_report
from .dsl import ParseError, emit, from_quiver, parse
from .exactla import Field
from .presentation import CapExceeded, InfiniteDimensional, QuiverError
from .rep import ModuleError, injective, projective, simple
from .skewgroup import (CyclicActionSpec, TranslationDataError, TranslationQuiverSpec, cyclic_corner_bound,
                        cyclic_self_orthogonal, mckay_cyclic, translation_check)

FIELD_ENV = "QUIVERHOM_FIELD"

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_UNDETERMINED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _default_field() -> Field | None:
    val = os.environ.get(FIELD_ENV)
    if not val:
        return None
    try:
        return Field.parse(val)
    except ValueError:
        raise UsageError(f"{FIELD_ENV}={val!r} is not a field (use Q, Fp or F<prime>)") from None


def _load(path: str):
    try:
        text = FsPath(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text, _default_field())
    except ParseError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.col}: {exc.message}") from None


def _algebra(af):
    try:
        return af.algebra()
    except (QuiverError, CapExceeded, InfiniteDimensional) as exc:
        raise UsageError(str(exc)) from None


def _vertex(A, label: str) -> int:
    try:
        return A.vertex_labels.index(label)
    except ValueError:
        raise UsageError(f"unknown vertex {label!r}") from None


def _vertex_set(A, text: str) -> list[int]:
    return [_vertex(A, v.strip()) for v in text.split(",") if v.strip()]


def resolve_module(af, A, spec: str, e_set: list[int] | None = None):
    """``S:v``, ``P:v``, ``I:v``, ``Se`` or the name of a module block."""
    kind, _, v = spec.partition(":")
    if v:
        i = _vertex(A, v)
        build = {"S": simple, "P": projective, "I": injective}.get(kind)
        if build is None:
            raise UsageError(f"unknown module kind {kind!r} (use S, P or I)")
        M = build(A, i)
        M.name = spec
        return M
    if spec == "Se":
        es = e_set if e_set is not None else af.e_indices()
        if not es:
            raise UsageError("Se needs an e-set (declare 'e:' or pass --remove)")
        return H.semisimple_e(A, es)
    if spec in af.modules:
        try:
            return af.build_module(A, spec)
        except (ModuleError, ParseError) as exc:
            raise UsageError(f"module {spec}: {exc}") from None
    raise UsageError(f"unknown module {spec!r}")


def _cap(args, A, af) -> int:
    if args.cap is not None:
        return args.cap
    if af.cap is not None:
        return af.cap
    return H.default_cap(A)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _dim_exit(d: H.Dim) -> int:
    return EXIT_UNDETERMINED if d.kind == "at_least" else EXIT_OK


# ---------- commands ----------

def cmd_info(args) -> int:
    af = _load(args.file)
    if args.dot:
        print(af.quiver().to_dot())
        return EXIT_OK
    A = _algebra(af)
    q = af.quiver()
    info = {
        "field": str(A.field), "vertices": list(A.vertex_labels), "dim": A.dim,
        "dims_by_vertex": [len(A.by_left[i]) for i in range(A.n)],
        "basis": A.labels(),
        "arrows": [{"label": a.label, "source": q.vertices[a.source], "target": q.vertices[a.target]}
                   for a in q.arrows],
        "relations": len(af.relations),
    }
    if args.json:
        _print_json(info)
        return EXIT_OK
    print(f"field: {info['field']}")
    print(f"vertices: {', '.join(info['vertices'])}")
    print(f"dim: {A.dim}")
    for i, v in enumerate(A.vertex_labels):
        print(f"  dim e{v}A = {info['dims_by_vertex'][i]}")
    print(f"basis: {', '.join(info['basis'])}")
    for a in info["arrows"]:
        print(f"arrow {a['label']}: {a['source']} -> {a['target']}")
    return EXIT_OK


def _terms_line(A, t) -> str:
    parts = [f"P{A.vertex_labels[j]}" + (f"^{k}" if k > 1 else "") for j, k in enumerate(t) if k]
    return " + ".join(parts) if parts else "0"


def cmd_resolve(args) -> int:
    af = _load(args.file)
    A = _algebra(af)
    M = resolve_module(af, A, args.module)
    res = H.minimal_resolution(M, _cap(args, A, af))
    if args.json:
        _print_json({"module": args.module, "vertices": list(A.vertex_labels), **res.to_json()})
    else:
        for i, t in enumerate(res.terms):
            print(f"P_{i}: {_terms_line(A, t)}")
        if res.capped:
            print(f"(stopped at the cap {res.cap})")
        print(f"pd {args.module} = {res.pd()}")
    return _dim_exit(res.pd())


def cmd_ext(args) -> int:
    af = _load(args.file)
    A = _algebra(af)
    M = resolve_module(af, A, args.module)
    res = H.minimal_resolution(M, _cap(args, A, af))
    table = res.terms
    if args.json:
        _print_json({"module": args.module, "vertices": list(A.vertex_labels),
                     "ext": [list(t) for t in table], "capped": res.capped, "pd": res.pd().to_json()})
    else:
        width = max([len(v) for v in A.vertex_labels] + [1]) + 1
        print("i  " + "".join(f"S{v}".rjust(width + 1) for v in A.vertex_labels))
        for i, t in enumerate(table):
            print(f"{i:<3}" + "".join(str(x).rjust(width + 1) for x in t))
        if res.capped:
            print(f"(higher degrees not computed: cap {res.cap})")
    return _dim_exit(res.pd())


def cmd_gldim(args) -> int:
    af = _load(args.file)
    A = _algebra(af)
    d = H.global_dim(A, _cap(args, A, af))
    if args.json:
        _print_json({"gldim": d.to_json(), "pd_simples": {
            v: H.simple_resolution(A, i, _cap(args, A, af)).pd().to_json() for i, v in enumerate(A.vertex_labels)}})
    else:
        print(str(d))
    return _dim_exit(d)


def _removed(args, af, A) -> list[int]:
    if args.remove:
        return _vertex_set(A, args.remove)
    if af.e_set:
        return af.e_indices()
    raise UsageError("give the removed vertices with --remove or an 'e:' line")


def cmd_corner(args) -> int:
    af = _load(args.file)
    A = _algebra(af)
    es = _removed(args, af, A)
    try:
        rep = corner_report(A, es, _cap(args, A, af))
    except (EmptyKeptSet, ValueError) as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        _print_json(rep)
    else:
        print(f"removed: {', '.join(rep['removed'])}; kept: {', '.join(rep['kept'])}")
        print(f"dim Gamma = {rep['dim']}")
        print(f"basis: {', '.join(rep['basis'])}")
        for a in rep["quiver"]:
            print(f"arrow {a['label']}: {a['source']} -> {a['target']}")
        print(f"gl.dim Gamma = {H.Dim(**rep['gldim'])}")
        print(f"pd F(eA) = {H.Dim(**rep['pd_F_eA'])}")
    undetermined = any(rep[k]["kind"] == "at_least" for k in ("gldim", "pd_F_eA"))
    return EXIT_UNDETERMINED if undetermined else EXIT_OK


def cmd_verify(args) -> int:
    from .verify import check_all
    af = _load(args.file)
    A = _algebra(af)
    es = _removed(args, af, A)
    try:
        report = check_all(A, es, _cap(args, A, af), seed=args.seed)
    except EmptyKeptSet as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(report.dumps())
    else:
        v = report.values
        print(f"e = {{{', '.join(report.e_set)}}}, cap {report.cap}")
        for k in ("pd_S_e", "id_S_e", "pd_F_eA", "gldim_A", "gldim_Gamma", "d_e_S_e"):
            print(f"  {k} = {v[k]}")
        print(f"  Ext^i(S_e,S_e) = {v['ext_S_e_S_e']}")
        print(f"  self-orthogonal: {v['self_orthogonal']}; primitive: {v['primitive']}")
        for sid, c in report.summary().items():
            print(f"{sid:<4} holds {c['holds']:>3}  vacuous {c['vacuous']:>3}  "
                  f"undetermined {c['undetermined']:>3}  fails {c['fails']:>3}")
        for r in report.by_id("S12"):
            print(f"S12 {r.part}: {r.verdict} (conclusion {r.conclusion}); "
                  f"Ext^i(S_e,S_e) = {r.witnesses.get('ext_S_e_S_e')}")
        for r in report.failures():
            print(f"FAIL {r.statement_id} {r.part} on {r.subject}: {r.witnesses}")
    return report.exit_code()


def _weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"weights must be integers: {text!r}") from None


def cmd_mckay(args) -> int:
    try:
        spec = CyclicActionSpec(args.m, _weights(args.weights))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.check_corner is None:
        q, ideal = mckay_cyclic(spec)
        af = from_quiver(q, ideal)
        if args.json:
            _print_json({"m": spec.m, "weights": list(spec.weights), "dsl": emit(af)})
        else:
            sys.stdout.write(emit(af))
        return EXIT_OK
    e = args.check_corner
    if not 0 <= e < spec.m:
        raise UsageError(f"vertex {e} outside 0..{spec.m - 1}")
    verdict = cyclic_corner_bound(spec, e)
    so = cyclic_self_orthogonal(spec, e)
    if args.json:
        _print_json({"m": spec.m, "weights": list(spec.weights), "e": e, "pd_simple": spec.n,
                     "self_orthogonal": so.holds, **verdict.to_json()})
    elif so.holds:
        print(f"self-orthogonal: yes; gl.dim Γ ≤ {verdict.bound}")
    else:
        subset = "{" + ",".join(str(i) for i in so.witness) + "}"
        print(f"self-orthogonal: no (weights {subset} sum to 0 mod {spec.m}); hypotheses fail")
    return EXIT_OK


def cmd_translation(args) -> int:
    af = _load(args.file)
    if af.tau is None:
        raise UsageError("translation data needs a 'tau:' line")
    try:
        q = af.quiver()
        targets = [args.e] if args.e else (af.distinguished or [])
        if not targets:
            raise UsageError("name a vertex with --e or a 'distinguished:' line")
        spec = TranslationQuiverSpec.from_labels(q, af.tau, targets)
        spec.validate()
    except (TranslationDataError, QuiverError) as exc:
        raise UsageError(str(exc)) from None
    out = {}
    for e in spec.distinguished:
        out[q.vertices[e]] = translation_check(spec, e)
    if args.json:
        _print_json({v: r.to_json() for v, r in out.items()})
    else:
        for v, r in out.items():
            if r.verdict == "gldim":
                terms = " <- ".join("+".join(f"P{x}" for x in t) or "0" for t in r.witness)
                print(f"e = {v}: gl.dim Γ = {r.gldim}  (F-resolution {terms})")
            else:
                print(f"e = {v}: hypotheses fail ({'; '.join(r.reasons)})")
    return EXIT_OK


def cmd_fuzz(args) -> int:
    from .verify import FuzzConfig, fuzz
    cfg = FuzzConfig(seed=args.seed, trials=args.trials, cap=args.cap, e_sets=args.e_sets,
                     max_vertices=args.max_vertices)
    summary = fuzz(cfg, workers=args.workers)
    if args.bundle_dir:
        d = FsPath(args.bundle_dir)
        d.mkdir(parents=True, exist_ok=True)
        for t in summary.trials:
            if t.bundle:
                (d / f"trial{t.trial}.qh").write_text(t.bundle)
    if args.json:
        print(json.dumps(summary.to_json(), sort_keys=True, indent=2))
    else:
        print(f"seed {cfg.seed}, {cfg.trials} trials ({summary.skipped} skipped: no proper e-set)")
        for sid, c in summary.counts.items():
            print(f"{sid:<4} holds {c['holds']:>6}  vacuous {c['vacuous']:>6}  "
                  f"undetermined {c['undetermined']:>6}  fails {c['fails']:>4}")
        print(f"S11 hypotheses met: {summary.s11_hypotheses_met}")
        print(f"S12 determined primitive cases: {summary.s12_primitive_determined}")
        print(f"failures: {summary.failures}")
    return EXIT_FAIL if summary.failures else EXIT_OK


# ---------- argument parsing ----------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quiverhom", description="Homological invariants of bound quiver algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, file=True):
        if file:
            sp.add_argument("file", help="algebra file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--cap", type=int, default=None, help="resolution cap (default 2*dim A + 2)")

    sp = sub.add_parser("info", help="dimensions, basis and quiver")
    common(sp)
    sp.add_argument("--dot", action="store_true", help="print the quiver in DOT format")
    sp.set_defaults(func=cmd_info)

    for name, func, helptext in (("resolve", cmd_resolve, "minimal projective resolution"),
                                 ("ext", cmd_ext, "Ext table against the simples")):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("module", help="S:v, P:v, I:v, Se or a module block name")
        sp.set_defaults(func=func)

    sp = sub.add_parser("gldim", help="global dimension")
    common(sp)
    sp.set_defaults(func=cmd_gldim)

    sp = sub.add_parser("corner", help="the corner algebra after removing vertices")
    common(sp)
    sp.add_argument("--remove", help="comma-separated vertices to remove")
    sp.set_defaults(func=cmd_corner)

    sp = sub.add_parser("verify", help="check statements S1-S14 for one e-set")
    common(sp)
    sp.add_argument("--remove", help="comma-separated vertices to remove")
    sp.add_argument("--seed", type=int, default=0, help="seed for the random test modules")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("mckay", help="McKay quiver of a diagonal cyclic action")
    common(sp, file=False)
    sp.add_argument("--m", type=int, required=True, help="group order")
    sp.add_argument("--weights", required=True, help="comma-separated weights a_1..a_n")
    sp.add_argument("--check-corner", type=int, default=None, metavar="VERTEX",
                    help="report the corner bound for this vertex")
    sp.set_defaults(func=cmd_mckay)

    sp = sub.add_parser("translation", help="translation-quiver check")
    common(sp, file=False)
    sp.add_argument("--file", required=True, help="file with quiver, 'tau:' and 'distinguished:' lines")
    sp.add_argument("--e", default=None, help="vertex to test (default: distinguished vertices)")
    sp.set_defaults(func=cmd_translation)

    sp = sub.add_parser("fuzz", help="random monomial algebras against all statements")
    common(sp, file=False)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--max-vertices", type=int, default=4)
    sp.add_argument("--e-sets", choices=("all", "primitive"), default="all")
    sp.add_argument("--bundle-dir", default=None, help="write counterexample files here")
    sp.set_defaults(func=cmd_fuzz)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "cap", None) is not None and args.cap < 0:
        print("error: --cap must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
