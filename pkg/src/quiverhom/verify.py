"""Checks of the bounds relating A, the corner Gamma and the functor F, plus a seeded fuzzer.

Every statement is evaluated into a :class:`StatementResult`.  Hypotheses
and conclusions are three-valued (True, False, None = undetermined because
a resolution hit its cap).  Quantities enter inequalities as intervals:
an exact value n is [n, n], a lower bound n is [n, inf), and the zero
module's projective dimension is taken as -1.

Statement ids:

S1   pd F(M) <= max(d_e(M) + pd F(eA), pd M), with its equality clause
S2   gl.dim Gamma <= max(id S_e + pd F(eA), gl.dim A), with its equality clause
S3   self-orthogonal S_e: pd F(eA) = pd S_e - 1; bound on gl.dim Gamma; finiteness
S4   r = id S_e: pd M <= r + pd F(Omega^{r+1} M) + 1 and gl.dim A <= r + gl.dim Gamma + 1
S5   gl.dim A <= min(id S_e, pd S_e) + gl.dim Gamma + 1
S6   Ext^1(S_e, S_e) = 0: F(M) = 0 iff M in add(S_e)
S7   Ext^1(S_e, S_e) = 0: pd M <= pd S_e + pd F(M) + 1 and the global versions
S8   self-orthogonal S_e: gl.dim A <= 2 gl.dim Gamma + 2
S9   self-orthogonal S_e: gl.dim Gamma finite iff gl.dim A finite
S10  e primitive, Ext^1 = 0, finite pd's: pd F(eA) >= pd S_e - 1, d_e(S_e) <= max(0, pd S_e - 2)
S11  as S10 with S_e not self-orthogonal: Ext^{d-1}(S_e,S_e) != 0, pd F(eA) >= 3, pd S_e >= 4
S12  e primitive, Ext^1 = 0, finite pd's: S_e is self-orthogonal
S13  gl.dim A = max pd S_i dominates every tested pd, agrees with A^op, and id S_e = max d_e(S_j)
S14  F on projectives, simples, essential surjectivity, minimal resolutions and S_e
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import homology as H
from .algebra import BasicAlgebra
from .corner import F, F_of_eA, corner
from .homology import Dim
from .rep import (Module, ProjectiveModule, direct_sum, find_isomorphism, injective, is_semisimple,
                  projective, radical_submodule, random_submodule_quotient, simple, submodule_closure, quotient,
                  map_from_projective, cokernel, ModuleMap)

STATEMENT_IDS = [f"S{i}" for i in range(1, 15)]


# ---------- interval arithmetic ----------

@dataclass(frozen=True)
class Bound:
    lo: float
    hi: float

    @classmethod
    def of(cls, x) -> "Bound":
        if isinstance(x, Bound):
            return x
        if isinstance(x, Dim):
            return cls(x.lo, x.hi)
        return cls(x, x)

    def __add__(self, other) -> "Bound":
        o = Bound.of(other)
        return Bound(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, k: int) -> "Bound":
        return Bound(self.lo - k, self.hi - k)

    def scale(self, k: int) -> "Bound":
        return Bound(self.lo * k, self.hi * k)

    def __str__(self) -> str:
        if self.lo == self.hi:
            return str(int(self.lo))
        return f"[{int(self.lo)}, inf)" if self.hi == math.inf else f"[{int(self.lo)}, {int(self.hi)}]"


def bmax(*xs) -> Bound:
    bs = [Bound.of(x) for x in xs]
    return Bound(max(b.lo for b in bs), max(b.hi for b in bs))


def bmin(*xs) -> Bound:
    bs = [Bound.of(x) for x in xs]
    return Bound(min(b.lo for b in bs), min(b.hi for b in bs))


def le(a, b) -> bool | None:
    a, b = Bound.of(a), Bound.of(b)
    if a.hi <= b.lo:
        return True
    if a.lo > b.hi:
        return False
    return None


def lt(a, b) -> bool | None:
    a, b = Bound.of(a), Bound.of(b)
    if a.hi < b.lo:
        return True
    if a.lo >= b.hi:
        return False
    return None


def eq(a, b) -> bool | None:
    a, b = Bound.of(a), Bound.of(b)
    if a.lo == a.hi == b.lo == b.hi:
        return True
    if a.hi < b.lo or b.hi < a.lo:
        return False
    return None


def t_and(*xs) -> bool | None:
    if any(x is False for x in xs):
        return False
    if any(x is None for x in xs):
        return None
    return True


def t_or(*xs) -> bool | None:
    if any(x is True for x in xs):
        return True
    if any(x is None for x in xs):
        return None
    return False


def t_not(x) -> bool | None:
    return None if x is None else not x


def t_implies(a, b) -> bool | None:
    return t_or(t_not(a), b)


def finite(d: Dim) -> bool | None:
    return d.finite


# ---------- results ----------

@dataclass
class StatementResult:
    statement_id: str
    part: str
    subject: str
    hypotheses: dict
    conclusion: bool | None
    verdict: str
    witnesses: dict

    def to_json(self) -> dict:
        return asdict(self)


def _verdict(hyps: dict, concl) -> str:
    vals = list(hyps.values())
    if any(v is False for v in vals):
        return "vacuous"
    if any(v is None for v in vals):
        return "undetermined"
    return {True: "holds", False: "fails", None: "undetermined"}[concl]


def _w(x):
    if isinstance(x, Dim):
        return str(x)
    if isinstance(x, Bound):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass
class CheckReport:
    algebra: dict
    e_set: list
    cap: int
    values: dict
    results: list = dc_field(default_factory=list)

    def add(self, sid: str, part: str, subject: str, hyps: dict, concl, witnesses: dict) -> StatementResult:
        r = StatementResult(sid, part, subject, dict(hyps), concl, _verdict(hyps, concl),
                            {k: _w(v) for k, v in witnesses.items()})
        self.results.append(r)
        return r

    def by_id(self, sid: str) -> list[StatementResult]:
        return [r for r in self.results if r.statement_id == sid]

    def failures(self) -> list[StatementResult]:
        return [r for r in self.results if r.verdict == "fails"]

    def undetermined(self) -> list[StatementResult]:
        return [r for r in self.results if r.verdict == "undetermined"]

    def summary(self) -> dict:
        out = {}
        for sid in STATEMENT_IDS:
            counts = {"holds": 0, "fails": 0, "vacuous": 0, "undetermined": 0}
            for r in self.by_id(sid):
                counts[r.verdict] += 1
            out[sid] = counts
        return out

    def exit_code(self) -> int:
        if self.failures():
            return 2
        if self.undetermined():
            return 3
        return 0

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "e_set": self.e_set, "cap": self.cap, "values": self.values,
                "summary": self.summary(), "statements": [r.to_json() for r in self.results]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


# ---------- test modules ----------

def _named(M: Module, name: str) -> Module:
    M.name = name
    return M


def test_modules(A: BasicAlgebra, seed: int = 0, n_random: int = 4) -> list[Module]:
    """Simples, projectives, injectives, radicals of projectives and seeded random quotients."""
    cache = A.__dict__.setdefault("_test_modules", {})
    key = (seed, n_random)
    if key in cache:
        return cache[key]
    lab = A.vertex_labels
    mods: list[Module] = []
    for i in range(A.n):
        mods.append(simple(A, i))
    for i in range(A.n):
        mods.append(projective(A, i))
    for i in range(A.n):
        mods.append(injective(A, i))
    for i in range(A.n):
        R, _ = radical_submodule(projective(A, i))
        if not R.is_zero():
            mods.append(_named(R, f"rad P{lab[i]}"))
    rng = random.Random(seed)
    for k in range(n_random):
        tops = [rng.randrange(A.n) for _ in range(rng.choice((1, 1, 2)))]
        P = ProjectiveModule(A, tops)
        M = random_submodule_quotient(P, rng, rng.choice((1, 2)))
        if not M.is_zero():
            mods.append(_named(M, "rand" + str(k) + "(" + "+".join("P" + lab[t] for t in tops) + ")"))
    cache[key] = mods
    return mods


def e_supported_modules(A: BasicAlgebra, e_set: Sequence[int], seed: int = 0) -> list[Module]:
    """Modules killed by 1-e: eA/eA(1-e)A and random quotients of it."""
    es = sorted(e_set)
    P = ProjectiveModule(A, es)
    gens = [[] for _ in range(A.n)]
    for c in range(A.n):
        if c not in es:
            for i in range(P.dims[c]):
                v = [0] * P.dims[c]
                v[i] = 1
                gens[c].append(v)
    top, _ = quotient(P, submodule_closure(P, gens), name="eA/eA(1-e)A")
    out = [top]
    rng = random.Random(seed + 7919)
    if not is_semisimple(top):
        out.append(_named(random_submodule_quotient(top, rng, 1), "rand(eA/eA(1-e)A)"))
    return out


# ---------- per (A, e) evaluation ----------

class Context:
    """Lazily computed invariants of (A, e) shared by the statements."""

    def __init__(self, A: BasicAlgebra, e_set: Sequence[int], cap: int | None = None,
                 max_dim: int = H.DEFAULT_MAX_SYZYGY_DIM):
        self.A = A
        self.G = corner(A, e_set)
        self.e = self.G.e_set
        self.cap = H.default_cap(A) if cap is None else cap
        self.max_dim = max_dim
        self.Se = H.semisimple_e(A, self.e)
        self.res_Se = self.res(self.Se)
        self.pd_Se = self.res_Se.pd()
        self.id_Se = H.dim_max([self.id_simple(j) for j in self.e])
        self.FeA = F_of_eA(A, self.e)
        self.pd_FeA = self.res(self.FeA).pd()
        self.gl_A = H.dim_max([self.res(self.simple(i)).pd() for i in range(A.n)])
        self.gl_G = H.dim_max([self.res(self.simple(i, self.G)).pd() for i in range(self.G.n)])
        self.ext_Se_Se = [sum(t[j] for j in self.e) for t in self.res_Se.terms]
        self.de_Se = self._d_e(self.Se)
        self.primitive = len(self.e) == 1

    # cached helpers
    def simple(self, i: int, B: BasicAlgebra | None = None) -> Module:
        B = B or self.A
        cache = B.__dict__.setdefault("_simples", {})
        if i not in cache:
            cache[i] = simple(B, i)
        return cache[i]

    def res(self, M: Module) -> H.Resolution:
        return H.minimal_resolution(M, self.cap, self.max_dim)

    def _d_e(self, M: Module) -> Dim:
        res = self.res(M)
        found = -1
        for i, t in enumerate(res.terms):
            if any(t[j] for j in self.e):
                found = i
        return Dim.at_least(found) if res.capped else Dim.exact(found)

    def d_e(self, M: Module) -> Dim:
        return self._d_e(M)

    def id_simple(self, j: int) -> Dim:
        Aop = self.A.opposite()
        return self.res(self.simple(j, Aop)).pd()

    def F(self, M: Module) -> Module:
        key = ("F", self.e)
        if key not in M._cache:
            M._cache[key] = F(M, self.G)
        return M._cache[key]

    def pd_F(self, M: Module) -> Dim:
        return self.res(self.F(M)).pd()

    @property
    def ext1_zero(self) -> bool | None:
        if len(self.ext_Se_Se) > 1:
            return self.ext_Se_Se[1] == 0
        return True if not self.res_Se.capped else None

    @property
    def self_orthogonal(self) -> bool | None:
        if any(self.ext_Se_Se[1:]):
            return False
        return None if self.res_Se.capped else True

    def ext_Se(self, i: int) -> int | None:
        if i < 0:
            return 0
        if i < len(self.ext_Se_Se):
            return self.ext_Se_Se[i]
        return None if self.res_Se.capped else 0

    def values(self) -> dict:
        return {
            "pd_S_e": str(self.pd_Se), "id_S_e": str(self.id_Se), "pd_F_eA": str(self.pd_FeA),
            "gldim_A": str(self.gl_A), "gldim_Gamma": str(self.gl_G), "d_e_S_e": str(self.de_Se),
            "ext_S_e_S_e": list(self.ext_Se_Se), "ext1_zero": self.ext1_zero,
            "self_orthogonal": self.self_orthogonal, "primitive": self.primitive,
            "gamma_basis": self.G.labels(),
        }


def algebra_json(A: BasicAlgebra) -> dict:
    return {"vertices": list(A.vertex_labels), "dim": A.dim, "basis": A.labels(), "field": str(A.field)}


def check_all(A: BasicAlgebra, e_set: Sequence[int], cap: int | None = None, seed: int = 0,
              n_random: int = 4, max_dim: int = H.DEFAULT_MAX_SYZYGY_DIM) -> CheckReport:
    ctx = Context(A, e_set, cap, max_dim)
    rep = CheckReport(algebra_json(A), [A.vertex_labels[j] for j in ctx.e], ctx.cap, ctx.values())
    mods = list(test_modules(A, seed, n_random)) + [ctx.Se] + e_supported_modules(A, ctx.e, seed)
    _check_global(ctx, rep)
    for M in mods:
        _check_module(ctx, rep, M)
    _check_S13(ctx, rep, mods)
    _check_S14(ctx, rep, seed)
    return rep


def _check_global(c: Context, rep: CheckReport) -> None:
    s, r, p, glA, glG = c.pd_FeA, c.id_Se, c.pd_Se, c.gl_A, c.gl_G
    w = {"id_S_e": r, "pd_F_eA": s, "gldim_A": glA, "gldim_Gamma": glG, "pd_S_e": p}
    so, e1 = c.self_orthogonal, c.ext1_zero

    rep.add("S2", "bound", "A", {}, le(glG, bmax(Bound.of(r) + s, glA)), w)
    trig = lt(Bound.of(r) + s, Bound.of(glA) - 1)
    rep.add("S2", "equality", "A", {"id S_e + pd F(eA) < gl.dim A - 1": trig}, eq(glG, glA), w)

    not_proj = lt(0, p)
    rep.add("S3", "(1)", "A", {"S_e self-orthogonal": so, "S_e not projective": not_proj},
            eq(s, Bound.of(p) - 1), w)
    bound3 = bmax(Bound.of(r) + p - 1, glA)
    rep.add("S3", "(2)", "A", {"S_e self-orthogonal": so}, le(glG, bound3), w)
    rep.add("S3", "(2) equality", "A",
            {"S_e self-orthogonal": so, "id S_e + pd S_e < gl.dim A": lt(Bound.of(r) + p, glA)},
            eq(glG, bound3), w)
    rep.add("S3", "(3)", "A", {"S_e self-orthogonal": so, "gl.dim A finite": finite(glA)}, finite(glG), w)

    rep.add("S4", "(2)", "A", {}, le(glA, Bound.of(r) + glG + 1), w)
    rep.add("S5", "bound", "A", {}, le(glA, bmin(r, p) + glG + 1), w)
    rep.add("S7", "(2)", "A", {"Ext^1(S_e,S_e) = 0": e1}, le(glA, Bound.of(p) + glG + 1), w)
    rep.add("S7", "(3)", "A", {"Ext^1(S_e,S_e) = 0": e1}, le(glA, bmin(r, p) + glG + 1), w)
    rep.add("S8", "gl.dim A <= 2 gl.dim Gamma + 2", "A", {"S_e self-orthogonal": so},
            le(glA, Bound.of(glG).scale(2) + 2), w)
    rep.add("S8", "gl.dim Gamma bound", "A", {"S_e self-orthogonal": so}, le(glG, bound3), w)
    fa, fg = finite(glA), finite(glG)
    iff = True if (fa is True and fg is True) else None
    rep.add("S9", "finiteness", "A", {"S_e self-orthogonal": so}, iff, w)

    prim = c.primitive
    pdfin, sfin = finite(p), finite(s)
    hyp10 = {"e primitive": prim, "Ext^1(S_e,S_e) = 0": e1, "pd S_e finite": pdfin, "pd F(eA) finite": sfin}
    w10 = dict(w, d_e_S_e=c.de_Se)
    rep.add("S10", "pd F(eA) >= pd S_e - 1", "A", hyp10, le(Bound.of(p) - 1, s), w10)
    rep.add("S10", "d_e(S_e) <= max(0, pd S_e - 2)", "A", hyp10, le(c.de_Se, bmax(0, Bound.of(p) - 2)), w10)

    hyp11 = dict(hyp10, **{"S_e not self-orthogonal": t_not(so)})
    d = c.de_Se
    ext_dm1 = None
    if d.kind == "exact":
        v = c.ext_Se(d.value - 1)
        ext_dm1 = None if v is None else v != 0
    rep.add("S11", "Ext^{d_e(S_e)-1}(S_e,S_e) != 0", "A", hyp11, ext_dm1, w10)
    rep.add("S11", "pd F(eA) >= 3 and pd S_e >= 4", "A", hyp11, t_and(le(3, s), le(4, p)), w10)

    w12 = dict(w, ext_S_e_S_e=list(c.ext_Se_Se))
    rep.add("S12", "self-orthogonality", "A", hyp10, so, w12)


def _check_module(c: Context, rep: CheckReport, M: Module) -> None:
    name = M.name or f"M{M.dims}"
    resM = c.res(M)
    pdM = resM.pd()
    de = c.d_e(M)
    FM = c.F(M)
    pdF = c.pd_F(M)
    s = c.pd_FeA
    w = {"pd_M": pdM, "d_e_M": de, "pd_F_M": pdF, "pd_F_eA": s}
    rep.add("S1", "bound", name, {}, le(pdF, bmax(Bound.of(de) + s, pdM)), w)
    trig = t_or(eq(de, -1), lt(Bound.of(de) + s, Bound.of(pdM) - 1))
    rep.add("S1", "equality", name, {"d_e(M) = -1 or d_e(M) + pd F(eA) < pd M - 1": trig}, eq(pdF, pdM), w)

    r = c.id_Se
    hyp4 = {"id S_e finite": finite(r)}
    concl4 = None
    w4 = dict(w, id_S_e=r)
    if r.kind == "exact":
        try:
            L = resM.syzygy(r.value + 1)
            pdFL = c.pd_F(L)
            w4["pd_F_syzygy"] = pdFL
            concl4 = le(pdM, Bound.of(r) + pdFL + 1)
        except IndexError:
            concl4 = None
    elif r.kind == "neg_inf":
        hyp4 = {"id S_e finite": True}
    rep.add("S4", "(1)", name, hyp4, concl4, w4)

    zero = FM.is_zero()
    in_add = is_semisimple(M) and all(M.dims[j] == 0 for j in range(c.A.n) if j not in c.e)
    rep.add("S6", "F(M) = 0 iff M in add(S_e)", name, {"Ext^1(S_e,S_e) = 0": c.ext1_zero}, zero == in_add,
            {"F_M_zero": zero, "M_in_add_S_e": in_add})

    rep.add("S7", "(1)", name, {"Ext^1(S_e,S_e) = 0": c.ext1_zero}, le(pdM, Bound.of(c.pd_Se) + pdF + 1),
            dict(w, pd_S_e=c.pd_Se))


def _check_S13(c: Context, rep: CheckReport, mods: list[Module]) -> None:
    glA = c.gl_A
    worst = H.dim_max([c.res(M).pd() for M in mods])
    rep.add("S13", "pd M <= max pd S_i", "A", {}, le(worst, glA), {"gldim_A": glA, "max_tested_pd": worst})
    Aop = c.A.opposite()
    gl_op = H.dim_max([c.res(c.simple(i, Aop)).pd() for i in range(Aop.n)])
    rep.add("S13", "gl.dim A = gl.dim A^op", "A", {}, eq(glA, gl_op), {"gldim_A": glA, "gldim_Aop": gl_op})
    de_simples = H.dim_max([c.d_e(c.simple(j)) for j in range(c.A.n)])
    rep.add("S13", "id S_e = max d_e(S_j)", "A", {}, eq(c.id_Se, de_simples),
            {"id_S_e": c.id_Se, "max_d_e_simple": de_simples})
    worst_de = H.dim_max([c.d_e(M) for M in mods])
    rep.add("S13", "d_e(M) <= id S_e", "A", {}, le(worst_de, c.id_Se),
            {"id_S_e": c.id_Se, "max_tested_d_e": worst_de})


def lift_to_parent(G: BasicAlgebra, Q1: ProjectiveModule, Q0: ProjectiveModule, h: ModuleMap):
    """Apply - (x)_Gamma (1-e)A to a map of Gamma-projectives: e_jGamma becomes e_{kept[j]}A."""
    A = G.parent
    P1 = ProjectiveModule(A, [G.kept[j] for j in Q1.summands])
    P0 = ProjectiveModule(A, [G.kept[j] for j in Q0.summands])
    images = []
    for k, j in enumerate(Q1.summands):
        _, pos = Q1.generator_position(k)
        col = h.mats[j].col(pos)
        jj = G.kept[j]
        v = [A.field.zero] * P0.dims[jj]
        for idx, x in enumerate(col):
            if x == 0:
                continue
            kk, b = Q0.layout[j][idx]
            _, pos_a = P0.position[(kk, G.parent_index[b])]
            v[pos_a] = x
        images.append(v)
    return map_from_projective(P1, P0, images)


def _check_S14(c: Context, rep: CheckReport, seed: int) -> None:
    A, G = c.A, c.G
    kept = G.kept
    for jj, j in enumerate(kept):
        FP = c.F(projective(A, j))
        iso = find_isomorphism(FP, ProjectiveModule(G, [jj]), seed=seed) is not None
        rep.add("S14", "(1) F(P) indecomposable projective", f"P{A.vertex_labels[j]}", {}, iso, {})
        FS = c.F(c.simple(j))
        rep.add("S14", "(2) F(S) simple", f"S{A.vertex_labels[j]}", {}, FS.dim == 1, {"dims": list(FS.dims)})
    # (3) essential surjectivity on Gamma-simples, projectives and random quotients
    rng = random.Random(seed + 104729)
    targets = [c.simple(i, G) for i in range(G.n)] + [projective(G, i) for i in range(G.n)]
    for k in range(2):
        tops = [rng.randrange(G.n)]
        N = random_submodule_quotient(ProjectiveModule(G, tops), rng, 1)
        if not N.is_zero():
            targets.append(_named(N, f"rand{k}(P{G.vertex_labels[tops[0]]})"))
    for N in targets:
        Q0, pi = H.projective_cover(N)
        K = H.minimal_resolution(N, 1, c.max_dim)
        if len(K.projectives) > 1:
            Q1, d1 = K.projectives[1], K.differential(1)
        else:
            Q1 = ProjectiveModule(G, [])
            from .rep import zero_map
            d1 = zero_map(Q1, K.projectives[0])
        Q0 = K.projectives[0]
        lifted = lift_to_parent(G, Q1, Q0, d1)
        C, _ = cokernel(lifted)
        ok = find_isomorphism(F(C, G), N, seed=seed) is not None
        rep.add("S14", "(3) essentially surjective", N.name or f"N{N.dims}", {}, ok, {"dims": list(N.dims)})
    # (4) when Ext^*(M, S_e) = 0, F of a minimal resolution is minimal
    for M in test_modules(A, seed):
        de = c.d_e(M)
        hyp = {"d_e(M) = -1": eq(de, -1)}
        resM, resF = c.res(M), c.res(c.F(M))
        concl = None
        if not resM.capped and not resF.capped:
            restricted = [tuple(t[j] for j in kept) for t in resM.terms]
            concl = restricted == resF.terms
        rep.add("S14", "(4) F preserves minimal resolutions", M.name, hyp, concl,
                {"pd_M": resM.pd(), "pd_F_M": resF.pd()})
    rep.add("S14", "(5) F(S_e) = 0", "S_e", {}, c.F(c.Se).is_zero(), {})


# ---------- lifting properties ----------

@dataclass
class LiftingOutcome:
    module: str
    endomorphisms: int
    nilpotent_violations: int
    section_violations: int


def check_lifting(M: Module, cap: int | None = None, t: int = 2, rng: random.Random | None = None) -> LiftingOutcome | None:
    """Radical endomorphisms lift to maps with nilpotent tops; radical M -> M^t never lifts to a section."""
    res = H.minimal_resolution(M, cap)
    if res.capped or M.is_zero():
        return None
    from .rep import radical_endomorphisms, random_element_map
    rng = rng or random.Random(0)
    rad = radical_endomorphisms(M)
    nil_bad = sec_bad = 0
    samples = list(rad) + ([random_element_map(rad, rng)] if rad else [])
    for f in samples:
        for fi in H.lift_map(f, res, res):
            if not H.is_nilpotent(H.top_matrix(fi)):
                nil_bad += 1
    if rad:
        fs = [random_element_map(rad, rng) for _ in range(t)]
        Mt = direct_sum([M] * t)
        res_t = H.minimal_resolution(Mt, cap)
        stacked = []
        for cidx in range(M.algebra.n):
            blocks = [f.mats[cidx] for f in fs]
            m = blocks[0]
            for b in blocks[1:]:
                m = m.vstack(b)
            stacked.append(m)
        g = ModuleMap(M, Mt, stacked)
        for gi in H.lift_map(g, res, res_t):
            if gi.target.dim and H.is_split_mono_between_projectives(gi) and gi.source.dim:
                sec_bad += 1
    return LiftingOutcome(M.name, len(samples), nil_bad, sec_bad)


# ---------- fuzzing ----------

@dataclass
class FuzzConfig:
    seed: int = 42
    trials: int = 200
    max_vertices: int = 4
    max_arrows: int = 6
    max_relations: int = 12
    relation_lengths: tuple = (2, 3)
    monomial_only: bool = True
    cap: int | None = None
    max_dim: int = 20
    max_syzygy_dim: int = 150
    e_sets: str = "all"          # "all" proper nonempty subsets or "primitive"
    n_random: int = 3

    def __post_init__(self):
        if min(self.trials, self.max_vertices, self.max_arrows, self.max_dim) <= 0:
            raise ValueError("fuzz parameters must be positive")


def random_algebra(rng: random.Random, cfg: FuzzConfig):
    """Random quiver with monomial relations, finite-dimensional with dim <= cfg.max_dim."""
    from .algebra import from_presentation
    from .presentation import Quiver, RelationIdeal, groebner, make_path
    n = rng.randint(1, cfg.max_vertices)
    verts = [str(i + 1) for i in range(n)]
    n_arrows = rng.randint(max(0, n - 1), cfg.max_arrows)
    arrows = []
    for k in range(n_arrows):
        s, t = rng.randrange(n), rng.randrange(n)
        if rng.random() < 0.6 and n > 1:
            s, t = sorted(rng.sample(range(n), 2))
        arrows.append((f"a{k + 1}", verts[s], verts[t]))
    q = Quiver.build(verts, arrows)
    words: list[tuple] = []
    lo, hi = cfg.relation_lengths
    for _ in range(400):
        ideal = RelationIdeal.monomial(q, words)
        g = groebner(q, ideal, length_cap=cfg.max_dim + 1, max_basis=4 * cfg.max_dim)
        if g.finite and len(g.basis) <= cfg.max_dim:
            return q, ideal, from_presentation(g)
        cands = [p.arrows for p in g.basis if lo <= p.length <= hi]
        if not cands or len(words) >= cfg.max_relations:
            cands = [p.arrows for p in g.basis if p.length == 2]
        if not cands:
            break
        words.append(rng.choice(cands))
    # fall back to radical square zero
    words = [p.arrows for p in groebner(q, RelationIdeal.monomial(q, []), 3, max_basis=10 ** 6).basis
             if p.length == 2]
    ideal = RelationIdeal.monomial(q, words)
    return q, ideal, from_presentation(groebner(q, ideal, 3))


def proper_e_sets(n: int, mode: str = "all") -> list[tuple[int, ...]]:
    if mode == "primitive":
        return [(i,) for i in range(n)] if n > 1 else []
    out = []
    for k in range(1, n):
        out.extend(itertools.combinations(range(n), k))
    return out


@dataclass
class TrialResult:
    trial: int
    n: int
    dim: int
    e_sets: int
    counts: dict
    failures: list
    s11_hypotheses_met: int
    s12_primitive_determined: int
    bundle: str | None = None


def run_trial(cfg: FuzzConfig, trial: int) -> TrialResult:
    from .dsl import emit, from_quiver
    rng = random.Random(cfg.seed * 1000003 + trial)
    q, ideal, A = random_algebra(rng, cfg)
    counts = {sid: {"holds": 0, "fails": 0, "vacuous": 0, "undetermined": 0} for sid in STATEMENT_IDS}
    failures = []
    s11_met = s12_det = 0
    esets = proper_e_sets(A.n, cfg.e_sets)
    for es in esets:
        report = check_all(A, es, cfg.cap, seed=trial, n_random=cfg.n_random, max_dim=cfg.max_syzygy_dim)
        for r in report.results:
            counts[r.statement_id][r.verdict] += 1
            if r.verdict == "fails":
                failures.append({"e_set": report.e_set, **r.to_json()})
            if r.statement_id == "S11" and all(v is True for v in r.hypotheses.values()):
                s11_met += 1
            if r.statement_id == "S12" and r.verdict in ("holds", "fails"):
                s12_det += 1
    bundle = None
    if failures:
        af = from_quiver(q, ideal, A.field, e_set=list(failures[0]["e_set"]), cap=cfg.cap)
        bundle = f"# fuzz seed {cfg.seed} trial {trial}\n" + emit(af)
    return TrialResult(trial, A.n, A.dim, len(esets), counts, failures, s11_met, s12_det, bundle)


@dataclass
class FuzzSummary:
    config: dict
    trials: list
    counts: dict
    failures: int
    s11_hypotheses_met: int
    s12_primitive_determined: int
    skipped: int

    def to_json(self) -> dict:
        return {"config": self.config, "counts": self.counts, "failures": self.failures,
                "s11_hypotheses_met": self.s11_hypotheses_met,
                "s12_primitive_determined": self.s12_primitive_determined,
                "skipped_trials": self.skipped,
                "trials": [asdict(t) for t in self.trials]}


def _run_trial_star(args):
    return run_trial(*args)


def fuzz(cfg: FuzzConfig, workers: int = 1) -> FuzzSummary:
    args = [(cfg, t) for t in range(cfg.trials)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_trial_star, args, chunksize=4))
    else:
        results = [run_trial(*a) for a in args]
    results.sort(key=lambda r: r.trial)
    counts = {sid: {"holds": 0, "fails": 0, "vacuous": 0, "undetermined": 0} for sid in STATEMENT_IDS}
    for r in results:
        for sid, cs in r.counts.items():
            for k, v in cs.items():
                counts[sid][k] += v
    cfg_json = asdict(cfg)
    cfg_json["relation_lengths"] = list(cfg.relation_lengths)
    return FuzzSummary(cfg_json, results, counts, sum(len(r.failures) for r in results),
                       sum(r.s11_hypotheses_met for r in results),
                       sum(r.s12_primitive_determined for r in results),
                       sum(1 for r in results if r.e_sets == 0))
