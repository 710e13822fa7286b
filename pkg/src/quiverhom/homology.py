"""Minimal projective resolutions, Ext tables and homological dimensions.

Dimensions are reported as :class:`Dim` verdicts: an exact value, a lower
bound (the resolution hit its cap), or minus infinity for the zero module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .algebra import BasicAlgebra
from .exactla import Matrix, complement_basis, solve, sparse_rank
from .rep import (Module, ModuleMap, ProjectiveModule, dual, hom_space, kernel, map_from_projective,
                  radical_bases, simple, direct_sum)

DEFAULT_MAX_SYZYGY_DIM = 600


class ZeroModule(ValueError):
    pass


class InexactSequence(ValueError):
    pass


@dataclass(frozen=True)
class Dim:
    """A homological dimension verdict: ``exact``, ``at_least`` or ``neg_inf``."""
    kind: str
    value: int | None = None

    @classmethod
    def exact(cls, n: int) -> "Dim":
        return cls("exact", int(n))

    @classmethod
    def at_least(cls, n: int) -> "Dim":
        return cls("at_least", int(n))

    @classmethod
    def neg_inf(cls) -> "Dim":
        return cls("neg_inf", None)

    @property
    def is_exact(self) -> bool:
        return self.kind != "at_least"

    @property
    def finite(self) -> bool | None:
        """True when known finite (exact or -inf), None when only a lower bound is known."""
        return True if self.kind != "at_least" else None

    @property
    def lo(self) -> int:
        # the zero module enters bound arithmetic as -1 (see README, bound arithmetic)
        return -1 if self.kind == "neg_inf" else self.value

    @property
    def hi(self) -> float:
        return math.inf if self.kind == "at_least" else self.lo

    def __str__(self) -> str:
        if self.kind == "neg_inf":
            return "-inf"
        if self.kind == "at_least":
            return f">={self.value}"
        return str(self.value)

    def to_json(self):
        return {"kind": self.kind, "value": self.value}


def dim_max(dims: Sequence[Dim]) -> Dim:
    """Supremum of verdicts; -inf is the identity."""
    real = [d for d in dims if d.kind != "neg_inf"]
    if not real:
        return Dim.neg_inf()
    v = max(d.value for d in real)
    if any(d.kind == "at_least" for d in real):
        return Dim.at_least(v)
    return Dim.exact(v)


# ---------- resolutions ----------

def _cover_tops(M: Module) -> tuple[list[int], list[list]]:
    """Summand vertices and generator images of the projective cover."""
    A = M.algebra
    f = A.field
    rad = radical_bases(M)
    summands, images = [], []
    for c in range(A.n):
        for i in complement_basis(rad[c], M.dims[c]):
            summands.append(c)
            v = [f.zero] * M.dims[c]
            v[i] = f.one
            images.append(v)
    return summands, images


def projective_cover(M: Module) -> tuple[ProjectiveModule, ModuleMap]:
    """Projective cover with top basis chosen greedily among unit vectors, component order."""
    if M.is_zero():
        raise ZeroModule("the zero module has no projective cover")
    summands, images = _cover_tops(M)
    P = ProjectiveModule(M.algebra, summands)
    return P, map_from_projective(P, M, images)


@dataclass
class Resolution:
    """P_i with differentials d_i: P_i -> P_{i-1}; ``augmentation`` is P_0 -> M.

    ``syzygies[i]`` is the image of d_i as a submodule of P_{i-1}
    (``syzygies[0]`` is M itself); ``capped`` means the last syzygy is nonzero.
    ``tail`` includes the last syzygy into the last term.
    """
    module: Module
    projectives: list = dc_field(default_factory=list)
    differentials: list = dc_field(default_factory=list)
    augmentation: ModuleMap | None = None
    syzygies: list = dc_field(default_factory=list)
    capped: bool = False
    cap: int = 0
    minimal: bool = True
    tail: ModuleMap | None = dc_field(default=None, repr=False)

    @property
    def terms(self) -> list[tuple[int, ...]]:
        return [P.multiplicities() for P in self.projectives]

    @property
    def length(self) -> int:
        return len(self.projectives) - 1

    def differential(self, i: int) -> ModuleMap:
        """d_i for i >= 1; d_0 is the augmentation."""
        return self.augmentation if i == 0 else self.differentials[i - 1]

    def pd(self) -> Dim:
        if self.capped:
            return Dim.at_least(len(self.projectives))
        if not self.projectives:
            return Dim.neg_inf()
        return Dim.exact(len(self.projectives) - 1)

    def syzygy(self, i: int) -> Module:
        """Omega^i(M); zero beyond the end of a finished resolution."""
        if i < len(self.syzygies):
            return self.syzygies[i]
        if self.capped:
            raise IndexError("syzygy beyond the resolution cap")
        from .rep import zero_module
        return zero_module(self.module.algebra)

    def to_json(self) -> dict:
        return {
            "terms": [list(t) for t in self.terms],
            "pd": self.pd().to_json(),
            "capped": self.capped,
            "cap": self.cap,
            "minimal": self.minimal,
            "differentials": [[_matrix_json(m) for m in d.mats] for d in self.differentials],
        }


def _matrix_json(m: Matrix) -> list:
    return [[str(x) if isinstance(x, Fraction) else x for x in row] for row in m.to_rows()]


def default_cap(A: BasicAlgebra) -> int:
    return 2 * A.dim + 2


def _module_key(M: Module) -> tuple:
    return (M.dims,) + tuple(M.actions[g].entries for g in M.algebra.generators)


def _cover_step(K: Module, max_dim: int) -> tuple[ProjectiveModule, ModuleMap, Module, ModuleMap] | None:
    """Projective cover of K and its kernel, memoized on the data of K.

    Returns None, without building the kernel, when the kernel would have
    dimension above ``max_dim`` (it is dim P - dim K since the cover is onto).
    The cover and kernel are deterministic functions of (dims, action matrices),
    so a syzygy that reappears (periodic resolutions, shared syzygies of
    different modules) is not recomputed.
    """
    memo = K.algebra.__dict__.setdefault("_cover_memo", {})
    key = _module_key(K)
    hit = memo.get(key)
    if hit is None:
        memo[key] = hit = [_cover_tops(K), None, None, None]
    summands, images = hit[0]
    A = K.algebra
    if sum(len(A.by_left[j]) for j in summands) - K.dim > max_dim:
        return None
    if hit[1] is None:
        P = ProjectiveModule(A, summands)
        hit[1] = (P, map_from_projective(P, K, images).mats)
    P, pi_mats = hit[1]
    pi = ModuleMap(P, K, pi_mats)
    if hit[2] is None:
        Kn, incl = kernel(pi)
        hit[2], hit[3] = Kn, incl.mats
    return P, pi, hit[2], ModuleMap(hit[2], P, hit[3])


def minimal_resolution(M: Module, cap: int | None = None, max_dim: int = DEFAULT_MAX_SYZYGY_DIM) -> Resolution:
    """Terms P_0..P_cap; capped if the (cap+1)-st syzygy is nonzero or a syzygy would exceed ``max_dim``."""
    if cap is None:
        cap = default_cap(M.algebra)
    key = ("res", cap, max_dim)
    hit = M._cache.get(key)
    if hit is not None:
        return hit
    res = Resolution(M, cap=cap, syzygies=[M])
    syz = M
    incl: ModuleMap | None = None
    for i in range(cap + 1):
        if syz.is_zero():
            break
        step = _cover_step(syz, max_dim) if syz.dim <= max_dim else None
        if step is None:
            res.capped = True
            break
        P, pi, nxt, nxt_incl = step
        d = pi if incl is None else incl.compose(pi)
        res.projectives.append(P)
        if incl is None:
            res.augmentation = d
        else:
            res.differentials.append(d)
        syz, incl = nxt, nxt_incl
        res.syzygies.append(syz)
    else:
        res.capped = not syz.is_zero()
    res.tail = incl
    M._cache[key] = res
    return res


def proj_dim(M: Module, cap: int | None = None) -> Dim:
    return minimal_resolution(M, cap).pd()


def ext_table(M: Module, cap: int | None = None) -> list[tuple[int, ...]]:
    """Row i holds dim Ext^i(M, S_j); equal to the multiplicities of the minimal resolution."""
    return minimal_resolution(M, cap).terms


def ext_oracle(res: Resolution, N: Module, i: int) -> int:
    """dim Ext^i(M, N) as cohomology of Hom(P_*, N), independent of minimality."""
    if i < 0:
        raise ValueError("negative degree")
    f = N.field
    top = len(res.projectives)
    if i >= top:
        if res.capped:
            raise IndexError("degree beyond the computed resolution")
        return 0
    h_i = hom_space(res.projectives[i], N)

    def rank_pullback(deg: int) -> int:
        # rank of Hom(P_{deg-1}, N) -> Hom(P_deg, N), phi -> phi o d_deg
        if deg == 0 or (deg >= top and not res.capped):
            return 0
        if deg < top:
            d = res.differential(deg)
        else:
            # d_top maps onto the last syzygy, so restricting to it has the same kernel
            d = res.tail
        basis = hom_space(res.projectives[deg - 1], N)
        return sparse_rank([phi.compose(d).flat() for phi in basis], f)

    return len(h_i) - rank_pullback(i) - rank_pullback(i + 1)


def ext_dim(M: Module, N: Module, i: int, cap: int | None = None) -> int:
    return ext_oracle(minimal_resolution(M, cap), N, i)


def d_e(M: Module, e_set: Sequence[int], cap: int | None = None) -> Dim:
    """Largest i with Ext^i(M, S_e) != 0, or exact -1 when all vanish."""
    res = minimal_resolution(M, cap)
    found = -1
    for i, t in enumerate(res.terms):
        if any(t[j] for j in e_set):
            found = i
    return Dim.at_least(found) if res.capped else Dim.exact(found)


def semisimple_e(A: BasicAlgebra, e_set: Sequence[int]) -> Module:
    """S_e as a direct sum of simples, vertex order."""
    m = direct_sum([simple(A, j) for j in sorted(e_set)])
    m.name = "S_e"
    return m


def inj_dim(M: Module, cap: int | None = None) -> Dim:
    """id_A M computed as pd of D(M) over the opposite algebra."""
    if cap is None:
        cap = default_cap(M.algebra)
    key = ("id", cap)
    if key not in M._cache:
        M._cache[key] = proj_dim(dual(M), cap)
    return M._cache[key]


def simple_resolution(A: BasicAlgebra, i: int, cap: int | None = None) -> Resolution:
    """Cached minimal resolution of S_i."""
    cache = A.__dict__.setdefault("_simples", {})
    if i not in cache:
        cache[i] = simple(A, i)
    return minimal_resolution(cache[i], cap)


def global_dim(A: BasicAlgebra, cap: int | None = None) -> Dim:
    """max_i pd S_i; ``exact 0`` for semisimple algebras."""
    return dim_max([simple_resolution(A, i, cap).pd() for i in range(A.n)]) if A.n else Dim.neg_inf()


# ---------- comparison maps ----------

def _lift_through(target_map: ModuleMap, P: ProjectiveModule, values: list) -> ModuleMap:
    """Map g: P -> source(target_map) with target_map o g sending generator k to values[k]."""
    A = P.algebra
    X = target_map.source
    images = []
    for k, j in enumerate(P.summands):
        x = solve(target_map.mats[j], values[k])
        if x is None:
            raise InexactSequence("value not in the image of the target map")
        images.append(list(x))
    return map_from_projective(P, X, images)


def _generator_images(P: ProjectiveModule, h: ModuleMap) -> list:
    out = []
    for k, j in enumerate(P.summands):
        _, pos = P.generator_position(k)
        out.append(list(h.mats[j].col(pos)))
    return out


def lift_map(h: ModuleMap, resM: Resolution, resN: Resolution, upto: int | None = None) -> list[ModuleMap]:
    """Chain map f_i: P_i -> Q_i over h: M -> N, degree by degree through deterministic solves."""
    from .rep import zero_map, zero_module
    n_deg = len(resM.projectives) if upto is None else min(upto + 1, len(resM.projectives))
    lifts: list[ModuleMap] = []
    for i in range(n_deg):
        P = resM.projectives[i]
        if i >= len(resN.projectives):
            lifts.append(zero_map(P, zero_module(P.algebra)))
            continue
        Q = resN.projectives[i]
        if i == 0:
            composite = h.compose(resM.augmentation)
            lifts.append(_lift_through(resN.augmentation, P, _generator_images(P, composite)))
        else:
            prev = lifts[-1]
            composite = prev.compose(resM.differential(i))
            lifts.append(_lift_through(resN.differential(i), P, _generator_images(P, composite)))
    return lifts


def top_matrix(h: ModuleMap) -> Matrix:
    """Induced map on tops for a map between projective modules (generator coordinates)."""
    P, Q = h.source, h.target
    f = P.field
    rows = []
    src = [P.generator_position(k) for k in range(len(P.summands))]
    tgt = [Q.generator_position(k) for k in range(len(Q.summands))]
    for k2, (c2, p2) in enumerate(tgt):
        row = []
        for k, (c, p) in enumerate(src):
            row.append(h.mats[c][p2, p] if c == c2 else f.zero)
        rows.append(row)
    return Matrix.from_rows(f, rows, len(src))


def is_radical_map(h: ModuleMap) -> bool:
    """Image inside rad of the target (tested on a projective target by its top coordinates)."""
    return top_matrix(h).is_zero()


def is_split_mono_between_projectives(h: ModuleMap) -> bool:
    """A map of projectives is a section exactly when its top map is injective."""
    t = top_matrix(h)
    return t.rank() == t.cols


def is_nilpotent(m: Matrix) -> bool:
    return m.rows == 0 or m.power(m.rows).is_zero()


# ---------- splicing ----------

def _block(f, rows: Sequence[int], cols: Sequence[int], blocks: dict) -> Matrix:
    R, C = sum(rows), sum(cols)
    ent = [f.zero] * (R * C)
    roff = [sum(rows[:i]) for i in range(len(rows))]
    coff = [sum(cols[:j]) for j in range(len(cols))]
    for (bi, bj), m in blocks.items():
        for r in range(m.rows):
            for c in range(m.cols):
                ent[(roff[bi] + r) * C + coff[bj] + c] = m[r, c]
    return Matrix(f, R, C, tuple(ent))


def splice_resolutions(inc: ModuleMap, proj: ModuleMap, resL: Resolution, resM: Resolution) -> Resolution:
    """Resolution of N from 0 -> L -> M -> N -> 0: terms P_{i-1} (+) Q_i (mapping cone), not minimal."""
    L, M, N = inc.source, inc.target, proj.target
    A = M.algebra
    f = A.field
    if not proj.compose(inc).is_zero() or not inc.is_injective() or not proj.is_surjective():
        raise InexactSequence("not a short exact sequence")
    if L.dim + N.dim != M.dim:
        raise InexactSequence("dimensions do not add up")
    if resL.capped or resM.capped:
        raise ValueError("splicing needs finished resolutions")
    lifts = lift_map(inc, resL, resM)
    nP, nQ = len(resL.projectives), len(resM.projectives)
    length = max(nP + 1, nQ)
    terms: list[ProjectiveModule] = []
    for i in range(length):
        parts = ([] if i == 0 or i - 1 >= nP else list(resL.projectives[i - 1].summands))
        parts += [] if i >= nQ else list(resM.projectives[i].summands)
        terms.append(ProjectiveModule(A, parts))
    out = Resolution(N, cap=length, syzygies=[N], minimal=False)
    out.projectives = terms
    out.augmentation = ModuleMap(terms[0], N, [(proj.compose(resM.augmentation)).mats[c] for c in range(A.n)])
    for i in range(1, length):
        mats = []
        for c in range(A.n):
            p_src = resL.projectives[i - 1].dims[c] if i - 1 < nP else 0
            q_src = resM.projectives[i].dims[c] if i < nQ else 0
            p_tgt = resL.projectives[i - 2].dims[c] if 1 <= i - 1 <= nP else 0
            q_tgt = resM.projectives[i - 1].dims[c] if i - 1 < nQ else 0
            blocks = {}
            if p_src and p_tgt and i >= 2:
                blocks[(0, 0)] = resL.differential(i - 1).mats[c].scale(-1)
            if p_src and q_tgt:
                blocks[(1, 0)] = lifts[i - 1].mats[c]
            if q_src and q_tgt and i < nQ:
                blocks[(1, 1)] = resM.differential(i).mats[c]
            mats.append(_block(f, [p_tgt, q_tgt], [p_src, q_src], blocks))
        out.differentials.append(ModuleMap(terms[i], terms[i - 1], mats))
    if not is_exact_resolution(out):
        raise InexactSequence("spliced complex is not exact")
    return out


def is_exact_resolution(res: Resolution) -> bool:
    """Check d_{i} d_{i+1} = 0 and rank bookkeeping along the augmented complex."""
    maps = [res.augmentation] + res.differentials
    if res.augmentation is None:
        return res.module.is_zero()
    if not res.augmentation.is_surjective():
        return False
    for a, b in zip(maps, maps[1:]):
        if not a.compose(b).is_zero():
            return False
    ranks = [h.rank() for h in maps] + [0]
    for i, P in enumerate(res.projectives):
        if ranks[i] + ranks[i + 1] != P.dim:
            if res.capped and i == len(res.projectives) - 1:
                continue
            return False
    return True


def pd_upper_from(res: Resolution) -> int:
    return len(res.projectives) - 1
