"""McKay quivers of diagonal cyclic actions and translation-quiver data.

The skew group algebras here are infinite-dimensional, so everything is
combinatorial: the minimal resolutions of simples are Koszul complexes whose
terms are read off from subset sums of the weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .presentation import Quiver, RelationIdeal, make_path


class DegreeOutOfRange(ValueError):
    pass


class TranslationDataError(ValueError):
    pass


@dataclass(frozen=True)
class CyclicActionSpec:
    m: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("group order must be at least 2")
        if not self.weights:
            raise ValueError("at least one weight is required")
        object.__setattr__(self, "weights", tuple(int(a) % self.m for a in self.weights))

    @property
    def n(self) -> int:
        return len(self.weights)


def arrow_label(i: int, j: int) -> str:
    """Label of x_i starting at vertex j (i is 1-based)."""
    return f"x{i}_{j}"


def mckay_cyclic(spec: CyclicActionSpec) -> tuple[Quiver, RelationIdeal]:
    """Vertices Z/m, arrows x_i^j: j -> j + a_i, commutativity relations for i < k."""
    m, a = spec.m, spec.weights
    verts = [str(j) for j in range(m)]
    arrows = [(arrow_label(i + 1, j), str(j), str((j + a[i]) % m))
              for i in range(spec.n) for j in range(m)]
    q = Quiver.build(verts, arrows)
    idx = {lab: k for k, (lab, _, _) in enumerate(arrows)}
    rels = []
    for i, k in combinations(range(spec.n), 2):
        for j in range(m):
            # x_i^{j+a_k} x_k^j - x_k^{j+a_i} x_i^j
            p1 = make_path(q, [idx[arrow_label(i + 1, (j + a[k]) % m)], idx[arrow_label(k + 1, j)]])
            p2 = make_path(q, [idx[arrow_label(k + 1, (j + a[i]) % m)], idx[arrow_label(i + 1, j)]])
            rels.append({p1: 1, p2: -1})
    return q, RelationIdeal.from_dicts(q, rels)


def koszul_term(spec: CyclicActionSpec, k: int, t: int) -> list[int]:
    """Vertices of the projectives in degree t of the resolution of S_k, sorted."""
    if not 0 <= t <= spec.n:
        raise DegreeOutOfRange(f"degree {t} outside 0..{spec.n}")
    return sorted((k + sum(I)) % spec.m for I in combinations(spec.weights, t))


def cyclic_ext_dim(spec: CyclicActionSpec, k: int, l: int, t: int) -> int:
    if not 0 <= t <= spec.n:
        return 0
    return koszul_term(spec, k, t).count(l % spec.m)


def cyclic_pd(spec: CyclicActionSpec, k: int) -> int:
    """pd S_k; the top Koszul term is never empty, so this is n."""
    t = spec.n
    while t > 0 and not koszul_term(spec, k, t):
        t -= 1
    return t


@dataclass(frozen=True)
class SelfOrthogonality:
    holds: bool
    witness: tuple[int, ...] | None  # 1-based weight indices summing to 0 mod m


def cyclic_self_orthogonal(spec: CyclicActionSpec, k: int = 0) -> SelfOrthogonality:
    """No nonempty subset of weights sums to 0 mod m; witness is the first one by size, then lex."""
    for size in range(1, spec.n + 1):
        for I in combinations(range(spec.n), size):
            if sum(spec.weights[i] for i in I) % spec.m == 0:
                return SelfOrthogonality(False, tuple(i + 1 for i in I))
    return SelfOrthogonality(True, None)


@dataclass(frozen=True)
class CornerBound:
    verdict: str            # "bound" or "hypotheses-fail"
    bound: int | None
    witness: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "bound": self.bound,
                "witness": list(self.witness) if self.witness else None}


def cyclic_corner_bound(spec: CyclicActionSpec, e: int) -> CornerBound:
    if not 0 <= e < spec.m:
        raise ValueError("vertex outside Z/m")
    so = cyclic_self_orthogonal(spec, e)
    if not so.holds:
        return CornerBound("hypotheses-fail", None, so.witness)
    return CornerBound("bound", 2 * spec.n - 1, None)


# ---------- translation quivers ----------

@dataclass(frozen=True)
class TranslationQuiverSpec:
    quiver: Quiver
    tau: tuple[int, ...]                 # tau[i] as a vertex index
    distinguished: tuple[int, ...] = ()

    def __post_init__(self):
        n = self.quiver.n
        if len(self.tau) != n or sorted(self.tau) != list(range(n)):
            raise TranslationDataError("the translation must be a permutation of the vertices")

    @classmethod
    def from_labels(cls, quiver: Quiver, tau: dict, distinguished: Sequence[str] = ()) -> "TranslationQuiverSpec":
        idx = {v: i for i, v in enumerate(quiver.vertices)}
        missing = [v for v in quiver.vertices if v not in tau]
        if missing:
            raise TranslationDataError(f"translation undefined at {', '.join(missing)}")
        try:
            t = tuple(idx[str(tau[v])] for v in quiver.vertices)
            d = tuple(idx[str(v)] for v in distinguished)
        except KeyError as exc:
            raise TranslationDataError(f"unknown vertex {exc.args[0]}") from None
        return cls(quiver, t, d)

    def arrow_count(self, i: int, j: int) -> int:
        return sum(1 for a in self.quiver.arrows if a.source == i and a.target == j)

    def targets(self, i: int) -> list[int]:
        return sorted(a.target for a in self.quiver.arrows if a.source == i)

    def validate(self) -> None:
        """Each S_i needs a resolution P_tau(i) -> sum over arrows i->j of P_j -> P_i."""
        n = self.quiver.n
        for i in range(n):
            for j in range(n):
                if self.arrow_count(i, j) != self.arrow_count(j, self.tau[i]):
                    v = self.quiver.vertices
                    raise TranslationDataError(
                        f"arrows {v[i]}->{v[j]} and {v[j]}->{v[self.tau[i]]} differ in number")


@dataclass(frozen=True)
class TranslationVerdict:
    verdict: str                   # "gldim" or "hypotheses-fail"
    gldim: int | None
    reasons: tuple[str, ...]
    witness: tuple[tuple[str, ...], ...] | None

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "gldim": self.gldim, "reasons": list(self.reasons),
                "witness": [list(t) for t in self.witness] if self.witness is not None else None}


def translation_check(spec: TranslationQuiverSpec, e: int) -> TranslationVerdict:
    spec.validate()
    v = spec.quiver.vertices
    reasons = []
    if spec.arrow_count(e, e):
        reasons.append(f"loop at {v[e]}")
    if spec.tau[e] == e:
        reasons.append(f"tau fixes {v[e]}")
    if reasons:
        return TranslationVerdict("hypotheses-fail", None, tuple(reasons), None)
    m = spec.tau.index(e)
    # resolution of S_m ends in P_e; splice in the resolution of S_e to leave add(F(A))
    terms = ([m], spec.targets(m), spec.targets(e), [spec.tau[e]])
    witness = tuple(tuple(v[x] for x in t) for t in terms)
    return TranslationVerdict("gldim", 3, (), witness)


def cyclic_translation(spec: CyclicActionSpec) -> TranslationQuiverSpec:
    """The McKay quiver of a cyclic action with n = 2 and tau(i) = i + a_1 + a_2."""
    if spec.n != 2:
        raise ValueError("translation data needs exactly two weights")
    q, _ = mckay_cyclic(spec)
    s = sum(spec.weights)
    return TranslationQuiverSpec(q, tuple((i + s) % spec.m for i in range(spec.m)))


DIHEDRAL_TEXT = """\
# McKay quiver of the dihedral group of order 6 acting on a plane
algebra over Q
vertices: 1, 2, 3
arrows: a: 1 -> 3, b: 2 -> 3, c: 3 -> 1, d: 3 -> 2, l: 3 -> 3
tau: 1 -> 2, 2 -> 1, 3 -> 3
distinguished: 1
"""
