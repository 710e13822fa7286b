"""The corner algebra (1-e)A(1-e) and the restriction functor F: M -> M(1-e)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import BasicAlgebra, BasisElement
from .exactla import EchelonSpan, Matrix, complement_basis
from .rep import AlgebraMismatch, Module, ModuleMap, ProjectiveModule


class EmptyKeptSet(ValueError):
    pass


def normalize_e_set(A: BasicAlgebra, e_set: Sequence[int]) -> tuple[int, ...]:
    es = tuple(sorted(set(int(j) for j in e_set)))
    if not es:
        raise EmptyKeptSet("the removed set must be nonempty")
    if any(j < 0 or j >= A.n for j in es):
        raise ValueError("vertex index out of range")
    if len(es) == A.n:
        raise EmptyKeptSet("removing every vertex leaves nothing")
    return es


def corner(A: BasicAlgebra, e_set: Sequence[int]) -> BasicAlgebra:
    """Gamma = (1-e)A(1-e) on the parent basis elements with both idempotents kept."""
    es = normalize_e_set(A, e_set)
    cache = A.__dict__.setdefault("_corners", {})
    if es in cache:
        return cache[es]
    f = A.field
    kept = [i for i in range(A.n) if i not in es]
    new_vertex = {v: k for k, v in enumerate(kept)}
    parent = list(kept) + [b for b in range(A.n, A.dim)
                           if A.basis[b].left in new_vertex and A.basis[b].right in new_vertex]
    new_index = {p: k for k, p in enumerate(parent)}
    basis = [BasisElement(A.basis[p].label, new_vertex[A.basis[p].left], new_vertex[A.basis[p].right],
                          A.basis[p].degree) for p in parent]
    mult = {}
    for i, p in enumerate(parent):
        for j, r in enumerate(parent):
            prod = A.mult.get((p, r))
            if prod:
                mult[(i, j)] = tuple((new_index[k], c) for k, c in prod)
    # generators: a complement of rad^2 inside rad, chosen among basis elements
    nrad = len(parent) - len(kept)
    rad2 = EchelonSpan(f)
    for i in range(len(kept), len(parent)):
        for j in range(len(kept), len(parent)):
            z = {k - len(kept): c for k, c in mult.get((i, j), ())}
            if z:
                rad2.add(z)
    rad2_cols = Matrix.from_sparse_columns(f, [rad2.piv[k] for k in sorted(rad2.piv)], nrad)
    gens = [len(kept) + i for i in complement_basis(rad2_cols, nrad)]
    G = BasicAlgebra(f, [A.vertex_labels[v] for v in kept], basis, mult, gens, kind="corner",
                     parent_index=parent)
    G.parent = A
    G.e_set = es
    G.kept = tuple(kept)
    cache[es] = G
    return G


def is_nilpotent_radical(G: BasicAlgebra) -> bool:
    try:
        G.radical_nilpotency_index()
    except RuntimeError:
        return False
    return True


@dataclass(frozen=True)
class GabrielArrow:
    label: str
    source: str
    target: str


def gabriel_quiver(G: BasicAlgebra) -> list[GabrielArrow]:
    """Arrows of the quiver of G: one per generator (a basis of rad/rad^2); g = e_t g e_s is s -> t."""
    return [GabrielArrow(G.basis[g].label, G.vertex_labels[G.basis[g].right], G.vertex_labels[G.basis[g].left])
            for g in G.generators]


def F(M: Module, G: BasicAlgebra, name: str = "") -> Module:
    """Restriction M(1-e) as a module over the corner G of M's algebra."""
    if getattr(G, "parent", None) is not M.algebra:
        raise AlgebraMismatch("G is not a corner of the module's algebra")
    dims = [M.dims[v] for v in G.kept]
    actions = {g: M.act(G.parent_index[g]) for g in G.generators}
    nm = name or (f"F({M.name})" if M.name else "")
    return Module(G, dims, actions, name=nm)


def F_map(h: ModuleMap, G: BasicAlgebra) -> ModuleMap:
    return ModuleMap(F(h.source, G), F(h.target, G), [h.mats[v] for v in G.kept])


def F_of_eA(A: BasicAlgebra, e_set: Sequence[int]) -> Module:
    """F applied to the direct sum of e_jA over the removed vertices."""
    G = corner(A, e_set)
    key = ("FeA",)
    cache = G.__dict__.setdefault("_fcache", {})
    if key not in cache:
        cache[key] = F(ProjectiveModule(A, list(G.e_set)), G, name="F(eA)")
    return cache[key]


def corner_report(A: BasicAlgebra, e_set: Sequence[int], cap: int | None = None) -> dict:
    from .homology import global_dim, proj_dim
    G = corner(A, e_set)
    return {
        "removed": [A.vertex_labels[j] for j in G.e_set],
        "kept": list(G.vertex_labels),
        "dim": G.dim,
        "basis": G.labels(),
        "quiver": [{"label": a.label, "source": a.source, "target": a.target} for a in gabriel_quiver(G)],
        "gldim": global_dim(G, cap).to_json(),
        "pd_F_eA": proj_dim(F_of_eA(A, e_set), cap).to_json(),
    }
