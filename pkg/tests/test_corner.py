import pytest
from hypothesis import given, settings, strategies as st

from quiverhom import homology as H
from quiverhom.corner import (EmptyKeptSet, F, F_map, F_of_eA, corner, corner_report, gabriel_quiver,
                              is_nilpotent_radical)
from quiverhom.homology import Dim
from quiverhom.rep import (ProjectiveModule, hom_dim, hom_space, identity_map, injective, projective,
                           simple)
from quiverhom.verify import proper_e_sets

from conftest import seeded_algebras


def test_intro_corner(intro):
    G = corner(intro, [0, 2])
    assert G.dim == 3
    assert G.labels() == ["e2", "e4", "gamma*beta"]
    assert [(a.label, a.source, a.target) for a in gabriel_quiver(G)] == [("gamma*beta", "2", "4")]
    assert H.global_dim(G) == Dim.exact(1)
    assert H.proj_dim(F_of_eA(intro, [0, 2])) == Dim.exact(1)
    assert is_nilpotent_radical(G)


def test_corner_report_shape(intro):
    r = corner_report(intro, [0, 2])
    assert r["removed"] == ["1", "3"] and r["kept"] == ["2", "4"]
    assert r["gldim"] == {"kind": "exact", "value": 1}
    assert r["pd_F_eA"] == {"kind": "exact", "value": 1}


def test_corner_is_cached_and_order_free(intro):
    assert corner(intro, [2, 0]) is corner(intro, [0, 2, 0])


def test_bad_e_sets(intro):
    with pytest.raises(EmptyKeptSet):
        corner(intro, [])
    with pytest.raises(EmptyKeptSet):
        corner(intro, [0, 1, 2, 3])
    with pytest.raises(ValueError):
        corner(intro, [7])


def test_F_kills_removed_simples(intro):
    G = corner(intro, [0, 2])
    assert F(simple(intro, 0), G).is_zero()
    assert F(simple(intro, 1), G).dims == (1, 0)


def _cases(count, seed):
    for q, ideal, A in seeded_algebras(count, seed=seed):
        for e in proper_e_sets(A.n, "all"):
            yield A, e


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_corner_multiplication_is_restriction(seed):
    for A, e in _cases(1, seed):
        G = corner(A, e)
        kept = set(G.kept)
        # dimension oracle: count parent basis elements between kept vertices
        assert G.dim == sum(1 for b in A.basis if b.left in kept and b.right in kept)
        for i, p in enumerate(G.parent_index):
            for j, r in enumerate(G.parent_index):
                prod = dict(A.mult.get((p, r), ()))
                got = {G.parent_index[k]: c for k, c in G.mult.get((i, j), ())}
                assert got == prod
        assert G.check_associativity(trials=20, seed=seed)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_F_of_projective_is_projective(seed):
    for A, e in _cases(1, seed):
        G = corner(A, e)
        for k, v in enumerate(G.kept):
            FP = F(projective(A, v), G)
            assert FP.dims == projective(G, k).dims
            assert H.proj_dim(FP) == Dim.exact(0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_F_is_a_functor(seed):
    for A, e in _cases(1, seed):
        G = corner(A, e)
        for v in range(A.n):
            M = injective(A, v)
            assert F_map(identity_map(M), G).is_iso()
            for h in hom_space(M, M)[:3]:
                Fh = F_map(h, G)
                assert Fh.is_homomorphism()
                assert F_map(h.compose(h), G).flat() == Fh.compose(Fh).flat()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_hom_from_corner_projective_is_vertex_space(seed):
    # Hom_G(e_k G, F M) = (F M)_k = M_v
    for A, e in _cases(1, seed):
        G = corner(A, e)
        for k, v in enumerate(G.kept):
            for w in range(A.n):
                M = injective(A, w)
                assert hom_dim(projective(G, k), F(M, G)) == M.dims[v]


def test_F_of_eA_is_sum_over_removed(intro):
    FeA = F_of_eA(intro, [0, 2])
    P = ProjectiveModule(intro, [0, 2])
    assert FeA.dims == tuple(P.dims[v] for v in (1, 3))
