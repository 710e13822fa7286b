from collections import Counter
from itertools import combinations
from math import comb
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from quiverhom.algebra import quiver_algebra
from quiverhom.dsl import emit, from_quiver, parse
from quiverhom.presentation import Quiver, RelationIdeal, make_path
from quiverhom.skewgroup import (DIHEDRAL_TEXT, CyclicActionSpec, DegreeOutOfRange, TranslationDataError,
                                 TranslationQuiverSpec, arrow_label, cyclic_corner_bound, cyclic_ext_dim,
                                 cyclic_pd, cyclic_self_orthogonal, cyclic_translation, koszul_term, mckay_cyclic,
                                 translation_check)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

specs = st.integers(2, 7).flatmap(
    lambda m: st.lists(st.integers(0, m - 1), min_size=1, max_size=3).map(lambda a: CyclicActionSpec(m, tuple(a))))


def quadratic_dual(spec):
    """Exterior relations on the McKay quiver: x_i x_i = 0 and x_i x_k + x_k x_i = 0."""
    m, a = spec.m, spec.weights
    arrows = [(arrow_label(i + 1, j), str(j), str((j + a[i]) % m)) for i in range(spec.n) for j in range(m)]
    q = Quiver.build([str(j) for j in range(m)], arrows)
    idx = {lab: k for k, (lab, _, _) in enumerate(arrows)}
    rels = []
    for i in range(spec.n):
        for k in range(i, spec.n):
            for j in range(m):
                p1 = make_path(q, [idx[arrow_label(i + 1, (j + a[k]) % m)], idx[arrow_label(k + 1, j)]])
                p2 = make_path(q, [idx[arrow_label(k + 1, (j + a[i]) % m)], idx[arrow_label(i + 1, j)]])
                rels.append({p1: 1} if i == k else {p1: 1, p2: 1})
    return quiver_algebra(q, RelationIdeal.from_dicts(q, rels))


def test_mckay_counts():
    q, ideal = mckay_cyclic(CyclicActionSpec(3, (1, 1)))
    assert (q.n, len(q.arrows), len(ideal.as_dicts())) == (3, 6, 3)
    q, ideal = mckay_cyclic(CyclicActionSpec(2, (1, 1)))
    assert (q.n, len(q.arrows), len(ideal.as_dicts())) == (2, 4, 2)
    q, ideal = mckay_cyclic(CyclicActionSpec(5, (2,)))
    assert len(ideal.as_dicts()) == 0
    assert [(a.source, a.target) for a in q.arrows] == [(j, (j + 2) % 5) for j in range(5)]


@settings(max_examples=60, deadline=None)
@given(specs)
def test_mckay_counts_general(spec):
    q, ideal = mckay_cyclic(spec)
    assert q.n == spec.m
    assert len(q.arrows) == spec.n * spec.m
    assert len(ideal.as_dicts()) == comb(spec.n, 2) * spec.m


def test_koszul_examples():
    s = CyclicActionSpec(3, (1, 1))
    assert [koszul_term(s, 0, t) for t in range(3)] == [[0], [1, 1], [2]]
    assert all(cyclic_pd(s, k) == 2 for k in range(3))
    assert cyclic_ext_dim(s, 0, 1, 1) == 2 and cyclic_ext_dim(s, 0, 0, 1) == 0
    with pytest.raises(DegreeOutOfRange):
        koszul_term(s, 0, 3)
    assert cyclic_ext_dim(s, 0, 0, 5) == 0


@settings(max_examples=40, deadline=None)
@given(specs)
def test_koszul_term_matches_quadratic_dual(spec):
    # Ext^t(S_k, S_l) is the degree-t part of e_l E e_k for the quadratic dual E
    D = quadratic_dual(spec)
    assert D.dim == spec.m * 2 ** spec.n
    for k in range(spec.m):
        for t in range(spec.n + 1):
            got = sorted(b.left for b in D.basis if b.degree == t and b.right == k)
            assert got == koszul_term(spec, k, t)


@settings(max_examples=80, deadline=None)
@given(specs)
def test_binomial_completeness(spec):
    for k in range(spec.m):
        sizes = [len(koszul_term(spec, k, t)) for t in range(spec.n + 1)]
        assert sizes == [comb(spec.n, t) for t in range(spec.n + 1)]
        assert sum(sizes) == 2 ** spec.n


@settings(max_examples=80, deadline=None)
@given(specs)
def test_self_orthogonality_two_definitions(spec):
    so = cyclic_self_orthogonal(spec)
    for k in range(spec.m):
        by_ext = all(k not in koszul_term(spec, k, t) for t in range(1, spec.n + 1))
        assert by_ext == so.holds
        assert cyclic_self_orthogonal(spec, k) == so
    if not so.holds:
        assert sum(spec.weights[i - 1] for i in so.witness) % spec.m == 0
    else:
        # brute force over every nonempty subset
        assert all(sum(I) % spec.m for r in range(1, spec.n + 1) for I in combinations(spec.weights, r))


@settings(max_examples=80, deadline=None)
@given(specs)
def test_translation_invariance(spec):
    base = [Counter((v - 0) % spec.m for v in koszul_term(spec, 0, t)) for t in range(spec.n + 1)]
    for k in range(spec.m):
        shifted = [Counter((v - k) % spec.m for v in koszul_term(spec, k, t)) for t in range(spec.n + 1)]
        assert shifted == base


def test_corner_bound():
    assert cyclic_corner_bound(CyclicActionSpec(3, (1, 1)), 0).to_json() == {
        "verdict": "bound", "bound": 3, "witness": None}
    for e in range(3):
        assert cyclic_corner_bound(CyclicActionSpec(3, (1, 1)), e).bound == 3
    fail = cyclic_corner_bound(CyclicActionSpec(2, (1, 1)), 0)
    assert fail.verdict == "hypotheses-fail" and fail.witness == (1, 2)
    assert cyclic_self_orthogonal(CyclicActionSpec(4, (0,))).witness == (1,)
    # Veronese weights a_i = 1 with n < m
    assert cyclic_corner_bound(CyclicActionSpec(5, (1, 1, 1)), 2).bound == 5
    with pytest.raises(ValueError):
        cyclic_corner_bound(CyclicActionSpec(3, (1, 1)), 3)


def test_spec_validation():
    with pytest.raises(ValueError):
        CyclicActionSpec(1, (0,))
    with pytest.raises(ValueError):
        CyclicActionSpec(3, ())
    assert CyclicActionSpec(3, (4, -1)).weights == (1, 2)


def test_mckay_dsl_round_trip():
    q, ideal = mckay_cyclic(CyclicActionSpec(3, (1, 1)))
    af = from_quiver(q, ideal)
    assert parse(emit(af)) == af


def test_cyclic_translation():
    spec = cyclic_translation(CyclicActionSpec(3, (1, 1)))
    v = translation_check(spec, 0)
    assert v.verdict == "gldim" and v.gldim == 3
    assert v.witness == (("1",), ("2", "2"), ("1", "1"), ("2",))
    bad = translation_check(cyclic_translation(CyclicActionSpec(2, (1, 1))), 0)
    assert bad.verdict == "hypotheses-fail" and bad.reasons == ("tau fixes 0",)
    with pytest.raises(ValueError):
        cyclic_translation(CyclicActionSpec(3, (1, 1, 1)))


def _from_file(text):
    af = parse(text)
    return TranslationQuiverSpec.from_labels(af.quiver(), af.tau, af.distinguished)


def test_dihedral_translation():
    spec = _from_file(DIHEDRAL_TEXT)
    assert spec.distinguished == (0,)
    assert translation_check(spec, 0).gldim == 3
    assert translation_check(spec, 1).gldim == 3
    assert translation_check(spec, 2).reasons == ("loop at 3", "tau fixes 3")
    assert _from_file((FIXTURES / "dihedral.qh").read_text()) == spec


def test_translation_fixtures():
    spec = _from_file((FIXTURES / "cyclic_translation.qh").read_text())
    assert translation_check(spec, 0).verdict == "gldim"
    fixed = _from_file((FIXTURES / "fixed_translation.qh").read_text())
    assert translation_check(fixed, 0).verdict == "hypotheses-fail"


def test_translation_validation():
    q = Quiver.build(["1", "2"], [("a", "1", "2")])
    with pytest.raises(TranslationDataError):
        translation_check(TranslationQuiverSpec(q, (1, 0)), 0)
    with pytest.raises(TranslationDataError):
        TranslationQuiverSpec(q, (0, 0))
    with pytest.raises(TranslationDataError):
        TranslationQuiverSpec.from_labels(q, {"1": "2"})
