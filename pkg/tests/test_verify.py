import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from quiverhom import homology as H
from quiverhom import verify as V
from quiverhom.dsl import INTRO_TEXT, parse
from quiverhom.homology import Dim
from quiverhom.presentation import Quiver, RelationIdeal
from quiverhom.algebra import quiver_algebra

from conftest import linear_quiver, seeded_algebras

three = st.sampled_from([True, False, None])


def test_interval_comparisons():
    ex, al, ni = Dim.exact, Dim.at_least, Dim.neg_inf
    assert V.le(ex(2), ex(3)) is True
    assert V.le(ex(4), ex(3)) is False
    assert V.le(al(2), ex(5)) is None
    assert V.le(al(6), ex(5)) is False
    assert V.le(ex(1), al(1)) is True
    assert V.le(ni(), ex(0)) is True
    assert V.lt(ex(2), al(3)) is True
    assert V.eq(ex(3), ex(3)) is True and V.eq(al(3), ex(3)) is None and V.eq(al(4), ex(3)) is False
    b = V.Bound.of(ex(2)) + al(1)
    assert (b.lo, b.hi) == (3, math.inf) and str(b) == "[3, inf)"
    assert str(V.bmin(al(5), ex(2))) == "2"


@given(three, three)
def test_three_valued_logic(a, b):
    # brute-force against the Kleene tables: evaluate over every completion of the unknowns
    def completions(x):
        return [True, False] if x is None else [x]

    def kleene(op):
        vals = {op(x, y) for x in completions(a) for y in completions(b)}
        return vals.pop() if len(vals) == 1 else None

    assert V.t_and(a, b) == kleene(lambda x, y: x and y)
    assert V.t_or(a, b) == kleene(lambda x, y: x or y)
    assert V.t_implies(a, b) == kleene(lambda x, y: (not x) or y)
    assert V.t_not(a) == (None if a is None else not a)


def test_verdicts():
    rep = V.CheckReport({}, [], 0, {})
    assert rep.add("S1", "", "", {"h": False}, False, {}).verdict == "vacuous"
    assert rep.add("S1", "", "", {"h": None}, True, {}).verdict == "undetermined"
    assert rep.add("S1", "", "", {"h": True}, None, {}).verdict == "undetermined"
    assert rep.add("S1", "", "", {}, True, {}).verdict == "holds"
    assert rep.exit_code() == 3
    rep.add("S2", "", "", {"h": True}, False, {})
    assert rep.exit_code() == 2 and len(rep.failures()) == 1


def test_intro_report(intro):
    rep = V.check_all(intro, [0, 2])
    assert rep.exit_code() == 0
    assert rep.values["gldim_A"] == "3" and rep.values["gldim_Gamma"] == "1"
    assert rep.values["ext_S_e_S_e"] == [2, 0, 1]
    s12, = rep.by_id("S12")
    assert s12.verdict == "vacuous" and s12.conclusion is False
    assert s12.hypotheses["e primitive"] is False
    assert s12.witnesses["ext_S_e_S_e"][2] >= 1
    s5, = rep.by_id("S5")
    assert s5.verdict == "holds"
    assert s5.witnesses["id_S_e"] == "3" and s5.witnesses["pd_S_e"] == "2"
    assert all(r.verdict != "fails" for r in rep.results)
    assert {r.statement_id for r in rep.results} == set(V.STATEMENT_IDS)


def test_intro_other_e_sets(intro):
    for e in V.proper_e_sets(4):
        rep = V.check_all(intro, e)
        assert not rep.failures(), (e, [r.to_json() for r in rep.failures()])


def test_semisimple_everything_holds():
    q = Quiver.build(["1", "2", "3"], [])
    A = quiver_algebra(q, RelationIdeal.monomial(q, []))
    for e in V.proper_e_sets(3, "primitive"):
        rep = V.check_all(A, e)
        assert rep.exit_code() == 0
        assert rep.values["gldim_A"] == "0" and rep.values["gldim_Gamma"] == "0"
        assert all(r.verdict in ("holds", "vacuous") for r in rep.results)


def test_small_cap_gives_undetermined_not_failure(intro):
    rep = V.check_all(intro, [0, 2], cap=1)
    assert not rep.failures()
    assert rep.exit_code() == 3
    assert rep.values["gldim_A"] == ">=2"


def test_report_deterministic(intro):
    a = V.check_all(intro, [0, 2], seed=7).dumps()
    fresh = parse(INTRO_TEXT).algebra()
    b = V.check_all(fresh, [0, 2], seed=7).dumps()
    assert a == b


def test_s11_vacuous_on_hereditary_chain():
    A = linear_quiver(4, square_zero=True)
    for e in V.proper_e_sets(4, "primitive"):
        for r in V.check_all(A, e).by_id("S11"):
            assert r.verdict == "vacuous"


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_no_failures_on_random_algebras(seed):
    (q, ideal, A), = seeded_algebras(1, seed=seed, max_dim=12)
    for e in V.proper_e_sets(A.n, "primitive"):
        rep = V.check_all(A, e, seed=seed, n_random=2)
        assert not rep.failures(), [r.to_json() for r in rep.failures()]


def test_one_vertex_trial_is_skipped():
    cfg = V.FuzzConfig(seed=0, trials=1, max_vertices=1)
    r = V.run_trial(cfg, 0)
    assert r.e_sets == 0 and not r.failures


def test_fuzz_small_run():
    s = V.fuzz(V.FuzzConfig(seed=3, trials=6))
    assert s.failures == 0
    assert [t.trial for t in s.trials] == list(range(6))
    assert s.s11_hypotheses_met == 0
    assert s.to_json()["config"]["seed"] == 3


def test_fuzz_workers_agree():
    cfg = V.FuzzConfig(seed=5, trials=4)
    assert V.fuzz(cfg, workers=2).to_json() == V.fuzz(cfg).to_json()


def test_fuzz_config_validation():
    with pytest.raises(ValueError):
        V.FuzzConfig(trials=0)


def test_failure_produces_reparsable_bundle(monkeypatch):
    real = V._check_global

    def broken(c, rep):
        real(c, rep)
        rep.add("S2", "injected", "A", {}, False, {})

    monkeypatch.setattr(V, "_check_global", broken)
    cfg = V.FuzzConfig(seed=1, trials=1, max_vertices=3)
    r = next(r for r in map(lambda t: V.run_trial(cfg, t), range(10)) if r.e_sets)
    assert r.failures and r.bundle
    af = parse(r.bundle)
    assert af.e_set == r.failures[0]["e_set"]
    assert af.algebra().dim == r.dim


def test_lifting_on_intro(intro):
    from quiverhom.rep import injective, direct_sum, simple
    for M in [injective(intro, i) for i in range(4)] + [direct_sum([simple(intro, 1), simple(intro, 1)])]:
        out = V.check_lifting(M, rng=random.Random(0))
        assert out is not None
        assert out.nilpotent_violations == 0 and out.section_violations == 0


def test_lifting_skips_infinite_pd():
    from conftest import truncated_loop
    from quiverhom.rep import simple
    assert V.check_lifting(simple(truncated_loop(2), 0), cap=4) is None
