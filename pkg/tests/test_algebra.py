from hypothesis import given, settings, strategies as st

from quiverhom.algebra import quiver_algebra
from quiverhom.presentation import Quiver, RelationIdeal

from conftest import linear_quiver, seeded_algebras, truncated_loop


def test_intro_basis(intro):
    assert intro.dim == 11
    assert intro.n == 4
    assert [len(intro.by_left[i]) for i in range(4)] == [2, 2, 3, 4]
    assert "gamma*beta*alpha" in intro.labels()
    assert "delta*gamma" not in intro.labels()


def test_intro_products(intro):
    i = intro.index_of
    assert intro.multiply({i("beta"): 1}, {i("alpha"): 1}) == {i("beta*alpha"): 1}
    assert intro.multiply({i("delta"): 1}, {i("gamma"): 1}) == {}
    assert intro.multiply({i("alpha"): 1}, {i("beta"): 1}) == {}
    one = intro.unit()
    x = {i("gamma*beta"): 3}
    assert intro.multiply(one, x) == x and intro.multiply(x, one) == x


def test_radical_nilpotency(intro):
    # longest nonzero path has length 3
    assert intro.radical_nilpotency_index() == 4
    assert truncated_loop(5).radical_nilpotency_index() == 5
    assert linear_quiver(1).radical_nilpotency_index() == 1


def test_associativity(intro):
    assert intro.check_associativity(300)
    assert intro.opposite().check_associativity(300)


def test_opposite_involution(intro):
    op = intro.opposite()
    assert op.opposite() is intro
    assert op.dim == intro.dim
    # e_i A^op is spanned by the paths starting at i
    assert [len(op.by_left[i]) for i in range(4)] == [4, 3, 2, 2]


def test_generators_are_arrows(intro):
    assert [intro.basis[g].label for g in intro.generators] == ["alpha", "beta", "gamma", "delta"]
    assert all(intro.basis[g].degree == 1 for g in intro.generators)


def test_non_monomial_algebra():
    # commutative square: two paths 1 -> 4 identified
    q = Quiver.build(list("1234"), [("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")])
    from quiverhom.presentation import make_path
    p1 = make_path(q, [1, 0])
    p2 = make_path(q, [3, 2])
    A = quiver_algebra(q, RelationIdeal.from_dicts(q, [{p1: 1, p2: -1}]))
    assert A.dim == 4 + 4 + 1
    i = A.index_of
    ba = A.multiply({i("b"): 1}, {i("a"): 1})
    dc = A.multiply({i("d"): 1}, {i("c"): 1})
    assert ba == dc and ba
    assert A.check_associativity(300)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_random_algebras_associative(seed):
    (q, ideal, A), = seeded_algebras(1, seed=seed)
    assert A.dim <= 20
    assert A.check_associativity(60, seed=seed)
    assert A.opposite().opposite() is A
