"""Effect-tree core: fold, bind, monad laws, signature permutations."""

import random

from hypothesis import given, strategies as st

from effsim.core import (
    Leaf, Node, Or, Fail, fold, bind, tree_map, seq,
    get, put, fail, or_, choose, guard, side, ret, swap, rotate, show_tree,
    mget, update, restore,
)
from effsim.handlers import h_nd


def tree_equal(a, b):
    """Structural equality for trees without function-valued continuations."""
    if isinstance(a, Leaf) and isinstance(b, Leaf):
        return a.value == b.value
    if isinstance(a, Node) and isinstance(b, Node):
        if a.idx != b.idx or type(a.op) is not type(b.op):
            return False
        op, oq = a.op, b.op
        if isinstance(op, Or):
            return tree_equal(op.l, oq.l) and tree_equal(op.r, oq.r)
        if isinstance(op, Fail):
            return True
        if hasattr(op, "k") and not callable(op.k):
            same_payload = all(
                getattr(op, f) == getattr(oq, f)
                for f in op.__slots__ if f != "k")
            return same_payload and tree_equal(op.k, oq.k)
        return False
    return False


def random_nondet_tree(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return Leaf(rng.randint(0, 9)) if rng.random() < 0.7 else fail(at=0)
    return or_(random_nondet_tree(rng, depth - 1),
               random_nondet_tree(rng, depth - 1), at=0)


def test_fold_leaf():
    assert fold(lambda x: x, None, Leaf(7)) == 7


def test_fold_hnd_example():
    t = or_(ret(1), ret(2), at=0)
    def alg(idx, op):
        if isinstance(op, Fail):
            return []
        return op.l + op.r
    assert fold(lambda x: [x], alg, t) == [1, 2]


def test_fold_matches_reference_evaluator():
    def reference(t):
        if isinstance(t, Leaf):
            return [t.value]
        if isinstance(t.op, Fail):
            return []
        return reference(t.op.l) + reference(t.op.r)
    rng = random.Random(0)
    def alg(idx, op):
        return [] if isinstance(op, Fail) else op.l + op.r
    for _ in range(200):
        t = random_nondet_tree(rng, 4)
        assert fold(lambda x: [x], alg, t) == reference(t)


def test_bind_leaf():
    assert tree_equal(bind(Leaf(3), lambda x: Leaf(x + 1)), Leaf(4))


def test_bind_maps_over_or():
    t = bind(or_(ret(1), ret(2), at=0), lambda x: ret(x * 10))
    assert tree_equal(t, or_(ret(10), ret(20), at=0))


@given(st.integers(min_value=0, max_value=10_000))
def test_monad_left_unit(x):
    f = lambda v: or_(ret(v), ret(v + 1), at=0)
    assert tree_equal(bind(ret(x), f), f(x))


def test_monad_right_unit_and_assoc():
    rng = random.Random(1)
    f = lambda v: or_(ret(v), fail(at=0), at=0)
    g = lambda v: ret(v * 2)
    for _ in range(500):
        t = random_nondet_tree(rng, 4)
        assert tree_equal(bind(t, ret), t)
        assert tree_equal(bind(bind(t, f), g),
                          bind(t, lambda x: bind(f(x), g)))


def test_fold_unique_homomorphism():
    rng = random.Random(2)
    def alg(idx, op):
        return [] if isinstance(op, Fail) else op.l + op.r
    for _ in range(100):
        t = random_nondet_tree(rng, 4)
        assert fold(lambda x: [x], alg, bind(t, ret)) == \
            fold(lambda x: [x], alg, t)


def test_constructors():
    assert tree_equal(choose([1, 2, 3]),
                      or_(ret(1), or_(ret(2), or_(ret(3), fail()))))
    assert tree_equal(guard(True), ret(()))
    assert tree_equal(guard(False), fail())
    assert h_nd(swap(side(ret(5)))) == []


def test_swap_leaf_and_involution():
    rng = random.Random(3)
    assert tree_equal(swap(Leaf(5)), Leaf(5))
    for _ in range(300):
        t = random_nondet_tree(rng, 4)
        assert tree_equal(swap(swap(t)), t)


def test_swap_retags_put():
    t = swap(put(9, at=0))
    assert t.idx == 1


def test_rotate_order_three():
    # One single-op tree per family position in a 4-family signature.
    samples = [put(1, at=0), fail(at=1), update(2, at=2), restore(3, at=3)]
    expected = [2, 0, 1, 3]
    for t, e in zip(samples, expected):
        assert rotate(t).idx == e
    rng = random.Random(4)
    for _ in range(200):
        t = random_nondet_tree(rng, 3)
        assert tree_equal(rotate(rotate(rotate(t))), t)


def test_show_tree_stable():
    assert show_tree(or_(ret(1), fail(), at=1)) == "or@1 (ret 1) (fail@1)"
    assert show_tree(put(3, at=0)) == "put@0 3; ret ()"
    assert show_tree(get(Leaf, at=0)) == "get@0 <fun>"
    assert show_tree(mget(Leaf, at=0)) == "mget@0 <fun>"
