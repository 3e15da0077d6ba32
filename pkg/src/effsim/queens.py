"""The n-queens running example and runners for every pipeline.

State is (column, placed) where `placed` lists rows most recent first.
Solutions are reported in column order (row of column 1 first), which makes
the backtracking enumeration coincide, order included, with the naive
generate-and-test enumeration over lexicographically ordered permutations.
(The accumulated list is the reverse of the column order; reporting it
reversed is what pins all pipelines to the same normative order.)
"""

import itertools

from .core import Leaf, bind, seq, get, put, fail, or_, mget, update, choose, guard
from .handlers import (
    Undo, h_nd, h_nil, h_local, h_global, h_local_m, h_global_m, h_global_t,
)
from .translations import (
    local2global, local2global_m, simulate, simulate_t,
)
from .machines import simulate_f, simulate_tf


def safe(q, n, qs):
    """True iff row q is on a different row and diagonals than every row in
    qs, where n is the column distance to the head of qs."""
    for q1 in qs:
        if q == q1 or q == q1 + n or q == q1 - n:
            return False
        n += 1
    return True


def valid(qs):
    """True iff every queen is safe with respect to the ones after it."""
    if not qs:
        return True
    return valid(qs[1:]) and safe(qs[0], 1, qs[1:])


def q_plus(s, r):
    """(c, sol) + r = (c + 1, r : sol): place a queen on row r."""
    c, sol = s
    return (c + 1, [r] + sol)


def q_minus(s, r):
    """Left inverse of q_plus; a defect below column 1 (unreachable via the
    translations, which only restore what they placed)."""
    c, sol = s
    if c <= 0 or not sol:
        raise RuntimeError("q_minus: no queen to remove from %r" % (s,))
    return (c - 1, sol[1:])


QUEENS_UNDO = Undo(q_plus, q_minus)

INITIAL = (0, [])


def queens_naive(n):
    """choose (permutations [1..n]) >>= filtr valid, built directly as the
    or-chain of filtr leaves (the structural result of that bind).

    Lexicographic permutation order reproduces the normative result order.
    """
    t = fail(at=0)
    for p in reversed(list(itertools.permutations(range(1, n + 1)))):
        p = list(p)
        leaf = Leaf(p) if valid(p) else fail(at=0)
        t = or_(leaf, t, at=0)
    return t


def queens(n):
    """Backtracking queens over [StateF((Int,[Int])), NondetF]."""
    def loop():
        def k(s):
            c, sol = s
            if c >= n:
                return Leaf(list(reversed(sol)))
            return bind(choose(range(1, n + 1)), lambda r:
                        seq(guard(safe(r, 1, sol)),
                            get(lambda s2: seq(put(q_plus(s2, r)), loop()))))
        return get(k)
    return loop()


def queens_m(n):
    """Backtracking queens over [ModifyF((Int,[Int]), Int), NondetF]."""
    def loop():
        def k(s):
            c, sol = s
            if c >= n:
                return Leaf(list(reversed(sol)))
            return bind(choose(range(1, n + 1)), lambda r:
                        seq(guard(safe(r, 1, sol)),
                            seq(update(r), loop())))
        return mget(k)
    return loop()


def _run_naive(n):
    return h_nd(queens_naive(n))


def _run_local(n):
    return h_nil(h_local(queens(n), INITIAL))


def _run_global(n):
    return h_nil(h_global(local2global(queens(n)), INITIAL))


def _run_sim(n):
    return h_nil(simulate(queens(n), INITIAL))


def _run_fused_f(n):
    return h_nil(simulate_f(queens(n), INITIAL))


def _run_local_m(n):
    return h_nil(h_local_m(queens_m(n), INITIAL, QUEENS_UNDO))


def _run_global_m(n):
    return h_nil(h_global_m(local2global_m(queens_m(n)), INITIAL, QUEENS_UNDO))


def _run_global_t(n):
    return h_nil(h_global_t(queens_m(n), INITIAL, QUEENS_UNDO))


def _run_sim_t(n):
    return h_nil(simulate_t(queens_m(n), INITIAL, QUEENS_UNDO))


def _run_fused_tf(n):
    return h_nil(simulate_tf(queens_m(n), INITIAL, QUEENS_UNDO))


PIPELINES = {
    "naive": _run_naive,
    "local": _run_local,
    "global": _run_global,
    "sim": _run_sim,
    "fusedF": _run_fused_f,
    "localM": _run_local_m,
    "globalM": _run_global_m,
    "globalT": _run_global_t,
    "simT": _run_sim_t,
    "fusedTF": _run_fused_tf,
}


def run_pipeline(name, n):
    """Solve n-queens with the named pipeline from the initial state (0, [])."""
    if name not in PIPELINES:
        raise ValueError("unknown pipeline %r; choose from %s"
                         % (name, ", ".join(sorted(PIPELINES))))
    if n < 1:
        raise ValueError("board size must be >= 1")
    return PIPELINES[name](n)
