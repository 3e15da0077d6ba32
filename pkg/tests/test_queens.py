"""n-queens: safety predicate, undo instance, and pipeline agreement."""

import itertools

import pytest

from effsim.queens import (
    safe, valid, q_plus, q_minus, QUEENS_UNDO, INITIAL,
    PIPELINES, run_pipeline,
)

N4_SOLUTIONS = [[2, 4, 1, 3], [3, 1, 4, 2]]


def test_safe_basic():
    # Same column, and both diagonals, starting one step left of the queen.
    assert not safe(3, 1, [3])
    assert not safe(3, 1, [2])
    assert not safe(3, 1, [4])
    assert safe(3, 1, [1])


def test_safe_distance():
    # Queen two columns away: diagonal offsets of 2 attack, 1 does not.
    assert not safe(3, 1, [9, 5])
    assert not safe(3, 1, [9, 1])
    assert safe(3, 1, [9, 2])


def test_valid_against_bruteforce():
    def brute(sol):
        cols = list(range(len(sol), 0, -1))  # sol is most-recent-first
        return all(
            sol[i] != sol[j]
            and abs(sol[i] - sol[j]) != abs(cols[i] - cols[j])
            for i in range(len(sol)) for j in range(i + 1, len(sol)))
    for p in itertools.permutations(range(1, 6)):
        assert valid(list(p)) == brute(list(p))


def test_q_plus_q_minus_inverse():
    st = q_plus(INITIAL, 3)
    assert st == (1, [3])
    st2 = q_plus(st, 1)
    assert st2 == (2, [1, 3])
    assert q_minus(st2, 1) == st
    assert q_minus(st, 3) == INITIAL


def test_q_minus_bottoms_out():
    with pytest.raises(RuntimeError):
        q_minus(INITIAL, 5)


def test_pipelines_registry():
    assert list(PIPELINES) == [
        "naive", "local", "global", "sim", "fusedF",
        "localM", "globalM", "globalT", "simT", "fusedTF",
    ]


@pytest.mark.parametrize("name", list(PIPELINES))
def test_pipeline_n4(name):
    assert run_pipeline(name, 4) == N4_SOLUTIONS


@pytest.mark.parametrize("name", list(PIPELINES))
def test_pipeline_small_counts(name):
    # [DERIVED] counts for n = 1..5: 1, 0, 0, 2, 10.
    assert [len(run_pipeline(name, n)) for n in range(1, 6)] == \
        [1, 0, 0, 2, 10]


def test_pipeline_solutions_are_column_ordered_placements():
    for sol in run_pipeline("local", 6):
        assert sorted(sol) == list(range(1, 7))
        assert valid(list(reversed(sol)))


def test_run_pipeline_rejects_bad_input():
    with pytest.raises(ValueError):
        run_pipeline("bogus", 4)
    with pytest.raises(ValueError):
        run_pipeline("local", 0)
