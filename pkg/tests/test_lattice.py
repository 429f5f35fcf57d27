from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pairblock.errors import NotPrimitiveError, ZeroVectorError
from pairblock.lattice import (
    BoardSpec,
    Direction,
    canonicalize_direction,
    enumerate_windows,
    gcd_vector,
    normalize_directions,
)


def starts_by_scan(side, dim, vector, length):
    """Oracle: try every start on the board and keep those whose window fits."""
    found = []
    for start in product(range(1, side + 1), repeat=dim):
        pts = [tuple(s + k * c for s, c in zip(start, vector)) for k in range(length)]
        if all(1 <= x <= side for pt in pts for x in pt):
            found.append(start)
    return found


def test_gcd_vector_examples():
    assert gcd_vector((4, 6)) == 2
    assert gcd_vector((5, 0, 24601)) == 1
    assert gcd_vector((0, 0)) == 0


def test_canonicalize_examples():
    assert canonicalize_direction((-1, 1)).vector == (1, -1)
    assert canonicalize_direction((1, 1)).vector == (1, 1)
    with pytest.raises(NotPrimitiveError):
        canonicalize_direction((2, 4))
    with pytest.raises(ZeroVectorError):
        canonicalize_direction((0, 0))


def test_direction_constructor_rejects_non_canonical():
    with pytest.raises(ValueError):
        Direction((-1, 1))
    with pytest.raises(NotPrimitiveError):
        Direction((2, 4))
    with pytest.raises(ZeroVectorError):
        Direction((0,))


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4).map(tuple))
def test_canonicalize_properties(v):
    if all(c == 0 for c in v):
        return
    g = gcd_vector(v)
    primitive = tuple(c // g for c in v)
    direction = canonicalize_direction(primitive)
    assert gcd_vector(direction.vector) == 1
    assert next(c for c in direction.vector if c != 0) > 0
    assert canonicalize_direction(tuple(-c for c in primitive)) == direction


def test_normalize_directions_collapses_sign_duplicates():
    dirs = normalize_directions([(1, 0), (-1, 0), (0, -1), (0, 1)])
    assert tuple(d.vector for d in dirs) == ((1, 0), (0, 1))


def test_whole_row_window():
    board = BoardSpec(3, 1)
    wins = list(enumerate_windows(board, Direction((1,)), 3))
    assert len(wins) == 1
    assert wins[0].start == (1,)
    assert wins[0].points() == ((1,), (2,), (3,))


def test_diagonal_window_matches_scan():
    # oracle finds a single fit at (1,1)
    assert starts_by_scan(5, 2, (1, 1), 5) == [(1, 1)]
    wins = list(enumerate_windows(BoardSpec(5, 2), Direction((1, 1)), 5))
    assert [w.start for w in wins] == [(1, 1)]


def test_axis_windows_match_scan():
    assert starts_by_scan(5, 2, (1, 0), 5) == [(1, j) for j in range(1, 6)]
    wins = list(enumerate_windows(BoardSpec(5, 2), Direction((1, 0)), 5))
    assert [w.start for w in wins] == [(1, j) for j in range(1, 6)]


@pytest.mark.parametrize("side", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_axis_window_count_closed_form(side, dim):
    axis = Direction((1,) + (0,) * (dim - 1))
    for length in range(1, side + 1):
        wins = list(enumerate_windows(BoardSpec(side, dim), axis, length))
        assert len(wins) == side ** (dim - 1) * (side - length + 1)
        assert [w.start for w in wins] == starts_by_scan(side, dim, axis.vector, length)


@pytest.mark.parametrize("vector", [(1, -2), (2, 1), (1, 0), (0, 1, -1)])
def test_windows_agree_for_both_signs(vector):
    side = 6
    dim = len(vector)
    length = 3
    negated = tuple(-c for c in vector)
    as_sets = lambda starts, v: {
        frozenset(tuple(s + k * c for s, c in zip(start, v)) for k in range(length))
        for start in starts
    }
    forward = as_sets(starts_by_scan(side, dim, vector, length), vector)
    backward = as_sets(starts_by_scan(side, dim, negated, length), negated)
    assert forward == backward
    direction = canonicalize_direction(vector)
    via_impl = {
        frozenset(w.points())
        for w in enumerate_windows(BoardSpec(side, dim), direction, length)
    }
    assert via_impl == forward


def test_no_window_fits():
    wins = list(enumerate_windows(BoardSpec(3, 1), Direction((1,)), 4))
    assert wins == []
    wins = list(enumerate_windows(BoardSpec(10, 2), Direction((2, 1)), 12))
    assert wins == []


def test_window_length_must_be_positive():
    with pytest.raises(ValueError):
        list(enumerate_windows(BoardSpec(3, 1), Direction((1,)), 0))


def test_board_validation():
    with pytest.raises(ValueError):
        BoardSpec(0, 2)
    with pytest.raises(ValueError):
        BoardSpec(3, 0)
    board = BoardSpec(3, 2)
    assert board.contains((1, 3))
    assert not board.contains((0, 2))
    assert not board.contains((1, 4))
    assert not board.contains((1,))
    assert board.cell_count == 9
    assert len(list(board.points())) == 9
