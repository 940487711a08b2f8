"""Exact linear algebra: cross-checked against sympy and the
Moore-Penrose axioms."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from carnot.linalg import (Mat, rref, rank, nullspace, invert, pseudoinverse,
                           gram_schmidt, projector, dot, vstack)
from carnot.rationals import Rat


def M(rows, ncols=None):
    return Mat.from_rows([[Rat(x) for x in r] for r in rows], ncols)


def to_sympy(m):
    return sympy.Matrix(m.nrows, m.ncols,
                        lambda i, j: sympy.Rational(Fraction(str(m.rows[i][j]))))


def test_rank_and_nullspace_small():
    a = M([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(a) == 2
    ns = nullspace(a)
    assert len(ns) == 1
    assert all(not x for x in a.apply(ns[0]))


def test_rank_matches_sympy_on_fixed_cases():
    cases = [
        [[0, 0], [0, 0]],
        [[1, 2], [3, 4]],
        [["1/2", "1/3", 0], [1, 1, 1], ["3/2", "4/3", 1]],
        [[2, 0, 0, 1]],
    ]
    for rows in cases:
        a = M(rows)
        assert rank(a) == to_sympy(a).rank()


def test_invert_round_trip():
    a = M([[1, 2], [3, "7/2"]])
    assert a @ invert(a) == Mat.identity(2)
    assert invert(a) @ a == Mat.identity(2)


def test_invert_singular_raises():
    with pytest.raises(ValueError):
        invert(M([[1, 2], [2, 4]]))


def _check_moore_penrose(a):
    p = pseudoinverse(a)
    assert (a @ p @ a) == a
    assert (p @ a @ p) == p
    assert (a @ p).transpose() == (a @ p)
    assert (p @ a).transpose() == (p @ a)


def test_pseudoinverse_axioms_fixed():
    _check_moore_penrose(M([[1, 0], [0, 0]]))
    _check_moore_penrose(M([[1, 2, 3], [4, 5, 6]]))
    _check_moore_penrose(M([[0, 0], [0, 0]]))
    _check_moore_penrose(Mat(0, 3))  # empty row set


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_pseudoinverse_axioms_random(nr, nc, data):
    entries = data.draw(st.lists(
        st.tuples(st.integers(-5, 5), st.integers(1, 4)),
        min_size=nr * nc, max_size=nr * nc))
    rows = [[Rat(entries[i * nc + j][0], entries[i * nc + j][1])
             for j in range(nc)] for i in range(nr)]
    _check_moore_penrose(Mat.from_rows(rows, nc))


def test_gram_schmidt_orthogonal_and_spanning():
    vecs = [[Rat(1), Rat(1), Rat(0)], [Rat(1), Rat(0), Rat(1)], [Rat(2), Rat(1), Rat(1)]]
    ortho = gram_schmidt(vecs)
    assert len(ortho) == 2  # third vector is dependent
    assert dot(ortho[0], ortho[1]) == 0


def test_projector_idempotent_symmetric():
    p = projector([[Rat(1), Rat(1), Rat(0)], [Rat(0), Rat(0), Rat(1)]], 3)
    assert p @ p == p
    assert p.transpose() == p
    assert p.apply([Rat(1), Rat(1), Rat(0)]) == [Rat(1), Rat(1), Rat(0)]
    assert p.apply([Rat(1), Rat(-1), Rat(0)]) == [Rat(0), Rat(0), Rat(0)]


def test_rref_pivots_and_vstack():
    a = M([[0, 1], [1, 0]])
    r, piv = rref(a)
    assert piv == [0, 1]
    assert r == Mat.identity(2)
    s = vstack(a, M([[1, 1]]))
    assert s.nrows == 3 and s.ncols == 2


def test_zero_row_matrices():
    z = Mat(0, 4)
    assert rank(z) == 0
    assert len(nullspace(z)) == 4
    assert pseudoinverse(z).nrows == 4 and pseudoinverse(z).ncols == 0
