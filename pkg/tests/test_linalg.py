from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torsionfree_lab.linalg import (Field, FieldMismatch, Mat, Subspace, kernel_basis, rref,
                                    solve_all, subspace_ops)


def mat(f, rows):
    return Mat.from_rows(f, rows)


# -- fields ----------------------------------------------------------------------------

def test_field_parse_and_spec():
    assert Field.parse("gf:5").spec() == {"kind": "prime_field", "p": 5}
    assert Field.parse("qq").spec() == {"kind": "rationals"}
    assert Field.from_spec({"kind": "prime_field", "p": 7}) == Field.gf(7)


@pytest.mark.parametrize("bad", ["gf:4", "gf:1", "gf:x", "reals", "gf:2147483659"])
def test_field_rejects_bad_specs(bad):
    with pytest.raises(ValueError):
        Field.parse(bad)


def test_entries_are_canonical(gf5, qq):
    assert [int(x) for x in gf5.array([-1, 7, 5])] == [4, 2, 0]
    q = qq.array([Fraction(2, 4), Fraction(3, -6)])
    assert q[0] == Fraction(1, 2) and q[1].denominator == 2 and q[1] < 0


# -- rref ------------------------------------------------------------------------------

def test_rref_identity(gf5):
    red, r, piv = rref(mat(gf5, [[1, 0], [0, 1]]))
    assert red == mat(gf5, [[1, 0], [0, 1]]) and r == 2 and piv == [0, 1]


def test_rref_hand_example(gf5):
    red, r, _ = rref(mat(gf5, [[2, 4], [1, 2]]))
    assert red == mat(gf5, [[1, 2], [0, 0]]) and r == 1


def test_rref_zero(gf5):
    red, r, piv = rref(mat(gf5, [[0, 0]] * 3))
    assert r == 0 and piv == [] and gf5.is_zero(red.data)


def test_mixed_fields_rejected(gf5, qq):
    with pytest.raises(FieldMismatch):
        mat(gf5, [[1]]) @ mat(qq, [[1]])
    with pytest.raises(FieldMismatch):
        subspace_ops(Subspace.span(gf5, 1, [[1]]), Subspace.span(Field.gf(7), 1, [[1]]))


# -- kernels and solving ---------------------------------------------------------------

def test_kernel_identity_and_zero(gf5):
    assert kernel_basis(mat(gf5, [[1, 0], [0, 1]])).dim == 0
    assert kernel_basis(mat(gf5, [[0, 0, 0]] * 3)).dim == 3


def test_kernel_hand_example(gf5):
    k = kernel_basis(mat(gf5, [[1, 2]]))
    assert k.dim == 1 and k.contains([3, 1])


def test_solve_examples(gf5):
    x, k = solve_all(mat(gf5, [[1, 0], [0, 1]]), [2, 3])
    assert [int(v) for v in x] == [2, 3] and k.dim == 0
    assert solve_all(mat(gf5, [[0, 0], [0, 0]]), [1, 0]) is None
    x, k = solve_all(mat(gf5, [[1, 1]]), [0])
    assert [int(v) for v in x] == [0, 0] and k.dim == 1


def test_solve_dimension_mismatch(gf5):
    with pytest.raises(ValueError):
        solve_all(mat(gf5, [[1, 1]]), [0, 1])


# -- subspaces -------------------------------------------------------------------------

def test_subspace_examples(gf5):
    e1 = Subspace.span(gf5, 2, [[1, 0]])
    e2 = Subspace.span(gf5, 2, [[0, 1]])
    c = subspace_ops(e1, e2)
    assert c.sum.dim == 2 and c.intersection.dim == 0
    c = subspace_ops(e1, e1)
    assert c.sum == e1 and c.intersection == e1 and c.u_in_v and c.v_in_u
    diag = Subspace.span(gf5, 2, [[1, 1]])
    c = subspace_ops(diag, e1)
    assert c.sum.dim == 2 and c.intersection.dim == 0


def test_subspace_ambient_mismatch(gf5):
    with pytest.raises(ValueError):
        subspace_ops(Subspace.span(gf5, 2, [[1, 0]]), Subspace.span(gf5, 3, [[1, 0, 0]]))


def test_subspace_pivots_increase(gf5):
    s = Subspace.span(gf5, 4, [[0, 1, 2, 3], [1, 1, 1, 1], [1, 2, 3, 4]])
    assert s.pivots == sorted(set(s.pivots))


# -- properties ------------------------------------------------------------------------

def _matrices(p: int | None):
    entries = st.integers(-3, 3) if p is None else st.integers(0, p - 1)
    return st.integers(0, 5).flatmap(lambda r: st.integers(0, 5).flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r).map(
            lambda rows: (rows, c))))


def _field(p):
    return Field.qq() if p is None else Field.gf(p)


@pytest.mark.parametrize("p", [5, 2, None])
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_linear_algebra_laws(p, data):
    f = _field(p)
    rows, cols = data.draw(_matrices(p))
    m = Mat.from_rows(f, rows, cols)
    red, r, piv = rref(m)
    assert rref(red)[0] == red                                        # idempotent
    assert r == len(piv) == rref(m.T)[1]                              # row rank = column rank
    k = kernel_basis(m)
    assert k.dim + r == m.cols                                        # rank-nullity
    if k.dim and m.rows:
        assert f.is_zero(f.matmul(m.data, k.basis.T))
    b = [data.draw(st.integers(0, 4)) for _ in range(m.rows)]
    out = solve_all(m, b)
    if out is not None:
        x, _ = out
        assert f.equal(f.matmul(m.data, x.reshape(-1, 1)).ravel(), f.array(b))
    else:
        assert f.rank(np.hstack([m.data, f.array(b).reshape(-1, 1)])) > r


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_modular_law(data):
    f = Field.gf(5)
    n = data.draw(st.integers(1, 5))
    vec = st.lists(st.integers(0, 4), min_size=n, max_size=n)
    u = Subspace.span(f, n, data.draw(st.lists(vec, max_size=4)))
    v = Subspace.span(f, n, data.draw(st.lists(vec, max_size=4)))
    c = subspace_ops(u, v)
    assert c.sum.dim + c.intersection.dim == u.dim + v.dim
    assert c.sum.includes(u) and u.includes(c.intersection) and v.includes(c.intersection)


def test_blocked_rref_matches_unblocked():
    f = Field.gf(32003)
    rng = np.random.default_rng(3)
    a = f.array(rng.integers(0, 32003, size=(150, 170)))
    a[:, 40] = a[:, 3]
    blocked, piv_b = f._rref_blocked(a.copy())
    plain, piv_p = f._rref_unblocked(a.copy())
    assert piv_b == piv_p and f.equal(blocked[: len(piv_b)], plain[: len(piv_p)])
