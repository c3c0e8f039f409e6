from __future__ import annotations

import pytest

from torsionfree_lab.constructions import (cosyzygy_embedding, embed_into_finite_pd, syzygy_t_resolution,
                                           torsionfree_compress)
from torsionfree_lab.errors import PreconditionError
from torsionfree_lab.functors import ext_dim, hom_space, ext_dims, regular, transpose
from torsionfree_lab.invariants import (DimResult, auslander_bridger_check, gorenstein_dimension, in_perp,
                                        inf_torsionfree, injective_coresolution_pd_profile,
                                        is_n_torsionfree, orthogonal_dimension, projective_dimension,
                                        self_injective_dimension, torsion_status,
                                        torsionfree_dimension_upper)
from torsionfree_lab.modules import free_module, indecomposable_projective, simple_modules, vector_dual
from torsionfree_lab.resolution import is_radical_image, presentation, resolution, syzygy
from torsionfree_lab.sampling import sample_suite


def simple(alg, name, k=0):
    return simple_modules(alg(name))[k]


# -- DimResult -----------------------------------------------------------------------

def test_dimresult_decisions():
    assert DimResult.finite(1, True).decide_le(1) is True
    assert DimResult.finite(2, True).decide_le(1) is False
    assert DimResult.finite(1, False).decide_le(1) is None
    assert DimResult.infinity("x").decide_le(100) is False
    assert DimResult.greater_than(6, True).decide_le(6) is False
    assert DimResult.greater_than(6, True).decide_le(7) is None
    assert DimResult.unknown("x", lower=3).decide_le(2) is False
    assert DimResult.unknown("x").decide_le(2) is None
    up = DimResult.finite(3, True, lower=1, exact=False)
    assert up.decide_le(3) is True and up.decide_le(2) is None and up.decide_le(0) is False
    assert DimResult.greater_than(6, True).to_json()["value"] == "GREATER_THAN(6)"


# -- presentations and syzygies -----------------------------------------------------

def test_presentation_examples(alg):
    p = presentation(indecomposable_projective(alg("A2"), 0), True)
    assert p.ranks(1) == [1, 0]
    p = presentation(simple(alg, "DUAL2"), True)
    assert p.ranks(1) == [1, 1] and is_radical_image(p, 1)
    p = presentation(simple(alg, "NG3"), True)
    assert p.ranks(1) == [1, 2] and is_radical_image(p, 1)


def test_syzygy_examples(alg):
    s = simple(alg, "DUAL2")
    for n in range(4):
        assert syzygy(s, n).dim == 1
    om = syzygy(simple(alg, "A2"), 1)
    assert om.dim == 1 and projective_dimension(om).value == 0
    assert syzygy(simple(alg, "NG3"), 2).dim == 4


def test_minimal_ranks_are_top_multiplicities(alg):
    a = alg("NG3")
    res = resolution(simple_modules(a)[0], 3, True)
    assert res.ranks(3) == [1, 2, 4, 8]


# -- transpose and Ext --------------------------------------------------------------

def test_transpose_examples(alg):
    assert transpose(free_module(alg("NG3"), 2)).dim == 0
    t = transpose(simple(alg, "DUAL2"))
    assert t.dim == 1 and t.ring is alg("DUAL2").op
    t = transpose(simple(alg, "A2"))
    assert t.dim == 1 and t.ring is alg("A2").op


def test_ext_examples(alg):
    for name in ("A2", "DUAL2"):
        a = alg(name)
        for m in simple_modules(a):
            assert ext_dims(m, regular(a), 0)[0] == len(hom_space(m, regular(a)))
    d2 = alg("DUAL2")
    assert ext_dims(simple(alg, "DUAL2"), regular(d2), 4)[1:] == [0, 0, 0, 0]
    a2 = alg("A2")
    assert ext_dims(simple(alg, "A2"), regular(a2), 3)[1:] == [1, 0, 0]
    assert ext_dim(simple(alg, "NG3"), regular(alg("NG3")), 1) == 3


@pytest.mark.parametrize("name", ["A2", "NG3", "NAKAYAMA(2,2)", "TRUNCPOLY(3)"])
def test_ext_independent_of_resolution_choice(alg, name):
    a = alg(name)
    suite = sample_suite(a, 8, 3)
    for x in suite[:8]:
        for y in (regular(a), suite[1].module, suite[-1].module):
            if x.module.dim > 12:
                continue
            assert ext_dims(x.module, y, 2, True)[1:] == ext_dims(x.module, y, 2, False)[1:]


# -- self-injective and projective dimension ----------------------------------------

@pytest.mark.parametrize("name,expected", [("DUAL2", 0), ("A2", 1), ("TRUNCPOLY(3)", 0),
                                           ("NAKAYAMA(2,2)", 0), ("K1", 0)])
def test_self_injective_dimension_small(alg, name, expected):
    for side in ("left", "right"):
        d = self_injective_dimension(alg(name), side)
        assert d.is_finite and d.certified and d.value == expected


def test_self_injective_dimension_ng3(alg):
    d = self_injective_dimension(alg("NG3"), "left", 6)
    assert d.kind == "greater_than" and d.value == 6 and d.certified


def test_projective_dimension_examples(alg):
    assert projective_dimension(free_module(alg("NG3"), 1)).value == 0
    pd = projective_dimension(simple(alg, "A2"))
    assert pd.value == 1 and pd.certified
    pd = projective_dimension(simple(alg, "DUAL2"), 5)
    assert pd.kind == "infinity" and pd.certified


# -- torsionfree-ness ----------------------------------------------------------------

def test_torsionfree_examples(alg):
    st = torsion_status(free_module(alg("NG3"), 2))
    assert st.inf_torsionfree.value and st.inf_torsionfree.certified
    s = simple(alg, "NG3")
    assert is_n_torsionfree(s, 1) and not is_n_torsionfree(s, 2)
    st = torsion_status(s)
    assert st.torsionless and not st.reflexive and st.ev_consistent
    st = torsion_status(simple(alg, "DUAL2"))
    assert st.inf_torsionfree.value and st.inf_torsionfree.certified and st.reflexive
    s1 = simple(alg, "A2")
    assert not is_n_torsionfree(s1, 1)
    inf = inf_torsionfree(s1)
    assert not inf.value and inf.certified and inf.first_failure == 1


def test_perp_membership(alg):
    assert in_perp(simple(alg, "DUAL2"), 4)
    assert not in_perp(simple(alg, "A2"), 1)
    assert in_perp(indecomposable_projective(alg("A2"), 0), 3)


# -- Gorenstein, orthogonal, torsionfree dimension -----------------------------------

def test_dimensions_over_dual2(alg):
    for x in sample_suite(alg("DUAL2"), 15, 4):
        m = x.module
        for fn in (gorenstein_dimension, orthogonal_dimension):
            r = fn(m)
            assert r.is_finite and r.value == 0 and r.certified
        t = torsionfree_dimension_upper(m)
        assert t.value == 0 and t.exact and t.certified


def test_dimensions_of_a2_simple(alg):
    s1 = simple(alg, "A2")
    for fn in (gorenstein_dimension, orthogonal_dimension, torsionfree_dimension_upper):
        r = fn(s1)
        assert r.is_finite and r.value == 1 and r.certified and r.exact, fn.__name__


def test_dimensions_of_ng3_simple(alg):
    s = simple(alg, "NG3")
    g = gorenstein_dimension(s, 5)
    o = orthogonal_dimension(s, 5)
    assert (g.kind, g.value) == ("greater_than", 5)
    assert (o.kind, o.value) == ("greater_than", 5)
    t = torsionfree_dimension_upper(s, 5)
    assert not t.is_finite and t.lower == 1


def test_gorenstein_equals_top_nonvanishing_ext(alg):
    for name in ("A2", "NAKAYAMA(2,2)", "TRUNCPOLY(3)"):
        a = alg(name)
        for x in sample_suite(a, 12, 9):
            g = gorenstein_dimension(x.module)
            assert g.certified
            exts = ext_dims(x.module, regular(a), 3)[1:]
            top = max((i + 1 for i, e in enumerate(exts) if e), default=0)
            assert g.value == top


# -- injective coresolution profile ---------------------------------------------------

def test_coresolution_profiles(alg):
    assert [r.value for r in injective_coresolution_pd_profile(alg("K1"), "left", 3)] == [0]
    assert [r.value for r in injective_coresolution_pd_profile(alg("DUAL2"), "left", 3)] == [0]
    prof = injective_coresolution_pd_profile(alg("A2"), "left", 1)
    assert prof and all(r.decide_le(1) is True for r in prof)
    assert injective_coresolution_pd_profile(alg("A2"), "right", 1)


# -- constructions -------------------------------------------------------------------

def test_cosyzygy_embedding_examples(alg):
    d2 = alg("DUAL2")
    free = free_module(d2, 1)
    seq = cosyzygy_embedding(free, 1)
    assert seq.exact and in_perp(seq.modules[-2], 1)
    s = simple(alg, "DUAL2")
    for n in (1, 3):
        seq = cosyzygy_embedding(s, n)
        tail = seq.modules[-2]
        assert seq.exact and in_perp(tail, n)
        assert seq.modules[1].same_as(s)
        assert syzygy(tail, n).dim == s.dim
    with pytest.raises(PreconditionError):
        cosyzygy_embedding(simple(alg, "A2"), 1)


def test_compress_examples(alg):
    s1 = simple(alg, "A2")
    tres = syzygy_t_resolution(s1, 1)
    out = torsionfree_compress(s1, tres, 1)
    assert out.certificates["ok"]
    h = out.sequence.modules[1]
    assert projective_dimension(h).decide_le(0) is True
    s = simple(alg, "DUAL2")
    out = torsionfree_compress(s, syzygy_t_resolution(s, 0), 0)
    assert out.sequence.modules[1].dim == 0 and out.sequence.modules[2].dim == s.dim
    assert torsionfree_compress(s, syzygy_t_resolution(s, 1), 1).certificates["ok"]


def test_finite_pd_embedding_examples(alg):
    p = indecomposable_projective(alg("A2"), 0)
    out = embed_into_finite_pd(p, 0)
    assert out.certificates["ok"]
    s = simple(alg, "DUAL2")
    out = embed_into_finite_pd(s, 0)
    assert out.certificates["ok"] and out.certificates["T_in_perp1"]
    out = embed_into_finite_pd(simple(alg, "A2"), 1)
    assert out.certificates["ok"] and out.certificates["pd_N_ok"]


# -- Auslander-Bridger bookkeeping ----------------------------------------------------

def test_auslander_bridger_examples(alg):
    r = auslander_bridger_check(free_module(alg("A2"), 2))
    assert r.ok and r.ext1_transpose == r.ext2_transpose == 0 and r.ev_kernel == r.ev_cokernel == 0
    r = auslander_bridger_check(simple(alg, "DUAL2"))
    assert r.ok and r.ext1_transpose == r.ext2_transpose == 0
    r = auslander_bridger_check(simple(alg, "NG3"))
    assert r.ok and r.ext1_transpose == 0 and r.ext2_transpose == 3 and r.double_dual_dim == 4


@pytest.mark.parametrize("name", ["A2", "DUAL2", "TRUNCPOLY(3)", "NAKAYAMA(2,2)"])
def test_auslander_bridger_on_suite(alg, name):
    for x in sample_suite(alg(name), 20, 2):
        assert auslander_bridger_check(x.module).ok, x.label


def test_vector_duality_of_ext(alg):
    a = alg("NG3")
    s = simple_modules(a)[0]
    r = regular(a)
    assert [ext_dim(s, r, i) for i in range(3)] == \
        [ext_dim(vector_dual(r), vector_dual(s), i) for i in range(3)]
