"""Constructive procedures: cosyzygy embeddings, the horseshoe star/transpose
sequences, torsionfree resolutions compressed to one torsionfree term, and
embeddings into modules of finite projective dimension.

Every procedure returns exact sequences; callers verify them through
``ExactSeq.certificate``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ModuleError, PreconditionError
from .functors import _star_data, dual_differential, dual_term
from .invariants import (DEFAULT_BOUND, in_perp, inf_torsionfree, is_n_torsionfree,
                         projective_dimension)
from .modules import (ExactSeq, Mod, ModHom, Projective, kernel_cokernel, projective_map, pushout,
                      quotient, submodule, zero_hom, zero_module)
from .resolution import cover_map, resolution


def _coefficients(proj: Projective, imgs: np.ndarray) -> np.ndarray:
    """Coefficient array (rank, proj.rank, d) of generator images given as vectors of proj."""
    f, d = proj.ring.field, proj.ring.dim
    amb = f.matmul(proj.basis_matrix(), imgs)
    return np.ascontiguousarray(amb.reshape(proj.rank, d, imgs.shape[1]).transpose(2, 0, 1))


def _compose(*homs: ModHom) -> ModHom:
    out = homs[0]
    for h in homs[1:]:
        out = out.then(h)
    return out


# -- cosyzygy embeddings ------------------------------------------------------

def cosyzygy_embedding(m: Mod, n: int) -> ExactSeq:
    """0 -> m -> Q_0^* -> ... -> Q_{n-1}^* -> A -> 0 with A in the orthogonal class perp_n R.

    Q_* is a projective resolution of m* over the opposite ring; m is the n-th
    syzygy of A.  Requires m to be n-torsionfree.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not is_n_torsionfree(m, n):
        raise PreconditionError(f"module is not {n}-torsionfree")
    f, ring = m.field, m.ring
    star, k, free, res = _star_data(m)
    p0s = dual_term(res, 0)
    qres = resolution(star, max(n - 1, 0))
    # the map Q_0 -> P_0^* (cover of m* followed by its inclusion), then dualized
    c0 = _coefficients(p0s, f.matmul(k, qres.gens[0]))
    q0s = dual_term(qres, 0)
    p0 = res.term(0)
    first = projective_map(p0, q0s, np.ascontiguousarray(c0.transpose(1, 0, 2)))
    maps = [ModHom(m, q0s.module, f.matmul(first, res.section(0)))]
    for i in range(1, n):
        maps.append(ModHom(dual_term(qres, i - 1).module, dual_term(qres, i).module,
                           dual_differential(qres, i)))
    kc = kernel_cokernel(maps[-1])
    tail = kc.cokernel
    tail.name = f"A(n={n})"
    maps.append(kc.projection)
    seq = ExactSeq.chain(maps, {"construction": "cosyzygy_embedding", "n": n})
    seq.notes["tail_in_perp"] = in_perp(tail, n)
    return seq


def torsionless_cosyzygy(m: Mod) -> ExactSeq:
    """0 -> m -> P -> A -> 0 with P projective and A in perp_1 R.

    A is (n-1)-torsionfree whenever m is n-torsionfree, so infinitely
    torsionfree m give infinitely torsionfree A.
    """
    return cosyzygy_embedding(m, 1)


# -- star and transpose sequences of a short exact sequence ----------------------

@dataclass
class _Pres:
    """A projective presentation P1 -> P0 -> X with generator images in X."""
    module: Mod
    p0: Projective
    p1: Projective
    gens: np.ndarray
    coeffs: np.ndarray       # (rank P1, rank P0, d)

    def dual_map(self) -> np.ndarray:
        f, d = self.module.field, self.module.ring.dim
        src, tgt = self.p0.dual(), self.p1.dual()
        if self.p1.rank == 0 or self.p0.rank == 0:
            return f.zeros((tgt.dim, src.dim))
        return projective_map(src, tgt, np.ascontiguousarray(self.coeffs.transpose(1, 0, 2)))


def _pres_of(m: Mod) -> _Pres:
    res = resolution(m, 1)
    c = res.coefficients(1)
    if c is None or c.size == 0:
        c = m.field.zeros((res.term(1).rank, res.term(0).rank, m.ring.dim))
    return _Pres(m, res.term(0), res.term(1), res.gens[0], c)


def _idempotent_part(m: Mod, key, v: np.ndarray) -> np.ndarray:
    return v if key is None else m.field.matmul(m.act(m.ring.idempotents[key]), v)


def _horseshoe(seq: ExactSeq) -> tuple[_Pres, _Pres, _Pres]:
    """Presentations of A, B, C for 0 -> A -> B -> C -> 0 with P^B = P^A + P^C degreewise."""
    fa, gc = seq.maps[1], seq.maps[2]
    a, b, c = fa.source, fa.target, gc.target
    f, ring = a.field, a.ring
    pa, pc = _pres_of(a), _pres_of(c)
    # lift the generators of C through g inside the matching idempotent piece of B
    lift = f.right_inverse(gc.matrix)
    sc = [_idempotent_part(b, key, f.matmul(lift, pc.gens[:, j])) for j, key in enumerate(pc.p0.keys)]
    gens_b = np.hstack([f.matmul(fa.matrix, pa.gens)] + [v.reshape(-1, 1) for v in sc]) \
        if pa.p0.rank + pc.p0.rank else f.zeros((b.dim, 0))
    p0b = Projective(ring, pa.p0.keys + pc.p0.keys)
    p1b = Projective(ring, pa.p1.keys + pc.p1.keys)
    pib = cover_map(b, p0b, gens_b)
    ra, rc, d = pa.p0.rank, pc.p0.rank, ring.dim
    coeffs = f.zeros((p1b.rank, p0b.rank, d))
    coeffs[: pa.p1.rank, :ra] = pa.coeffs
    if pc.p1.rank:
        coeffs[pa.p1.rank:, ra:] = pc.coeffs
        # correction term in P^A making each C-relation vanish in B
        pib_c = pib[:, pa.p0.dim:]
        a_res = resolution(a, 0)
        a_linv = f.left_inverse(fa.matrix)
        p0a_mod = pa.p0.module
        for j, key in enumerate(pc.p1.keys):
            y = p1_image(pc, j)
            v = f.matmul(pib_c, y)
            x = f.neg(f.matmul(a_linv, v))
            lam = _idempotent_part(p0a_mod, key, f.matmul(a_res.section(0), x))
            coeffs[pa.p1.rank + j, :ra] = _coefficients(pa.p0, lam.reshape(-1, 1))[0]
    pb = _Pres(b, p0b, p1b, gens_b, coeffs)
    return pa, pb, pc


def p1_image(p: _Pres, j: int) -> np.ndarray:
    """Image in P0 of the j-th generator of P1."""
    f = p.module.field
    out = f.zeros(p.p0.dim)
    for s in range(p.p0.rank):
        out = f.add(out, p.p0.embed(s, p.coeffs[j, s]))
    return out


@dataclass
class StarSequences:
    """0 -> C* -> B* -> A* -> Coker f* -> 0 and 0 -> Coker f* -> Tr C -> Tr B -> Tr A -> 0."""
    stars: ExactSeq
    transposes: ExactSeq
    notes: dict = dc_field(default_factory=dict)


def star_of_ses(seq: ExactSeq) -> StarSequences:
    """The star and transpose sequences of a short exact sequence, from a horseshoe presentation.

    A and C use their minimal presentations; B uses the horseshoe one, so Tr B
    may differ from the minimal transpose by projective summands.
    """
    if len(seq.modules) != 5:
        raise ModuleError("expected a short exact sequence 0 -> A -> B -> C -> 0")
    pa, pb, pc = _horseshoe(seq)
    f = seq.modules[1].field
    dual = {}
    for tag, p in (("A", pa), ("B", pb), ("C", pc)):
        dm = p.dual_map()
        k, free = f.kernel_free(dm)
        star, inc = submodule(p.p0.dual().module, k, free_rows=free, name=f"{tag}*")
        q = quotient(p.p1.dual().module, dm, name=f"Tr {tag}")
        dual[tag] = (p, dm, k, free, star, inc, q)
    # the horseshoe duals share one ambient: A-slots first, then C-slots
    _, dmb, kb, freeb, sb, _, qb = dual["B"]
    _, _, ka, freea, sa, _, qa = dual["A"]
    _, _, kc, freec, sc, _, qcc = dual["C"]
    na0, nc0 = pa.p0.dual().dim, pc.p0.dual().dim
    na1, nc1 = pa.p1.dual().dim, pc.p1.dual().dim
    # stars: C* -> B* (C-slots) and B* -> A* (A-slots)
    emb_c0 = np.vstack([f.zeros((na0, nc0)), f.eye(nc0)])
    g_star = ModHom(sc, sb, np.ascontiguousarray(f.matmul(emb_c0, kc)[freeb]))
    f_star = ModHom(sb, sa, np.ascontiguousarray(kb[:na0][freea]))
    ck = kernel_cokernel(f_star)
    coker_fs = ck.cokernel
    coker_fs.name = "Coker f*"
    stars = ExactSeq.chain([g_star, f_star, ck.projection], {"sequence": "stars"})
    # transposes: Tr C -> Tr B (C-slots), Tr B -> Tr A (A-slots), connecting map from Coker f*
    emb_c1 = np.vstack([f.zeros((na1, nc1)), f.eye(nc1)])
    tr_cb = ModHom(qcc.module, qb.module, f.mdot(qb.projection.matrix, emb_c1, qcc.section))
    proj_a1 = np.hstack([f.eye(na1), f.zeros((na1, nc1))])
    tr_ba = ModHom(qb.module, qa.module, f.mdot(qa.projection.matrix, proj_a1, qb.section))
    emb_a0 = np.vstack([f.eye(na0), f.zeros((nc0, na0))])
    delta_amb = f.mdot(dmb, emb_a0, ka)[na1:]                         # C-part in P1^{C*}
    delta = f.matmul(qcc.projection.matrix, delta_amb)                # A* -> Tr C
    conn = ModHom(coker_fs, qcc.module, f.matmul(delta, _quotient_section(ck)))
    transposes = ExactSeq.chain([conn, tr_cb, tr_ba], {"sequence": "transposes"})
    return StarSequences(stars, transposes,
                         {"middle_presentation": "horseshoe", "transpose_dims":
                          [qcc.module.dim, qb.module.dim, qa.module.dim]})


def _quotient_section(ck) -> np.ndarray:
    """Linear section of the cokernel projection of a kernel_cokernel record."""
    return ck.projection.field.right_inverse(ck.projection.matrix)


# -- torsionfree resolutions -----------------------------------------------------

def _require_tf(m: Mod, bound: int, what: str):
    st = inf_torsionfree(m, bound)
    if not (st.value and st.certified):
        raise PreconditionError(f"{what} is not certified infinitely torsionfree")


def prop_3_2(seq: ExactSeq, bound: int = DEFAULT_BOUND, check: bool = True) -> ExactSeq:
    """From 0 -> M -> T1 -> T0 -> A -> 0 with T1, T0 infinitely torsionfree,
    build 0 -> M -> P -> T -> A -> 0 with P projective and T infinitely torsionfree.
    """
    if len(seq.modules) != 6:
        raise ModuleError("expected 0 -> M -> T1 -> T0 -> A -> 0")
    i_m, f_map, p_a = seq.maps[1], seq.maps[2], seq.maps[3]
    m, t1, t0, a = seq.modules[1:5]
    if check:
        _require_tf(t1, bound, "T1")
        _require_tf(t0, bound, "T0")
    f = m.field
    emb = torsionless_cosyzygy(t1)
    iota = emb.maps[1]                       # T1 -> P
    p = iota.target
    # first pushout: B = P / M, and Im f -> B
    kc_f = kernel_cokernel(f_map)
    im_f = kc_f.image
    q_b = quotient(p, f.matmul(iota.matrix, i_m.matrix), name="B")
    b = q_b.module
    p_to_b = q_b.projection
    # Im f -> B: lift through the corestriction T1 -> Im f, then P -> B
    core = kc_f.corestriction
    lift = f.right_inverse(core.matrix)
    imf_to_b = ModHom(im_f, b, f.mdot(p_to_b.matrix, iota.matrix, lift))
    # second pushout: T = (T0 + B) / Im f
    po = pushout(kc_f.image_inclusion, imf_to_b)
    t = po.module
    t.name = "T"
    # T -> A: p_a on the T0 part, zero on the B part
    t_to_a = f.matmul(np.hstack([p_a.matrix, f.zeros((a.dim, b.dim))]), po.section)
    out = ExactSeq.chain([_compose(i_m, iota), _compose(p_to_b, po.from_z), ModHom(t, a, t_to_a)],
                         {"construction": "prop_3_2"})
    return out


@dataclass
class Compressed:
    """0 -> H -> T -> M -> 0 with pd H <= n - 1 and T infinitely torsionfree."""
    sequence: ExactSeq
    n: int
    certificates: dict


def _resolution_terms(tres: ExactSeq) -> tuple[list[ModHom], Mod]:
    """Maps T_n -> ... -> T_0 -> M of a padded exact sequence 0 -> T_n -> ... -> T_0 -> M -> 0."""
    maps = tres.maps[1:-1]
    return maps, tres.modules[-2]


def torsionfree_compress(m: Mod, tres: ExactSeq, n: int, bound: int = DEFAULT_BOUND) -> Compressed:
    """Replace a length-n resolution of m by infinitely torsionfree modules with
    0 -> H -> T -> m -> 0, pd H <= n - 1, T infinitely torsionfree.
    """
    maps, target = _resolution_terms(tres)
    if target is not m:
        raise ModuleError("the resolution does not end in the given module")
    if len(maps) != n + 1:
        raise ModuleError(f"expected a resolution of length {n}, got {len(maps) - 1}")
    if not tres.exact:
        raise PreconditionError("the given resolution is not exact")
    terms = tres.modules[1:-2]
    for i, t in enumerate(terms):
        _require_tf(t, bound, f"resolution term {i}")
    seq = _compress(m, maps, n, bound)
    h = seq.modules[1]
    pd = projective_dimension(h, bound)
    tf = inf_torsionfree(seq.modules[2], bound)
    cert = {"exact": seq.exact, "pd_H": pd.to_json(),
            "pd_H_ok": n == 0 and h.dim == 0 or pd.decide_le(max(n - 1, 0)) is True,
            "T_inf_torsionfree": tf.to_json()}
    cert["ok"] = bool(cert["exact"] and cert["pd_H_ok"] and tf.value and tf.certified)
    seq.notes.update({"construction": "torsionfree_compress", "n": n})
    return Compressed(seq, n, cert)


def _compress(m: Mod, maps: list[ModHom], n: int, bound: int) -> ExactSeq:
    f = m.field
    if n == 0:
        # T_0 -> m is an isomorphism; report H = 0, T = m
        z = zero_module(m.ring)
        ident = ModHom(m, m, f.eye(m.dim))
        return ExactSeq.chain([zero_hom(z, m), ident])
    if n == 1:
        d1, eps = maps
        z = zero_module(m.ring)
        four = ExactSeq.chain([zero_hom(z, d1.source), d1, eps])
        long = prop_3_2(four, bound, check=False)
        # 0 -> 0 -> P -> T -> m -> 0; drop the leading zero module
        return ExactSeq.chain([long.maps[2], long.maps[3]])
    # K = Im(T_1 -> T_0); compress its resolution of length n - 1 first
    d1, eps = maps[-2], maps[-1]
    kc = kernel_cokernel(d1)
    k = kc.image
    inner_maps = maps[:-2] + [kc.corestriction]
    inner = _compress(k, inner_maps, n - 1, bound)
    n_inc, t1p_to_k = inner.maps[1], inner.maps[2]
    t1p_to_t0 = _compose(t1p_to_k, kc.image_inclusion)
    four = ExactSeq.chain([n_inc, t1p_to_t0, eps])
    long = prop_3_2(four, bound, check=False)
    # 0 -> N -> P_1 -> T -> m -> 0 gives H = P_1 / N
    p1_to_t, t_to_m = long.maps[2], long.maps[3]
    kc2 = kernel_cokernel(p1_to_t)
    h = kc2.image
    h.name = "H"
    return ExactSeq.chain([kc2.image_inclusion, t_to_m])


def syzygy_t_resolution(m: Mod, n: int) -> ExactSeq:
    """0 -> Omega^n m -> P_{n-1} -> ... -> P_0 -> m -> 0 from the (minimal) resolution."""
    res = resolution(m, max(n - 1, 0))
    if n == 0:
        return ExactSeq.chain([ModHom(m, m, m.field.eye(m.dim))])
    maps = [ModHom(res.syzygy(n), res.term(n - 1).module, res.inclusions[n])]
    for i in range(n - 1, 0, -1):
        maps.append(res.differential_hom(i))
    maps.append(res.differential_hom(0))
    return ExactSeq.chain(maps, {"construction": "syzygy_t_resolution", "n": n})


@dataclass
class FinitePdEmbedding:
    """0 -> M -> N -> T -> 0 with pd N <= n and T in perp_1 R, infinitely torsionfree."""
    sequence: ExactSeq
    n: int
    certificates: dict


def embed_into_finite_pd(m: Mod, n: int, tres: ExactSeq | None = None,
                         bound: int = DEFAULT_BOUND) -> FinitePdEmbedding:
    f = m.field
    if tres is None:
        tres = syzygy_t_resolution(m, n)
    comp = torsionfree_compress(m, tres, n, bound)
    if not comp.certificates["ok"]:
        raise PreconditionError(f"compression step failed: {comp.certificates}")
    h_inc, tp_to_m = comp.sequence.maps[1], comp.sequence.maps[2]
    tprime = tp_to_m.source
    emb = torsionless_cosyzygy(tprime)
    iota, p_to_t = emb.maps[1], emb.maps[2]
    p = iota.target
    q = quotient(p, f.matmul(iota.matrix, h_inc.matrix), name="N")
    nmod = q.module
    sec_m = f.right_inverse(tp_to_m.matrix)
    m_to_n = ModHom(m, nmod, f.mdot(q.projection.matrix, iota.matrix, sec_m))
    n_to_t = ModHom(nmod, p_to_t.target, f.matmul(p_to_t.matrix, q.section))
    seq = ExactSeq.chain([m_to_n, n_to_t], {"construction": "embed_into_finite_pd", "n": n})
    t = p_to_t.target
    pd = projective_dimension(nmod, bound)
    tf = inf_torsionfree(t, bound)
    cert = {"exact": seq.exact, "pd_N": pd.to_json(), "pd_N_ok": pd.decide_le(n) is True,
            "T_in_perp1": in_perp(t, 1), "T_inf_torsionfree": tf.to_json()}
    cert["ok"] = bool(cert["exact"] and cert["pd_N_ok"] and cert["T_in_perp1"] and tf.value
                      and tf.certified)
    return FinitePdEmbedding(seq, n, cert)
