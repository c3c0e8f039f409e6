"""Hom, Ext, the star dual M* = Hom(M, R), evaluation maps, transposes and extensions.

Everything is read off a projective resolution: Hom(R e, N) = e N, so the
complex Hom(P_*, N) lives in direct sums of the subspaces e_k N.
"""
from __future__ import annotations

import numpy as np

from .errors import ModuleError
from .modules import (ExactSeq, Mod, ModHom, Projective, block_diag, direct_sum, projective_map,
                      pushout, quotient, regular_module, submodule)
from .resolution import Resolution, cover_map, resolution, use_minimal


def _regular(ring) -> Mod:
    m = ring._cache.get("regular")
    if m is None:
        m = regular_module(ring.base, "right" if ring.is_opposite else "left")
        ring._cache["regular"] = m
    return m


def regular(ring) -> Mod:
    """The regular module of a ring (shared instance, so Ext caches are reused)."""
    return _regular(ring)


def idempotent_basis(n: Mod, key) -> np.ndarray:
    """Basis of e_key N (all of N for key None)."""
    ck = ("ebasis", key)
    b = n._cache.get(ck)
    if b is None:
        f = n.field
        b = f.eye(n.dim) if key is None else f.colspace(n.act(n.ring.idempotents[key]))
        n._cache[ck] = b
    return b


class HomComplex:
    """The cochain complex Hom(P_*, N) for a resolution P_* of M."""

    def __init__(self, res: Resolution, target: Mod):
        if res.ring is not target.ring:
            raise ModuleError("Hom between modules over different rings or sides")
        self.res = res
        self.target = target
        self._E: dict = {}
        self._D: dict = {}
        self._rank: dict = {}

    def E(self, i: int) -> np.ndarray:
        if i not in self._E:
            f = self.target.field
            keys = self.res.term(i).keys
            self._E[i] = block_diag(f, [idempotent_basis(self.target, k) for k in keys]) if keys \
                else f.zeros((0, 0))
        return self._E[i]

    def D(self, i: int) -> np.ndarray:
        """Ambient matrix of d_i^*: (+N over slots of P_{i-1}) -> (+N over slots of P_i)."""
        if i not in self._D:
            f, n = self.target.field, self.target
            c = self.res.coefficients(i)
            r_i, r_prev = self.res.term(i).rank, self.res.term(i - 1).rank
            out = f.zeros((r_i * n.dim, r_prev * n.dim))
            if r_i and r_prev and n.dim:
                for l in range(n.ring.dim):
                    a_l = c[:, :, l]
                    if f.is_zero(a_l):
                        continue
                    out = f.add(out, f.kron(np.ascontiguousarray(a_l), n.action[l]))
            self._D[i] = out
        return self._D[i]

    def cochain_map(self, i: int) -> np.ndarray:
        """d_{i+1}^* restricted to C^i (in E(i) coordinates), landing in ambient coordinates."""
        return self.target.field.matmul(self.D(i + 1), self.E(i))

    def rank_out(self, i: int) -> int:
        if i < 0:
            return 0
        if i not in self._rank:
            self.res.extend_to(i + 1)
            if self.res.term(i + 1).rank == 0 or self.E(i).shape[1] == 0:
                self._rank[i] = 0
            else:
                self._rank[i] = self.target.field.rank(self.cochain_map(i))
        return self._rank[i]

    def ext_dim(self, i: int) -> int:
        return self.E(i).shape[1] - self.rank_out(i) - self.rank_out(i - 1)


def hom_complex(m: Mod, n: Mod, minimal: bool | None = None) -> HomComplex:
    res = resolution(m, 0, minimal)
    store = res.__dict__.setdefault("_homcx", {})
    entry = store.get(id(n))
    if entry is None or entry[0] is not n:
        entry = (n, HomComplex(res, n))
        store[id(n)] = entry
    return entry[1]


def ext_dim(m: Mod, n: Mod, i: int, minimal: bool | None = None) -> int:
    return hom_complex(m, n, minimal).ext_dim(i)


def ext_dims(m: Mod, n: Mod, max_i: int, minimal: bool | None = None) -> list[int]:
    cx = hom_complex(m, n, minimal)
    return [cx.ext_dim(i) for i in range(max_i + 1)]


def first_nonvanishing(m: Mod, n: Mod, degrees, minimal: bool | None = None) -> int | None:
    """First degree in the iterable with Ext^i(m, n) != 0, stopping early."""
    cx = hom_complex(m, n, minimal)
    for i in degrees:
        if cx.ext_dim(i):
            return i
    return None


def hom_space(m: Mod, n: Mod) -> list[ModHom]:
    cx = hom_complex(m, n)
    f = m.field
    res = cx.res
    p0 = res.term(0)
    if p0.rank == 0 or n.dim == 0:
        return []
    if res.term(1).rank:
        k = f.kernel(cx.cochain_map(0))
    else:
        k = f.eye(cx.E(0).shape[1])
    vals = f.matmul(cx.E(0), k)
    sec = res.section(0)
    out = []
    for j in range(k.shape[1]):
        v = vals[:, j].reshape(p0.rank, n.dim).T
        phi = cover_map(n, p0, np.ascontiguousarray(v))
        out.append(ModHom(m, n, f.matmul(phi, sec)))
    return out


# -- duals over the opposite ring ------------------------------------------

def dual_term(res: Resolution, i: int) -> Projective:
    store = res.__dict__.setdefault("_duals", {})
    if i not in store:
        store[i] = res.term(i).dual()
    return store[i]


def dual_differential(res: Resolution, i: int) -> np.ndarray:
    """Matrix of d_i^*: P_{i-1}^* -> P_i^* over the opposite ring (i >= 1)."""
    store = res.__dict__.setdefault("_ddiff", {})
    if i not in store:
        c = res.coefficients(i)
        src, tgt = dual_term(res, i - 1), dual_term(res, i)
        coeffs = np.ascontiguousarray(c.transpose(1, 0, 2)) if c is not None and c.size \
            else res.module.field.zeros((src.rank, tgt.rank, res.ring.dim))
        store[i] = projective_map(src, tgt, coeffs)
    return store[i]


def _star_data(m: Mod, minimal: bool | None = None):
    mn = use_minimal(m, minimal)
    ck = ("star", mn)
    data = m._cache.get(ck)
    if data is None:
        f = m.field
        res = resolution(m, 1, mn)
        p0s = dual_term(res, 0)
        delta = dual_differential(res, 1)
        k, free = f.kernel_free(delta)
        star, inc = submodule(p0s.module, k, free_rows=free, name=f"({m.name})*" if m.name else "*")
        star.meta["star_of"] = m
        data = (star, k, free, res)
        m._cache[ck] = data
    return data


def star_dual(m: Mod, minimal: bool | None = None) -> Mod:
    """M* = Hom(M, R), a module over the opposite ring."""
    return _star_data(m, minimal)[0]


def star_hom(m: Mod, vec: np.ndarray, minimal: bool | None = None) -> np.ndarray:
    """The homomorphism M -> R (a d x dim M matrix) of an element of M*."""
    star, k, free, res = _star_data(m, minimal)
    f = m.field
    p0s = dual_term(res, 0)
    u = f.matmul(k, vec)
    vals = np.stack([p0s.component(u, s) for s in range(p0s.rank)], axis=1) if p0s.rank \
        else f.zeros((m.ring.dim, 0))
    phi = cover_map(_regular(m.ring), res.term(0), vals)
    return f.matmul(phi, res.section(0))


def star_coordinates(m: Mod, hom: np.ndarray, minimal: bool | None = None) -> np.ndarray:
    """Coordinates in M* of a homomorphism M -> R given as a d x dim M matrix."""
    star, k, free, res = _star_data(m, minimal)
    f = m.field
    p0s = dual_term(res, 0)
    gens = res.gens[0]
    vec = f.zeros(p0s.dim)
    for s in range(p0s.rank):
        vec = f.add(vec, p0s.embed(s, f.matmul(hom, gens[:, s])))
    return vec[free]


def star_map(h: ModHom, minimal: bool | None = None) -> ModHom:
    """h*: B* -> A* for h: A -> B."""
    a_star = star_dual(h.source, minimal)
    b_star = star_dual(h.target, minimal)
    f = h.field
    cols = []
    for j in range(b_star.dim):
        e = f.zeros(b_star.dim)
        e[j] = f.one
        hb = star_hom(h.target, e, minimal)
        cols.append(star_coordinates(h.source, f.matmul(hb, h.matrix), minimal))
    mat = np.stack(cols, axis=1) if cols else f.zeros((a_star.dim, 0))
    return ModHom(b_star, a_star, mat)


def double_star(m: Mod) -> Mod:
    return star_dual(star_dual(m))


def evaluation_hom(m: Mod) -> ModHom:
    """ev: M -> M**, ev(x)(phi) = phi(x)."""
    f = m.field
    y = star_dual(m)
    yy = star_dual(y)
    _, kyy, free_yy, res_y = _star_data(y)
    p0 = dual_term(res_y, 0)
    gens = res_y.gens[0]
    blocks = []
    for l in range(p0.rank):
        hl = star_hom(m, gens[:, l])
        blocks.append(f.matmul(p0.summands[l].coords, hl))
    v = np.vstack(blocks) if blocks else f.zeros((0, m.dim))
    if not f.equal(f.matmul(kyy, v[free_yy]), v):
        raise ModuleError("evaluation map does not land in the double dual")
    return ModHom(m, yy, np.ascontiguousarray(v[free_yy]))


def transpose(m: Mod, minimal: bool | None = None) -> Mod:
    """Tr M = Coker(P_0^* -> P_1^*) over the opposite ring."""
    mn = use_minimal(m, minimal)
    ck = ("tr", mn)
    tr = m._cache.get(ck)
    if tr is None:
        res = resolution(m, 1, mn)
        q = quotient(dual_term(res, 1).module, dual_differential(res, 1),
                     name=f"Tr({m.name})" if m.name else "Tr")
        tr = q.module
        tr.meta["transpose_of"] = m
        if not mn:
            tr.meta["projective_summand_ambiguity"] = True
        m._cache[ck] = tr
    return tr


def ext_module(m: Mod, i: int, minimal: bool | None = None) -> Mod:
    """Ext^i(M, R) as a module over the opposite ring."""
    f = m.field
    res = resolution(m, i + 1, minimal)
    pis = dual_term(res, i)
    out = dual_differential(res, i + 1)
    k, free = f.kernel_free(out)
    z, _ = submodule(pis.module, k, free_rows=free)
    if i == 0:
        return z
    img = dual_differential(res, i)
    return quotient(z, np.ascontiguousarray(img[free]), name=f"Ext^{i}").module


# -- extensions ---------------------------------------------------------------

def ext1_classes(c: Mod, a: Mod, minimal: bool | None = None) -> tuple[HomComplex, list[np.ndarray]]:
    """Cocycles (in E(1) coordinates) representing a basis of Ext^1(c, a), in echelon order."""
    cx = hom_complex(c, a, minimal)
    f = c.field
    e1 = cx.E(1)
    if e1.shape[1] == 0:
        return cx, []
    cx.res.extend_to(2)
    z = f.kernel(cx.cochain_map(1)) if cx.res.term(2).rank else f.eye(e1.shape[1])
    if z.shape[1] == 0:
        return cx, []
    bnd = f.matmul(f.left_inverse(e1), cx.cochain_map(0)) if cx.E(0).shape[1] else f.zeros((e1.shape[1], 0))
    base = f.colspace(bnd)
    rank = base.shape[1]
    classes = []
    zc = f.colspace(z)
    for j in range(zc.shape[1]):
        v = zc[:, j]
        trial = np.hstack([base, v.reshape(-1, 1)])
        if f.rank(trial) > rank:
            base, rank = trial, rank + 1
            classes.append(v)
    return cx, classes


def extension_from_cocycle(c: Mod, a: Mod, index: int, minimal: bool | None = None) -> ExactSeq:
    """0 -> a -> E -> c -> 0 for the index-th basis class of Ext^1(c, a); index 0 is split."""
    f = c.field
    cx, classes = ext1_classes(c, a, minimal)
    if not 0 <= index <= len(classes):
        raise IndexError(f"class index {index} out of range 0..{len(classes)}")
    if index == 0:
        ds = direct_sum([a, c])
        return ExactSeq.short(ds.injections[0], ds.projections[1], {"class": 0})
    res = cx.res
    p1 = res.term(1)
    vals = f.matmul(cx.E(1), classes[index - 1]).reshape(p1.rank, a.dim).T
    phi = cover_map(a, p1, np.ascontiguousarray(vals))
    omega = res.syzygy(1)
    psi = ModHom(omega, a, f.matmul(phi, res.section(1)))
    iota = ModHom(omega, res.term(0).module, res.inclusions[1])
    po = pushout(iota, psi)
    to_c = f.matmul(np.hstack([res.covers[0], f.zeros((c.dim, a.dim))]), po.section)
    return ExactSeq.short(po.from_z, ModHom(po.module, c, to_c), {"class": index})
