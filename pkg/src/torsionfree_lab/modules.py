"""Modules as tuples of action matrices, homomorphisms, and exact sequences.

A right module over ``A`` is stored as a left module over ``A.op``; the side
is read off the ring.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import Algebra, ValidationReport
from .errors import ModuleError, UnsupportedError
from .linalg import Field


class Mod:
    """A module given by one n x n action matrix per basis element of its ring.

    ``action`` may be a zero-argument callable (with ``dim`` given) to defer
    building the dense stack, which large projectives rarely need.
    """

    def __init__(self, ring: Algebra, action, name: str = "", meta: dict | None = None,
                 dim: int | None = None):
        self.ring = ring
        if callable(action):
            if dim is None:
                raise ModuleError("a deferred action needs an explicit dimension")
            self._action, self._builder, self._dim = None, action, dim
        else:
            self._check(action)
            self._action, self._builder, self._dim = action, None, action.shape[1]
        self.name = name
        self.meta = meta or {}
        self._cache: dict = {}
        self._lock = threading.RLock()

    def _check(self, action):
        if action.ndim != 3 or action.shape[0] != self.ring.dim or action.shape[1] != action.shape[2]:
            raise ModuleError(f"action must have shape ({self.ring.dim}, n, n), got {action.shape}")

    @property
    def action(self) -> np.ndarray:
        if self._action is None:
            with self._lock:
                if self._action is None:
                    act = self._builder()
                    self._check(act)
                    self._action = act
        return self._action

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def side(self) -> str:
        return "right" if self.ring.is_opposite else "left"

    @property
    def algebra(self) -> Algebra:
        """The algebra this module is a left or right module over."""
        return self.ring.base

    def act(self, x) -> np.ndarray:
        return self.field.lincomb(x, self.action)

    def key(self) -> tuple:
        """Canonical form used for equality of syzygies."""
        if self.field.is_prime:
            return (self.dim, self.action.tobytes())
        return (self.dim, tuple(str(x) for x in self.action.ravel()))

    def same_as(self, other: "Mod") -> bool:
        return self.ring is other.ring and self.key() == other.key()

    def __repr__(self):
        return f"Mod({self.name or '?'}, dim={self.dim}, {self.side} over {self.algebra.name or '?'})"


def _check_ring(*mods: Mod):
    r = mods[0].ring
    for m in mods[1:]:
        if m.ring is not r:
            raise ModuleError("modules live over different algebras or sides")
    return r


class ModHom:
    def __init__(self, source: Mod, target: Mod, matrix: np.ndarray):
        _check_ring(source, target)
        if matrix.shape != (target.dim, source.dim):
            raise ModuleError(f"hom matrix shape {matrix.shape} != ({target.dim}, {source.dim})")
        self.source = source
        self.target = target
        self.matrix = matrix

    @property
    def field(self) -> Field:
        return self.source.field

    def is_intertwining(self) -> bool:
        f = self.field
        for l in range(self.source.ring.dim):
            lhs = f.matmul(self.matrix, self.source.action[l])
            rhs = f.matmul(self.target.action[l], self.matrix)
            if not f.equal(lhs, rhs):
                return False
        return True

    def rank(self) -> int:
        return self.field.rank(self.matrix)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def then(self, other: "ModHom") -> "ModHom":
        """other after self."""
        if other.source is not self.target and other.source.key() != self.target.key():
            raise ModuleError("composition of non-matching homs")
        return ModHom(self.source, other.target, self.field.matmul(other.matrix, self.matrix))

    def __repr__(self):
        return f"ModHom({self.source.dim} -> {self.target.dim}, rank {self.rank()})"


def zero_module(ring: Algebra) -> Mod:
    return Mod(ring, ring.field.zeros((ring.dim, 0, 0)), name="0")


def identity(m: Mod) -> ModHom:
    return ModHom(m, m, m.field.eye(m.dim))


def zero_hom(m: Mod, n: Mod) -> ModHom:
    return ModHom(m, n, m.field.zeros((n.dim, m.dim)))


@dataclass
class ExactSeq:
    """modules[0] -> modules[1] -> ... with maps[i]: modules[i] -> modules[i+1]."""
    modules: list
    maps: list
    notes: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if len(self.maps) != len(self.modules) - 1:
            raise ModuleError("an exact sequence needs one map between consecutive modules")
        for i, h in enumerate(self.maps):
            if h.source is not self.modules[i] or h.target is not self.modules[i + 1]:
                raise ModuleError(f"map {i} does not connect modules {i} and {i + 1}")

    @classmethod
    def short(cls, f: ModHom, g: ModHom, notes: dict | None = None) -> "ExactSeq":
        """0 -> A -> B -> C -> 0 from f: A -> B and g: B -> C."""
        return cls.chain([f, g], notes)

    @classmethod
    def chain(cls, maps: list, notes: dict | None = None) -> "ExactSeq":
        """Pad a composable chain of maps with zero modules at both ends."""
        first, last = maps[0].source, maps[-1].target
        z0, z1 = zero_module(first.ring), zero_module(last.ring)
        mods = [z0, first] + [h.target for h in maps] + [z1]
        homs = [zero_hom(z0, first)] + list(maps) + [zero_hom(last, z1)]
        return cls(mods, homs, dict(notes or {}))

    def certificate(self) -> dict:
        """Per-node exactness (image = kernel) and intertwining of every map."""
        f = self.modules[0].field
        nodes = []
        for i in range(1, len(self.modules) - 1):
            a, b = self.maps[i - 1], self.maps[i]
            comp_zero = f.is_zero(f.matmul(b.matrix, a.matrix))
            ranks = a.rank() + b.rank() == self.modules[i].dim
            nodes.append(bool(comp_zero and ranks))
        homs = [h.is_intertwining() for h in self.maps]
        return {"nodes": nodes, "homs": homs, "exact": all(nodes) and all(homs)}

    @property
    def exact(self) -> bool:
        return self.certificate()["exact"]

    def dims(self) -> list[int]:
        return [m.dim for m in self.modules]

    def alternating_sum(self) -> int:
        return sum((-1) ** i * m.dim for i, m in enumerate(self.modules))


# -- validation and constructors ------------------------------------------

def validate_module(m: Mod) -> ValidationReport:
    f, ring = m.field, m.ring
    rep = ValidationReport()
    n, d = m.dim, ring.dim
    if not f.equal(m.act(ring.unit), f.eye(n)):
        rep.add("unit acts as identity", (), "rho(1) is not the identity")
    flat = m.action.reshape(d, n * n)
    for i in range(d):
        for j in range(d):
            lhs = f.matmul(m.action[i], m.action[j])
            rhs = f.matmul(ring.table[i, j].reshape(1, d), flat).reshape(n, n)
            if not f.equal(lhs, rhs):
                rep.add("multiplicativity", (i, j), f"rho(e_{i}) rho(e_{j}) differs from rho(e_{i} e_{j})")
                return rep
    return rep


def ring_for(a: Algebra, side: str) -> Algebra:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return a if side == "left" else a.op


def regular_module(a: Algebra, side: str = "left") -> Mod:
    ring = ring_for(a, side)
    m = Mod(ring, ring.left_mult, name="R")
    return m


def free_module(a: Algebra, rank: int, side: str = "left") -> Mod:
    ring = ring_for(a, side)
    return Projective(ring, [None] * rank).module


def block_diag(f: Field, blocks: list[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = f.zeros((rows, cols))
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def _stack_actions(ring: Algebra, actions: list[np.ndarray]) -> np.ndarray:
    f = ring.field
    n = sum(a.shape[1] for a in actions)
    out = f.zeros((ring.dim, n, n))
    o = 0
    for a in actions:
        k = a.shape[1]
        out[:, o:o + k, o:o + k] = a
        o += k
    return out


class Projective:
    """A direct sum of summands R e_k; key None stands for R itself."""

    def __init__(self, ring: Algebra, keys):
        self.ring = ring
        self.keys = tuple(keys)
        self.summands = [ring.summand(k) for k in self.keys]
        self.sizes = [s.dim for s in self.summands]
        self.offsets = list(np.cumsum([0] + self.sizes[:-1])) if self.keys else []
        self.dim = int(sum(self.sizes))
        self._module: Mod | None = None

    @property
    def rank(self) -> int:
        return len(self.keys)

    @property
    def module(self) -> Mod:
        if self._module is None:
            f = self.ring.field
            summ = self.summands
            if self.keys:
                def act():
                    return _stack_actions(self.ring, [s.action for s in summ])
            else:
                act = f.zeros((self.ring.dim, 0, 0))
            self._module = Mod(self.ring, act, name=f"P{list(self.keys)}", meta={"projective": self},
                               dim=self.dim)
        return self._module

    def block(self, slot: int) -> slice:
        o = int(self.offsets[slot])
        return slice(o, o + self.sizes[slot])

    def embed(self, slot: int, element: np.ndarray) -> np.ndarray:
        f = self.ring.field
        v = f.zeros(self.dim)
        v[self.block(slot)] = f.matmul(self.summands[slot].coords, element)
        return v

    def component(self, vec: np.ndarray, slot: int) -> np.ndarray:
        return self.ring.field.matmul(self.summands[slot].basis, vec[self.block(slot)])

    def coords_matrix(self) -> np.ndarray:
        """Block-diagonal coordinate map from R^rank (ambient) to this module."""
        return block_diag(self.ring.field, [s.coords for s in self.summands])

    def basis_matrix(self) -> np.ndarray:
        return block_diag(self.ring.field, [s.basis for s in self.summands])

    def dual(self) -> "Projective":
        return Projective(self.ring.op, self.keys)


def projective_map(src: Projective, tgt: Projective, coeffs: np.ndarray) -> np.ndarray:
    """Matrix of the map sending generator s of src to sum_t coeffs[s, t] in slot t of tgt.

    coeffs has shape (rank src, rank tgt, d); coeffs[s, t] must lie in e_s' R e_t.
    """
    ring = src.ring
    f = ring.field
    if src.rank == 0 or tgt.rank == 0:
        return f.zeros((tgt.dim, src.dim))
    d = ring.dim
    big = f.zeros((tgt.rank * d, src.rank * d))
    for l in range(d):
        a_l = coeffs[:, :, l]
        if f.is_zero(a_l):
            continue
        big = f.add(big, f.kron(np.ascontiguousarray(a_l.T), ring.right_mult[l]))
    return f.mdot(tgt.coords_matrix(), big, src.basis_matrix())


def act_all(m: Mod, vecs: np.ndarray) -> np.ndarray:
    """Stack (d, n, k) of every basis element of the ring acting on the columns of vecs."""
    f, d, n = m.field, m.ring.dim, m.dim
    k = vecs.shape[1]
    proj = m.meta.get("projective") if m.meta else None
    if proj is None or proj.rank <= 1:
        return f.matmul(m.action.reshape(d * n, n), vecs).reshape(d, n, k)
    # block-diagonal action: group slots sharing a summand and act once per group
    out = f.zeros((d, n, k))
    groups: dict = {}
    for slot, key in enumerate(proj.keys):
        groups.setdefault(key, []).append(slot)
    for key, slots in groups.items():
        summ = proj.summands[slots[0]]
        size = summ.dim
        if size == 0:
            continue
        rows = np.concatenate([np.arange(proj.block(s).start, proj.block(s).stop) for s in slots])
        sub = vecs[rows].reshape(len(slots), size, k).transpose(1, 0, 2).reshape(size, -1)
        img = f.matmul(summ.action.reshape(d * size, size), sub)
        img = img.reshape(d, size, len(slots), k).transpose(0, 2, 1, 3).reshape(d, -1, k)
        out[:, rows, :] = img
    return out


# -- sub and quotient modules --------------------------------------------

def submodule(m: Mod, basis: np.ndarray, free_rows=None, check: bool = False, name: str = "") -> tuple[Mod, ModHom]:
    """Submodule spanned by independent columns; returns it with its inclusion."""
    f = m.field
    k = basis.shape[1]
    if k == 0:
        z = zero_module(m.ring)
        return z, ModHom(z, m, f.zeros((m.dim, 0)))
    flat = act_all(m, basis)
    if free_rows is not None:
        act = np.ascontiguousarray(flat[:, free_rows, :])
    else:
        linv = f.left_inverse(basis)
        act = f.matmul(linv, flat.transpose(1, 0, 2).reshape(m.dim, -1)).reshape(k, m.ring.dim, k)
        act = np.ascontiguousarray(act.transpose(1, 0, 2))
    sub = Mod(m.ring, act, name=name)
    if check:
        for l in range(m.ring.dim):
            if not f.equal(flat[l], f.matmul(basis, act[l])):
                raise ModuleError("subspace is not a submodule", witness=(l,))
    return sub, ModHom(sub, m, basis)


@dataclass
class Quotient:
    module: Mod
    projection: ModHom
    section: np.ndarray   # linear right inverse of the projection


def quotient(m: Mod, span: np.ndarray, name: str = "") -> Quotient:
    """m / (submodule spanned by the columns of span)."""
    f = m.field
    n = m.dim
    if span.shape[1]:
        red, piv = f.rref(np.ascontiguousarray(span.T))
        red = red[: len(piv)]
    else:
        red, piv = f.zeros((0, n)), []
    pset = set(piv)
    rest = [c for c in range(n) if c not in pset]
    proj = f.zeros((len(rest), n))
    for r, c in enumerate(rest):
        proj[r, c] = f.one
    if piv and rest:
        proj[:, piv] = f.neg(np.ascontiguousarray(red[:, rest].T))
    d = m.ring.dim
    if rest:
        k = len(rest)
        imgs = act_all(m, f.eye(n)[:, rest])                         # (d, n, k)
        flat = f.matmul(proj, imgs.transpose(1, 0, 2).reshape(n, d * k)).reshape(k, d, k)
        act = np.ascontiguousarray(flat.transpose(1, 0, 2))
    else:
        act = f.zeros((d, 0, 0))
    q = Mod(m.ring, act, name=name)
    sec = f.zeros((n, len(rest)))
    for r, c in enumerate(rest):
        sec[c, r] = f.one
    return Quotient(q, ModHom(m, q, proj), sec)


def cyclic_span(m: Mod, vectors: np.ndarray) -> np.ndarray:
    """Canonical basis of the submodule generated by the given columns."""
    f = m.field
    if vectors.ndim == 1:
        vectors = vectors.reshape(-1, 1)
    if vectors.shape[1] == 0 or m.dim == 0:
        return f.zeros((m.dim, 0))
    imgs = act_all(m, vectors).transpose(1, 0, 2).reshape(m.dim, -1)
    return f.colspace(imgs)


def radical_span(m: Mod) -> np.ndarray:
    """Basis of J m."""
    f = m.field
    jc = m.ring.radical_cols
    if jc.shape[1] == 0 or m.dim == 0:
        return f.zeros((m.dim, 0))
    acts = f.matmul(jc.T, m.action.reshape(m.ring.dim, -1)).reshape(-1, m.dim, m.dim)
    return f.colspace(np.hstack(list(acts)))


def semisimple_top(m: Mod) -> tuple[Mod, ModHom]:
    if m.ring.radical is None:
        raise UnsupportedError("radical unavailable")
    q = quotient(m, radical_span(m), name=f"top({m.name})")
    return q.module, q.projection


def simple_modules(a: Algebra, side: str = "left") -> list[Mod]:
    ring = ring_for(a, side)
    if not ring.has_minimal_data:
        raise UnsupportedError("simple modules need radical and idempotents")
    out = []
    for k in range(len(ring.idempotents)):
        top, _ = semisimple_top(Projective(ring, [k]).module)
        top.name = f"S{k + 1}"
        out.append(top)
    return out


def indecomposable_projective(a: Algebra, k: int, side: str = "left") -> Mod:
    m = Projective(ring_for(a, side), [k]).module
    m.name = f"P{k + 1}"
    return m


# -- kernels, sums, pushouts ----------------------------------------------

@dataclass
class KernelCokernel:
    kernel: Mod
    inclusion: ModHom
    image: Mod
    image_inclusion: ModHom
    corestriction: ModHom      # source -> image
    cokernel: Mod
    projection: ModHom

    def sequence(self) -> ExactSeq:
        h = ModHom(self.inclusion.target, self.projection.source,
                   self.image_inclusion.field.matmul(self.image_inclusion.matrix, self.corestriction.matrix))
        return ExactSeq.chain([self.inclusion, h, self.projection])


def kernel_cokernel(h: ModHom) -> KernelCokernel:
    f = h.field
    k, free = f.kernel_free(h.matrix)
    ker, inc = submodule(h.source, k, free_rows=free, name=f"ker")
    img_basis = f.colspace(h.matrix)
    img, img_inc = submodule(h.target, img_basis, name="im")
    core = f.matmul(f.left_inverse(img_basis), h.matrix) if img_basis.shape[1] else f.zeros((0, h.source.dim))
    q = quotient(h.target, img_basis, name="coker")
    return KernelCokernel(ker, inc, img, img_inc, ModHom(h.source, img, core), q.module, q.projection)


@dataclass
class DirectSum:
    module: Mod
    injections: list
    projections: list


def direct_sum(ms: list[Mod]) -> DirectSum:
    if not ms:
        raise ModuleError("direct sum of an empty list")
    ring = _check_ring(*ms)
    f = ring.field
    total = _stack_actions(ring, [m.action for m in ms]) if ms else f.zeros((ring.dim, 0, 0))
    s = Mod(ring, total, name=" + ".join(m.name or "?" for m in ms))
    inj, proj = [], []
    o = 0
    for m in ms:
        i = f.zeros((s.dim, m.dim))
        p = f.zeros((m.dim, s.dim))
        for c in range(m.dim):
            i[o + c, c] = f.one
            p[c, o + c] = f.one
        inj.append(ModHom(m, s, i))
        proj.append(ModHom(s, m, p))
        o += m.dim
    return DirectSum(s, inj, proj)


@dataclass
class Pushout:
    module: Mod
    from_y: ModHom
    from_z: ModHom
    section: np.ndarray   # linear section of (Y + Z) -> P


def pushout(fy: ModHom, gz: ModHom) -> Pushout:
    """P = (Y + Z) / {(f(x), -g(x))} for f: X -> Y, g: X -> Z."""
    if fy.source is not gz.source:
        raise ModuleError("pushout needs a common source")
    f = fy.field
    ds = direct_sum([fy.target, gz.target])
    rel = np.vstack([fy.matrix, f.neg(gz.matrix)])
    q = quotient(ds.module, rel, name="pushout")
    p = q.projection.matrix
    return Pushout(q.module,
                   ModHom(fy.target, q.module, f.matmul(p, ds.injections[0].matrix)),
                   ModHom(gz.target, q.module, f.matmul(p, ds.injections[1].matrix)),
                   q.section)


def vector_dual(m: Mod) -> Mod:
    """D m = Hom_k(m, k) with the transposed action, a module over the opposite ring."""
    act = np.ascontiguousarray(m.action.transpose(0, 2, 1))
    return Mod(m.ring.op, act, name=f"D({m.name})" if m.name else "D")


def vector_dual_hom(h: ModHom, dsource: Mod | None = None, dtarget: Mod | None = None) -> ModHom:
    ds = dsource or vector_dual(h.source)
    dt = dtarget or vector_dual(h.target)
    return ModHom(dt, ds, np.ascontiguousarray(h.matrix.T))


def hom_space_naive(m: Mod, n: Mod) -> list[ModHom]:
    """Hom basis by solving X rho_m(e_l) = rho_n(e_l) X for every basis element (oracle)."""
    _check_ring(m, n)
    f = m.field
    a, b = m.dim, n.dim
    if a == 0 or b == 0:
        return []
    eqs = []
    eye_a, eye_b = f.eye(a), f.eye(b)
    for l in range(m.ring.dim):
        # row-major vec(X): vec(X P) = (I kron P^T) vec X, vec(Q X) = (Q kron I) vec X
        eqs.append(f.sub(f.kron(eye_b, np.ascontiguousarray(m.action[l].T)), f.kron(n.action[l], eye_a)))
    k = f.kernel(np.vstack(eqs))
    return [ModHom(m, n, np.ascontiguousarray(k[:, j].reshape(b, a))) for j in range(k.shape[1])]
