"""Projective covers, presentations and truncated projective resolutions."""
from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .errors import MinimalityUnavailable, ResourceLimit
from .modules import Mod, ModHom, Projective, act_all, radical_span, submodule


# largest projective term (as a vector space) a resolution may build
TERM_DIM_BUDGET = 3072


@dataclass
class Cover:
    projective: Projective
    gens: np.ndarray       # n x rank, generator images in the module
    pi: np.ndarray         # n x dim P, surjection P -> module


def _in_span(f, red: np.ndarray, piv: list[int], v: np.ndarray) -> bool:
    if not piv:
        return f.is_zero(v)
    return f.equal(f.matmul(v[piv].reshape(1, -1), red[: len(piv)])[0], v)


def cover(m: Mod, minimal: bool) -> Cover:
    """Projective cover; minimal covers walk e_i m modulo J m, free covers walk coordinates."""
    ring, f, n = m.ring, m.field, m.dim
    if minimal and not ring.has_minimal_data:
        raise MinimalityUnavailable("minimal covers need radical and idempotents")
    keys, gens = [], []
    if minimal:
        # R v = K v + J v with J v inside J m, so greedy selection modulo J m is
        # the row rank profile of [J m | candidates]
        span = radical_span(m)
        cand, ckeys = [], []
        for k in range(len(ring.idempotents)):
            eb = f.colspace(m.act(ring.idempotents[k]))
            cand.append(eb)
            ckeys.extend([k] * eb.shape[1])
        stack = np.hstack([span] + cand) if cand else span
        _, piv = f.rref(stack)
        base = span.shape[1]
        for c in piv:
            if c >= base:
                keys.append(ckeys[c - base])
                gens.append(stack[:, c])
    else:
        red, piv = f.zeros((0, n)), []
        eye = f.eye(n)
        for j in range(n):
            if len(piv) == n:
                break
            v = eye[:, j]
            if _in_span(f, red, piv, v):
                continue
            keys.append(None)
            gens.append(v)
            imgs = act_all(m, v.reshape(-1, 1))[:, :, 0]
            red, piv = f.rref(np.vstack([red[: len(piv)], imgs]))
    proj = Projective(ring, keys)
    g = np.stack(gens, axis=1) if gens else f.zeros((n, 0))
    return Cover(proj, g, cover_map(m, proj, g))


def cover_map(m: Mod, proj: Projective, gens: np.ndarray) -> np.ndarray:
    """Matrix of P -> m sending generator s to gens[:, s]."""
    f, ring = m.field, m.ring
    cols = []
    imgs = act_all(m, gens) if proj.rank else None
    for s, summ in enumerate(proj.summands):
        w = imgs[:, :, s]
        cols.append(f.matmul(np.ascontiguousarray(w.T), summ.basis))
    return np.hstack(cols) if cols else f.zeros((m.dim, 0))


class Resolution:
    """Lazily extended projective resolution ... -> P_1 -> P_0 -> m -> 0.

    coeffs[i] (i >= 1) has shape (rank P_i, rank P_{i-1}, d): generator j of
    P_i maps to sum_k coeffs[i][j, k] placed in slot k of P_{i-1}.
    """

    def __init__(self, module: Mod, minimal: bool):
        if minimal and not module.ring.has_minimal_data:
            raise MinimalityUnavailable("minimal resolutions need radical and idempotents")
        self.module = module
        self.minimal = minimal
        self.terms: list[Projective] = []
        self.gens: list[np.ndarray] = []
        self.covers: list[np.ndarray] = []      # pi_i: P_i -> Omega^i
        self.coeffs: list[np.ndarray | None] = []
        self.syzygies: list[Mod] = [module]
        self.inclusions: list[np.ndarray | None] = [None]   # Omega^i -> P_{i-1}
        self._lock = threading.Lock()
        self._sections: dict = {}

    @property
    def ring(self):
        return self.module.ring

    @property
    def computed(self) -> int:
        return len(self.terms)

    def extend_to(self, length: int) -> "Resolution":
        """Ensure P_0 .. P_length exist."""
        if len(self.terms) > length:
            return self
        with self._lock:
            while len(self.terms) <= length:
                self._step()
        return self

    def _step(self):
        f = self.module.field
        i = len(self.terms)
        x = self.syzygies[i]
        cov = cover(x, self.minimal)
        proj = cov.projective
        if proj.dim > TERM_DIM_BUDGET:
            raise ResourceLimit(f"projective term P_{i} of dimension {proj.dim} exceeds the budget "
                                f"{TERM_DIM_BUDGET}")
        self.terms.append(proj)
        self.gens.append(cov.gens)
        self.covers.append(cov.pi)
        if i == 0:
            self.coeffs.append(None)
        else:
            prev = self.terms[i - 1]
            imgs = f.matmul(self.inclusions[i], cov.gens)
            amb = f.matmul(prev.basis_matrix(), imgs)      # (rank prev * d) x rank
            c = np.ascontiguousarray(
                amb.reshape(prev.rank, self.ring.dim, proj.rank).transpose(2, 0, 1))
            self.coeffs.append(c)
        k, free = f.kernel_free(cov.pi)
        nxt, _ = submodule(proj.module, k, free_rows=free, name=f"Omega^{i + 1}")
        self.syzygies.append(nxt)
        self.inclusions.append(k)

    def term(self, i: int) -> Projective:
        self.extend_to(i)
        return self.terms[i]

    def syzygy(self, i: int) -> Mod:
        if i > 0:
            self.extend_to(i - 1)
        return self.syzygies[i]

    def coefficients(self, i: int) -> np.ndarray:
        self.extend_to(i)
        return self.coeffs[i]

    def differential(self, i: int) -> np.ndarray:
        """Matrix of d_i: P_i -> P_{i-1} (i >= 1), or the augmentation for i = 0."""
        self.extend_to(i)
        if i == 0:
            return self.covers[0]
        return self.module.field.matmul(self.inclusions[i], self.covers[i])

    def differential_hom(self, i: int) -> ModHom:
        self.extend_to(i)
        tgt = self.module if i == 0 else self.terms[i - 1].module
        return ModHom(self.terms[i].module, tgt, self.differential(i))

    def section(self, i: int) -> np.ndarray:
        """Linear right inverse of pi_i: P_i -> Omega^i."""
        self.extend_to(i)
        s = self._sections.get(i)
        if s is None:
            s = self.module.field.right_inverse(self.covers[i])
            self._sections[i] = s
        return s

    def ranks(self, length: int) -> list[int]:
        self.extend_to(length)
        return [t.rank for t in self.terms[: length + 1]]

    def stops_at(self, length: int) -> int | None:
        """First i <= length with P_i = 0, if any."""
        self.extend_to(length)
        for i, t in enumerate(self.terms[: length + 1]):
            if t.rank == 0:
                return i
        return None


def use_minimal(m: Mod, minimal: bool | None) -> bool:
    if minimal is None:
        return m.ring.has_minimal_data
    return minimal


def resolution(m: Mod, length: int = 0, minimal: bool | None = None) -> Resolution:
    """Cached resolution of m extended to P_length."""
    mn = use_minimal(m, minimal)
    with m._lock:
        res = m._cache.get(("res", mn))
        if res is None:
            res = Resolution(m, mn)
            m._cache[("res", mn)] = res
    return res.extend_to(length)


def presentation(m: Mod, minimal: bool | None = None) -> Resolution:
    return resolution(m, 1, minimal)


def syzygy(m: Mod, n: int, minimal: bool | None = None) -> Mod:
    if n == 0:
        return m
    return resolution(m, n - 1, minimal).syzygy(n)


def is_radical_image(res: Resolution, i: int) -> bool:
    """Minimality check: image of d_i lies in J P_{i-1}."""
    f = res.module.field
    prev = res.term(i - 1).module
    img = res.differential(i)
    jp = radical_span(prev)
    return f.rank(np.hstack([jp, img])) == jp.shape[1]
