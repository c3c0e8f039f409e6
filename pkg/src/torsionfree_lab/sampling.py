"""Seeded random modules and labelled sample suites.

Distribution (normative, so seeds reproduce with the documented generator):

* ranks: ``rank0`` uniform in [1, max_rank0], ``rank1`` uniform in [0, max_rank1];
* summand keys of both projectives uniform over the primitive idempotents
  (the whole ring when none are recorded);
* each coefficient e_s x e_t where every coordinate of x is zero with
  probability 1/2 and otherwise uniform over the nonzero scalars (GF(p)) or
  over {-2, -1, 1, 2} (rationals); fully uniform coordinates would make the
  cokernel projective almost surely;
* one post-processing step uniform over
  (none, syzygy, transpose, star, extension); a step whose result is zero
  or larger than ``max_dim`` is dropped.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Algebra
from .functors import ext1_classes, extension_from_cocycle, regular, star_dual, transpose
from .modules import (Mod, Projective, indecomposable_projective, projective_map, quotient,
                      ring_for, semisimple_top, simple_modules, vector_dual)
from .resolution import syzygy
from .rng import SplitMix64

STEPS = ("none", "syzygy", "transpose", "star", "extension")
_ATTEMPTS = 8


@dataclass(frozen=True)
class SizeParams:
    max_rank0: int = 2
    max_rank1: int = 3
    max_dim: int = 50


@dataclass
class Sample:
    index: int
    label: str
    module: Mod


def _rng(seed) -> SplitMix64:
    return seed if isinstance(seed, SplitMix64) else SplitMix64(seed)


def _sparse_element(ring: Algebra, rng: SplitMix64) -> np.ndarray:
    f = ring.field
    vals = []
    for _ in range(ring.dim):
        if rng.coin():
            vals.append(0)
        elif f.is_prime:
            vals.append(1 + rng.below(f.p - 1))
        else:
            v = 1 + rng.below(2)
            vals.append(v if rng.coin() else -v)
    return f.array(vals)


def _keys(ring: Algebra) -> list:
    return ring.summand_keys(ring.has_minimal_data)


def random_cokernel(ring: Algebra, rng: SplitMix64, size: SizeParams) -> tuple[Mod, str]:
    """Coker of a random map P1 -> P0 between projectives over ``ring``."""
    f = ring.field
    keys = _keys(ring)
    r0 = 1 + rng.below(size.max_rank0)
    r1 = rng.below(size.max_rank1 + 1)
    k0 = [rng.choice(keys) for _ in range(r0)]
    k1 = [rng.choice(keys) for _ in range(r1)]
    p0, p1 = Projective(ring, k0), Projective(ring, k1)
    coeffs = f.zeros((r1, r0, ring.dim))
    for s in range(r1):
        es = ring.unit if k1[s] is None else ring.idempotents[k1[s]]
        for t in range(r0):
            et = ring.unit if k0[t] is None else ring.idempotents[k0[t]]
            x = _sparse_element(ring, rng)
            coeffs[s, t] = f.matmul(ring.lmat(es), f.matmul(ring.rmat(et), x))
    img = projective_map(p1, p0, coeffs)
    m = quotient(p0.module, img).module
    return m, f"coker(P{_fmt_keys(k1)} -> P{_fmt_keys(k0)})"


def _fmt_keys(keys) -> str:
    return "[" + ",".join("R" if k is None else str(k + 1) for k in keys) + "]"


def _nonzero_cokernel(ring: Algebra, rng: SplitMix64, size: SizeParams) -> tuple[Mod, str]:
    m, label = random_cokernel(ring, rng, size)
    for _ in range(_ATTEMPTS - 1):
        if m.dim:
            break
        m, label = random_cokernel(ring, rng, size)
    return m, label


def random_module(a: Algebra, side: str = "left", seed=0, size: SizeParams | None = None) -> Mod:
    """A seeded random module; its provenance label is stored in ``name``."""
    size = size or SizeParams()
    rng = _rng(seed)
    ring = ring_for(a, side)
    m, label = _nonzero_cokernel(ring, rng, size)
    step = rng.choice(STEPS)
    out, desc = m, label
    if step == "syzygy":
        out, desc = syzygy(m, 1), f"Omega({label})"
    elif step == "transpose":
        base, blabel = _nonzero_cokernel(ring.op, rng, size)
        out, desc = transpose(base), f"Tr({blabel}^op)"
    elif step == "star":
        base, blabel = _nonzero_cokernel(ring.op, rng, size)
        out, desc = star_dual(base), f"star({blabel}^op)"
    elif step == "extension":
        other, olabel = _nonzero_cokernel(ring, rng, size)
        _, classes = ext1_classes(m, other)
        idx = rng.below(len(classes) + 1)
        out = extension_from_cocycle(m, other, idx).modules[2]
        desc = f"ext[{idx}]({label} by {olabel})"
    if out is not m and not 0 < out.dim <= size.max_dim:
        out, desc = m, f"{label} [{step} dropped]"
    out.name = desc
    return out


def _builtins(a: Algebra, side: str) -> list[tuple[str, Mod]]:
    ring = ring_for(a, side)
    out = [("R", regular(ring))]
    if ring.radical is not None:
        top, _ = semisimple_top(regular(ring))
        out.append(("top(R)", top))
    if ring.has_minimal_data:
        simples = simple_modules(a, side)
        out.extend((f"S{k + 1}", s) for k, s in enumerate(simples))
        out.extend((f"P{k + 1}", indecomposable_projective(a, k, side)) for k in range(len(simples)))
        out.extend((f"Omega(S{k + 1})", syzygy(s, 1)) for k, s in enumerate(simples))
    other = "left" if side == "right" else "right"
    if ring.op.has_minimal_data:
        out.extend((f"Tr(S{k + 1}^op)", transpose(s)) for k, s in enumerate(simple_modules(a, other)))
    out.append(("D(R^op)", vector_dual(regular(ring.op))))
    return out


def sample_suite(a: Algebra, count: int, seed, side: str = "left",
                 size: SizeParams | None = None) -> list[Sample]:
    """Built-in modules followed by seeded random ones, ``max(count, #built-ins)`` in total."""
    size = size or SizeParams()
    master = _rng(seed)
    suite = []
    for label, m in _builtins(a, side):
        suite.append(Sample(len(suite), label, m))
    while len(suite) < count:
        child = master.split()
        m = random_module(a, side, child, size)
        suite.append(Sample(len(suite), f"random#{len(suite)}: {m.name}", m))
    return suite
