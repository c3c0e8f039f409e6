"""Falsification and consistency checks of the torsionfree-dimension theory.

Universally quantified statements are tested on seeded sample suites, so a
clean run is reported as NO_COUNTEREXAMPLE, never as a proof.  Every
violation carries a witness: the modules involved (serialized), the name of
the per-instance check and its arguments.  ``reverify`` reloads a witness and
reruns that check.

Conventions: ``d_l`` is the injective dimension of the left regular module,
``d_r`` that of the right regular module (the regular module over the
opposite algebra).  Left samples are modules over the algebra, right samples
modules over its opposite.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import Algebra
from .constructions import (cosyzygy_embedding, embed_into_finite_pd, prop_3_2, star_of_ses,
                            syzygy_t_resolution, torsionfree_compress)
from .errors import LabError, PreconditionError, ResourceLimit
from .functors import (ext1_classes, ext_dim, ext_module, extension_from_cocycle, first_nonvanishing,
                       hom_space, regular)
from .invariants import (DEFAULT_BOUND, DimResult, gorenstein_dimension, in_perp,
                         InfTorsionfree, inf_torsionfree, injective_coresolution_terms, is_n_torsionfree,
                         orthogonal_dimension, projective_dimension, self_injective_dimension,
                         torsionfree_dimension_upper)
from .modules import ExactSeq, Mod, ModHom, direct_sum, kernel_cokernel, ring_for
from .resolution import syzygy
from .rng import SplitMix64
from .sampling import Sample, SizeParams, sample_suite
from .serialize import (algebra_to_json, builtin_reference, matrix_from_json, matrix_to_json,
                        module_from_json, module_to_json)

CLAIM_IDS = ("THM_1_4", "PROP_2_1", "LEMMA_2_3", "LEMMA_3_1", "PROP_3_2", "PROP_3_4", "COR_3_5",
             "THM_3_6", "PROP_3_10", "PROP_4_1", "PROP_4_2", "COR_4_3", "PROP_4_4", "LEMMA_4_5",
             "PROP_4_6", "THM_4_7", "COR_4_8", "COR_4_9", "ZAKS", "Q_5_1", "Q_5_2", "CLAIM_5_2_N1")
QUESTION_IDS = ("Q_5_1", "Q_5_2", "CLAIM_5_2_N1")
ROUNDTRIPS = "ROUNDTRIPS"

NO_COUNTEREXAMPLE, COUNTEREXAMPLE, PREMISE_UNDECIDED = "NO_COUNTEREXAMPLE", "COUNTEREXAMPLE", \
    "PREMISE_UNDECIDED"
EXIT_CODES = {NO_COUNTEREXAMPLE: 0, COUNTEREXAMPLE: 1, PREMISE_UNDECIDED: 3}

# modules larger than this are skipped by the pairwise constructions
_PAIR_DIM = 12
_EXT_CLASSES = 2


class ParameterError(ValueError):
    """Claim parameters out of range."""


@dataclass(frozen=True)
class Params:
    n: int | None = None
    k: int | None = None
    bound: int = DEFAULT_BOUND
    samples: int = 50
    seed: int = 0

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "bound": self.bound, "samples": self.samples,
                "seed": self.seed}


@dataclass
class ClaimReport:
    claim: str
    algebra: dict
    params: Params
    status: str = NO_COUNTEREXAMPLE
    witnesses: list = dc_field(default_factory=list)
    evidence: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    facts: dict = dc_field(default_factory=dict)
    tallies: dict = dc_field(default_factory=dict)
    checked: int = 0
    undecided: int = 0

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {"claim": self.claim, "algebra": self.algebra, "params": self.params.to_json(),
                "status": self.status, "checked": self.checked, "undecided": self.undecided,
                "witnesses": self.witnesses, "evidence": self.evidence, "notes": self.notes,
                "facts": self.facts, "tallies": dict(sorted(self.tallies.items()))}


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("TORSIONFREE_LAB_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items: list) -> list:
    """fn over items, possibly in worker threads; results keep the input order."""
    workers = min(thread_count(), max(1, len(items)))
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- per-instance checks ------------------------------------------------------------
#
# A check takes (ctx, modules, args) and returns (verdict, observed) with verdict
# True (consistent), False (violated) or None (undecided).  Witnesses name the
# check, so reloading the modules and rerunning reproduces the verdict.

_CHECKS: dict = {}


def _check(name):
    def deco(fn):
        _CHECKS[name] = fn
        return fn
    return deco


_SUMMARY_KEYS = ("gdim", "tdim", "odim", "inftf")


def _cached(m: Mod, key, compute, fallback=None):
    hit = m._cache.get(key)
    if hit is None:
        try:
            hit = compute()
        except ResourceLimit as exc:
            hit = fallback(exc)
        _trim(m)
        m._cache[key] = hit
    return hit


def _trim(m: Mod):
    """Drop resolutions and transposes cached on m, keeping the small summaries.

    Over non-Gorenstein algebras these caches grow geometrically and would
    otherwise stay alive for the whole suite.
    """
    keep = {k: v for k, v in m._cache.items() if isinstance(k, tuple) and k and k[0] in _SUMMARY_KEYS}
    m._cache.clear()
    m._cache.update(keep)


def _unknown(exc) -> DimResult:
    return DimResult.unknown(f"resource limit: {exc}")


def _gdim(m: Mod, bound: int) -> DimResult:
    return _cached(m, ("gdim", bound), lambda: gorenstein_dimension(m, bound), _unknown)


def _tdim(m: Mod, bound: int) -> DimResult:
    return _cached(m, ("tdim", bound), lambda: torsionfree_dimension_upper(m, bound), _unknown)


def _odim(m: Mod, bound: int) -> DimResult:
    return _cached(m, ("odim", bound), lambda: orthogonal_dimension(m, bound), _unknown)


def _inftf(m: Mod, bound: int):
    # on a resource limit: not refuted, not certified
    return _cached(m, ("inftf", bound), lambda: inf_torsionfree(m, bound),
                   lambda exc: InfTorsionfree(True, False, 0))


def _torsionless(m: Mod) -> bool:
    return is_n_torsionfree(m, 1)


def _perp_membership(ctx: "_Ctx", m: Mod) -> tuple[bool, bool, int | None]:
    """(in the full orthogonal class, certified, first degree with Ext^j(m, R) != 0)."""
    d = ctx.finite_id(m.ring)
    top = max(1, d) if d is not None else ctx.p.bound + 1
    j = first_nonvanishing(m, regular(m.ring), range(1, top + 1))
    return j is None, j is not None or d is not None, j


def _dims_json(**kw) -> dict:
    return {k: (v.to_json() if hasattr(v, "to_json") else v) for k, v in kw.items()}


@_check("dims_at_most_n")
def _c_dims(ctx, mods, args):
    m, n, b = mods[0], args["n"], ctx.p.bound
    g, t, o = _gdim(m, b), _tdim(m, b), _odim(m, b)
    verdicts = [x.decide_le(n) for x in (g, t, o)]
    v = False if False in verdicts else (None if None in verdicts else True)
    return v, _dims_json(gdim=g, tdim=t, orthdim=o)


@_check("orthogonal_dim_exceeds_n")
def _c_exceeds(ctx, mods, args):
    """Certificate that the left orthogonal dimension exceeds n: Ext^j(m, R) != 0, j > n."""
    m, n = mods[0], args["n"]
    j = first_nonvanishing(m, regular(m.ring), range(n + 1, args.get("upto", n + 1) + 1))
    return j is not None, {"nonzero_ext_degree": j}


@_check("orthogonal_dim_at_most_n")
def _c_odim(ctx, mods, args):
    o = _odim(mods[0], ctx.p.bound)
    return o.decide_le(args["n"]), {"orthdim": o.to_json()}


@_check("cosyzygy_roundtrip")
def _c_cosyzygy(ctx, mods, args):
    m, n = mods[0], args["n"]
    seq = cosyzygy_embedding(m, n)
    cert = seq.certificate()
    middles = seq.modules[2:2 + n]
    projective = all("projective" in x.meta for x in middles)
    ok = cert["exact"] and bool(seq.notes["tail_in_perp"]) and projective and seq.modules[1] is m
    return ok, {"exact": cert["exact"], "tail_in_perp": bool(seq.notes["tail_in_perp"]),
                "middle_terms_projective": projective, "dims": seq.dims()}


@_check("syzygy_of_perp_is_torsionfree")
def _c_syz_perp(ctx, mods, args):
    a, n = mods[0], args["n"]
    if not in_perp(a, n):
        return True, {"in_perp": False}
    x = syzygy(a, n)
    ok = is_n_torsionfree(x, n)
    return ok, {"in_perp": True, "syzygy_dim": x.dim, "syzygy_torsionfree": ok}


@_check("direct_sum_closure")
def _c_sum(ctx, mods, args):
    m, n_mod, n = mods[0], mods[1], args["n"]
    s = direct_sum([m, n_mod]).module
    tf_m, tf_n, tf_s = (is_n_torsionfree(x, n) for x in (m, n_mod, s))
    ok = tf_s == (tf_m and tf_n)
    b = ctx.p.bound
    im, inn, isum = _inftf(m, b), _inftf(n_mod, b), _inftf(s, b)
    if im.certified and inn.certified and isum.certified:
        ok = ok and isum.value == (im.value and inn.value)
    return ok, {"n_torsionfree": [tf_m, tf_n, tf_s], "inf_torsionfree": [im.value, inn.value, isum.value]}


def _extension(c: Mod, a: Mod, idx: int) -> ExactSeq:
    return extension_from_cocycle(c, a, idx)


@_check("star_transpose_sequences")
def _c_star(ctx, mods, args):
    seq = _extension(mods[0], mods[1], args["class"])
    out = star_of_ses(seq)
    ok = out.stars.exact and out.transposes.exact and seq.exact
    return ok, {"stars_exact": out.stars.exact, "transposes_exact": out.transposes.exact,
                "transpose_dims": out.notes["transpose_dims"], "middle_dim": seq.modules[2].dim}


@_check("prop_3_2_construction")
def _c_p32(ctx, mods, args):
    t1, t0 = mods
    fmat = matrix_from_json(t1.field, args["map"], (t0.dim, t1.dim))
    h = ModHom(t1, t0, fmat)
    kc = kernel_cokernel(h)
    four = ExactSeq.chain([kc.inclusion, h, kc.projection])
    out = prop_3_2(four, ctx.p.bound)
    p, t = out.modules[2], out.modules[3]
    pd_p = projective_dimension(p, ctx.p.bound)
    tf = _inftf(t, ctx.p.bound)
    ok = out.exact and pd_p.decide_le(0) is True and tf.value and tf.certified
    return ok, {"exact": out.exact, "pd_P": pd_p.to_json(), "T_inf_torsionfree": tf.to_json(),
                "dims": out.dims()}


@_check("torsionfree_compress")
def _c_compress(ctx, mods, args):
    m, t = mods[0], args["t"]
    comp = torsionfree_compress(m, syzygy_t_resolution(m, t), t, ctx.p.bound)
    return bool(comp.certificates["ok"]), comp.certificates


@_check("finite_pd_embedding")
def _c_embed(ctx, mods, args):
    m, t, n = mods[0], args["t"], args["n"]
    emb = embed_into_finite_pd(m, t, bound=ctx.p.bound)
    cert = dict(emb.certificates)
    pd_n = projective_dimension(emb.sequence.modules[2], ctx.p.bound)
    cert["pd_N_le_n"] = pd_n.decide_le(n) is True
    return bool(cert["ok"] and cert["pd_N_le_n"]), cert


@_check("injective_tdim_vs_right_id")
def _c_inj_tdim(ctx, mods, args):
    e, n = mods[0], args["n"]
    t = _tdim(e, ctx.p.bound)
    dr = ctx.d_r
    if t.decide_le(n) is not True:
        return True, {"tdim": t.to_json(), "premise": False}
    return dr.decide_le(n), {"tdim": t.to_json(), "id_right": dr.to_json()}


@_check("injective_pd_equals_right_id")
def _c_inj_pd(ctx, mods, args):
    e = mods[0]
    pd = projective_dimension(e, ctx.p.bound)
    dr = ctx.d_r
    if dr.is_finite and pd.is_finite:
        ok = pd.value == dr.value
    elif dr.is_finite or pd.is_finite:
        fin = dr if dr.is_finite else pd
        other = pd if dr.is_finite else dr
        ok = False if other.decide_le(fin.value) is False else None
    else:
        ok = None if pd.kind == "unknown" else True
    return ok, {"pd": pd.to_json(), "id_right": dr.to_json()}


# conditions of the torsionless-property equivalence, one per module
def _cond(ctx, m: Mod, cond: int, n: int) -> tuple[bool | None, dict]:
    """True: sample consistent with the condition; False: certified refutation; None: open."""
    b = ctx.p.bound
    if cond in (1, 2, 3):
        if not in_perp(m, n):
            return True, {"in_perp_n": False}
        if cond == 1:
            tl = _torsionless(m)
            return tl, {"in_perp_n": True, "torsionless": tl}
        if cond == 2:
            tf = _inftf(m, b)
            return (True if tf.value else False), {"in_perp_n": True, "inf_torsionfree": tf.to_json()}
        t = _tdim(m, b)
        return t.decide_le(n) is not False, {"in_perp_n": True, "tdim": t.to_json()}
    if cond == 4:
        if not is_n_torsionfree(m, n):
            return True, {"n_torsionfree": False}
        tf = _inftf(m, b)
        return (True if tf.value else False), {"n_torsionfree": True, "inf_torsionfree": tf.to_json()}
    if cond == 5:
        if not is_n_torsionfree(m, n):
            return True, {"n_torsionfree": False}
    elif cond == 6:
        if not in_perp(m, n):
            return True, {"in_perp_n": False}
    inside, certified, j = _perp_membership(ctx, m)
    if inside:
        return (True if certified else None), {"in_perp": True, "certified": certified}
    return False, {"in_perp": False, "nonzero_ext_degree": j}


def _safe(fn, *args) -> tuple[bool | None, dict]:
    try:
        return fn(*args)
    except ResourceLimit as exc:
        return None, {"resource_limit": str(exc)}


def _safe_tf(m: Mod, n: int) -> bool | None:
    try:
        return is_n_torsionfree(m, n)
    except ResourceLimit:
        return None


@_check("torsionless_property_condition")
def _c_cond(ctx, mods, args):
    return _cond(ctx, mods[0], args["condition"], args["n"])


def _cond_full(ctx, m: Mod, cond: int) -> tuple[bool | None, dict]:
    """Conditions for the full orthogonal class; membership certified only with finite d_l."""
    b = ctx.p.bound
    if cond == 4:
        tf = _inftf(m, b)
        if not (tf.value and tf.certified):
            return True, {"inf_torsionfree": tf.to_json()}
        inside, certified, j = _perp_membership(ctx, m)
        if inside:
            return (True if certified else None), {"in_perp": True, "certified": certified}
        return False, {"inf_torsionfree": tf.to_json(), "nonzero_ext_degree": j}
    inside, certified, _ = _perp_membership(ctx, m)
    if not inside:
        return True, {"in_perp": False}
    if cond == 1:
        ok = _torsionless(m)
    elif cond == 2:
        ok = bool(_inftf(m, b).value)
    else:
        ok = _tdim(m, b).kind != "unknown"
    if ok:
        return True, {"in_perp": True}
    return (False if certified else None), {"in_perp": True, "perp_certified": certified}


@_check("full_torsionless_property_condition")
def _c_cond_full(ctx, mods, args):
    return _cond_full(ctx, mods[0], args["condition"])


@_check("simple_socle_hom")
def _c_socle(ctx, mods, args):
    s, n = mods[0], args["n"]
    terms = ctx.injective_terms(n)
    homs = [len(hom_space(s, t)) for t in terms]
    homs += [0] * (n + 1 - len(homs))
    exts = [ext_dim(s, regular(s.ring), i) for i in range(n + 1)]
    obs = {"hom_into_I": homs, "ext": exts}
    if homs != exts:
        obs["mismatch"] = "dim Hom(S, I^i) != dim Ext^i(S, R)"
        return False, obs
    if any(homs):
        return True, obs
    # S lies in the orthogonal class and S* = 0: S itself refutes the premise
    obs["refutes_premise"] = True
    return (False if ctx.d_r.decide_le(n) is True else True), obs


@_check("double_ext_vanishing")
def _c_double_ext(ctx, mods, args):
    m, n, k = mods[0], args["n"], args["k"]
    bad = []
    for i in range(1, n + 1):
        e = ext_module(m, i + k)
        if e.dim == 0:
            continue
        reg = regular(e.ring)
        for j in range(i):
            if ext_dim(e, reg, j):
                bad.append([i, j])
    return not bad, {"nonvanishing": bad}


@_check("extension_closure")
def _c_ext_closure(ctx, mods, args):
    c, a, n = mods[0], mods[1], args["n"]
    e = _extension(c, a, args["class"]).modules[2]
    t = _tdim(e, ctx.p.bound)
    return t.decide_le(n), {"middle_dim": e.dim, "tdim": t.to_json()}


@_check("kernel_closure")
def _c_ker_closure(ctx, mods, args):
    x, y, n = mods[0], mods[1], args["n"]
    fmat = matrix_from_json(x.field, args["map"], (y.dim, x.dim))
    h = ModHom(x, y, fmat)
    if not h.is_surjective():
        return True, {"surjective": False}
    k = kernel_cokernel(h).kernel
    t = _tdim(k, ctx.p.bound)
    return t.decide_le(n), {"kernel_dim": k.dim, "tdim": t.to_json()}


@_check("tdim_at_most_n")
def _c_tdim(ctx, mods, args):
    t = _tdim(mods[0], ctx.p.bound)
    return t.decide_le(args["n"]), {"tdim": t.to_json()}


@_check("first_syzygy_inf_torsionfree")
def _c_syz_tf(ctx, mods, args):
    k = syzygy(mods[0], 1)
    tf = _inftf(k, ctx.p.bound)
    v = True if (tf.value and tf.certified) else (False if tf.certified or not tf.value else None)
    return v, {"syzygy_dim": k.dim, "inf_torsionfree": tf.to_json()}


@_check("zaks")
def _c_zaks(ctx, mods, args):
    dl, dr = ctx.d_l, ctx.d_r
    if not (dl.is_finite and dr.is_finite):
        return None, {"id_left": dl.to_json(), "id_right": dr.to_json()}
    return dl.value == dr.value, {"id_left": dl.to_json(), "id_right": dr.to_json()}


# -- context ----------------------------------------------------------------------

class _Ctx:
    def __init__(self, a: Algebra, p: Params, size: SizeParams | None = None):
        self.a = a.base
        self.p = p
        self.size = size or SizeParams()
        master = SplitMix64(p.seed)
        self._seeds = {"left": master.next_u64(), "right": master.next_u64()}
        self._aux_seed = master.next_u64()
        self._suites: dict = {}
        self._terms: dict = {}

    @property
    def d_l(self) -> DimResult:
        return self_injective_dimension(self.a, "left", self.p.bound)

    @property
    def d_r(self) -> DimResult:
        return self_injective_dimension(self.a, "right", self.p.bound)

    def finite_id(self, ring) -> int | None:
        r = self_injective_dimension(self.a, "right" if ring.is_opposite else "left", self.p.bound)
        return r.value if r.is_finite else None

    def suite(self, side: str = "left") -> list[Sample]:
        if side not in self._suites:
            self._suites[side] = sample_suite(self.a, self.p.samples, self._seeds[side], side, self.size)
        return self._suites[side]

    def aux_rng(self) -> SplitMix64:
        return SplitMix64(self._aux_seed)

    def injective_terms(self, length: int) -> list[Mod]:
        if length not in self._terms:
            self._terms[length] = injective_coresolution_terms(self.a, length)
        return self._terms[length]

    def algebra_ref(self) -> dict:
        return builtin_reference(self.a) or algebra_to_json(self.a)


def _witness(check: str, samples: list, mods: list[Mod], args: dict, observed: dict) -> dict:
    return {"check": check, "samples": list(samples), "args": dict(args),
            "modules": [module_to_json(m) for m in mods], "observed": observed}


def reverify(witness: dict, a: Algebra, params: Params) -> bool:
    """Reload a witness and rerun its check; True when it fails again."""
    ctx = _Ctx(a, params)
    mods = [module_from_json(doc, a) for doc in witness["modules"]]
    verdict, _ = _CHECKS[witness["check"]](ctx, mods, witness["args"])
    return verdict is False


class _Run:
    """Accumulates verdicts of one claim."""

    def __init__(self, ctx: _Ctx, report: ClaimReport):
        self.ctx, self.r = ctx, report

    def apply(self, check: str, sample_labels: list, mods: list[Mod], args: dict) -> bool | None:
        try:
            verdict, observed = _CHECKS[check](self.ctx, mods, args)
        except ResourceLimit as exc:
            verdict, observed = None, {"resource_limit": str(exc)}
        self.r.checked += 1
        if verdict is None:
            self.r.undecided += 1
        elif verdict is False:
            w = _witness(check, sample_labels, mods, args, observed)
            w["reverified"] = reverify(w, self.ctx.a, self.ctx.p)
            self.r.witnesses.append(w)
        return verdict

    def tally(self, key: str, amount: int = 1):
        self.r.tallies[key] = self.r.tallies.get(key, 0) + amount

    def note(self, text: str):
        self.r.notes.append(text)

    def fact(self, name: str, value):
        self.r.facts[name] = value.to_json() if hasattr(value, "to_json") else value

    def evidence(self, check: str, sample: Sample, args: dict, observed: dict):
        self.r.evidence.append({"check": check, "sample": sample.label, "index": sample.index,
                                "args": dict(args), "observed": observed,
                                "module": module_to_json(sample.module)})

    def finish(self, premise_undecided: bool = False) -> ClaimReport:
        if self.r.witnesses:
            self.r.status = COUNTEREXAMPLE
        elif premise_undecided:
            self.r.status = PREMISE_UNDECIDED
        else:
            self.r.status = NO_COUNTEREXAMPLE
        return self.r


def _per_sample(run: _Run, check: str, samples: list[Sample], args: dict, want=None) -> list:
    """Apply a single-module check to every sample (optionally filtered by ``want``)."""
    chosen = [s for s in samples if want is None or want(s)]

    def one(s: Sample):
        try:
            verdict, observed = _CHECKS[check](run.ctx, [s.module], args)
        except ResourceLimit as exc:
            verdict, observed = None, {"resource_limit": str(exc)}
        return s, verdict, observed

    results = _map(one, chosen)
    for s, verdict, observed in results:
        run.r.checked += 1
        if verdict is None:
            run.r.undecided += 1
        elif verdict is False:
            w = _witness(check, [s.label], [s.module], args, observed)
            w["reverified"] = reverify(w, run.ctx.a, run.ctx.p)
            run.r.witnesses.append(w)
    return results


def _premise_text(name: str, d: DimResult) -> str:
    return f"{name} = {d}"


# -- claims ------------------------------------------------------------------------------

def _need(p: Params, n_min: int | None = None, k_min: int | None = None):
    if n_min is not None and (p.n is None or p.n < n_min):
        raise ParameterError(f"n must be an integer >= {n_min}")
    if k_min is not None and (p.k is None or p.k < k_min):
        raise ParameterError(f"k must be an integer >= {k_min}")
    if p.bound < 1:
        raise ParameterError("bound must be at least 1")
    if p.samples < 1:
        raise ParameterError("samples must be at least 1")


def _both_ids(run: _Run):
    dl, dr = run.ctx.d_l, run.ctx.d_r
    run.fact("id_left", dl)
    run.fact("id_right", dr)
    return dl, dr


def _gorenstein_premise(dl: DimResult, dr: DimResult, n: int) -> bool | None:
    vl, vr = dl.decide_le(n), dr.decide_le(n)
    if vl is False or vr is False:
        return False
    if vl is None or vr is None:
        return None
    return dl.value == dr.value


def _thm_1_4(run: _Run):
    """Gorenstein of dimension <= n iff every module on both sides has G-, T- and
    orthogonal dimension <= n.  With the premise certified, every sample is checked;
    with it certified false, a sample with a certified orthogonal dimension > n is
    exhibited (the other side of the biconditional)."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, dr = _both_ids(run)
    premise = _gorenstein_premise(dl, dr, n)
    run.fact("premise", premise)
    if premise is None:
        run.note(f"premise undecided: {_premise_text('id_left', dl)}, {_premise_text('id_right', dr)}")
        return run.finish(premise_undecided=True)
    if premise:
        for side in ("left", "right"):
            results = _per_sample(run, "dims_at_most_n", ctx.suite(side), {"n": n})
            for _, verdict, obs in results:
                key = ",".join(f"{k}={obs[k]['value']}" for k in ("gdim", "tdim", "orthdim"))
                run.tally(f"{side}:{key}")
        run.note(f"premise holds: id_left = id_right = {dl.value} <= {n}; every sample checked")
        return run.finish()
    run.note(f"premise fails: {_premise_text('id_left', dl)}, {_premise_text('id_right', dr)}")
    found = None
    args = {"n": n, "upto": max(n + 1, ctx.p.bound + 1)}
    for side in ("left", "right"):
        # simples first: they are the cheapest certificates
        ordered = sorted(ctx.suite(side), key=lambda s: (not s.label.startswith("S"), s.index))
        for s in ordered:
            if s.module.dim == 0:
                continue
            v, obs = _safe(_CHECKS["orthogonal_dim_exceeds_n"], ctx, [s.module], args)
            if v:
                found = (s, obs)
                break
        if found:
            break
    if found:
        s, obs = found
        run.evidence("orthogonal_dim_exceeds_n", s, args, obs)
        run.note(f"sample {s.label} has Ext^{obs['nonzero_ext_degree']}(M, R) != 0, so its orthogonal "
                 f"and Gorenstein dimensions exceed {n}: consistent with the equivalence")
    else:
        run.note(f"no sample certifies a dimension > {n}; the converse direction is not falsifiable "
                 f"from samples")
    return run.finish()


def _prop_2_1(run: _Run):
    """n-torsionfree iff n-th syzygy of a module in the orthogonal class perp_n:
    forward by building the cosyzygy embedding, backward by checking syzygies of
    sampled modules in perp_n."""
    n = run.ctx.p.n
    suite = run.ctx.suite("left")
    applicable = [s for s in suite if s.module.dim and _safe_tf(s.module, n)]
    run.tally("n_torsionfree", len(applicable))
    run.tally("refused", sum(1 for s in suite if s.module.dim and s not in applicable))
    _per_sample(run, "cosyzygy_roundtrip", applicable, {"n": n})
    _per_sample(run, "syzygy_of_perp_is_torsionfree", [s for s in suite if s.module.dim], {"n": n})
    return run.finish()


def _pairs(samples: list[Sample], limit: int = _PAIR_DIM) -> list[tuple[Sample, Sample]]:
    small = [s for s in samples if 0 < s.module.dim <= limit]
    return list(zip(small, small[1:]))


def _lemma_2_3(run: _Run):
    """n-torsionfree and infinitely torsionfree modules are closed under finite
    direct sums and summands: M + N lies in the class iff M and N do."""
    n = run.ctx.p.n
    for x, y in _pairs(run.ctx.suite("left")):
        run.apply("direct_sum_closure", [x.label, y.label], [x.module, y.module], {"n": n})
    return run.finish()


def _ses_instances(ctx: _Ctx) -> list[tuple[Sample, Sample, int]]:
    out = []
    for c, a in _pairs(ctx.suite("left")):
        _, classes = ext1_classes(c.module, a.module)
        for idx in range(min(len(classes), _EXT_CLASSES) + 1):
            out.append((c, a, idx))
    return out


def _lemma_3_1(run: _Run):
    """Star and transpose sequences of 0 -> A -> E -> C -> 0 for sampled extensions
    (split and non-split classes) are exact."""
    for c, a, idx in _ses_instances(run.ctx):
        v = run.apply("star_transpose_sequences", [c.label, a.label], [c.module, a.module], {"class": idx})
        run.tally("nonsplit" if idx else "split")
    return run.finish()


def _random_hom(x: Mod, y: Mod, rng: SplitMix64) -> np.ndarray | None:
    basis = hom_space(x, y)
    if not basis:
        return None
    f = x.field
    out = f.zeros((y.dim, x.dim))
    for h in basis:
        c = rng.below(f.p) if f.is_prime else rng.below(5) - 2
        out = f.add(out, f.scale(f.scalar(c), h.matrix))
    return out


def _tf_certified(ctx: _Ctx, s: Sample) -> bool:
    st = _inftf(s.module, ctx.p.bound)
    return bool(st.value and st.certified)


def _prop_3_2(run: _Run):
    """For 0 -> M -> T1 -> T0 -> A -> 0 with T1, T0 infinitely torsionfree (built from a
    random map between sampled such modules), the constructed 0 -> M -> P -> T -> A -> 0
    is exact with P projective and T certified infinitely torsionfree."""
    ctx = run.ctx
    rng = ctx.aux_rng()
    tf = [s for s in ctx.suite("left") if 0 < s.module.dim <= _PAIR_DIM and _tf_certified(ctx, s)]
    for x, y in zip(tf, tf[1:]):
        fmat = _random_hom(x.module, y.module, rng)
        if fmat is None:
            fmat = x.module.field.zeros((y.module.dim, x.module.dim))
        run.apply("prop_3_2_construction", [x.label, y.label], [x.module, y.module],
                  {"map": matrix_to_json(x.module.field, fmat)})
    if len(tf) < 2:
        run.note("fewer than two certified infinitely torsionfree samples")
    return run.finish()


def _tdim_applicable(ctx: _Ctx, n: int) -> list[tuple[Sample, int]]:
    out = []
    for s in ctx.suite("left"):
        if s.module.dim == 0:
            continue
        t = _tdim(s.module, ctx.p.bound)
        if t.is_finite and t.certified and t.value <= n:
            out.append((s, t.value))
    return out


def _prop_3_4(run: _Run):
    """T-dim <= n gives 0 -> H -> T -> M -> 0 with pd H <= n - 1, T infinitely torsionfree."""
    n = run.ctx.p.n
    apps = _tdim_applicable(run.ctx, n)
    run.tally("applicable", len(apps))
    for s, t in apps:
        run.apply("torsionfree_compress", [s.label], [s.module], {"t": t, "n": n})
    return run.finish()


def _cor_3_5(run: _Run):
    """T-dim <= n gives 0 -> M -> N -> T -> 0 with pd N <= n and T in perp_1,
    infinitely torsionfree."""
    n = run.ctx.p.n
    apps = _tdim_applicable(run.ctx, n)
    run.tally("applicable", len(apps))
    for s, t in apps:
        run.apply("finite_pd_embedding", [s.label], [s.module], {"t": t, "n": n})
    return run.finish()


def _injective_sample(ctx: _Ctx) -> Sample:
    return next(s for s in ctx.suite("left") if s.label == "D(R^op)")


def _thm_3_6(run: _Run):
    """All T-dims <= n forces d_r <= n.  Instance: the injective cogenerator D(R^op)
    with T-dim <= n must have d_r <= n; cross-checked by pd D(R^op) = d_r."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, dr = _both_ids(run)
    e = _injective_sample(ctx)
    run.apply("injective_pd_equals_right_id", [e.label], [e.module], {})
    v = run.apply("injective_tdim_vs_right_id", [e.label], [e.module], {"n": n})
    undecided = v is None
    if undecided:
        run.note(f"undecided: {_premise_text('id_right', dr)}")
    return run.finish(premise_undecided=undecided)


def _prop_3_10(run: _Run):
    """Every orthogonal dimension <= n iff d_l <= n."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, _ = _both_ids(run)
    v = dl.decide_le(n)
    if v is None:
        run.note(f"premise undecided: {_premise_text('id_left', dl)}")
        return run.finish(premise_undecided=True)
    if v:
        _per_sample(run, "orthogonal_dim_at_most_n", ctx.suite("left"), {"n": n},
                    want=lambda s: s.module.dim > 0)
        return run.finish()
    top = next(s for s in ctx.suite("left") if s.label == "top(R)")
    upto = dl.value if dl.is_finite else ctx.p.bound + 1
    ok, obs = _safe(_CHECKS["orthogonal_dim_exceeds_n"], ctx, [top.module], {"n": n, "upto": upto})
    if ok:
        run.evidence("orthogonal_dim_exceeds_n", top, {"n": n, "upto": upto}, obs)
        run.note(f"d_l > {n}; R/J has orthogonal dimension > {n}")
    else:
        run.note("d_l > n but R/J shows no nonvanishing Ext beyond n")
    return run.finish()


def _torsionless_refuters(ctx: _Ctx, n: int) -> list[tuple[Sample, dict]]:
    out = []
    for s in ctx.suite("left"):
        if s.module.dim == 0:
            continue
        v, obs = _safe(_cond, ctx, s.module, 1, n)
        if v is False:
            out.append((s, obs))
    return out


def _prop_4_1(run: _Run):
    """The six conditions are evaluated on samples.  With d_r <= n certified, condition
    (6) holds outright, so any certified refutation of another condition is a
    counterexample; otherwise refutations are reported as notes."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, dr = _both_ids(run)
    certified = dr.decide_le(n) is True
    verdicts = {}
    for cond in range(1, 7):
        side = "right" if cond in (5, 6) else "left"
        refuted, open_ = [], 0
        for s in ctx.suite(side):
            if s.module.dim == 0:
                continue
            v, obs = _safe(_cond, ctx, s.module, cond, n)
            if v is False:
                refuted.append((s, obs))
            elif v is None:
                open_ += 1
        verdicts[cond] = "refuted" if refuted else ("open" if open_ else "unrefuted")
        run.tally(f"condition_{cond}_refutations", len(refuted))
        for s, obs in refuted[:1]:
            if certified:
                run.apply("torsionless_property_condition", [s.label], [s.module],
                          {"condition": cond, "n": n})
            else:
                run.evidence("torsionless_property_condition", s, {"condition": cond, "n": n}, obs)
    run.fact("condition_verdicts", {str(k): v for k, v in verdicts.items()})
    run.fact("condition_6_certified", certified)
    if not certified:
        run.note("no condition is certified outright (d_r not <= n); sample verdicts are reported only")
    return run.finish()


def _prop_4_2(run: _Run):
    """Torsionless property of the full orthogonal class; certified outright when d_r
    is finite, in which case refutations are counterexamples."""
    ctx = run.ctx
    dl, dr = _both_ids(run)
    certified = dr.is_finite
    verdicts = {}
    for cond in range(1, 5):
        side = "right" if cond == 4 else "left"
        refuted, open_ = [], 0
        for s in ctx.suite(side):
            if s.module.dim == 0:
                continue
            v, obs = _safe(_cond_full, ctx, s.module, cond)
            if v is False:
                refuted.append((s, obs))
            elif v is None:
                open_ += 1
        verdicts[cond] = "refuted" if refuted else ("open" if open_ else "unrefuted")
        for s, obs in refuted[:1]:
            if certified:
                run.apply("full_torsionless_property_condition", [s.label], [s.module], {"condition": cond})
            else:
                run.evidence("full_torsionless_property_condition", s, {"condition": cond}, obs)
    run.fact("condition_verdicts", {str(k): v for k, v in verdicts.items()})
    if not certified:
        run.note("d_r not certified finite; sample verdicts are reported only")
    return run.finish()


def _first_ext_degree(m: Mod, upto: int) -> int | None:
    return first_nonvanishing(m, regular(m.ring), range(1, upto + 1))


def _cor_4_3(run: _Run):
    """The least t with the torsionless property for perp_t equals its right-hand
    counterpart.  Samples give lower bounds, d_r and d_l certified upper bounds; the
    two ranges must intersect."""
    ctx = run.ctx
    dl, dr = _both_ids(run)
    ranges = {}
    for side, other in (("left", dr), ("right", dl)):
        upper = max(1, other.value) if other.is_finite else None
        lower, witness = 1, None
        if upper is not None:
            for s in ctx.suite(side):
                if s.module.dim == 0 or _safe_tf(s.module, 1) is not False:
                    continue
                try:
                    e = _first_ext_degree(s.module, upper + 1)
                except ResourceLimit:
                    continue
                refuted_upto = (e - 1) if e is not None else upper + 1
                if refuted_upto + 1 > lower:
                    lower, witness = refuted_upto + 1, s
        ranges[side] = (lower, upper, witness)
        run.fact(f"min_t_{side}", {"lower": lower, "upper": upper})
    (ll, lu, lw), (rl, ru, rw) = ranges["left"], ranges["right"]
    hi_l = lu if lu is not None else float("inf")
    hi_r = ru if ru is not None else float("inf")
    if max(ll, rl) > min(hi_l, hi_r):
        # the witness whose lower bound overshoots the other side's upper bound
        for w, low in ((lw, ll), (rw, rl)):
            if w is not None and low > min(hi_l, hi_r):
                run.apply("torsionless_property_condition", [w.label], [w.module],
                          {"condition": 1, "n": int(min(hi_l, hi_r))})
    if lu is None or ru is None:
        run.note("an upper bound needs a certified finite self-injective dimension")
    return run.finish()


def _zaks(run: _Run):
    """d_l = d_r whenever both are finite."""
    dl, dr = _both_ids(run)
    v = run.apply("zaks", [], [], {})
    if v is None:
        run.note("not both self-injective dimensions are certified finite")
    return run.finish(premise_undecided=v is None)


def _refute_or_gap(run: _Run, n: int, reason: str):
    refs = _torsionless_refuters(run.ctx, n)
    if refs:
        s, obs = refs[0]
        run.evidence("torsionless_property_condition", s, {"condition": 1, "n": n}, obs)
        run.note(f"{reason}; sample {s.label} refutes the torsionless property of perp_{n}, as required")
    else:
        run.note(f"{reason}; no sample refutes the torsionless property of perp_{n} "
                 f"(universal premise not falsified by sampling)")


def _check_torsionless_property(run: _Run, n: int):
    for s, obs in _torsionless_refuters(run.ctx, n):
        run.apply("torsionless_property_condition", [s.label], [s.module], {"condition": 1, "n": n})
    run.tally("left_samples", len(run.ctx.suite("left")))


def _prop_4_4(run: _Run):
    """With Omega^m(mod R^op) in T_n(mod R^op) and the torsionless property of perp_n,
    d_r <= m.  m is the parameter k.  If d_r > m is certified, a premise must fail."""
    ctx, n, m = run.ctx, run.ctx.p.n, run.ctx.p.k
    dl, dr = _both_ids(run)
    v = dr.decide_le(m)
    if v is None:
        run.note(f"conclusion undecided: {_premise_text('id_right', dr)}")
        return run.finish(premise_undecided=True)
    if v:
        run.note(f"d_r <= {m}: conclusion holds")
        return run.finish()
    for s in ctx.suite("right"):
        if s.module.dim == 0:
            continue
        try:
            x = syzygy(s.module, m)
        except ResourceLimit:
            continue
        if x.dim and _safe_tf(x, n) is False:
            run.evidence("syzygy_not_torsionfree", s, {"m": m, "n": n}, {"syzygy_dim": x.dim})
            run.note(f"d_r > {m}; sample {s.label} has Omega^{m} not {n}-torsionfree, so the first premise fails")
            return run.finish()
    _refute_or_gap(run, n, f"d_r > {m}")
    return run.finish()


def _lemma_4_5(run: _Run):
    """Every simple S has Hom(S, I^0 + ... + I^n) != 0 unless S itself refutes the
    torsionless property of perp_n; dim Hom(S, I^i) = dim Ext^i(S, R) is cross-checked."""
    ctx, n = run.ctx, run.ctx.p.n
    _both_ids(run)
    if not ctx.a.op.has_minimal_data:
        run.note("needs radical and idempotents")
        return run.finish(premise_undecided=True)
    simples = [s for s in ctx.suite("left") if s.label.startswith("S")]
    for s in simples:
        run.apply("simple_socle_hom", [s.label], [s.module], {"n": n})
    return run.finish()


def _profile(ctx: _Ctx, side: str, length: int) -> list[DimResult]:
    ring = ring_for(ctx.a, side)
    terms = injective_coresolution_terms(ring, length)
    out = []
    for t in terms:
        try:
            out.append(projective_dimension(t, ctx.p.bound))
        except ResourceLimit as exc:
            out.append(DimResult.unknown(str(exc)))
    return out


def _prop_4_6(run: _Run):
    """d_r finite iff the torsionless property holds for some perp_n and the injective
    coresolution terms have finite flat dimension.  With d_r = d certified, every I^i
    (i <= n) has pd <= d and perp_max(1,d) has the torsionless property."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, dr = _both_ids(run)
    if not dr.is_finite:
        run.note(f"d_r not certified finite ({dr}); the equivalence cannot be decided")
        return run.finish(premise_undecided=True)
    d = dr.value
    prof = _profile(ctx, "left", n)
    run.fact("pd_profile", [p.to_json() for p in prof])
    for i, pd in enumerate(prof):
        if pd.decide_le(d) is False:
            term = injective_coresolution_terms(ctx.a, n)[i]
            run.apply("injective_term_pd", [f"I^{i}"], [term], {"bound_value": d})
    _check_torsionless_property(run, max(1, d))
    return run.finish()


@_check("injective_term_pd")
def _c_inj_term(ctx, mods, args):
    pd = projective_dimension(mods[0], ctx.p.bound)
    return pd.decide_le(args["bound_value"]), {"pd": pd.to_json()}


@_check("syzygy_not_torsionfree")
def _c_syz_not_tf(ctx, mods, args):
    x = syzygy(mods[0], args["m"])
    return x.dim == 0 or is_n_torsionfree(x, args["n"]), {"syzygy_dim": x.dim}


def _criterion(prof: list[DimResult], k: int) -> bool | None:
    vals = [p.decide_le(i + k) for i, p in enumerate(prof)]
    if False in vals:
        return False
    if None in vals:
        return None
    return True


def _thm_4_7(run: _Run):
    """With the torsionless property of perp_n and R g_n(k) or g_n(k)^op, d_r <= n+k-1.
    g_n(k) is established through the pd profile of injective coresolution terms
    (pd I^i <= i + k for i < n) and its double-Ext definition is sample-falsified."""
    ctx, n, k = run.ctx, run.ctx.p.n, run.ctx.p.k
    dl, dr = _both_ids(run)
    crit_op = _criterion(_profile(ctx, "left", n - 1)[:n], k)     # R is g_n(k)^op
    crit = _criterion(_profile(ctx, "right", n - 1)[:n], k)       # R is g_n(k)
    run.fact("g_n_k", crit)
    run.fact("g_n_k_op", crit_op)
    if crit:
        _per_sample(run, "double_ext_vanishing", ctx.suite("left"), {"n": n, "k": k},
                    want=lambda s: 0 < s.module.dim <= _PAIR_DIM)
    if crit_op:
        _per_sample(run, "double_ext_vanishing", ctx.suite("right"), {"n": n, "k": k},
                    want=lambda s: 0 < s.module.dim <= _PAIR_DIM)
    if not (crit or crit_op):
        if crit is None or crit_op is None:
            run.note("the pd-profile criterion is undecided")
            return run.finish(premise_undecided=True)
        run.note("the pd-profile criterion fails on both sides; the claim does not apply")
        return run.finish()
    v = dr.decide_le(n + k - 1)
    if v is None:
        run.note(f"conclusion undecided: {_premise_text('id_right', dr)}")
        return run.finish(premise_undecided=True)
    if v:
        run.note(f"d_r <= {n + k - 1}: conclusion holds")
    else:
        _refute_or_gap(run, n, f"d_r > {n + k - 1}")
    return run.finish()


def _cor_4_8(run: _Run):
    """If pd I^i(R) <= n for i <= n, then d_r <= n iff perp_n has the torsionless property."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, dr = _both_ids(run)
    prof = _profile(ctx, "left", n)
    run.fact("pd_profile", [p.to_json() for p in prof])
    vals = [p.decide_le(n) for p in prof]
    premise = False if False in vals else (None if None in vals else True)
    run.fact("premise", premise)
    if premise is None:
        run.note("premise undecided (pd profile)")
        return run.finish(premise_undecided=True)
    if not premise:
        run.note(f"premise fails: some I^i has pd > {n}")
        return run.finish()
    v = dr.decide_le(n)
    if v is None:
        run.note(f"undecided: {_premise_text('id_right', dr)}")
        return run.finish(premise_undecided=True)
    if v:
        _check_torsionless_property(run, n)
    else:
        _refute_or_gap(run, n, f"d_r > {n}")
    return run.finish()


def _cor_4_9(run: _Run):
    """If d_l <= n, then d_l = d_r <= n iff perp_n has the torsionless property."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, dr = _both_ids(run)
    v = dl.decide_le(n)
    if v is None:
        run.note(f"premise undecided: {_premise_text('id_left', dl)}")
        return run.finish(premise_undecided=True)
    if not v:
        run.note(f"premise fails: {_premise_text('id_left', dl)}")
        return run.finish()
    lhs = _gorenstein_premise(dl, dr, n)
    if lhs is None:
        run.note(f"undecided: {_premise_text('id_right', dr)}")
        return run.finish(premise_undecided=True)
    if lhs:
        _check_torsionless_property(run, n)
        run.note(f"d_l = d_r = {dl.value} <= {n}; every sampled module in perp_{n} must be torsionless")
    else:
        _refute_or_gap(run, n, "d_l != d_r or d_r > n")
    return run.finish()


def _q_5_1(run: _Run):
    """Is {T-dim <= n} closed under extensions and kernels of epimorphisms?  Pairs of
    sampled members yield extensions (each Ext^1 basis class) and kernels of random
    epimorphisms; a certified non-member is a counterexample (a negative answer)."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, _ = _both_ids(run)
    rng = ctx.aux_rng()
    members = []
    for s in ctx.suite("left"):
        if 0 < s.module.dim <= _PAIR_DIM and _tdim(s.module, ctx.p.bound).decide_le(n) is True:
            members.append(s)
    run.tally("members", len(members))
    for c, a in zip(members, members[1:]):
        _, classes = ext1_classes(c.module, a.module)
        for idx in range(1, min(len(classes), _EXT_CLASSES) + 1):
            run.apply("extension_closure", [c.label, a.label], [c.module, a.module], {"n": n, "class": idx})
            run.tally("extensions")
        for x, y in ((c, a), (a, c)):
            fmat = _random_hom(x.module, y.module, rng)
            if fmat is None:
                continue
            if ModHom(x.module, y.module, fmat).is_surjective():
                run.apply("kernel_closure", [x.label, y.label], [x.module, y.module],
                          {"n": n, "map": matrix_to_json(x.module.field, fmat)})
                run.tally("epimorphisms")
    if run.r.witnesses and dl.is_finite:
        run.note("d_l is finite, so the full right orthogonal class has the torsionless property "
                 "and a counterexample contradicts the positive answer expected in that case")
    return run.finish()


def _q_5_2(run: _Run):
    """Does d_r <= n force T-dim <= n for every module?  Tested on samples."""
    ctx, n = run.ctx, run.ctx.p.n
    dl, dr = _both_ids(run)
    v = dr.decide_le(n)
    if v is None or (v is False and not dr.certified):
        run.note(f"premise undecided: {_premise_text('id_right', dr)}")
        return run.finish(premise_undecided=True)
    if not v:
        run.note(f"premise fails: {_premise_text('id_right', dr)}")
        return run.finish()
    _per_sample(run, "tdim_at_most_n", ctx.suite("left"), {"n": n}, want=lambda s: s.module.dim > 0)
    return run.finish()


def _claim_5_2_n1(run: _Run):
    """With d_r <= 1, the first syzygy of every sample is certified infinitely torsionfree."""
    ctx = run.ctx
    dl, dr = _both_ids(run)
    v = dr.decide_le(1)
    if v is None:
        run.note(f"premise undecided: {_premise_text('id_right', dr)}")
        return run.finish(premise_undecided=True)
    if not v:
        run.note(f"premise fails: {_premise_text('id_right', dr)}")
        return run.finish()
    _per_sample(run, "first_syzygy_inf_torsionfree", ctx.suite("left"), {},
                want=lambda s: s.module.dim > 0)
    return run.finish()


_PROCEDURES = {
    "THM_1_4": (_thm_1_4, 0, None), "PROP_2_1": (_prop_2_1, 1, None), "LEMMA_2_3": (_lemma_2_3, 1, None),
    "LEMMA_3_1": (_lemma_3_1, None, None), "PROP_3_2": (_prop_3_2, None, None),
    "PROP_3_4": (_prop_3_4, 0, None), "COR_3_5": (_cor_3_5, 0, None), "THM_3_6": (_thm_3_6, 0, None),
    "PROP_3_10": (_prop_3_10, 0, None), "PROP_4_1": (_prop_4_1, 1, None), "PROP_4_2": (_prop_4_2, None, None),
    "COR_4_3": (_cor_4_3, None, None), "PROP_4_4": (_prop_4_4, 1, 1), "LEMMA_4_5": (_lemma_4_5, 1, None),
    "PROP_4_6": (_prop_4_6, 1, None), "THM_4_7": (_thm_4_7, 1, 1), "COR_4_8": (_cor_4_8, 1, None),
    "COR_4_9": (_cor_4_9, 1, None), "ZAKS": (_zaks, None, None), "Q_5_1": (_q_5_1, 0, None),
    "Q_5_2": (_q_5_2, 0, None), "CLAIM_5_2_N1": (_claim_5_2_n1, None, None),
}


def describe(claim: str) -> str:
    """The documented checking procedure of a claim."""
    fn = _PROCEDURES[claim][0]
    return " ".join((fn.__doc__ or "").split())


def falsify_claim(claim: str, a: Algebra, params: Params, size: SizeParams | None = None) -> ClaimReport:
    claim = claim.upper()
    if claim not in _PROCEDURES:
        raise ParameterError(f"unknown claim {claim!r}")
    fn, n_min, k_min = _PROCEDURES[claim]
    _need(params, n_min, k_min)
    ctx = _Ctx(a, params, size)
    report = ClaimReport(claim, ctx.algebra_ref(), params)
    return fn(_Run(ctx, report))


def question_experiment(claim: str, a: Algebra, params: Params, size: SizeParams | None = None) -> ClaimReport:
    if claim.upper() not in QUESTION_IDS:
        raise ParameterError(f"{claim!r} is not a question experiment")
    return falsify_claim(claim, a, params, size)


def construction_roundtrips(a: Algebra, params: Params, size: SizeParams | None = None) -> ClaimReport:
    """Run every constructive procedure on applicable samples and verify the certificates:
    cosyzygy embeddings, star/transpose sequences, the double pushout, compression of
    torsionfree resolutions and embeddings into finite projective dimension."""
    n = 1 if params.n is None else params.n
    if n < 1:
        raise ParameterError("n must be at least 1")
    p = Params(n, params.k, params.bound, params.samples, params.seed)
    _need(p)
    ctx = _Ctx(a, p, size)
    run = _Run(ctx, ClaimReport(ROUNDTRIPS, ctx.algebra_ref(), p))
    suite = ctx.suite("left")
    sizes = {}
    for name, fn in (("PROP_2_1", _prop_2_1), ("LEMMA_3_1", _lemma_3_1), ("PROP_3_2", _prop_3_2),
                     ("PROP_3_4", _prop_3_4), ("COR_3_5", _cor_3_5)):
        before = (run.r.checked, len(run.r.witnesses))
        try:
            fn(run)
        except PreconditionError as exc:
            run.note(f"{name}: precondition refused: {exc}")
        sizes[name] = {"checked": run.r.checked - before[0], "violations": len(run.r.witnesses) - before[1]}
    run.fact("per_construction", sizes)
    run.fact("suite_size", len(suite))
    return run.finish()
