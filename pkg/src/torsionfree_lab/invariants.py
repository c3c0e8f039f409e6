"""Homological dimensions with honest semi-decision semantics.

Every "for all degrees" quantifier is discharged either by a finite
self-injective dimension of the regular module (Ext against R vanishes beyond
it) or reported as verified up to a bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra
from .errors import MinimalityUnavailable, ResourceLimit, UnsupportedError
from .functors import evaluation_hom, ext_dim, regular, transpose
from .modules import Mod, ring_for, semisimple_top, vector_dual
from .resolution import resolution, syzygy

DEFAULT_BOUND = 8
# torsionfreeness tests resolve Tr m, whose resolution grows quickly over
# non-Gorenstein algebras; larger modules are reported as undecided
TORSIONFREE_DIM_BUDGET = 192

FINITE, INFINITY, GREATER_THAN, UNKNOWN = "finite", "infinity", "greater_than", "unknown"


@dataclass(frozen=True)
class DimResult:
    """A dimension value: a number, INFINITY, GREATER_THAN(bound) or unknown.

    For finite values ``exact`` False marks an upper bound, with ``lower`` the
    best lower bound found.
    """
    kind: str
    value: int | None = None
    certified: bool = False
    note: str = ""
    lower: int = 0
    exact: bool = True

    @classmethod
    def finite(cls, value: int, certified: bool, note: str = "", lower: int | None = None,
               exact: bool = True) -> "DimResult":
        return cls(FINITE, value, certified, note, value if lower is None else lower, exact)

    @classmethod
    def infinity(cls, note: str) -> "DimResult":
        return cls(INFINITY, None, True, note)

    @classmethod
    def greater_than(cls, bound: int, certified: bool, note: str = "") -> "DimResult":
        return cls(GREATER_THAN, bound, certified, note, bound + 1)

    @classmethod
    def unknown(cls, note: str, lower: int = 0) -> "DimResult":
        return cls(UNKNOWN, None, False, note, lower)

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def label(self) -> str:
        if self.kind == FINITE:
            return str(self.value)
        if self.kind == INFINITY:
            return "INFINITY"
        if self.kind == GREATER_THAN:
            return f"GREATER_THAN({self.value})"
        return "UNKNOWN"

    def __str__(self):
        s = self.label()
        if self.kind == FINITE and not self.exact:
            s = f"<= {s} (>= {self.lower})"
        return s + ("" if self.certified else " [up to bound]")

    def to_json(self) -> dict:
        out = {"value": self.value if self.kind == FINITE else self.label(),
               "certified": self.certified, "note": self.note}
        if not self.exact or self.kind == UNKNOWN:
            out["upper_bound_only"] = not self.exact
            out["lower"] = self.lower
        return out

    def decide_le(self, n: int) -> bool | None:
        """Is the dimension <= n?  None when undecided."""
        if self.kind == INFINITY:
            return False
        if self.kind == GREATER_THAN:
            return False if n <= self.value else None
        if self.lower > n:
            return False
        if self.kind == UNKNOWN:
            return None
        if self.exact:
            if self.certified:
                return self.value <= n
            return False if self.value > n else None
        return True if self.certified and self.value <= n else None


def _cached(ring: Algebra, key, compute):
    with ring._lock:
        hit = ring._cache.get(key)
    if hit is None:
        hit = compute()
        with ring._lock:
            ring._cache[key] = hit
    return hit


# -- self-injective dimension -------------------------------------------------

def regular_injective_dimension(ring: Algebra, bound: int = DEFAULT_BOUND) -> DimResult:
    """id of the regular module of ``ring`` (left module over ring): least n with Ext^{n+1}(R/J, R) = 0."""
    if ring.radical is None:
        raise UnsupportedError("radical unavailable")

    def compute():
        top, _ = semisimple_top(regular(ring))
        reg = regular(ring)
        for n in range(bound + 1):
            if ext_dim(top, reg, n + 1) == 0:
                return DimResult.finite(n, True, f"Ext^{n + 1}(R/J, R) = 0")
        return DimResult.greater_than(bound, True, f"Ext^{bound + 1}(R/J, R) != 0")

    # a search with a larger bound also answers smaller ones
    with ring._lock:
        known = [(k[1], v) for k, v in ring._cache.items() if isinstance(k, tuple) and k[0] == "injdim"]
    for b, res in known:
        if b >= bound:
            if res.is_finite and res.value <= bound:
                return res
            return DimResult.greater_than(bound, True, f"Ext^{bound + 1}(R/J, R) != 0")
    return _cached(ring, ("injdim", bound), compute)


def self_injective_dimension(a: Algebra, side: str = "left", bound: int = DEFAULT_BOUND) -> DimResult:
    return regular_injective_dimension(ring_for(a, side), bound)


def _finite_id(ring: Algebra, bound: int) -> int | None:
    """Certified finite id of the regular module, or None."""
    if ring.radical is None:
        return None
    r = regular_injective_dimension(ring, bound)
    return r.value if r.is_finite else None


# -- projective dimension -----------------------------------------------------

def projective_dimension(m: Mod, bound: int = DEFAULT_BOUND) -> DimResult:
    if m.dim == 0:
        return DimResult.finite(0, True, "zero module")
    minimal = m.ring.has_minimal_data
    res = resolution(m, 0, minimal)
    seen = {m.key(): 0}
    for n in range(bound + 1):
        try:
            res.extend_to(n)
        except ResourceLimit as exc:
            # P_{n-1} != 0, so pd >= n - 1 for a minimal resolution
            return DimResult.unknown(str(exc), lower=n - 1 if minimal else 0)
        omega = res.syzygy(n + 1)
        if omega.dim == 0:
            if minimal:
                return DimResult.finite(n, True, f"minimal syzygy Omega^{n + 1} = 0")
            return DimResult.finite(n, False, "non-minimal resolution stops", lower=0, exact=False)
        if minimal:
            k = omega.key()
            if k in seen:
                return DimResult.infinity(f"Omega^{n + 1} equals Omega^{seen[k]} (periodic minimal syzygy)")
            seen[k] = n + 1
    if not minimal:
        return DimResult.unknown(f"non-minimal resolution did not stop by degree {bound + 1}")
    return DimResult.greater_than(bound, True, f"minimal Omega^{bound + 1} != 0")


# -- orthogonality and torsionfreeness ----------------------------------------

def in_perp(m: Mod, n: int) -> bool:
    """m in the left orthogonal class of R in degrees 1..n."""
    reg = regular(m.ring)
    return all(ext_dim(m, reg, i) == 0 for i in range(1, n + 1))


def _guard(m: Mod):
    if m.dim > TORSIONFREE_DIM_BUDGET:
        raise ResourceLimit(f"module of dimension {m.dim} exceeds the torsionfreeness budget "
                            f"{TORSIONFREE_DIM_BUDGET}")


def is_n_torsionfree(m: Mod, n: int) -> bool:
    """Ext^i(Tr m, R) = 0 for i = 1..n over the opposite ring."""
    if n <= 0:
        return True
    _guard(m)
    return in_perp(transpose(m), n)


def first_torsionfree_failure(m: Mod, upto: int) -> int | None:
    _guard(m)
    tr = transpose(m)
    reg = regular(tr.ring)
    for i in range(1, upto + 1):
        if ext_dim(tr, reg, i) != 0:
            return i
    return None


@dataclass
class InfTorsionfree:
    value: bool
    certified: bool
    checked_upto: int
    first_failure: int | None = None

    def to_json(self) -> dict:
        return {"value": self.value, "certified": self.certified,
                "checked_upto": self.checked_upto, "first_failure": self.first_failure}


def inf_torsionfree(m: Mod, bound: int = DEFAULT_BOUND) -> InfTorsionfree:
    """Is m n-torsionfree for every n?  Certified via the opposite self-injective dimension."""
    if "projective" in m.meta:
        return InfTorsionfree(True, True, 0)
    _guard(m)
    if transpose(m).dim == 0:
        return InfTorsionfree(True, True, 0)
    d = _finite_id(m.ring.op, bound)
    upto = max(1, d) if d is not None else bound
    fail = first_torsionfree_failure(m, upto)
    if fail is not None:
        return InfTorsionfree(False, True, upto, fail)
    return InfTorsionfree(True, d is not None, upto)


@dataclass
class TorsionStatus:
    torsionless: bool
    reflexive: bool
    ev_consistent: bool
    inf_torsionfree: InfTorsionfree
    bound: int

    def to_json(self) -> dict:
        return {"torsionless": self.torsionless, "reflexive": self.reflexive,
                "ev_consistent": self.ev_consistent,
                "inf_torsionfree": self.inf_torsionfree.to_json(), "bound": self.bound}


def torsion_status(m: Mod, bound: int = DEFAULT_BOUND) -> TorsionStatus:
    fail = first_torsionfree_failure(m, 2)
    tl = fail is None or fail > 1
    rf = fail is None
    ev = evaluation_hom(m)
    r = ev.rank()
    consistent = (r == m.dim) == tl and (r == m.dim == ev.target.dim) == rf
    return TorsionStatus(tl, rf, consistent, inf_torsionfree(m, bound), bound)


# -- Gorenstein, orthogonal and torsionfree dimensions -------------------------

def orthogonal_dimension(m: Mod, bound: int = DEFAULT_BOUND) -> DimResult:
    """Least n with Ext^{n+i}(m, R) = 0 for all i >= 1."""
    reg = regular(m.ring)
    d = _finite_id(m.ring, bound)
    if d is not None:
        last = 0
        for j in range(1, d + 1):
            if ext_dim(m, reg, j):
                last = j
        return DimResult.finite(last, True, f"Ext vanishes beyond id R = {d}")
    last = 0
    for j in range(1, bound + 2):
        if ext_dim(m, reg, j):
            last = j
    if last == bound + 1:
        return DimResult.greater_than(bound, True, f"Ext^{bound + 1}(m, R) != 0")
    return DimResult.finite(last, False, f"Ext verified zero in degrees {last + 1}..{bound + 1}",
                            lower=last)


def _totally_reflexive_syzygy(m: Mod, n: int, bound: int, d_l: int | None, d_r: int | None):
    """Is Omega^n m totally reflexive (as far as the available certificates reach)?"""
    reg = regular(m.ring)
    top = n + max(1, d_l) if d_l is not None else max(n + 1, bound + 1)
    for j in range(n + 1, top + 1):
        if ext_dim(m, reg, j):
            return False
    x = syzygy(m, n)
    if x.dim == 0:
        return True
    upto = max(1, d_r) if d_r is not None else max(1, bound - n)
    return first_torsionfree_failure(x, upto) is None


def gorenstein_dimension(m: Mod, bound: int = DEFAULT_BOUND) -> DimResult:
    """Least n with Omega^n m totally reflexive (m in perp R and Tr m in perp R)."""
    d_l = _finite_id(m.ring, bound)
    d_r = _finite_id(m.ring.op, bound)
    certified = d_l is not None and d_r is not None
    for n in range(bound + 1):
        if _totally_reflexive_syzygy(m, n, bound, d_l, d_r):
            note = "both self-injective dimensions finite" if certified else f"verified up to bound {bound}"
            return DimResult.finite(n, certified, note, lower=n)
    # a nonvanishing Ext^{n+1} or a failing transpose test refutes G-dim <= n
    return DimResult.greater_than(bound, True, f"Omega^n m not totally reflexive for n <= {bound}")


def torsionfree_dimension_upper(m: Mod, bound: int = DEFAULT_BOUND) -> DimResult:
    """Upper bound: least n with Omega^n m infinitely torsionfree.

    The lower bound is 0, raised to 1 when m is certified not infinitely
    torsionfree (dimension 0 means m itself is).
    """
    st0 = inf_torsionfree(m, bound)
    lower = 1 if (not st0.value and st0.certified) else 0
    if st0.value:
        return DimResult.finite(0, st0.certified, "m is infinitely torsionfree", lower=0, exact=True)
    for n in range(1, bound + 1):
        try:
            st = inf_torsionfree(syzygy(m, n), bound)
        except ResourceLimit as exc:
            return DimResult.unknown(f"Omega^{n} m: {exc}", lower)
        if st.value:
            exact = st.certified and n == lower
            note = f"Omega^{n} m infinitely torsionfree"
            if not st.certified:
                note += f" (verified up to bound {bound})"
            return DimResult.finite(n, st.certified, note, lower=lower, exact=exact)
    return DimResult.unknown(f"no syzygy Omega^n m with n <= {bound} is infinitely torsionfree", lower)


# -- injective coresolution of the regular module ------------------------------

def injective_coresolution_pd_profile(a: Algebra, side: str = "left", length: int = 3,
                                      bound: int = DEFAULT_BOUND) -> list[DimResult]:
    """pd of I^0(R), ..., I^length(R), the terms of a minimal injective coresolution of R.

    I^i = D(Q_i) for Q_* a minimal projective resolution of D(R) over the opposite ring;
    the list stops early when the coresolution does.
    """
    ring = ring_for(a, side)
    if not ring.op.has_minimal_data:
        raise MinimalityUnavailable("minimal resolutions need radical and idempotents")
    terms = injective_coresolution_terms(ring, length)
    return [projective_dimension(t, bound) for t in terms]


def injective_coresolution_terms(ring: Algebra, length: int) -> list[Mod]:
    dr = vector_dual(regular(ring))
    res = resolution(dr, length, True)
    out = []
    for i in range(length + 1):
        q = res.term(i)
        if q.rank == 0:
            break
        inj = vector_dual(q.module)
        inj.name = f"I^{i}"
        out.append(inj)
    return out


# -- evaluation map bookkeeping -------------------------------------------------

@dataclass
class AuslanderBridgerReport:
    dim: int
    double_dual_dim: int
    ext1_transpose: int
    ext2_transpose: int
    ev_kernel: int
    ev_cokernel: int
    ok: bool
    notes: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"dim": self.dim, "double_dual_dim": self.double_dual_dim,
                "ext1_transpose": self.ext1_transpose, "ext2_transpose": self.ext2_transpose,
                "ev_kernel": self.ev_kernel, "ev_cokernel": self.ev_cokernel, "ok": self.ok,
                "notes": list(self.notes)}


def auslander_bridger_check(m: Mod) -> AuslanderBridgerReport:
    """Check 0 -> Ext^1(Tr m, R) -> m -> m** -> Ext^2(Tr m, R) -> 0 dimension by dimension."""
    tr = transpose(m)
    reg = regular(tr.ring)
    e1, e2 = ext_dim(tr, reg, 1), ext_dim(tr, reg, 2)
    ev = evaluation_hom(m)
    r = ev.rank()
    ker, coker = m.dim - r, ev.target.dim - r
    notes = []
    if not ev.is_intertwining():
        notes.append("evaluation map is not a homomorphism")
    if ker != e1:
        notes.append(f"dim ker ev = {ker} but dim Ext^1(Tr m, R) = {e1}")
    if coker != e2:
        notes.append(f"dim coker ev = {coker} but dim Ext^2(Tr m, R) = {e2}")
    return AuslanderBridgerReport(m.dim, ev.target.dim, e1, e2, ker, coker, not notes, notes)
