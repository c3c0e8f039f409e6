"""Finite-dimensional algebras given by structure constants or bound quivers.

Paths compose right to left: an arrow ``a: s -> t`` satisfies ``a = e_t a e_s``,
so ``A e_i`` is spanned by paths starting at vertex ``i``.
"""
from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import AlgebraError, UnsupportedError
from .linalg import Field, Subspace


@dataclass(frozen=True)
class Summand:
    """The left ideal R e with a basis and the restricted regular action."""
    key: int | None
    idempotent: np.ndarray
    basis: np.ndarray        # d x b columns
    coords: np.ndarray       # b x d, coords @ basis = I
    action: np.ndarray       # d x b x b

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


class Algebra:
    """Associative unital algebra with e_i e_j = sum_k table[i, j, k] e_k."""

    def __init__(self, field: Field, table, unit, *, radical: Subspace | None = None,
                 idempotents=None, labels=None, name: str = "", path_lengths=None,
                 quiver: "QuiverPresentation | None" = None, is_opposite: bool = False):
        self.field = field
        self.table = field.array(table) if not isinstance(table, np.ndarray) or table.dtype != field.dtype else table
        d = self.table.shape[0]
        if self.table.shape != (d, d, d):
            raise AlgebraError(f"structure table must have shape (d, d, d), got {self.table.shape}")
        self.dim = d
        self.unit = field.array(unit).reshape(d)
        self.radical = radical
        self.idempotents = None if idempotents is None else [field.array(e).reshape(d) for e in idempotents]
        self.labels = list(labels) if labels is not None else [f"b{i}" for i in range(d)]
        self.name = name
        self.path_lengths = None if path_lengths is None else tuple(path_lengths)
        self.quiver = quiver
        self.is_opposite = is_opposite
        self._op: Algebra | None = None
        self._cache: dict = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim}, {self.field})"

    # -- structure -------------------------------------------------------

    @property
    def op(self) -> "Algebra":
        if self._op is None:
            with self._lock:
                if self._op is None:
                    other = Algebra(self.field, np.ascontiguousarray(self.table.transpose(1, 0, 2)), self.unit,
                                    radical=self.radical, idempotents=self.idempotents, labels=self.labels,
                                    name=_op_name(self.name), path_lengths=self.path_lengths,
                                    is_opposite=not self.is_opposite)
                    other._op = self
                    self._op = other
        return self._op

    @property
    def base(self) -> "Algebra":
        return self.op if self.is_opposite else self

    @property
    def left_mult(self) -> np.ndarray:
        """L[i] is the matrix of x -> e_i x."""
        if "L" not in self._cache:
            self._cache["L"] = np.ascontiguousarray(self.table.transpose(0, 2, 1))
        return self._cache["L"]

    @property
    def right_mult(self) -> np.ndarray:
        """R[j] is the matrix of x -> x e_j."""
        if "R" not in self._cache:
            self._cache["R"] = np.ascontiguousarray(self.table.transpose(1, 2, 0))
        return self._cache["R"]

    def element(self, i: int) -> np.ndarray:
        v = self.field.zeros(self.dim)
        v[i] = self.field.one
        return v

    def lmat(self, x) -> np.ndarray:
        return self.field.lincomb(x, self.left_mult)

    def rmat(self, x) -> np.ndarray:
        return self.field.lincomb(x, self.right_mult)

    def mult(self, x, y) -> np.ndarray:
        return self.field.matmul(self.lmat(x), np.asarray(y, dtype=self.field.dtype))

    @property
    def has_minimal_data(self) -> bool:
        return self.radical is not None and self.idempotents is not None

    @property
    def radical_cols(self) -> np.ndarray:
        if self.radical is None:
            raise UnsupportedError(f"radical unavailable for {self.name or 'algebra'}")
        return np.ascontiguousarray(self.radical.basis.T)

    def summand(self, key: int | None) -> Summand:
        """R e_key (key None means the unit, i.e. R itself)."""
        ck = ("summand", key)
        s = self._cache.get(ck)
        if s is not None:
            return s
        f = self.field
        if key is None:
            e = self.unit
            basis = f.eye(self.dim)
            coords = f.eye(self.dim)
        else:
            if self.idempotents is None:
                raise UnsupportedError("no idempotents recorded for this algebra")
            e = self.idempotents[key]
            basis = f.colspace(self.rmat(e))
            coords = f.left_inverse(basis)
        action = np.stack([f.mdot(coords, self.left_mult[l], basis) for l in range(self.dim)]) \
            if basis.shape[1] else f.zeros((self.dim, 0, 0))
        s = Summand(key, e, basis, coords, action)
        self._cache[ck] = s
        return s

    def summand_keys(self, minimal: bool) -> list:
        if minimal and self.idempotents is not None:
            return list(range(len(self.idempotents)))
        return [None]


def _op_name(name: str) -> str:
    if name.endswith("^op"):
        return name[:-3]
    return f"{name}^op" if name else ""


# -- validation -------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool = True
    errors: list = dc_field(default_factory=list)

    def add(self, axiom: str, witness, message: str):
        self.ok = False
        self.errors.append({"axiom": axiom, "witness": list(witness), "message": message})

    def raise_if_failed(self, cls=AlgebraError):
        if not self.ok:
            first = self.errors[0]
            raise cls(f"{first['axiom']}: {first['message']} (witness {tuple(first['witness'])})",
                      witness=tuple(first["witness"]))


def validate_algebra(a: Algebra) -> ValidationReport:
    f, d, c = a.field, a.dim, a.table
    rep = ValidationReport()
    # (e_i e_j) e_k versus e_i (e_j e_k), as (ij, kl) blocks
    left = f.matmul(c.reshape(d * d, d), c.reshape(d, d * d)).reshape(d, d, d, d)
    flat = c.reshape(d * d, d)
    for i in range(d):
        right_i = f.matmul(flat, c[i]).reshape(d, d, d)   # [j, k, l]
        bad = np.argwhere(left[i] != right_i)
        if bad.size:
            j, k, l = (int(x) for x in bad[0])
            rep.add("associativity", (i, j, k, l),
                    f"coefficient of e_{l} differs in (e_{i} e_{j}) e_{k} and e_{i} (e_{j} e_{k})")
            break
    lu = a.lmat(a.unit)
    ru = a.rmat(a.unit)
    eye = f.eye(d)
    for name, m in (("left unit", lu), ("right unit", ru)):
        bad = np.argwhere(m != eye)
        if bad.size:
            k, j = (int(x) for x in bad[0])
            rep.add("unit", (j, k), f"{name} fails on basis element {j}")
    if a.radical is not None and rep.ok:
        _check_radical(a, rep)
    if a.idempotents is not None and rep.ok:
        es = a.idempotents
        total = f.zeros(d)
        for i, ei in enumerate(es):
            total = f.add(total, ei)
            for j, ej in enumerate(es):
                prod = a.mult(ei, ej)
                want = ei if i == j else f.zeros(d)
                if not f.equal(prod, want):
                    rep.add("idempotents", (i, j), "e_i e_j differs from delta_ij e_i")
        if not f.equal(total, a.unit):
            rep.add("idempotents", (len(es),), "idempotents do not sum to the unit")
    return rep


def _check_radical(a: Algebra, rep: ValidationReport):
    f = a.field
    jc = a.radical_cols
    if jc.shape[1] == 0:
        return
    rad = a.radical
    for l in range(a.dim):
        for side, mats in (("left", a.left_mult), ("right", a.right_mult)):
            img = f.matmul(mats[l], jc)
            if not rad.contains(img.T):
                rep.add("radical ideal", (l,), f"{side} multiplication by basis element {l} leaves the radical")
                return
    power = jc
    for k in range(1, a.dim + 2):
        if power.shape[1] == 0:
            return
        prods = [f.matmul(a.lmat(power[:, i]), jc) for i in range(power.shape[1])]
        power = f.colspace(np.hstack(prods))
    rep.add("radical nilpotent", (a.dim + 1,), "radical power does not vanish")


# -- bound quivers ----------------------------------------------------------

@dataclass(frozen=True)
class QuiverPresentation:
    """Relations are tuples of (coefficient, arrow indices in traversal order)."""
    vertices: int
    arrows: tuple
    relations: tuple
    nilpotency: int

    @classmethod
    def from_labels(cls, vertices: int, arrows, relations, nilpotency: int) -> "QuiverPresentation":
        arrows = tuple((int(s), int(t), str(lbl)) for s, t, lbl in arrows)
        index = {lbl: i for i, (_, _, lbl) in enumerate(arrows)}
        if len(index) != len(arrows):
            raise AlgebraError("arrow labels must be distinct")
        rels = tuple(tuple(_parse_relation(r, index)) for r in relations)
        return cls(int(vertices), arrows, rels, int(nilpotency))

    def label_of(self, path) -> str:
        src, arrs = path
        if not arrs:
            return f"e{src + 1}"
        return "*".join(self.arrows[i][2] for i in reversed(arrs))


def _parse_monomial(text, index) -> tuple:
    if isinstance(text, (list, tuple)):
        labels = list(text)
    else:
        labels = [t for t in re.split(r"[*\s]+", text.strip()) if t]
    try:
        # written right to left: "b*a" traverses a first
        return tuple(index[t] for t in reversed(labels))
    except KeyError as exc:
        raise AlgebraError(f"unknown arrow label {exc.args[0]!r} in relation") from None


def _parse_relation(rel, index):
    """A relation is an expression string ("b*a - d*c") or a list of [coefficient, monomial]."""
    if isinstance(rel, str):
        terms = []
        for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", rel):
            body = body.strip()
            m = re.match(r"^(\d+(?:/\d+)?)\s+(.*)$", body)
            coef = Fraction(m.group(1)) if m else Fraction(1)
            mono = m.group(2) if m else body
            terms.append((-coef if sign == "-" else coef, _parse_monomial(mono, index)))
        return terms
    terms = []
    for term in rel:
        if not (isinstance(term, (list, tuple)) and len(term) == 2):
            raise AlgebraError(f"relation term must be [coefficient, path], got {term!r}")
        terms.append((Fraction(str(term[0])), _parse_monomial(term[1], index)))
    return terms


def _enumerate_paths(q: QuiverPresentation) -> list[tuple]:
    paths = [(v, ()) for v in range(q.vertices)]
    level = list(paths)
    for _ in range(1, q.nilpotency):
        nxt = []
        for src, arrs in level:
            end = q.arrows[arrs[-1]][1] if arrs else src
            for i, (s, _, _) in enumerate(q.arrows):
                if s == end:
                    nxt.append((src, arrs + (i,)))
        nxt.sort(key=lambda p: p[1])
        paths.extend(nxt)
        level = nxt
        if not level:
            break
    return paths


def build_bound_quiver_algebra(q: QuiverPresentation, field: Field, name: str = "") -> Algebra:
    nv, arrows, big = q.vertices, q.arrows, q.nilpotency
    if nv < 1:
        raise AlgebraError("quiver needs at least one vertex")
    if big < 1:
        raise AlgebraError("nilpotency bound must be at least 1")
    for i, (s, t, _) in enumerate(arrows):
        if not (0 <= s < nv and 0 <= t < nv):
            raise AlgebraError(f"arrow {i} has endpoint outside 0..{nv - 1}", witness=(i,))

    def target(path):
        src, arrs = path
        return arrows[arrs[-1]][1] if arrs else src

    paths = _enumerate_paths(q)
    pindex = {p: i for i, p in enumerate(paths)}
    npaths = len(paths)

    def compose(p, r):
        """p * r (r traversed first); None when not composable or too long."""
        if target(r) != p[0]:
            return None
        w = (r[0], r[1] + p[1])
        if len(w[1]) >= big:
            return None
        return w

    gens = []
    for ri, rel in enumerate(q.relations):
        vec = field.zeros(npaths)
        for coef, arrs in rel:
            if len(arrs) < 2:
                raise AlgebraError(f"relation {ri} has a term of length {len(arrs)} < 2 (not admissible)",
                                   witness=(ri,))
            for a0, a1 in zip(arrs, arrs[1:]):
                if arrows[a0][1] != arrows[a1][0]:
                    raise AlgebraError(f"relation {ri} contains a non-composable path", witness=(ri,))
            if len(arrs) >= big:
                continue
            path = (arrows[arrs[0]][0], tuple(arrs))
            vec[pindex[path]] = field.add(vec[pindex[path]], field.scalar(coef))
        if not field.is_zero(vec):
            gens.append(vec)

    rows = []
    for vec in gens:
        terms = [(paths[i], vec[i]) for i in np.flatnonzero(vec != 0)]
        for u in paths:
            for v in paths:
                out = field.zeros(npaths)
                hit = False
                for w, c in terms:
                    uw = compose(u, w)
                    if uw is None:
                        continue
                    uwv = compose(uw, v)
                    if uwv is None:
                        continue
                    out[pindex[uwv]] = field.add(out[pindex[uwv]], c)
                    hit = True
                if hit and not field.is_zero(out):
                    rows.append(out)

    # leading term = largest path in basis order, so eliminate on reversed columns
    if rows:
        red, piv_rev = field.rref(np.stack(rows)[:, ::-1])
        red = red[: len(piv_rev), ::-1]
        pivots = [npaths - 1 - c for c in piv_rev]
    else:
        red, pivots = field.zeros((0, npaths)), []
    pset = set(pivots)
    basis_paths = [i for i in range(npaths) if i not in pset]
    bpos = {p: k for k, p in enumerate(basis_paths)}
    d = len(basis_paths)
    normal = field.zeros((npaths, d))
    for p in basis_paths:
        normal[p, bpos[p]] = field.one
    for r, p in enumerate(pivots):
        for c in basis_paths:
            if red[r, c] != 0:
                normal[p, bpos[c]] = field.neg(red[r, c])

    table = field.zeros((d, d, d))
    for i, pi in enumerate(basis_paths):
        for j, pj in enumerate(basis_paths):
            w = compose(paths[pi], paths[pj])
            if w is not None:
                table[i, j] = normal[pindex[w]]
    unit = field.zeros(d)
    idems = []
    for v in range(nv):
        e = field.zeros(d)
        e[bpos[v]] = field.one
        idems.append(e)
        unit[bpos[v]] = field.one
    lengths = [len(paths[p][1]) for p in basis_paths]
    rad_rows = [field.zeros(d) for _ in range(0)]
    for k, ln in enumerate(lengths):
        if ln >= 1:
            row = field.zeros(d)
            row[k] = field.one
            rad_rows.append(row)
    radical = Subspace(field, d, np.stack(rad_rows) if rad_rows else field.zeros((0, d)))
    labels = [q.label_of(paths[p]) for p in basis_paths]
    return Algebra(field, table, unit, radical=radical, idempotents=idems, labels=labels,
                   name=name, path_lengths=lengths, quiver=q)


# -- radical ----------------------------------------------------------------

def compute_radical(a: Algebra) -> Subspace:
    f = a.field
    if a.path_lengths is not None:
        rows = []
        for k, ln in enumerate(a.path_lengths):
            if ln >= 1:
                row = f.zeros(a.dim)
                row[k] = f.one
                rows.append(row)
        return Subspace(f, a.dim, np.stack(rows) if rows else f.zeros((0, a.dim)))
    if f.is_prime:
        raise UnsupportedError("radical of a prime-field algebra needs quiver provenance or must be supplied")
    rad = _dickson_radical(a)
    probe = Algebra(f, a.table, a.unit, radical=rad)
    rep = ValidationReport()
    _check_radical(probe, rep)
    rep.raise_if_failed()
    quotient = _quotient_algebra(a, rad)
    if quotient.dim and _dickson_radical(quotient).dim != 0:
        raise AlgebraError("trace-form radical failed the semisimple-quotient re-check")
    return rad


def _dickson_radical(a: Algebra) -> Subspace:
    f, d = a.field, a.dim
    L = a.left_mult
    gram = f.zeros((d, d))
    for i in range(d):
        for j in range(i, d):
            t = sum(f.matmul(L[i], L[j]).diagonal(), Fraction(0))
            gram[i, j] = gram[j, i] = t
    k = f.kernel(gram)
    return Subspace.span(f, d, k.T)


def _quotient_algebra(a: Algebra, ideal: Subspace) -> Algebra:
    f, d = a.field, a.dim
    piv = ideal.pivots
    rest = [c for c in range(d) if c not in set(piv)]
    proj = f.zeros((len(rest), d))
    for r, c in enumerate(rest):
        proj[r, c] = f.one
    if piv:
        proj[:, piv] = f.neg(ideal.basis[:, rest].T)
    table = f.zeros((len(rest), len(rest), len(rest)))
    for i, ci in enumerate(rest):
        for j, cj in enumerate(rest):
            table[i, j] = f.matmul(proj, a.table[ci, cj])
    return Algebra(f, table, f.matmul(proj, a.unit))


def opposite_algebra(a: Algebra) -> Algebra:
    return a.op


# -- library ----------------------------------------------------------------

def _quiver(vertices, arrows, relations, n) -> QuiverPresentation:
    return QuiverPresentation.from_labels(vertices, arrows, relations, n)


_BUILTIN_RE = re.compile(r"^\s*([A-Z0-9]+)\s*(?:\(([^)]*)\))?\s*$")


def builtin_quiver(name: str) -> QuiverPresentation:
    m = _BUILTIN_RE.match(name.upper())
    if not m:
        raise AlgebraError(f"unknown builtin algebra {name!r}")
    key, args = m.group(1), m.group(2)
    try:
        nums = [int(x) for x in args.split(",")] if args else []
    except ValueError:
        raise AlgebraError(f"bad parameters in {name!r}") from None
    if key == "K1" and not nums:
        return _quiver(1, [], [], 1)
    if key == "DUAL2" and not nums:
        return _quiver(1, [(0, 0, "a")], ["a*a"], 2)
    if key == "TRUNCPOLY" and len(nums) == 1 and nums[0] >= 1:
        n = nums[0]
        return _quiver(1, [(0, 0, "x")], ["*".join(["x"] * n)] if n >= 2 else [], n)
    if key == "A2" and not nums:
        return _quiver(2, [(0, 1, "alpha")], [], 2)
    if key == "NG3" and not nums:
        return _quiver(1, [(0, 0, "x"), (0, 0, "y")], ["x*x", "y*y", "x*y", "y*x"], 2)
    if key == "NAKAYAMA" and len(nums) == 2 and nums[0] >= 1 and nums[1] >= 1:
        c, l = nums
        arrows = [(i, (i + 1) % c, f"a{i + 1}") for i in range(c)]
        return _quiver(c, arrows, [], l)
    raise AlgebraError(f"unknown builtin algebra {name!r}")


def canonical_builtin_name(name: str) -> str:
    m = _BUILTIN_RE.match(name.upper())
    if not m:
        raise AlgebraError(f"unknown builtin algebra {name!r}")
    key, args = m.group(1), m.group(2)
    if args is None:
        return key
    return f"{key}({','.join(str(int(x)) for x in args.split(','))})"


BUILTIN_NAMES = ("K1", "DUAL2", "TRUNCPOLY(3)", "A2", "NG3", "NAKAYAMA(2,2)")


def builtin_algebra(name: str, field: Field | None = None) -> Algebra:
    field = field or Field.gf(32003)
    q = builtin_quiver(name)
    a = build_bound_quiver_algebra(q, field, name=canonical_builtin_name(name))
    validate_algebra(a).raise_if_failed()
    return a


def algebra_from_table(field: Field, table, unit, *, radical_rows=None, idempotents=None,
                       labels=None, name: str = "") -> Algebra:
    """Structure-constant algebra; computes the radical over the rationals when not supplied."""
    a = Algebra(field, table, unit, idempotents=idempotents, labels=labels, name=name)
    validate_algebra(a).raise_if_failed()
    if radical_rows is not None:
        a.radical = Subspace.span(field, a.dim, field.array(radical_rows).reshape(-1, a.dim))
    elif not field.is_prime:
        a.radical = compute_radical(a)
    if a.radical is not None and a.idempotents is None and a.dim - a.radical.dim == 1:
        a.idempotents = [a.unit]
    validate_algebra(a).raise_if_failed()
    return a
