"""Exact dense linear algebra over prime fields GF(p) and the rationals.

Prime-field matrices are numpy int64 arrays with entries in [0, p).  Rational
matrices are numpy object arrays of ``fractions.Fraction``.  Every routine
returns fully reduced entries, so plain ``np.array_equal`` is exact equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_I64_MAX = 2**63 - 1
_F64_EXACT = 2**53
_PANEL = 64
_to_fraction = np.frompyfunc(Fraction, 1, 1)


def _fmod(x: np.ndarray, p: int) -> np.ndarray:
    """x mod p for integer-valued float64 arrays with |x| < 2^53 (much faster than np.mod)."""
    q = x * (1.0 / p)
    np.floor(q, out=q)
    q *= -p
    q += x
    # the rounded quotient is off by at most one
    np.add(q, p, out=q, where=q < 0)
    np.subtract(q, p, out=q, where=q >= p)
    return q


class FieldMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """A prime field GF(p) with p < 2**31, or the rationals."""

    __slots__ = ("kind", "p")

    def __init__(self, kind: str, p: int | None = None):
        if kind == "prime_field":
            if p is None or not _is_prime(int(p)) or p >= 2**31:
                raise ValueError(f"prime modulus required (2 <= p < 2^31), got {p!r}")
            p = int(p)
        elif kind == "rationals":
            p = None
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    @classmethod
    def gf(cls, p: int) -> "Field":
        return cls("prime_field", p)

    @classmethod
    def qq(cls) -> "Field":
        return cls("rationals")

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``gf:p`` or ``qq``."""
        t = text.strip().lower()
        if t in ("qq", "q", "rationals"):
            return cls.qq()
        if t.startswith("gf:"):
            try:
                return cls.gf(int(t[3:]))
            except ValueError as exc:
                raise ValueError(f"bad field spec {text!r}: {exc}") from None
        raise ValueError(f"bad field spec {text!r}")

    @classmethod
    def from_spec(cls, spec: dict) -> "Field":
        kind = spec.get("kind")
        if kind == "prime_field":
            return cls.gf(int(spec["p"]))
        if kind == "rationals":
            return cls.qq()
        raise ValueError(f"bad field spec {spec!r}")

    def spec(self) -> dict:
        if self.p is None:
            return {"kind": "rationals"}
        return {"kind": "prime_field", "p": self.p}

    def __str__(self):
        return "qq" if self.p is None else f"gf:{self.p}"

    def __repr__(self):
        return f"Field({self})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    # -- scalars ---------------------------------------------------------

    def scalar(self, x):
        """Canonical scalar from an int, Fraction, or string like ``"3"``/``"-1/2"``."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            return Fraction(x)
        x = Fraction(x)
        num = x.numerator % self.p
        den = x.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator divisible by {self.p}")
        return (num * pow(den, -1, self.p)) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def format(self, x) -> str:
        if self.p is None:
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x))

    # -- arrays ------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        """Convert nested data (ints, Fractions, strings, arrays) into a canonical array."""
        if isinstance(data, np.ndarray) and data.dtype != object and self.p is not None:
            return np.mod(data.astype(np.int64), self.p)
        raw = np.array(data, dtype=object)
        if raw.size == 0:
            return np.zeros(raw.shape, dtype=self.dtype) if self.p is not None else self.zeros(raw.shape)
        flat = [self.scalar(x) for x in raw.ravel()]
        if self.p is not None:
            return np.array(flat, dtype=np.int64).reshape(raw.shape)
        out = np.empty(len(flat), dtype=object)
        out[:] = flat
        return out.reshape(raw.shape)

    def zeros(self, shape) -> np.ndarray:
        if self.p is not None:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.one
        return out

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            return np.mod(a, self.p)
        if a.dtype != object:
            return _to_fraction(a.astype(object)).astype(object) if a.size else self.zeros(a.shape)
        return a

    def neg(self, a):
        return np.mod(-a, self.p) if self.p is not None else -a

    def add(self, a, b):
        return np.mod(a + b, self.p) if self.p is not None else a + b

    def sub(self, a, b):
        return np.mod(a - b, self.p) if self.p is not None else a - b

    def scale(self, c, a):
        if self.p is not None:
            return np.mod(int(c) * a, self.p)
        return Fraction(c) * a

    def is_zero(self, a) -> bool:
        return not np.any(a != 0)

    def equal(self, a, b) -> bool:
        return a.shape == b.shape and not np.any(a != b)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        k = a.shape[-1]
        out_shape = a.shape[:-1] + b.shape[1:]
        if k == 0 or 0 in out_shape:
            return self.zeros(out_shape)
        if self.p is None:
            return a @ b
        p = self.p
        if (p - 1) * (p - 1) * k < _F64_EXACT:
            # integer products below 2^53 are exact in float64, and BLAS is far faster
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return _fmod(prod, p).astype(np.int64)
        if (p - 1) * (p - 1) * k <= _I64_MAX:
            return np.mod(a @ b, p)
        # split b into 16-bit halves so partial sums stay below 2^63
        lo = b & 0xFFFF
        hi = b >> 16
        step = max(1, _I64_MAX // ((p - 1) * 0xFFFF))
        acc = np.zeros(out_shape, dtype=np.int64)
        for s in range(0, k, step):
            sl = slice(s, s + step)
            part_lo = np.mod(a[..., sl] @ lo[sl], p)
            part_hi = np.mod(a[..., sl] @ hi[sl], p)
            acc = np.mod(acc + part_lo + np.mod(part_hi * 65536, p), p)
        return acc

    def mdot(self, *mats) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def lincomb(self, coeffs, stack: np.ndarray) -> np.ndarray:
        """Sum of coeffs[l] * stack[l] over the leading axis."""
        coeffs = np.asarray(coeffs, dtype=self.dtype)
        flat = stack.reshape(stack.shape[0], -1)
        return self.matmul(coeffs.reshape(1, -1), flat).reshape(stack.shape[1:])

    def kron(self, a, b) -> np.ndarray:
        out = np.kron(a, b)
        return np.mod(out, self.p) if self.p is not None else out

    # -- elimination -------------------------------------------------------

    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = np.array(a, dtype=self.dtype, copy=True)
        if self.p is not None and a.shape[0] > _PANEL and a.shape[1] > _PANEL:
            return self._rref_blocked(a)
        return self._rref_unblocked(a)

    def _panel_pivots(self, panel: np.ndarray) -> tuple[list[int], list[int]]:
        """Forward elimination on a narrow panel; returns (pivot rows, pivot columns)."""
        p = self.p
        a = panel.copy()
        order = np.arange(a.shape[0])
        prow, pcol = [], []
        t = 0
        for c in range(a.shape[1]):
            if t == a.shape[0]:
                break
            col = a[t:, c]
            i = int(np.argmax(col != 0))
            if col[i] == 0:
                continue
            i += t
            if i != t:
                a[[t, i]] = a[[i, t]]
                order[[t, i]] = order[[i, t]]
            below = a[t + 1:, c]
            nz = np.flatnonzero(below)
            if nz.size:
                f = np.mod(below[nz] * self.inv(a[t, c]), p)
                rows = t + 1 + nz
                a[rows, c:] = np.mod(a[rows, c:] - np.outer(f, a[t, c:]), p)
            prow.append(int(order[t]))
            pcol.append(c)
            t += 1
        return prow, pcol

    def _rref_blocked(self, a: np.ndarray, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
        # pivots are found panel by panel; the elimination of every other row
        # is then one modular matrix product per panel
        p = self.p
        rows, cols = a.shape
        fast = (p - 1) * (p - 1) * (_PANEL + 1) < _F64_EXACT
        w = a.astype(np.float64) if fast else a

        def mm(x, y):
            return _fmod(x @ y, p) if fast else self.matmul(x, y)

        active = np.arange(rows)
        done = np.zeros(0, dtype=np.int64)
        pivots: list[int] = []
        for c0 in range(0, cols, _PANEL):
            if active.size == 0:
                break
            c1 = min(cols, c0 + _PANEL)
            prow, pcol = self._panel_pivots(w[active, c0:c1].astype(np.int64))
            if not prow:
                continue
            sel = active[prow]
            pc = c0 + np.array(pcol)
            x = w[sel, c0:]
            inv = self.inverse(x[:, pcol].astype(np.int64))
            x = mm(inv.astype(w.dtype), x)
            w[sel, c0:] = x
            keep = np.ones(active.size, dtype=bool)
            keep[prow] = False
            rest = active[keep]
            targets = np.concatenate([done, rest]) if reduced else rest
            if targets.size:
                f = w[np.ix_(targets, pc)]
                live = targets[f.any(axis=1)]
                if live.size:
                    if fast:
                        # entries stay below p + PANEL * p^2 < 2^53 before reduction
                        w[live, c0:] = _fmod(w[live, c0:] - w[np.ix_(live, pc)] @ x, p)
                    else:
                        w[live, c0:] = np.mod(w[live, c0:] - self.matmul(w[np.ix_(live, pc)], x), p)
            done = np.concatenate([done, sel])
            active = rest
            pivots.extend(int(c) for c in pc)
        out = np.zeros((rows, cols), dtype=np.int64)
        out[: done.size] = w[done]
        return out, pivots

    def _rref_unblocked(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        p = self.p
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c] != 0)
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            piv = a[r, c]
            if piv != 1:
                inv = self.inv(piv)
                a[r, c:] = np.mod(a[r, c:] * inv, p) if p is not None else a[r, c:] * inv
            others = np.flatnonzero(a[:, c] != 0)
            others = others[others != r]
            if others.size:
                f = a[others, c]
                upd = a[others, c:] - np.outer(f, a[r, c:])
                a[others, c:] = np.mod(upd, p) if p is not None else upd
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, a: np.ndarray) -> int:
        if 0 in a.shape:
            return 0
        if a.shape[0] > a.shape[1]:
            a = a.T
        if self.p is not None and a.shape[0] > _PANEL and a.shape[1] > _PANEL:
            return len(self._rref_blocked(np.asarray(a, dtype=np.int64), reduced=False)[1])
        return len(self.rref(a)[1])

    def kernel_free(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Column basis K of the null space and the free coordinates where K is the identity."""
        rows, cols = a.shape
        if rows == 0:
            return self.eye(cols), list(range(cols))
        red, piv = self.rref(a)
        pset = set(piv)
        free = [c for c in range(cols) if c not in pset]
        k = self.zeros((cols, len(free)))
        for j, c in enumerate(free):
            k[c, j] = self.one
        if piv and free:
            k[piv, :] = self.neg(red[: len(piv)][:, free])
        return k, free

    def kernel(self, a: np.ndarray) -> np.ndarray:
        return self.kernel_free(a)[0]

    def solve(self, a: np.ndarray, b: np.ndarray):
        """A particular solution x of a @ x = b (b a vector or matrix), or None."""
        cols = a.shape[1]
        b2 = b.reshape(a.shape[0], -1) if b.size else self.zeros((a.shape[0], 1 if b.ndim == 1 else b.shape[1]))
        red, piv = self.rref(np.hstack([a, b2]) if a.shape[0] else self.zeros((0, cols + b2.shape[1])))
        if any(c >= cols for c in piv):
            return None
        x = self.zeros((cols, b2.shape[1]))
        apiv = [c for c in piv if c < cols]
        if apiv:
            x[apiv, :] = red[: len(apiv), cols:]
        return x.reshape((cols,) + b.shape[1:])

    def colspace(self, a: np.ndarray) -> np.ndarray:
        """Canonical column basis of the column space (transposed rref rows)."""
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], 0))
        red, piv = self.rref(a.T)
        return np.ascontiguousarray(red[: len(piv)].T)

    def inverse(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        red, piv = self.rref(np.hstack([a, self.eye(n)]))
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return red[:, n:]

    def left_inverse(self, k: np.ndarray) -> np.ndarray:
        """L with L @ k = I for k of full column rank."""
        n, m = k.shape
        if m == 0:
            return self.zeros((0, n))
        _, rows = self.rref(k.T)
        if len(rows) != m:
            raise ValueError("matrix does not have full column rank")
        out = self.zeros((m, n))
        out[:, rows] = self.inverse(k[rows, :])
        return out

    def right_inverse(self, a: np.ndarray) -> np.ndarray:
        """S with a @ S = I for a of full row rank."""
        n, m = a.shape
        if n == 0:
            return self.zeros((m, 0))
        _, cols = self.rref(a)
        if len(cols) != n:
            raise ValueError("matrix does not have full row rank")
        out = self.zeros((m, n))
        out[cols, :] = self.inverse(a[:, cols])
        return out


def _check_same(*fields):
    f0 = fields[0]
    for f in fields[1:]:
        if f != f0:
            raise FieldMismatch(f"mixed fields {f0} and {f}")
    return f0


@dataclass(frozen=True, eq=False)
class Mat:
    field: Field
    data: np.ndarray

    @classmethod
    def from_rows(cls, field: Field, rows, cols: int | None = None) -> "Mat":
        rows = list(rows)
        if not rows:
            return cls(field, field.zeros((0, cols or 0)))
        return cls(field, field.array(rows))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def T(self) -> "Mat":
        return Mat(self.field, np.ascontiguousarray(self.data.T))

    def __matmul__(self, other: "Mat") -> "Mat":
        f = _check_same(self.field, other.field)
        return Mat(f, f.matmul(self.data, other.data))

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field == other.field
                and self.field.equal(self.data, other.data))

    def __hash__(self):
        return hash((self.field, self.data.shape, tuple(self.field.format(x) for x in self.data.ravel())))

    def tolist(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.data]


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space in reduced echelon form."""
    field: Field
    ambient_dim: int
    basis: np.ndarray

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors) -> "Subspace":
        vecs = np.asarray(vectors, dtype=field.dtype) if not isinstance(vectors, np.ndarray) else vectors
        vecs = vecs.reshape(-1, ambient_dim) if vecs.size else field.zeros((0, ambient_dim))
        if vecs.shape[0] == 0:
            return cls(field, ambient_dim, field.zeros((0, ambient_dim)))
        red, piv = field.rref(vecs)
        return cls(field, ambient_dim, red[: len(piv)])

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row != 0)[0]) for row in self.basis]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=self.field.dtype).reshape(-1, self.ambient_dim)
        return self.field.rank(np.vstack([self.basis, v])) == self.dim

    def includes(self, other: "Subspace") -> bool:
        return self.contains(other.basis) if other.dim else True

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_same(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return Subspace.span(self.field, self.ambient_dim, np.vstack([self.basis, other.basis]))

    def intersection(self, other: "Subspace") -> "Subspace":
        f = _check_same(self.field, other.field)
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if self.dim == 0 or other.dim == 0:
            return Subspace.span(f, self.ambient_dim, f.zeros((0, self.ambient_dim)))
        # x u = y v  <=>  (x, -y) in left kernel of [u; v]
        stacked = np.vstack([self.basis, other.basis])
        k = f.kernel(stacked.T)
        coeffs = k[: self.dim, :].T
        return Subspace.span(f, self.ambient_dim, f.matmul(coeffs, self.basis))

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient_dim == other.ambient_dim and self.field.equal(self.basis, other.basis))

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.dim))


@dataclass(frozen=True)
class SubspaceComparison:
    sum: Subspace
    intersection: Subspace
    u_in_v: bool
    v_in_u: bool

    def contains(self, which: str, vector) -> bool:
        return (self.sum if which == "sum" else self.intersection).contains(vector)


def rref(m: Mat) -> tuple[Mat, int, list[int]]:
    red, piv = m.field.rref(m.data)
    return Mat(m.field, red), len(piv), piv


def kernel_basis(m: Mat) -> Subspace:
    k = m.field.kernel(m.data)
    return Subspace.span(m.field, m.cols, k.T)


def solve_all(m: Mat, b) -> tuple[np.ndarray, Subspace] | None:
    b = m.field.array(b)
    if b.shape[0] != m.rows:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {m.rows}")
    x = m.field.solve(m.data, b)
    if x is None:
        return None
    return x, kernel_basis(m)


def subspace_ops(u: Subspace, v: Subspace) -> SubspaceComparison:
    _check_same(u.field, v.field)
    if u.ambient_dim != v.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return SubspaceComparison(u + v, u.intersection(v), v.includes(u), u.includes(v))
