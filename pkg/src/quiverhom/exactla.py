"""Exact linear algebra over Q and prime fields.

Matrices are immutable, dense and row-major.  Elimination runs on sparse
row dictionaries internally; the reduced row echelon form is unique, so
every rank / kernel / solve result is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

DEFAULT_PRIME = 32003


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


@dataclass(frozen=True)
class Field:
    """Ground field: ``p == 0`` means the rationals, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p:
            if not (2 < self.p < 2**31) or not _is_prime(self.p):
                raise ValueError(f"field characteristic must be an odd prime < 2^31, got {self.p}")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Accept ``Q``, ``QQ``, ``Fp`` (default prime) or ``F<p>``."""
        t = text.strip()
        if t in ("Q", "QQ"):
            return cls(0)
        if t == "Fp":
            return cls(DEFAULT_PRIME)
        if t.startswith("F") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise ValueError(f"unknown field {text!r}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "Q" if self.p == 0 else f"F{self.p}"

    def __call__(self, x) -> int | Fraction:
        """Canonical element: a residue mod p, or an int / reduced Fraction over Q."""
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        t = type(x)
        if t is int:
            return x
        if t is Fraction:
            return _canon(x)
        return _canon(Fraction(x))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(a, -1, self.p)
        return _canon(Fraction(1) / a)

    def norm(self, a):
        return a % self.p if self.p else _canon(a)


def _canon(x):
    # integral rationals are stored as Python ints; arithmetic on them is much cheaper
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


Q = Field(0)


# ---------- sparse row kernel ----------
# A sparse row is a dict {column: nonzero value}.

def _rref_sparse(rows: Iterable[dict], field: Field) -> tuple[dict[int, dict], list[int]]:
    """Reduced row echelon form of the row space.

    Returns ``(pivot_rows, pivots)`` with ``pivot_rows[c]`` the unique RREF
    row whose leading column is ``c`` and ``pivots`` sorted ascending.
    """
    p = field.p
    piv: dict[int, dict] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v != 0}
        if not r:
            continue
        for c in sorted(c for c in r if c in piv):
            f = r.get(c)
            if not f:
                continue
            for cc, vv in piv[c].items():
                nv = r.get(cc, 0) - f * vv
                nv = nv % p if p else _canon(nv)
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        if not r:
            continue
        lead = min(r)
        inv = field.inv(r[lead])
        if p:
            r = {c: v * inv % p for c, v in r.items()}
        elif inv != 1:
            r = {c: _canon(v * inv) for c, v in r.items()}
        for c0, prow in piv.items():
            f = prow.get(lead)
            if f:
                for cc, vv in r.items():
                    nv = prow.get(cc, 0) - f * vv
                    nv = nv % p if p else _canon(nv)
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        piv[lead] = r
    return piv, sorted(piv)


def sparse_rank(rows: Iterable[dict], field: Field) -> int:
    return len(_rref_sparse(rows, field)[1])


def sparse_kernel(rows: Iterable[dict], ncols: int, field: Field) -> list[dict]:
    """Canonical echelon basis of the right kernel, as sparse vectors."""
    piv, pivots = _rref_sparse(rows, field)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: field.one}
        for c in pivots:
            x = piv[c].get(f)
            if x:
                v[c] = field.norm(-x)
        basis.append(v)
    return basis


class EchelonSpan:
    """Incrementally maintained span of vectors (sparse, fully reduced)."""

    def __init__(self, field: Field):
        self.field = field
        self.piv: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.piv)

    def reduce(self, vec: dict) -> dict:
        p = self.field.p
        r = {c: v for c, v in vec.items() if v != 0}
        for c in sorted(c for c in r if c in self.piv):
            f = r.get(c)
            if not f:
                continue
            for cc, vv in self.piv[c].items():
                nv = r.get(cc, 0) - f * vv
                nv = nv % p if p else _canon(nv)
                if nv:
                    r[cc] = nv
                else:
                    r.pop(cc, None)
        return r

    def add(self, vec: dict) -> bool:
        """Add ``vec``; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = self.field.p
        lead = min(r)
        inv = self.field.inv(r[lead])
        r = {c: (v * inv % p if p else _canon(v * inv)) for c, v in r.items()}
        for prow in self.piv.values():
            f = prow.get(lead)
            if f:
                for cc, vv in r.items():
                    nv = prow.get(cc, 0) - f * vv
                    nv = nv % p if p else _canon(nv)
                    if nv:
                        prow[cc] = nv
                    else:
                        prow.pop(cc, None)
        self.piv[lead] = r
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


# ---------- dense matrices ----------

@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    # construction
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), cols, tuple(field(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [tuple(field(x) for x in c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise ValueError("column length does not match row count")
        return cls(field, rows, len(cols), tuple(c[i] for i in range(rows) for c in cols))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    @classmethod
    def from_sparse_columns(cls, field: Field, columns: Sequence[dict], rows: int) -> "Matrix":
        ent = [field.zero] * (rows * len(columns))
        ncol = len(columns)
        for j, col in enumerate(columns):
            for i, v in col.items():
                ent[i * ncol + j] = field(v)
        return cls(field, rows, ncol, tuple(ent))

    # access
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def _srows(self) -> list[dict]:
        cached = self.__dict__.get("_sr")
        if cached is None:
            c = self.cols
            e = self.entries
            cached = []
            for i in range(self.rows):
                r = e[i * c:(i + 1) * c]
                cached.append({j: v for j, v in enumerate(r) if v})
            object.__setattr__(self, "_sr", cached)
        return cached

    def _scols(self) -> list[dict]:
        cached = self.__dict__.get("_sc")
        if cached is None:
            c = self.cols
            e = self.entries
            cached = [{} for _ in range(c)]
            for i in range(self.rows):
                base = i * c
                for j in range(c):
                    v = e[base + j]
                    if v:
                        cached[j][i] = v
            object.__setattr__(self, "_sc", cached)
        return cached

    def sparse_rows(self) -> list[dict]:
        return [dict(r) for r in self._srows()]

    def sparse_cols(self) -> list[dict]:
        return [dict(c) for c in self._scols()]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # arithmetic
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.p
        n, m, k = self.rows, other.cols, self.cols
        out = [0] * (n * m)
        orows = other._srows()
        se = self.entries
        for i in range(n):
            base = i * m
            for t in range(k):
                a = se[i * k + t]
                if a:
                    for j, b in orows[t].items():
                        out[base + j] += a * b
        if p:
            out = [x % p for x in out]
        else:
            out = [_canon(x) for x in out]
        return Matrix(self.field, n, m, tuple(out))

    def apply(self, vec: Sequence) -> tuple:
        p = self.field.p
        res = [0] * self.rows
        scols = self._scols()
        hit = False
        for j, v in enumerate(vec):
            if v:
                for i, a in scols[j].items():
                    res[i] += a * v
                    hit = True
        if not hit:
            return tuple(res)
        if p:
            return tuple(x % p for x in res)
        return tuple(_canon(x) for x in res)

    def apply_sparse(self, vec: dict) -> dict:
        """``self @ vec`` for a sparse column given as {index: value}."""
        p = self.field.p
        res: dict = {}
        scols = self._scols()
        for j, v in vec.items():
            for i, a in scols[j].items():
                res[i] = res.get(i, 0) + a * v
        out = {}
        for i, x in res.items():
            x = x % p if p else _canon(x)
            if x:
                out[i] = x
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        nm = self.field.norm
        return Matrix(self.field, self.rows, self.cols,
                      tuple(nm(a + b) if b else a for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        nm = self.field.norm
        return Matrix(self.field, self.rows, self.cols,
                      tuple(nm(a - b) if b else a for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        if c == 1:
            return self
        nm = self.field.norm
        return Matrix(self.field, self.rows, self.cols, tuple(nm(c * a) if a else a for a in self.entries))

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix.from_rows(self.field, [self.row(i) + other.row(i) for i in range(self.rows)],
                                cols=self.cols + other.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix.from_rows(self.field, [[self[i, j] for j in idx] for i in range(self.rows)], cols=len(idx))

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(idx), self.cols, tuple(x for i in idx for x in self.row(i)))

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            out = out @ self
        return out

    # linear algebra
    def rref(self) -> tuple["Matrix", list[int]]:
        piv, pivots = _rref_sparse(self.sparse_rows(), self.field)
        rows = []
        for c in pivots:
            r = [self.field.zero] * self.cols
            for j, v in piv[c].items():
                r[j] = v
            rows.append(r)
        return Matrix.from_rows(self.field, rows, cols=self.cols), pivots

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> "Matrix":
        return kernel_basis(self)

    def solve(self, b: Sequence):
        return solve(self, b)

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if not self.is_invertible():
            raise ValueError("matrix is not invertible")
        return solve_many(self, Matrix.identity(self.field, self.rows))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.to_rows()})"


def rank(m: Matrix) -> int:
    return sparse_rank(m.sparse_rows(), m.field)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical reduced-echelon basis of ``{x : m x = 0}``."""
    basis = sparse_kernel(m.sparse_rows(), m.cols, m.field)
    return Matrix.from_sparse_columns(m.field, basis, m.cols)


def solve(m: Matrix, b: Sequence):
    """Echelon particular solution of ``m x = b`` (free variables zero), or None."""
    if len(b) != m.rows:
        raise ValueError("right-hand side has wrong length")
    f = m.field
    rows = m.sparse_rows()
    for i, r in enumerate(rows):
        bi = f(b[i])
        if bi != 0:
            r[m.cols] = bi
    piv, pivots = _rref_sparse(rows, f)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [f.zero] * m.cols
    for c in pivots:
        x[c] = piv[c].get(m.cols, f.zero)
    return tuple(x)


def solve_many(m: Matrix, rhs: Matrix) -> Matrix | None:
    """Solve ``m X = rhs`` column by column in one elimination; None if any column fails."""
    if rhs.rows != m.rows:
        raise ValueError("right-hand side has wrong row count")
    f = m.field
    n = m.cols
    rows = m.sparse_rows()
    for i, r in enumerate(rows):
        for j in range(rhs.cols):
            v = rhs[i, j]
            if v != 0:
                r[n + j] = v
    piv, pivots = _rref_sparse(rows, f)
    if pivots and pivots[-1] >= n:
        return None
    out = [[f.zero] * rhs.cols for _ in range(n)]
    for c in pivots:
        for j in range(rhs.cols):
            out[c][j] = piv[c].get(n + j, f.zero)
    return Matrix.from_rows(f, out, cols=rhs.cols)


def complement_basis(span_cols: Matrix, dim: int) -> list[int]:
    """Indices of unit vectors that extend the column span to the full space.

    Greedy in index order, so the choice is deterministic.
    """
    f = span_cols.field if span_cols.cols else None
    if f is None:
        return list(range(dim))
    es = EchelonSpan(f)
    for col in span_cols.sparse_cols():
        es.add(col)
    chosen = []
    for i in range(dim):
        if es.add({i: f.one}):
            chosen.append(i)
    return chosen


def column_space(m: Matrix) -> Matrix:
    """Basis (as columns) of the column space, in canonical echelon form."""
    piv, pivots = _rref_sparse(m.sparse_cols(), m.field)
    return Matrix.from_sparse_columns(m.field, [piv[c] for c in pivots], m.rows)
