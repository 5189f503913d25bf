"""Sparse exact linear algebra over a :class:`~froblie.scalars.Field`.

Vectors are dicts ``key -> nonzero raw scalar``. Keys only need a total
order (ints for coordinate spaces, word tuples for free Lie algebra slices).
Echelon forms are fully reduced and pivot on the smallest key of a row,
so bases are canonical and reproducible.
"""
from __future__ import annotations

from .errors import DimensionMismatch


class Echelon:
    """Mutable reduced row echelon form.

    With ``track=True`` every row remembers how it was combined from the
    labelled input vectors, which gives solutions, kernels and certificates.
    """

    def __init__(self, field, track: bool = False):
        self.field = field
        self.rows: dict = {}
        self.combos: dict | None = {} if track else None

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict, combo: dict | None = None):
        F = self.field
        v = {k: c for k, c in v.items() if not F.is_zero(c)}
        hits = [k for k in v if k in self.rows]
        for piv in hits:
            c = v.get(piv)
            if c is None:
                continue
            neg = F.neg(c)
            F.axpy(v, neg, self.rows[piv])
            if combo is not None:
                F.axpy(combo, neg, self.combos[piv])
        return v, combo

    def add(self, v: dict, label=None):
        """Insert ``v``. Returns None when the rank grows; otherwise the
        dependency (``{label: coef}``, with the new label at coefficient 1,
        summing to zero) when tracking, or an empty dict."""
        F = self.field
        combo = None
        if self.combos is not None:
            combo = {label: F.one()}
        rem, combo = self.reduce(v, combo)
        if not rem:
            return combo if combo is not None else {}
        piv = min(rem)
        inv = F.inv(rem[piv])
        rem = F.scale(inv, rem)
        if combo is not None:
            combo = F.scale(inv, combo)
        for p, row in self.rows.items():
            c = row.get(piv)
            if c is not None:
                neg = F.neg(c)
                F.axpy(row, neg, rem)
                if combo is not None:
                    F.axpy(self.combos[p], neg, combo)
        self.rows[piv] = rem
        if combo is not None:
            self.combos[piv] = combo
        return None

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)[0]

    def express(self, v: dict) -> dict | None:
        """Coefficients over input labels with ``sum coef * input = v``."""
        if self.combos is None:
            raise ValueError("express() needs a tracking echelon")
        rem, _ = self.reduce(v)
        if rem:
            return None
        # RREF: a member is sum of v[pivot] * row(pivot)
        F = self.field
        out: dict = {}
        for piv, c in v.items():
            if piv in self.rows:
                F.axpy(out, c, self.combos[piv])
        return out

    def freeze(self, ambient=None) -> "Subspace":
        return Subspace(self.field, [self.rows[p] for p in sorted(self.rows)], ambient)


class Subspace:
    """An immutable subspace kept as reduced echelon rows."""

    __slots__ = ("field", "rows", "pivots", "ambient", "_index")

    def __init__(self, field, rows, ambient=None):
        self.field = field
        self.rows = tuple(rows)
        self.pivots = tuple(min(r) for r in self.rows)
        self.ambient = ambient
        self._index = dict(zip(self.pivots, self.rows))

    @classmethod
    def span(cls, field, vectors, ambient=None) -> "Subspace":
        ech = Echelon(field)
        for v in vectors:
            if v:
                ech.add(v)
        return ech.freeze(ambient)

    @classmethod
    def zero(cls, field, ambient=None) -> "Subspace":
        return cls(field, [], ambient)

    @classmethod
    def whole(cls, field, dim: int) -> "Subspace":
        one = field.one()
        return cls(field, [{i: one} for i in range(dim)], dim)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> list:
        return [dict(r) for r in self.rows]

    def echelon(self, track=False) -> Echelon:
        ech = Echelon(self.field, track=track)
        if track:
            for i, r in enumerate(self.rows):
                ech.add(r, ("basis", i))
        else:
            ech.rows = {p: dict(r) for p, r in zip(self.pivots, self.rows)}
        return ech

    def reduce(self, v: dict) -> dict:
        F = self.field
        v = dict(v)
        for piv in [k for k in v if k in self._index]:
            c = v.get(piv)
            if c is not None:
                F.axpy(v, F.neg(c), self._index[piv])
        return v

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: dict) -> list | None:
        """Coefficients of ``v`` over ``self.rows``; None if not a member."""
        if self.reduce(v):
            return None
        F = self.field
        return [v.get(p, F.zero()) for p in self.pivots]

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.pivots == other.pivots and self.rows == other.rows

    def __hash__(self):
        return hash(self.pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, list(self.rows) + list(other.rows), self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rows (u | u) and (w | 0); zero-left rows give the meet."""
        F = self.field
        ech = Echelon(F)
        for r in self.rows:
            row = {(0, k): v for k, v in r.items()}
            row.update({(1, k): v for k, v in r.items()})
            ech.add(row)
        for r in other.rows:
            ech.add({(0, k): v for k, v in r.items()})
        meet = [{k[1]: v for k, v in row.items()} for p, row in ech.rows.items() if p[0] == 1]
        return Subspace.span(F, meet, self.ambient)

    def map(self, fn) -> "Subspace":
        return Subspace.span(self.field, [fn(r) for r in self.rows], self.ambient)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, pivots={list(self.pivots)})"


def kernel(field, images, labels) -> list:
    """Kernel of the map sending basis vector ``labels[a]`` to ``images[a]``.

    Returns kernel vectors as dicts over ``labels``.
    """
    ech = Echelon(field, track=True)
    out = []
    for lab, img in zip(labels, images):
        dep = ech.add(img, lab)
        if dep is not None:
            out.append(dep)
    return out


def rank(field, vectors) -> int:
    return Subspace.span(field, vectors).dim


# -- dense matrices: list of rows of raw scalars, acting on column vectors --

def identity(field, n: int) -> list:
    zero, one = field.zero(), field.one()
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(field, A, B) -> list:
    if A and len(A[0]) != len(B):
        raise DimensionMismatch(f"{len(A)}x{len(A[0])} times {len(B)}x{len(B[0]) if B else 0}")
    add, mul, is_zero = field.add, field.mul, field.is_zero
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [field.zero()] * cols
        for k, a in enumerate(row):
            if is_zero(a):
                continue
            for j, b in enumerate(B[k]):
                if not is_zero(b):
                    acc[j] = add(acc[j], mul(a, b))
        out.append(acc)
    return out


def matpow(field, A, e: int) -> list:
    result = identity(field, len(A))
    base = A
    while e:
        if e & 1:
            result = matmul(field, result, base)
        base = matmul(field, base, base)
        e >>= 1
    return result


def mat_sub(field, A, B) -> list:
    return [[field.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(field, c, A) -> list:
    return [[field.mul(c, a) for a in row] for row in A]


def columns(field, A) -> list:
    """Column images as sparse dicts."""
    n = len(A[0]) if A else 0
    cols = [{} for _ in range(n)]
    for i, row in enumerate(A):
        for j, a in enumerate(row):
            if not field.is_zero(a):
                cols[j][i] = a
    return cols


def apply(field, cols, v: dict) -> dict:
    """Apply a map given by sparse columns to a sparse vector."""
    out: dict = {}
    for j, c in v.items():
        field.axpy(out, c, cols[j])
    return out


def inverse(field, A) -> list:
    n = len(A)
    cols = columns(field, A)
    ech = Echelon(field, track=True)
    for j in range(n):
        if ech.add(cols[j], j) is not None:
            raise ValueError("matrix is singular")
    # A * x_i = e_i  <=>  x_i = express(e_i) over column labels
    one = field.one()
    inv_cols = [ech.express({i: one}) for i in range(n)]
    zero = field.zero()
    return [[inv_cols[j].get(i, zero) for j in range(n)] for i in range(n)]


def is_identity(field, A) -> bool:
    one = field.one()
    for i, row in enumerate(A):
        for j, a in enumerate(row):
            if i == j:
                if a != one:
                    return False
            elif not field.is_zero(a):
                return False
    return True


def to_dense(field, v: dict, n: int) -> list:
    zero = field.zero()
    return [v.get(i, zero) for i in range(n)]


def from_dense(field, values) -> dict:
    return {i: a for i, a in enumerate(values) if not field.is_zero(a)}
