"""Finite-dimensional Lie algebras given by sparse structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .errors import DimensionMismatch, NotClosed
from .linalg import Echelon, Subspace, apply, columns


class StructAlgebra:
    """Lie algebra on ``e_0 .. e_{dim-1}`` with ``[e_i, e_j] = table[i, j]``.

    ``table`` maps ordered pairs to sparse vectors; missing pairs are zero.
    The constructor stores what it is given, so a malformed tensor can be
    loaded and then inspected by :func:`check_algebra`.
    """

    def __init__(self, field, dim: int, table: dict | None = None, name: str = ""):
        self.field = field
        self.dim = dim
        self.name = name
        self.table = {}
        for (i, j), vec in (table or {}).items():
            if not (0 <= i < dim and 0 <= j < dim) or any(not 0 <= k < dim for k in vec):
                raise DimensionMismatch(f"bracket ({i},{j}) outside dimension {dim}")
            vec = {k: v for k, v in vec.items() if not field.is_zero(v)}
            if vec:
                self.table[i, j] = vec

    @classmethod
    def from_brackets(cls, field, dim: int, brackets: dict, name: str = "") -> "StructAlgebra":
        """Build from ``{(i, j): vec}`` with each unordered pair given once."""
        table = {}
        for (i, j), vec in brackets.items():
            vec = {k: field.coerce(v) for k, v in vec.items()}
            table[i, j] = vec
            table[j, i] = field.scale(field.neg(field.one()), vec)
        return cls(field, dim, table, name)

    @classmethod
    def abelian(cls, field, dim: int) -> "StructAlgebra":
        return cls(field, dim, {}, "abelian")

    def basis_vector(self, i: int) -> dict:
        return {i: self.field.one()}

    def basis(self) -> list:
        return [self.basis_vector(i) for i in range(self.dim)]

    def bracket(self, x: dict, y: dict) -> dict:
        F = self.field
        out: dict = {}
        table = self.table
        mul = F.mul
        for i, a in x.items():
            for j, b in y.items():
                vec = table.get((i, j))
                if vec is not None:
                    F.axpy(out, mul(a, b), vec)
        return out

    def simple(self, vectors) -> dict:
        """Left-normed ``[v1, v2, ..., vs]``."""
        it = iter(vectors)
        cur = dict(next(it))
        for v in it:
            if not cur:
                return {}
            cur = self.bracket(cur, v)
        return cur

    def ad(self, x: dict) -> list:
        """Sparse columns of ``y -> [x, y]``."""
        return [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]

    def is_automorphism(self, matrix) -> list:
        """Basis pairs (i, j) where ``g[e_i, e_j] != [g e_i, g e_j]``."""
        cols = columns(self.field, matrix)
        bad = []
        for i, j in combinations(range(self.dim), 2):
            lhs = apply(self.field, cols, self.table.get((i, j), {}))
            rhs = self.bracket(cols[i], cols[j])
            if lhs != rhs:
                bad.append((i, j))
        return bad

    def whole(self) -> Subspace:
        return Subspace.whole(self.field, self.dim)

    def __repr__(self):
        return f"StructAlgebra({self.name or 'L'}, dim={self.dim}, field={self.field.spec})"


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" or "jacobi"
    triple: tuple

    def __str__(self):
        return f"{self.kind} violation at {tuple(i + 1 for i in self.triple)}"


def check_algebra(alg: StructAlgebra) -> list:
    """All antisymmetry and Jacobi violations (empty list means ok)."""
    F = alg.field
    out = []
    for i in range(alg.dim):
        if alg.table.get((i, i)):
            out.append(Violation("antisymmetry", (i, i)))
        for j in range(i + 1, alg.dim):
            s = dict(alg.table.get((i, j), {}))
            F.axpy(s, F.one(), alg.table.get((j, i), {}))
            if s:
                out.append(Violation("antisymmetry", (i, j)))
    e = alg.basis()
    for i, j, k in combinations(range(alg.dim), 3):
        acc = alg.bracket(e[i], alg.bracket(e[j], e[k]))
        F.axpy(acc, F.one(), alg.bracket(e[j], alg.bracket(e[k], e[i])))
        F.axpy(acc, F.one(), alg.bracket(e[k], alg.bracket(e[i], e[j])))
        if acc:
            out.append(Violation("jacobi", (i, j, k)))
    return out


def bracket_span(alg: StructAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """``[A, B]`` as a subspace."""
    ech = Echelon(alg.field)
    for a in A.rows:
        for b in B.rows:
            v = alg.bracket(a, b)
            if v:
                ech.add(v)
    return ech.freeze(alg.dim)


def is_subalgebra(alg: StructAlgebra, sub: Subspace) -> bool:
    return bracket_span(alg, sub, sub) <= sub


def subalgebra_closure(vectors, alg: StructAlgebra) -> Subspace:
    """Smallest bracket-closed subspace containing ``vectors``."""
    ech = Echelon(alg.field)
    frontier = []
    for v in vectors:
        if v and ech.add(v) is None:
            frontier.append(dict(v))
    known = list(frontier)
    while frontier:
        fresh = []
        for x in frontier:
            for y in known:
                z = alg.bracket(x, y)
                if z and ech.add(z) is None:
                    fresh.append(z)
        known.extend(fresh)
        frontier = fresh
    return ech.freeze(alg.dim)


def ideal_closure(vectors, alg: StructAlgebra, inside: Subspace | None = None) -> Subspace:
    """Smallest subspace containing ``vectors`` and stable under ``ad`` of ``inside``."""
    inside = inside or alg.whole()
    ech = Echelon(alg.field)
    frontier = [dict(v) for v in vectors if v and ech.add(v) is None]
    while frontier:
        fresh = []
        for x in frontier:
            for y in inside.rows:
                z = alg.bracket(x, y)
                if z and ech.add(z) is None:
                    fresh.append(z)
        frontier = fresh
    return ech.freeze(alg.dim)


@dataclass
class SeriesReport:
    terms: list = dc_field(default_factory=list)
    nilpotency_class: int | None = None

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not None

    @property
    def dims(self) -> list:
        return [t.dim for t in self.terms]

    def describe(self) -> str:
        cls = self.nilpotency_class if self.is_nilpotent else "not nilpotent"
        return f"dims {self.dims}, class {cls}"


def lower_central_series(sub: Subspace, alg: StructAlgebra, cap: int | None = None) -> SeriesReport:
    """``g_1 = sub``, ``g_{i+1} = [g_i, sub]``, until zero or stable or ``cap`` steps."""
    if not is_subalgebra(alg, sub):
        raise NotClosed("lower central series needs a subalgebra")
    cap = 2 * alg.dim if cap is None else cap
    report = SeriesReport([sub])
    if sub.dim == 0:
        report.nilpotency_class = 0
        return report
    cur = sub
    for step in range(1, cap + 1):
        nxt = bracket_span(alg, cur, sub)
        report.terms.append(nxt)
        if nxt.dim == 0:
            report.nilpotency_class = step
            return report
        if nxt.dim == cur.dim:
            return report
        cur = nxt
    return report


def nilpotency_class(alg: StructAlgebra, sub: Subspace | None = None, cap: int | None = None):
    return lower_central_series(sub or alg.whole(), alg, cap).nilpotency_class


def kernel_and_meet(maps, subs, dim: int, field) -> Subspace:
    """Intersection of the kernels of ``maps`` (dense, rows x dim) and ``subs``."""
    result = Subspace.whole(field, dim)
    for M in maps:
        if M and len(M[0]) != dim:
            raise DimensionMismatch(f"map with {len(M[0])} columns on a {dim}-dim space")
        cols = columns(field, M) if M else [{} for _ in range(dim)]
        result = result.intersect(map_kernel(field, cols, result))
    for S in subs:
        if S.ambient is not None and S.ambient != dim:
            raise DimensionMismatch(f"subspace of ambient {S.ambient} in dimension {dim}")
        result = result.intersect(S)
    return result


def map_kernel(field, cols, domain: Subspace) -> Subspace:
    """Kernel of the linear map with sparse columns ``cols`` restricted to ``domain``."""
    ech = Echelon(field, track=True)
    kern = []
    for k, row in enumerate(domain.rows):
        dep = ech.add(apply(field, cols, row), k)
        if dep is not None:
            vec: dict = {}
            for lab, c in dep.items():
                field.axpy(vec, c, domain.rows[lab])
            kern.append(vec)
    return Subspace.span(field, kern, domain.ambient)


def gl(field, k: int) -> StructAlgebra:
    """``gl_k`` on matrix units ``E_ab`` (index ``a*k + b``)."""
    one = field.one()
    table = {}
    idx = lambda a, b: a * k + b
    for a in range(k):
        for b in range(k):
            for c in range(k):
                for d in range(k):
                    vec: dict = {}
                    if b == c:
                        field.axpy(vec, one, {idx(a, d): one})
                    if d == a:
                        field.axpy(vec, field.neg(one), {idx(c, b): one})
                    if vec:
                        table[idx(a, b), idx(c, d)] = vec
    return StructAlgebra(field, k * k, table, f"gl{k}")


def change_basis(alg: StructAlgebra, P, P_inv) -> StructAlgebra:
    """Structure constants in the basis given by the columns of ``P``."""
    F = alg.field
    pc = columns(F, P)
    pinv = columns(F, P_inv)
    table = {}
    for i in range(alg.dim):
        for j in range(alg.dim):
            v = apply(F, pinv, alg.bracket(pc[i], pc[j]))
            if v:
                table[i, j] = v
    return StructAlgebra(F, alg.dim, table, alg.name)

