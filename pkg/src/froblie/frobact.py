"""Metacyclic Frobenius actions: descriptors, actions on algebras, gradings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import sympy

from .errors import (MissingRoot, NoRoot, NotApplicable, NotDirectSum,
                     OrderMismatch)
from .fdlie import StructAlgebra, bracket_span, map_kernel, nilpotency_class
from .linalg import (Subspace, apply, columns, identity, inverse, is_identity,
                     mat_sub, matmul, matpow)
from .scalars import FieldSpec, Scalar, make_field, primitive_root


# -- descriptors ---------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    ok: bool
    divisor: int | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "ok"
        where = f" at d={self.divisor}" if self.divisor is not None else ""
        return f"violation{where}: {self.reason}"


def validate_descriptor(n: int, q: int, r: int) -> Verdict:
    """Check that ``r`` has multiplicative order exactly ``q`` modulo every
    divisor ``d > 1`` of ``n``; the first failing divisor is reported."""
    if n < 2 or q < 2:
        return Verdict(False, None, "need n >= 2 and q >= 2")
    if not 1 <= r <= n - 1:
        return Verdict(False, None, f"r={r} not in 1..{n - 1}")
    if gcd(n, q) != 1:
        return Verdict(False, None, f"gcd(n, q) = {gcd(n, q)}")
    for d in sympy.divisors(n)[1:]:
        if gcd(r, d) != 1:
            return Verdict(False, d, f"r={r} is not a unit mod {d}")
        order = sympy.n_order(r, d)
        if order != q:
            return Verdict(False, d, f"order of {r} mod {d} is {order}, not {q}")
    return Verdict(True)


@dataclass(frozen=True)
class FrobeniusDescriptor:
    n: int
    q: int
    r: int
    omega: Scalar | None = None

    def check(self) -> Verdict:
        return validate_descriptor(self.n, self.q, self.r)

    def with_root(self, field) -> "FrobeniusDescriptor":
        try:
            omega = primitive_root(field, self.n)
        except NoRoot as exc:
            raise MissingRoot(str(exc)) from exc
        return FrobeniusDescriptor(self.n, self.q, self.r, omega)

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "r": self.r}


def orbit(i: int, descriptor: FrobeniusDescriptor) -> tuple:
    """``(i, r i, r^2 i, ..., r^(q-1) i)`` mod n."""
    n, r = descriptor.n, descriptor.r
    out, cur = [], i % n
    for _ in range(descriptor.q):
        out.append(cur)
        cur = cur * r % n
    return tuple(out)


def index_orbits(descriptor: FrobeniusDescriptor) -> list:
    """Partition of the nonzero residues into h-orbits, each starting at its least element."""
    seen, out = set(), []
    for i in range(1, descriptor.n):
        if i not in seen:
            o = orbit(i, descriptor)
            seen.update(o)
            out.append(o)
    return out


# -- actions -------------------------------------------------------------------

@dataclass
class AlgebraAction:
    """``phi`` and ``h`` as dense matrices acting on column vectors.

    ``h`` may be None for a kernel-only action.
    """

    phi: list
    h: list | None
    descriptor: FrobeniusDescriptor

    def phi_cols(self, field):
        return columns(field, self.phi)

    def h_cols(self, field):
        return columns(field, self.h)


def _order_violation(field, M, order: int, name: str) -> str | None:
    if not is_identity(field, matpow(field, M, order)):
        return f"{name}^{order} != id"
    for p in sympy.primefactors(order):
        if is_identity(field, matpow(field, M, order // p)):
            return f"{name} has order dividing {order // p}, not {order}"
    return None


def validate_action(alg: StructAlgebra, action: AlgebraAction) -> list:
    """Every violated action invariant, as readable strings (empty means ok)."""
    F = alg.field
    d = action.descriptor
    out = []
    mats = [("phi", action.phi, d.n)]
    if action.h is not None:
        mats.append(("h", action.h, d.q))
    for name, M, order in mats:
        if len(M) != alg.dim or any(len(row) != alg.dim for row in M):
            out.append(f"{name} is not {alg.dim}x{alg.dim}")
            return out
    for name, M, order in mats:
        try:
            inverse(F, M)
        except ValueError:
            out.append(f"{name} is singular")
            continue
        msg = _order_violation(F, M, order, name)
        if msg:
            out.append(msg)
        for i, j in alg.is_automorphism(M):
            out.append(f"{name} is not an automorphism on pair (e{i + 1}, e{j + 1})")
    if action.h is not None and not out:
        lhs = matmul(F, matmul(F, inverse(F, action.h), action.phi), action.h)
        if lhs != matpow(F, action.phi, d.r):
            out.append(f"h^-1 phi h != phi^{d.r}")
    return out


# -- gradings --------------------------------------------------------------------

@dataclass
class GradedDecomposition:
    components: list
    omega: Scalar
    n: int

    def dims(self) -> list:
        return [c.dim for c in self.components]

    @property
    def m(self) -> int:
        return self.components[0].dim

    def degree_of(self, v: dict) -> int | None:
        """The index of a homogeneous nonzero vector, else None."""
        for i, c in enumerate(self.components):
            if c.contains(v):
                return i
        return None


def _check_working_field(field, n: int):
    if field.characteristic and n % field.characteristic == 0:
        raise NotDirectSum(f"characteristic {field.characteristic} divides n={n}; "
                           "use sylow_reduction or work in another characteristic")
    try:
        return primitive_root(field, n)
    except NoRoot as exc:
        raise MissingRoot(f"{field.spec} has no primitive {n}-th root of unity; "
                          "use extend_scalars") from exc


def decompose(alg: StructAlgebra, action: AlgebraAction) -> GradedDecomposition:
    """Eigenspaces ``L_i = ker(phi - omega^i)`` for ``i = 0..n-1``."""
    F = alg.field
    n = action.descriptor.n
    omega = action.descriptor.omega or _check_working_field(F, n)
    if action.descriptor.omega is not None:
        _check_working_field(F, n)
    comps = []
    whole = alg.whole()
    for i in range(n):
        shift = F.pow(omega.value, i)
        M = mat_sub(F, action.phi, [[shift if a == b else F.zero() for b in range(alg.dim)]
                                    for a in range(alg.dim)])
        comps.append(map_kernel(F, columns(F, M), whole))
    total = sum(c.dim for c in comps)
    if total != alg.dim:
        raise NotDirectSum(f"eigenspaces of phi have total dimension {total} < {alg.dim}")
    return GradedDecomposition(comps, omega, n)


def grading_violations(alg: StructAlgebra, decomp: GradedDecomposition) -> list:
    """Pairs ``(s, t)`` where ``[L_s, L_t]`` leaves ``L_{s+t}``."""
    n = decomp.n
    bad = []
    for s in range(n):
        for t in range(n):
            target = decomp.components[(s + t) % n]
            if not bracket_span(alg, decomp.components[s], decomp.components[t]) <= target:
                bad.append((s, t))
    return bad


def project(alg: StructAlgebra, action: AlgebraAction, omega: Scalar, z: dict, i: int) -> dict:
    """``(1/n) sum_s omega^(-i s) phi^s z``, the ``L_i`` component of ``z``."""
    F = alg.field
    n = action.descriptor.n
    cols = action.phi_cols(F)
    out: dict = {}
    cur = dict(z)
    w_inv = F.inv(omega.value)
    for s in range(n):
        F.axpy(out, F.pow(w_inv, i * s % n), cur)
        cur = apply(F, cols, cur)
    return F.scale(F.inv(F.from_int(n)), out)


def projection_check(alg, action, decomp: GradedDecomposition, vectors=None) -> bool:
    """Projections land in the eigenspaces and add back up to the input."""
    F = alg.field
    for z in vectors if vectors is not None else alg.basis():
        total: dict = {}
        for i in range(decomp.n):
            zi = project(alg, action, decomp.omega, z, i)
            if not decomp.components[i].contains(zi):
                return False
            F.axpy(total, F.one(), zi)
        if total != {k: v for k, v in z.items() if not F.is_zero(v)}:
            return False
    return True


def h_image(field, h_cols, sub: Subspace) -> Subspace:
    return sub.map(lambda v: apply(field, h_cols, v))


def h_stability_violations(alg, action, decomp: GradedDecomposition) -> list:
    """Indices ``i`` with ``L_i^h != L_{ri}``."""
    F = alg.field
    hc = action.h_cols(F)
    r, n = action.descriptor.r, action.descriptor.n
    return [i for i in range(n)
            if h_image(F, hc, decomp.components[i]) != decomp.components[r * i % n]]


def orbit_sum(field, h_cols, v: dict, q: int) -> dict:
    out: dict = {}
    cur = dict(v)
    for _ in range(q):
        field.axpy(out, field.one(), cur)
        cur = apply(field, h_cols, cur)
    return out


# -- fixed points ------------------------------------------------------------------

def fixed_subalgebra(alg: StructAlgebra, g) -> Subspace:
    """``{v : g v = v}``; always a subalgebra when ``g`` is an automorphism."""
    F = alg.field
    M = mat_sub(F, g, identity(F, alg.dim))
    fixed = map_kernel(F, columns(F, M), alg.whole())
    assert bracket_span(alg, fixed, fixed) <= fixed, "fixed space of an automorphism must be closed"
    return fixed


@dataclass
class FixedProfile:
    kernel_fixed: Subspace
    complement_fixed: Subspace | None
    m: int
    c: int | None


def fixed_profile(alg: StructAlgebra, action: AlgebraAction) -> FixedProfile:
    """``m = dim C_L(phi)`` and the nilpotency class ``c`` of ``C_L(h)``."""
    cf = fixed_subalgebra(alg, action.phi)
    ch = c = None
    if action.h is not None:
        ch = fixed_subalgebra(alg, action.h)
        c = nilpotency_class(alg, ch)
    return FixedProfile(cf, ch, cf.dim, c)


# -- characteristic dividing n ---------------------------------------------------------

def sylow_split(n: int, p: int) -> tuple:
    """``n = p^k * n'`` with ``p`` coprime to ``n'``; returns ``(p^k, n')``."""
    if n % p:
        raise NotApplicable(f"{p} does not divide {n}")
    pk = 1
    while n % (pk * p) == 0:
        pk *= p
    return pk, n // pk


@dataclass
class BoundCheck:
    ok: bool
    dim: int
    m: int
    k: int
    p: int

    @property
    def bound(self) -> int:
        return self.m * self.p ** self.k

    @property
    def attained(self) -> bool:
        return self.dim == self.bound

    def __str__(self):
        rel = "<=" if self.ok else ">"
        return f"dim {self.dim} {rel} m*p^k = {self.m}*{self.p}^{self.k} = {self.bound}"


def p_power_order(field, M, p: int) -> int:
    """Least ``k`` with ``M^(p^k) = 1``; OrderMismatch if there is none."""
    n = len(M)
    cur, k = M, 0
    if is_identity(field, cur):
        return 0
    # a unipotent n x n matrix over F_p has order at most p^ceil(log_p n)
    while p ** k < max(n, 1) * p:
        cur = matpow(field, cur, p)
        k += 1
        if is_identity(field, cur):
            return k
    raise OrderMismatch(f"transform does not have {p}-power order")


def bound_check_pp(transform, field, m: int | None = None) -> BoundCheck:
    """Check ``dim V <= m p^k`` for a transform of order ``p^k`` with ``m``-dim fixed space."""
    p = field.characteristic
    if not p:
        raise NotApplicable("bound_check_pp needs a prime field")
    k = p_power_order(field, transform, p)
    dim = len(transform)
    fixed = map_kernel(field, columns(field, mat_sub(field, transform, identity(field, dim))),
                       Subspace.whole(field, dim)).dim
    if m is not None and m != fixed:
        raise OrderMismatch(f"fixed space has dimension {fixed}, not {m}")
    return BoundCheck(dim <= fixed * p ** k, dim, fixed, k, p)


@dataclass
class SylowResult:
    psi_order: int
    chi_order: int
    psi: list
    chi: list
    action: AlgebraAction | None
    centralizer: Subspace
    certificate: BoundCheck


def sylow_reduction(alg: StructAlgebra, action: AlgebraAction, p: int) -> SylowResult:
    """Split ``<phi> = <psi> x <chi>`` with ``|psi| = p^k`` and bound ``A = C_L(chi)``
    by the fixed points of ``psi`` on it."""
    F = alg.field
    n = action.descriptor.n
    if n % p:
        raise NotApplicable(f"{p} does not divide n={n}")
    if F.characteristic != p:
        raise NotApplicable(f"characteristic {F.characteristic} is not {p}")
    pk, rest = sylow_split(n, p)
    psi = matpow(F, action.phi, rest)
    chi = matpow(F, action.phi, pk)
    A = fixed_subalgebra(alg, chi)
    # psi restricted to A, in coordinates of A's echelon basis
    psi_cols = columns(F, psi)
    images = [apply(F, psi_cols, row) for row in A.rows]
    restricted = [[F.zero()] * A.dim for _ in range(A.dim)]
    for j, img in enumerate(images):
        coords = A.coordinates(img)
        for i, c in enumerate(coords):
            restricted[i][j] = c
    if A.dim:
        cert = bound_check_pp(restricted, F)
    else:
        cert = BoundCheck(True, 0, 0, 0, p)
    sub_action = None
    if rest > 1:
        d = action.descriptor
        sub_action = AlgebraAction(chi, action.h, FrobeniusDescriptor(rest, d.q, d.r % rest))
    return SylowResult(pk, rest, psi, chi, sub_action, A, cert)


# -- scalar extension ---------------------------------------------------------------------

def extend_scalars(alg: StructAlgebra, n: int, action: AlgebraAction | None = None):
    """Reinterpret a rational algebra (and action) over ``cyclotomic(n)``."""
    K = make_field(FieldSpec.cyclotomic(n))

    def conv(a):
        return K.coerce(Fraction(a))

    table = {key: {k: conv(v) for k, v in vec.items()} for key, vec in alg.table.items()}
    ext = StructAlgebra(K, alg.dim, table, alg.name)
    if action is None:
        return ext, None
    mat = lambda M: None if M is None else [[conv(a) for a in row] for row in M]
    d = action.descriptor
    return ext, AlgebraAction(mat(action.phi), mat(action.h), FrobeniusDescriptor(d.n, d.q, d.r))
