"""Ready-made algebras with Frobenius actions, plus random generators."""
from __future__ import annotations

import random
from fractions import Fraction

from .fdlie import StructAlgebra, change_basis, gl
from .freelie import FreeLieAlgebra, GeneratorSymbol, lyndon_bracket, evaluate_terms
from .frobact import AlgebraAction, FrobeniusDescriptor, orbit
from .linalg import identity, inverse, matmul
from .scalars import FieldSpec, make_field, primitive_root


def _diag(field, values):
    n = len(values)
    return [[values[i] if i == j else field.zero() for j in range(n)] for i in range(n)]


def _mat(field, rows):
    return [[field.coerce(a) for a in row] for row in rows]


def heisenberg(spec: FieldSpec | None = None):
    """``[e1, e2] = e3`` with ``phi = diag(w, w^2, 1)``, ``h: e1 <-> e2, e3 -> -e3``."""
    F = make_field(spec or FieldSpec.cyclotomic(3))
    w = primitive_root(F, 3).value
    alg = StructAlgebra.from_brackets(F, 3, {(0, 1): {2: 1}}, "heisenberg")
    phi = _diag(F, [w, F.mul(w, w), F.one()])
    h = _mat(F, [[0, 1, 0], [1, 0, 0], [0, 0, -1]])
    desc = FrobeniusDescriptor(3, 2, 2).with_root(F)
    return alg, AlgebraAction(phi, h, desc)


def heisenberg_stack(k: int, spec: FieldSpec | None = None):
    """Heisenberg algebra of dimension ``2k + 1``: ``[a_i, b_i] = z`` with
    ``a_i`` of index 1, ``b_i`` of index 2, ``z`` fixed; ``h`` swaps
    ``a_i <-> b_i`` and negates ``z``. The generalized centralizers peel off
    one pair per level."""
    F = make_field(spec or FieldSpec.prime(7, 3))
    w = primitive_root(F, 3).value
    dim = 2 * k + 1
    z = dim - 1
    alg = StructAlgebra.from_brackets(F, dim, {(2 * i, 2 * i + 1): {z: 1} for i in range(k)},
                                      f"heisenberg-{dim}")
    phi = _diag(F, [w, F.mul(w, w)] * k + [F.one()])
    h = [[F.zero()] * dim for _ in range(dim)]
    for i in range(k):
        h[2 * i][2 * i + 1] = h[2 * i + 1][2 * i] = F.one()
    h[z][z] = F.neg(F.one())
    return alg, AlgebraAction(phi, h, FrobeniusDescriptor(3, 2, 2).with_root(F))


def heisenberg_rational():
    """Heisenberg over the rationals; ``phi`` has order 3 without diagonalizing."""
    F = make_field(FieldSpec.rational())
    alg = StructAlgebra.from_brackets(F, 3, {(0, 1): {2: 1}}, "heisenberg")
    phi = _mat(F, [[0, -1, 0], [1, -1, 0], [0, 0, 1]])
    h = _mat(F, [[0, 1, 0], [1, 0, 0], [0, 0, -1]])
    return alg, AlgebraAction(phi, h, FrobeniusDescriptor(3, 2, 2))


def heisenberg_kernel_regular(spec: FieldSpec | None = None):
    """``phi = diag(w, w, w^2)``: no nonzero fixed points. No compatible ``h``
    exists (it would have to carry the 2-dim ``L_1`` onto the 1-dim ``L_2``),
    so the action is kernel-only."""
    F = make_field(spec or FieldSpec.cyclotomic(3))
    w = primitive_root(F, 3).value
    alg = StructAlgebra.from_brackets(F, 3, {(0, 1): {2: 1}}, "heisenberg")
    phi = _diag(F, [w, w, F.mul(w, w)])
    return alg, AlgebraAction(phi, None, FrobeniusDescriptor(3, 2, 2).with_root(F))


def free_nilpotent(spec: FieldSpec, descriptor: FrobeniusDescriptor, slots, weight: int):
    """Free nilpotent algebra of class ``weight`` on the h-orbits of ``slots``.

    Basis: Lyndon words over the orbit generators. ``phi`` is diagonal,
    ``h`` shifts every generator one step along its orbit.
    """
    F = make_field(spec)
    n, q = descriptor.n, descriptor.q
    gens = [GeneratorSymbol(s + 1, k, orb[k]) for s, i in enumerate(slots)
            for k, orb in [(k, orbit(i, descriptor)) for k in range(q)]]
    K = FreeLieAlgebra(gens, weight, F, modulus=n)
    words = K.basis()
    pos = {w: a for a, w in enumerate(words)}
    table = {}
    for a, u in enumerate(words):
        for b, v in enumerate(words):
            if a != b and len(u) + len(v) <= weight:
                vec = {pos[w]: F.from_int(c) for w, c in lyndon_bracket(u, v)}
                if vec:
                    table[a, b] = vec
    alg = StructAlgebra(F, len(words), table, f"free-nilpotent-{weight}")
    desc = descriptor.with_root(F)
    w = desc.omega.value
    phi = _diag(F, [F.pow(w, K.word_index(u)) for u in words])
    shift = [K.letter(GeneratorSymbol(g.orbit_slot, (g.power + 1) % q)) for g in K.generators]
    images = [{(shift[a],): F.one()} for a in range(K.rank)]
    h = [[F.zero()] * len(words) for _ in words]
    for b, u in enumerate(words):
        img = evaluate_terms({u: F.one()}, images, K.bracket_terms, F)
        for word, c in img.items():
            h[pos[word]][b] = c
    return alg, AlgebraAction(phi, h, desc), K, words


def regular_septic(spec: FieldSpec | None = None):
    """Free class-2 algebra on ``x1, x2, x4`` graded mod 7 with ``h`` cycling
    them: a genuine FH-action with ``C_L(phi) = 0``."""
    spec = spec or FieldSpec.prime(29, 7)
    alg, action, _, _ = free_nilpotent(spec, FrobeniusDescriptor(7, 3, 2), [1], 2)
    return alg, action


def sylow_fixture(s: int = 2, t: int = 3):
    """Abelian ``V + W`` over ``GF(7)`` with ``n = 21``, ``q = 2``, ``r = 20``.

    ``phi = diag(A, A^-1)`` where ``A = diag(2 J_s, J_t)`` and ``J`` are
    unipotent Jordan blocks; ``h`` swaps the two copies.
    """
    F = make_field(FieldSpec.prime(7, 3))
    half = s + t
    A = identity(F, half)
    for i in range(half - 1):
        if i != s - 1:
            A[i][i + 1] = F.one()
    for i in range(s):
        A[i] = [F.mul(2, a) for a in A[i]]
    Ainv = inverse(F, A)
    dim = 2 * half
    phi = [[F.zero()] * dim for _ in range(dim)]
    h = [[F.zero()] * dim for _ in range(dim)]
    for i in range(half):
        for j in range(half):
            phi[i][j] = A[i][j]
            phi[half + i][half + j] = Ainv[i][j]
        h[i][half + i] = F.one()
        h[half + i][i] = F.one()
    alg = StructAlgebra.abelian(F, dim)
    return alg, AlgebraAction(phi, h, FrobeniusDescriptor(21, 2, 20))


def upper_unitriangular(k: int) -> StructAlgebra:
    """Strictly upper triangular ``k x k`` rational matrices (class ``k - 1``)."""
    F = make_field(FieldSpec.rational())
    pairs = [(a, b) for a in range(k) for b in range(a + 1, k)]
    pos = {p: i for i, p in enumerate(pairs)}
    brackets = {}
    for (a, b), i in pos.items():
        for (c, d), j in pos.items():
            if i < j:
                vec = {}
                if b == c:
                    vec[pos[a, d]] = 1
                if d == a:
                    vec[pos[c, b]] = vec.get(pos[c, b], 0) - 1
                vec = {key: v for key, v in vec.items() if v}
                if vec:
                    brackets[i, j] = vec
    return StructAlgebra.from_brackets(F, len(pairs), brackets, f"n{k}")


# -- randomness --------------------------------------------------------------------

def random_invertible(field, n: int, rng: random.Random, bound: int = 3):
    while True:
        M = [[field.from_int(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        try:
            return M, inverse(field, M)
        except ValueError:
            continue


def conjugate(alg: StructAlgebra, action: AlgebraAction, P, P_inv):
    """The same algebra and action written in the basis given by columns of ``P``."""
    F = alg.field
    new = change_basis(alg, P, P_inv)
    conj = lambda M: None if M is None else matmul(F, matmul(F, P_inv, M), P)
    return new, AlgebraAction(conj(action.phi), conj(action.h), action.descriptor)


_GRADED_FIELDS = {2: FieldSpec.prime(5, 2), 3: FieldSpec.prime(7, 3),
                  5: FieldSpec.prime(11, 5), 7: FieldSpec.prime(29, 7)}


def random_graded_algebra(n: int, rng: random.Random, spec: FieldSpec | None = None):
    """``gl_k`` graded by conjugation with ``diag(w^a_1, ..., w^a_k)``, or a
    free nilpotent algebra, written in a random basis. Kernel-only action."""
    F = make_field(spec or _GRADED_FIELDS[n])
    w = primitive_root(F, n).value
    if rng.random() < 0.5:
        k = rng.choice([2, 3])
        alg = gl(F, k)
        exps = [rng.randrange(n) for _ in range(k)]
        # E_ab -> w^(a_a - a_b) E_ab
        phi = _diag(F, [F.pow(w, (exps[a] - exps[b]) % n) for a in range(k) for b in range(k)])
    else:
        gens = rng.randint(1, 3)
        weight = rng.randint(2, 3)
        K = FreeLieAlgebra([GeneratorSymbol(s, 0, rng.randrange(n)) for s in range(gens)],
                           weight, F, modulus=n)
        words = K.basis()
        pos = {u: a for a, u in enumerate(words)}
        table = {}
        for a, u in enumerate(words):
            for b, v in enumerate(words):
                if a != b and len(u) + len(v) <= weight:
                    vec = {pos[x]: F.from_int(c) for x, c in lyndon_bracket(u, v)}
                    if vec:
                        table[a, b] = vec
        alg = StructAlgebra(F, len(words), table, "free-nilpotent")
        phi = _diag(F, [F.pow(w, K.word_index(u)) for u in words])
    P, P_inv = random_invertible(F, alg.dim, rng)
    action = AlgebraAction(phi, None, FrobeniusDescriptor(n, 1, 1).with_root(F))
    return conjugate(alg, action, P, P_inv)


def random_structure_algebra(field, rng: random.Random, k: int = 3) -> StructAlgebra:
    """``gl_k`` in a random basis: a Lie algebra with dense structure constants."""
    alg = gl(field, k)
    P, P_inv = random_invertible(field, alg.dim, rng, bound=2)
    return change_basis(alg, P, P_inv)


def jordan_transform(field, sizes, rng: random.Random):
    """Unipotent Jordan blocks of the given sizes, conjugated randomly."""
    dim = sum(sizes)
    J = identity(field, dim)
    start = 0
    for s in sizes:
        for i in range(start, start + s - 1):
            J[i][i + 1] = field.one()
        start += s
    P, P_inv = random_invertible(field, dim, rng)
    return matmul(field, matmul(field, P_inv, J), P)
