"""Group law on a nilpotent Lie algebra via the truncated Baker-Campbell-Hausdorff series.

Elements of the group are the vectors of the algebra; ``x * y`` is
``log(exp x exp y)``, ``x^-1 = -x`` and rational powers are scalar multiples.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import ClassCapExceeded, FieldMismatch, NotApplicable
from .fdlie import StructAlgebra, ideal_closure, lower_central_series
from .linalg import Subspace, apply, columns

DEFAULT_CAP = 4


@lru_cache(maxsize=None)
def _dynkin(cap: int) -> tuple:
    """``{left-normed word over {0, 1}: coefficient}`` for ``log(e^X e^Y)`` up to weight ``cap``."""
    acc: dict = {}
    for total in range(1, cap + 1):
        for k in range(1, total + 1):
            sign = Fraction((-1) ** (k - 1), k)
            for blocks in _blocks(total, k):
                denom = total
                word = []
                for r, s in blocks:
                    denom *= factorial(r) * factorial(s)
                    word += [0] * r + [1] * s
                # a right-nested bracket vanishes when its innermost pair repeats a letter
                if len(word) > 1 and word[-1] == word[-2]:
                    continue
                # [a1,[a2,...,[a_{N-1},a_N]]] = (-1)^(N-1) [a_N, ..., a_1]
                left = tuple(reversed(word))
                coef = sign / denom * (-1) ** (len(word) - 1)
                if len(left) > 1 and left[0] == 1:
                    # [y, x, ...] = -[x, y, ...]
                    left, coef = (0, 1) + left[2:], -coef
                acc[left] = acc.get(left, 0) + coef
    return tuple(sorted((w, c) for w, c in acc.items() if c))


def _blocks(total: int, k: int):
    """``k`` pairs ``(r, s)`` with ``r + s >= 1`` and sum ``total``."""
    if k == 0:
        if total == 0:
            yield ()
        return
    for size in range(1, total - (k - 1) + 1):
        for r in range(size + 1):
            for rest in _blocks(total - size, k - 1):
                yield ((r, size - r),) + rest


@dataclass(frozen=True)
class BchSeries:
    """Dynkin terms ``(coefficient, word)``; letter 0 is ``x``, letter 1 is ``y``."""

    class_cap: int
    terms: tuple

    @classmethod
    def build(cls, class_cap: int = DEFAULT_CAP) -> "BchSeries":
        return cls(class_cap, tuple((c, w) for w, c in _dynkin(class_cap)))

    def weight(self, k: int) -> list:
        return [(c, w) for c, w in self.terms if len(w) == k]

    def __str__(self):
        parts = []
        for c, w in self.terms:
            word = "".join("xy"[a] for a in w)
            parts.append(f"{c}*[{','.join(word)}]" if len(w) > 1 else f"{c}*{word}")
        return " + ".join(parts)


def _is_char_zero(field) -> bool:
    return field.characteristic == 0


class NilGroup:
    """A nilpotent algebra over a field of characteristic 0 viewed as a group."""

    def __init__(self, alg: StructAlgebra, class_cap: int = DEFAULT_CAP):
        if not _is_char_zero(alg.field):
            raise FieldMismatch("the group law needs characteristic 0")
        series = lower_central_series(alg.whole(), alg)
        if not series.is_nilpotent:
            raise NotApplicable(f"{alg!r} is not nilpotent")
        if series.nilpotency_class > class_cap:
            raise ClassCapExceeded(
                f"class {series.nilpotency_class} exceeds the series cap {class_cap}")
        self.alg = alg
        self.field = alg.field
        self.nilpotency_class = series.nilpotency_class
        self.series = BchSeries.build(max(self.nilpotency_class, 1))
        F = self.field
        self._coefs = [(F.div(F.from_int(c.numerator), F.from_int(c.denominator)), w)
                       for c, w in self.series.terms]

    def element(self, vector: dict) -> "NilGroupElement":
        return NilGroupElement(self, dict(vector))

    def identity(self) -> "NilGroupElement":
        return NilGroupElement(self, {})

    def product(self, x: dict, y: dict) -> dict:
        F, alg = self.field, self.alg
        out: dict = {}
        letters = (x, y)
        cache: dict = {}
        for c, w in self._coefs:
            v = cache.get(w)
            if v is None:
                v = alg.simple(letters[a] for a in w) if len(w) > 1 else dict(letters[w[0]])
                cache[w] = v
            F.axpy(out, c, v)
        return out

    def inverse(self, x: dict) -> dict:
        return self.field.scale(self.field.neg(self.field.one()), x)

    def power(self, x: dict, exponent) -> dict:
        F = self.field
        e = Fraction(exponent)
        return F.scale(F.div(F.from_int(e.numerator), F.from_int(e.denominator)), x)

    def commutator(self, x: dict, y: dict) -> dict:
        """``x^-1 y^-1 x y``."""
        p = self.product(self.product(self.inverse(x), self.inverse(y)), x)
        return self.product(p, y)


@dataclass(frozen=True)
class NilGroupElement:
    group: NilGroup
    vector: dict

    def __mul__(self, other: "NilGroupElement") -> "NilGroupElement":
        if other.group is not self.group:
            raise FieldMismatch("elements of different groups")
        return NilGroupElement(self.group, self.group.product(self.vector, other.vector))

    def inverse(self) -> "NilGroupElement":
        return NilGroupElement(self.group, self.group.inverse(self.vector))

    def __pow__(self, exponent) -> "NilGroupElement":
        return NilGroupElement(self.group, self.group.power(self.vector, exponent))

    def __eq__(self, other):
        return isinstance(other, NilGroupElement) and self.group is other.group \
            and self.vector == other.vector

    def __hash__(self):
        return hash(tuple(sorted(self.vector.items())))

    @property
    def class_cap(self) -> int:
        return self.group.series.class_cap


def bch(x: NilGroupElement, y: NilGroupElement) -> NilGroupElement:
    return x * y


# -- checks ----------------------------------------------------------------------------

@dataclass
class LawCheck:
    ok: bool
    checked: int
    violation: object = None

    def __bool__(self):
        return self.ok


def random_vector(field, dim: int, rng: random.Random, bound: int = 3) -> dict:
    out = {}
    for i in range(dim):
        num = rng.randint(-bound, bound)
        if num:
            out[i] = field.div(field.from_int(num), field.from_int(rng.randint(1, bound)))
    return out


def group_check(alg: StructAlgebra, samples: int = 100, rng: random.Random | None = None,
                class_cap: int = DEFAULT_CAP) -> LawCheck:
    """Associativity, identity, inverse and power laws on sampled elements."""
    G = NilGroup(alg, class_cap)
    rng = rng or random.Random(0)
    F = G.field
    for k in range(samples):
        x, y, z = (random_vector(F, alg.dim, rng) for _ in range(3))
        if G.product(G.product(x, y), z) != G.product(x, G.product(y, z)):
            return LawCheck(False, k, ("associativity", x, y, z))
        if G.product(x, {}) != x or G.product({}, x) != x:
            return LawCheck(False, k, ("identity", x))
        if G.product(x, G.inverse(x)) or G.product(G.inverse(x), x):
            return LawCheck(False, k, ("inverse", x))
        a, b = Fraction(rng.randint(-3, 3), rng.randint(1, 3)), Fraction(rng.randint(-3, 3), 2)
        if G.product(G.power(x, a), G.power(x, b)) != G.power(x, a + b):
            return LawCheck(False, k, ("powers", x, a, b))
    return LawCheck(True, samples)


def equivariance_check(alg: StructAlgebra, matrix, samples: int = 50,
                       rng: random.Random | None = None, class_cap: int = DEFAULT_CAP) -> LawCheck:
    """``(x * y)^g = x^g * y^g`` for the linear map ``g`` on sampled pairs."""
    G = NilGroup(alg, class_cap)
    rng = rng or random.Random(0)
    cols = columns(G.field, matrix)
    g = lambda v: apply(G.field, cols, v)
    for k in range(samples):
        x, y = random_vector(G.field, alg.dim, rng), random_vector(G.field, alg.dim, rng)
        if g(G.product(x, y)) != G.product(g(x), g(y)):
            return LawCheck(False, k, (x, y))
    return LawCheck(True, samples)


@dataclass
class ClassComparison:
    algebra_class: int | None
    group_class: int | None
    group_series_dims: list

    @property
    def equal(self) -> bool:
        return self.algebra_class == self.group_class


def class_correspondence(sub: Subspace, alg: StructAlgebra, samples: int = 4,
                         rng: random.Random | None = None,
                         class_cap: int = DEFAULT_CAP) -> ClassComparison:
    """Lie class of ``sub`` against the class of the group on ``sub``.

    The group series is built from group commutators only: term ``i + 1`` is
    the smallest subspace containing ``log [a, b]`` (``a`` from term ``i``,
    ``b`` from ``sub``, basis vectors plus random combinations) that is closed
    under conjugation, i.e. stable under ``ad sub``.
    """
    lie = lower_central_series(sub, alg)
    G = NilGroup(alg, class_cap)
    rng = rng or random.Random(0)
    F = G.field

    def sample(space: Subspace) -> list:
        vecs = list(space.rows)
        for _ in range(samples if space.dim > 1 else 0):
            v: dict = {}
            for row in space.rows:
                F.axpy(v, F.from_int(rng.randint(-3, 3)), row)
            if v:
                vecs.append(v)
        return vecs

    current, dims, steps = sub, [sub.dim], 0
    while current.dim and steps <= 2 * alg.dim:
        comms = [G.commutator(a, b) for a in sample(current) for b in sample(sub)]
        nxt = ideal_closure([c for c in comms if c], alg, sub)
        steps += 1
        dims.append(nxt.dim)
        if nxt == current:
            return ClassComparison(lie.nilpotency_class, None, dims)
        current = nxt
    return ClassComparison(lie.nilpotency_class, steps, dims)
