"""Weight-truncated free Lie algebras in the Lyndon basis.

A basis element is a Lyndon word ``w`` (a tuple of letter indices) standing
for its standard bracketing ``P(w)``. Brackets of basis elements are
straightened by the classical recursion on standard factorizations; the
resulting structure constants are integers, so they are cached once for all
fields.
"""
from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass, field as dc_field

from sympy.utilities.iterables import multiset_permutations

from .errors import GeneratorSetMismatch


@dataclass(frozen=True, order=True)
class GeneratorSymbol:
    """A free generator. Ordered by ``(orbit_slot, power)``."""

    orbit_slot: int
    power: int = 0
    index: int = dc_field(default=0, compare=False)
    name: str | None = dc_field(default=None, compare=False)

    def __str__(self):
        if self.name is not None:
            return self.name
        return f"y[{self.orbit_slot},{self.power}]"


# -- words ----------------------------------------------------------------

def is_lyndon(w) -> bool:
    n = len(w)
    if n == 0:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, n))


def lyndon_words(k: int, max_len: int):
    """All Lyndon words over ``range(k)`` of length <= max_len (Duval), lex order."""
    if k <= 0 or max_len <= 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()


@functools.lru_cache(maxsize=None)
def standard_factorization(w: tuple) -> tuple:
    """``w = (u, v)`` with ``v`` the lexicographically least proper suffix."""
    if len(w) < 2:
        raise ValueError("letters have no standard factorization")
    i = min(range(1, len(w)), key=lambda j: w[j:])
    return w[:i], w[i:]


def lyndon_with_content(counts: dict):
    """Lyndon words using letter ``a`` exactly ``counts[a]`` times, sorted."""
    letters = sorted(a for a, c in counts.items() if c > 0)
    if not letters:
        return []
    first = letters[0]
    rest = []
    for a in letters:
        rest.extend([a] * (counts[a] - (1 if a == first else 0)))
    if not rest:
        return [(first,)]
    out = []
    for perm in multiset_permutations(rest):
        w = (first,) + tuple(perm)
        if is_lyndon(w):
            out.append(w)
    out.sort()
    return out


@functools.lru_cache(maxsize=None)
def lyndon_bracket(u: tuple, v: tuple) -> tuple:
    """``[P(u), P(v)]`` in the Lyndon basis, as a sorted tuple of (word, int)."""
    if u == v:
        return ()
    if u > v:
        return tuple((w, -c) for w, c in lyndon_bracket(v, u))
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, 1),)
    u1, u2 = standard_factorization(u)
    # [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]]
    acc: Counter = Counter()
    for w, c in lyndon_bracket(u1, v):
        for w2, c2 in lyndon_bracket(w, u2):
            acc[w2] += c * c2
    for w, c in lyndon_bracket(u2, v):
        for w2, c2 in lyndon_bracket(u1, w):
            acc[w2] += c * c2
    return tuple(sorted((w, c) for w, c in acc.items() if c))


def necklace_count(k: int, n: int) -> int:
    """Aperiodic necklaces of length n over k letters, by brute force."""
    from itertools import product
    seen = set()
    count = 0
    for w in product(range(k), repeat=n):
        if w in seen:
            continue
        rots = {w[i:] + w[:i] for i in range(n)}
        seen |= rots
        if len(rots) == n:
            count += 1
    return count


# -- the algebra ----------------------------------------------------------

class FreeLieAlgebra:
    """Free Lie algebra on ``generators`` truncated above ``truncation``.

    ``modulus`` (optional) turns generator indices into a Z/nZ-grading.
    """

    def __init__(self, generators, truncation: int, field, modulus: int | None = None):
        gens = [g if isinstance(g, GeneratorSymbol) else GeneratorSymbol(i, 0, 0, str(g))
                for i, g in enumerate(generators)]
        self.generators = tuple(sorted(gens))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generators")
        self.truncation = truncation
        self.field = field
        self.modulus = modulus
        self._letter = {g: i for i, g in enumerate(self.generators)}
        self.indices = tuple(g.index % modulus if modulus else g.index for g in self.generators)
        self.slots = tuple(g.orbit_slot for g in self.generators)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def letter(self, g) -> int:
        if isinstance(g, int):
            return g
        if isinstance(g, str):
            for i, s in enumerate(self.generators):
                if s.name == g:
                    return i
            raise KeyError(g)
        return self._letter[g]

    def _check(self, other: "FreeElement"):
        if other.algebra is not self:
            raise GeneratorSetMismatch("elements live in different free Lie algebras")

    # construction
    def element(self, terms: dict) -> "FreeElement":
        return FreeElement(self, {w: c for w, c in terms.items() if not self.field.is_zero(c)})

    def zero(self) -> "FreeElement":
        return FreeElement(self, {})

    def gen(self, g) -> "FreeElement":
        return FreeElement(self, {(self.letter(g),): self.field.one()})

    def basis(self, max_weight: int | None = None) -> list:
        W = self.truncation if max_weight is None else min(max_weight, self.truncation)
        return sorted(lyndon_words(self.rank, W), key=lambda w: (len(w), w))

    def basis_with_content(self, counts: dict) -> list:
        return lyndon_with_content(counts)

    # products
    def bracket_terms(self, x: dict, y: dict) -> dict:
        """Bracket of raw term dicts (word -> coef)."""
        F = self.field
        W = self.truncation
        out: dict = {}
        mul, from_int = F.mul, F.from_int
        for u, a in x.items():
            lu = len(u)
            for v, b in y.items():
                if lu + len(v) > W or u == v:
                    continue
                ab = mul(a, b)
                F.axpy(out, ab, {w: from_int(c) for w, c in lyndon_bracket(u, v)})
        return out

    def bracket(self, x: "FreeElement", y: "FreeElement") -> "FreeElement":
        self._check(x)
        self._check(y)
        return FreeElement(self, self.bracket_terms(x.terms, y.terms))

    def simple(self, letters) -> "FreeElement":
        """Left-normed ``[a1, a2, ..., as]``."""
        letters = [self.letter(a) for a in letters]
        one = self.field.one()
        cur = {(letters[0],): one}
        for a in letters[1:]:
            cur = self.bracket_terms(cur, {(a,): one})
        return FreeElement(self, cur)

    def from_tree(self, tree) -> "FreeElement":
        if isinstance(tree, (list, tuple)):
            left, right = tree
            return self.bracket(self.from_tree(left), self.from_tree(right))
        return self.gen(tree)

    # gradings
    def word_index(self, w) -> int:
        s = sum(self.indices[a] for a in w)
        return s % self.modulus if self.modulus else s

    def word_multidegree(self, w) -> "Multidegree":
        counts = Counter(self.slots[a] for a in w)
        return Multidegree(tuple(sorted(counts.items())), self.word_index(w))

    def component(self, x: "FreeElement", selector) -> "FreeElement":
        """Projection onto an index-sum residue (int) or a :class:`Multidegree`."""
        self._check(x)
        if isinstance(selector, Multidegree):
            keep = {w: c for w, c in x.terms.items() if self.word_multidegree(w) == selector}
        else:
            r = selector % self.modulus if self.modulus else selector
            keep = {w: c for w, c in x.terms.items() if self.word_index(w) == r}
        return FreeElement(self, keep)

    # homomorphisms
    def evaluate(self, x: "FreeElement", images, bracket, field=None) -> dict:
        """Image of ``x`` under the homomorphism sending letter ``a`` to the
        vector ``images[a]`` of a Lie algebra with product ``bracket``."""
        self._check(x)
        return evaluate_terms(x.terms, images, bracket, field or self.field)

    def substitute(self, x: "FreeElement", images) -> "FreeElement":
        """Endomorphism given by letter images (FreeElements of ``self``)."""
        imgs = [im.terms for im in images]
        return FreeElement(self, evaluate_terms(x.terms, imgs, self.bracket_terms, self.field))


def evaluate_terms(terms: dict, images, bracket, field) -> dict:
    memo: dict = {}

    def img(w):
        got = memo.get(w)
        if got is None:
            if len(w) == 1:
                got = images[w[0]]
            else:
                u, v = standard_factorization(w)
                got = bracket(img(u), img(v))
            memo[w] = got
        return got

    out: dict = {}
    for w, c in sorted(terms.items()):
        field.axpy(out, c, img(w))
    return out


@dataclass(frozen=True)
class Multidegree:
    """Letter counts per orbit slot (sorted pairs) and the index sum."""

    counts: tuple
    index_sum: int


class FreeElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeLieAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    @property
    def field(self):
        return self.algebra.field

    def __add__(self, other):
        self.algebra._check(other)
        out = dict(self.terms)
        self.field.axpy(out, self.field.one(), other.terms)
        return FreeElement(self.algebra, out)

    def __sub__(self, other):
        self.algebra._check(other)
        out = dict(self.terms)
        self.field.axpy(out, self.field.neg(self.field.one()), other.terms)
        return FreeElement(self.algebra, out)

    def __neg__(self):
        return FreeElement(self.algebra, self.field.scale(self.field.neg(self.field.one()), self.terms))

    def __mul__(self, c):
        return FreeElement(self.algebra, self.field.scale(self.field.coerce(c), self.terms))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def bracket(self, other):
        return self.algebra.bracket(self, other)

    def weights(self) -> set:
        return {len(w) for w in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        gens = self.algebra.generators
        F = self.field
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            parts.append(f"({F.fmt(self.terms[w])})*P[{' '.join(str(gens[a]) for a in w)}]")
        return " + ".join(parts)


def lyndon_basis(generators, max_weight: int) -> list:
    """Lyndon words (as tuples of generators) of weight <= max_weight,
    ordered by (weight, lex) with letters ordered as the sorted generators."""
    gens = sorted(generators)
    words = sorted(lyndon_words(len(gens), max_weight), key=lambda w: (len(w), w))
    return [tuple(gens[a] for a in w) for w in words]


# -- left-normed rewriting ---------------------------------------------------

def _ln_pair(xs: tuple, bs: tuple) -> dict:
    """[ [xs...], [bs...] ] as left-normed sequences, all starting with xs."""
    if len(bs) == 1:
        return {xs + bs: 1}
    last = bs[-1]
    out: Counter = Counter()
    for s, c in _ln_pair(xs, bs[:-1]).items():
        out[s + (last,)] += c
    for s, c in _ln_pair(xs + (last,), bs[:-1]).items():
        out[s] -= c
    return {s: c for s, c in out.items() if c}


def _ln_bracket(xt: dict, bt: dict) -> dict:
    out: Counter = Counter()
    for xs, a in xt.items():
        for bs, b in bt.items():
            for s, c in _ln_pair(xs, bs).items():
                out[s] += a * b * c
    return {s: c for s, c in out.items() if c}


def _is_node(t) -> bool:
    return isinstance(t, (list, tuple)) and len(t) == 2 and not isinstance(t, GeneratorSymbol)


def _leaves(tree) -> list:
    if _is_node(tree):
        return _leaves(tree[0]) + _leaves(tree[1])
    return [tree]


def _rotate(tree, pos: int):
    """Move leaf number ``pos`` to the far left by anticommutativity."""
    if not _is_node(tree):
        return tree, 1
    left, right = tree
    nl = len(_leaves(left))
    if pos < nl:
        sub, sign = _rotate(left, pos)
        return (sub, right), sign
    sub, sign = _rotate(right, pos - nl)
    return (sub, left), -sign


def _normalize(tree) -> dict:
    if _is_node(tree):
        return _ln_bracket(_normalize(tree[0]), _normalize(tree[1]))
    return {(tree,): 1}


def left_normalize(tree, first: int | None = None) -> dict:
    """Rewrite a bracket tree as ``{(a1, ..., as): int}``, a combination of
    simple commutators ``[a1, ..., as]`` on the same leaves.

    ``first`` designates a leaf (by left-to-right position) with which every
    output term must begin.
    """
    sign = 1
    if first is not None:
        tree, sign = _rotate(tree, first)
    return {s: sign * c for s, c in _normalize(tree).items()}


def simple_combination(algebra: FreeLieAlgebra, combo: dict) -> FreeElement:
    """Evaluate a left-normed combination in ``algebra``."""
    F = algebra.field
    out: dict = {}
    for seq, c in combo.items():
        F.axpy(out, F.from_int(c) if isinstance(c, int) else c, algebra.simple(seq).terms)
    return FreeElement(algebra, out)
