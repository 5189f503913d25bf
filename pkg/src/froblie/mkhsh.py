"""Zero-index-sum rewriting in free Lie algebras on orbit generators.

``K`` is free on generators ``y[s, k]`` (slot ``s``, power ``k``) of index
``r^k i_s``. Two ideals are built slice by slice, where a slice is fixed by
the number of letters taken from each slot and by the index sum:

* ``J``, generated by the index-zero component of ``K``;
* ``I``, generated by the index components of the left-normed products of
  ``c + 1`` elements of the h-centralizer ``C_K(H)``.

Slices are computed recursively: an ideal slice is spanned by its own
generators plus brackets of the previous slice with a single letter.
Everything is exact; rows remember how they were assembled, which is what
membership certificates and the rewriting are built from.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import CapTooSmall, NotAMember, ZeroIndexSlot
from .freelie import (FreeElement, FreeLieAlgebra, GeneratorSymbol, Multidegree,
                      evaluate_terms, left_normalize, lyndon_with_content,
                      standard_factorization)
from .fdlie import bracket_span, ideal_closure
from .frobact import FrobeniusDescriptor, fixed_subalgebra, orbit, project
from .linalg import Echelon, apply
from .scalars import FieldSpec, make_field


# -- generators ----------------------------------------------------------------

@dataclass(frozen=True)
class OrbitGeneratorSet:
    descriptor: FrobeniusDescriptor
    slots: tuple
    generators: tuple

    @property
    def q(self) -> int:
        return self.descriptor.q

    @property
    def n(self) -> int:
        return self.descriptor.n

    @property
    def T(self) -> int:
        return len(self.slots)

    def letter(self, slot: int, power: int) -> int:
        """Letter number of ``y[slot, power]`` (slots are 1-based)."""
        return (slot - 1) * self.q + power % self.q

    def slot_of(self, letter: int) -> int:
        return letter // self.q + 1

    def power_of(self, letter: int) -> int:
        return letter % self.q

    def index_of(self, letter: int) -> int:
        return self.generators[letter].index

    def h_letter(self, letter: int) -> int:
        return letter - letter % self.q + (letter + 1) % self.q


def build_Y(descriptor: FrobeniusDescriptor, slots) -> OrbitGeneratorSet:
    slots = tuple(int(i) % descriptor.n for i in slots)
    if any(i == 0 for i in slots):
        raise ZeroIndexSlot(f"slot residues must be nonzero mod {descriptor.n}: {slots}")
    gens = []
    for s, i in enumerate(slots, start=1):
        for k, idx in enumerate(orbit(i, descriptor)):
            gens.append(GeneratorSymbol(s, k, idx, f"y{s}_{k}"))
    return OrbitGeneratorSet(descriptor, slots, tuple(gens))


# -- bounds ----------------------------------------------------------------------

def V_bound(t1: int, t2: int, q: int, c: int, f: int) -> int:
    """``sum_{i=1..t1} ((f + 1)^2 t2)^i + 1``."""
    base = (f + 1) ** 2 * t2
    return sum(base ** i for i in range(1, t1 + 1)) + 1


@dataclass(frozen=True)
class BoundsConfig:
    f: int
    T: int
    U: int

    @classmethod
    def resolve(cls, q: int, c: int, f: int, T: int | None = None, U: int | None = None):
        T = f + 1 if T is None else T
        U = V_bound(T, T - 1, q, c, f) if U is None else U
        if min(T, U) < 1 or f < 0:
            raise ValueError("bounds must be positive")
        return cls(f, T, U)


# -- slices --------------------------------------------------------------------------

@dataclass
class IdealBasisSlice:
    """Echelon rows of one ideal slice with their assembly recipes.

    ``combos[k]`` expresses ``rows[k]`` over labels; a label is one of

    * ``("K", word)``: the basis element ``P(word)`` (index-zero slices of ``J``);
    * ``("G", g)``: generator ``g`` of ``I`` for this slice;
    * ``("X", (counts, index, k), letter)``: ``[row k of that lighter slice, letter]``.
    """

    kind: str
    counts: tuple
    index: int
    rows: list
    combos: list

    @property
    def weight(self) -> int:
        return sum(self.counts)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def multidegree(self) -> Multidegree:
        return Multidegree(tuple((s + 1, c) for s, c in enumerate(self.counts) if c), self.index)


@dataclass
class Certificate:
    """``x`` equals the sum of ``coef * row`` over the listed J- and I-rows."""

    element: FreeElement
    pieces: list  # (counts, index, {("J"|"I", row): coef})

    def describe(self, field) -> list:
        out = []
        for counts, index, combo in self.pieces:
            for (kind, k), coef in sorted(combo.items()):
                out.append(f"{kind}{list(counts)}@{index} row {k}: {field.fmt(coef)}")
        return out


@dataclass(frozen=True)
class Term:
    coef: object
    word: tuple
    marked: tuple  # (start, stop) of the zero-index-sum initial segment


@dataclass
class TransformationResult:
    input: FreeElement
    terms: list
    remainder: FreeElement  # input minus the terms; lies in I

    def element(self, K: FreeLieAlgebra) -> FreeElement:
        return simple_sum(K, self.terms)


def simple_sum(K: FreeLieAlgebra, terms) -> FreeElement:
    out: dict = {}
    for t in terms:
        K.field.axpy(out, t.coef, K.simple(t.word).terms)
    return FreeElement(K, out)


class OrbitIdeals:
    """Ideal slices of ``J`` and ``I`` in ``K`` truncated at ``weight_cap``."""

    def __init__(self, Y: OrbitGeneratorSet, c: int, weight_cap: int, field=None):
        self.Y = Y
        self.c = c
        self.weight_cap = weight_cap
        self.field = field or make_field(FieldSpec.rational())
        self.K = FreeLieAlgebra(Y.generators, weight_cap, self.field, modulus=Y.n)
        self._h_memo: dict = {}
        self._J: dict = {}
        self._I: dict = {}
        self._JI: dict = {}
        self._cent: dict = {}
        self._gens: dict = {}
        self._words: dict = {}

    # -- bookkeeping --
    @cached_property
    def _letter_slot(self):
        return [self.Y.slot_of(a) - 1 for a in range(self.K.rank)]

    def counts_of(self, word) -> tuple:
        counts = [0] * self.Y.T
        for a in word:
            counts[self._letter_slot[a]] += 1
        return tuple(counts)

    def index_of(self, word) -> int:
        return self.K.word_index(word)

    def contents(self, counts: tuple):
        """Letter-count vectors over all powers with the given slot counts."""
        q = self.Y.q
        per_slot = []
        for d in counts:
            per_slot.append([comp for comp in itertools.product(range(d + 1), repeat=q)
                             if sum(comp) == d])
        for combo in itertools.product(*per_slot):
            yield tuple(x for part in combo for x in part)

    def words(self, counts: tuple, index: int | None = None) -> list:
        """Lyndon basis of the slice (all indices when ``index`` is None)."""
        key = counts
        if key not in self._words:
            found = []
            for content in self.contents(counts):
                found.extend(lyndon_with_content(dict(enumerate(content))))
            found.sort()
            self._words[key] = found
        ws = self._words[key]
        if index is None:
            return ws
        return [w for w in ws if self.index_of(w) == index % self.Y.n]

    # -- the h action --
    def _h_word(self, w: tuple) -> dict:
        got = self._h_memo.get(w)
        if got is None:
            if len(w) == 1:
                got = {(self.Y.h_letter(w[0]),): self.field.one()}
            else:
                u, v = standard_factorization(w)
                got = self.K.bracket_terms(self._h_word(u), self._h_word(v))
            self._h_memo[w] = got
        return got

    def h_apply(self, terms: dict) -> dict:
        out: dict = {}
        for w, c in terms.items():
            self.field.axpy(out, c, self._h_word(w))
        return out

    def orbit_sum(self, terms: dict) -> dict:
        out: dict = {}
        cur = terms
        for _ in range(self.Y.q):
            self.field.axpy(out, self.field.one(), cur)
            cur = self.h_apply(cur)
        return out

    def centralizer_basis(self, counts: tuple) -> list:
        """Echelon basis of ``C_K(H)`` inside the slot-degree ``counts``."""
        got = self._cent.get(counts)
        if got is None:
            ech = Echelon(self.field)
            seen = set()
            one = self.field.one()
            for content in self.contents(counts):
                # h shifts powers cyclically inside each slot; one content per orbit suffices
                if content in seen:
                    continue
                cur = content
                for _ in range(self.Y.q):
                    seen.add(cur)
                    cur = self._shift_content(cur)
                for w in lyndon_with_content(dict(enumerate(content))):
                    v = self.orbit_sum({w: one})
                    if v:
                        ech.add(v)
            got = [ech.rows[p] for p in sorted(ech.rows)]
            self._cent[counts] = got
        return got

    def _shift_content(self, content: tuple) -> tuple:
        q = self.Y.q
        out = []
        for s in range(self.Y.T):
            part = content[s * q:(s + 1) * q]
            out.extend(part[-1:] + part[:-1])
        return tuple(out)

    def generator_products(self, counts: tuple) -> list:
        """Left-normed ``[z_1, ..., z_{c+1}]`` with ``z_k`` in ``C_K(H)``, all slot degrees
        summing to ``counts``; labelled by ``(parts, basis positions)``."""
        got = self._gens.get(counts)
        if got is not None:
            return got
        got = []
        c1 = self.c + 1
        if sum(counts) >= c1 >= 1:
            for parts in _ordered_splits(counts, c1):
                bases = [self.centralizer_basis(p) for p in parts]
                for choice in itertools.product(*[range(len(b)) for b in bases]):
                    if c1 >= 2 and parts[0] == parts[1] and choice[0] >= choice[1]:
                        continue  # antisymmetry in the first two entries
                    cur = bases[0][choice[0]]
                    for b, k in zip(bases[1:], choice[1:]):
                        cur = self.K.bracket_terms(cur, b[k])
                        if not cur:
                            break
                    if cur:
                        got.append(((parts, choice), cur))
        self._gens[counts] = got
        return got

    def _component(self, terms: dict, index: int) -> dict:
        n = self.Y.n
        return {w: c for w, c in terms.items() if self.index_of(w) == index % n}

    def _children(self, counts: tuple, index: int):
        """``(smaller counts, smaller index, letter)`` for the one-letter recursion."""
        if sum(counts) <= 1:
            return
        for a in range(self.K.rank):
            s = self._letter_slot[a]
            if counts[s]:
                smaller = counts[:s] + (counts[s] - 1,) + counts[s + 1:]
                yield smaller, (index - self.Y.index_of(a)) % self.Y.n, a

    def _grow(self, kind, counts, index, store, base):
        key = (counts, index % self.Y.n)
        got = store.get(key)
        if got is not None:
            return got
        F = self.field
        ech = Echelon(F, track=True)
        for label, vec in base:
            ech.add(vec, label)
        letter_vec = {}
        for smaller, sub_index, a in self._children(counts, key[1]):
            child = self._slice(kind, smaller, sub_index)
            if not child.rows:
                continue
            lv = letter_vec.setdefault(a, {(a,): F.one()})
            for k, row in enumerate(child.rows):
                v = self.K.bracket_terms(row, lv)
                if v:
                    ech.add(v, ("X", (smaller, sub_index, k), a))
        pivots = sorted(ech.rows)
        got = IdealBasisSlice(kind, counts, key[1], [ech.rows[p] for p in pivots],
                              [ech.combos[p] for p in pivots])
        store[key] = got
        return got

    def _slice(self, kind, counts, index):
        if kind == "J":
            return self.slice_J(counts, index)
        return self.slice_I(counts, index)

    def slice_J(self, counts: tuple, index: int) -> IdealBasisSlice:
        index %= self.Y.n
        key = (counts, index)
        if key in self._J:
            return self._J[key]
        if index == 0:
            one = self.field.one()
            ws = self.words(counts, 0)
            got = IdealBasisSlice("J", counts, 0, [{w: one} for w in ws],
                                  [{("K", w): one} for w in ws])
            self._J[key] = got
            return got
        return self._grow("J", counts, index, self._J, [])

    def slice_I(self, counts: tuple, index: int) -> IdealBasisSlice:
        index %= self.Y.n
        key = (counts, index)
        if key in self._I:
            return self._I[key]
        base = []
        for label, prod in self.generator_products(counts):
            comp = self._component(prod, index)
            if comp:
                base.append((("G", label), comp))
        return self._grow("I", counts, index, self._I, base)

    def slice_JI(self, counts: tuple, index: int):
        """Tracked echelon of ``J + I`` on one slice, labels ``("J"|"I", row)``."""
        key = (counts, index % self.Y.n)
        got = self._JI.get(key)
        if got is None:
            got = Echelon(self.field, track=True)
            for kind, sl in (("J", self.slice_J(*key)), ("I", self.slice_I(*key))):
                for k, row in enumerate(sl.rows):
                    got.add(row, (kind, k))
            self._JI[key] = got
        return got

    def quotient_dim(self, counts: tuple, index: int) -> int:
        return len(self.words(counts, index)) - self.slice_JI(counts, index).rank

    # -- membership --
    def split(self, x: FreeElement) -> dict:
        parts: dict = {}
        for w, c in x.terms.items():
            parts.setdefault((self.counts_of(w), self.index_of(w)), {})[w] = c
        return parts

    def membership(self, x: FreeElement):
        """``(True, Certificate)`` if ``x`` lies in ``J + I``, else ``(False, None)``."""
        if max(x.weights(), default=0) > self.weight_cap:
            raise ValueError("element exceeds the weight cap")
        pieces = []
        for (counts, index), terms in sorted(self.split(x).items()):
            combo = self.slice_JI(counts, index).express(terms)
            if combo is None:
                return False, None
            pieces.append((counts, index, combo))
        return True, Certificate(x, pieces)

    def expand_row(self, kind: str, counts: tuple, index: int, k: int) -> dict:
        """Rebuild a slice row from its recipe, recomputing every bracket."""
        F = self.field
        sl = self._slice(kind, counts, index)
        out: dict = {}
        for label, coef in sl.combos[k].items():
            tag = label[0]
            if tag == "K":
                vec = {label[1]: F.one()}
            elif tag == "G":
                parts, choice = label[1]
                bases = [self.centralizer_basis(p) for p in parts]
                vec = bases[0][choice[0]]
                for b, j in zip(bases[1:], choice[1:]):
                    vec = self.K.bracket_terms(vec, b[j])
                vec = self._component(vec, index)
            else:
                (smaller, sub_index, j), a = label[1], label[2]
                child = self.expand_row(kind, smaller, sub_index, j)
                vec = self.K.bracket_terms(child, {(a,): F.one()})
            F.axpy(out, coef, vec)
        return out

    def verify_certificate(self, cert: Certificate) -> bool:
        F = self.field
        total: dict = {}
        for counts, index, combo in cert.pieces:
            for (kind, k), coef in combo.items():
                F.axpy(total, coef, self.expand_row(kind, counts, index, k))
        return total == cert.element.terms

    # -- rewriting --
    def _expand_J(self, counts, index, k, memo) -> dict:
        """Row of a J-slice as ``{(lyndon word of index 0, tail letters): coef}``."""
        key = (counts, index, k)
        got = memo.get(key)
        if got is not None:
            return got
        F = self.field
        out: dict = {}
        for label, coef in self.slice_J(counts, index).combos[k].items():
            if label[0] == "K":
                F.axpy(out, coef, {(label[1], ()): F.one()})
            else:
                (smaller, sub_index, j), a = label[1], label[2]
                child = self._expand_J(smaller, sub_index, j, memo)
                F.axpy(out, coef, {(w, tail + (a,)): c for (w, tail), c in child.items()})
        memo[key] = out
        return out

    def transform(self, x: FreeElement) -> TransformationResult:
        """Rewrite ``x`` modulo ``I`` as simple commutators with a zero-sum initial segment."""
        ok, cert = self.membership(x)
        if not ok:
            raise NotAMember("element does not lie in J + I")
        F = self.field
        memo: dict = {}
        acc: dict = {}
        for counts, index, combo in cert.pieces:
            for (kind, k), coef in combo.items():
                if kind != "J":
                    continue
                for (w, tail), c in self._expand_J(counts, index, k, memo).items():
                    for seq, sign in left_normalize(_tree(w)).items():
                        key = (seq + tail, (0, len(w)))
                        F.axpy(acc, F.mul(F.mul(coef, c), F.from_int(sign)), {key: F.one()})
        terms = orbit_filter(self, x, [Term(c, word, marked)
                                       for (word, marked), c in sorted(acc.items())])
        rewritten = simple_sum(self.K, terms)
        return TransformationResult(x, terms, x - rewritten)

    def structural_scan(self, x: FreeElement, result: TransformationResult) -> list:
        """Violations of weight, orbit-count and zero-sum requirements (empty means ok)."""
        weights = x.weights()
        counts = {self.counts_of(w) for w in x.terms}
        out = []
        for t in result.terms:
            if len(t.word) not in weights:
                out.append(f"weight changed: {t.word}")
            if self.counts_of(t.word) not in counts:
                out.append(f"orbit counts changed: {t.word}")
            a, b = t.marked
            if b <= a or self.index_of(t.word[a:b]) != 0:
                out.append(f"marked segment not zero-sum: {t.word}")
        return out

    def describe(self, result: TransformationResult) -> list:
        names = [str(g) for g in self.Y.generators]
        out = []
        for t in result.terms:
            a, b = t.marked
            letters = [names[x] for x in t.word]
            letters[a] = "<" + letters[a]
            letters[b - 1] = letters[b - 1] + ">"
            out.append(f"{self.field.fmt(t.coef)} * [{', '.join(letters)}]")
        return out


def _tree(w):
    if len(w) == 1:
        return w[0]
    u, v = standard_factorization(w)
    return (_tree(u), _tree(v))


def _ordered_splits(counts: tuple, parts: int):
    """Ordered tuples of ``parts`` nonzero count vectors summing to ``counts``."""
    if parts == 1:
        if any(counts):
            yield (counts,)
        return
    ranges = [range(c + 1) for c in counts]
    for first in itertools.product(*ranges):
        if not any(first):
            continue
        rest = tuple(c - f for c, f in zip(counts, first))
        if sum(rest) < parts - 1:
            continue
        for tail in _ordered_splits(rest, parts - 1):
            yield (first,) + tail


def theta(engine: OrbitIdeals, slot: int, word: tuple) -> bool:
    """Whether the substitution killing the orbit of ``slot`` keeps ``word`` alive."""
    return all(engine.Y.slot_of(a) != slot for a in word)


def orbit_filter(engine: OrbitIdeals, x: FreeElement, terms: list) -> list:
    """Drop terms that survive some ``theta_s`` although ``x`` does not.

    Terms surviving ``theta_s`` lie in a complement of the ideal generated by
    the orbit of ``s``, so they cancel among themselves; what remains has the
    orbit counts of ``x`` by homogeneity.
    """
    used = {engine.Y.slot_of(a) for w in x.terms for a in w}
    keep = []
    for t in terms:
        if any(theta(engine, s, t.word) for s in used):
            continue
        keep.append(t)
    return keep


def multilinear_commutator(engine: OrbitIdeals) -> FreeElement:
    """``[y_1, y_2, ..., y_T]`` on the power-zero generator of every slot."""
    return engine.K.simple([engine.Y.letter(s, 0) for s in range(1, engine.Y.T + 1)])


def compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class ClassReport:
    nilpotency_class: int
    weight_cap: int
    quotient_dims: list  # dim M_w for w = 1..class+1


def empirical_f(descriptor: FrobeniusDescriptor, c: int, slots, weight_cap: int,
                field=None) -> ClassReport:
    """Nilpotency class of ``M = K / (J + I)``; CapTooSmall if it is not
    reached by ``weight_cap``."""
    engine = OrbitIdeals(build_Y(descriptor, slots), c, weight_cap, field)
    return engine_class(engine)


def engine_class(engine: OrbitIdeals) -> ClassReport:
    dims = []
    n = engine.Y.n
    for w in range(1, engine.weight_cap + 1):
        total = 0
        for counts in compositions(w, engine.Y.T):
            for i in range(1, n):
                total += engine.quotient_dim(counts, i)
        dims.append(total)
        if total == 0:
            return ClassReport(w - 1, engine.weight_cap, dims)
    raise CapTooSmall(f"quotient still nonzero at weight {engine.weight_cap}: dims {dims}")


# -- evaluation into finite-dimensional algebras --

def letter_images(engine: OrbitIdeals, alg, h_cols, seeds) -> list:
    """``y[s, k] -> h^k(seeds[s])``; equivariant when ``seeds[s]`` lies in ``L_{i_s}``."""
    images = []
    for s in range(engine.Y.T):
        cur = seeds[s]
        for _ in range(engine.Y.q):
            images.append(cur)
            cur = apply(alg.field, h_cols, cur)
    return images


def _convert(target, source, c):
    return c if target is source else target.coerce(c)


def delta(engine: OrbitIdeals, alg, h_cols, seeds, x: FreeElement) -> dict:
    F = alg.field
    terms = {w: _convert(F, engine.field, c) for w, c in x.terms.items()}
    return evaluate_terms(terms, letter_images(engine, alg, h_cols, seeds), alg.bracket, F)


def delta_terms(engine: OrbitIdeals, alg, h_cols, seeds, terms) -> dict:
    F = alg.field
    images = letter_images(engine, alg, h_cols, seeds)
    out: dict = {}
    for t in terms:
        F.axpy(out, _convert(F, engine.field, t.coef), alg.simple([images[a] for a in t.word]))
    return out


def evaluated_I(alg, action, decomp, c: int):
    """Ideal of ``alg`` generated by the graded components of ``gamma_{c+1}(C_L(H))``;
    it contains the image of ``I`` under every equivariant evaluation."""
    C = fixed_subalgebra(alg, action.h)
    g = C
    for _ in range(c):
        g = bracket_span(alg, g, C)
    gens = [project(alg, action, decomp.omega, v, i) for v in g.rows for i in range(decomp.n)]
    return ideal_closure([v for v in gens if v], alg)
