"""Generalized centralizers, their representatives, and the subalgebra Z.

Level ``t`` of the tower holds, for every nonzero index ``j``, a subspace
``L_j(t)`` of the eigenspace ``L_j`` and a finite set of representatives.
``L_j(0) = L_j``. For ``t >= 1``, ``L_j(t)`` is the common kernel of the
maps ``y -> [y, x_1, ..., x_k]`` into ``L_0`` over all tuples of
representatives of lower levels with ``k <= U`` and ``j + sum(indices) = 0``.
Representatives of level ``t`` are the basis vectors occurring in pivot
commutators of every zero-sum pattern evaluated on the ``L_i(t)``, closed
under ``h``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .errors import (IndexSumViolation, LevelsIncomplete, PreconditionViolation,
                     TowerIncomplete)
from .fdlie import StructAlgebra, lower_central_series, subalgebra_closure
from .frobact import AlgebraAction, GradedDecomposition, decompose
from .linalg import Echelon, Subspace, apply, columns
from .mkhsh import BoundsConfig


def enumerate_patterns(n: int, max_weight: int) -> list:
    """Index tuples of length ``2..max_weight`` with nonzero entries and zero sum mod n."""
    out = []
    for w in range(2, max_weight + 1):
        for tup in itertools.product(range(1, n), repeat=w):
            if sum(tup) % n == 0:
                out.append(tup)
    out.sort()
    return out


@dataclass(frozen=True)
class Representative:
    rid: int
    vector: dict = dc_field(hash=False, compare=False)
    index: int = 0
    level: int = 0
    orbit_id: int = 0

    def __repr__(self):
        return f"x{self.rid}[j={self.index}, level={self.level}, orbit={self.orbit_id}]"


@dataclass
class Level:
    t: int
    spaces: dict  # j -> Subspace
    reps: list = dc_field(default_factory=list)
    pivots: dict = dc_field(default_factory=dict)  # pattern -> [(rep ids, value)]
    tuples_used: dict = dc_field(default_factory=dict)  # j -> number of nonzero maps
    sealed: bool = False

    def rep_count(self) -> int:
        return len(self.reps)

    def orbit_count(self) -> int:
        return len({r.orbit_id for r in self.reps})


class LevelTower:
    """The tower over one algebra with an FH-action (``h`` may be absent when ``m = 0``)."""

    def __init__(self, alg: StructAlgebra, action: AlgebraAction, bounds: BoundsConfig,
                 decomp: GradedDecomposition | None = None):
        self.alg = alg
        self.action = action
        self.bounds = bounds
        self.decomp = decomp or decompose(alg, action)
        self.n = action.descriptor.n
        self.q = action.descriptor.q
        self.r = action.descriptor.r
        self.field = alg.field
        self.h_cols = columns(self.field, action.h) if action.h is not None else None
        self.levels: list = []
        self._next_rid = 0
        self._next_orbit = 0
        self._freeze_cache: dict = {}
        self.patterns = enumerate_patterns(self.n, bounds.U) if bounds.U >= 2 else []

    @property
    def m(self) -> int:
        return self.decomp.m

    @property
    def T(self) -> int:
        return self.bounds.T

    @property
    def U(self) -> int:
        return self.bounds.U

    def L(self, j: int) -> Subspace:
        return self.decomp.components[j % self.n]

    def space(self, j: int, t: int) -> Subspace:
        if t == 0:
            return self.L(j)
        return self.levels[t].spaces[j % self.n]

    def reps_below(self, t: int) -> list:
        return [r for lev in self.levels[:t] for r in lev.reps]

    def rep(self, rid: int) -> Representative:
        for lev in self.levels:
            for r in lev.reps:
                if r.rid == rid:
                    return r
        raise KeyError(rid)

    def h(self, v: dict) -> dict:
        return apply(self.field, self.h_cols, v)

    def value(self, vectors) -> dict:
        return self.alg.simple(vectors)


# -- the maps theta -----------------------------------------------------------------

@dataclass
class ThetaMap:
    j: int
    tuple: tuple
    domain: Subspace
    images: list  # image of each domain row, inside L_0

    def kernel(self, field) -> Subspace:
        ech = Echelon(field, track=True)
        kern = []
        for k, img in enumerate(self.images):
            dep = ech.add(img, k)
            if dep is not None:
                vec: dict = {}
                for lab, c in dep.items():
                    field.axpy(vec, c, self.domain.rows[lab])
                kern.append(vec)
        return Subspace.span(field, kern, self.domain.ambient)

    def rank(self, field) -> int:
        return Subspace.span(field, self.images).dim


def theta(tower: LevelTower, reps, j: int) -> ThetaMap:
    """``y_j -> [y_j, x_1, ..., x_k]`` on the carrier ``L_j``."""
    n = tower.n
    if not reps:
        if j % n:
            raise IndexSumViolation("empty tuple needs j = 0")
    elif (j + sum(r.index for r in reps)) % n:
        raise IndexSumViolation(f"j={j} plus tuple indices is not 0 mod {n}")
    if len(reps) > tower.U:
        raise IndexSumViolation(f"tuple longer than U={tower.U}")
    dom = tower.L(j)
    images = [tower.value([row] + [r.vector for r in reps]) for row in dom.rows]
    return ThetaMap(j % n, tuple(r.rid for r in reps), dom, images)


def _constraint_maps(tower: LevelTower, j: int, reps: list):
    """Yield ``(tuple of reps, images of L_j rows)`` for every admissible tuple
    whose map is nonzero. Prefixes are shared; zero prefixes are pruned, and
    prefixes with an already seen image list are explored only once."""
    n, U = tower.n, tower.U
    rows = tower.L(j).rows
    seen: dict = {}

    def key(images, residue):
        return residue, tuple(tuple(sorted(im.items())) for im in images)

    def walk(prefix, images, residue):
        depth = len(prefix)
        if depth and residue == 0:
            yield tuple(prefix), images
        if depth == U:
            return
        remaining = U - depth
        k = key(images, residue)
        if seen.get(k, -1) >= remaining:
            return
        seen[k] = remaining
        for x in reps:
            nxt = [tower.alg.bracket(im, x.vector) for im in images]
            if any(nxt):
                prefix.append(x)
                yield from walk(prefix, nxt, (residue + x.index) % n)
                prefix.pop()

    if rows:
        yield from walk([], [dict(r) for r in rows], j % n)


def build_level(tower: LevelTower, t: int) -> Level:
    """Construct ``L_j(t)`` for all ``j != 0``."""
    if t < 1:
        raise ValueError("level 0 is the raw grading")
    if len(tower.levels) < t or not all(lev.sealed for lev in tower.levels[:t]):
        raise LevelsIncomplete(f"levels below {t} are not complete")
    F = tower.field
    reps = tower.reps_below(t)
    spaces, used = {}, {}
    L0 = tower.L(0)
    for j in range(1, tower.n):
        carrier = tower.L(j)
        basis = [{k: F.one()} for k in range(carrier.dim)]  # coordinates over carrier rows
        count = 0
        for _, images in _constraint_maps(tower, j, reps):
            assert all(L0.contains(im) for im in images), "theta must land in L_0"
            count += 1
            if not basis:
                continue
            ech = Echelon(F, track=True)
            fresh = []
            for k, coords in enumerate(basis):
                img: dict = {}
                for a, c in coords.items():
                    F.axpy(img, c, images[a])
                dep = ech.add(img, k)
                if dep is not None:
                    vec: dict = {}
                    for lab, c in dep.items():
                        F.axpy(vec, c, basis[lab])
                    fresh.append(vec)
            basis = fresh
        vectors = []
        for coords in basis:
            v: dict = {}
            for a, c in coords.items():
                F.axpy(v, c, carrier.rows[a])
            vectors.append(v)
        spaces[j] = Subspace.span(F, vectors, tower.alg.dim)
        used[j] = count
    level = Level(t, spaces, tuples_used=used)
    if len(tower.levels) == t:
        tower.levels.append(level)
    else:
        tower.levels[t] = level
        del tower.levels[t + 1:]
    return level


def fix_representatives(tower: LevelTower, t: int) -> Level:
    """Pivot commutators of every pattern on the level-``t`` carriers, plus h-orbits."""
    F = tower.field
    if t == 0 and not tower.levels:
        tower.levels.append(Level(0, {j: tower.L(j) for j in range(1, tower.n)}))
    if len(tower.levels) <= t:
        raise LevelsIncomplete(f"level {t} has not been built")
    level = tower.levels[t]
    m = tower.m
    chosen: dict = {}  # (index, frozen vector) -> vector
    raw_pivots: dict = {}
    if m:
        for pattern in tower.patterns:
            carriers = [tower.space(i, t).rows for i in pattern]
            if any(not c for c in carriers):
                continue
            ech = Echelon(F)
            found = []
            for combo, value in _pattern_values(tower.alg, carriers):
                if ech.add(value) is None:
                    found.append((combo, value))
                    if ech.rank == m:
                        break
            if found:
                raw_pivots[pattern] = found
                for combo in (c for c, _ in found):
                    for i, pos in zip(pattern, combo):
                        vec = tower.space(i, t).rows[pos]
                        chosen.setdefault((i, _freeze(vec)), vec)
    if chosen and tower.h_cols is None:
        raise PreconditionViolation("representatives need the complement h to form orbits")
    by_key: dict = {}
    reps = []
    for (i, fv), vec in chosen.items():
        if (i, fv) in by_key:
            continue
        orbit_id = tower._next_orbit
        tower._next_orbit += 1
        cur, idx = vec, i
        for _ in range(tower.q):
            k = (idx, _freeze(cur))
            if k not in by_key:
                rep = Representative(tower._next_rid, cur, idx, t, orbit_id)
                tower._next_rid += 1
                by_key[k] = rep
                reps.append(rep)
            cur, idx = tower.h(cur), idx * tower.r % tower.n
    level.reps = reps
    level.pivots = {}
    for pattern, found in raw_pivots.items():
        entries = []
        for combo, value in found:
            ids = tuple(by_key[(i, _freeze(tower.space(i, t).rows[pos]))].rid
                        for i, pos in zip(pattern, combo))
            entries.append((ids, value))
        level.pivots[pattern] = entries
    level.sealed = True
    return level


def _freeze(v: dict) -> tuple:
    return tuple(sorted(v.items()))


def _pattern_values(alg: StructAlgebra, carriers):
    """``(positions, [b_1, ..., b_w])`` over carrier basis tuples, zero prefixes pruned."""
    w = len(carriers)

    def walk(depth, positions, value):
        if depth == w:
            yield tuple(positions), value
            return
        for k, b in enumerate(carriers[depth]):
            nxt = alg.bracket(value, b)
            if nxt:
                positions.append(k)
                yield from walk(depth + 1, positions, nxt)
                positions.pop()

    for k, b in enumerate(carriers[0]):
        yield from walk(1, [k], b)


def build_tower(alg: StructAlgebra, action: AlgebraAction, bounds: BoundsConfig,
                decomp: GradedDecomposition | None = None) -> LevelTower:
    tower = LevelTower(alg, action, bounds, decomp)
    fix_representatives(tower, 0)
    for t in range(1, bounds.T + 1):
        build_level(tower, t)
        fix_representatives(tower, t)
    return tower


# -- checks on the tower ------------------------------------------------------------

def nesting_violations(tower: LevelTower) -> list:
    return [(j, t) for t in range(1, len(tower.levels)) for j in range(1, tower.n)
            if not tower.space(j, t) <= tower.space(j, t - 1)]


def h_stability_violations(tower: LevelTower) -> list:
    """``(j, t)`` with ``L_j(t)^h != L_{rj}(t)``."""
    if tower.h_cols is None:
        return []
    out = []
    for t in range(len(tower.levels)):
        for j in range(1, tower.n):
            img = tower.space(j, t).map(tower.h)
            if img != tower.space(j * tower.r, t):
                out.append((j, t))
    return out


def codimension_violations(tower: LevelTower) -> list:
    """``(j, t)`` where ``codim L_j(t)`` exceeds ``m`` times the number of maps used."""
    out = []
    for t in range(1, len(tower.levels)):
        for j in range(1, tower.n):
            codim = tower.L(j).dim - tower.space(j, t).dim
            if codim > tower.m * tower.levels[t].tuples_used[j]:
                out.append((j, t))
    return out


def orbit_closure_violations(tower: LevelTower) -> list:
    """Representatives whose h-image is missing from the same level and orbit."""
    if tower.h_cols is None:
        return []
    out = []
    for lev in tower.levels:
        keys = {(r.index, _freeze(r.vector)): r for r in lev.reps}
        for r in lev.reps:
            img = keys.get((r.index * tower.r % tower.n, _freeze(tower.h(r.vector))))
            if img is None or img.orbit_id != r.orbit_id:
                out.append(r.rid)
    return out


@dataclass
class CheckResult:
    ok: bool
    checked: int
    counterexample: object = None
    exhaustive: bool = True

    def __bool__(self):
        return self.ok


def _admissible_tuples(tower: LevelTower, j: int, reps: list, start: list):
    """Every tuple of ``reps`` (length ``<= U``) with ``j + sum = 0``, as
    ``(tuple, values of the start vectors)``; zero prefixes are cut."""
    n, U = tower.n, tower.U

    def walk(prefix, values, residue):
        if prefix and residue == 0:
            yield tuple(prefix), values
        if len(prefix) == U:
            return
        for x in reps:
            nxt = [tower.alg.bracket(v, x.vector) for v in values]
            prefix.append(x)
            if any(nxt):
                yield from walk(prefix, nxt, (residue + x.index) % n)
            else:
                yield from _zero_extensions(prefix, (residue + x.index) % n, reps, U, n, nxt)
            prefix.pop()

    yield from walk([], start, j % n)


def _zero_extensions(prefix, residue, reps, U, n, zeros):
    """Tuples extending a prefix whose commutator already vanishes."""
    if residue == 0:
        yield tuple(prefix), zeros
    if len(prefix) == U:
        return
    for x in reps:
        prefix.append(x)
        yield from _zero_extensions(prefix, (residue + x.index) % n, reps, U, n, zeros)
        prefix.pop()


def check_centralizer_property(tower: LevelTower, t: int, sample_cap: int = 100000,
                               rng: random.Random | None = None) -> CheckResult:
    """``[y, x_1, ..., x_k] = 0`` for ``y`` in a basis of ``L_j(t)`` and all
    admissible tuples of lower-level representatives."""
    reps = tower.reps_below(t)
    total = sum(len(reps) ** k for k in range(1, tower.U + 1)) * (tower.n - 1)
    checked = 0
    if total <= sample_cap:
        for j in range(1, tower.n):
            rows = tower.space(j, t).rows
            if not rows:
                continue
            for tup, values in _admissible_tuples(tower, j, reps, [dict(r) for r in rows]):
                checked += 1
                for y, v in zip(rows, values):
                    if v:
                        return CheckResult(False, checked, (j, y, [x.rid for x in tup]))
        return CheckResult(True, checked)
    rng = rng or random.Random(0)
    for _ in range(sample_cap):
        j = rng.randrange(1, tower.n)
        rows = tower.space(j, t).rows
        if not rows or not reps:
            continue
        k = rng.randint(1, tower.U)
        tup = [rng.choice(reps) for _ in range(k - 1)]
        need = (-j - sum(x.index for x in tup)) % tower.n
        last = [x for x in reps if x.index == need]
        if not last:
            continue
        tup.append(rng.choice(last))
        checked += 1
        for y in rows:
            if tower.value([y] + [x.vector for x in tup]):
                return CheckResult(False, checked, (j, y, [x.rid for x in tup]), False)
    return CheckResult(True, checked, None, False)


# -- freezing ---------------------------------------------------------------------------

@dataclass
class Frozen:
    level: int
    pattern: tuple
    terms: list  # (coef, rep ids)
    value: dict

    def evaluate(self, tower: LevelTower) -> dict:
        F = tower.field
        out: dict = {}
        for coef, ids in self.terms:
            F.axpy(out, coef, tower.value([tower.rep(i).vector for i in ids]))
        return out


def freeze(tower: LevelTower, entries, s: int) -> Frozen:
    """Rewrite ``[y_1, ..., y_w]`` (``entries = [(vector, index, level), ...]``)
    over same-pattern commutators of level-``s`` representatives."""
    pattern = tuple(i % tower.n for _, i, _ in entries)
    if len(entries) > tower.U or len(entries) < 2:
        raise PreconditionViolation(f"weight {len(entries)} outside 2..U={tower.U}")
    if sum(pattern) % tower.n or 0 in pattern:
        raise PreconditionViolation(f"pattern {pattern} needs nonzero indices with zero sum")
    if s > min(k for _, _, k in entries):
        raise PreconditionViolation(f"level {s} exceeds an entry's level")
    if s >= len(tower.levels) or not tower.levels[s].sealed:
        raise LevelsIncomplete(f"level {s} has no representatives yet")
    for vec, i, k in entries:
        if not tower.space(i, k).contains(vec):
            raise PreconditionViolation(f"entry is not in L_{i % tower.n}({k})")
    F = tower.field
    value = tower.value([v for v, _, _ in entries])
    key = (s, pattern)
    ech = tower._freeze_cache.get(key)
    if ech is None:
        ech = Echelon(F, track=True)
        for k, (ids, val) in enumerate(tower.levels[s].pivots.get(pattern, [])):
            ech.add(val, k)
        tower._freeze_cache[key] = ech
    combo = ech.express(value)
    if combo is None:
        raise PreconditionViolation("value is outside the span of level-s pattern values")
    pivots = tower.levels[s].pivots.get(pattern, [])
    terms = [(c, pivots[k][0]) for k, c in sorted(combo.items())]
    return Frozen(s, pattern, terms, value)


# -- collecting --------------------------------------------------------------------------

@dataclass(frozen=True)
class Tagged:
    """An entry of a commutator: a vector with level, index and a display label."""

    vector: tuple
    level: int
    index: int
    label: str
    quasi: bool = False

    def vec(self) -> dict:
        return dict(self.vector)


def tag(vector: dict, level: int, index: int, label: str) -> Tagged:
    return Tagged(_freeze(vector), level, index, label)


def _merge(alg, a: Tagged, b: Tagged, n: int) -> Tagged:
    v = alg.bracket(a.vec(), b.vec())
    return Tagged(_freeze(v), max(a.level, b.level), (a.index + b.index) % n,
                  f"[{a.label},{b.label}]", True)


def collect(alg: StructAlgebra, head: Tagged, entries, n: int) -> list:
    """Rewrite ``[head, e_1, ..., e_k]`` as ``sum coef * [head, q_1, ..., q_s, rest]``
    where ``q_1, q_2, ...`` have strictly increasing levels, one per level
    present, using ``[X, a, b] = [X, b, a] + [X, [a, b]]``. Returns
    ``[(coef, [entries])]`` with integer coefficients."""
    out: dict = {}
    _collect(alg, n, 1, [head] + list(entries), 1, sorted({e.level for e in entries}), out)
    return [(c, list(es)) for es, c in out.items() if c]


def _collect(alg, n, coef, seq, p, levels, out):
    if not levels:
        key = tuple(seq)
        out[key] = out.get(key, 0) + coef
        return
    level = levels[0]
    i = next((k for k in range(p, len(seq)) if seq[k].level == level), None)
    if i is None:
        _collect(alg, n, coef, seq, p, levels[1:], out)
        return
    if i == p:
        _collect(alg, n, coef, seq, p + 1, levels[1:], out)
        return
    a, b = seq[i - 1], seq[i]
    swapped = seq[:i - 1] + [b, a] + seq[i + 1:]
    _collect(alg, n, coef, swapped, p, levels, out)
    merged = seq[:i - 1] + [_merge(alg, a, b, n)] + seq[i + 1:]
    _collect(alg, n, coef, merged, p, levels, out)


def evaluate_collected(alg: StructAlgebra, terms) -> dict:
    F = alg.field
    out: dict = {}
    for coef, es in terms:
        F.axpy(out, F.from_int(coef), alg.simple([e.vec() for e in es]))
    return out


# -- vanishing of quasirepresentative commutators ----------------------------------------------

def quasi_vanishing_check(tower: LevelTower, samples: int, rng: random.Random) -> CheckResult:
    """Commutators (random bracketing) of one level-``t`` centralizer with
    quasirepresentatives of lower levels, zero index sum and total weight
    ``<= U + 1``, must vanish."""
    checked = 0
    n = tower.n
    for _ in range(samples * 20):
        if checked >= samples:
            break
        t = rng.randint(1, len(tower.levels) - 1)
        j = rng.randrange(1, n)
        rows = tower.space(j, t).rows
        if not rows:
            continue
        y = {}
        for row in rows:
            tower.field.axpy(y, tower.field.from_int(rng.randint(1, 5)), row)
        budget = tower.U  # weight left for quasirepresentatives
        parts, weight, residue = [], 0, j
        while weight < budget:
            qr = _random_quasi(tower, t, rng, budget - weight)
            if qr is None:
                break
            parts.append(qr)
            weight += qr[2]
            residue = (residue + qr[1]) % n
            if residue == 0 and rng.random() < 0.5:
                break
        if residue or not parts:
            continue
        leaves = [y] + [p[0] for p in parts]
        checked += 1
        if _random_bracket(tower.alg, leaves, rng):
            return CheckResult(False, checked, (t, j, len(leaves)), False)
    return CheckResult(True, checked, None, False)


def _random_quasi(tower: LevelTower, below: int, rng, budget: int):
    """A quasirepresentative ``(vector, index, weight)`` of some level ``< below``."""
    k = rng.randrange(below)
    top = tower.levels[k].reps
    if not top or budget < 1:
        return None
    lower = tower.reps_below(k)
    items = [rng.choice(top)]
    extra = rng.randint(0, min(budget - 1, 2)) if lower else 0
    items += [rng.choice(lower) for _ in range(extra)]
    rng.shuffle(items)
    vec = _random_bracket(tower.alg, [x.vector for x in items], rng)
    if not vec:
        return None
    return vec, sum(x.index for x in items) % tower.n, len(items)


def _random_bracket(alg, leaves, rng) -> dict:
    items = [dict(v) for v in leaves]
    while len(items) > 1:
        a = rng.randrange(len(items) - 1)
        items[a:a + 2] = [alg.bracket(items[a], items[a + 1])]
    return items[0]


# -- Z --------------------------------------------------------------------------------------

@dataclass
class ZReport:
    Z: Subspace
    dim: int
    codim: int
    graded: bool
    h_invariant: bool | None
    components: list
    series_dims: list
    nilpotency_class: int | None


def build_Z(tower: LevelTower) -> ZReport:
    if len(tower.levels) <= tower.T or not tower.levels[tower.T].spaces:
        raise TowerIncomplete(f"level T={tower.T} has not been built")
    alg, F = tower.alg, tower.field
    gens = [row for j in range(1, tower.n) for row in tower.space(j, tower.T).rows]
    Z = subalgebra_closure(gens, alg)
    comps = [Z.intersect(tower.L(k)) for k in range(tower.n)]
    graded = sum(c.dim for c in comps) == Z.dim
    h_inv = None
    if tower.h_cols is not None:
        h_inv = Z.map(tower.h) == Z and all(
            comps[k].map(tower.h) == comps[k * tower.r % tower.n] for k in range(tower.n))
    series = lower_central_series(Z, alg)
    return ZReport(Z, Z.dim, alg.dim - Z.dim, graded, h_inv, [c.dim for c in comps],
                   series.dims, series.nilpotency_class)


def verify_vanishing(tower: LevelTower, U_effective: int, sample_cap: int = 100000,
                     rng: random.Random | None = None) -> CheckResult:
    """Every simple commutator of weight ``U_effective`` in basis vectors of
    the top-level carriers is zero."""
    pool = [row for j in range(1, tower.n) for row in tower.space(j, tower.T).rows]
    if not pool:
        return CheckResult(True, 0)
    alg = tower.alg
    if len(pool) ** U_effective <= sample_cap:
        checked = 0

        def walk(depth, value, path):
            nonlocal checked
            if depth == U_effective:
                checked += 1
                return path if value else None
            for k, b in enumerate(pool):
                nxt = alg.bracket(value, b)
                if nxt or depth + 1 == U_effective:
                    bad = walk(depth + 1, nxt, path + [k])
                    if bad is not None:
                        return bad
                else:
                    checked += len(pool) ** (U_effective - depth - 1)
            return None

        for k, b in enumerate(pool):
            bad = walk(1, b, [k])
            if bad is not None:
                return CheckResult(False, checked, bad)
        return CheckResult(True, checked)
    rng = rng or random.Random(0)
    for s in range(sample_cap):
        path = [rng.randrange(len(pool)) for _ in range(U_effective)]
        if alg.simple([pool[k] for k in path]):
            return CheckResult(False, s + 1, path, False)
    return CheckResult(True, sample_cap, None, False)


# -- reporting ---------------------------------------------------------------------------------

def tower_rows(tower: LevelTower) -> list:
    """``(t, j, dim L_j(t), codim, representatives of index j at level t)``."""
    rows = []
    for t, lev in enumerate(tower.levels):
        for j in range(1, tower.n):
            space = tower.space(j, t)
            reps = sum(1 for r in lev.reps if r.index == j)
            rows.append((t, j, space.dim, tower.L(j).dim - space.dim, reps))
    return rows
