import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from froblie.errors import (IndexSumViolation, LevelsIncomplete, PreconditionViolation,
                            TowerIncomplete)
from froblie.fdlie import StructAlgebra
from froblie.fixtures import (heisenberg, heisenberg_kernel_regular, heisenberg_stack,
                              regular_septic)
from froblie.frobact import AlgebraAction
from froblie.gradcent import (Level, LevelTower, build_level, build_tower, build_Z,
                              check_centralizer_property, codimension_violations, collect,
                              enumerate_patterns, evaluate_collected, fix_representatives,
                              freeze, h_stability_violations, nesting_violations,
                              orbit_closure_violations, quasi_vanishing_check, tag, theta,
                              tower_rows, verify_vanishing)
from froblie.linalg import Subspace
from froblie.mkhsh import BoundsConfig
from oracles import rank_mod_p


def stack_tower(k=3, T=2, U=3):
    alg, action = heisenberg_stack(k)
    return build_tower(alg, action, BoundsConfig(1, T, U))


def test_patterns_examples():
    assert enumerate_patterns(3, 2) == [(1, 2), (2, 1)]
    p3 = enumerate_patterns(3, 3)
    assert (1, 1, 1) in p3 and (2, 2, 2) in p3
    assert enumerate_patterns(2, 2) == [(1, 1)]


@pytest.mark.parametrize("n,w", [(2, 4), (3, 4), (5, 3), (7, 3)])
def test_patterns_brute_force(n, w):
    want = sorted(t for k in range(2, w + 1) for t in product(range(1, n), repeat=k)
                  if sum(t) % n == 0)
    assert enumerate_patterns(n, w) == want


def test_heisenberg_level_zero_and_theta():
    alg, action = heisenberg()
    F = alg.field
    tower = LevelTower(alg, action, BoundsConfig(1, 2, 3))
    lev = fix_representatives(tower, 0)
    assert sorted((r.index, tuple(r.vector.items())) for r in lev.reps) == \
        [(1, ((0, F.one()),)), (2, ((1, F.one()),))]
    assert len(lev.pivots[(1, 2)]) == 1
    assert lev.orbit_count() == 1 and lev.rep_count() == 2
    x2 = next(r for r in lev.reps if r.index == 2)
    th = theta(tower, [x2], 1)
    assert th.images == [{2: F.one()}] and th.rank(F) == 1
    assert th.kernel(F).dim == 0
    with pytest.raises(IndexSumViolation):
        theta(tower, [x2], 2)
    with pytest.raises(IndexSumViolation):
        theta(tower, [], 1)
    # L_1(1) is the kernel of e -> [e, x_2(0)] on L_1
    assert build_level(tower, 1).spaces[1].dim == 0


def test_theta_zero_map():
    F = heisenberg()[0].field
    alg = StructAlgebra.abelian(F, 3)
    action = heisenberg()[1]
    tower = LevelTower(alg, action, BoundsConfig(1, 1, 2))
    fix_representatives(tower, 0)
    assert tower.levels[0].reps == []
    L1 = build_level(tower, 1)
    assert all(L1.spaces[j] == tower.L(j) for j in (1, 2))


def _oracle_level_dim(tower, j, t):
    """Kernel of all admissible tuples of lower reps by brute-force enumeration mod p."""
    p = tower.field.characteristic
    carrier = tower.L(j).rows
    reps = tower.reps_below(t)
    funcs = []
    for k in range(1, tower.U + 1):
        for tup in product(reps, repeat=k):
            if (j + sum(r.index for r in tup)) % tower.n:
                continue
            vals = [tower.alg.simple([y] + [r.vector for r in tup]) for y in carrier]
            for coord in range(tower.alg.dim):
                funcs.append([v.get(coord, 0) for v in vals])
    return len(carrier) - (rank_mod_p(funcs, p) if funcs else 0)


@pytest.mark.parametrize("k,T,U", [(1, 2, 2), (2, 2, 3), (3, 3, 3), (3, 2, 4)])
def test_levels_against_brute_force(k, T, U):
    tower = stack_tower(k, T, U)
    for t in range(1, T + 1):
        for j in (1, 2):
            assert tower.space(j, t).dim == _oracle_level_dim(tower, j, t)
    assert [r[2] for r in tower_rows(tower) if r[1] == 1] == \
        [max(k - t, 0) for t in range(T + 1)]


def test_tower_invariants_stack():
    tower = stack_tower()
    assert nesting_violations(tower) == []
    assert h_stability_violations(tower) == []
    assert codimension_violations(tower) == []
    assert orbit_closure_violations(tower) == []
    for t in range(1, tower.T + 1):
        res = check_centralizer_property(tower, t)
        assert res and res.exhaustive and res.checked > 0
    assert [lev.rep_count() for lev in tower.levels] == [2, 2, 2]
    for lev in tower.levels:
        assert lev.rep_count() == tower.q * lev.orbit_count()


@settings(max_examples=20)
@given(k=st.integers(1, 3), T=st.integers(1, 3), U=st.integers(2, 4))
def test_tower_invariants_property(k, T, U):
    tower = stack_tower(k, T, U)
    assert not nesting_violations(tower)
    assert not h_stability_violations(tower)
    assert not codimension_violations(tower)
    assert not orbit_closure_violations(tower)
    assert check_centralizer_property(tower, T)
    assert quasi_vanishing_check(tower, 30, random.Random(k * 100 + T * 10 + U))


def test_centralizer_mutation_is_caught():
    tower = stack_tower()
    lev = tower.levels[1]
    tower.levels[1] = Level(1, {j: tower.L(j) for j in (1, 2)}, lev.reps, lev.pivots,
                            lev.tuples_used, True)
    res = check_centralizer_property(tower, 1)
    assert not res and res.counterexample is not None


def test_vanishing_examples():
    alg, action = heisenberg()
    tower = build_tower(alg, action, BoundsConfig(1, 2, 3))
    assert verify_vanishing(tower, 3)
    # inflate the top level beyond its kernel definition
    tower.levels[2] = Level(2, {j: tower.L(j) for j in (1, 2)}, [], {}, {1: 0, 2: 0}, True)
    res = verify_vanishing(tower, 2)
    assert not res and res.counterexample is not None
    ab = LevelTower(StructAlgebra.abelian(alg.field, 3), action, BoundsConfig(1, 1, 2))
    fix_representatives(ab, 0)
    build_level(ab, 1)
    assert verify_vanishing(ab, 2)


def test_stack_vanishing_and_Z():
    tower = stack_tower()
    assert verify_vanishing(tower, 3)
    rep = build_Z(tower)
    assert (rep.dim, rep.codim, rep.nilpotency_class) == (3, 4, 2)
    assert rep.graded and rep.h_invariant


def test_Z_heisenberg():
    alg, action = heisenberg()
    rep = build_Z(build_tower(alg, action, BoundsConfig(1, 2, 3)))
    assert rep.nilpotency_class is not None and rep.nilpotency_class <= 2
    assert rep.codim == alg.dim - rep.dim and rep.graded


def test_Z_without_fixed_points_is_everything():
    for alg, action in (heisenberg_kernel_regular(), regular_septic()):
        tower = build_tower(alg, action, BoundsConfig(1, 2, 3))
        assert all(lev.reps == [] for lev in tower.levels)
        assert all(tower.space(j, 2) == tower.L(j) for j in range(1, tower.n))
        rep = build_Z(tower)
        assert rep.Z == alg.whole() and rep.nilpotency_class == 2


def test_Z_abelian():
    alg, action = heisenberg()
    ab = StructAlgebra.abelian(alg.field, 3)
    rep = build_Z(build_tower(ab, action, BoundsConfig(1, 2, 3)))
    F = alg.field
    assert rep.Z == Subspace.span(F, [{0: F.one()}, {1: F.one()}], 3)
    assert rep.nilpotency_class == 1 and rep.codim == 1


def test_incomplete_towers():
    alg, action = heisenberg()
    tower = LevelTower(alg, action, BoundsConfig(1, 2, 3))
    with pytest.raises(TowerIncomplete):
        build_Z(tower)
    with pytest.raises(LevelsIncomplete):
        build_level(tower, 1)
    fix_representatives(tower, 0)
    with pytest.raises(LevelsIncomplete):
        build_level(tower, 2)
    with pytest.raises(LevelsIncomplete):
        fix_representatives(tower, 1)


def test_representatives_need_h():
    alg, action = heisenberg()
    tower = LevelTower(alg, AlgebraAction(action.phi, None, action.descriptor),
                       BoundsConfig(1, 1, 2))
    with pytest.raises(PreconditionViolation):
        fix_representatives(tower, 0)


def test_freeze_stack():
    tower = stack_tower()
    F = tower.field
    a, b = tower.space(1, 1).rows[0], tower.space(2, 1).rows
    b = next(v for v in b if tower.alg.bracket(a, v))
    for s in (0, 1):
        fr = freeze(tower, [(a, 1, 1), (b, 2, 1)], s)
        assert fr.evaluate(tower) == fr.value == tower.alg.bracket(a, b)
        assert all(tower.rep(i).level == s for _, ids in fr.terms for i in ids)
    x1, x2 = sorted(tower.levels[0].reps, key=lambda r: r.index)
    fr = freeze(tower, [(x1.vector, 1, 0), (x2.vector, 2, 0)], 0)
    assert fr.terms == [(F.one(), (x1.rid, x2.rid))]


def test_freeze_chain_top_to_bottom():
    tower = stack_tower(3, 3, 3)
    top = [(v, j, 2) for j in (1, 2) for v in tower.space(j, 2).rows]
    (a, i, _), (b, k, _) = top[0], next(e for e in top if tower.alg.bracket(top[0][0], e[0]))
    value = tower.alg.bracket(a, b)
    for s in (2, 1, 0):
        fr = freeze(tower, [(a, i, 2), (b, k, 2)], s)
        assert fr.evaluate(tower) == value


def test_freeze_preconditions():
    tower = stack_tower()
    x1, x2 = sorted(tower.levels[0].reps, key=lambda r: r.index)
    entries = [(x1.vector, 1, 0), (x2.vector, 2, 0)]
    with pytest.raises(PreconditionViolation):
        freeze(tower, entries * 2, 0)
    with pytest.raises(PreconditionViolation):
        freeze(tower, [entries[0], entries[0]], 0)
    with pytest.raises(PreconditionViolation):
        freeze(tower, entries, 1)
    with pytest.raises(PreconditionViolation):
        freeze(tower, [(x1.vector, 1, 2), entries[1]], 0)


def test_collect_swap_example():
    alg, _ = heisenberg_stack(2)
    F = alg.field
    head = tag({0: F.one()}, 0, 1, "a")
    x2 = tag({1: F.one()}, 2, 2, "x2")
    x1 = tag({2: F.one()}, 1, 1, "x1")
    out = collect(alg, head, [x2, x1], 3)
    assert len(out) == 2
    (c0, t0), (c1, t1) = sorted(out, key=lambda p: len(p[1]))
    assert (c0, [e.label for e in t0]) == (1, ["a", "[x2,x1]"])
    assert t0[1].quasi and t0[1].level == 2
    assert (c1, [e.label for e in t1]) == (1, ["a", "x1", "x2"])
    assert collect(alg, head, [x1, x2], 3) == [(1, [head, x1, x2])]


@settings(max_examples=40)
@given(seed=st.integers(0, 10 ** 6))
def test_collect_preserves_value(seed):
    rng = random.Random(seed)
    tower = stack_tower(3, 2, 4)
    reps = tower.reps_below(3)
    head_rep = rng.choice(reps)
    entries = [rng.choice(reps) for _ in range(rng.randint(1, 4))]
    head = tag(head_rep.vector, head_rep.level, head_rep.index, "h")
    tagged = [tag(r.vector, r.level, r.index, f"x{r.rid}") for r in entries]
    out = collect(tower.alg, head, tagged, 3)
    assert evaluate_collected(tower.alg, out) == tower.alg.simple(
        [head_rep.vector] + [r.vector for r in entries])
    for _, es in out:
        levels = sorted({e.level for e in es[1:]})
        assert [e.level for e in es[1:1 + len(levels)]] == levels
