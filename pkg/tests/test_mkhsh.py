import random

import pytest
from hypothesis import given, settings, strategies as st

from froblie.errors import CapTooSmall, NotAMember, ZeroIndexSlot
from froblie.fixtures import heisenberg
from froblie.frobact import FrobeniusDescriptor, decompose
from froblie.mkhsh import (BoundsConfig, OrbitIdeals, V_bound, build_Y, compositions, delta,
                           delta_terms, empirical_f, evaluated_I, multilinear_commutator)
from froblie.linalg import Echelon
from oracles import weight_two_quotient_dim

D3 = FrobeniusDescriptor(3, 2, 2)
D7 = FrobeniusDescriptor(7, 3, 2)


def engine(desc=D3, slots=(1, 1), c=1, cap=4):
    return OrbitIdeals(build_Y(desc, slots), c, cap)


def test_build_Y_examples():
    Y = build_Y(D3, (1, 1))
    assert len(Y.generators) == 4
    assert [g.index for g in Y.generators[:2]] == [1, 2]
    Y = build_Y(D7, (1, 3))
    assert [g.index for g in Y.generators] == [1, 2, 4, 3, 6, 5]
    with pytest.raises(ZeroIndexSlot):
        build_Y(D3, (1, 0))


def test_h_letter_cycles_each_orbit():
    Y = build_Y(D7, (1, 3))
    for a in range(6):
        b = Y.h_letter(a)
        assert Y.slot_of(b) == Y.slot_of(a)
        assert Y.index_of(b) == Y.index_of(a) * 2 % 7
        assert Y.h_letter(Y.h_letter(b)) == a


def test_V_bound_examples():
    assert V_bound(1, 1, 2, 1, 2) == 10
    assert V_bound(2, 1, 2, 1, 1) == 21
    assert V_bound(1, 1, 2, 1, 0) == 2
    b = BoundsConfig.resolve(2, 1, 1)
    assert (b.T, b.U) == (2, V_bound(2, 1, 2, 1, 1))
    assert BoundsConfig.resolve(2, 1, 1, T=3, U=4) == BoundsConfig(1, 3, 4)


def test_J_slice_examples():
    E = engine(slots=(1, 2))
    y1, y2 = E.Y.letter(1, 0), E.Y.letter(2, 0)
    x = E.K.simple([y1, y2])
    # y1_0 y2_0 and y1_1 y2_1 both have index sum 0
    assert E.slice_J((1, 1), 0).dim == 2
    assert E.membership(x)[0]
    assert E.slice_J((1, 0), 1).dim == 0
    # two letters of index 1: sum 2, nothing of index zero inside
    F = engine(slots=(1, 1))
    w = F.K.simple([F.Y.letter(1, 0), F.Y.letter(2, 0)])
    assert F.index_of(next(iter(w.terms))) == 2
    assert F.slice_J((1, 1), 2).dim == 0


def test_I_slice_examples():
    E0 = engine(slots=(1,), c=0)
    sl = E0.slice_I((1,), 1)
    assert sl.dim == 1 and sl.rows[0] == {(E0.Y.letter(1, 0),): E0.field.one()}
    # all index components of the orbit sum y_1 + y_2
    assert E0.slice_I((1,), 2).dim == 1
    E1 = engine(c=1)
    assert all(E1.slice_I((1, 0), i).dim == 0 for i in range(3))


def _span(field, vectors):
    ech = Echelon(field)
    for v in vectors:
        ech.add(v)
    return ech


@pytest.mark.parametrize("desc,slots", [(D3, (1, 1)), (D3, (1, 2)), (D7, (1, 1)), (D7, (1, 3))])
def test_I_weight_two_against_brute_force(desc, slots):
    E = engine(desc, slots)
    F = E.field
    u = [E.orbit_sum({(E.Y.letter(s, 0),): F.one()}) for s in (1, 2)]
    prod = E.K.bracket_terms(u[0], u[1])
    for i in range(desc.n):
        comp = {w: c for w, c in prod.items() if E.index_of(w) == i}
        want = _span(F, [comp] if comp else [])
        got = E.slice_I((1, 1), i)
        assert got.dim == want.rank
        assert all(want.contains(r) for r in got.rows)
    dims = empirical_f(desc, 1, slots, 4).quotient_dims
    assert dims[0] == desc.q * 2
    assert dims[1] == weight_two_quotient_dim(desc.n, desc.q, desc.r, slots)


def test_membership_examples():
    E = engine(slots=(1, 2))
    x = multilinear_commutator(E)
    ok, cert = E.membership(x)
    assert ok and E.verify_certificate(cert)
    assert E.membership(E.K.simple([E.Y.letter(1, 0)])) == (False, None)


@pytest.mark.parametrize("desc,c,slots", [(D3, 1, (1, 1)), (D3, 2, (1, 1)), (D7, 1, (1, 1))])
def test_multilinear_commutator_above_class_is_member(desc, c, slots):
    f = empirical_f(desc, c, slots, 6).nilpotency_class
    E = OrbitIdeals(build_Y(desc, [slots[0]] * (f + 1)), c, f + 1)
    ok, cert = E.membership(multilinear_commutator(E))
    assert ok and E.verify_certificate(cert)


def test_membership_monotone_in_cap():
    small, big = engine(slots=(1, 1, 1), cap=3), engine(slots=(1, 1, 1), cap=5)
    rng = random.Random(3)
    for _ in range(30):
        word = [rng.randrange(6) for _ in range(rng.randint(1, 3))]
        x_small = small.K.simple(word)
        if small.membership(x_small)[0]:
            assert big.membership(big.K.simple(word))[0]


def test_empirical_f_values():
    assert empirical_f(D3, 1, (1, 1), 5).nilpotency_class == 1
    assert empirical_f(D3, 2, (1, 1), 6).nilpotency_class == 2
    assert empirical_f(D7, 1, (1, 1), 4).nilpotency_class == 2
    with pytest.raises(CapTooSmall):
        empirical_f(D3, 1, (1, 1), 1)
    # c = 0: the components of every orbit sum are letters, so M = 0
    assert empirical_f(D3, 0, (1, 2), 4).nilpotency_class == 0


def test_transform_single_commutator():
    E = engine(slots=(1, 2))
    x = multilinear_commutator(E)
    res = E.transform(x)
    assert len(res.terms) == 1
    t = res.terms[0]
    assert t.word == (E.Y.letter(1, 0), E.Y.letter(2, 0)) and t.marked == (0, 2)
    assert not res.remainder
    assert E.structural_scan(x, res) == []
    with pytest.raises(NotAMember):
        E.transform(E.K.simple([E.Y.letter(1, 0)]))


@pytest.mark.parametrize("seed", range(8))
def test_transform_invariants_random(seed):
    rng = random.Random(seed)
    desc, c = [(D3, 1), (D3, 2), (D7, 1)][seed % 3]
    f = empirical_f(desc, c, (1, 1), 6).nilpotency_class
    slots = [rng.choice([i for i in range(1, desc.n)]) for _ in range(f + 1)]
    E = OrbitIdeals(build_Y(desc, slots), c, f + 1)
    word = [E.Y.letter(s, rng.randrange(desc.q)) for s in range(1, f + 2)]
    x = E.K.simple(word)
    assert x and E.membership(x)[0]
    res = E.transform(x)
    assert E.structural_scan(x, res) == []
    ok, _ = E.membership(res.remainder)
    assert ok
    # the remainder lies in I alone
    for (counts, index), terms in E.split(res.remainder).items():
        assert _span(E.field, E.slice_I(counts, index).rows).contains(terms)


def test_transform_evaluates_on_heisenberg():
    alg, action = heisenberg()
    decomp = decompose(alg, action)
    F = alg.field
    h_cols = action.h_cols(F)
    target = evaluated_I(alg, action, decomp, 1)
    E = engine(slots=(1, 2))
    seeds = [decomp.components[1].rows[0], decomp.components[2].rows[0]]
    x = multilinear_commutator(E)
    res = E.transform(x)
    diff = delta(E, alg, h_cols, seeds, x)
    F.axpy(diff, F.neg(F.one()), delta_terms(E, alg, h_cols, seeds, res.terms))
    assert target.contains(diff)
    assert delta(E, alg, h_cols, seeds, x) == {2: F.one()}


def _slice_rows(E, counts, index, kind):
    return (E.slice_J if kind == "J" else E.slice_I)(counts, index).rows


@pytest.mark.parametrize("kind", ["J", "I"])
def test_slices_are_h_stable(kind):
    E = engine(D7, (1, 3), c=1, cap=3)
    for w in (2, 3):
        for counts in compositions(w, 2):
            for i in range(7):
                rows = _slice_rows(E, counts, i, kind)
                image = _span(E.field, _slice_rows(E, counts, 2 * i % 7, kind))
                for row in rows:
                    assert all(E.index_of(u) == i for u in row)
                    assert image.contains(E.h_apply(row))


@settings(max_examples=25)
@given(seed=st.integers(0, 10 ** 6))
def test_centralizer_products_vanish_in_quotient(seed):
    rng = random.Random(seed)
    desc, c = [(D3, 1), (D3, 2), (D7, 1)][seed % 3]
    E = OrbitIdeals(build_Y(desc, (1, 1)), c, c + 2)
    counts = rng.choice([cs for w in range(c + 1, c + 3) for cs in compositions(w, 2)])
    for _, prod in E.generator_products(counts):
        for (cs, index), terms in E.split(E.K.element(prod)).items():
            assert E.slice_JI(cs, index).contains(terms)
