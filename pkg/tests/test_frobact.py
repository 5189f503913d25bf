import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from froblie.errors import MissingRoot, NotApplicable, NotDirectSum, OrderMismatch
from froblie.fdlie import StructAlgebra, nilpotency_class
from froblie.fixtures import (heisenberg, heisenberg_rational, jordan_transform,
                              random_graded_algebra, sylow_fixture)
from froblie.frobact import (AlgebraAction, FrobeniusDescriptor, bound_check_pp, decompose,
                             extend_scalars, fixed_profile, fixed_subalgebra, grading_violations,
                             h_stability_violations, index_orbits, orbit, orbit_sum,
                             projection_check, sylow_reduction, sylow_split, validate_action,
                             validate_descriptor)
from froblie.linalg import Subspace, apply, columns, identity
from froblie.scalars import FieldSpec, make_field
from oracles import fixed_dim_mod_p, frobenius_oracle


def test_descriptor_examples():
    assert validate_descriptor(7, 3, 2)
    v = validate_descriptor(7, 3, 3)
    assert not v and v.divisor == 7
    assert validate_descriptor(15, 2, 14)
    v = validate_descriptor(15, 2, 4)
    assert not v and v.divisor == 3


@given(n=st.integers(2, 60), q=st.integers(2, 6), data=st.data())
def test_descriptor_matches_oracle(n, q, data):
    r = data.draw(st.integers(1, n - 1))
    assert bool(validate_descriptor(n, q, r)) == frobenius_oracle(n, q, r)


def test_orbit_examples():
    d = FrobeniusDescriptor(7, 3, 2)
    assert orbit(1, d) == (1, 2, 4)
    assert orbit(3, d) == (3, 6, 5)
    assert orbit(0, d) == (0, 0, 0)
    assert index_orbits(d) == [(1, 2, 4), (3, 6, 5)]


def test_validate_action_heisenberg():
    alg, action = heisenberg()
    assert validate_action(alg, action) == []
    F = alg.field
    bad_h = [row[:] for row in action.h]
    bad_h[2][2] = F.one()
    problems = validate_action(alg, AlgebraAction(action.phi, bad_h, action.descriptor))
    assert "h is not an automorphism on pair (e1, e2)" in problems


def test_identity_phi_has_wrong_order():
    F = make_field(FieldSpec.rational())
    alg = StructAlgebra.abelian(F, 2)
    problems = validate_action(alg, AlgebraAction(identity(F, 2), None, FrobeniusDescriptor(2, 1, 1)))
    assert any("order" in p for p in problems)


def test_decompose_heisenberg():
    alg, action = heisenberg()
    d = decompose(alg, action)
    F = alg.field
    assert d.dims() == [1, 1, 1]
    assert d.components[0] == Subspace.span(F, [{2: F.one()}], 3)
    assert d.m == 1


def test_decompose_small_examples():
    F = make_field(FieldSpec.cyclotomic(3))
    w = F.gen()
    alg = StructAlgebra.abelian(F, 2)
    phi = [[w, F.zero()], [F.zero(), F.mul(w, w)]]
    assert decompose(alg, AlgebraAction(phi, None, FrobeniusDescriptor(3, 2, 2))).m == 0
    alg3, _ = heisenberg()
    d = decompose(alg3, AlgebraAction(identity(F, 3), None, FrobeniusDescriptor(1, 1, 1)))
    assert d.components[0] == alg3.whole()


def test_decompose_errors():
    alg, action = heisenberg_rational()
    with pytest.raises(MissingRoot):
        decompose(alg, action)
    F = make_field(FieldSpec.prime(3))
    alg = StructAlgebra.from_brackets(F, 3, {(0, 1): {2: 1}})
    one, zero = F.one(), F.zero()
    phi = [[one, one, zero], [zero, one, zero], [zero, zero, one]]
    with pytest.raises(NotDirectSum):
        decompose(alg, AlgebraAction(phi, None, FrobeniusDescriptor(3, 2, 2)))


def _check_grading(alg, action):
    d = decompose(alg, action)
    assert sum(d.dims()) == alg.dim
    assert grading_violations(alg, d) == []
    # exact eigenvector check, basis pair by basis pair
    F = alg.field
    cols = action.phi_cols(F)
    for i, comp in enumerate(d.components):
        for v in comp.rows:
            assert apply(F, cols, v) == F.scale(F.pow(d.omega.value, i), v)
    for s, t in product(range(d.n), repeat=2):
        for a in d.components[s].rows:
            for b in d.components[t].rows:
                assert d.components[(s + t) % d.n].contains(alg.bracket(a, b))
    assert projection_check(alg, action, d)
    return d


def test_grading_law_heisenberg():
    alg, action = heisenberg()
    _check_grading(alg, action)
    assert h_stability_violations(alg, action, decompose(alg, action)) == []


@pytest.mark.parametrize("n", [2, 3, 5, 7])
@pytest.mark.parametrize("seed", range(6))
def test_grading_law_random(n, seed):
    alg, action = random_graded_algebra(n, random.Random(1000 * n + seed))
    _check_grading(alg, action)


def test_fixed_subalgebras_heisenberg():
    alg, action = heisenberg()
    F = alg.field
    CH = fixed_subalgebra(alg, action.h)
    assert CH == Subspace.span(F, [{0: F.one(), 1: F.one()}], 3)
    assert nilpotency_class(alg, CH) == 1
    assert fixed_subalgebra(alg, action.phi) == Subspace.span(F, [{2: F.one()}], 3)
    assert fixed_subalgebra(alg, identity(F, 3)) == alg.whole()
    prof = fixed_profile(alg, action)
    assert (prof.m, prof.c) == (1, 1)


@given(seed=st.integers(0, 10 ** 5))
def test_orbit_sums_are_fixed(seed):
    alg, action = heisenberg()
    F = alg.field
    rng = random.Random(seed)
    v = {i: F.random(rng) for i in range(3)}
    v = {k: c for k, c in v.items() if not F.is_zero(c)}
    s = orbit_sum(F, action.h_cols(F), v, 2)
    assert fixed_subalgebra(alg, action.h).contains(s)


def test_sylow_split_examples():
    assert sylow_split(6, 3) == (3, 2)
    assert sylow_split(4, 2) == (4, 1)
    with pytest.raises(NotApplicable):
        sylow_split(6, 5)


def test_sylow_reduction_fixture():
    alg, action = sylow_fixture()
    assert validate_action(alg, action) == []
    res = sylow_reduction(alg, action, 7)
    assert (res.psi_order, res.chi_order) == (7, 3)
    assert res.certificate.ok and res.certificate.dim <= res.certificate.m * 7
    assert res.action.descriptor.n == 3
    with pytest.raises(NotApplicable):
        sylow_reduction(alg, action, 5)


def test_bound_check_examples():
    F2 = make_field(FieldSpec.prime(2))
    one, zero = F2.one(), F2.zero()
    J = [[one, one, zero, zero], [zero, one, zero, zero], [zero, zero, one, one], [zero, zero, zero, one]]
    res = bound_check_pp(J, F2)
    assert res.ok and res.m == 2 and res.bound == 4 and res.attained
    F3 = make_field(FieldSpec.prime(3))
    J3 = [[F3.from_int(int(j in (i, i + 1))) for j in range(3)] for i in range(3)]
    res = bound_check_pp(J3, F3)
    assert res.ok and (res.dim, res.bound) == (3, 3)
    F5 = make_field(FieldSpec.prime(5))
    res = bound_check_pp(identity(F5, 5), F5)
    assert res.ok and (res.k, res.dim, res.bound) == (0, 5, 5)
    with pytest.raises(OrderMismatch):
        bound_check_pp([[F5.from_int(2)]], F5)


def _random_order_pk(p, k, rng):
    top = p ** k
    sizes = [rng.randint(p ** (k - 1) + 1, top)]
    sizes += [rng.randint(1, top) for _ in range(rng.randint(0, 2))]
    return sizes


@pytest.mark.parametrize("case", range(100))
def test_jordan_bound_random(case):
    rng = random.Random(case)
    p = [2, 3, 5][case % 3]
    k = 1 + (case // 3) % 2
    F = make_field(FieldSpec.prime(p))
    sizes = _random_order_pk(p, k, rng)
    M = jordan_transform(F, sizes, rng)
    res = bound_check_pp(M, F)
    assert res.k == k and res.m == len(sizes) == fixed_dim_mod_p(M, p)
    assert res.ok and res.dim <= res.m * p ** k


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)])
def test_jordan_bound_attained_by_full_blocks(p, k):
    F = make_field(FieldSpec.prime(p))
    M = jordan_transform(F, [p ** k, p ** k], random.Random(p * k))
    res = bound_check_pp(M, F)
    assert res.attained and res.dim == 2 * p ** k


def test_extend_scalars_preserves_invariants():
    alg, action = heisenberg_rational()
    ext, ext_action = extend_scalars(alg, 3, action)
    assert ext.dim == 3 and ext.field.spec == FieldSpec.cyclotomic(3)
    before, after = fixed_profile(alg, action), fixed_profile(ext, ext_action)
    assert (before.m, before.c) == (after.m, after.c) == (1, 1)
    assert decompose(ext, ext_action).dims() == [1, 1, 1]
    ab, _ = extend_scalars(StructAlgebra.abelian(make_field(FieldSpec.rational()), 2), 3)
    assert ab.table == {}
