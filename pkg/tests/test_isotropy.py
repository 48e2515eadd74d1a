import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from c2d4.isotropy import (
    ClosureBoundExceeded, NotATwoGroup, SymplecticSpaceF2, apply, compose, format_vector, identity,
    invariant_lagrangian, inverse, is_invariant_lagrangian, parse_generators, parse_matrix,
    random_two_subgroup, rank_f2, standard_gram, sylow_generators, transvection,
)


def _space(n, gens):
    return SymplecticSpaceF2(n, standard_gram(n), tuple(gens))


def _all_lagrangians(n):
    """Every Lagrangian of the standard F_2^{2n}, as frozensets of vectors."""
    G = _space(n, [])
    out = set()
    for basis in itertools.combinations(range(1, 1 << (2 * n)), n):
        if rank_f2(basis) == n and not any(G.pair(a, b) for a in basis for b in basis):
            W = {0}
            for b in basis:
                W |= {x ^ b for x in W}
            out.add(frozenset(W))
    return out


def _fixed_lagrangians(space):
    return [W for W in _all_lagrangians(space.n) if all(apply(g, v) in W for g in space.generators for v in W)]


def _sp2():
    G = standard_gram(1)
    return [transvection(G, a) for a in (1, 2, 3)]


SP2_TWO_SUBGROUPS = [[]] + [[t] for t in _sp2()]


@pytest.mark.parametrize("gens", SP2_TWO_SUBGROUPS, ids=["trivial", "t1", "t2", "t3"])
def test_sp2_two_subgroups(gens):
    space = _space(1, gens)
    basis = invariant_lagrangian(space)
    assert is_invariant_lagrangian(space, basis)
    assert _fixed_lagrangians(space)


def test_sp2_trivial_group_pick():
    assert invariant_lagrangian(_space(1, [])) == [1]


def test_sp2_transvection_fixes_its_line():
    t = transvection(standard_gram(1), 2)
    assert invariant_lagrangian(_space(1, [t])) == [2]


def test_sp2_full_group_is_not_a_two_group():
    with pytest.raises(NotATwoGroup):
        invariant_lagrangian(_space(1, _sp2()))


def test_sylow_sp4_matches_bruteforce():
    space = _space(2, sylow_generators(2))
    assert space.check_two_group() == 2 ** 4
    fixed = _fixed_lagrangians(space)
    assert len(fixed) == 1
    W = set()
    for x in itertools.product(*[(0, b) for b in invariant_lagrangian(space)]):
        W.add(x[0] ^ x[1])
    assert frozenset(W) == fixed[0]


def test_sylow_orders():
    assert _space(3, sylow_generators(3)).check_two_group() == 2 ** 9


@pytest.mark.parametrize("n", [2, 3])
def test_random_subgroups(n):
    rng = random.Random(20261016 + n)
    for _ in range(50):
        space = random_two_subgroup(n, rng)
        order = space.check_two_group()
        assert order & (order - 1) == 0
        basis = invariant_lagrangian(space, check=False)
        assert is_invariant_lagrangian(space, basis)


@given(st.integers(0, 10**6))
def test_random_sp4_agrees_with_bruteforce(seed):
    space = random_two_subgroup(2, random.Random(seed))
    W = {0}
    for b in invariant_lagrangian(space):
        W |= {x ^ b for x in W}
    assert frozenset(W) in _fixed_lagrangians(space)


@given(st.integers(0, 10**6))
def test_inverse(seed):
    g = random_two_subgroup(3, random.Random(seed)).generators[0]
    assert compose(g, inverse(g)) == identity(6)


def test_closure_bound():
    with pytest.raises(ClosureBoundExceeded):
        _space(3, sylow_generators(3)).group(bound=100)


def test_rejects_non_symplectic():
    with pytest.raises(ValueError):
        _space(1, [(1, 1)])
    with pytest.raises(ValueError):
        SymplecticSpaceF2(1, (1, 2), ())


def test_matrix_io():
    g = parse_matrix("10\n11\n")
    assert apply(g, 0b01) == 0b11
    assert parse_generators("10\n11\n\n11\n01\n") == [g, parse_matrix("11\n01")]
    assert format_vector(0b01, 2) == "10"
    with pytest.raises(ValueError):
        parse_matrix("12\n01")
