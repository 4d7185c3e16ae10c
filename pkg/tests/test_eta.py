import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from etastar.errors import ConfigurationError
from etastar.eta import (binom_eta_sum, check_boundary_partition, check_projection_recursion,
                         check_supermodular, check_relative_rank_bound, corollary_bound, eta_star_via_flags,
                         eta_star_via_homology, eta_star_via_order, eta_tuples, flag_profile,
                         is_pi_boundary, is_pi_closed, satisfies_eta, symmetrized_flag_bound,
                         relative_rank_bound_rhs)
from etastar.fixtures import (coordinate_simplex, random_outside_point, three_point_line,
                              three_point_line_bare)
from etastar.homology import order_with_first, relative_ranks
from etastar.projective import Configuration, canonicalize, generate_En, sample_generic_point

from conftest import configurations
from oracles import eta_by_definition

# Frozen after order enumeration, GF(2) homology and the flag formula agreed,
# and (E_1..E_3) after the sympy-based definition oracle agreed too.
CUBE_ETA = {1: 1, 2: 3, 3: 23, 4: 465}


def probability_vectors(rng, T):
    uniform = [Fraction(1, T)] * T
    point_mass = [Fraction(int(i == 0)) for i in range(T)]
    raw = [rng.randint(1, 6) for _ in range(T)]
    skew = [Fraction(x, sum(raw)) for x in raw]
    neg = [Fraction(rng.randint(1, 5)) for _ in range(T)]
    neg[-1] = -sum(neg[:-1]) + 1          # sum is 1, last entry negative
    half = [Fraction(1, 2)] + [Fraction(1, 2 * (T - 1))] * (T - 1) if T > 1 else [Fraction(1)]
    return [uniform, point_mass, skew, neg, half]


def test_E1_single_tuple():
    E = generate_En(1)
    assert satisfies_eta(E, None, (1,))
    assert not satisfies_eta(E, None, (0,))


def test_first_position_excluded():
    E = generate_En(2)
    for W in itertools.permutations(range(4), 2):
        if 0 in W:
            assert not satisfies_eta(E, None, W)


def test_collinear_pair_blocked_by_smaller_point():
    H = three_point_line()
    # points 1 and 2 are on the line through point 0, which comes first
    assert not satisfies_eta(H, None, (1, 2))


def test_wrong_length_rejected():
    with pytest.raises(ConfigurationError):
        satisfies_eta(generate_En(2), None, (1,))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cube_three_methods(n):
    E = generate_En(n)
    assert eta_star_via_order(E) == eta_star_via_homology(E) == eta_star_via_flags(E) == CUBE_ETA[n]


@pytest.mark.slow
def test_cube_three_methods_n4():
    E = generate_En(4)
    assert eta_star_via_order(E) == eta_star_via_homology(E) == CUBE_ETA[4]
    assert eta_star_via_flags(E) == CUBE_ETA[4]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cube_definition_oracle(n):
    E = generate_En(n)
    assert eta_by_definition(E, list(range(len(E)))) == CUBE_ETA[n]


@pytest.mark.parametrize("n", range(1, 5))
def test_independent_points(n):
    assert eta_star_via_order(coordinate_simplex(n)) == 1
    assert eta_star_via_flags(coordinate_simplex(n)) == 1


def test_deficient_span_is_zero():
    assert eta_star_via_order(three_point_line_bare()) == 0
    assert eta_star_via_homology(three_point_line_bare()) == 0
    with pytest.raises(ConfigurationError):
        eta_star_via_flags(three_point_line_bare())


def test_two_points_on_a_line():
    assert eta_star_via_homology(Configuration.from_vectors([(1, 0), (0, 1)])) == 1


def test_flags_E2_special_vectors():
    E = generate_En(2)
    assert eta_star_via_flags(E, [Fraction(1, 4)] * 4) == 3
    assert eta_star_via_flags(E, [1, 0, 0, 0]) == 3
    assert eta_star_via_flags(E, [3, -1, -1, 0]) == 3


def test_flags_reject_bad_vector():
    with pytest.raises(ConfigurationError):
        eta_star_via_flags(generate_En(2), [Fraction(1, 3)] * 4)


def test_flag_profiles():
    E = generate_En(2)
    assert flag_profile(E, (0, 1)).q == (2, 1) and flag_profile(E, (0, 1)).product == 2
    assert flag_profile(E, (2,)).q == (1,)
    assert flag_profile(three_point_line(), (0, 1)).q == (3, 1)


def test_flag_profile_rejects_dependent():
    with pytest.raises(ConfigurationError):
        flag_profile(three_point_line(), (0, 1, 2))


@given(configurations(max_points=8, max_dim=3), st.integers(0, 10**6))
def test_three_way_agreement(H, seed):
    rng = random.Random(seed)
    order = list(range(len(H)))
    rng.shuffle(order)
    a = eta_star_via_order(H, order)
    assert a == eta_star_via_homology(H)
    for p in probability_vectors(rng, len(H)):
        value = eta_star_via_flags(H, p)
        assert value.denominator == 1 and value == a


@given(configurations(max_points=6, max_dim=2), st.integers(0, 10**6))
def test_order_method_matches_definition_oracle(H, seed):
    order = list(range(len(H)))
    random.Random(seed).shuffle(order)
    assert eta_star_via_order(H, order) == eta_by_definition(H, order)


@given(configurations(max_points=8, max_dim=3), st.integers(0, 10**6))
def test_order_invariance(H, seed):
    rng = random.Random(seed)
    base = eta_star_via_order(H)
    for _ in range(5):
        order = list(range(len(H)))
        rng.shuffle(order)
        assert eta_star_via_order(H, order) == base


@given(configurations(max_points=7, max_dim=3))
def test_tuples_satisfy_condition(H):
    for W in eta_tuples(H):
        assert satisfies_eta(H, None, W)


def test_supermodular_examples():
    E = generate_En(2)
    u = sample_generic_point(E, 1)
    v = sample_generic_point(E.with_points(u), 2)
    assert check_supermodular(E, u, v)
    # u on the line through the first two points
    on_line = canonicalize((2, 2, 0))
    assert check_supermodular(E, on_line, v)


def test_supermodular_preconditions():
    E = generate_En(2)
    with pytest.raises(ConfigurationError):
        check_supermodular(E, E[0], canonicalize((0, 0, 1)))


@given(configurations(max_points=7, max_dim=3), st.integers(0, 10**6))
def test_supermodularity(H, seed):
    rng = random.Random(seed)
    u = random_outside_point(rng, H)
    v = random_outside_point(rng, H, exclude=(u,))
    assert check_supermodular(H, u, v)


def test_recursion_E2_generic():
    E = generate_En(2)
    r = check_projection_recursion(E, sample_generic_point(E, 3))
    assert r and r.lhs == 6 and r.eta_image == 3 and r.collisions == 0


def test_recursion_with_collision():
    E = generate_En(2)
    r = check_projection_recursion(E, canonicalize((0, 1, 0)))
    assert r.collisions > 0 and r


@given(configurations(max_points=8, max_dim=3), st.integers(0, 10**6))
def test_projection_recursion(H, seed):
    assert check_projection_recursion(H, random_outside_point(random.Random(seed), H))


def test_binomial_examples():
    S = coordinate_simplex(2)
    assert binom_eta_sum(S, sample_generic_point(S, 0)) == 3
    E = generate_En(2)
    assert binom_eta_sum(E, sample_generic_point(E, 0)) == 6
    # w equal to a point of H: only subsets avoiding it can reach full rank
    assert binom_eta_sum(E, E[0]) == 3


@given(configurations(max_points=8, max_dim=3), st.integers(0, 10**6))
def test_binomial_upper_bound(H, seed):
    w = random_outside_point(random.Random(seed), H)
    assert eta_star_via_order(H.with_points(w)) <= binom_eta_sum(H, w)


def test_no_boundary_singletons():
    # a single point never meets an earlier point inside its own span
    for H in (generate_En(3), three_point_line()):
        for i in range(len(H)):
            assert not is_pi_boundary(H, None, (i,))
            assert is_pi_closed(H, None, (i,))


def test_pi_closed_collinear():
    H = three_point_line()
    assert not is_pi_closed(H, None, (1, 2))
    assert is_pi_boundary(H, None, (1, 2))


def test_boundary_partition_E3():
    E = generate_En(3)
    assert check_boundary_partition(E, None, 0)


def test_boundary_partition_E2_orders():
    E = generate_En(2)
    rng = random.Random(5)
    for _ in range(10):
        order = list(range(4))
        rng.shuffle(order)
        assert check_boundary_partition(E, order, order[0])


def test_boundary_partition_requires_first_point():
    with pytest.raises(ConfigurationError):
        check_boundary_partition(generate_En(2), None, 2)


@given(configurations(max_points=8, max_dim=3), st.integers(0, 10**6))
def test_boundary_partition(H, seed):
    rng = random.Random(seed)
    w = rng.randrange(len(H))
    order = list(range(len(H)))
    rng.shuffle(order)
    assert check_boundary_partition(H, order_with_first(H, w, order), w)


@given(configurations(max_points=8, max_dim=3), st.integers(0, 10**6))
def test_corollary_bound(H, seed):
    w = random.Random(seed).randrange(len(H))
    c, cnz, d = corollary_bound(H, w)
    assert c <= cnz + d


def test_relative_bound_examples():
    S = coordinate_simplex(2)
    holds, rel, rhs = check_relative_rank_bound(S, 0)
    assert holds and rel == 0
    holds, rel, rhs = check_relative_rank_bound(three_point_line(), 0)
    assert holds and rel <= rhs
    assert check_relative_rank_bound(generate_En(2), 0)[0]
    holds, rel, rhs = check_relative_rank_bound(generate_En(3), 0)
    assert holds and rel == 12


def test_relative_bound_size_cap():
    with pytest.raises(ConfigurationError):
        relative_rank_bound_rhs(generate_En(4), 0)


@given(configurations(max_points=8, max_dim=3), st.integers(0, 10**6))
def test_relative_bound(H, seed):
    assert check_relative_rank_bound(H, random.Random(seed).randrange(len(H)))[0]


def test_symmetrized_flags():
    E = generate_En(2)
    s = symmetrized_flag_bound(E, (0, 1), 2, 0)
    assert s and s.value == 1 == s.bound
    assert symmetrized_flag_bound(E, (3,), 1, 0).value == 1
    t = symmetrized_flag_bound(three_point_line(), (0, 1), 2, 1)
    assert t and t.bound == Fraction(2, 3)
