import io
import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from etastar.errors import ConfigurationError
from etastar.fixtures import coordinate_simplex, three_point_line
from etastar.homology import (dump_boundary, enumerate_Cpi, enumerate_Dpi, homology_rank,
                              is_simplex, relative_ranks, simplices, t_hat)
from etastar.eta import d_identity_rhs
from etastar.lattice import moebius_top_abs
from etastar.linalg import rank_rational
from etastar.projective import Configuration, generate_En

from conftest import configurations
from oracles import reduced_homology_over_Q

# Frozen after the GF(2) computation agreed with the signed boundary oracle
# over Q (E_1, E_2) and with |mu(top)| from the lattice (all four).
RELATIVE = {1: (0, 1, 1), 2: (0, 3, 3), 3: (12, 35, 23)}


def test_simplex_examples():
    E = generate_En(2)
    assert is_simplex(E, (0,))
    assert all(is_simplex(E, S) for S in itertools.combinations(range(4), 2))
    assert not is_simplex(E, (0, 1, 2))


def test_points_on_projective_line_reduced_h0():
    H = Configuration.from_vectors([(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)])
    assert homology_rank(H, 0) == 4


def test_E2_degree_one():
    assert homology_rank(generate_En(2), 1) == 3


@pytest.mark.parametrize("n", range(1, 5))
def test_simplex_boundary_sphere(n):
    assert homology_rank(coordinate_simplex(n), n - 1) == 1


def test_empty_simplex_in_degree_minus_one():
    assert simplices(generate_En(1), -1) == [()]


def test_deficient_span_is_acyclic():
    H = Configuration.from_vectors([(1, 0, 0), (0, 1, 0)])
    assert homology_rank(H, 1) == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_relative_rank_goldens(n):
    r = relative_ranks(generate_En(n))
    assert (r.rank_rel, r.rank_skel, r.rank_abs) == RELATIVE[n]


def test_independent_points_relative():
    r = relative_ranks(coordinate_simplex(3))
    assert (r.rank_rel, r.rank_skel, r.rank_abs) == (0, 1, 1)


@given(configurations(max_points=6, max_dim=2))
def test_gf2_homology_matches_rational_oracle(H):
    d = H.ambient_dim - 1
    assert homology_rank(H, d) == reduced_homology_over_Q(H, d)


@given(configurations(max_points=9, max_dim=4))
def test_bridge_to_moebius(H):
    assert homology_rank(H, H.ambient_dim - 1) == moebius_top_abs(H)


@given(configurations(max_points=9, max_dim=4))
def test_exact_sequence(H):
    r = relative_ranks(H)
    assert r.rank_skel == r.rank_rel + r.rank_abs


@given(configurations(max_points=8, max_dim=3), st.integers(0, 10**6))
def test_cpi_order_invariant_and_equal_to_relative_rank(H, seed):
    rng = random.Random(seed)
    rel = relative_ranks(H).rank_rel
    for _ in range(5):
        order = list(range(len(H)))
        rng.shuffle(order)
        assert len(enumerate_Cpi(H, order)) == rel


def test_cpi_empty_for_independent_points():
    assert enumerate_Cpi(coordinate_simplex(3)) == []


def test_cpi_E3_count():
    assert len(enumerate_Cpi(generate_En(3))) == 12


def test_cpi_collinear_fixture():
    H = three_point_line()
    cpi = enumerate_Cpi(H)
    assert len(cpi) == relative_ranks(H).rank_rel == 1
    assert all(rank_rational([H.reps[i] for i in d]) < 3 for d in cpi)


@given(configurations(max_points=8, max_dim=3))
def test_t_hat_injective_on_cpi(H):
    cpi = enumerate_Cpi(H)
    assert len({t_hat(d, H) for d in cpi}) == len(cpi)


def test_t_hat_rejects_outsider():
    H = generate_En(2)
    with pytest.raises(ConfigurationError):
        t_hat((0, 1, 2), H)


def test_dpi_examples():
    assert enumerate_Dpi(coordinate_simplex(2), 0) == 0
    # every pair of E_2 together with a third point spans R^3
    assert enumerate_Dpi(generate_En(2), 0) == 0
    assert enumerate_Dpi(three_point_line(), 0) >= 1


@given(configurations(max_points=8, max_dim=3))
def test_d_identity(H):
    for w in range(len(H)):
        assert enumerate_Dpi(H, w) == d_identity_rhs(H, w)


def test_boundary_dump_format():
    buf = io.StringIO()
    dump_boundary(generate_En(2), 1, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "# 4 6"
    assert len(lines) == 1 + 12
    assert all(line.endswith(" 1") for line in lines[1:])
