import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from etastar.fixtures import random_outside_point
from etastar.errors import BudgetExhausted, ConfigurationError
from etastar.linalg import rank_rational
from etastar.projective import (ChainProjector, Configuration, ProjectivePoint, canonicalize,
                                dump_config, generate_En, genericity_mode, is_generic,
                                parse_config, project_config, projection_chain,
                                sample_generic_point)

from conftest import configurations

nonzero_vectors = st.lists(st.integers(-9, 9), min_size=1, max_size=5).filter(any)


@pytest.mark.parametrize("v, rep", [
    ((2, -4), (1, -2)),
    ((-1, 2), (1, -2)),
    ((Fraction(2, 3), Fraction(4, 3)), (1, 2)),
    ((0, -3, 6), (0, 1, -2)),
])
def test_canonicalize_examples(v, rep):
    assert canonicalize(v).rep == rep


def test_canonicalize_zero_rejected():
    with pytest.raises(ValueError):
        canonicalize((0, 0))


def test_noncanonical_point_rejected():
    with pytest.raises(ValueError):
        ProjectivePoint((-1, 2))


@given(nonzero_vectors, st.integers(-7, 7).filter(bool), st.integers(1, 5))
def test_canonicalize_idempotent_and_scale_invariant(v, num, den):
    p = canonicalize(v)
    assert canonicalize(p.rep) == p
    assert canonicalize([Fraction(num, den) * x for x in v]) == p


def test_configuration_rejects_duplicates():
    with pytest.raises(ConfigurationError):
        Configuration.from_vectors([(1, 2), (2, 4)])


def test_configuration_rejects_wrong_length():
    with pytest.raises(ConfigurationError):
        Configuration(2, (ProjectivePoint((1, 0)),))


def test_E1_points():
    assert generate_En(1).reps == [(1, 1), (1, -1)]


@pytest.mark.parametrize("n", range(1, 7))
def test_En_size_and_rank(n):
    E = generate_En(n)
    assert len(E) == 2**n
    assert rank_rational(E.reps) == n + 1


def test_En_lexicographic_plus_first():
    assert generate_En(2).reps == [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)]


def test_En_limit():
    with pytest.raises(BudgetExhausted):
        generate_En(5, limit=4)


def test_projection_collapses_E1():
    res = project_config(generate_En(1), canonicalize((0, 1)))
    assert len(res.image) == 1
    assert res.preimage_classes == ((0, 1),)
    assert res.min_index == (0,)


def test_projection_rejects_member():
    E = generate_En(2)
    with pytest.raises(ConfigurationError):
        project_config(E, E[0])


@given(configurations(), st.integers(0, 10**6))
def test_projection_partitions_sources(H, seed):
    u = random_outside_point(random.Random(seed), H)
    res = project_config(H, u)
    assert res.image.ambient_dim == H.ambient_dim - 1
    flat = sorted(i for c in res.preimage_classes for i in c)
    assert flat == list(range(len(H)))
    assert list(res.min_index) == sorted(res.min_index)
    # images are orthogonal to u: lifting back through the basis must be orthogonal
    for img in res.image:
        lifted = [sum(c * b[j] for c, b in zip(img.rep, res.basis)) for j in range(len(u.rep))]
        assert sum(x * y for x, y in zip(lifted, u.rep)) == 0


@given(configurations(max_dim=3).filter(lambda H: H.ambient_dim >= 2), st.integers(0, 10**6))
def test_generic_direction_keeps_all_points(H, seed):
    u = sample_generic_point(H, seed)
    assert is_generic(u, H)
    assert len(project_config(H, u).image) == len(H)


def test_generic_sampler_deterministic():
    E = generate_En(3)
    assert sample_generic_point(E, 5) == sample_generic_point(E, 5)


def test_genericity_mode_labels():
    assert genericity_mode(generate_En(3)) == "exhaustive"


def test_chain_identity_first():
    chain = projection_chain(3, seed=1)
    assert chain[0].mode == "identity" and chain[0].k == 4
    assert [p.k for p in chain] == [4, 3, 2]


@pytest.mark.parametrize("n", [2, 3])
def test_chain_preserves_independence(n):
    E = generate_En(n)
    for proj in projection_chain(n, seed=11):
        for S in itertools.combinations(range(len(E)), proj.k):
            if rank_rational([E.reps[i] for i in S]) == proj.k:
                assert rank_rational([proj.coords(E.reps[i]) for i in S]) == proj.k


def test_chain_deterministic_in_seed():
    assert projection_chain(3, 4) == projection_chain(3, 4)


def test_text_format_round_trip():
    text = "# three points\ndim 2\n1 0 0\n\n0 2 0\n# done\n1 1 1\n"
    H = parse_config(text)
    assert H.reps == [(1, 0, 0), (0, 1, 0), (1, 1, 1)]
    assert parse_config(dump_config(H)) == H


@pytest.mark.parametrize("bad", ["1 0\n", "dim 1\n1 0 0\n", "dim 1\n1 x\n", ""])
def test_text_format_errors(bad):
    with pytest.raises(ConfigurationError):
        parse_config(bad)


def test_content_hash_depends_on_order():
    E = generate_En(2)
    assert E.content_hash() == generate_En(2).content_hash()
    assert E.content_hash() != E.reordered([1, 0, 2, 3]).content_hash()
