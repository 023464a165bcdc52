import json
import os
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asymih import constructions as K
from asymih.linalg import apply_columns, kernel, rank, rref
from asymih.models import read_model_doc
from asymih.topology import (ComplexError, SimplicialComplex, barycentric_subdivision, betti,
                             boundary_matrix, euler_characteristic, load_complex, orientation,
                             validate_pseudomanifold)

from oracles import betti_oracle

GOLDEN = json.load(open(os.path.join(os.path.dirname(__file__), "golden", "oracle_ranks.json")))


def test_closure_of_triangle():
    X = load_complex({"top_simplices": [[0, 1, 2]]})
    assert X.f_vector() == [3, 3, 1]


def test_hollow_tetrahedron():
    X = load_complex({"top_simplices": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]})
    assert X.f_vector() == [4, 6, 4]
    assert betti(X) == [1, 0, 1]


@pytest.mark.parametrize("bad", [[[0, 0, 1]], [[1, 0, 2]]])
def test_malformed_simplices(bad):
    with pytest.raises(ComplexError):
        load_complex({"top_simplices": bad})


def test_dangling_references():
    with pytest.raises(ComplexError):
        load_complex({"top_simplices": [[0, 1]], "subcomplexes": {"a": [[0, 2]]}})
    with pytest.raises(ComplexError):
        load_complex({"top_simplices": [[0, 1]], "boundary": "nope"})


def test_boundary_column_of_triangle():
    X = load_complex({"top_simplices": [[0, 1, 2]]})
    col = boundary_matrix(X, 2).columns[0]
    idx = X.index[1]
    assert col == {idx[(1, 2)]: 1, idx[(0, 2)]: -1, idx[(0, 1)]: 1}
    with pytest.raises(ComplexError):
        boundary_matrix(X, 3)


def test_circle_rank():
    X = K.sphere(1)
    assert boundary_matrix(X, 1).rank() == 2


def test_point():
    assert betti(SimplicialComplex([[0]])) == [1]


def random_complex(rng, n=7, k=9, dim=3):
    tops = set()
    for _ in range(k):
        d = rng.randint(1, dim)
        tops.add(tuple(sorted(rng.sample(range(n), d + 1))))
    return SimplicialComplex(sorted(tops), n)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_boundary_squared_zero_and_euler(seed):
    X = random_complex(random.Random(seed))
    for i in range(2, X.dim + 1):
        assert boundary_matrix(X, i - 1).compose(boundary_matrix(X, i)).is_zero()
    b = betti(X)
    assert euler_characteristic(X) == sum((-1) ** i * v for i, v in enumerate(b))
    assert b == betti_oracle(X.maximal_simplices())


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_betti_matches_frozen_oracle(name):
    X = load_complex(read_model_doc(name))
    assert betti(X) == GOLDEN[name]["betti"]


@pytest.mark.parametrize("name", ["sphere2", "torus", "projective_plane", "pinched_torus", "sphere3", "s1xs2"])
def test_betti_invariant_under_subdivision(name):
    X = load_complex(read_model_doc(name))
    Y, labels = barycentric_subdivision(X)
    assert len(labels) == len(X)
    assert betti(Y) == betti(X)


@pytest.mark.parametrize("name", ["sphere2", "torus", "projective_plane", "sphere3", "s1xs2", "s2xs2", "ball4"])
def test_manifolds_pass_validation(name):
    r = validate_pseudomanifold(load_complex(read_model_doc(name)))
    assert r.is_pure and r.sing_codim_ok and r.detected_singular_simplices == []


def test_pinched_torus_singular_vertex():
    X = K.pinched_torus()
    r = validate_pseudomanifold(X)
    assert r.is_pure and r.sing_codim_ok
    assert r.detected_singular_simplices == [(0,)]
    link, _ = X.link((0,))
    assert betti(link)[0] == 2                 # two circles


def test_branching_edge_is_not_a_pseudomanifold():
    X = SimplicialComplex([[0, 1, 2], [0, 1, 3], [0, 1, 4]])
    r = validate_pseudomanifold(X)
    assert (0, 1) in r.detected_singular_simplices
    assert not r.sing_codim_ok


def test_impure_complex():
    r = validate_pseudomanifold(SimplicialComplex([[0, 1, 2], [2, 3]]))
    assert not r.is_pure


def test_suspension_cone_points_and_gluing_locus():
    ST = K.suspension(K.torus())
    assert validate_pseudomanifold(ST).detected_singular_simplices == [(7,), (8,)]
    X = load_complex(read_model_doc("disk_gluing"))
    r = validate_pseudomanifold(X)
    assert r.sing_codim_ok
    assert set(r.detected_singular_simplices) <= X.subcomplexes["singular_locus"]


def test_orientation():
    assert orientation(K.torus()) is not None
    assert orientation(K.sphere(3)) is not None
    assert orientation(K.projective_plane()) is None


def test_canonical_dump_round_trip():
    X = load_complex(read_model_doc("disk_gluing"))
    Y = load_complex(X.to_doc())
    assert Y == X and Y.dump() == X.dump()
    assert Y.boundary == "boundary"


def test_product_and_cone_homology():
    assert betti(K.product(K.sphere(1), K.sphere(1))) == [1, 2, 1]
    assert betti(K.cone(K.torus())) == [1, 0, 0, 0]
    assert betti(K.simplex(3)) == [1, 0, 0, 0]


# -- sparse linear algebra against the definition ------------------------------------

@settings(max_examples=50, deadline=None)
@given(st.lists(st.dictionaries(st.integers(0, 6), st.integers(-3, 3), max_size=4), max_size=7))
def test_kernel_vectors_are_annihilated(cols):
    ker = kernel(cols)
    for t in ker:
        assert not apply_columns(cols, t)
    assert len(ker) == len(cols) - rank(cols)


def test_rref_normal_form():
    basis = rref([{0: 2, 1: 4}, {1: 1, 2: 1}, {0: 1, 1: 3, 2: 1}])
    assert basis == [{0: 1, 2: -2}, {1: 1, 2: 1}]
