from fractions import Fraction

import pytest

from floergen.errors import NotMonotoneError, UsageError, ValidationError
from floergen.scalar import QQ, PrimeField
from floergen.toric import (
    DelzantPolytope,
    classical_cohomology,
    corpus,
    h2_lattice,
    minimal_chern,
    monotone_normalize,
    polytope_product,
    primitive_collections,
    projective_space,
    real_cohomology_dims,
    superpotential,
    validate,
)


def cp2():
    return projective_space(2)


def spec_cp1xcp1():
    # normal ordering e1, e2, -e1, -e2 as in the worked examples
    return DelzantPolytope(
        n=2,
        normals=[[1, 0], [0, 1], [-1, 0], [0, -1]],
        lambdas=[Fraction(1)] * 4,
        name="CP1xCP1",
    )


def test_validate_cp2():
    V = validate(cp2())
    assert len(V.vertices) == 3
    assert all(len(on) == 2 for on in V.incidence)
    assert sorted(map(tuple, V.vertices)) == [(-1, -1), (-1, 2), (2, -1)]


def test_validate_unimodularity_failure():
    P = DelzantPolytope(n=2, normals=[[1, 0], [0, 1], [-1, -2]],
                        lambdas=[Fraction(1)] * 3)
    with pytest.raises(ValidationError) as info:
        validate(P)
    assert info.value.check == "unimodularity"
    assert info.value.facets == [1, 3]


def test_validate_simplicity_failure():
    P = DelzantPolytope(n=2, normals=[[1, 0], [0, 1], [-1, 2], [0, -1]],
                        lambdas=[Fraction(1)] * 4)
    with pytest.raises(ValidationError) as info:
        validate(P)
    assert info.value.check == "simplicity"
    assert info.value.facets == [1, 2, 3]
    assert info.value.vertex == ["-1", "-1"]


def test_validate_compactness_failure():
    P = DelzantPolytope(n=2, normals=[[1, 0], [0, 1], [1, 1]],
                        lambdas=[Fraction(1)] * 3)
    with pytest.raises(ValidationError) as info:
        validate(P)
    assert info.value.check == "compactness"


def test_validate_redundant_facet():
    P = DelzantPolytope(
        n=1, normals=[[1], [-1], [1]],
        lambdas=[Fraction(1), Fraction(1), Fraction(5)],
    )
    with pytest.raises(ValidationError) as info:
        validate(P)
    assert info.value.check == "irredundancy"
    assert info.value.facets == [3]


def test_monotone_normalize_translation():
    P = DelzantPolytope(n=2, normals=[[1, 0], [0, 1], [-1, -1]],
                        lambdas=[Fraction(1), Fraction(1), Fraction(2)])
    Q = monotone_normalize(P)
    assert Q.lambdas == [Fraction(1)] * 3
    assert Q.normalization["translation"] == ["1/3", "1/3"]
    assert Q.normalization["scale"] == "4/3"
    validate(Q)


def test_monotone_normalize_idempotent():
    Q = monotone_normalize(cp2())
    assert Q.lambdas == [Fraction(1)] * 3
    assert Q.normalization["translation"] == ["0", "0"]
    assert Q.normalization["scale"] == "1"


def test_monotone_normalize_failure():
    P = DelzantPolytope(n=2, normals=[[1, 0], [0, 1], [-1, 0], [0, -1]],
                        lambdas=[Fraction(1), Fraction(1), Fraction(1), Fraction(2)])
    with pytest.raises(NotMonotoneError):
        monotone_normalize(P)


def test_h2_lattice_examples():
    assert h2_lattice(cp2()).basis == [[1, 1, 1]]
    assert h2_lattice(spec_cp1xcp1()).basis == [[1, 0, 1, 0], [0, 1, 0, 1]]
    assert h2_lattice(projective_space(3)).basis == [[1, 1, 1, 1]]


def test_h2_lattice_pairs_to_zero_with_normals():
    for P in corpus().values():
        lat = h2_lattice(P)
        assert lat.rank == P.num_facets - P.n
        for p in lat.basis:
            for i in range(P.n):
                assert sum(p[j] * P.normals[j][i] for j in range(P.num_facets)) == 0


def test_minimal_chern():
    assert minimal_chern(cp2()) == 3
    assert minimal_chern(projective_space(3)) == 4
    assert minimal_chern(spec_cp1xcp1()) == 2


def test_primitive_collections():
    V = validate(cp2())
    assert primitive_collections(V, 3) == [[0, 1, 2]]
    V = validate(spec_cp1xcp1())
    assert primitive_collections(V, 4) == [[0, 2], [1, 3]]
    V = validate(projective_space(3))
    assert primitive_collections(V, 4) == [[0, 1, 2, 3]]


def test_classical_cohomology_examples():
    assert classical_cohomology(cp2(), QQ) == [1, 1, 1]
    assert classical_cohomology(spec_cp1xcp1(), PrimeField(2)) == [1, 2, 1]
    assert classical_cohomology(projective_space(3), QQ) == [1, 1, 1, 1]


def test_real_cohomology_examples():
    assert real_cohomology_dims(cp2()) == [1, 1, 1]
    assert real_cohomology_dims(spec_cp1xcp1()) == [1, 2, 1]
    assert real_cohomology_dims(projective_space(3)) == [1, 1, 1, 1]


def test_cohomology_invariants_across_corpus():
    for name, P in corpus().items():
        V = validate(P)
        over_q = classical_cohomology(P, QQ)
        over_f2 = classical_cohomology(P, PrimeField(2))
        real = real_cohomology_dims(P)
        assert over_q == over_f2 == real
        assert sum(over_q) == len(V.vertices)


def test_superpotential_examples():
    W = superpotential(cp2(), QQ)
    assert sorted(W.terms) == [(-1, -1), (0, 1), (1, 0)]
    assert all(c == 1 for c in W.terms.values())

    W1 = superpotential(projective_space(1), QQ)
    assert sorted(W1.terms) == [(-1,), (1,)]

    W11 = superpotential(spec_cp1xcp1(), QQ)
    assert sorted(W11.terms) == [(-1, 0), (0, -1), (0, 1), (1, 0)]


def test_superpotential_requires_normalized():
    P = DelzantPolytope(n=2, normals=[[1, 0], [0, 1], [-1, -1]],
                        lambdas=[Fraction(1), Fraction(1), Fraction(2)])
    with pytest.raises(UsageError):
        superpotential(P, QQ)


def test_polytope_json_roundtrip():
    P = cp2()
    Q = DelzantPolytope.from_json(P.to_json())
    assert Q.normals == P.normals and Q.lambdas == P.lambdas and Q.name == P.name
    with pytest.raises(UsageError):
        DelzantPolytope.from_json({"dim": 2, "normals": [[1]], "lambda": ["1"]})


def test_product_polytope_validates():
    P = polytope_product(projective_space(1), projective_space(2))
    V = validate(P)
    assert len(V.vertices) == 6  # 2 * 3
