import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from coha_workbench.lie import (
    CutoffTooSmall, GradedGenerator, GradedLieData, LiePresentation, PresentationError, check_lie_axioms,
    free_lie_dims, preprojective_root_data, presentation_for_quiver, serre_quotient, simple_presentation,
    structure_constants, table_from_rows,
)
from coha_workbench.quiver import jordan, kronecker, linear_quiver, symmetrized_euler

from oracles import free_lie_super_dims_by_span, positive_roots_by_reflection, witt_dimension


def grid(cutoff):
    return [d for d in itertools.product(*[range(c + 1) for c in cutoff]) if any(d)]


def test_free_lie_examples():
    gens = [GradedGenerator("x", (1, 0)), GradedGenerator("y", (0, 1))]
    dims = free_lie_dims(gens, (2, 2))
    assert dims[(1, 1)] == 1
    assert dims[(2, 2)] == 1
    one = free_lie_dims([GradedGenerator("x", (1,))], (4,))
    assert one == {(1,): 1}


@pytest.mark.parametrize("cutoff", [(3, 3), (4, 2), (2, 4)])
def test_free_lie_matches_witt(cutoff):
    gens = [GradedGenerator("x", (1, 0)), GradedGenerator("y", (0, 1))]
    dims = free_lie_dims(gens, cutoff)
    for d in grid(cutoff):
        assert dims.get(d, 0) == witt_dimension(d), d


def test_free_lie_three_generators_matches_witt():
    gens = [GradedGenerator(n, tuple(int(i == k) for i in range(3))) for k, n in enumerate("xyz")]
    dims = free_lie_dims(gens, (2, 2, 1))
    for d in grid((2, 2, 1)):
        assert dims.get(d, 0) == witt_dimension(d), d


@pytest.mark.parametrize("parities,cutoff", [
    ((1,), (4,)),
    ((1, 0), (2, 2)),
    ((1, 1), (2, 2)),
    ((0, 1), (3, 2)),
])
def test_free_lie_superalgebra_matches_span(parities, cutoff):
    n = len(parities)
    gens = [GradedGenerator(f"g{k}", tuple(int(i == k) for i in range(n)), cdeg=p) for k, p in enumerate(parities)]
    dims = free_lie_dims(gens, cutoff)
    oracle = free_lie_super_dims_by_span([(g.degree, g.cdeg % 2) for g in gens], cutoff)
    assert dims == oracle


def test_multiplicity_expands_to_copies():
    g = [GradedGenerator("x", (1,), multiplicity=2)]
    dims = free_lie_dims(g, (3,))
    # free Lie algebra on two generators of degree 1
    assert dims == {(1,): 2, (2,): 1, (3,): 2}


def _root_check(Q, cutoff):
    g = serre_quotient(simple_presentation(Q), cutoff)
    roots = positive_roots_by_reflection(symmetrized_euler(Q).matrix)
    dims = g.dims()
    for d in grid(cutoff):
        assert dims.get(d, 0) == (1 if d in roots else 0), d
    return g


def test_serre_a2():
    g = _root_check(linear_quiver(2), (2, 2))
    dims = g.dims()
    assert [dims.get(d, 0) for d in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]] == [1, 1, 1, 0, 0]


def test_serre_a3():
    g = _root_check(linear_quiver(3), (2, 2, 2))
    assert g.dims()[(1, 1, 1)] == 1


def test_serre_axioms():
    for Q, c in [(linear_quiver(2), (2, 2)), (linear_quiver(3), (2, 2, 2))]:
        assert check_lie_axioms(serre_quotient(simple_presentation(Q), c)).passed


def test_serre_without_relations_is_free():
    gens = [GradedGenerator("x", (1, 0)), GradedGenerator("y", (0, 1))]
    p = LiePresentation(gens, [[2, -1], [-1, 2]], serre_pairs=[])
    g = serre_quotient(p, (3, 3))
    assert g.dims() == free_lie_dims(gens, (3, 3))


def test_cutoff_too_small():
    with pytest.raises(CutoffTooSmall):
        serre_quotient(simple_presentation(kronecker()), (2, 2))
    g = serre_quotient(simple_presentation(kronecker()), (2, 2), strict=False)
    assert check_lie_axioms(g).passed


def test_presentation_errors():
    gens = [GradedGenerator("x", (1, 0)), GradedGenerator("y", (0, 1))]
    with pytest.raises(PresentationError):
        LiePresentation(gens, [[2, -1], [0, 2]])
    with pytest.raises(PresentationError):
        LiePresentation(gens, [[2, 1], [1, 2]]).relator_specs()
    with pytest.raises(PresentationError):
        GradedGenerator("z", (0, 0))
    with pytest.raises(PresentationError):
        LiePresentation.from_dict({"pairing": []})


def test_root_data():
    A2 = linear_quiver(2)
    gens = preprojective_root_data(A2, [(1, 0), (0, 1)], (3, 3))
    assert [g.degree for g in gens] == [(1, 0), (0, 1)]
    J = jordan()
    gens = preprojective_root_data(J, [(1,)], (3,))
    assert [g.degree for g in gens] == [(1,), (2,), (3,)]
    K = kronecker()
    gens = preprojective_root_data(K, [(1, 0), (0, 1), (1, 1)], (3, 3))
    assert [g.degree for g in gens] == [(1, 0), (0, 1), (1, 1), (2, 2), (3, 3)]


def test_structure_constants():
    g = serre_quotient(simple_presentation(linear_quiver(2)), (2, 2))
    res = g.bracket_basis("G1", "G2")
    (lab, c), = res.items()
    assert g.element(lab).degree == (1, 1) and abs(c) == 1
    for e in g.elements:
        if e.parity == 0 and (e.label, e.label) in g.brackets:
            assert not g.bracket_basis(e.label, e.label)
    rows = structure_constants(g)
    again = GradedLieData.from_dict(json.loads(json.dumps(g.to_dict())))
    assert structure_constants(again) == rows
    assert table_from_rows(rows) == g.brackets


def test_presentation_round_trip(tmp_path):
    p = presentation_for_quiver(linear_quiver(3), [GradedGenerator("G1", (1, 0, 0)), GradedGenerator("G2", (0, 1, 0)),
                                                   GradedGenerator("G3", (0, 0, 1))])
    path = tmp_path / "p.json"
    path.write_text(json.dumps(p.to_dict()))
    assert LiePresentation.load(path) == p


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=2))
def test_free_lie_super_property(params):
    """Random parities and small degrees, compared with the spanning oracle."""
    n = len(params)
    gens = [GradedGenerator(f"g{k}", tuple(int(i == k) for i in range(n)), cdeg=p)
            for k, (p, _) in enumerate(params)]
    cutoff = tuple(2 + extra for _, extra in params)
    assert free_lie_dims(gens, cutoff) == free_lie_super_dims_by_span([(g.degree, g.cdeg % 2) for g in gens], cutoff)
