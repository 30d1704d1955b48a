import warnings

import pytest

from scomposite import (
    EPrimeSpec,
    FormatError,
    GadgetGraph,
    Graph,
    SmallGadgetWarning,
    VertexProvenance,
    build_extended_joint_graph,
    build_joint_graph,
    expected_vertex_count,
    gadget_from_parts,
    hypercube,
    parse_provenance,
    serialize_provenance,
    validate_gadget,
)
from scomposite.gadgets import ANCHOR0, ANCHOR1, WEIGHT1_COORDS, coord_to_index, index_to_coord

# Cross-cube wiring shaped like three clauses sharing one variable everywhere
# (coordinate (001) in all three cubes) and another between cubes 2 and 3.
SHARED_VAR_EDGES = EPrimeSpec(
    (
        ((1, (0, 0, 1)), (2, (0, 0, 1))),
        ((1, (0, 0, 1)), (3, (0, 0, 1))),
        ((2, (0, 0, 1)), (3, (0, 0, 1))),
        ((2, (0, 1, 0)), (3, (0, 1, 0))),
    )
)


def quiet_validate(gadget):
    """validate_gadget minus the small-m warning noise."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SmallGadgetWarning)
        return validate_gadget(gadget)


def test_coordinate_indexing_round_trip():
    for i in range(8):
        assert coord_to_index(index_to_coord(i)) == i
    assert coord_to_index((0, 0, 0)) == 0
    assert coord_to_index((1, 1, 1)) == 7
    assert coord_to_index((0, 0, 1)) == 1
    with pytest.raises(ValueError):
        coord_to_index((0, 2, 0))


def test_eprime_normalization_and_ordering():
    spec = EPrimeSpec((((3, (0, 0, 1)), (1, (0, 1, 0))),))
    assert spec.edges == (((1, (0, 1, 0)), (3, (0, 0, 1))),)
    assert spec.max_cube() == 3
    assert EPrimeSpec().max_cube() == 0


@pytest.mark.parametrize(
    "edges, fragment",
    [
        (((1, (0, 1, 1)), (2, (0, 0, 1))), "weight-one"),
        (((1, (0, 0, 1)), (1, (0, 1, 0))), "stay inside cube"),
        (((0, (0, 0, 1)), (2, (0, 0, 1))), "positive"),
    ],
)
def test_eprime_rejects_bad_edges(edges, fragment):
    with pytest.raises(ValueError, match=fragment):
        EPrimeSpec((edges,))


def test_eprime_rejects_duplicates_and_double_targets():
    e = ((1, (0, 0, 1)), (2, (0, 0, 1)))
    with pytest.raises(ValueError, match="duplicate"):
        EPrimeSpec((e, ((2, (0, 0, 1)), (1, (0, 0, 1)))))
    # same source vertex, two different targets inside cube 2
    with pytest.raises(ValueError, match="two edges into cube 2"):
        EPrimeSpec((e, ((1, (0, 0, 1)), (2, (0, 1, 0)))))


def test_single_cube_joint_graph_is_the_cube():
    with pytest.warns(SmallGadgetWarning):
        gadget = build_joint_graph(1)
        assert validate_gadget(gadget) == []
    assert gadget.graph == hypercube(3)[0]
    assert gadget.m == 1 and gadget.k == 2
    assert set(gadget.edge_roles.values()) == {"cube"}


def test_three_cube_joint_graph_counts():
    gadget = build_joint_graph(3)
    assert gadget.graph.n == 24
    assert gadget.graph.num_edges == 3 * 12 + 3 + 3
    assert validate_gadget(gadget) == []
    assert gadget.anchors(0) == (0, 8, 16)
    assert gadget.anchors(1) == (7, 15, 23)
    assert gadget.joint_vertex_count == 24
    roles = list(gadget.edge_roles.values())
    assert roles.count("E0") == 3 and roles.count("E1") == 3


def test_joint_graph_with_cross_cube_edges():
    gadget = build_joint_graph(3, SHARED_VAR_EDGES)
    assert gadget.graph.num_edges == 42 + 4
    assert validate_gadget(gadget) == []
    # the shared-variable edges pair up (001) across cubes 1,2,3 and (010)
    # across cubes 2,3
    eprime = {e for e, role in gadget.edge_roles.items() if role == "Eprime"}
    b1 = [gadget.cube_vertex(j, (0, 0, 1)) for j in (1, 2, 3)]
    b4 = [gadget.cube_vertex(j, (0, 1, 0)) for j in (2, 3)]
    assert eprime == {
        (b1[0], b1[1]),
        (b1[0], b1[2]),
        (b1[1], b1[2]),
        (b4[0], b4[1]),
    }


def test_joint_graph_rejects_out_of_range_cube():
    with pytest.raises(ValueError, match="m=2"):
        build_joint_graph(2, SHARED_VAR_EDGES)
    with pytest.raises(ValueError, match="at least one"):
        build_joint_graph(0)


def test_vertex_count_formula_over_the_grid():
    for m in range(1, 5):
        base = build_joint_graph(m)
        for k in range(2, 7):
            gadget = build_extended_joint_graph(base, k)
            assert gadget.graph.n == expected_vertex_count(m, k)
            assert quiet_validate(gadget) == []
            assert gadget.m == m and gadget.k == k


def test_extension_for_k2_and_three_cubes_is_identity():
    base = build_joint_graph(3, SHARED_VAR_EDGES)
    assert build_extended_joint_graph(base, 2) is base


def test_extension_sizes_for_three_cubes():
    base = build_joint_graph(3)
    g3 = build_extended_joint_graph(base, 3)
    assert g3.graph.n == 24 + 10 + 2
    assert len(g3.clique_vertices(1)) == 10
    assert g3.w_vertices(0) == (34,) and g3.w_vertices(1) == (35,)
    g4 = build_extended_joint_graph(base, 4)
    assert g4.graph.n == 24 + 2 * 11 + 4
    assert len(g4.clique_vertices(1)) == len(g4.clique_vertices(2)) == 11


def test_small_m_extension_still_adds_companions():
    # k - m + 1 > 0 forces nonempty W parts even at k = 2.
    for m, expected in ((1, 12), (2, 18)):
        gadget = build_extended_joint_graph(build_joint_graph(m), 2)
        assert gadget.graph.n == expected
        assert quiet_validate(gadget) == []
        assert len(gadget.w_vertices(0)) == 2 - m + 1


def test_anchor_attachments_are_distinct_per_clique():
    gadget = build_extended_joint_graph(build_joint_graph(3), 4)
    for i in (1, 2):
        members = set(gadget.clique_vertices(i))
        targets = [
            (v if u_prov.kind == "cube" else u)
            for (u, v), role in gadget.edge_roles.items()
            if role == "Fprime"
            for u_prov in (gadget.provenance[u],)
            if (v in members or u in members)
        ]
        assert len(targets) == 6
        assert len(set(targets)) == 6


def test_extension_rejects_bad_inputs():
    base = build_joint_graph(3)
    with pytest.raises(ValueError, match="at least 2"):
        build_extended_joint_graph(base, 1)
    extended = build_extended_joint_graph(base, 3)
    with pytest.raises(ValueError, match="bare joint graph"):
        build_extended_joint_graph(extended, 4)


def test_validator_flags_missing_anchor_clique_edge():
    gadget = build_joint_graph(3)
    dropped = (0, 8)  # the all-zero corners of cubes 1 and 2
    edges = [e for e in gadget.graph.edges if e != dropped]
    roles = {e: r for e, r in gadget.edge_roles.items() if e != dropped}
    tampered = GadgetGraph(Graph(24, edges), gadget.provenance, 3, 2, roles)
    violations = validate_gadget(tampered)
    assert any("all-zero corners" in v for v in violations)


def test_validator_flags_shared_anchor_target():
    gadget = build_extended_joint_graph(build_joint_graph(3), 3)
    # anchor 7 normally attaches to clique slot 1 (vertex 25); retarget it
    # onto vertex 24, which anchor 0 already uses
    edges = [e for e in gadget.graph.edges if e != (7, 25)] + [(7, 24)]
    roles = {e: r for e, r in gadget.edge_roles.items() if e != (7, 25)}
    roles[(7, 24)] = "Fprime"
    tampered = GadgetGraph(Graph(36, sorted(edges)), gadget.provenance, 3, 3, roles)
    violations = validate_gadget(tampered)
    assert any("attach to the same clique vertex" in v for v in violations)


def test_validator_flags_untagged_and_mistagged_edges():
    gadget = build_joint_graph(3)
    roles = dict(gadget.edge_roles)
    del roles[(0, 1)]
    roles[(0, 2)] = "E1"
    tampered = GadgetGraph(gadget.graph, gadget.provenance, 3, 2, roles)
    violations = validate_gadget(tampered)
    assert any("has no role" in v for v in violations)
    assert any("tagged E1" in v for v in violations)


def test_validator_warns_on_small_gadgets():
    with pytest.warns(SmallGadgetWarning):
        assert validate_gadget(build_joint_graph(2)) == []


def test_gadget_from_parts_recovers_m_and_k():
    for m, k in ((1, 2), (2, 3), (3, 2), (3, 4)):
        built = build_extended_joint_graph(build_joint_graph(m), k)
        rebuilt = gadget_from_parts(built.graph, built.provenance, built.edge_roles)
        assert rebuilt == built
        assert rebuilt.m == m and rebuilt.k == k


def test_gadget_from_parts_rejects_mismatch():
    gadget = build_joint_graph(1)
    with pytest.raises(ValueError, match="provenance covers"):
        gadget_from_parts(Graph(9, []), gadget.provenance, {})
    lone_clique = (VertexProvenance("clique", index=1, slot=0),)
    with pytest.raises(ValueError, match="no cube vertices"):
        gadget_from_parts(Graph(1, []), lone_clique, {})


def test_provenance_round_trip():
    for m, k in ((1, 2), (3, 2), (3, 3), (2, 5)):
        gadget = build_extended_joint_graph(build_joint_graph(m), k)
        prov, roles = parse_provenance(serialize_provenance(gadget))
        assert prov == gadget.provenance
        assert roles == gadget.edge_roles


def test_provenance_round_trip_with_cross_cube_edges():
    gadget = build_joint_graph(3, SHARED_VAR_EDGES)
    prov, roles = parse_provenance(serialize_provenance(gadget))
    assert gadget_from_parts(gadget.graph, prov, roles) == gadget


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty"),
        ("v 0 tube 1 000\n", "unknown vertex kind"),
        ("v 0 cube 1 021\n", "bad cube coordinate"),
        ("v 0 cube 1 000\nv 0 cube 1 001\n", "described twice"),
        ("v 0 cube 1 000\nv 2 cube 1 001\n", "without provenance"),
        ("v 0 cube 1 000\ner 0 1 X0\n", "unknown edge role"),
        ("v 0 cube 1 000\ner 1 1 E0\n", "self-loop"),
        ("v 0 cube 1 000\ner 0 1 E0\ner 1 0 E1\n", "two roles"),
        ("x 0 1\n", "expected 'v' or 'er'"),
    ],
)
def test_parse_provenance_errors(text, fragment):
    with pytest.raises(FormatError) as err:
        parse_provenance(text)
    assert fragment in str(err.value)


def test_cube_vertex_lookup():
    gadget = build_joint_graph(2)
    assert gadget.cube_vertex(1, ANCHOR0) == 0
    assert gadget.cube_vertex(2, ANCHOR1) == 15
    assert gadget.cube_vertex(2, WEIGHT1_COORDS[0]) == 9
    with pytest.raises(ValueError):
        gadget.cube_vertex(3, ANCHOR0)
    with pytest.raises(ValueError):
        gadget.clique_vertices(1)
