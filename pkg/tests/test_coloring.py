from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from scomposite import (
    BudgetExhaustedError,
    Budget,
    CapacityError,
    Coloring,
    FormatError,
    Graph,
    bichromatic_components,
    complete_graph,
    enumerate_path_colorings,
    find_any_nontrivial_path_coloring,
    find_path_coloring,
    hypercube,
    induced_subgraph,
    is_nontrivial,
    nontrivial_k_range,
    num_colors,
    oracle_verify_path_coloring,
    parse_coloring,
    restrict_coloring,
    serialize_coloring,
    verify_path_coloring,
)
from atlas import (
    SURJECTIVE_COUNTS,
    connected_graphs,
    surjective_colorings,
)

Q2 = hypercube(2)[0]
Q3 = hypercube(3)[0]
P3 = Graph(3, [(0, 1), (1, 2)])


def colors_strategy(max_n: int = 7):
    return st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=max_n)


# ---------------------------------------------------------------- Coloring


def test_coloring_requires_surjectivity():
    with pytest.raises(ValueError, match="surjective"):
        Coloring((1, 3))
    with pytest.raises(ValueError, match="surjective"):
        Coloring((2, 2))
    with pytest.raises(ValueError, match="surjective"):
        Coloring((0, 1))
    with pytest.raises(ValueError):
        Coloring(())


def test_from_labels_renumbers_by_first_appearance():
    assert Coloring.from_labels("abca").colors == (1, 2, 3, 1)
    assert Coloring.from_labels((7, 7, 7)).colors == (1, 1, 1)
    assert Coloring((2, 1, 2)).canonical().colors == (1, 2, 1)


@given(colors_strategy())
def test_canonical_is_idempotent(labels):
    c = Coloring.from_labels(labels)
    assert c.canonical() == c


def test_color_counts():
    assert num_colors(Coloring((1, 1, 1))) == 1
    assert num_colors(Coloring((1, 2, 3, 4))) == 4
    assert num_colors(Coloring((1, 1, 2, 2))) == 2


def test_nontriviality_window():
    assert not is_nontrivial(Coloring((1, 1, 1, 1)), Q2)
    assert not is_nontrivial(Coloring((1, 2, 3, 4)), Q2)
    assert is_nontrivial(Coloring((1, 1, 2, 2)), Q2)
    with pytest.raises(ValueError):
        is_nontrivial(Coloring((1, 2)), Q2)
    assert list(nontrivial_k_range(Q2)) == [2, 3]
    assert list(nontrivial_k_range(complete_graph(2))) == []


# ---------------------------------------------------------------- verifier


def test_square_colorings():
    assert verify_path_coloring(Q2, Coloring((1, 1, 2, 2))).valid
    # The 4-cycle of the square runs 0-1-3-2, so this alternates along it.
    assert verify_path_coloring(Q2, Coloring((1, 2, 2, 1))).valid is False
    assert verify_path_coloring(Q2, Coloring((1, 2, 1, 2))).valid


def test_invalid_witness_is_a_short_equal_ended_path():
    verdict = verify_path_coloring(Q2, Coloring((1, 2, 2, 1)))
    assert not verdict.valid
    assert verdict.witness == (1, 0, 2)
    assert not bool(verdict)


def test_constant_coloring_is_always_valid():
    for g in (Q2, Q3, complete_graph(5)):
        assert verify_path_coloring(g, Coloring((1,) * g.n)).valid


def test_verifier_requires_matching_connected_input():
    with pytest.raises(ValueError, match="connected"):
        verify_path_coloring(Graph(4, [(0, 1), (2, 3)]), Coloring((1, 1, 2, 2)))
    with pytest.raises(ValueError, match="covers"):
        verify_path_coloring(Q2, Coloring((1, 2)))


def _assert_witness_well_formed(g, c, witness):
    assert len(witness) >= 2
    assert len(set(witness)) == len(witness)
    for a, b in zip(witness, witness[1:]):
        assert g.has_edge(a, b)
        assert c.colors[a] != c.colors[b]
    assert c.colors[witness[0]] == c.colors[witness[-1]]


def test_verifier_agrees_with_oracle_up_to_four_vertices():
    # The five-vertex sweep is the acceptance suite's job; this is the
    # fast everyday version.
    for n in range(1, 5):
        colorings = surjective_colorings(n)
        for g in connected_graphs(n):
            for c in colorings:
                fast = verify_path_coloring(g, c)
                slow = oracle_verify_path_coloring(g, c)
                assert fast.valid == slow.valid
                if not fast.valid:
                    _assert_witness_well_formed(g, c, fast.witness)
                    _assert_witness_well_formed(g, c, slow.witness)


def test_oracle_agrees_on_all_two_and_three_color_functions_of_the_square():
    for reps in (2, 3):
        for tup in product(range(1, reps + 1), repeat=4):
            c = Coloring.from_labels(tup)
            assert (
                verify_path_coloring(Q2, c).valid
                == oracle_verify_path_coloring(Q2, c).valid
            )


def test_no_three_coloring_of_the_square():
    for tup in product((1, 2, 3), repeat=4):
        if len(set(tup)) != 3:
            continue
        assert not verify_path_coloring(Q2, Coloring(tup)).valid


def test_oracle_guard():
    g = complete_graph(13)
    with pytest.raises(CapacityError):
        oracle_verify_path_coloring(g, Coloring((1,) * 13))
    # raising the guard makes the same call legal
    assert oracle_verify_path_coloring(g, Coloring((1,) * 13), max_vertices=13).valid


# ---------------------------------------------------------------- helpers


def test_restrict_coloring():
    c = Coloring((1, 2, 2, 1, 3))
    assert restrict_coloring(c, [0, 1, 3]) == Coloring((1, 2, 1))
    assert restrict_coloring(c, range(5)) == c
    assert restrict_coloring(c, [4]) == Coloring((1,))
    with pytest.raises(ValueError):
        restrict_coloring(c, [])
    with pytest.raises(ValueError):
        restrict_coloring(c, [9])


def test_restriction_of_valid_coloring_stays_valid():
    # Restricting to an induced subgraph can only remove well-colored paths.
    for c in enumerate_path_colorings(Q3, 2):
        for size in (4, 6):
            for subset in combinations(range(Q3.n), size):
                sub, remap = induced_subgraph(Q3, subset)
                rc = restrict_coloring(c, remap)
                if sub.is_connected():
                    assert verify_path_coloring(sub, rc).valid
                assert rc.k <= c.k


def test_spanning_subgraph_keeps_validity():
    for c in enumerate_path_colorings(Q3, 4):
        for drop in range(Q3.num_edges):
            edges = [e for i, e in enumerate(Q3.edges) if i != drop]
            h = Graph(Q3.n, edges)
            if not h.is_connected():
                continue
            assert verify_path_coloring(h, c).valid


def test_bichromatic_components():
    comps = bichromatic_components(Q2, Coloring((1, 1, 2, 2)))
    assert comps == [[0, 2], [1, 3]]
    comps = bichromatic_components(Q2, Coloring((1, 1, 1, 1)))
    assert comps == [[0], [1], [2], [3]]


# ---------------------------------------------------------------- search


def test_find_path_coloring_on_small_graphs():
    assert find_path_coloring(P3, 2) == Coloring((1, 1, 2))
    assert find_path_coloring(Q2, 2) == Coloring((1, 1, 2, 2))
    assert find_path_coloring(Q2, 3) is None
    assert find_path_coloring(Q3, 2) == Coloring((1, 1, 1, 1, 2, 2, 2, 2))
    assert find_path_coloring(Q3, 3) is None
    assert find_path_coloring(Q3, 4) is not None


def test_complete_graphs_have_no_nontrivial_colorings():
    for n in (3, 4, 5):
        g = complete_graph(n)
        for k in nontrivial_k_range(g):
            assert find_path_coloring(g, k) is None
        assert find_any_nontrivial_path_coloring(g) is None


def test_find_rejects_bad_inputs():
    with pytest.raises(ValueError, match="connected"):
        find_path_coloring(Graph(4, [(0, 1), (2, 3)]), 2)
    with pytest.raises(ValueError, match="k must satisfy"):
        find_path_coloring(Q2, 1)
    with pytest.raises(ValueError, match="k must satisfy"):
        find_path_coloring(Q2, 4)


def test_find_is_deterministic():
    a = find_path_coloring(Q3, 4)
    b = find_path_coloring(Q3, 4)
    assert a == b


def test_find_any_nontrivial():
    assert find_any_nontrivial_path_coloring(Q2) == (2, Coloring((1, 1, 2, 2)))
    assert find_any_nontrivial_path_coloring(complete_graph(5)) is None
    # max_k caps the scan below the first attainable k
    assert find_any_nontrivial_path_coloring(Q3, max_k=3) == (
        2,
        Coloring((1, 1, 1, 1, 2, 2, 2, 2)),
    )
    # two vertices leave no nontrivial range at all
    assert list(nontrivial_k_range(complete_graph(2))) == []
    assert find_any_nontrivial_path_coloring(complete_graph(2)) is None


def test_budget_exhaustion():
    budget = Budget(3)
    budget.spend(3)
    with pytest.raises(BudgetExhaustedError):
        budget.spend()
    with pytest.raises(ValueError):
        Budget(-1)
    with pytest.raises(BudgetExhaustedError):
        find_path_coloring(complete_graph(5), 3, Budget(10))
    # a budget that is never exceeded does not change the result
    assert find_path_coloring(Q2, 2, Budget(10**6)) == find_path_coloring(Q2, 2)


# ------------------------------------------------------------ enumeration


def test_square_enumeration():
    assert [c.colors for c in enumerate_path_colorings(Q2, 2)] == [
        (1, 1, 2, 2),
        (1, 2, 1, 2),
    ]
    assert list(enumerate_path_colorings(Q2, 3)) == []


def test_cube_enumeration_counts():
    counts = {k: len(list(enumerate_path_colorings(Q3, k))) for k in range(2, 8)}
    assert counts == {2: 3, 3: 0, 4: 3, 5: 0, 6: 0, 7: 0}


def test_cube_two_colorings_are_the_three_bipartitions():
    found = [c.colors for c in enumerate_path_colorings(Q3, 2)]
    assert found == [
        (1, 1, 1, 1, 2, 2, 2, 2),
        (1, 1, 2, 2, 1, 1, 2, 2),
        (1, 2, 1, 2, 1, 2, 1, 2),
    ]


def test_enumeration_yields_canonical_verified_colorings():
    for k in (2, 4):
        for c in enumerate_path_colorings(Q3, k):
            assert c == c.canonical()
            assert c.k == k
            assert verify_path_coloring(Q3, c).valid


def test_enumeration_guard():
    with pytest.raises(CapacityError):
        list(enumerate_path_colorings(complete_graph(25), 2))
    # explicit override unlocks larger graphs
    big = Graph(25, [(i, i + 1) for i in range(24)])
    first = next(enumerate_path_colorings(big, 2, max_vertices=25))
    assert verify_path_coloring(big, first).valid


def test_surjective_coloring_atlas_sizes():
    for n, count in SURJECTIVE_COUNTS.items():
        assert len(surjective_colorings(n)) == count


# ---------------------------------------------------------------- format


def test_coloring_round_trip():
    for c in (Coloring((1,)), Coloring((1, 2, 1, 3)), find_path_coloring(Q3, 4)):
        assert parse_coloring(serialize_coloring(c)) == c


def test_serialize_coloring_is_stable():
    assert serialize_coloring(Coloring((1, 2))) == "coloring 2 2\nc 0 1\nc 1 2\n"


@given(colors_strategy())
def test_coloring_round_trip_random(labels):
    c = Coloring.from_labels(labels)
    assert parse_coloring(serialize_coloring(c)) == c


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "empty"),
        ("colouring 2 2\nc 0 1\nc 1 2\n", "header"),
        ("coloring 2 2\nc 0 1\n", "without a color"),
        ("coloring 2 2\nc 0 1\nc 0 2\n", "colored twice"),
        ("coloring 2 2\nc 0 1\nc 5 2\n", "out of range"),
        ("coloring 2 2\nc 0 1\nc 1 3\n", "outside 1..2"),
        ("coloring 2 2\nc 0 1\nc 1 1\n", "not surjective"),
        ("coloring 2 2\nc 0 1\nx 1 2\n", "color line"),
        ("coloring 0 1\n", "positive"),
    ],
)
def test_parse_coloring_errors(text, fragment):
    with pytest.raises(FormatError) as err:
        parse_coloring(text)
    assert fragment in str(err.value)
