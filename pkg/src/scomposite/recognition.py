"""Deciding whether a connected graph sits nontrivially inside a product.

A graph is composite here exactly when it has a nontrivial path-k-coloring
for some 2 <= k <= |V|-1; otherwise it is prime.  A nontrivial coloring
yields a concrete certificate: an embedding into a product of two complete
graphs (color coordinate, bichromatic-component coordinate) and an edge
2-labeling in which every induced cycle showing both labels changes labels
at least three times (by parity, at least four).
"""

from dataclasses import dataclass

from .coloring import (
    Budget,
    Coloring,
    bichromatic_components,
    find_path_coloring,
    is_nontrivial,
    nontrivial_k_range,
    verify_path_coloring,
)
from .errors import (
    BudgetExhaustedError,
    CapacityError,
    FormatError,
    InternalConsistencyError,
)
from .fileio import content_lines, expect_fields, parse_int
from .graphs import Graph

INDUCED_CYCLE_MAX_VERTICES = 16

COMPOSITE = "composite"
S_PRIME = "s-prime"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class SCompositeVerdict:
    """Outcome of the recognition scan.

    Composite verdicts carry a verified nontrivial witness coloring;
    prime verdicts carry the exhausted k range as evidence; undecided
    verdicts (budget ran out) list the k values that were finished.
    """

    status: str
    witness_k: int | None = None
    witness: Coloring | None = None
    searched_ks: tuple[int, ...] = ()

    @property
    def composite(self) -> bool:
        return self.status == COMPOSITE


@dataclass(frozen=True)
class HammingEmbedding:
    """vertex -> (color coordinate in 1..k, component coordinate in 1..t)."""

    k: int
    t: int
    coords: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class EmbeddingCheck:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class TwoLabeling:
    """Total edge labeling with labels 1 (same-colored ends) and 2 (mixed)."""

    labels: dict  # (u, v) with u < v -> 1 or 2

    def of(self, u: int, v: int) -> int:
        return self.labels[(u, v) if u < v else (v, u)]


def check_s_composite(g: Graph, budget: Budget | None = None) -> SCompositeVerdict:
    """Scan k = 2 .. |V|-1 for a nontrivial path coloring.

    Prime verdicts are only issued after every k in the range was searched
    exhaustively; running out of budget yields an undecided verdict instead.
    """
    if not g.is_connected():
        raise ValueError("graph must be connected")
    finished: list[int] = []
    for k in nontrivial_k_range(g):
        try:
            c = find_path_coloring(g, k, budget)
        except BudgetExhaustedError:
            return SCompositeVerdict(UNDECIDED, searched_ks=tuple(finished))
        if c is not None:
            return SCompositeVerdict(COMPOSITE, witness_k=k, witness=c,
                                     searched_ks=tuple(finished))
        finished.append(k)
    return SCompositeVerdict(S_PRIME, searched_ks=tuple(finished))


def embed_into_hamming(g: Graph, c: Coloring) -> HammingEmbedding:
    """Embed g into a product of two complete graphs via a nontrivial coloring.

    First coordinate: the canonical color.  Second: the index (1-based,
    ordered by smallest vertex) of the vertex's component after dropping
    monochromatic edges.
    """
    verdict = verify_path_coloring(g, c)
    if not verdict.valid:
        raise ValueError(f"not a path coloring, witness {verdict.witness}")
    if not is_nontrivial(c, g):
        raise ValueError(f"coloring with k={c.k} on {g.n} vertices is trivial")
    canon = c.canonical()
    comps = bichromatic_components(g, c)
    comp_of = {}
    for idx, comp in enumerate(comps, start=1):
        for v in comp:
            comp_of[v] = idx
    emb = HammingEmbedding(
        k=canon.k,
        t=len(comps),
        coords=tuple((canon.colors[v], comp_of[v]) for v in range(g.n)),
    )
    check = verify_product_subgraph_embedding(g, emb)
    if not check.ok:
        raise InternalConsistencyError(f"constructed embedding is invalid: {check.violation}")
    return emb


def verify_product_subgraph_embedding(g: Graph, emb: HammingEmbedding) -> EmbeddingCheck:
    """Independent check that emb realizes g inside K_k x K_t.

    Checks totality bounds, injectivity, the exactly-one-coordinate rule on
    every edge, and that both coordinates take at least two values.
    """
    if len(emb.coords) != g.n:
        raise ValueError(f"embedding covers {len(emb.coords)} vertices, graph has {g.n}")
    if emb.k < 1 or emb.t < 1:
        return EmbeddingCheck(False, f"degenerate target sizes k={emb.k}, t={emb.t}")
    seen: dict[tuple[int, int], int] = {}
    for v, (a, b) in enumerate(emb.coords):
        if not (1 <= a <= emb.k and 1 <= b <= emb.t):
            return EmbeddingCheck(False, f"vertex {v} maps outside the target: {(a, b)}")
        if (a, b) in seen:
            return EmbeddingCheck(
                False, f"vertices {seen[(a, b)]} and {v} collide at {(a, b)}"
            )
        seen[(a, b)] = v
    for u, v in g.edges:
        diff = sum(x != y for x, y in zip(emb.coords[u], emb.coords[v]))
        if diff != 1:
            return EmbeddingCheck(
                False,
                f"edge ({u}, {v}) changes {diff} coordinates, must change exactly one",
            )
    for axis, name in ((0, "color"), (1, "component")):
        if len({pair[axis] for pair in emb.coords}) < 2:
            return EmbeddingCheck(False, f"{name} coordinate is constant; factor is trivial")
    return EmbeddingCheck(True)


def two_labeling_from_coloring(
    g: Graph, c: Coloring, max_vertices: int = INDUCED_CYCLE_MAX_VERTICES
) -> TwoLabeling:
    """Label monochromatic edges 1 and bichromatic edges 2; verified before return."""
    verdict = verify_path_coloring(g, c)
    if not verdict.valid:
        raise ValueError(f"not a path coloring, witness {verdict.witness}")
    if not is_nontrivial(c, g):
        raise ValueError(f"coloring with k={c.k} on {g.n} vertices is trivial")
    labels = {
        (u, v): 1 if c.colors[u] == c.colors[v] else 2 for u, v in g.edges
    }
    labeling = TwoLabeling(labels)
    if g.n > max_vertices:
        raise CapacityError(
            f"labeling checks require the induced cycle scan, which is limited "
            f"to {max_vertices} vertices; got {g.n}"
        )
    bad = _first_bad_cycle(g, labeling)
    if bad is not None:
        raise InternalConsistencyError(
            f"induced cycle {bad} shows both labels with fewer than three changes"
        )
    return labeling


def verify_two_labeling(
    g: Graph, labeling: TwoLabeling, max_vertices: int = INDUCED_CYCLE_MAX_VERTICES
) -> bool:
    """Every induced cycle that shows both labels changes labels >= 3 times.

    Label changes around a cycle come in pairs, so the check is really
    ">= 4"; evenness is asserted on every cycle.  Guarded: refuses graphs
    with more than `max_vertices` vertices.
    """
    if g.n > max_vertices:
        raise CapacityError(
            f"induced cycle scan limited to {max_vertices} vertices, got {g.n}"
        )
    if set(labeling.labels) != set(g.edges):
        raise ValueError("labeling is not total on the edge set")
    for label in labeling.labels.values():
        if label not in (1, 2):
            raise ValueError(f"labels must be 1 or 2, got {label}")
    return _first_bad_cycle(g, labeling) is None


def _first_bad_cycle(g: Graph, labeling: TwoLabeling) -> tuple[int, ...] | None:
    for cycle in induced_cycles(g):
        labels = [
            labeling.of(cycle[i], cycle[(i + 1) % len(cycle)])
            for i in range(len(cycle))
        ]
        if len(set(labels)) < 2:
            continue
        changes = sum(
            labels[i] != labels[(i + 1) % len(labels)] for i in range(len(labels))
        )
        assert changes % 2 == 0, "label changes around a cycle must pair up"
        if changes < 3:
            return cycle
    return None


def induced_cycles(g: Graph):
    """Yield every chordless cycle of length >= 3, each exactly once.

    Cycles start at their smallest vertex; the second vertex is the smaller
    of the two neighbors on the cycle.  A path is extended only through
    vertices larger than the start that see nothing on the path except its
    last vertex (and possibly the start, which closes the cycle).
    """
    adj_sets = g.adj_sets
    for start in range(g.n):
        path = [start]

        def extend():
            last = path[-1]
            for u in g.adj[last]:
                if u <= start or u in path:
                    continue
                if any(u in adj_sets[w] for w in path[1:-1]):
                    continue  # chord to the middle of the path
                if len(path) == 1:
                    # Second vertex: its edge back to the start is the
                    # cycle's own first edge, never a chord.
                    path.append(u)
                    yield from extend()
                    path.pop()
                elif start in adj_sets[u]:
                    if path[1] < u:
                        yield tuple(path + [u])
                else:
                    path.append(u)
                    yield from extend()
                    path.pop()

        yield from extend()


def parse_embedding(text: str) -> HammingEmbedding:
    """Parse the embedding format: `embedding <n> <k> <t>`, then
    `p <vertex> <color-coord> <component-coord>` lines."""
    lines = content_lines(text)
    try:
        line_no, fields = next(lines)
    except StopIteration:
        raise FormatError("empty embedding file") from None
    expect_fields(fields, 4, line_no, "embedding <n> <k> <t>")
    if fields[0] != "embedding":
        raise FormatError(f"expected 'embedding' header, got {fields[0]!r}", line_no)
    header_line = line_no
    n = parse_int(fields[1], "vertex count", line_no)
    k = parse_int(fields[2], "color count", line_no)
    t = parse_int(fields[3], "component count", line_no)
    if n < 1 or k < 1 or t < 1:
        raise FormatError("counts must be positive", line_no)
    coords: list[tuple[int, int] | None] = [None] * n
    for line_no, fields in lines:
        expect_fields(fields, 4, line_no, "p <vertex> <color> <component>")
        if fields[0] != "p":
            raise FormatError(f"expected 'p' line, got {fields[0]!r}", line_no)
        v = parse_int(fields[1], "vertex", line_no)
        a = parse_int(fields[2], "color coordinate", line_no)
        b = parse_int(fields[3], "component coordinate", line_no)
        if not 0 <= v < n:
            raise FormatError(f"vertex {v} out of range", line_no)
        if coords[v] is not None:
            raise FormatError(f"vertex {v} mapped twice", line_no)
        if not (1 <= a <= k and 1 <= b <= t):
            raise FormatError(f"image ({a}, {b}) outside the target", line_no)
        coords[v] = (a, b)
    missing = [v for v, pair in enumerate(coords) if pair is None]
    if missing:
        raise FormatError(f"vertices without an image: {missing}", header_line)
    return HammingEmbedding(k, t, tuple(coords))


def serialize_embedding(emb: HammingEmbedding) -> str:
    out = [f"embedding {len(emb.coords)} {emb.k} {emb.t}"]
    out.extend(f"p {v} {a} {b}" for v, (a, b) in enumerate(emb.coords))
    return "\n".join(out) + "\n"


def parse_labeling(text: str) -> TwoLabeling:
    """Parse the labeling format: `labeling <m>`, then `l <u> <v> <1|2>` lines."""
    lines = content_lines(text)
    try:
        line_no, fields = next(lines)
    except StopIteration:
        raise FormatError("empty labeling file") from None
    expect_fields(fields, 2, line_no, "labeling <m>")
    if fields[0] != "labeling":
        raise FormatError(f"expected 'labeling' header, got {fields[0]!r}", line_no)
    count = parse_int(fields[1], "edge count", line_no)
    if count < 0:
        raise FormatError("edge count must be non-negative", line_no)
    labels: dict[tuple[int, int], int] = {}
    for line_no, fields in lines:
        expect_fields(fields, 4, line_no, "l <u> <v> <1|2>")
        if fields[0] != "l":
            raise FormatError(f"expected 'l' line, got {fields[0]!r}", line_no)
        u = parse_int(fields[1], "endpoint", line_no)
        v = parse_int(fields[2], "endpoint", line_no)
        label = parse_int(fields[3], "label", line_no)
        if u == v:
            raise FormatError("label on a self-loop", line_no)
        if label not in (1, 2):
            raise FormatError(f"label must be 1 or 2, got {label}", line_no)
        e = (u, v) if u < v else (v, u)
        if e in labels:
            raise FormatError(f"edge ({u}, {v}) labeled twice", line_no)
        labels[e] = label
    if len(labels) != count:
        raise FormatError(f"expected {count} label lines, found {len(labels)}")
    return TwoLabeling(labels)


def serialize_labeling(labeling: TwoLabeling) -> str:
    out = [f"labeling {len(labeling.labels)}"]
    out.extend(
        f"l {u} {v} {label}" for (u, v), label in sorted(labeling.labels.items())
    )
    return "\n".join(out) + "\n"
