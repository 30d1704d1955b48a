"""Joint graphs: disjoint 3-cubes fused by anchor cliques and cross-cube edges.

A joint graph on m cubes connects the all-zero corners of the cubes into a
clique (E0), the all-one corners into a clique (E1), and optionally wires
weight-one coordinate vertices of different cubes together (E'), at most one
such edge from a vertex into each other cube.  The extended variant adds,
for a parameter k, k-2 large cliques tied to every anchor (F'), plus two
anchor companion cliques W0/W1 whose size max(0, k-m+1) restores the anchor
color forcing when m is small.

Vertex layout (dense ids):
  cube j (1-based)    -> (j-1)*8 + coordinate-as-3-bit-int (msb first)
  clique i (1-based)  -> after the cubes, slots 0..2m+k
  W0 then W1          -> after the cliques, slots 0..max(0, k-m+1)-1
"""

import warnings
from dataclasses import dataclass, field
from itertools import combinations

from .errors import FormatError
from .fileio import content_lines, expect_fields, parse_int
from .graphs import Graph

CUBE_SIZE = 8
WEIGHT1_COORDS = ((0, 0, 1), (0, 1, 0), (1, 0, 0))
ANCHOR0 = (0, 0, 0)
ANCHOR1 = (1, 1, 1)

EDGE_ROLES = ("cube", "E0", "E1", "Eprime", "clique", "F0", "F1", "Fprime", "W0", "W1")


def coord_to_index(coord: tuple[int, int, int]) -> int:
    """(b0, b1, b2) -> 4*b0 + 2*b1 + b2; matches the 3-cube vertex ids."""
    b0, b1, b2 = coord
    if any(b not in (0, 1) for b in coord):
        raise ValueError(f"coordinate bits must be 0/1, got {coord}")
    return 4 * b0 + 2 * b1 + b2


def index_to_coord(i: int) -> tuple[int, int, int]:
    return ((i >> 2) & 1, (i >> 1) & 1, i & 1)


@dataclass(frozen=True)
class VertexProvenance:
    """Where a gadget vertex came from.

    kind 'cube':   index = cube number (1-based), coord = cube coordinate
    kind 'clique': index = clique number (1-based), slot = position
    kind 'w0'/'w1': slot = position
    """

    kind: str
    index: int | None = None
    coord: tuple[int, int, int] | None = None
    slot: int | None = None

    def __post_init__(self):
        if self.kind not in ("cube", "clique", "w0", "w1"):
            raise ValueError(f"unknown provenance kind {self.kind!r}")


@dataclass(frozen=True)
class EPrimeSpec:
    """Cross-cube edges between weight-one coordinate vertices.

    Each entry is ((i, coord_i), (j, coord_j)) with i != j and both coords of
    weight one.  A vertex may reach at most one vertex inside each other
    cube.  Entries are normalized so the smaller cube index comes first.
    """

    edges: tuple = ()

    def __post_init__(self):
        norm = []
        seen = set()
        per_target: set[tuple[int, tuple, int]] = set()
        for (i, cu), (j, cv) in self.edges:
            cu, cv = tuple(cu), tuple(cv)
            for cube, coord in ((i, cu), (j, cv)):
                if coord not in WEIGHT1_COORDS:
                    raise ValueError(
                        f"cube {cube} endpoint {coord} is not a weight-one coordinate"
                    )
                if cube < 1:
                    raise ValueError(f"cube index {cube} must be positive")
            if i == j:
                raise ValueError(f"cross-cube edge may not stay inside cube {i}")
            if i > j:
                (i, cu), (j, cv) = (j, cv), (i, cu)
            entry = ((i, cu), (j, cv))
            if entry in seen:
                raise ValueError(f"duplicate cross-cube edge {entry}")
            seen.add(entry)
            for (a, ca), b in (((i, cu), j), ((j, cv), i)):
                key = (a, ca, b)
                if key in per_target:
                    raise ValueError(
                        f"vertex (cube {a}, coordinate {ca}) has two edges into cube {b}"
                    )
                per_target.add(key)
            norm.append(entry)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def max_cube(self) -> int:
        return max((j for (_, _), (j, _) in self.edges), default=0)


@dataclass(frozen=True, eq=False)
class GadgetGraph:
    """A joint graph (extended or bare) with per-vertex and per-edge provenance."""

    graph: Graph
    provenance: tuple[VertexProvenance, ...]
    m: int
    k: int
    edge_roles: dict = field(default_factory=dict)  # (u, v) with u < v -> role

    @property
    def joint_vertex_count(self) -> int:
        return CUBE_SIZE * self.m

    def cube_vertex(self, j: int, coord: tuple[int, int, int]) -> int:
        if not 1 <= j <= self.m:
            raise ValueError(f"cube index {j} outside 1..{self.m}")
        return (j - 1) * CUBE_SIZE + coord_to_index(coord)

    def anchors(self, side: int) -> tuple[int, ...]:
        """All-zero corners for side 0, all-one corners for side 1."""
        coord = ANCHOR0 if side == 0 else ANCHOR1
        return tuple(self.cube_vertex(j, coord) for j in range(1, self.m + 1))

    def clique_vertices(self, i: int) -> tuple[int, ...]:
        ids = [
            v
            for v, p in enumerate(self.provenance)
            if p.kind == "clique" and p.index == i
        ]
        if not ids:
            raise ValueError(f"no clique {i} in this gadget")
        return tuple(ids)

    def w_vertices(self, side: int) -> tuple[int, ...]:
        kind = "w0" if side == 0 else "w1"
        return tuple(v for v, p in enumerate(self.provenance) if p.kind == kind)

    def __eq__(self, other):
        if not isinstance(other, GadgetGraph):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.provenance == other.provenance
            and self.m == other.m
            and self.k == other.k
            and self.edge_roles == other.edge_roles
        )


def expected_vertex_count(m: int, k: int) -> int:
    """8m cube vertices + (k-2) cliques of size 2m+k+1 + two W parts."""
    return CUBE_SIZE * m + (k - 2) * (2 * m + k + 1) + 2 * max(0, k - m + 1)


def build_joint_graph(m: int, eprime: EPrimeSpec = EPrimeSpec()) -> GadgetGraph:
    """The bare joint graph on m cubes with the given cross-cube edges."""
    if m < 1:
        raise ValueError("need at least one cube")
    if eprime.max_cube() > m:
        raise ValueError(
            f"cross-cube edge references cube {eprime.max_cube()}, but m={m}"
        )
    edges = []
    roles: dict[tuple[int, int], str] = {}

    def add(u: int, v: int, role: str) -> None:
        e = (u, v) if u < v else (v, u)
        edges.append(e)
        roles[e] = role

    provenance = []
    for j in range(1, m + 1):
        base = (j - 1) * CUBE_SIZE
        for i in range(CUBE_SIZE):
            provenance.append(VertexProvenance("cube", index=j, coord=index_to_coord(i)))
        for i in range(CUBE_SIZE):
            for bit in range(3):
                other = i ^ (1 << bit)
                if other > i:
                    add(base + i, base + other, "cube")
    for j1, j2 in combinations(range(1, m + 1), 2):
        add((j1 - 1) * CUBE_SIZE, (j2 - 1) * CUBE_SIZE, "E0")
        add((j1 - 1) * CUBE_SIZE + 7, (j2 - 1) * CUBE_SIZE + 7, "E1")
    for (i, cu), (j, cv) in eprime.edges:
        add(
            (i - 1) * CUBE_SIZE + coord_to_index(cu),
            (j - 1) * CUBE_SIZE + coord_to_index(cv),
            "Eprime",
        )
    graph = Graph(CUBE_SIZE * m, edges)
    return GadgetGraph(graph, tuple(provenance), m, 2, roles)


def build_extended_joint_graph(base: GadgetGraph, k: int) -> GadgetGraph:
    """Extend a bare joint graph by the k-dependent clique apparatus.

    Adds k-2 cliques of size 2m+k+1, each absorbing one edge from every
    anchor (F', pairwise distinct targets), and W0/W1 companions of size
    max(0, k-m+1) joined completely to the all-zero / all-one anchors.
    When nothing needs to be added (k = 2 and m >= 3) the base is returned
    unchanged.
    """
    if k < 2:
        raise ValueError(f"extension parameter must be at least 2, got {k}")
    if base.k != 2 or any(p.kind != "cube" for p in base.provenance):
        raise ValueError("base must be a bare joint graph")
    m = base.m
    clique_size = 2 * m + k + 1
    num_cliques = k - 2
    w_size = max(0, k - m + 1)
    if num_cliques == 0 and w_size == 0:
        return base

    edges = list(base.graph.edges)
    roles = dict(base.edge_roles)
    provenance = list(base.provenance)

    def add(u: int, v: int, role: str) -> None:
        e = (u, v) if u < v else (v, u)
        edges.append(e)
        roles[e] = role

    # anchors interleaved: cube 1 zero-corner, cube 1 one-corner, cube 2 ...
    anchor_order = []
    for j in range(1, m + 1):
        anchor_order.append(base.cube_vertex(j, ANCHOR0))
        anchor_order.append(base.cube_vertex(j, ANCHOR1))

    next_id = base.graph.n
    for i in range(1, num_cliques + 1):
        members = list(range(next_id, next_id + clique_size))
        for slot in range(clique_size):
            provenance.append(VertexProvenance("clique", index=i, slot=slot))
        for a, b in combinations(members, 2):
            add(a, b, "clique")
        for slot, anchor in enumerate(anchor_order):
            add(anchor, members[slot], "Fprime")
        next_id += clique_size

    for side, kind, join_role, inner_role in (
        (0, "w0", "F0", "W0"),
        (1, "w1", "F1", "W1"),
    ):
        members = list(range(next_id, next_id + w_size))
        for slot in range(w_size):
            provenance.append(VertexProvenance(kind, slot=slot))
        for a, b in combinations(members, 2):
            add(a, b, inner_role)
        for anchor in base.anchors(side):
            for w in members:
                add(anchor, w, join_role)
        next_id += w_size

    graph = Graph(next_id, edges)
    return GadgetGraph(graph, tuple(provenance), m, k, roles)


def gadget_from_parts(
    graph: Graph, provenance: tuple[VertexProvenance, ...], edge_roles: dict
) -> GadgetGraph:
    """Reassemble a GadgetGraph from a graph plus parsed provenance.

    m and k are derived: m from the cube indices, k from the clique count or,
    failing that, from the W part size.
    """
    if len(provenance) != graph.n:
        raise ValueError(
            f"provenance covers {len(provenance)} vertices, graph has {graph.n}"
        )
    cubes = {p.index for p in provenance if p.kind == "cube"}
    if not cubes:
        raise ValueError("gadget has no cube vertices")
    m = max(cubes)
    cliques = {p.index for p in provenance if p.kind == "clique"}
    w0 = sum(1 for p in provenance if p.kind == "w0")
    if cliques:
        k = max(cliques) + 2
    elif w0:
        k = m - 1 + w0
    else:
        k = 2
    return GadgetGraph(graph, tuple(provenance), m, k, dict(edge_roles))


class SmallGadgetWarning(UserWarning):
    """Fewer than three cubes: the cross-cube color forcing needs company."""


def validate_gadget(gadget: GadgetGraph) -> list[str]:
    """Re-derive every structural requirement from the raw graph + provenance.

    Returns a list of violation messages; an empty list means the gadget is
    structurally sound.  A gadget whose provenance contains no clique or W
    vertices is checked as a bare joint graph.  m <= 2 only triggers a
    warning, since the small cases are legal inputs.
    """
    g = gadget.graph
    prov = gadget.provenance
    roles = gadget.edge_roles
    bad: list[str] = []

    if len(prov) != g.n:
        return [f"provenance covers {len(prov)} vertices, graph has {g.n}"]

    by_kind: dict[str, list[int]] = {"cube": [], "clique": [], "w0": [], "w1": []}
    for v, p in enumerate(prov):
        by_kind[p.kind].append(v)

    cubes: dict[int, dict[tuple, int]] = {}
    for v in by_kind["cube"]:
        p = prov[v]
        if p.index is None or p.coord is None:
            bad.append(f"cube vertex {v} lacks an index or coordinate")
            continue
        cubes.setdefault(p.index, {})[p.coord] = v
    m = gadget.m
    if sorted(cubes) != list(range(1, m + 1)):
        bad.append(f"cube indices {sorted(cubes)} are not 1..{m}")
    for j, verts in cubes.items():
        if len(verts) != CUBE_SIZE or set(verts) != {index_to_coord(i) for i in range(8)}:
            bad.append(f"cube {j} does not carry all eight coordinates exactly once")

    cliques: dict[int, dict[int, int]] = {}
    for v in by_kind["clique"]:
        p = prov[v]
        cliques.setdefault(p.index, {})[p.slot] = v
    w_parts = {0: {}, 1: {}}
    for side, kind in ((0, "w0"), (1, "w1")):
        for v in by_kind[kind]:
            w_parts[side][prov[v].slot] = v

    extended = bool(cliques) or bool(w_parts[0]) or bool(w_parts[1])
    k = gadget.k
    if extended:
        expected_cliques = k - 2
        if sorted(cliques) != list(range(1, expected_cliques + 1)):
            bad.append(
                f"clique indices {sorted(cliques)} are not 1..{expected_cliques}"
            )
        clique_size = 2 * m + k + 1
        for i, slots in cliques.items():
            if sorted(slots) != list(range(clique_size)):
                bad.append(f"clique {i} does not have slots 0..{clique_size - 1}")
        w_size = max(0, k - m + 1)
        for side in (0, 1):
            if sorted(w_parts[side]) != list(range(w_size)):
                bad.append(
                    f"W{side} has slots {sorted(w_parts[side])}, expected 0..{w_size - 1}"
                )
    elif k != 2:
        bad.append(f"k={k} but no extension vertices are present")

    # Every edge must carry exactly one legal role consistent with its endpoints.
    edge_set = set(g.edges)
    for e in roles:
        if e not in edge_set:
            bad.append(f"role recorded for nonexistent edge {e}")
    anchors0 = {verts.get(ANCHOR0) for verts in cubes.values()} - {None}
    anchors1 = {verts.get(ANCHOR1) for verts in cubes.values()} - {None}
    eprime_targets: set[tuple[int, int]] = set()
    fprime: dict[int, list[tuple[int, int]]] = {i: [] for i in cliques}
    for u, v in g.edges:
        role = roles.get((u, v))
        if role is None:
            bad.append(f"edge ({u}, {v}) has no role")
            continue
        pu, pv = prov[u], prov[v]
        if role == "cube":
            if not (
                pu.kind == pv.kind == "cube"
                and pu.index == pv.index
                and sum(a != b for a, b in zip(pu.coord, pv.coord)) == 1
            ):
                bad.append(f"edge ({u}, {v}) tagged cube is not a cube edge")
        elif role in ("E0", "E1"):
            want = ANCHOR0 if role == "E0" else ANCHOR1
            if not (
                pu.kind == pv.kind == "cube"
                and pu.index != pv.index
                and pu.coord == pv.coord == want
            ):
                bad.append(f"edge ({u}, {v}) tagged {role} does not join two {want} corners")
        elif role == "Eprime":
            if not (
                pu.kind == pv.kind == "cube"
                and pu.index != pv.index
                and pu.coord in WEIGHT1_COORDS
                and pv.coord in WEIGHT1_COORDS
            ):
                bad.append(
                    f"edge ({u}, {v}) tagged Eprime does not join weight-one "
                    "vertices of two cubes"
                )
            else:
                for a, pa, b, pb in ((u, pu, v, pv), (v, pv, u, pu)):
                    key = (a, pb.index)
                    if key in eprime_targets:
                        bad.append(
                            f"vertex {a} (cube {pa.index}, coordinate {pa.coord}) "
                            f"has two cross-cube edges into cube {pb.index}"
                        )
                    eprime_targets.add(key)
        elif role == "clique":
            if not (pu.kind == pv.kind == "clique" and pu.index == pv.index):
                bad.append(f"edge ({u}, {v}) tagged clique does not stay inside one clique")
        elif role in ("F0", "F1"):
            side = 0 if role == "F0" else 1
            anchor_pool = anchors0 if side == 0 else anchors1
            wk = f"w{side}"
            pair = {pu.kind, pv.kind}
            if pair != {"cube", wk} or (u if pu.kind == "cube" else v) not in anchor_pool:
                bad.append(f"edge ({u}, {v}) tagged {role} does not join an anchor to W{side}")
        elif role in ("W0", "W1"):
            wk = "w0" if role == "W0" else "w1"
            if not (pu.kind == pv.kind == wk):
                bad.append(f"edge ({u}, {v}) tagged {role} does not stay inside {wk}")
        elif role == "Fprime":
            if pu.kind == "clique" and pv.kind == "cube":
                pu, pv = pv, pu
                u, v = v, u
            if not (
                pu.kind == "cube"
                and pv.kind == "clique"
                and pu.coord in (ANCHOR0, ANCHOR1)
            ):
                bad.append(f"edge ({u}, {v}) tagged Fprime does not join an anchor to a clique")
            else:
                fprime.setdefault(pv.index, []).append((u, v))
        else:
            bad.append(f"edge ({u}, {v}) has unknown role {role!r}")

    # Completeness of the pieces the roles promise.
    def expect_edge(u: int, v: int, role: str, what: str) -> None:
        e = (u, v) if u < v else (v, u)
        if roles.get(e) != role:
            bad.append(f"{what}: edge {e} missing or mistagged")

    for j, verts in cubes.items():
        if len(verts) != CUBE_SIZE:
            continue
        for i in range(CUBE_SIZE):
            for bit in range(3):
                o = i ^ (1 << bit)
                if o > i:
                    expect_edge(
                        verts[index_to_coord(i)],
                        verts[index_to_coord(o)],
                        "cube",
                        f"cube {j}",
                    )
    for pool, role, name in ((anchors0, "E0", "all-zero"), (anchors1, "E1", "all-one")):
        for a, b in combinations(sorted(pool), 2):
            expect_edge(a, b, role, f"{name} corners do not form a clique")
    for i, slots in cliques.items():
        members = sorted(slots.values())
        for a, b in combinations(members, 2):
            expect_edge(a, b, "clique", f"clique {i} is not complete")
    for side in (0, 1):
        members = sorted(w_parts[side].values())
        pool = sorted(anchors0 if side == 0 else anchors1)
        for a, b in combinations(members, 2):
            expect_edge(a, b, f"W{side}", f"W{side} is not complete")
        for a in pool:
            for w in members:
                expect_edge(a, w, f"F{side}", f"anchor-W{side} join is not complete")

    # F': into each clique, one edge per anchor, pairwise distinct targets.
    all_anchors = sorted(anchors0 | anchors1)
    for i in sorted(cliques):
        pairs = fprime.get(i, [])
        sources = [a for a, _ in pairs]
        targets = [w for _, w in pairs]
        if sorted(sources) != all_anchors:
            bad.append(
                f"clique {i}: anchor attachments {sorted(sources)} do not cover "
                f"every anchor exactly once"
            )
        if len(set(targets)) != len(targets):
            bad.append(f"clique {i}: two anchors attach to the same clique vertex")

    if not g.is_connected():
        bad.append("gadget graph is not connected")

    if m <= 2:
        warnings.warn(
            f"joint graph on m={m} cubes: anchor color forcing needs m >= 3",
            SmallGadgetWarning,
            stacklevel=2,
        )
    return bad


def serialize_provenance(gadget: GadgetGraph) -> str:
    """Provenance file: `v` lines in vertex order, then sorted `er` lines."""
    out = []
    for v, p in enumerate(gadget.provenance):
        if p.kind == "cube":
            bits = "".join(str(b) for b in p.coord)
            out.append(f"v {v} cube {p.index} {bits}")
        elif p.kind == "clique":
            out.append(f"v {v} clique {p.index} {p.slot}")
        else:
            out.append(f"v {v} {p.kind} {p.slot}")
    for (u, v), role in sorted(gadget.edge_roles.items()):
        out.append(f"er {u} {v} {role}")
    return "\n".join(out) + "\n"


def parse_provenance(
    text: str,
) -> tuple[tuple[VertexProvenance, ...], dict[tuple[int, int], str]]:
    """Parse the provenance file format; inverse of serialize_provenance."""
    entries: dict[int, VertexProvenance] = {}
    roles: dict[tuple[int, int], str] = {}
    for line_no, fields in content_lines(text):
        if fields[0] == "v":
            if len(fields) != 5 and not (len(fields) == 4 and fields[2] in ("w0", "w1")):
                raise FormatError(
                    "expected `v <id> cube <j> <xyz>`, `v <id> clique <i> <slot>`, "
                    "or `v <id> w0|w1 <slot>`",
                    line_no,
                )
            vid = parse_int(fields[1], "vertex id", line_no)
            if vid in entries:
                raise FormatError(f"vertex {vid} described twice", line_no)
            kind = fields[2]
            if kind == "cube":
                j = parse_int(fields[3], "cube index", line_no)
                bits = fields[4]
                if len(bits) != 3 or any(b not in "01" for b in bits):
                    raise FormatError(f"bad cube coordinate {bits!r}", line_no)
                entries[vid] = VertexProvenance(
                    "cube", index=j, coord=tuple(int(b) for b in bits)
                )
            elif kind == "clique":
                i = parse_int(fields[3], "clique index", line_no)
                slot = parse_int(fields[4], "slot", line_no)
                entries[vid] = VertexProvenance("clique", index=i, slot=slot)
            elif kind in ("w0", "w1"):
                slot = parse_int(fields[3], "slot", line_no)
                entries[vid] = VertexProvenance(kind, slot=slot)
            else:
                raise FormatError(f"unknown vertex kind {kind!r}", line_no)
        elif fields[0] == "er":
            expect_fields(fields, 4, line_no, "er <u> <v> <role>")
            u = parse_int(fields[1], "endpoint", line_no)
            v = parse_int(fields[2], "endpoint", line_no)
            role = fields[3]
            if role not in EDGE_ROLES:
                raise FormatError(f"unknown edge role {role!r}", line_no)
            if u == v:
                raise FormatError("edge role on a self-loop", line_no)
            e = (u, v) if u < v else (v, u)
            if e in roles:
                raise FormatError(f"edge ({u}, {v}) given two roles", line_no)
            roles[e] = role
        else:
            raise FormatError(f"expected 'v' or 'er' line, got {fields[0]!r}", line_no)
    if not entries:
        raise FormatError("empty provenance file")
    n = max(entries) + 1
    missing = [v for v in range(n) if v not in entries]
    if missing:
        raise FormatError(f"vertices without provenance: {missing}")
    return tuple(entries[v] for v in range(n)), roles
