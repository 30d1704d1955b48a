"""Immutable simple graphs on dense vertex ids, plus generators and file format.

Vertices are always 0..n-1.  Edges are stored as (u, v) pairs with u < v,
sorted lexicographically, so equal graphs compare and serialize identically.
"""

from collections import deque
from dataclasses import dataclass

from .errors import CapacityError, FormatError
from .fileio import content_lines, expect_fields, parse_int

MAX_HYPERCUBE_DIM = 20  # 2**20 vertices; beyond that refuse rather than thrash


class Graph:
    """A finite simple undirected graph.  Immutable after construction."""

    __slots__ = ("n", "edges", "adj", "adj_sets", "_connected")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        norm = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        norm.sort()
        self.n = n
        self.edges = tuple(norm)
        nbrs = [[] for _ in range(n)]
        for u, v in norm:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj = tuple(tuple(sorted(b)) for b in nbrs)
        self.adj_sets = tuple(frozenset(b) for b in nbrs)
        self._connected = None

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def is_connected(self) -> bool:
        if self._connected is None:
            if self.n <= 1:
                self._connected = True
            else:
                seen = [False] * self.n
                seen[0] = True
                queue = deque([0])
                count = 1
                while queue:
                    v = queue.popleft()
                    for u in self.adj[v]:
                        if not seen[u]:
                            seen[u] = True
                            count += 1
                            queue.append(u)
                self._connected = count == self.n
        return self._connected

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass(frozen=True)
class ProductVertexMap:
    """Row-major bijection between product vertex ids and factor pairs.

    Product vertex id = a_vertex * b_n + b_vertex.
    """

    a_n: int
    b_n: int

    def to_pair(self, pid: int) -> tuple[int, int]:
        if not (0 <= pid < self.a_n * self.b_n):
            raise ValueError(f"product vertex {pid} out of range")
        return divmod(pid, self.b_n)

    def to_id(self, av: int, bv: int) -> int:
        if not (0 <= av < self.a_n and 0 <= bv < self.b_n):
            raise ValueError(f"factor pair ({av}, {bv}) out of range")
        return av * self.b_n + bv


def complete_graph(n: int) -> Graph:
    """K_n."""
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def hypercube(d: int) -> tuple[Graph, tuple[tuple[int, ...], ...]]:
    """Q_d with its coordinate map.

    Vertex ids are chosen so that the id's binary representation (most
    significant bit first) equals its coordinate vector; two vertices are
    adjacent iff their coordinates differ in exactly one position.
    """
    if d < 0:
        raise ValueError("dimension must be non-negative")
    if d > MAX_HYPERCUBE_DIM:
        raise CapacityError(f"hypercube dimension {d} exceeds guard {MAX_HYPERCUBE_DIM}")
    n = 1 << d
    edges = []
    for v in range(n):
        for i in range(d):
            u = v ^ (1 << i)
            if u > v:
                edges.append((v, u))
    coords = tuple(
        tuple((v >> (d - 1 - i)) & 1 for i in range(d)) for v in range(n)
    )
    return Graph(n, edges), coords


def cartesian_product(a: Graph, b: Graph) -> tuple[Graph, ProductVertexMap]:
    """Cartesian product a □ b with the row-major vertex map.

    (u, x) ~ (v, y) iff (u = v and x ~ y) or (u ~ v and x = y).
    """
    if a.n == 0 or b.n == 0:
        raise ValueError("product factors must be nonempty")
    bn = b.n
    edges = []
    for u, v in a.edges:
        for w in range(bn):
            edges.append((u * bn + w, v * bn + w))
    for x, y in b.edges:
        for w in range(a.n):
            edges.append((w * bn + x, w * bn + y))
    return Graph(a.n * bn, edges), ProductVertexMap(a.n, bn)


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced by `vertices`, renumbered densely.

    Returns (subgraph, remap) where remap[new_id] = old_id and remap is
    ascending.
    """
    remap = tuple(sorted(set(vertices)))
    for v in remap:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} not in graph")
    index = {old: new for new, old in enumerate(remap)}
    edges = [
        (index[u], index[v]) for u, v in g.edges if u in index and v in index
    ]
    return Graph(len(remap), edges), remap


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest contained vertex."""
    seen = [False] * g.n
    out = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in g.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comp.sort()
        out.append(comp)
    return out


def bfs_distance(g: Graph, u: int, v: int) -> int | None:
    """Length of a shortest u-v path, or None when v is unreachable from u."""
    for x in (u, v):
        if not (0 <= x < g.n):
            raise ValueError(f"vertex {x} not in graph")
    if u == v:
        return 0
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    return None


def parse_graph(text: str) -> Graph:
    """Parse the graph file format.

    Header `graph <n> <m>`, then exactly m lines `e <u> <v>` with
    0 <= u < v < n, no duplicates.
    """
    lines = content_lines(text)
    try:
        line_no, fields = next(lines)
    except StopIteration:
        raise FormatError("empty graph file") from None
    expect_fields(fields, 3, line_no, "graph <n> <m>")
    if fields[0] != "graph":
        raise FormatError(f"expected 'graph' header, got {fields[0]!r}", line_no)
    n = parse_int(fields[1], "vertex count", line_no)
    m = parse_int(fields[2], "edge count", line_no)
    if n < 0 or m < 0:
        raise FormatError("vertex and edge counts must be non-negative", line_no)
    edges = []
    seen = set()
    for line_no, fields in lines:
        expect_fields(fields, 3, line_no, "e <u> <v>")
        if fields[0] != "e":
            raise FormatError(f"expected edge line 'e <u> <v>', got {fields[0]!r}", line_no)
        u = parse_int(fields[1], "endpoint", line_no)
        v = parse_int(fields[2], "endpoint", line_no)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", line_no)
        if not (0 <= u < v < n):
            raise FormatError(f"edge ({u}, {v}) must satisfy 0 <= u < v < n={n}", line_no)
        if (u, v) in seen:
            raise FormatError(f"duplicate edge ({u}, {v})", line_no)
        seen.add((u, v))
        edges.append((u, v))
        if len(edges) > m:
            raise FormatError(f"more than {m} edge lines", line_no)
    if len(edges) != m:
        raise FormatError(f"expected {m} edge lines, found {len(edges)}")
    return Graph(n, edges)


def serialize_graph(g: Graph) -> str:
    """Inverse of parse_graph; edges emitted in lexicographic order."""
    out = [f"graph {g.n} {len(g.edges)}"]
    out.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"
