"""Path colorings of connected graphs.

A coloring C of G with colors 1..k is a path coloring when every path whose
consecutive vertices get distinct colors ("well-colored") also has distinctly
colored endpoints.  Equivalently: drop all monochromatic edges of G and no
color may repeat inside a connected component of what is left.  The verifier
uses the component criterion; a brute-force oracle enumerates well-colored
simple paths directly.
"""

from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass

from .errors import BudgetExhaustedError, CapacityError, FormatError
from .fileio import content_lines, expect_fields, parse_int
from .graphs import Graph

ORACLE_MAX_VERTICES = 12
ENUMERATION_MAX_VERTICES = 24


@dataclass(frozen=True)
class Coloring:
    """A surjective assignment of colors 1..k to vertices 0..n-1.

    colors[v] is the color of vertex v.  The set of used colors must be
    exactly {1, .., k}; k is derived, not stored.
    """

    colors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        used = set(self.colors)
        if not self.colors:
            raise ValueError("coloring must cover at least one vertex")
        k = len(used)
        if used != set(range(1, k + 1)):
            raise ValueError(f"colors must be surjective onto 1..{k}, got {sorted(used)}")

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def k(self) -> int:
        return len(set(self.colors))

    @classmethod
    def from_labels(cls, labels) -> "Coloring":
        """Renumber arbitrary hashable labels to 1..k by first appearance."""
        order: dict = {}
        for lab in labels:
            if lab not in order:
                order[lab] = len(order) + 1
        return cls(tuple(order[lab] for lab in labels))

    def canonical(self) -> "Coloring":
        """The same partition with colors renumbered by first appearance."""
        return Coloring.from_labels(self.colors)


@dataclass(frozen=True)
class ColoringVerdict:
    """Outcome of a verification; invalid verdicts carry a witness path.

    The witness is a path in the graph whose consecutive vertices have
    distinct colors but whose endpoints share one.
    """

    valid: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.valid


class Budget:
    """Deterministic node-expansion budget for the backtracking searches."""

    def __init__(self, limit: int):
        if limit < 0:
            raise ValueError("budget must be non-negative")
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExhaustedError(
                f"search budget of {self.limit} node expansions exhausted"
            )


def num_colors(c: Coloring) -> int:
    """Number of distinct colors used by c."""
    return c.k


def is_nontrivial(c: Coloring, g: Graph) -> bool:
    """True when 2 <= k <= |V(g)| - 1."""
    if c.n != g.n:
        raise ValueError("coloring size does not match graph")
    return 2 <= c.k <= g.n - 1


def _check_inputs(g: Graph, c: Coloring) -> None:
    if c.n != g.n:
        raise ValueError(f"coloring covers {c.n} vertices, graph has {g.n}")
    if not g.is_connected():
        raise ValueError("graph must be connected")


def verify_path_coloring(g: Graph, c: Coloring) -> ColoringVerdict:
    """Component criterion: no color repeats inside a bichromatic component.

    Every path through bichromatic edges is well-colored, and every
    well-colored path uses only bichromatic edges, so a repeated color
    inside a component is exactly a violated endpoint pair.
    """
    _check_inputs(g, c)
    colors = c.colors
    parent = list(range(g.n))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for u, v in g.edges:
        if colors[u] != colors[v]:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[rv] = ru
    seen: dict[tuple[int, int], int] = {}
    for v in range(g.n):
        key = (find(v), colors[v])
        if key in seen:
            return ColoringVerdict(False, _bichromatic_path(g, colors, seen[key], v))
        seen[key] = v
    return ColoringVerdict(True)


def _bichromatic_path(g: Graph, colors, a: int, b: int) -> tuple[int, ...]:
    """Shortest a-b path using only bichromatic edges (they are co-component)."""
    prev = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        if x == b:
            path = []
            while x is not None:
                path.append(x)
                x = prev[x]
            return tuple(reversed(path))
        for y in g.adj[x]:
            if y not in prev and colors[y] != colors[x]:
                prev[y] = x
                queue.append(y)
    raise AssertionError("endpoints were not connected by bichromatic edges")


def oracle_verify_path_coloring(
    g: Graph, c: Coloring, max_vertices: int = ORACLE_MAX_VERTICES
) -> ColoringVerdict:
    """Brute-force check straight from the definition.

    Enumerates every well-colored simple path (extensions of a path that
    stops being well-colored cannot become well-colored again) and checks
    endpoint colors.  Guarded: refuses graphs with more than `max_vertices`
    vertices.
    """
    if g.n > max_vertices:
        raise CapacityError(f"oracle limited to {max_vertices} vertices, got {g.n}")
    if c.n != g.n:
        raise ValueError(f"coloring covers {c.n} vertices, graph has {g.n}")
    colors = c.colors
    adj = g.adj
    on_path = [False] * g.n
    path: list[int] = []

    def extend(v: int, start_color: int) -> tuple[int, ...] | None:
        for u in adj[v]:
            if on_path[u] or colors[u] == colors[v]:
                continue
            if colors[u] == start_color:
                return tuple(path + [u])
            on_path[u] = True
            path.append(u)
            bad = extend(u, start_color)
            path.pop()
            on_path[u] = False
            if bad is not None:
                return bad
        return None

    for start in range(g.n):
        on_path[start] = True
        path.append(start)
        bad = extend(start, colors[start])
        path.pop()
        on_path[start] = False
        if bad is not None:
            return ColoringVerdict(False, bad)
    return ColoringVerdict(True)


def restrict_coloring(c: Coloring, vertices) -> Coloring:
    """Restriction of c to a vertex subset, canonically renumbered.

    The subset is taken in ascending order; use together with
    graphs.induced_subgraph, which numbers the same way.
    """
    chosen = sorted(set(vertices))
    if not chosen:
        raise ValueError("cannot restrict to an empty vertex set")
    for v in chosen:
        if not (0 <= v < c.n):
            raise ValueError(f"vertex {v} not covered by the coloring")
    return Coloring.from_labels([c.colors[v] for v in chosen])


def bichromatic_components(g: Graph, c: Coloring) -> list[list[int]]:
    """Components of g after dropping monochromatic edges.

    Sorted vertex lists, ordered by smallest contained vertex.
    """
    if c.n != g.n:
        raise ValueError("coloring size does not match graph")
    colors = c.colors
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
                if not seen[u] and colors[u] != colors[v]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comp.sort()
        out.append(comp)
    return out


def _search_colorings(g: Graph, k: int, budget: Budget | None) -> Iterator[tuple[int, ...]]:
    """Yield all canonical path-colorings of g using exactly k colors.

    Backtracking over vertices in ascending id order, colors ascending,
    with color c+1 allowed only once c has appeared (canonical form, so each
    color-renaming class is produced exactly once).  A partial assignment is
    pruned as soon as some component of the bichromatic subgraph over the
    assigned vertices repeats a color, or the remaining vertices cannot
    supply the missing colors.  Union-find without path compression so
    merges can be undone on backtrack.
    """
    n = g.n
    if not 1 <= k <= n:
        return
    adj = g.adj
    parent = list(range(n))
    size = [1] * n
    colorset: list[set[int] | None] = [None] * n
    assign = [0] * n

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(v: int, used: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            if used == k:
                yield tuple(assign)
            return
        if k - used > n - v:
            return  # not enough vertices left to reach k colors
        top = used + 1 if used < k else k
        for color in range(1, top + 1):
            if budget is not None:
                budget.spend()
            ops: list[tuple[int, int]] = []
            ok = True
            colorset[v] = {color}
            for u in adj[v]:
                if u < v and assign[u] != color:
                    ra, rb = find(v), find(u)
                    if ra == rb:
                        continue
                    ca, cb = colorset[ra], colorset[rb]
                    if ca & cb:
                        ok = False
                        break
                    if size[ra] < size[rb]:
                        ra, rb = rb, ra
                        ca, cb = cb, ca
                    parent[rb] = ra
                    size[ra] += size[rb]
                    ca |= cb
                    ops.append((ra, rb))
            if ok:
                assign[v] = color
                yield from rec(v + 1, used if color <= used else used + 1)
                assign[v] = 0
            for ra, rb in reversed(ops):
                parent[rb] = rb
                size[ra] -= size[rb]
                colorset[ra] -= colorset[rb]
            colorset[v] = None

    yield from rec(0, 0)


def find_path_coloring(g: Graph, k: int, budget: Budget | None = None) -> Coloring | None:
    """First path-coloring of g with exactly k colors, or None if none exists.

    Deterministic: ascending vertex ids, ascending colors, canonical color
    order.  The result is re-verified before being returned.
    """
    if not g.is_connected():
        raise ValueError("graph must be connected")
    if not 2 <= k <= g.n - 1:
        raise ValueError(f"k must satisfy 2 <= k <= {g.n - 1}, got {k}")
    for colors in _search_colorings(g, k, budget):
        c = Coloring(colors)
        verdict = verify_path_coloring(g, c)
        assert verdict.valid, "search produced a coloring the verifier rejects"
        return c
    return None


def nontrivial_k_range(g: Graph) -> range:
    """The k values for which a path-k-coloring of g would be nontrivial."""
    return range(2, g.n)


def find_any_nontrivial_path_coloring(
    g: Graph, max_k: int | None = None, budget: Budget | None = None
) -> tuple[int, Coloring] | None:
    """Scan k = 2 .. |V|-1 (capped at max_k) and return the first hit.

    Returns (k, coloring) or None.  For graphs with at most two vertices the
    scan range is empty (see nontrivial_k_range) and the result is None.
    """
    if not g.is_connected():
        raise ValueError("graph must be connected")
    ks = nontrivial_k_range(g)
    if max_k is not None:
        ks = range(ks.start, min(ks.stop, max_k + 1))
    for k in ks:
        c = find_path_coloring(g, k, budget)
        if c is not None:
            return k, c
    return None


def enumerate_path_colorings(
    g: Graph, k: int, max_vertices: int = ENUMERATION_MAX_VERTICES
) -> Iterator[Coloring]:
    """All path-colorings of g with exactly k colors, one per renaming class.

    Same deterministic order as find_path_coloring.  Guarded: refuses graphs
    with more than `max_vertices` vertices.
    """
    if g.n > max_vertices:
        raise CapacityError(f"enumeration limited to {max_vertices} vertices, got {g.n}")
    if not g.is_connected():
        raise ValueError("graph must be connected")
    for colors in _search_colorings(g, k, None):
        c = Coloring(colors)
        verdict = verify_path_coloring(g, c)
        assert verdict.valid, "search produced a coloring the verifier rejects"
        yield c


def parse_coloring(text: str) -> Coloring:
    """Parse the coloring file format.

    Header `coloring <n> <k>`, then n lines `c <vertex> <color>` covering
    every vertex exactly once with colors surjective onto 1..k.
    """
    lines = content_lines(text)
    try:
        line_no, fields = next(lines)
    except StopIteration:
        raise FormatError("empty coloring file") from None
    expect_fields(fields, 3, line_no, "coloring <n> <k>")
    if fields[0] != "coloring":
        raise FormatError(f"expected 'coloring' header, got {fields[0]!r}", line_no)
    header_line = line_no
    n = parse_int(fields[1], "vertex count", line_no)
    k = parse_int(fields[2], "color count", line_no)
    if n < 1 or k < 1:
        raise FormatError("vertex and color counts must be positive", line_no)
    colors: list[int | None] = [None] * n
    for line_no, fields in lines:
        expect_fields(fields, 3, line_no, "c <vertex> <color>")
        if fields[0] != "c":
            raise FormatError(f"expected color line 'c <vertex> <color>', got {fields[0]!r}", line_no)
        v = parse_int(fields[1], "vertex", line_no)
        col = parse_int(fields[2], "color", line_no)
        if not 0 <= v < n:
            raise FormatError(f"vertex {v} out of range", line_no)
        if colors[v] is not None:
            raise FormatError(f"vertex {v} colored twice", line_no)
        if not 1 <= col <= k:
            raise FormatError(f"color {col} outside 1..{k}", line_no)
        colors[v] = col
    missing = [v for v, col in enumerate(colors) if col is None]
    if missing:
        raise FormatError(f"vertices without a color: {missing}", header_line)
    if len(set(colors)) != k:
        raise FormatError(f"colors are not surjective onto 1..{k}", header_line)
    return Coloring(tuple(colors))


def serialize_coloring(c: Coloring) -> str:
    """Inverse of parse_coloring; vertices emitted in ascending order."""
    out = [f"coloring {c.n} {c.k}"]
    out.extend(f"c {v} {col}" for v, col in enumerate(c.colors))
    return "\n".join(out) + "\n"
