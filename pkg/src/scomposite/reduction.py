"""Monotone one-in-three satisfiability and its joint-graph encoding.

Clause i becomes cube i; the clause's variables in ascending order sit at
cube coordinates (001), (010), (100).  Two occurrences of one variable in
different clauses are wired by a cross-cube edge, so any valid two-coloring
must give every occurrence the same color.  The all-zero corners play
"false", the all-one corners play "true": a path-2-coloring of the gadget
then marks exactly one variable per clause true, and conversely a satisfying
assignment extends to a coloring (with k-2 extra cliques when more colors
are requested).
"""

import random
from dataclasses import dataclass
from itertools import combinations, product

from .coloring import Coloring, Budget, find_path_coloring, restrict_coloring, verify_path_coloring
from .errors import CapacityError, DecodeError, FormatError, InternalConsistencyError
from .fileio import content_lines, expect_fields, parse_int
from .gadgets import (
    ANCHOR0,
    ANCHOR1,
    EPrimeSpec,
    GadgetGraph,
    WEIGHT1_COORDS,
    build_extended_joint_graph,
    build_joint_graph,
)
from .graphs import hypercube, induced_subgraph

BRUTE_FORCE_MAX_VARS = 24
FALSE_COLOR = 1
TRUE_COLOR = 2
DEFAULT_CORPUS_SEED = 1729

_Q3 = hypercube(3)[0]
_WEIGHT2_INDICES = (3, 5, 6)  # (011), (101), (110)


@dataclass(frozen=True)
class SatInstance:
    """Monotone one-in-three instance: clauses of three distinct variables.

    Variables are 1..num_vars; clauses keep their input order (clause i maps
    to cube i) but are sorted internally.
    """

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("variable count must be non-negative")
        norm = []
        for clause in self.clauses:
            c = tuple(sorted(clause))
            if len(c) != 3 or len(set(c)) != 3:
                raise ValueError(f"clause {clause} must contain three distinct variables")
            if c[0] < 1 or c[-1] > self.num_vars:
                raise ValueError(f"clause {clause} uses variables outside 1..{self.num_vars}")
            norm.append(c)
        object.__setattr__(self, "clauses", tuple(norm))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def verify_1in3(inst: SatInstance, assignment: tuple[bool, ...]) -> bool:
    """True when every clause has exactly one true variable."""
    if len(assignment) != inst.num_vars:
        raise ValueError(
            f"assignment covers {len(assignment)} variables, instance has {inst.num_vars}"
        )
    return all(sum(assignment[v - 1] for v in clause) == 1 for clause in inst.clauses)


def brute_force_1in3(inst: SatInstance) -> tuple[bool, ...] | None:
    """Lexicographically smallest satisfying assignment (False < True,
    variable 1 most significant), or None.  Guarded at 24 variables."""
    if inst.num_vars > BRUTE_FORCE_MAX_VARS:
        raise CapacityError(
            f"brute force limited to {BRUTE_FORCE_MAX_VARS} variables, got {inst.num_vars}"
        )
    for bits in product((False, True), repeat=inst.num_vars):
        if verify_1in3(inst, bits):
            return bits
    return None


def clause_coordinates(clause: tuple[int, int, int]) -> dict[int, tuple[int, int, int]]:
    """Ascending variables -> coordinates (001), (010), (100)."""
    return dict(zip(sorted(clause), WEIGHT1_COORDS))


def encode(inst: SatInstance, k: int = 2) -> tuple[GadgetGraph, dict]:
    """Build the gadget for inst and the (clause, variable) -> vertex map."""
    m = inst.num_clauses
    if m < 1:
        raise ValueError("instance must have at least one clause")
    if k < 2:
        raise ValueError(f"color parameter must be at least 2, got {k}")
    coords = [clause_coordinates(cl) for cl in inst.clauses]
    cross = []
    for (i, ci), (j, cj) in combinations(enumerate(coords, start=1), 2):
        for var in sorted(set(ci) & set(cj)):
            cross.append(((i, ci[var]), (j, cj[var])))
    gadget = build_extended_joint_graph(
        build_joint_graph(m, EPrimeSpec(tuple(cross))), k
    )
    varmap = {
        (j, var): gadget.cube_vertex(j, coord)
        for j, cmap in enumerate(coords, start=1)
        for var, coord in cmap.items()
    }
    return gadget, varmap


def _complete_cube(fixed: dict[int, int]) -> tuple[int, ...]:
    """Fill the three weight-two corners of one cube, given the other five.

    Tries all eight completions against the 3-cube and demands exactly one
    path-2-coloring among them.
    """
    valid = []
    for bits in product((FALSE_COLOR, TRUE_COLOR), repeat=3):
        local = dict(fixed)
        local.update(zip(_WEIGHT2_INDICES, bits))
        colors = tuple(local[i] for i in range(8))
        if len(set(colors)) != 2:
            continue
        if verify_path_coloring(_Q3, Coloring(colors)).valid:
            valid.append(colors)
    if len(valid) != 1:
        raise InternalConsistencyError(
            f"cube completion from {fixed} yielded {len(valid)} path-2-colorings, "
            "expected exactly one"
        )
    return valid[0]


def construct_coloring_from_assignment(
    inst: SatInstance,
    assignment: tuple[bool, ...],
    k: int,
    gadget: GadgetGraph,
    varmap: dict,
) -> Coloring:
    """Turn a satisfying assignment into a path-k-coloring of the gadget.

    False variables, all-zero corners and W0 get color 1; true variables,
    all-one corners and W1 get color 2; each extension clique gets its own
    fresh color.  The weight-two corners of every cube are completed by
    exhaustive trial, which must be unique.
    """
    if not verify_1in3(inst, assignment):
        raise ValueError("assignment does not satisfy the instance")
    if gadget.m != inst.num_clauses or gadget.k != k:
        raise ValueError("gadget does not match the instance and k")
    colors = [0] * gadget.graph.n
    for j, clause in enumerate(inst.clauses, start=1):
        fixed = {0: FALSE_COLOR, 7: TRUE_COLOR}
        for var in clause:
            value = TRUE_COLOR if assignment[var - 1] else FALSE_COLOR
            fixed[varmap[(j, var)] - (j - 1) * 8] = value
        cube_colors = _complete_cube(fixed)
        for i, col in enumerate(cube_colors):
            colors[(j - 1) * 8 + i] = col
    for w in gadget.w_vertices(0):
        colors[w] = FALSE_COLOR
    for w in gadget.w_vertices(1):
        colors[w] = TRUE_COLOR
    for i in range(1, k - 1):
        for v in gadget.clique_vertices(i):
            colors[v] = 2 + i
    c = Coloring(tuple(colors))
    if c.k != k:
        raise InternalConsistencyError(f"constructed coloring uses {c.k} colors, wanted {k}")
    verdict = verify_path_coloring(gadget.graph, c)
    if not verdict.valid:
        raise InternalConsistencyError(
            f"constructed coloring fails verification, witness {verdict.witness}"
        )
    return c


def decode(
    gadget: GadgetGraph,
    varmap: dict,
    c: Coloring,
    num_vars: int | None = None,
) -> tuple[bool, ...]:
    """Read a truth assignment back off a coloring of the gadget.

    The restriction to the cube part must be a valid two-coloring; the color
    of the all-zero corners is normalized to "false".  Anchors must be
    uniform per side, the sides distinct, and all occurrences of a variable
    must agree.  Variables that occur in no clause default to false.
    """
    if c.n != gadget.graph.n:
        raise ValueError(f"coloring covers {c.n} vertices, gadget has {gadget.graph.n}")
    joint = range(gadget.joint_vertex_count)
    sub, _ = induced_subgraph(gadget.graph, joint)
    restricted = restrict_coloring(c, joint)
    if restricted.k != 2:
        raise DecodeError(f"cube part uses {restricted.k} colors, expected 2")
    verdict = verify_path_coloring(sub, restricted)
    if not verdict.valid:
        raise DecodeError(
            f"cube part is not path-2-colored, witness {verdict.witness}"
        )
    zeros = {restricted.colors[gadget.cube_vertex(j, ANCHOR0)] for j in range(1, gadget.m + 1)}
    ones = {restricted.colors[gadget.cube_vertex(j, ANCHOR1)] for j in range(1, gadget.m + 1)}
    if len(zeros) != 1:
        raise DecodeError("all-zero corners are not uniformly colored")
    if len(ones) != 1:
        raise DecodeError("all-one corners are not uniformly colored")
    false_color = zeros.pop()
    true_color = ones.pop()
    if false_color == true_color:
        raise DecodeError("all-zero and all-one corners share a color")
    if num_vars is None:
        num_vars = max(var for _, var in varmap)
    values: dict[int, set[bool]] = {}
    for (j, var), vertex in varmap.items():
        values.setdefault(var, set()).add(restricted.colors[vertex] == true_color)
    assignment = []
    for var in range(1, num_vars + 1):
        seen = values.get(var, {False})
        if len(seen) != 1:
            raise DecodeError(f"occurrences of variable {var} disagree")
        assignment.append(seen.pop())
    by_clause: dict[int, list[int]] = {}
    for (j, var), _ in varmap.items():
        by_clause.setdefault(j, []).append(var)
    for j, var_list in sorted(by_clause.items()):
        if sum(assignment[var - 1] for var in var_list) != 1:
            raise DecodeError(f"clause {j} does not have exactly one true variable")
    return tuple(assignment)


def solve_1in3_via_gadget(
    inst: SatInstance, k: int = 2, budget: Budget | None = None
) -> tuple[bool, ...] | None:
    """Decide inst by searching the gadget for a path-k-coloring.

    Returns a satisfying assignment or None for unsatisfiable.  A budget
    exhaustion raises rather than returning None, so "no" always means the
    search was exhaustive.
    """
    gadget, varmap = encode(inst, k)
    c = find_path_coloring(gadget.graph, k, budget)
    if c is None:
        return None
    assignment = decode(gadget, varmap, c, inst.num_vars)
    if not verify_1in3(inst, assignment):
        raise InternalConsistencyError(
            f"decoded assignment {assignment} does not satisfy the instance"
        )
    return assignment


def random_instance(
    rng: random.Random, max_vars: int = 8, max_clauses: int = 3
) -> SatInstance:
    """A random instance in which every variable occurs in some clause."""
    m = rng.randint(1, max_clauses)
    pool_size = rng.randint(3, max_vars)
    clauses: list[tuple[int, int, int]] = []
    attempts = 0
    while len(clauses) < m:
        clause = tuple(sorted(rng.sample(range(1, pool_size + 1), 3)))
        attempts += 1
        if clause not in clauses or attempts > 50:
            clauses.append(clause)
    used = sorted({v for cl in clauses for v in cl})
    renum = {v: i + 1 for i, v in enumerate(used)}
    return SatInstance(
        len(used), tuple(tuple(renum[v] for v in cl) for cl in clauses)
    )


def seeded_corpus(
    seed: int = DEFAULT_CORPUS_SEED,
    count: int = 80,
    max_vars: int = 8,
    max_clauses: int = 3,
) -> list[SatInstance]:
    """Deterministic list of random instances for tests and the selftest."""
    rng = random.Random(seed)
    return [random_instance(rng, max_vars, max_clauses) for _ in range(count)]


def parse_sat_instance(text: str) -> SatInstance:
    """Parse the instance format: `m13sat <num_vars> <num_clauses>` header,
    then one `<v1> <v2> <v3>` line per clause (1-based, distinct)."""
    lines = content_lines(text)
    try:
        line_no, fields = next(lines)
    except StopIteration:
        raise FormatError("empty instance file") from None
    expect_fields(fields, 3, line_no, "m13sat <num_vars> <num_clauses>")
    if fields[0] != "m13sat":
        raise FormatError(f"expected 'm13sat' header, got {fields[0]!r}", line_no)
    num_vars = parse_int(fields[1], "variable count", line_no)
    num_clauses = parse_int(fields[2], "clause count", line_no)
    if num_vars < 0 or num_clauses < 0:
        raise FormatError("counts must be non-negative", line_no)
    clauses = []
    for line_no, fields in lines:
        expect_fields(fields, 3, line_no, "<v1> <v2> <v3>")
        clause = tuple(parse_int(f, "variable", line_no) for f in fields)
        if len(set(clause)) != 3:
            raise FormatError(f"clause {clause} repeats a variable", line_no)
        for v in clause:
            if not 1 <= v <= num_vars:
                raise FormatError(f"variable {v} outside 1..{num_vars}", line_no)
        clauses.append(clause)
        if len(clauses) > num_clauses:
            raise FormatError(f"more than {num_clauses} clause lines", line_no)
    if len(clauses) != num_clauses:
        raise FormatError(f"expected {num_clauses} clause lines, found {len(clauses)}")
    return SatInstance(num_vars, tuple(clauses))


def serialize_sat_instance(inst: SatInstance) -> str:
    out = [f"m13sat {inst.num_vars} {inst.num_clauses}"]
    out.extend(" ".join(str(v) for v in clause) for clause in inst.clauses)
    return "\n".join(out) + "\n"


def parse_assignment(text: str) -> tuple[bool, ...]:
    """Parse the assignment format: `assign <num_vars>`, then `<var> <T|F>`."""
    lines = content_lines(text)
    try:
        line_no, fields = next(lines)
    except StopIteration:
        raise FormatError("empty assignment file") from None
    expect_fields(fields, 2, line_no, "assign <num_vars>")
    if fields[0] != "assign":
        raise FormatError(f"expected 'assign' header, got {fields[0]!r}", line_no)
    header_line = line_no
    num_vars = parse_int(fields[1], "variable count", line_no)
    if num_vars < 0:
        raise FormatError("variable count must be non-negative", line_no)
    values: list[bool | None] = [None] * num_vars
    for line_no, fields in lines:
        expect_fields(fields, 2, line_no, "<var> <T|F>")
        var = parse_int(fields[0], "variable", line_no)
        if not 1 <= var <= num_vars:
            raise FormatError(f"variable {var} outside 1..{num_vars}", line_no)
        if fields[1] not in ("T", "F"):
            raise FormatError(f"expected T or F, got {fields[1]!r}", line_no)
        if values[var - 1] is not None:
            raise FormatError(f"variable {var} assigned twice", line_no)
        values[var - 1] = fields[1] == "T"
    missing = [v + 1 for v, val in enumerate(values) if val is None]
    if missing:
        raise FormatError(f"variables without a value: {missing}", header_line)
    return tuple(values)


def serialize_assignment(assignment: tuple[bool, ...]) -> str:
    out = [f"assign {len(assignment)}"]
    out.extend(f"{var} {'T' if val else 'F'}" for var, val in enumerate(assignment, 1))
    return "\n".join(out) + "\n"


def parse_var_vertex_map(text: str) -> dict[tuple[int, int], int]:
    """Parse the variable-vertex map: `varmap <count>`, then `m <clause> <var> <vertex>`."""
    lines = content_lines(text)
    try:
        line_no, fields = next(lines)
    except StopIteration:
        raise FormatError("empty variable map file") from None
    expect_fields(fields, 2, line_no, "varmap <count>")
    if fields[0] != "varmap":
        raise FormatError(f"expected 'varmap' header, got {fields[0]!r}", line_no)
    count = parse_int(fields[1], "entry count", line_no)
    out: dict[tuple[int, int], int] = {}
    for line_no, fields in lines:
        expect_fields(fields, 4, line_no, "m <clause> <var> <vertex>")
        if fields[0] != "m":
            raise FormatError(f"expected map line 'm ...', got {fields[0]!r}", line_no)
        clause = parse_int(fields[1], "clause", line_no)
        var = parse_int(fields[2], "variable", line_no)
        vertex = parse_int(fields[3], "vertex", line_no)
        if (clause, var) in out:
            raise FormatError(f"entry ({clause}, {var}) repeated", line_no)
        out[(clause, var)] = vertex
    if len(out) != count:
        raise FormatError(f"expected {count} map lines, found {len(out)}")
    return out


def serialize_var_vertex_map(varmap: dict[tuple[int, int], int]) -> str:
    out = [f"varmap {len(varmap)}"]
    out.extend(
        f"m {clause} {var} {vertex}" for (clause, var), vertex in sorted(varmap.items())
    )
    return "\n".join(out) + "\n"
