"""Command-line front end.

Exit codes: 0 = yes / valid / found, 1 = no / invalid / none,
2 = usage or format error, 3 = budget exhausted or size guard hit.
"""

import argparse
import random
import sys

from .coloring import (
    ORACLE_MAX_VERTICES,
    Budget,
    Coloring,
    find_path_coloring,
    oracle_verify_path_coloring,
    parse_coloring,
    serialize_coloring,
    verify_path_coloring,
)
from .errors import BudgetExhaustedError, CapacityError, FormatError
from .gadgets import (
    EPrimeSpec,
    build_extended_joint_graph,
    build_joint_graph,
    gadget_from_parts,
    parse_provenance,
    serialize_provenance,
    validate_gadget,
)
from .graphs import (
    Graph,
    cartesian_product,
    complete_graph,
    hypercube,
    parse_graph,
    serialize_graph,
)
from .recognition import (
    COMPOSITE,
    INDUCED_CYCLE_MAX_VERTICES,
    S_PRIME,
    check_s_composite,
    embed_into_hamming,
    serialize_embedding,
    serialize_labeling,
    two_labeling_from_coloring,
    verify_product_subgraph_embedding,
    verify_two_labeling,
)
from .reduction import (
    DEFAULT_CORPUS_SEED,
    brute_force_1in3,
    construct_coloring_from_assignment,
    decode,
    encode,
    parse_sat_instance,
    seeded_corpus,
    serialize_assignment,
    serialize_sat_instance,
    serialize_var_vertex_map,
    solve_1in3_via_gadget,
    verify_1in3,
)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _emit(args, text: str, suffix: str = "") -> None:
    """Write text to args.out (+suffix) or print it."""
    if args.out:
        _write(args.out + suffix, text)
    else:
        sys.stdout.write(text)


def to_dot(g: Graph, colors=None, provenance=None, roles=None) -> str:
    """Graphviz description with colors and provenance as plain attributes."""
    lines = ["graph g {"]
    for v in range(g.n):
        attrs = []
        if colors is not None:
            attrs.append(f'color="{colors[v]}"')
        if provenance is not None:
            p = provenance[v]
            if p.kind == "cube":
                bits = "".join(str(b) for b in p.coord)
                attrs.append(f'origin="cube {p.index} {bits}"')
            elif p.kind == "clique":
                attrs.append(f'origin="clique {p.index} slot {p.slot}"')
            else:
                attrs.append(f'origin="{p.kind} slot {p.slot}"')
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {v}{suffix};")
    for u, v in g.edges:
        role = roles.get((u, v)) if roles else None
        suffix = f' [role="{role}"]' if role else ""
        lines.append(f"  {u} -- {v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_eprime(spec: str) -> EPrimeSpec:
    """Spec string like '1:001-2:001,2:010-3:010'."""
    edges = []
    if spec:
        for chunk in spec.split(","):
            try:
                left, right = chunk.split("-")
                ends = []
                for part in (left, right):
                    cube, bits = part.split(":")
                    coord = tuple(int(b) for b in bits)
                    ends.append((int(cube), coord))
            except (ValueError, IndexError):
                raise ValueError(
                    f"bad cross-cube edge {chunk!r}; expected i:xyz-j:xyz"
                ) from None
            edges.append(tuple(ends))
    return EPrimeSpec(tuple(edges))


def _budget(args) -> Budget | None:
    return Budget(args.budget) if args.budget is not None else None


def cmd_gen(args) -> int:
    provenance = roles = None
    if args.kind == "complete":
        n = args.n if args.n is not None else args.size
        if n is None:
            raise ValueError("gen complete needs a vertex count (--n or positional)")
        g = complete_graph(n)
    elif args.kind == "hypercube":
        d = args.d if args.d is not None else args.size
        if d is None:
            raise ValueError("gen hypercube needs a dimension (--d or positional)")
        g = hypercube(d)[0]
    elif args.kind == "product":
        if not (args.a and args.b):
            raise ValueError("gen product needs --a and --b graph files")
        g = cartesian_product(parse_graph(_read(args.a)), parse_graph(_read(args.b)))[0]
    elif args.kind in ("joint", "extended-joint"):
        if args.sat:
            inst = parse_sat_instance(_read(args.sat))
            gadget = build_joint_graph(
                inst.num_clauses, EPrimeSpec(tuple(_eprime_from_instance(inst)))
            )
        else:
            m = args.m if args.m is not None else args.size
            if m is None:
                raise ValueError(f"gen {args.kind} needs --m (or positional) or --sat")
            gadget = build_joint_graph(m, _parse_eprime(args.eprime or ""))
        if args.kind == "extended-joint":
            gadget = build_extended_joint_graph(gadget, args.k)
        g, provenance, roles = gadget.graph, gadget.provenance, gadget.edge_roles
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown kind {args.kind!r}")
    _emit(args, serialize_graph(g))
    if provenance is not None and args.out:
        _write(args.out + ".prov", serialize_provenance(gadget))
    if args.dot:
        dot = to_dot(g, provenance=provenance, roles=roles)
        if args.out:
            _write(args.out + ".dot", dot)
        else:
            sys.stdout.write(dot)
    return 0


def _eprime_from_instance(inst):
    from .reduction import clause_coordinates
    from itertools import combinations

    coords = [clause_coordinates(cl) for cl in inst.clauses]
    for (i, ci), (j, cj) in combinations(enumerate(coords, start=1), 2):
        for var in sorted(set(ci) & set(cj)):
            yield ((i, ci[var]), (j, cj[var]))


def cmd_check_coloring(args) -> int:
    g = parse_graph(_read(args.graph))
    c = parse_coloring(_read(args.coloring))
    verdict = verify_path_coloring(g, c)
    if verdict.valid:
        print(f"valid path coloring with {c.k} colors")
        return 0
    print("invalid: well-colored path with equal-colored endpoints:")
    print("  " + " ".join(str(v) for v in verdict.witness))
    return 1


def cmd_find_coloring(args) -> int:
    g = parse_graph(_read(args.graph))
    c = find_path_coloring(g, args.k, _budget(args))
    if c is None:
        print(f"no path coloring with exactly {args.k} colors")
        return 1
    print(f"found path coloring with {args.k} colors")
    _emit(args, serialize_coloring(c))
    if args.dot:
        dot = to_dot(g, colors=c.colors)
        _write(args.out + ".dot", dot) if args.out else sys.stdout.write(dot)
    return 0


def cmd_s_composite(args) -> int:
    g = parse_graph(_read(args.graph))
    verdict = check_s_composite(g, _budget(args))
    if verdict.status == COMPOSITE:
        print(f"composite: nontrivial path coloring with k={verdict.witness_k}")
        text = serialize_coloring(verdict.witness)
        _write(args.out, text) if args.out else print(text, end="")
        if args.dot:
            dot = to_dot(g, colors=verdict.witness.colors)
            _write(args.out + ".dot", dot) if args.out else sys.stdout.write(dot)
        return 0
    if verdict.status == S_PRIME:
        ks = list(verdict.searched_ks)
        print(f"prime: no nontrivial path coloring for k in {ks}")
        return 1
    print(f"undecided: budget ran out after finishing k in {list(verdict.searched_ks)}")
    return 3


def cmd_reduce(args) -> int:
    if not args.out:
        raise ValueError("reduce needs --out to place the gadget files")
    inst = parse_sat_instance(_read(args.sat))
    gadget, varmap = encode(inst, args.k)
    _write(args.out, serialize_graph(gadget.graph))
    _write(args.out + ".prov", serialize_provenance(gadget))
    _write(args.out + ".varmap", serialize_var_vertex_map(varmap))
    if args.dot:
        _write(args.out + ".dot", to_dot(gadget.graph, provenance=gadget.provenance,
                                         roles=gadget.edge_roles))
    print(
        f"gadget with {gadget.graph.n} vertices and {gadget.graph.num_edges} edges "
        f"for {inst.num_clauses} clauses, k={args.k}"
    )
    return 0


def cmd_solve_sat(args) -> int:
    inst = parse_sat_instance(_read(args.sat))
    answers = {}
    if args.via in ("gadget", "both"):
        answers["gadget"] = solve_1in3_via_gadget(inst, args.k, _budget(args))
    if args.via in ("brute", "both"):
        answers["brute"] = brute_force_1in3(inst)
    if len(answers) == 2:
        sat = {name: a is not None for name, a in answers.items()}
        if sat["gadget"] != sat["brute"]:
            print(
                f"DISAGREEMENT: gadget says {sat['gadget']}, brute force says {sat['brute']}"
            )
            return 2
    result = answers.get("gadget", answers.get("brute"))
    if result is None:
        print("unsatisfiable")
        return 1
    assert verify_1in3(inst, result)
    print(
        "satisfiable: "
        + " ".join(f"{var}={'T' if val else 'F'}" for var, val in enumerate(result, 1))
    )
    if args.out:
        _write(args.out, serialize_assignment(result))
    return 0


def cmd_embed(args) -> int:
    g = parse_graph(_read(args.graph))
    c = parse_coloring(_read(args.coloring))
    verdict = verify_path_coloring(g, c)
    if not verdict.valid or not (2 <= c.k <= g.n - 1):
        print("coloring is not a nontrivial path coloring")
        return 1
    emb = embed_into_hamming(g, c)
    check = verify_product_subgraph_embedding(g, emb)
    assert check.ok, check.violation
    print(f"embeds into the product of complete graphs K_{emb.k} x K_{emb.t}")
    _emit(args, serialize_embedding(emb))
    return 0


def cmd_two_label(args) -> int:
    g = parse_graph(_read(args.graph))
    c = parse_coloring(_read(args.coloring))
    verdict = verify_path_coloring(g, c)
    if not verdict.valid or not (2 <= c.k <= g.n - 1):
        print("coloring is not a nontrivial path coloring")
        return 1
    limit = args.max_vertices if args.max_vertices else INDUCED_CYCLE_MAX_VERTICES
    labeling = two_labeling_from_coloring(g, c, max_vertices=limit)
    assert verify_two_labeling(g, labeling, max_vertices=limit)
    print("labeling verified: induced cycles with both labels change >= 3 times")
    _emit(args, serialize_labeling(labeling))
    return 0


def cmd_validate_gadget(args) -> int:
    g = parse_graph(_read(args.graph))
    provenance, roles = parse_provenance(_read(args.provenance))
    gadget = gadget_from_parts(g, provenance, roles)
    violations = validate_gadget(gadget)
    if violations:
        for v in violations:
            print(f"violation: {v}")
        return 1
    print(f"valid gadget: m={gadget.m}, k={gadget.k}, {g.n} vertices")
    return 0


def cmd_selftest(args) -> int:
    failures = 0

    def check(name: str, ok: bool) -> None:
        nonlocal failures
        print(f"{'ok  ' if ok else 'FAIL'} {name}")
        if not ok:
            failures += 1

    rng = random.Random(args.seed)
    corpus = seeded_corpus(seed=args.seed, count=args.count)

    agree = True
    roundtrip = True
    for inst in corpus:
        via_brute = brute_force_1in3(inst)
        via_gadget = solve_1in3_via_gadget(inst, 2)
        agree &= (via_brute is None) == (via_gadget is None)
        if via_gadget is not None:
            agree &= verify_1in3(inst, via_gadget)
        if via_brute is not None:
            for k in (2, 3):
                gadget, varmap = encode(inst, k)
                c = construct_coloring_from_assignment(inst, via_brute, k, gadget, varmap)
                roundtrip &= decode(gadget, varmap, c, inst.num_vars) == via_brute
    check("gadget search and brute force agree on the corpus", agree)
    check("decode inverts construct on the corpus", roundtrip)

    fmt_ok = True
    for inst in corpus[: min(10, len(corpus))]:
        fmt_ok &= parse_sat_instance(serialize_sat_instance(inst)) == inst
        gadget, varmap = encode(inst, 3)
        fmt_ok &= parse_graph(serialize_graph(gadget.graph)) == gadget.graph
        prov, roles = parse_provenance(serialize_provenance(gadget))
        fmt_ok &= prov == gadget.provenance and roles == gadget.edge_roles
    check("file formats round-trip on generated artifacts", fmt_ok)

    oracle_ok = True
    oracle_limit = args.max_vertices if args.max_vertices else ORACLE_MAX_VERTICES
    for _ in range(args.count):
        n = rng.randint(2, 7)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
        g = Graph(n, edges)
        if not g.is_connected():
            continue
        labels = [rng.randint(1, n) for _ in range(n)]
        c = Coloring.from_labels(labels)
        oracle_ok &= (
            verify_path_coloring(g, c).valid
            == oracle_verify_path_coloring(g, c, max_vertices=oracle_limit).valid
        )
    check("verifier agrees with the path-enumeration oracle on random graphs", oracle_ok)

    q2 = hypercube(2)[0]
    q3 = hypercube(3)[0]
    rec_ok = (
        check_s_composite(q2).composite
        and check_s_composite(q3).composite
        and check_s_composite(complete_graph(4)).status == S_PRIME
    )
    check("recognition classifies the square, the cube, and K_4", rec_ok)

    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="node-expansion budget for searches")
    common.add_argument("--seed", type=int, default=DEFAULT_CORPUS_SEED,
                        help="seed for randomized commands")
    common.add_argument("--out", default=None, help="write the main artifact here")
    common.add_argument("--dot", action="store_true",
                        help="also emit a Graphviz description")
    common.add_argument("--max-vertices", type=int, default=None,
                        help="override the size guards on exhaustive scans")

    parser = argparse.ArgumentParser(
        prog="scomposite",
        description="Path colorings, product-of-complete-graphs certificates, "
        "and the one-in-three gadget toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a graph")
    p.add_argument("kind", choices=["complete", "hypercube", "product", "joint",
                                    "extended-joint"])
    p.add_argument("size", nargs="?", type=int,
                   help="vertex count / dimension / cube count, by kind")
    p.add_argument("--n", type=int, help="vertices (complete)")
    p.add_argument("--d", type=int, help="dimension (hypercube)")
    p.add_argument("--a", help="first factor graph file (product)")
    p.add_argument("--b", help="second factor graph file (product)")
    p.add_argument("--m", type=int, help="number of cubes (joint)")
    p.add_argument("--eprime", help="cross-cube edges, e.g. 1:001-2:001,2:010-3:010")
    p.add_argument("--sat", help="instance file to derive the gadget from")
    p.add_argument("--k", type=int, default=2, help="extension parameter")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check-coloring", parents=[common],
                       help="verify a coloring file against a graph file")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_check_coloring)

    p = sub.add_parser("find-coloring", parents=[common],
                       help="search for a path coloring with exactly k colors")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_find_coloring)

    p = sub.add_parser("s-composite", parents=[common],
                       help="decide composite vs prime")
    p.add_argument("graph")
    p.set_defaults(func=cmd_s_composite)

    p = sub.add_parser("reduce", parents=[common],
                       help="write the gadget for an instance")
    p.add_argument("sat")
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve-sat", parents=[common],
                       help="decide an instance via the gadget and/or brute force")
    p.add_argument("sat")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--via", choices=["gadget", "brute", "both"], default="both")
    p.set_defaults(func=cmd_solve_sat)

    p = sub.add_parser("embed", parents=[common],
                       help="embed via a coloring into a product of complete graphs")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("two-label", parents=[common],
                       help="derive and verify the edge 2-labeling of a coloring")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_two_label)

    p = sub.add_parser("validate-gadget", parents=[common],
                       help="re-check a gadget graph against its provenance")
    p.add_argument("graph")
    p.add_argument("provenance")
    p.set_defaults(func=cmd_validate_gadget)

    p = sub.add_parser("selftest", parents=[common],
                       help="run the seeded self-checks")
    p.add_argument("--count", type=int, default=25)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BudgetExhaustedError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
