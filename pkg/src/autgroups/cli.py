"""Command-line entry point.

One subcommand per library operation. Machines are named either by a
builtin zoo entry ("grigorchuk", "f_n(3)") or by a path to a machine file.
Exit codes: 0 success, 1 usage error, 2 domain error; domain errors print
one JSON object {"kind", "message"} on stderr.
"""

import argparse
import io
import json
import os
import sys

from . import action, analysis, autostruct, formats, fsa, geometry, zoo
from .errors import AutgroupsError
from .words import GroupWord


def _render(word: GroupWord) -> str:
    text = word.render()
    return text if text else "1"


def _load_machine(spec: str):
    """(name, machine, zoo entry or None) from a zoo name or file path."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as handle:
            name, machine = formats.parse_machine(handle.read())
        return name, machine, None
    entry = zoo.builtin(spec)
    return entry.name, entry.machine, entry


def _parse_gens(args, machine, entry):
    if args.gens:
        return [GroupWord.parse(part.strip())
                for part in args.gens.split(",") if part.strip()]
    if entry is not None:
        return [GroupWord.parse(name) for name in entry.generators]
    names = [s for i, s in enumerate(machine.states) if i != machine.identity]
    return [GroupWord.parse(name) for name in names]


def _machine_json(name, m):
    trans = {}
    for q, qname in enumerate(m.states):
        row = {}
        for a, letter in enumerate(m.alphabet):
            row[letter] = {"out": m.alphabet[m.out[q][a]],
                           "next": m.states[m.nxt[q][a]]}
        trans[qname] = row
    return {"name": name,
            "alphabet": list(m.alphabet),
            "states": list(m.states),
            "identity": None if m.identity is None
            else m.states[m.identity],
            "transitions": trans}


def _print_json(obj):
    print(json.dumps(obj, sort_keys=True))


def _emit_machine(args, name, machine):
    if args.format == "json":
        _print_json(_machine_json(name, machine))
    elif args.format == "dot":
        sys.stdout.write(formats.machine_to_dot(machine, name))
    else:
        sys.stdout.write(formats.serialize_machine(name, machine))


def _letters_in(machine, text):
    if " " in text:
        return text.split()
    return text


def _letters_out(result):
    if isinstance(result, str):
        return result
    return " ".join(result)


def _join_states(machine_states_word):
    if all(len(s) == 1 for s in machine_states_word):
        return "".join(machine_states_word)
    return ".".join(machine_states_word)


def _growth_output(args, table):
    if args.format == "json":
        _print_json({"radii": list(table.radii),
                     "spheres": list(table.spheres),
                     "balls": list(table.balls),
                     "truncated": table.truncated,
                     "cap": table.cap})
    elif args.format == "csv":
        buf = io.StringIO()
        buf.write("radius,sphere,ball\n")
        for r, s, b in table.rows():
            buf.write("%d,%d,%d\n" % (r, s, b))
        sys.stdout.write(buf.getvalue())
    else:
        print("radius sphere ball")
        for r, s, b in table.rows():
            print("%d %d %d" % (r, s, b))
        print("truncated: %s (cap %d)"
              % ("true" if table.truncated else "false", table.cap))


# -- subcommand handlers -------------------------------------------------


def _cmd_show(args):
    name, machine, _ = _load_machine(args.machine)
    _emit_machine(args, name, machine)


def _cmd_classify(args):
    _, machine, _ = _load_machine(args.machine)
    c = machine.classify()
    if args.format == "json":
        _print_json({"invertible": c.invertible,
                     "reversible": c.reversible,
                     "bireversible": c.bireversible})
    else:
        print("invertible: %s" % str(c.invertible).lower())
        print("reversible: %s" % str(c.reversible).lower())
        print("bireversible: %s" % str(c.bireversible).lower())


def _cmd_min(args):
    _, machine, _ = _load_machine(args.machine)
    canon = machine.at(args.state).minimize()
    _emit_machine(args, "minimized", canon.to_machine())


def _cmd_prod(args):
    _, left, _ = _load_machine(args.machine)
    _, right, _ = _load_machine(args.other)
    _emit_machine(args, "product", left.product(right))


def _cmd_inv(args):
    _, machine, _ = _load_machine(args.machine)
    _emit_machine(args, "inverse", machine.inverse())


def _cmd_dual(args):
    _, machine, _ = _load_machine(args.machine)
    _emit_machine(args, "dual", machine.dual())


def _cmd_apply(args):
    _, machine, _ = _load_machine(args.machine)
    elem = action.evaluate(machine, args.word)
    result = _letters_out(elem.apply(_letters_in(machine, args.input)))
    if args.format == "json":
        _print_json({"output": result})
    else:
        print("output: %s" % result)


def _cmd_wp(args):
    _, machine, _ = _load_machine(args.machine)
    flag = action.is_identity(machine, args.word)
    if args.format == "json":
        _print_json({"identity": flag})
    else:
        print("identity: %s" % str(flag).lower())


def _cmd_order(args):
    _, machine, _ = _load_machine(args.machine)
    result = action.order(machine, args.word, max_exp=args.max_exp,
                          state_cap=args.cap)
    if isinstance(result, action.Finite):
        if args.format == "json":
            _print_json({"order": result.k})
        else:
            print("order: %d" % result.k)
    else:
        if args.format == "json":
            _print_json({"order": None, "max_exp": result.max_exp})
        else:
            print("order: unknown beyond %d" % result.max_exp)


def _cmd_wreath(args):
    _, machine, _ = _load_machine(args.machine)
    dec = action.wreath_decompose(machine, args.word)
    perm = {letter: dec.perm[i] for i, letter in enumerate(machine.alphabet)}
    sections = {letter: _render(dec.sections[letter])
                for letter in machine.alphabet}
    if args.format == "json":
        _print_json({"perm": perm, "sections": sections})
    else:
        print("perm: " + " ".join("%s->%s" % (a, perm[a])
                                  for a in machine.alphabet))
        for a in machine.alphabet:
            print("section %s: %s" % (a, sections[a]))


def _cmd_matrix(args):
    _, machine, _ = _load_machine(args.machine)
    rows = action.matrix_form(machine, args.word)
    if args.format == "json":
        _print_json({"matrix": rows})
    elif args.format == "csv":
        buf = io.StringIO()
        for row in rows:
            buf.write(",".join('"%s"' % entry for entry in row) + "\n")
        sys.stdout.write(buf.getvalue())
    else:
        for row in rows:
            print("\t".join(row))


def _cmd_nucleus(args):
    _, machine, _ = _load_machine(args.machine)
    result = analysis.nucleus(machine, cap=args.cap)
    if isinstance(result, analysis.NotContractingUpTo):
        if args.format == "json":
            _print_json({"contracting": False, "cap": result.cap})
        else:
            print("nucleus: not contracting up to %d elements" % result.cap)
        return
    elems = sorted(result.nucleus.elements,
                   key=lambda c: (len(c.out), c.key()))
    if args.format == "json":
        _print_json({"contracting": True, "cap": args.cap,
                     "count": len(elems),
                     "elements": [formats.serialize_machine(
                         "n%d" % i, c.to_machine())
                         for i, c in enumerate(elems)]})
    else:
        print("nucleus: %d elements (cap %d)" % (len(elems), args.cap))
        for i, c in enumerate(elems):
            m = c.to_machine()
            rows = []
            for q, qname in enumerate(m.states):
                cells = " ".join(
                    "%s->%s %s" % (m.alphabet[a], m.alphabet[m.out[q][a]],
                                   m.states[m.nxt[q][a]])
                    for a in range(len(m.alphabet)))
                rows.append("%s: %s" % (qname, cells))
            print("element %d: %s" % (i, " | ".join(rows)))


def _cmd_activity(args):
    _, machine, _ = _load_machine(args.machine)
    result = analysis.activity_degree(machine)
    if isinstance(result, analysis.Exponential):
        if args.format == "json":
            _print_json({"kind": "exponential"})
        else:
            print("activity: exponential")
    else:
        if args.format == "json":
            _print_json({"kind": "polynomial", "degree": result.degree})
        else:
            print("activity: polynomial degree %d" % result.degree)


def _cmd_orbits(args):
    _, machine, _ = _load_machine(args.machine)
    start = _letters_in(machine, args.start)
    orbit = action.orbit_on_level(machine, args.word, start)
    rendered = [_letters_out(w) for w in orbit]
    if args.format == "json":
        _print_json({"start": rendered[0], "size": len(rendered),
                     "orbit": rendered})
    else:
        print("orbit size: %d" % len(rendered))
        for w in rendered:
            print(w)


def _cmd_dualorbits(args):
    _, machine, _ = _load_machine(args.machine)
    orbits = analysis.dual_orbits(machine, args.level)
    joined = [[_join_states(w) for w in orbit] for orbit in orbits]
    if args.format == "json":
        _print_json({"level": args.level, "count": len(joined),
                     "orbits": joined})
    else:
        print("orbits: %d" % len(joined))
        for orbit in joined:
            print("size %d: %s" % (len(orbit), " ".join(orbit)))


def _cmd_schreier(args):
    _, machine, entry = _load_machine(args.machine)
    gens = _parse_gens(args, machine, entry)
    graph = geometry.schreier_graph(machine, gens, args.level)
    if args.format == "dot":
        sys.stdout.write(formats.schreier_to_dot(graph))
    elif args.format == "json":
        _print_json({"level": graph.level,
                     "generators": list(graph.generators),
                     "vertices": list(graph.vertices),
                     "edges": [list(e) for e in graph.edges]})
    else:
        print("level: %d" % graph.level)
        print("vertices: %d" % len(graph.vertices))
        for src, label, dst in graph.edges:
            print("%s --%s--> %s" % (src, label, dst))


def _cmd_growth(args):
    _, machine, entry = _load_machine(args.machine)
    gens = _parse_gens(args, machine, entry)
    table = geometry.growth(machine, gens, args.radius, cap=args.cap)
    _growth_output(args, table)


def _cmd_transitive(args):
    _, machine, entry = _load_machine(args.machine)
    gens = _parse_gens(args, machine, entry)
    flag = geometry.is_level_transitive(machine, gens, args.level)
    if args.format == "json":
        _print_json({"level": args.level, "transitive": flag})
    else:
        print("transitive: %s" % str(flag).lower())


def _cmd_delta(args):
    _, machine, entry = _load_machine(args.machine)
    gens = _parse_gens(args, machine, entry)
    graph = geometry.schreier_graph(machine, gens, args.level)
    value = geometry.four_point_delta(graph)
    if args.format == "json":
        _print_json({"level": args.level, "delta": value})
    else:
        print("delta: %d" % value)


def _cmd_zoo(args):
    rows = []
    for name in zoo.zoo_names():
        if name == "f_n(k)":
            rows.append({"name": name, "generators": [], "relations": [],
                         "note": "bireversible family; free group of "
                                 "rank 2k+1 on 2k+1 states"})
            continue
        entry = zoo.builtin(name)
        rows.append({"name": name,
                     "generators": list(entry.generators),
                     "relations": [w.render() for w in entry.relations],
                     "note": entry.note})
    if args.format == "json":
        _print_json(rows)
    else:
        for row in rows:
            print("%s: %s" % (row["name"], row["note"]))


def _cmd_cayley(args):
    table = zoo.cyclic_table(args.cyclic)
    machine = zoo.cayley_machine(table)
    _emit_machine(args, "cayley_c%d" % args.cyclic, machine)


def _parse_matrix(text):
    rows = [part.strip() for part in text.split(";") if part.strip()]
    return [[int(cell) for cell in row.split(",")] for row in rows]


def _parse_vector(text):
    return [int(cell) for cell in text.split(",")]


def _cmd_affine(args):
    matrix = _parse_matrix(args.matrix)
    offset = _parse_vector(args.offset)
    initial = zoo.affine_machine(args.dim, matrix, offset, cap=args.cap)
    if args.format == "json":
        obj = _machine_json("affine", initial.machine)
        obj["start"] = initial.start_name
        _print_json(obj)
    else:
        sys.stdout.write(formats.serialize_machine("affine", initial.machine))
        sys.stdout.write("# start %s\n" % initial.start_name)


def _cmd_auto_wp(args):
    structure = autostruct.z2_structure()
    form = autostruct.normal_form(structure, args.word)
    identity = not form
    if args.format == "json":
        _print_json({"identity": identity, "normal_form": _render(form)})
    else:
        print("identity: %s" % str(identity).lower())
        print("normal form: %s" % _render(form))


def _cmd_auto_unique(args):
    structure = autostruct.z2_structure()
    unique = autostruct.make_unique(structure)
    before = fsa.enumerate_words(structure.language, fsa.MAIN, args.len_max)
    after = fsa.enumerate_words(unique.language, fsa.MAIN, args.len_max)
    unchanged = before == after
    if args.format == "json":
        _print_json({"max_len": args.len_max, "before": len(before),
                     "after": len(after), "unchanged": unchanged})
    else:
        print("words before: %d" % len(before))
        print("words after: %d" % len(after))
        print("unchanged up to length %d: %s"
              % (args.len_max, str(unchanged).lower()))


def _cmd_dehn(args):
    p = autostruct.SurfaceGroupPresentation(args.genus)
    reduced = autostruct.dehn_reduce(p, args.word)
    if args.format == "json":
        _print_json({"reduced": _render(reduced),
                     "identity": not reduced})
    else:
        print("reduced: %s" % _render(reduced))


def _cmd_series(args):
    coeffs = autostruct.cannon_series(args.genus, args.terms)
    print(json.dumps(coeffs))


def _cmd_surface_growth(args):
    table = autostruct.surface_growth_bfs(args.genus, args.radius,
                                          cap=args.cap)
    _growth_output(args, table)


def _cmd_ft_check(args):
    structure = autostruct.z2_structure()
    result = autostruct.fellow_travel_check(structure, args.k, args.len_max,
                                            autostruct.z2_metric)
    if isinstance(result, autostruct.Holds):
        if args.format == "json":
            _print_json({"holds": True})
        else:
            print("fellow traveler: holds")
    else:
        if args.format == "json":
            _print_json({"holds": False, "u": _render(result.u),
                         "v": _render(result.v), "j": result.j})
        else:
            print("fellow traveler: counterexample u=%s v=%s j=%d"
                  % (_render(result.u), _render(result.v), result.j))


# -- parser --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _formats(sub, *choices):
    sub.add_argument("--format", choices=choices, default=choices[0])


def build_parser():
    parser = _Parser(prog="autgroups",
                     description="Groups defined by Mealy machines.")
    subs = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text, machine=True):
        sub = subs.add_parser(name, help=help_text)
        sub.set_defaults(func=handler)
        if machine:
            sub.add_argument("--machine", required=True,
                             help="zoo name or machine file path")
        return sub

    sub = add("show", _cmd_show, "print a machine")
    _formats(sub, "text", "json", "dot")

    sub = add("classify", _cmd_classify,
              "invertible / reversible / bireversible")
    _formats(sub, "text", "json")

    sub = add("min", _cmd_min, "minimize from a start state")
    sub.add_argument("--state", required=True)
    _formats(sub, "text", "json", "dot")

    sub = add("prod", _cmd_prod, "product machine (right factor acts first)")
    sub.add_argument("--other", required=True)
    _formats(sub, "text", "json", "dot")

    sub = add("inv", _cmd_inv, "inverse machine")
    _formats(sub, "text", "json", "dot")

    sub = add("dual", _cmd_dual, "dual machine")
    _formats(sub, "text", "json", "dot")

    sub = add("apply", _cmd_apply, "transduce a word")
    sub.add_argument("--word", required=True)
    sub.add_argument("--input", required=True)
    _formats(sub, "text", "json")

    sub = add("wp", _cmd_wp, "is the word the identity element?")
    sub.add_argument("--word", required=True)
    _formats(sub, "text", "json")

    sub = add("order", _cmd_order, "order of the element")
    sub.add_argument("--word", required=True)
    sub.add_argument("--max-exp", type=int, default=action.DEFAULT_MAX_EXP)
    sub.add_argument("--cap", type=int, default=action.DEFAULT_STATE_CAP,
                     help="state cap for canonical machines")
    _formats(sub, "text", "json")

    sub = add("wreath", _cmd_wreath, "root permutation and sections")
    sub.add_argument("--word", required=True)
    _formats(sub, "text", "json")

    sub = add("matrix", _cmd_matrix, "matrix form of the wreath recursion")
    sub.add_argument("--word", required=True)
    _formats(sub, "text", "json", "csv")

    sub = add("nucleus", _cmd_nucleus, "nucleus, or not-contracting verdict")
    sub.add_argument("--cap", type=int, default=analysis.NUCLEUS_CAP)
    _formats(sub, "text", "json")

    sub = add("activity", _cmd_activity, "activity class of the machine")
    _formats(sub, "text", "json")

    sub = add("orbits", _cmd_orbits, "orbit of a level word under an element")
    sub.add_argument("--word", required=True)
    sub.add_argument("--start", required=True)
    _formats(sub, "text", "json")

    sub = add("dualorbits", _cmd_dualorbits, "dual action orbits on words")
    sub.add_argument("--level", type=int, required=True)
    _formats(sub, "text", "json")

    sub = add("schreier", _cmd_schreier, "level action graph")
    sub.add_argument("--level", type=int, required=True)
    sub.add_argument("--gens", help="comma-separated generator words")
    _formats(sub, "text", "json", "dot")

    sub = add("growth", _cmd_growth, "sphere and ball sizes")
    sub.add_argument("--radius", type=int, required=True)
    sub.add_argument("--gens")
    sub.add_argument("--cap", type=int, default=geometry.GROWTH_ELEMENT_CAP)
    _formats(sub, "text", "json", "csv")

    sub = add("transitive", _cmd_transitive, "level transitivity")
    sub.add_argument("--level", type=int, required=True)
    sub.add_argument("--gens")
    _formats(sub, "text", "json")

    sub = add("delta", _cmd_delta, "four-point hyperbolicity defect")
    sub.add_argument("--level", type=int, required=True)
    sub.add_argument("--gens")
    _formats(sub, "text", "json")

    sub = add("zoo", _cmd_zoo, "list builtin machines", machine=False)
    _formats(sub, "text", "json")

    sub = add("cayley", _cmd_cayley, "Cayley machine of a cyclic group",
              machine=False)
    sub.add_argument("--cyclic", type=int, required=True)
    _formats(sub, "text", "json", "dot")

    sub = add("affine", _cmd_affine, "binary affine-map machine",
              machine=False)
    sub.add_argument("--dim", type=int, required=True)
    sub.add_argument("--matrix", required=True,
                     help="rows separated by ';', entries by ','")
    sub.add_argument("--offset", required=True, help="entries by ','")
    sub.add_argument("--cap", type=int, default=zoo.AFFINE_STATE_CAP)
    _formats(sub, "text", "json")

    sub = add("auto-wp", _cmd_auto_wp,
              "word problem in the automatic structure", machine=False)
    sub.add_argument("--word", required=True)
    _formats(sub, "text", "json")

    sub = add("auto-unique", _cmd_auto_unique,
              "shortlex uniqueness of the structure", machine=False)
    sub.add_argument("--len-max", type=int, default=6)
    _formats(sub, "text", "json")

    sub = add("dehn", _cmd_dehn, "Dehn-reduce a surface-group word",
              machine=False)
    sub.add_argument("--genus", type=int, required=True)
    sub.add_argument("--word", required=True)
    _formats(sub, "text", "json")

    sub = add("series", _cmd_series, "surface growth series coefficients",
              machine=False)
    sub.add_argument("--genus", type=int, required=True)
    sub.add_argument("--terms", type=int, required=True)

    sub = add("surface-growth", _cmd_surface_growth,
              "surface ball sizes by Dehn BFS", machine=False)
    sub.add_argument("--genus", type=int, required=True)
    sub.add_argument("--radius", type=int, required=True)
    sub.add_argument("--cap", type=int,
                     default=autostruct.SURFACE_ELEMENT_CAP)
    _formats(sub, "text", "json", "csv")

    sub = add("ft-check", _cmd_ft_check, "fellow-traveler check",
              machine=False)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--len-max", type=int, required=True)
    _formats(sub, "text", "json")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        result = args.func(args)
    except AutgroupsError as exc:
        sys.stderr.write(json.dumps(
            {"kind": exc.kind, "message": str(exc)}, sort_keys=True) + "\n")
        return 2
    return result or 0


if __name__ == "__main__":
    sys.exit(main())
