"""Text file formats and DOT export.

Machine files::

    mealy adding
    alphabet 0 1
    states t e
    identity e
    t: 0 -> 1 e ; 1 -> 0 t
    e: 0 -> 0 e ; 1 -> 1 e

Acceptor files use the same layout with ``fsa <name>``, an ``initial`` line,
one ``accept <label>: s1 s2 ...`` line per accepting subset, and partial
transition lines (a missing transition rejects). ``#`` starts a comment.
Serialization is canonical: parse(serialize(x)) reproduces serialize(x)
byte for byte.
"""

from __future__ import annotations

from .errors import FormatError
from .fsa import Acceptor
from .mealy import MealyMachine


def _content_lines(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_machine(text: str):
    """Returns (name, MealyMachine)."""
    name = None
    alphabet = None
    states = None
    identity = None
    rows = {}
    for line in _content_lines(text):
        head, _, rest = line.partition(" ")
        if head == "mealy":
            name = rest.strip()
        elif head == "alphabet":
            alphabet = tuple(rest.split())
        elif head == "states":
            states = tuple(rest.split())
        elif head == "identity":
            identity = rest.strip()
        elif line.split(":", 1)[0].strip() and ":" in line:
            state, _, body = line.partition(":")
            state = state.strip()
            table = rows.setdefault(state, {})
            for chunk in body.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                try:
                    inp, arrow = chunk.split("->")
                    out_letter, nxt = arrow.split()
                except ValueError:
                    raise FormatError("bad transition %r" % chunk) from None
                table[inp.strip()] = (out_letter, nxt)
        else:
            raise FormatError("cannot parse line %r" % line)
    if name is None or alphabet is None or states is None:
        raise FormatError("machine file needs mealy/alphabet/states headers")
    missing = [s for s in states if s not in rows]
    if missing:
        raise FormatError("no transitions for states %r" % (missing,))
    extra = [s for s in rows if s not in states]
    if extra:
        raise FormatError("transitions for undeclared states %r" % (extra,))
    table = {s: rows[s] for s in states}
    return name, MealyMachine.from_table(alphabet, table, identity)


def serialize_machine(name: str, m: MealyMachine) -> str:
    lines = ["mealy %s" % name,
             "alphabet %s" % " ".join(m.alphabet),
             "states %s" % " ".join(m.states)]
    if m.identity is not None:
        lines.append("identity %s" % m.states[m.identity])
    for q, qname in enumerate(m.states):
        parts = []
        for a, letter in enumerate(m.alphabet):
            parts.append("%s -> %s %s" % (
                letter, m.alphabet[m.out[q][a]], m.states[m.nxt[q][a]]))
        lines.append("%s: %s" % (qname, " ; ".join(parts)))
    return "\n".join(lines) + "\n"


def parse_acceptor(text: str):
    """Returns (name, Acceptor)."""
    name = None
    alphabet = None
    states = None
    initial = None
    accepting = {}
    transitions = {}
    for line in _content_lines(text):
        head, _, rest = line.partition(" ")
        if head == "fsa":
            name = rest.strip()
        elif head == "alphabet":
            alphabet = tuple(rest.split())
        elif head == "states":
            states = tuple(rest.split())
        elif head == "initial":
            initial = rest.strip()
        elif head == "accept":
            label, _, members = rest.partition(":")
            accepting[label.strip()] = tuple(members.split())
        elif ":" in line:
            state, _, body = line.partition(":")
            state = state.strip()
            for chunk in body.split(";"):
                chunk = chunk.strip()
                if not chunk:
                    continue
                try:
                    letter, nxt = (part.strip()
                                   for part in chunk.split("->"))
                except ValueError:
                    raise FormatError("bad transition %r" % chunk) from None
                transitions[(state, letter)] = nxt
        else:
            raise FormatError("cannot parse line %r" % line)
    if None in (name, alphabet, states, initial):
        raise FormatError("acceptor file needs fsa/alphabet/states/initial")
    return name, Acceptor.from_names(alphabet, states, transitions, initial,
                                     accepting)


def serialize_acceptor(name: str, a: Acceptor) -> str:
    lines = ["fsa %s" % name,
             "alphabet %s" % " ".join(a.alphabet),
             "states %s" % " ".join(a.states),
             "initial %s" % a.states[a.initial]]
    for label in sorted(a.accepting):
        members = " ".join(a.states[i] for i in sorted(a.accepting[label]))
        lines.append("accept %s: %s" % (label, members))
    for q, qname in enumerate(a.states):
        parts = []
        for i, letter in enumerate(a.alphabet):
            target = a.transitions.get((q, i))
            if target is not None:
                parts.append("%s -> %s" % (letter, a.states[target]))
        if parts:
            lines.append("%s: %s" % (qname, " ; ".join(parts)))
    return "\n".join(lines) + "\n"


# -- DOT export ----------------------------------------------------------


def _dot_quote(s):
    return '"%s"' % str(s).replace("\\", "\\\\").replace('"', '\\"')


def machine_to_dot(m: MealyMachine, name="machine") -> str:
    lines = ["digraph %s {" % _dot_quote(name), "  rankdir=LR;"]
    for q, qname in enumerate(m.states):
        shape = "doublecircle" if q == m.identity else "circle"
        lines.append("  %s [shape=%s];" % (_dot_quote(qname), shape))
    for q, qname in enumerate(m.states):
        for a, letter in enumerate(m.alphabet):
            label = "%s|%s" % (letter, m.alphabet[m.out[q][a]])
            lines.append("  %s -> %s [label=%s];" % (
                _dot_quote(qname), _dot_quote(m.states[m.nxt[q][a]]),
                _dot_quote(label)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def acceptor_to_dot(a: Acceptor, name="acceptor") -> str:
    accept_all = set()
    for members in a.accepting.values():
        accept_all.update(members)
    lines = ["digraph %s {" % _dot_quote(name), "  rankdir=LR;"]
    for q, qname in enumerate(a.states):
        shape = "doublecircle" if q in accept_all else "circle"
        lines.append("  %s [shape=%s];" % (_dot_quote(qname), shape))
    lines.append("  __start [shape=point];")
    lines.append("  __start -> %s;" % _dot_quote(a.states[a.initial]))
    for (q, i), target in sorted(a.transitions.items()):
        lines.append("  %s -> %s [label=%s];" % (
            _dot_quote(a.states[q]), _dot_quote(a.states[target]),
            _dot_quote(a.alphabet[i])))
    lines.append("}")
    return "\n".join(lines) + "\n"


def schreier_to_dot(graph, name="schreier") -> str:
    lines = ["digraph %s {" % _dot_quote(name)]
    for v in graph.vertices:
        lines.append("  %s;" % _dot_quote(v))
    for src, label, dst in graph.edges:
        lines.append("  %s -> %s [label=%s];" % (
            _dot_quote(src), _dot_quote(dst), _dot_quote(label)))
    lines.append("}")
    return "\n".join(lines) + "\n"
