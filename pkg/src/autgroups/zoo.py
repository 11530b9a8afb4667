"""Built-in machines plus the Cayley-automaton and integer affine
constructors.

The named machines are shipped as text files in the package data directory
and parsed on demand; ``builtin`` is the single entry point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from .errors import FormatError, NotInvertibleError, ResourceCapError, \
    StructureError
from .formats import parse_machine
from .mealy import InitialMachine, MealyMachine
from .words import GroupWord

AFFINE_STATE_CAP = 10 ** 5


@dataclass(frozen=True)
class ZooEntry:
    name: str
    machine: MealyMachine
    generators: tuple
    relations: tuple
    note: str


_NAMED = ("adding", "grigorchuk", "aleshin_full", "gupta_sidki", "bs13",
          "lamplighter", "basilica", "e1", "f1")

_GENERATORS = {
    "adding": ("t",),
    "grigorchuk": ("a", "b", "c", "d"),
    "aleshin_full": ("a", "b", "c", "d", "A", "B", "u"),
    "gupta_sidki": ("a", "t"),
    "bs13": ("s0", "s1", "s2"),
    "lamplighter": ("p", "q"),
    "basilica": ("a", "b"),
    "e1": ("a", "b", "c"),
    "f1": ("a", "b", "c"),
}

# Words over the generators that evaluate to the identity; test-enforced.
_RELATIONS = {
    "adding": (),
    "grigorchuk": ("a^2", "b^2", "c^2", "d^2", "b c d", "(a d)^4"),
    "aleshin_full": ("a^2", "b^2", "c^2", "d^2", "b c d", "(a d)^4",
                     "A^2", "u^2", "B^4"),
    "gupta_sidki": ("a^3", "t^3"),
    # dictionary t := s0, lamp... a := s0^-1 s1 turns s-states into the
    # affine maps v -> 3v + q; then a^t = a^3.
    "bs13": ("(s0' s1)^s0 (s0' s1)^-3",),
    "lamplighter": ("(p' q)^2", "[p' q, (p' q)^p]", "[p' q, (p' q)^(p^2)]"),
    # base relator of the L-presentation and its image under a -> b -> a^2;
    # with a = (1,b)s and b = (1,a), b^a moves only the left subtree while
    # b moves only the right one, so they commute.
    "basilica": ("[b, b^a]", "[a^2, (a^2)^b]"),
    "e1": ("a^2", "b^2", "c^2"),
    "f1": (),
}

_NOTES = {
    "adding": "binary odometer; generates the infinite cyclic group",
    "grigorchuk": "infinite 2-torsion group of intermediate growth",
    "aleshin_full": "torsion automaton whose black part is the grigorchuk "
                    "machine; <A, B> is an infinite torsion group",
    "gupta_sidki": "infinite 3-torsion group on the ternary tree",
    "bs13": "solvable Baumslag-Solitar group BS(1,3) acting by v -> 3v + q",
    "lamplighter": "lamplighter group (Z/2 wr Z) as the Cayley automaton "
                   "of Z/2",
    "basilica": "basilica group; contracting, 7-element nucleus",
    "e1": "bireversible; free product of three groups of order 2",
    "f1": "bireversible; free group of rank 3",
}

_F_FAMILY = re.compile(r"f_n\((\d+)\)$")


def _load_named(name: str) -> MealyMachine:
    text = resources.files("autgroups").joinpath("data", name + ".mealy") \
        .read_text(encoding="utf-8")
    _, machine = parse_machine(text)
    return machine


def _f_family(k: int) -> MealyMachine:
    """2k+1 states: a, b as in f1, then a copying chain c, d1, ... back
    to a."""
    chain = ["c"] + ["d%d" % i for i in range(1, 2 * k - 1)]
    table = {
        "a": {"0": ("1", "b"), "1": ("0", "c")},
        "b": {"0": ("1", "c"), "1": ("0", "b")},
    }
    for state, target in zip(chain, chain[1:] + ["a"]):
        table[state] = {"0": ("0", target), "1": ("1", target)}
    return MealyMachine.from_table(("0", "1"), table)


def builtin(name: str) -> ZooEntry:
    match = _F_FAMILY.match(name)
    if match:
        k = int(match.group(1))
        if k < 1:
            raise FormatError("f_n(k) needs k >= 1")
        machine = _f_family(k)
        return ZooEntry(name, machine, machine.states, (),
                        "bireversible; free group of rank %d" % (2 * k + 1))
    if name not in _NAMED:
        raise FormatError("unknown builtin %r; choose from %s or f_n(k)"
                          % (name, ", ".join(_NAMED)))
    machine = _load_named(name)
    relations = tuple(GroupWord.parse(r) for r in _RELATIONS[name])
    return ZooEntry(name, machine, _GENERATORS[name], relations, _NOTES[name])


def zoo_names():
    return _NAMED + ("f_n(k)",)


# -- Cayley automata ------------------------------------------------------


def cyclic_table(n: int) -> dict:
    """Multiplication table of Z/n with elements named "0" .. "n-1"."""
    if n < 1:
        raise FormatError("cyclic group order must be >= 1")
    names = [str(i) for i in range(n)]
    return {(names[i], names[j]): names[(i + j) % n]
            for i in range(n) for j in range(n)}


def cayley_machine(mult_table: dict) -> MealyMachine:
    """The automaton tau(q, a) = (qa, qa) of a finite group.

    ``mult_table`` maps (g, h) to g*h over string element names; it is
    checked to be a genuine group table.
    """
    elements = []
    seen = set()
    for g, h in mult_table:
        for x in (g, h):
            if x not in seen:
                seen.add(x)
                elements.append(x)
    if not elements:
        raise StructureError("empty multiplication table")
    for pair, value in mult_table.items():
        if value not in seen:
            raise StructureError("product %r * %r = %r leaves the element set"
                                 % (pair[0], pair[1], value))
    for g in elements:
        for h in elements:
            if (g, h) not in mult_table:
                raise StructureError("table is missing %r * %r" % (g, h))
    identity = None
    for e in elements:
        if all(mult_table[(e, g)] == g and mult_table[(g, e)] == g
               for g in elements):
            identity = e
            break
    if identity is None:
        raise StructureError("table has no identity element")
    for g in elements:
        if not any(mult_table[(g, h)] == identity for h in elements):
            raise StructureError("element %r has no inverse" % (g,))
    for g in elements:
        for h in elements:
            for k in elements:
                if (mult_table[(mult_table[(g, h)], k)]
                        != mult_table[(g, mult_table[(h, k)])]):
                    raise StructureError(
                        "table is not associative at (%r, %r, %r)" % (g, h, k))
    index = {g: i for i, g in enumerate(elements)}
    out = []
    nxt = []
    for g in elements:
        row = [index[mult_table[(g, a)]] for a in elements]
        out.append(row)
        nxt.append(list(row))
    return MealyMachine(tuple(elements), tuple(elements), out, nxt, None)


# -- integer affine maps --------------------------------------------------


def _as_matrix(n, a):
    if n >= 1 and all(isinstance(x, int) for x in a):
        if n == 1 and len(a) == 1:
            a = [a]
        else:
            raise FormatError("matrix must be a list of %d rows" % n)
    rows = [list(row) for row in a]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise FormatError("matrix must be %d x %d" % (n, n))
    return [[int(x) for x in row] for row in rows]


def _as_vector(n, b):
    vec = [int(x) for x in b]
    if len(vec) != n:
        raise FormatError("offset must have %d entries" % n)
    return vec


def _int_det(matrix) -> int:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _int_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def _offset_name(offset) -> str:
    parts = [str(c) if c >= 0 else "m%d" % -c for c in offset]
    return "t_" + "_".join(parts)


def affine_machine(n: int, a, b, cap: int = AFFINE_STATE_CAP
                   ) -> InitialMachine:
    """The automaton of z -> a z + b on n-vectors of binary integers.

    Letters are bit vectors (one binary digit per coordinate, least
    significant first along the word). States are the offset vectors m of
    the maps z -> a z + m reachable from m = b: on input x the output is
    y = (a x + m) mod 2 and the next offset is (a x + m - y) / 2. The
    closure is finite whenever det(a) is odd.
    """
    matrix = _as_matrix(n, a)
    start = tuple(_as_vector(n, b))
    if _int_det(matrix) % 2 == 0:
        raise NotInvertibleError("matrix determinant must be odd")
    letters = [tuple((v >> (n - 1 - i)) & 1 for i in range(n))
               for v in range(2 ** n)]
    letter_names = tuple("".join(map(str, x)) for x in letters)
    index = {start: 0}
    offsets = [start]
    out = []
    nxt = []
    pos = 0
    while pos < len(offsets):
        m = offsets[pos]
        orow = []
        nrow = []
        for x in letters:
            s = [sum(matrix[i][j] * x[j] for j in range(n)) + m[i]
                 for i in range(n)]
            y = tuple(c & 1 for c in s)
            succ = tuple((c - yc) // 2 for c, yc in zip(s, y))
            if succ not in index:
                if len(offsets) >= cap:
                    raise ResourceCapError(
                        "affine closure exceeded %d states" % cap, cap=cap)
                index[succ] = len(offsets)
                offsets.append(succ)
            orow.append(letters.index(y))
            nrow.append(index[succ])
        out.append(orow)
        nxt.append(nrow)
        pos += 1
    names = tuple(_offset_name(m) for m in offsets)
    machine = MealyMachine(letter_names, names, out, nxt, None)
    return InitialMachine(machine, 0)
