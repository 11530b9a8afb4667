"""Complete deterministic letter-to-letter transducers and their algebra.

A machine is a total map tau: Q x A -> A x Q. Transitions are stored as two
integer row tables: ``out[q][a]`` is the output letter index and ``nxt[q][a]``
the next state index. Machines are immutable; every operation returns a new
machine.

Composition convention: the product state (q, r) acts as "r first, then q",
i.e. (q, r) . i = q . (r . i). Word evaluation in the action module folds
products so that the leftmost symbol of a word acts first on the input.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import AlphabetMismatchError, FormatError, NotInvertibleError


def _flip_inverse_name(name: str) -> str:
    if name.endswith("^-1"):
        return name[:-3]
    return name + "^-1"


class MealyMachine:
    __slots__ = ("alphabet", "states", "out", "nxt", "identity")

    def __init__(self, alphabet, states, out, nxt, identity=None):
        self.alphabet = tuple(alphabet)
        self.states = tuple(states)
        self.out = tuple(tuple(row) for row in out)
        self.nxt = tuple(tuple(row) for row in nxt)
        self.identity = identity
        self._validate()

    def _validate(self):
        n_a = len(self.alphabet)
        n_q = len(self.states)
        if n_a < 1:
            raise FormatError("alphabet must be nonempty")
        if len(set(self.alphabet)) != n_a:
            raise FormatError("duplicate alphabet letters")
        if len(set(self.states)) != n_q:
            raise FormatError("duplicate state names")
        if len(self.out) != n_q or len(self.nxt) != n_q:
            raise FormatError("transition tables must have one row per state")
        for q in range(n_q):
            if len(self.out[q]) != n_a or len(self.nxt[q]) != n_a:
                raise FormatError(
                    "state %r is missing transitions" % (self.states[q],))
            for a in range(n_a):
                if not 0 <= self.out[q][a] < n_a:
                    raise FormatError("output letter out of range")
                if not 0 <= self.nxt[q][a] < n_q:
                    raise FormatError("next state out of range")
        if self.identity is not None:
            e = self.identity
            if not 0 <= e < n_q:
                raise FormatError("identity state out of range")
            for a in range(n_a):
                if self.out[e][a] != a or self.nxt[e][a] != e:
                    raise FormatError(
                        "designated identity state %r does not copy and loop"
                        % (self.states[e],))

    @classmethod
    def from_table(cls, alphabet, table, identity=None):
        """Build from {state: {letter: (out_letter, next_state)}}."""
        alphabet = tuple(alphabet)
        states = tuple(table)
        aidx = {a: i for i, a in enumerate(alphabet)}
        qidx = {q: i for i, q in enumerate(states)}
        out = []
        nxt = []
        for q in states:
            row = table[q]
            orow = []
            nrow = []
            for a in alphabet:
                if a not in row:
                    raise FormatError("state %r has no transition on %r" % (q, a))
                o, r = row[a]
                if o not in aidx:
                    raise FormatError("unknown output letter %r" % (o,))
                if r not in qidx:
                    raise FormatError("unknown next state %r" % (r,))
                orow.append(aidx[o])
                nrow.append(qidx[r])
            out.append(orow)
            nxt.append(nrow)
        ident = qidx[identity] if identity is not None else None
        return cls(alphabet, states, out, nxt, ident)

    # -- lookups ---------------------------------------------------------

    def state_index(self, name):
        try:
            return self.states.index(name)
        except ValueError:
            raise FormatError("unknown state %r" % (name,)) from None

    def letter_index(self, name):
        try:
            return self.alphabet.index(name)
        except ValueError:
            raise FormatError("unknown letter %r" % (name,)) from None

    def at(self, state) -> "InitialMachine":
        idx = state if isinstance(state, int) else self.state_index(state)
        return InitialMachine(self, idx)

    def step(self, state, letter):
        """(output letter name, next state name) for named state/letter."""
        q = self.state_index(state)
        a = self.letter_index(letter)
        return self.alphabet[self.out[q][a]], self.states[self.nxt[q][a]]

    # -- algebra ---------------------------------------------------------

    def is_invertible(self) -> bool:
        full = frozenset(range(len(self.alphabet)))
        return all(frozenset(row) == full for row in self.out)

    def inverse(self) -> "MealyMachine":
        """The machine with transitions q^-1 . o = i . r^-1."""
        if not self.is_invertible():
            raise NotInvertibleError("machine is not invertible")
        n_a = len(self.alphabet)
        out = []
        nxt = []
        for q in range(len(self.states)):
            orow = [0] * n_a
            nrow = [0] * n_a
            for a in range(n_a):
                o = self.out[q][a]
                orow[o] = a
                nrow[o] = self.nxt[q][a]
            out.append(orow)
            nxt.append(nrow)
        names = tuple(_flip_inverse_name(s) for s in self.states)
        return MealyMachine(self.alphabet, names, out, nxt, self.identity)

    def product(self, other: "MealyMachine") -> "MealyMachine":
        """State (q, r) acts as r's transformation followed by q's."""
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError(
                "product requires identical alphabets")
        n_a = len(self.alphabet)
        n_r = len(other.states)
        names = []
        out = []
        nxt = []
        for q, qn in enumerate(self.states):
            for r, rn in enumerate(other.states):
                names.append("(%s,%s)" % (qn, rn))
                orow = []
                nrow = []
                for i in range(n_a):
                    o1 = other.out[r][i]
                    r1 = other.nxt[r][i]
                    orow.append(self.out[q][o1])
                    nrow.append(self.nxt[q][o1] * n_r + r1)
                out.append(orow)
                nxt.append(nrow)
        ident = None
        if self.identity is not None and other.identity is not None:
            ident = self.identity * n_r + other.identity
        return MealyMachine(self.alphabet, names, out, nxt, ident)

    def dual(self) -> "MealyMachine":
        """Exchange states and letters: q . i = o . r becomes i . q = r . o."""
        out = []
        nxt = []
        for i in range(len(self.alphabet)):
            orow = []
            nrow = []
            for q in range(len(self.states)):
                orow.append(self.nxt[q][i])
                nrow.append(self.out[q][i])
            out.append(orow)
            nxt.append(nrow)
        return MealyMachine(self.states, self.alphabet, out, nxt, None)

    def classify(self) -> "Classification":
        invertible = self.is_invertible()
        reversible = self.dual().is_invertible()
        bireversible = (invertible and reversible
                        and self.inverse().dual().is_invertible())
        return Classification(invertible, reversible, bireversible)

    # -- transduction ----------------------------------------------------

    def apply_from(self, start: int, word):
        """Transduce a word (str or sequence of letter names) from a state."""
        as_str = isinstance(word, str)
        if as_str:
            letters = list(word)
        else:
            letters = list(word)
        aidx = {a: i for i, a in enumerate(self.alphabet)}
        q = start
        result = []
        for a in letters:
            if a not in aidx:
                raise FormatError("letter %r not in alphabet" % (a,))
            i = aidx[a]
            result.append(self.alphabet[self.out[q][i]])
            q = self.nxt[q][i]
        if as_str:
            return "".join(result)
        return result


@dataclass(frozen=True)
class Classification:
    invertible: bool
    reversible: bool
    bireversible: bool


@dataclass(frozen=True)
class InitialMachine:
    machine: MealyMachine
    start: int

    def apply(self, word):
        return self.machine.apply_from(self.start, word)

    def minimize(self) -> "CanonicalMachine":
        return minimize(self)

    @property
    def start_name(self):
        return self.machine.states[self.start]


def identity_machine(alphabet) -> MealyMachine:
    alphabet = tuple(alphabet)
    n = len(alphabet)
    return MealyMachine(alphabet, ("e",), [list(range(n))], [[0] * n], 0)


def disjoint_union(m: MealyMachine, n: MealyMachine) -> MealyMachine:
    """One machine holding the states of both (same alphabet)."""
    if m.alphabet != n.alphabet:
        raise AlphabetMismatchError("union requires identical alphabets")
    if set(m.states) & set(n.states):
        raise FormatError("state names collide in union")
    shift = len(m.states)
    out = list(m.out) + list(n.out)
    nxt = list(m.nxt) + [tuple(r + shift for r in row) for row in n.nxt]
    return MealyMachine(m.alphabet, m.states + n.states, out, nxt, m.identity)


def signed_closure(m: MealyMachine) -> MealyMachine:
    """The disjoint union of m and its inverse."""
    return disjoint_union(m, m.inverse())


def reachable_product(outer: InitialMachine,
                      inner: InitialMachine) -> InitialMachine:
    """Product restricted to pairs reachable from (outer.start, inner.start).

    Same semantics as ``product`` (inner acts first), but the state set is
    discovered by search, which avoids the full |Q|x|R| table when composing
    large canonical machines.
    """
    mo, mi = outer.machine, inner.machine
    if mo.alphabet != mi.alphabet:
        raise AlphabetMismatchError("product requires identical alphabets")
    n_a = len(mo.alphabet)
    index = {}
    pairs = []

    def idx(q, r):
        key = (q, r)
        if key not in index:
            index[key] = len(pairs)
            pairs.append(key)
        return index[key]

    start = idx(outer.start, inner.start)
    out = []
    nxt = []
    pos = 0
    while pos < len(pairs):
        q, r = pairs[pos]
        orow = []
        nrow = []
        for i in range(n_a):
            o1 = mi.out[r][i]
            nrow.append(idx(mo.nxt[q][o1], mi.nxt[r][i]))
            orow.append(mo.out[q][o1])
        out.append(orow)
        nxt.append(nrow)
        pos += 1
    names = tuple("(%s,%s)" % (mo.states[q], mi.states[r]) for q, r in pairs)
    machine = MealyMachine(mo.alphabet, names, out, nxt, None)
    return InitialMachine(machine, start)


# -- minimization and canonical forms -----------------------------------


def behavior_partition(machine: MealyMachine):
    """State -> block id; blocks are classes of behavioral equivalence.

    Hopcroft-style partition refinement: start from the partition by output
    row, then split by predecessors of blocks, processing the smaller half
    first. O(|A| |Q| log |Q|).
    """
    n = len(machine.states)
    n_a = len(machine.alphabet)
    sig_ids = {}
    block_of = [0] * n
    partition = []
    for q in range(n):
        row = machine.out[q]
        if row not in sig_ids:
            sig_ids[row] = len(partition)
            partition.append([])
        b = sig_ids[row]
        block_of[q] = b
        partition[b].append(q)

    pre = [[[] for _ in range(n)] for _ in range(n_a)]
    for p in range(n):
        for a in range(n_a):
            pre[a][machine.nxt[p][a]].append(p)

    work = deque()
    in_work = set()
    for b in range(len(partition)):
        for a in range(n_a):
            work.append((b, a))
            in_work.add((b, a))

    while work:
        b, a = work.popleft()
        in_work.discard((b, a))
        splitter = list(partition[b])
        movers = set()
        for q in splitter:
            movers.update(pre[a][q])
        touched = {}
        for p in movers:
            touched.setdefault(block_of[p], []).append(p)
        for j, inter in touched.items():
            if len(inter) == len(partition[j]):
                continue
            inter_set = set(inter)
            rest = [q for q in partition[j] if q not in inter_set]
            partition[j] = inter
            k = len(partition)
            partition.append(rest)
            for q in rest:
                block_of[q] = k
            for c in range(n_a):
                if (j, c) in in_work:
                    work.append((k, c))
                    in_work.add((k, c))
                else:
                    small = j if len(inter) <= len(rest) else k
                    work.append((small, c))
                    in_work.add((small, c))
    return block_of, partition


class CanonicalMachine:
    """Minimized, reachable, BFS-renumbered initial machine.

    Two canonical machines are structurally equal iff the initial machines
    they came from are behaviorally equal, so ``key()`` doubles as an exact
    identity for group elements.
    """

    __slots__ = ("alphabet", "out", "nxt", "_key")

    def __init__(self, alphabet, out, nxt):
        self.alphabet = tuple(alphabet)
        self.out = tuple(tuple(row) for row in out)
        self.nxt = tuple(tuple(row) for row in nxt)
        self._key = None

    @property
    def start(self):
        return 0

    @property
    def n_states(self):
        return len(self.out)

    @property
    def states(self):
        return tuple("q%d" % i for i in range(len(self.out)))

    def key(self) -> bytes:
        if self._key is None:
            self._key = repr((self.alphabet, self.out, self.nxt)).encode()
        return self._key

    def __eq__(self, other):
        return (isinstance(other, CanonicalMachine)
                and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def is_identity(self) -> bool:
        return (len(self.out) == 1
                and self.out[0] == tuple(range(len(self.alphabet))))

    def apply(self, word):
        return self.to_machine().apply_from(0, word)

    def to_machine(self) -> MealyMachine:
        ident = 0 if self.is_identity() else None
        return MealyMachine(self.alphabet, self.states, self.out, self.nxt,
                            ident)

    def to_initial(self) -> InitialMachine:
        return InitialMachine(self.to_machine(), 0)

    def __repr__(self):
        return "<CanonicalMachine %d states over %r>" % (
            len(self.out), "".join(map(str, self.alphabet)))


def minimize(initial: InitialMachine) -> CanonicalMachine:
    m = initial.machine
    n_a = len(m.alphabet)
    block_of, partition = behavior_partition(m)

    # quotient transitions, indexed by block
    rep = [blk[0] for blk in partition]
    q_out = [m.out[r] for r in rep]
    q_nxt = [tuple(block_of[m.nxt[r][a]] for a in range(n_a)) for r in rep]

    # BFS from the start block in alphabet order
    start = block_of[initial.start]
    order = {start: 0}
    queue = deque([start])
    seq = [start]
    while queue:
        b = queue.popleft()
        for a in range(n_a):
            t = q_nxt[b][a]
            if t not in order:
                order[t] = len(order)
                queue.append(t)
                seq.append(t)
    out = [q_out[b] for b in seq]
    nxt = [tuple(order[q_nxt[b][a]] for a in range(n_a)) for b in seq]
    return CanonicalMachine(m.alphabet, out, nxt)


def behavior_eq(m: InitialMachine, n: InitialMachine) -> bool:
    if m.machine.alphabet != n.machine.alphabet:
        raise AlphabetMismatchError("behavior_eq requires identical alphabets")
    return minimize(m).key() == minimize(n).key()
