"""Finite acceptors: deterministic and nondeterministic, with labeled
accepting families.

Transitions are partial; a missing transition rejects. Accepting state sets
are named, so one automaton can carry a family T_s of accepting subsets
(multiplier automata need this). Plain languages use the label "main".
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import AlphabetMismatchError, FormatError

PAD = "_"
MAIN = "main"


@dataclass(frozen=True)
class PaddedPairLetter:
    left: str
    right: str
    pad: str = PAD

    def __post_init__(self):
        if self.left == self.pad and self.right == self.pad:
            raise FormatError("(pad,pad) is not a valid pair letter")

    @property
    def token(self) -> str:
        return "%s,%s" % (self.left, self.right)


def pair_token(left: str, right: str, pad: str = PAD) -> str:
    return PaddedPairLetter(left, right, pad).token


def split_pair(token: str):
    left, _, right = token.partition(",")
    return left, right


def pair_alphabet(alphabet, pad: str = PAD):
    """All padded-pair tokens over an alphabet, except (pad,pad)."""
    extended = tuple(alphabet) + (pad,)
    for a in extended:
        if "," in a:
            raise FormatError("letter %r may not contain a comma" % (a,))
    return tuple(pair_token(l, r, pad)
                 for l in extended for r in extended
                 if not (l == pad and r == pad))


class Acceptor:
    __slots__ = ("alphabet", "states", "transitions", "initial", "accepting")

    def __init__(self, alphabet, states, transitions, initial, accepting):
        self.alphabet = tuple(alphabet)
        self.states = tuple(states)
        self.transitions = dict(transitions)   # (state, letter) -> state
        self.initial = initial
        self.accepting = {label: frozenset(members)
                          for label, members in accepting.items()}
        n_q = len(self.states)
        n_a = len(self.alphabet)
        if len(set(self.states)) != n_q or len(set(self.alphabet)) != n_a:
            raise FormatError("duplicate states or letters")
        if not 0 <= self.initial < n_q:
            raise FormatError("initial state out of range")
        for (q, a), t in self.transitions.items():
            if not (0 <= q < n_q and 0 <= a < n_a and 0 <= t < n_q):
                raise FormatError("transition out of range")
        for label, members in self.accepting.items():
            for q in members:
                if not 0 <= q < n_q:
                    raise FormatError(
                        "accepting state out of range for label %r" % label)

    @classmethod
    def from_names(cls, alphabet, states, transitions, initial, accepting):
        alphabet = tuple(alphabet)
        states = tuple(states)
        aidx = {a: i for i, a in enumerate(alphabet)}
        qidx = {q: i for i, q in enumerate(states)}
        try:
            trans = {(qidx[q], aidx[a]): qidx[t]
                     for (q, a), t in transitions.items()}
            acc = {label: frozenset(qidx[q] for q in members)
                   for label, members in accepting.items()}
            return cls(alphabet, states, trans, initial=qidx[initial],
                       accepting=acc)
        except KeyError as exc:
            raise FormatError("unknown name %s" % exc) from None

    def letter_index(self, letter):
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise FormatError("letter %r not in alphabet" % (letter,)) from None

    def labels(self):
        return sorted(self.accepting)

    def _accepting_for(self, label):
        if label not in self.accepting:
            raise FormatError("unknown accepting label %r" % (label,))
        return self.accepting[label]

    def accepts(self, word, label=MAIN) -> bool:
        target = self._accepting_for(label)
        q = self.initial
        for letter in word:
            a = self.letter_index(letter)
            q = self.transitions.get((q, a))
            if q is None:
                return False
        return q in target

    def completed(self) -> "Acceptor":
        """Total-transition version; adds a reject sink if needed."""
        n_q = len(self.states)
        n_a = len(self.alphabet)
        if len(self.transitions) == n_q * n_a:
            return self
        sink_name = "__sink"
        while sink_name in self.states:
            sink_name += "_"
        states = self.states + (sink_name,)
        trans = dict(self.transitions)
        for q in range(n_q + 1):
            for a in range(n_a):
                trans.setdefault((q, a), n_q)
        return Acceptor(self.alphabet, states, trans, self.initial,
                        self.accepting)

    def reachable_accepting(self, label):
        """States from which some accepting state (for label) is reachable."""
        target = set(self._accepting_for(label))
        rev = {}
        for (q, a), t in self.transitions.items():
            rev.setdefault(t, []).append(q)
        seen = set(target)
        queue = deque(target)
        while queue:
            t = queue.popleft()
            for q in rev.get(t, ()):
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return seen


class NFAcceptor:
    """Nondeterministic variant; transitions map to sets of states."""

    __slots__ = ("alphabet", "states", "transitions", "initials", "accepting")

    def __init__(self, alphabet, states, transitions, initials, accepting):
        self.alphabet = tuple(alphabet)
        self.states = tuple(states)
        self.transitions = {key: frozenset(ts)
                            for key, ts in transitions.items()}
        self.initials = frozenset(initials)
        self.accepting = {label: frozenset(members)
                          for label, members in accepting.items()}

    @classmethod
    def from_names(cls, alphabet, states, transitions, initials, accepting):
        aidx = {a: i for i, a in enumerate(alphabet)}
        qidx = {q: i for i, q in enumerate(states)}
        trans = {(qidx[q], aidx[a]): frozenset(qidx[t] for t in ts)
                 for (q, a), ts in transitions.items()}
        return cls(alphabet, states, trans,
                   frozenset(qidx[q] for q in initials),
                   {label: frozenset(qidx[q] for q in members)
                    for label, members in accepting.items()})


def determinize(a) -> Acceptor:
    """Subset construction; accepts an Acceptor or NFAcceptor."""
    if isinstance(a, Acceptor):
        nfa = NFAcceptor(a.alphabet, a.states,
                         {key: (t,) for key, t in a.transitions.items()},
                         (a.initial,), a.accepting)
    else:
        nfa = a
    n_a = len(nfa.alphabet)
    index = {nfa.initials: 0}
    subsets = [nfa.initials]
    trans = {}
    pos = 0
    while pos < len(subsets):
        cur = subsets[pos]
        for letter in range(n_a):
            target = set()
            for q in cur:
                target.update(nfa.transitions.get((q, letter), ()))
            if not target:
                continue
            key = frozenset(target)
            if key not in index:
                index[key] = len(subsets)
                subsets.append(key)
            trans[(pos, letter)] = index[key]
        pos += 1
    accepting = {}
    for label, members in nfa.accepting.items():
        accepting[label] = frozenset(
            i for i, sub in enumerate(subsets) if sub & members)
    names = tuple("S%d" % i for i in range(len(subsets)))
    return Acceptor(nfa.alphabet, names, trans, 0, accepting)


def bool_ops(a: Acceptor, b, op: str, label_a=MAIN, label_b=MAIN) -> Acceptor:
    """intersect / union / difference / complement, on one label each.

    The result carries a single label "main". Complement ignores b.
    """
    if op == "complement":
        full = a.completed()
        acc = frozenset(range(len(full.states))) - full._accepting_for(label_a)
        return Acceptor(full.alphabet, full.states, full.transitions,
                        full.initial, {MAIN: acc})
    if b is None:
        raise FormatError("binary op %r needs two acceptors" % op)
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("boolean ops need identical alphabets")
    if op not in ("intersect", "union", "difference"):
        raise FormatError("unknown op %r" % op)
    fa = a.completed()
    fb = b.completed()
    acc_a = fa._accepting_for(label_a)
    acc_b = fb._accepting_for(label_b)
    n_a = len(fa.alphabet)
    index = {(fa.initial, fb.initial): 0}
    pairs = [(fa.initial, fb.initial)]
    trans = {}
    pos = 0
    while pos < len(pairs):
        qa, qb = pairs[pos]
        for letter in range(n_a):
            pair = (fa.transitions[(qa, letter)], fb.transitions[(qb, letter)])
            if pair not in index:
                index[pair] = len(pairs)
                pairs.append(pair)
            trans[(pos, letter)] = index[pair]
        pos += 1
    if op == "intersect":
        keep = [i for i, (qa, qb) in enumerate(pairs)
                if qa in acc_a and qb in acc_b]
    elif op == "union":
        keep = [i for i, (qa, qb) in enumerate(pairs)
                if qa in acc_a or qb in acc_b]
    else:
        keep = [i for i, (qa, qb) in enumerate(pairs)
                if qa in acc_a and qb not in acc_b]
    names = tuple("P%d" % i for i in range(len(pairs)))
    return Acceptor(fa.alphabet, names, trans, 0, {MAIN: frozenset(keep)})


def is_empty(a: Acceptor, label=MAIN):
    """(True, None) if the label's language is empty, else (False, witness).

    The witness is the shortlex-least accepted word (letters in declared
    alphabet order), as a tuple of letters.
    """
    target = a._accepting_for(label)
    seen = {a.initial}
    queue = deque([(a.initial, ())])
    while queue:
        q, word = queue.popleft()
        if q in target:
            return False, word
        for letter in range(len(a.alphabet)):
            t = a.transitions.get((q, letter))
            if t is not None and t not in seen:
                seen.add(t)
                queue.append((t, word + (a.alphabet[letter],)))
    return True, None


def enumerate_words(a: Acceptor, label=MAIN, max_len=0):
    """Accepted words of length <= max_len in shortlex order (tuples)."""
    if max_len < 0:
        raise FormatError("max_len must be >= 0")
    target = a._accepting_for(label)
    useful = a.reachable_accepting(label)
    result = []
    layer = [((), a.initial)] if a.initial in useful else []
    if a.initial in target:
        result.append(())
    for _ in range(max_len):
        nxt = []
        for word, q in layer:
            for letter in range(len(a.alphabet)):
                t = a.transitions.get((q, letter))
                if t is None or t not in useful:
                    continue
                w = word + (a.alphabet[letter],)
                if t in target:
                    result.append(w)
                nxt.append((w, t))
        layer = nxt
    return result


def shortlex_pair_acceptor(alphabet, pad=PAD) -> Acceptor:
    """Acceptor over padded pairs: label "le" for u <= v, "lt" for u < v.

    Shortlex with the declared alphabet order; a shorter word precedes every
    longer one, so the side that pads first wins.
    """
    letters = pair_alphabet(alphabet, pad)
    states = ("eq", "lex_lt", "lex_gt", "u_ended", "v_ended")
    rank = {a: i for i, a in enumerate(alphabet)}
    trans = {}
    for token in letters:
        left, right = split_pair(token)
        if left == pad:
            trans[("eq", token)] = "u_ended"
            trans[("lex_lt", token)] = "u_ended"
            trans[("lex_gt", token)] = "u_ended"
            trans[("u_ended", token)] = "u_ended"
        elif right == pad:
            trans[("eq", token)] = "v_ended"
            trans[("lex_lt", token)] = "v_ended"
            trans[("lex_gt", token)] = "v_ended"
            trans[("v_ended", token)] = "v_ended"
        else:
            if rank[left] == rank[right]:
                trans[("eq", token)] = "eq"
            elif rank[left] < rank[right]:
                trans[("eq", token)] = "lex_lt"
            else:
                trans[("eq", token)] = "lex_gt"
            trans[("lex_lt", token)] = "lex_lt"
            trans[("lex_gt", token)] = "lex_gt"
    return Acceptor.from_names(
        letters, states, trans, "eq",
        {"le": ("eq", "lex_lt", "u_ended"), "lt": ("lex_lt", "u_ended")})


def map_letters(a: Acceptor, mapping) -> Acceptor:
    """Rename letters through a bijection {old: new}; same structure."""
    if sorted(mapping) != sorted(a.alphabet):
        raise FormatError("mapping must cover the alphabet exactly")
    new_alphabet = tuple(mapping[l] for l in a.alphabet)
    if len(set(new_alphabet)) != len(new_alphabet):
        raise FormatError("mapping must be injective")
    return Acceptor(new_alphabet, a.states, a.transitions, a.initial,
                    a.accepting)


def __getattr__(name):
    # fsa.enumerate is the public name; a module-level assignment would
    # shadow the builtin for everything above, so alias it lazily.
    if name == "enumerate":
        return enumerate_words
    raise AttributeError("module %r has no attribute %r" % (__name__, name))
