"""Group-element semantics for words over automaton states.

The leftmost symbol of a word acts first on input words: "b c" means apply
b's transformation, then c's. Products fold accordingly, so evaluate("b c")
is product(c-machine, b-machine-result) at each step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInvertibleError, ResourceCapError, UnknownSymbolError
from .mealy import (CanonicalMachine, MealyMachine, identity_machine,
                    minimize, reachable_product)
from .words import GroupWord

DEFAULT_MAX_EXP = 2 ** 16
DEFAULT_STATE_CAP = 10 ** 5


def _as_word(w) -> GroupWord:
    if isinstance(w, GroupWord):
        return w
    return GroupWord.parse(w)


def _check_symbols(m: MealyMachine, w: GroupWord):
    names = set(m.states)
    for s, e in w:
        if s not in names:
            raise UnknownSymbolError("%r is not a state of the machine" % (s,))
        if e == -1 and not m.is_invertible():
            raise NotInvertibleError(
                "inverse letters need an invertible machine")


def evaluate(m: MealyMachine, w, state_cap=None) -> CanonicalMachine:
    """Canonical machine of the element the word denotes."""
    w = _as_word(w)
    _check_symbols(m, w)
    inv = None
    acc = minimize(identity_machine(m.alphabet).at(0))
    for s, e in w:
        if e == 1:
            factor, start = m, m.state_index(s)
        else:
            if inv is None:
                inv = m.inverse()
            factor, start = inv, m.state_index(s)
        acc = minimize(reachable_product(factor.at(start), acc.to_initial()))
        if state_cap is not None and acc.n_states > state_cap:
            raise ResourceCapError(
                "canonical machine grew past %d states" % state_cap,
                cap=state_cap)
    return acc


def is_identity(m: MealyMachine, w) -> bool:
    return evaluate(m, w).is_identity()


@dataclass(frozen=True)
class WreathDecomposition:
    """Root permutation on A plus one section word per input letter."""

    perm: tuple          # perm[i] = output letter name for input alphabet[i]
    sections: dict       # input letter name -> GroupWord

    def perm_map(self):
        return dict(zip(tuple(self.sections), self.perm))


def wreath_decompose(m: MealyMachine, w) -> WreathDecomposition:
    w = _as_word(w)
    _check_symbols(m, w)
    inv_lookup = None
    if any(e == -1 for _, e in w):
        # letter y with out[q][y] = x, per state
        inv_lookup = []
        for q in range(len(m.states)):
            row = [0] * len(m.alphabet)
            for y, o in enumerate(m.out[q]):
                row[o] = y
            inv_lookup.append(row)
    perm = []
    sections = {}
    for i, letter in enumerate(m.alphabet):
        cur = i
        secs = []
        for s, e in w:
            q = m.state_index(s)
            if e == 1:
                secs.append((m.states[m.nxt[q][cur]], 1))
                cur = m.out[q][cur]
            else:
                y = inv_lookup[q][cur]
                secs.append((m.states[m.nxt[q][y]], -1))
                cur = y
        perm.append(m.alphabet[cur])
        sections[letter] = GroupWord(tuple(secs))
    return WreathDecomposition(tuple(perm), sections)


def matrix_form(m: MealyMachine, w):
    """|A| x |A| matrix of section words: entry (i, perm(i)) = sections[i]."""
    dec = wreath_decompose(m, w)
    n = len(m.alphabet)
    rows = [["0"] * n for _ in range(n)]
    for i, letter in enumerate(m.alphabet):
        j = m.alphabet.index(dec.perm[i])
        section = dec.sections[letter].render()
        rows[i][j] = section if section else "1"
    return rows


@dataclass(frozen=True)
class Finite:
    k: int


@dataclass(frozen=True)
class UnknownBeyond:
    max_exp: int


def order(m: MealyMachine, w, max_exp=DEFAULT_MAX_EXP,
          state_cap=DEFAULT_STATE_CAP):
    """Minimal k <= max_exp with w^k = 1, else UnknownBeyond(max_exp).

    Prime-power ladders for p = 2, 3 run first: if w^(p^j) = 1 at the first
    ladder step j where that happens, the order is exactly p^j (it divides
    p^j and no smaller power of p works). Orders that are not powers of 2
    or 3 fall through to a sequential scan, minimal by construction.
    """
    w = _as_word(w)
    base = evaluate(m, w, state_cap=state_cap)
    if base.is_identity():
        return Finite(1)
    if max_exp < 1:
        return UnknownBeyond(max_exp)

    def bump(machine_a, machine_b):
        res = minimize(reachable_product(machine_a.to_initial(),
                                         machine_b.to_initial()))
        if res.n_states > state_cap:
            raise ResourceCapError(
                "canonical machine grew past %d states" % state_cap,
                cap=state_cap)
        return res

    for p in (2, 3):
        cur = base
        k = 1
        while k * p <= max_exp:
            if p == 2:
                cur = bump(cur, cur)
            else:
                cur = bump(bump(cur, cur), cur)
            k *= p
            if cur.is_identity():
                return Finite(k)

    acc = base
    for k in range(2, max_exp + 1):
        acc = bump(base, acc)
        if acc.is_identity():
            return Finite(k)
    return UnknownBeyond(max_exp)


def orbit_on_level(m: MealyMachine, w, u):
    """The orbit of the level-|u| word u under powers of w."""
    elem = evaluate(m, w)
    orbit = [u]
    cur = elem.apply(u)
    while cur != u:
        orbit.append(cur)
        cur = elem.apply(cur)
    return orbit
