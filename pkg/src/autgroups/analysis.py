"""Structural classification of machines: activity growth, nucleus and
contraction detection, and dual-group orbit computations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product

import numpy as np

from .action import evaluate, is_identity
from .errors import NotInvertibleError, NotReversibleError, StructureError
from .mealy import CanonicalMachine, InitialMachine, MealyMachine, \
    identity_machine, minimize, reachable_product
from .words import GroupWord

NUCLEUS_CAP = 10 ** 4


# -- activity --------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    degree: int

    @property
    def bounded(self):
        return self.degree == 0


@dataclass(frozen=True)
class Exponential:
    pass


def identity_states(m: MealyMachine) -> frozenset:
    """Indices of states that behave as the identity."""
    n_a = len(m.alphabet)
    id_row = tuple(range(n_a))
    candidates = {q for q in range(len(m.states)) if m.out[q] == id_row}
    while True:
        stable = {q for q in candidates
                  if all(m.nxt[q][a] in candidates for a in range(n_a))}
        if stable == candidates:
            return frozenset(stable)
        candidates = stable


def _sccs(n: int, succ) -> list:
    """Strongly connected components (lists of vertices), successors-first.

    Iterative Tarjan; ``succ[v]`` is an iterable of successors.
    """
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack = []
    comps = []
    counter = [1]
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, iter(succ[root]))]
        visited[root] = True
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not visited[w]:
                    visited[w] = True
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def activity_degree(m: MealyMachine):
    """Growth class of the count of length-n paths avoiding the identity.

    Exponential iff some strongly connected component of the non-identity
    state digraph carries two distinct cycles; otherwise every component is
    a simple cycle or a single vertex, and the degree is the longest chain
    of cycles minus one.
    """
    trivial = identity_states(m)
    live = [q for q in range(len(m.states)) if q not in trivial]
    if not live:
        return Polynomial(0)
    rank = {q: i for i, q in enumerate(live)}
    n = len(live)
    succ = [[] for _ in range(n)]
    for q in live:
        for a in range(len(m.alphabet)):
            r = m.nxt[q][a]
            if r not in trivial:
                succ[rank[q]].append(rank[r])

    comps = _sccs(n, succ)
    comp_of = [0] * n
    for c, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = c
    cyclic = [False] * len(comps)
    for c, comp in enumerate(comps):
        members = set(comp)
        internal = sum(1 for v in comp for w in succ[v] if w in members)
        if internal > len(comp):
            return Exponential()
        cyclic[c] = internal >= 1

    # longest chain of cyclic components; Tarjan emits successors first,
    # so comps is already in reverse topological order.
    best = [0] * len(comps)
    for c, comp in enumerate(comps):
        follow = 0
        for v in comp:
            for w in succ[v]:
                if comp_of[w] != c:
                    follow = max(follow, best[comp_of[w]])
        best[c] = follow + (1 if cyclic[c] else 0)
    chain = max(best)
    return Polynomial(max(chain - 1, 0))


def path_counts(m: MealyMachine, n_max: int) -> list:
    """Count of length-n paths through non-identity states, n = 0..n_max.

    Oracle for activity_degree: dynamic programming over the state digraph,
    paths may start at any non-identity state.
    """
    trivial = identity_states(m)
    live = [q for q in range(len(m.states)) if q not in trivial]
    counts = []
    weight = {q: 1 for q in live}
    counts.append(sum(weight.values()))
    for _ in range(n_max):
        nxt_weight = {q: 0 for q in live}
        for q in live:
            for a in range(len(m.alphabet)):
                r = m.nxt[q][a]
                if r in nxt_weight:
                    nxt_weight[r] += weight[q]
        weight = nxt_weight
        counts.append(sum(weight.values()))
    return counts


# -- nucleus ----------------------------------------------------------------


@dataclass(frozen=True)
class Nucleus:
    elements: frozenset
    generators: tuple

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class Contracting:
    nucleus: Nucleus


@dataclass(frozen=True)
class NotContractingUpTo:
    cap: int


class _CapHit(Exception):
    pass


def _recurrent_states(nxt) -> set:
    """States reachable from some cycle of the transition digraph."""
    n = len(nxt)
    succ = [sorted(set(row)) for row in nxt]
    comps = _sccs(n, succ)
    seeds = []
    for comp in comps:
        if len(comp) > 1:
            seeds.extend(comp)
        elif comp[0] in succ[comp[0]]:
            seeds.append(comp[0])
    reach = set(seeds)
    frontier = list(seeds)
    while frontier:
        v = frontier.pop()
        for w in succ[v]:
            if w not in reach:
                reach.add(w)
                frontier.append(w)
    return reach


def _inverse_canonical(c: CanonicalMachine) -> CanonicalMachine:
    return minimize(InitialMachine(c.to_machine().inverse(), 0))


def nucleus(m: MealyMachine, cap: int = NUCLEUS_CAP):
    """Close the generators under sections and recurrent product sections.

    Returns Contracting(Nucleus) once the set is stable, or
    NotContractingUpTo(cap) as soon as it grows past ``cap``. Elements are
    canonical machines; the set is kept inverse-closed throughout.
    """
    if not m.is_invertible():
        raise NotInvertibleError("nucleus needs an invertible machine")
    if cap < 1:
        raise StructureError("cap must be >= 1")
    inv = m.inverse()
    elements = []
    index = set()

    def add(c: CanonicalMachine):
        if c in index:
            return
        if len(elements) >= cap:
            raise _CapHit()
        index.add(c)
        elements.append(c)
        add(_inverse_canonical(c))

    try:
        add(minimize(identity_machine(m.alphabet).at(0)))
        for q in range(len(m.states)):
            add(minimize(m.at(q)))
            add(minimize(inv.at(q)))

        done_sections = 0
        done_pairs = 0
        while done_sections < len(elements) or done_pairs < len(elements):
            while done_sections < len(elements):
                c = elements[done_sections]
                done_sections += 1
                machine = c.to_machine()
                for s in range(len(machine.states)):
                    add(minimize(machine.at(s)))
            k = done_pairs
            done_pairs = len(elements)
            for i in range(done_pairs):
                for j in range(done_pairs):
                    if i < k and j < k:
                        continue
                    prod = minimize(reachable_product(
                        elements[i].to_initial(), elements[j].to_initial()))
                    machine = prod.to_machine()
                    for s in _recurrent_states(prod.nxt):
                        add(minimize(machine.at(s)))
    except _CapHit:
        return NotContractingUpTo(cap)
    return Contracting(Nucleus(frozenset(elements), m.states))


def is_nuclear(m: MealyMachine) -> bool:
    """Whether m equals its own nucleus: inverse-closed as a state set,
    and the recurrent part of m*m behaves exactly as m's states."""
    if not m.is_invertible():
        return False
    behaviors = {minimize(m.at(q)) for q in range(len(m.states))}
    inv = m.inverse()
    if not {minimize(inv.at(q)) for q in range(len(m.states))} <= behaviors:
        return False
    square = m.product(m)
    recurrent = _recurrent_states(square.nxt)
    square_behaviors = {minimize(square.at(s)) for s in recurrent}
    return square_behaviors == behaviors


# -- dual orbits and the injectivity certificate ---------------------------


def _orbit_partition(words, images) -> list:
    """Orbits as sorted lists; ``images[g][w]`` is the image of word w."""
    index = {w: i for i, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for img in images:
        for w, target in img.items():
            a, b = find(index[w]), find(index[target])
            if a != b:
                parent[a] = b
    groups = {}
    for i, w in enumerate(words):
        groups.setdefault(find(i), []).append(w)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def dual_orbits(m: MealyMachine, n: int) -> list:
    """Orbits of G(m-dual) on length-n state words, as sorted tuples."""
    dual = m.dual()
    if not dual.is_invertible():
        raise NotReversibleError("dual orbits need a reversible machine")
    words = [tuple(w) for w in iter_product(m.states, repeat=n)]
    images = []
    for g in range(len(dual.states)):
        images.append({w: tuple(dual.apply_from(g, w)) for w in words})
    return [tuple(orbit) for orbit in _orbit_partition(words, images)]


@dataclass(frozen=True)
class Certified:
    level: int
    orbits: int


@dataclass(frozen=True)
class Failed:
    orbit: tuple


def _word_of_states(names) -> GroupWord:
    w = GroupWord()
    for name in names:
        if name.endswith("^-1"):
            w = w * GroupWord.single(name[:-3], -1)
        else:
            w = w * GroupWord.single(name)
    return w


def injectivity_certificate(m: MealyMachine, L, n: int, signed: bool = False):
    """Certify that L's level-n words map injectively into the group.

    L is a predicate on tuples of state names (names carry a ^-1 suffix
    when ``signed``). Checks that L is invariant under the dual action at
    level n, then that every orbit of L-words contains a word that is not
    the identity; that is the hypothesis of the bireversibility lemma.
    """
    cls = m.classify()
    if not cls.bireversible:
        raise NotReversibleError(
            "injectivity certificate needs a bireversible machine")
    if signed:
        from .mealy import signed_closure
        acting = signed_closure(m)
    else:
        acting = m
    dual = acting.dual()
    words = [w for w in iter_product(acting.states, repeat=n) if L(w)]
    images = []
    for g in range(len(dual.states)):
        img = {}
        for w in words:
            target = tuple(dual.apply_from(g, w))
            if not L(target):
                raise StructureError(
                    "language is not dual-invariant at level %d: %r -> %r"
                    % (n, w, target))
            img[w] = target
        images.append(img)
    orbits = _orbit_partition(words, images)
    for orbit in orbits:
        if any(not is_identity(m, _word_of_states(w)) for w in orbit):
            continue
        return Failed(tuple(orbit))
    return Certified(n, len(orbits))


# -- level permutations -----------------------------------------------------


def level_permutations(m: MealyMachine, k: int) -> dict:
    """Action of every state on level-k words, as index permutations.

    Words of length k over the alphabet are ranked with the first letter
    most significant. Returns {state name: numpy index array}; the machine
    must be invertible for these to be permutations.
    """
    n_a = len(m.alphabet)
    perms = {q: np.arange(1, dtype=np.int64) for q in range(len(m.states))}
    for level in range(1, k + 1):
        block = n_a ** (level - 1)
        fresh = {}
        for q in range(len(m.states)):
            arr = np.empty(n_a * block, dtype=np.int64)
            for a in range(n_a):
                seg = perms[m.nxt[q][a]] + m.out[q][a] * block
                arr[a * block:(a + 1) * block] = seg
            fresh[q] = arr
        perms = fresh
    return {m.states[q]: perms[q] for q in range(len(m.states))}
