"""Automatic structures and surface-group word machinery.

An automatic structure is a language acceptor over the formal generators
together with one multiplier acceptor over padded letter pairs, whose
accepting label s marks pairs (u, v) of normal forms with u = v s in the
group. On top of that this module provides the quadratic-time word problem,
shortlex uniqueness, fellow-traveler checking, Dehn reduction for surface
groups, and the rational growth series of those groups.

Inverse letters are spelled with the "^-1" suffix ("x^-1"), matching how
words render them; the equality label of a multiplier is the pad symbol.
"""

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import (FormatError, ResourceCapError, StructureError,
                     UnknownSymbolError)
from .formats import parse_acceptor
from .fsa import (MAIN, PAD, Acceptor, NFAcceptor, PaddedPairLetter,
                  bool_ops, determinize, enumerate_words, pair_alphabet,
                  shortlex_pair_acceptor, split_pair)
from .geometry import GrowthTable
from .words import GroupWord, commutator

SURFACE_ELEMENT_CAP = 10**6


def _letter_name(symbol, exp):
    return symbol if exp == 1 else symbol + "^-1"


def _name_letter(name):
    if name.endswith("^-1"):
        return name[:-3], -1
    return name, 1


def _inverse_name(name):
    symbol, exp = _name_letter(name)
    return _letter_name(symbol, -exp)


def letters_of(word) -> tuple:
    """Formal-letter names of a word; str input is parsed first."""
    if isinstance(word, str):
        word = GroupWord.parse(word)
    if isinstance(word, GroupWord):
        return tuple(_letter_name(s, e) for s, e in word)
    return tuple(word)


def word_of(letters) -> GroupWord:
    return GroupWord(tuple(_name_letter(name) for name in letters))


# -- structures ----------------------------------------------------------


@dataclass(frozen=True)
class AutomaticStructure:
    """Language + multiplier pair over a fixed formal generating set.

    generators lists the formal letters (generators and their inverses) in
    the order that fixes shortlex. The multiplier's accepting labels are
    the generator names plus the pad symbol, which marks equality.
    """

    generators: tuple
    language: Acceptor
    multiplier: Acceptor
    pad: str = PAD

    def pair_tokens(self):
        return pair_alphabet(self.generators, self.pad)


def pad_pairs(u, v, pad: str = PAD) -> tuple:
    """Align two words into padded pair letters; the shorter side pads."""
    lu = letters_of(u)
    lv = letters_of(v)
    n = max(len(lu), len(lv))
    return tuple(
        PaddedPairLetter(lu[i] if i < len(lu) else pad,
                         lv[i] if i < len(lv) else pad, pad)
        for i in range(n))


Z2_GENERATORS = ("x", "x^-1", "y", "y^-1")


def _load_acceptor(name):
    text = resources.files("autgroups").joinpath("data", name + ".fsa") \
        .read_text(encoding="utf-8")
    _, acceptor = parse_acceptor(text)
    return acceptor


def z2_structure() -> AutomaticStructure:
    """The shipped automatic structure for the free abelian group on x, y."""
    language = _load_acceptor("z2_language")
    multiplier = _load_acceptor("z2_multiplier")
    return AutomaticStructure(Z2_GENERATORS, language, multiplier)


def _with_alphabet(a: Acceptor, target) -> Acceptor:
    """Same acceptor with letters permuted into the target order."""
    target = tuple(target)
    if sorted(a.alphabet) != sorted(target):
        raise FormatError("alphabets disagree: %r vs %r"
                          % (a.alphabet, target))
    if a.alphabet == target:
        return a
    tidx = {letter: i for i, letter in enumerate(target)}
    trans = {(q, tidx[a.alphabet[i]]): t
             for (q, i), t in a.transitions.items()}
    return Acceptor(target, a.states, trans, a.initial, a.accepting)


# -- word problem --------------------------------------------------------


def _check_letters(s: AutomaticStructure, letters):
    known = set(s.generators)
    for name in letters:
        if name not in known:
            raise UnknownSymbolError(
                "%r is not a formal generator of the structure" % (name,))


def _successor_words(s: AutomaticStructure, u, label, max_extra=None,
                     want_all=False):
    """Words v in L with (u, v) multiplier-accepted under label.

    Layered search over pair words: the first coordinate is pinned to u
    (then pads), the second is nondeterministic and synchronized with the
    language acceptor. Returns letter tuples in shortlex order; unless
    want_all, stops at the first hit.
    """
    mult = s.multiplier
    lang = s.language
    if label not in mult.accepting:
        raise FormatError("multiplier has no label %r" % (label,))
    m_acc = mult.accepting[label]
    l_acc = lang.accepting[MAIN]
    tok = {t: i for i, t in enumerate(mult.alphabet)}
    lidx = {t: i for i, t in enumerate(lang.alphabet)}
    if max_extra is None:
        max_extra = len(mult.states) * len(lang.states) + 1

    def m_step(m, left, right):
        index = tok.get("%s,%s" % (left, right))
        if index is None:
            return None
        return mult.transitions.get((m, index))

    # configs: (m state, l state, v_done) -> (parent config, v letter)
    layer = {(mult.initial, lang.initial, False): (None, None)}
    layers = [layer]
    found = []
    seen_words = set()
    for i in range(len(u) + max_extra + 1):
        for key in layers[i]:
            m, l, v_done = key
            if i >= len(u) and m in m_acc and l in l_acc:
                word = []
                at = i
                cur = key
                while at > 0:
                    cur, letter = layers[at][cur]
                    if letter is not None:
                        word.append(letter)
                    at -= 1
                word.reverse()
                vt = tuple(word)
                if vt not in seen_words:
                    seen_words.add(vt)
                    found.append(vt)
                    if not want_all:
                        return found
        if i == len(u) + max_extra:
            break
        left = u[i] if i < len(u) else s.pad
        fresh = {}
        for key in layers[i]:
            m, l, v_done = key
            if v_done:
                if left != s.pad:
                    m2 = m_step(m, left, s.pad)
                    if m2 is not None:
                        fresh.setdefault((m2, l, True), (key, None))
                continue
            for name in s.generators:
                m2 = m_step(m, left, name)
                if m2 is None:
                    continue
                l2 = lang.transitions.get((l, lidx[name]))
                if l2 is None:
                    continue
                fresh.setdefault((m2, l2, False), (key, name))
            if left != s.pad and l in l_acc:
                m2 = m_step(m, left, s.pad)
                if m2 is not None:
                    fresh.setdefault((m2, l, True), (key, None))
        layers.append(fresh)
        if not fresh:
            break
    return found


def normal_form(s: AutomaticStructure, w) -> GroupWord:
    """Normal form of the element w denotes, per the structure's language."""
    letters = letters_of(w)
    _check_letters(s, letters)
    if not s.language.accepts((), MAIN):
        raise StructureError(
            "the language must contain the empty normal form of the identity")
    current = ()
    for name in letters:
        hits = _successor_words(s, current, _inverse_name(name))
        if not hits:
            raise StructureError(
                "multiplier found no successor of %r under %r"
                % (" ".join(current), name))
        current = hits[0]
    return word_of(current)


def wp_quadratic(s: AutomaticStructure, w) -> bool:
    """Does w denote the identity? Normal-form chase, one letter at a time."""
    return not normal_form(s, w)


def functional_up_to(s: AutomaticStructure, max_len: int):
    """First (u, label, v1, v2) witnessing a non-functional multiplier.

    Checks every normal form u of length <= max_len and every label;
    returns None when each has at most one successor. This is the
    uniqueness sanity check for a structure.
    """
    labels = [s.pad] + list(s.generators)
    for u in enumerate_words(s.language, MAIN, max_len):
        for label in labels:
            if label not in s.multiplier.accepting:
                continue
            hits = _successor_words(s, u, label, want_all=True)
            if len(hits) > 1:
                return (u, label, hits[0], hits[1])
    return None


# -- shortlex uniqueness -------------------------------------------------


def _second_in_language(lang: Acceptor, generators, pad) -> Acceptor:
    """Pair acceptor: second coordinate lies in the language.

    Tracks the language state of the right-hand word, allowing pads only
    at the tail of either side. The left word is unconstrained.
    """
    tokens = pair_alphabet(generators, pad)
    lacc = lang.accepting[MAIN]

    # states: (language state, u_done) plus an absorbing "v ended" state
    def name(l, u_done):
        return "%s%s" % ("u" if u_done else "r", l)

    states = [name(l, False) for l in range(len(lang.states))]
    states += [name(l, True) for l in range(len(lang.states))]
    states.append("vdone")
    trans = {}
    lidx = {t: i for i, t in enumerate(lang.alphabet)}
    for l in range(len(lang.states)):
        for token in tokens:
            left, right = split_pair(token)
            if right == pad:
                if left != pad and l in lacc:
                    trans[(name(l, False), token)] = "vdone"
                continue
            l2 = lang.transitions.get((l, lidx[right]))
            if l2 is None:
                continue
            if left == pad:
                trans[(name(l, False), token)] = name(l2, True)
                trans[(name(l, True), token)] = name(l2, True)
            else:
                trans[(name(l, False), token)] = name(l2, False)
    for token in tokens:
        left, right = split_pair(token)
        if right == pad and left != pad:
            trans[("vdone", token)] = "vdone"
    accepting = {MAIN: tuple(name(l, d) for l in lacc for d in (False, True))
                 + ("vdone",)}
    return Acceptor.from_names(tokens, states, trans, name(lang.initial,
                                                           False), accepting)


def _project_first(pair: Acceptor, generators, pad, label=MAIN) -> Acceptor:
    """Project a pair acceptor to its first coordinate.

    Pad-left tokens become end-of-word moves: a state accepts in the
    projection when some accepting state is reachable through them alone.
    """
    n_q = len(pair.states)
    acc = set(pair.accepting[label])
    pad_edges = {}
    letter_edges = {}
    for (q, i), t in pair.transitions.items():
        left, _ = split_pair(pair.alphabet[i])
        if left == pad:
            pad_edges.setdefault(q, set()).add(t)
        else:
            letter_edges.setdefault((q, left), set()).add(t)
    # states that reach acceptance through pad-left tokens only
    good = set(acc)
    changed = True
    while changed:
        changed = False
        for q in range(n_q):
            if q in good:
                continue
            if pad_edges.get(q, ()) & good:
                good.add(q)
                changed = True
    nfa = NFAcceptor(
        tuple(generators),
        pair.states,
        {(q, generators.index(a)): ts
         for (q, a), ts in letter_edges.items()},
        (pair.initial,),
        {MAIN: frozenset(good)})
    return determinize(nfa)


def make_unique(s: AutomaticStructure) -> AutomaticStructure:
    """Restrict the language to shortlex-least representatives.

    A normal form u is dropped when the equality multiplier relates it to
    some strictly smaller v in the language; multipliers are unchanged.
    """
    generators = tuple(s.generators)
    tokens = pair_alphabet(generators, s.pad)
    if s.pad not in s.multiplier.accepting:
        raise FormatError("multiplier lacks the equality label %r" % s.pad)
    equality = Acceptor(s.multiplier.alphabet, s.multiplier.states,
                        s.multiplier.transitions, s.multiplier.initial,
                        {MAIN: s.multiplier.accepting[s.pad]})
    equality = _with_alphabet(equality, tokens)
    second = _second_in_language(s.language, generators, s.pad)
    shortlex = shortlex_pair_acceptor(generators, s.pad)
    greater = bool_ops(shortlex, None, "complement", label_a="le")
    bad_pairs = bool_ops(bool_ops(equality, second, "intersect"),
                         greater, "intersect")
    bad = _project_first(bad_pairs, generators, s.pad)
    language = bool_ops(s.language, bad, "difference")
    return AutomaticStructure(generators, language, s.multiplier, s.pad)


# -- fellow traveling ----------------------------------------------------


@dataclass(frozen=True)
class Holds:
    pass


@dataclass(frozen=True)
class Counterexample:
    u: GroupWord
    v: GroupWord
    j: int


def fellow_travel_check(s: AutomaticStructure, k: int, len_max: int,
                        dist_oracle):
    """Do same-endpoint-neighborhood normal forms k-fellow-travel?

    Exhaustive over pairs u, v in the language with length <= len_max and
    endpoint distance <= 1; the oracle gives the word metric of the target
    group on pairs of words.
    """
    words = enumerate_words(s.language, MAIN, len_max)
    as_word = {w: word_of(w) for w in words}
    for u in words:
        for v in words:
            if dist_oracle(as_word[u], as_word[v]) > 1:
                continue
            for j in range(1, max(len(u), len(v)) + 1):
                du = word_of(u[:j])
                dv = word_of(v[:j])
                if dist_oracle(du, dv) > k:
                    return Counterexample(as_word[u], as_word[v], j)
    return Holds()


def z2_metric(u, v) -> int:
    """Word metric of the free abelian group on x, y (the L1 distance)."""
    coords = {"x": 0, "y": 1}
    delta = [0, 0]
    for word, sign in ((u, 1), (v, -1)):
        if isinstance(word, str):
            word = GroupWord.parse(word)
        for symbol, exp in word:
            if symbol not in coords:
                raise UnknownSymbolError("%r is not x or y" % (symbol,))
            delta[coords[symbol]] += sign * exp
    return abs(delta[0]) + abs(delta[1])


# -- surface groups ------------------------------------------------------


@dataclass(frozen=True)
class SurfaceGroupPresentation:
    """One-relator surface presentation of genus g >= 2.

    Generators a1, b1, ..., ag, bg; the relator is the product of the
    commutators [ai, bi]. Dehn reduction below relies on genus >= 2.
    """

    genus: int

    def __post_init__(self):
        if self.genus < 2:
            raise StructureError("surface machinery needs genus >= 2")

    @property
    def generators(self):
        names = []
        for i in range(1, self.genus + 1):
            names.append("a%d" % i)
            names.append("b%d" % i)
        return tuple(names)

    @property
    def relator(self) -> GroupWord:
        word = GroupWord(())
        for i in range(1, self.genus + 1):
            word = word * commutator(GroupWord.single("a%d" % i),
                                     GroupWord.single("b%d" % i))
        return word

    def relator_cycles(self):
        """Cyclic permutations of the relator and its inverse, in order."""
        cycles = []
        for base in (self.relator, self.relator.inverse()):
            letters = tuple(base)
            for i in range(len(letters)):
                cycles.append(GroupWord(letters[i:] + letters[:i]))
        return tuple(cycles)


@lru_cache(maxsize=None)
def _half_table(genus: int):
    """Map from long relator prefixes to the inverted short remainder.

    Keys are letter tuples of length 2g+1 .. 4g; first relator cycle wins
    a tie, which fixes the reduction deterministically.
    """
    p = SurfaceGroupPresentation(genus)
    table = {}
    size = 4 * genus
    for rho in p.relator_cycles():
        letters = tuple(rho)
        for length in range(2 * genus + 1, size + 1):
            key = letters[:length]
            if key not in table:
                rest = GroupWord(letters[length:])
                table[key] = tuple(rest.inverse())
    return table


def _check_surface_letters(p: SurfaceGroupPresentation, word: GroupWord):
    known = set(p.generators)
    for symbol, _ in word:
        if symbol not in known:
            raise UnknownSymbolError(
                "%r is not a generator of the genus-%d presentation"
                % (symbol, p.genus))


def dehn_reduce(p: SurfaceGroupPresentation, w) -> GroupWord:
    """Shorten w until no subword is more than half of a relator cycle.

    Scans leftmost-first and longest-first; every replacement strictly
    shrinks the word, and the empty result characterizes the identity.
    """
    if isinstance(w, str):
        w = GroupWord.parse(w)
    _check_surface_letters(p, w)
    table = _half_table(p.genus)
    size = 4 * p.genus
    half = 2 * p.genus
    letters = list(w.free_reduce())
    while True:
        n = len(letters)
        replaced = False
        for i in range(n):
            top = min(size, n - i)
            for length in range(top, half, -1):
                rest = table.get(tuple(letters[i:i + length]))
                if rest is None:
                    continue
                letters[i:i + length] = list(rest)
                letters = list(GroupWord(tuple(letters)).free_reduce())
                replaced = True
                break
            if replaced:
                break
        if not replaced:
            return GroupWord(tuple(letters))


def surface_equal(p: SurfaceGroupPresentation, u, v) -> bool:
    """Equality in the surface group, via Dehn reduction of u v^-1."""
    if isinstance(u, str):
        u = GroupWord.parse(u)
    if isinstance(v, str):
        v = GroupWord.parse(v)
    return not dehn_reduce(p, u * v.inverse())


def cannon_series(genus: int, count: int):
    """First count+1 coefficients of the surface-group growth series.

    The series is the rational function with palindromic numerator
    1, 2, ..., 2, 1 and denominator 1, 2-4g, ..., 2-4g, 1, both of degree
    2g; coefficients come from exact integer long division.
    """
    if genus < 2:
        raise StructureError("cannon_series needs genus >= 2")
    if count < 0:
        raise FormatError("count must be >= 0")
    degree = 2 * genus
    num = [1] + [2] * (degree - 1) + [1]
    den = [1] + [2 - 4 * genus] * (degree - 1) + [1]
    coeffs = []
    for n in range(count + 1):
        value = num[n] if n < len(num) else 0
        for k in range(1, min(n, degree) + 1):
            value -= den[k] * coeffs[n - k]
        coeffs.append(value)
    return coeffs


def _exponent_key(p: SurfaceGroupPresentation, word: GroupWord):
    index = {name: i for i, name in enumerate(p.generators)}
    sums = [0] * len(index)
    for symbol, exp in word:
        sums[index[symbol]] += exp
    return tuple(sums)


def _surface_levels(p: SurfaceGroupPresentation, radius: int,
                    cap: int = SURFACE_ELEMENT_CAP):
    """Reduced representatives by distance, as one list per sphere.

    Deduplication buckets candidates by generator exponent sums (a group
    invariant, since the relator abelianizes to zero) and settles each
    bucket with surface_equal.
    """
    steps = []
    for name in p.generators:
        steps.append(GroupWord.single(name, 1))
        steps.append(GroupWord.single(name, -1))
    one = GroupWord(())
    buckets = {_exponent_key(p, one): [one]}
    levels = [[one]]
    total = 1
    for _ in range(radius):
        fresh = []
        for w in levels[-1]:
            for g in steps:
                cand = dehn_reduce(p, w * g)
                key = _exponent_key(p, cand)
                bucket = buckets.setdefault(key, [])
                if any(surface_equal(p, cand, z) for z in bucket):
                    continue
                if total >= cap:
                    raise ResourceCapError(
                        "surface ball exceeds %d elements" % cap, cap=cap)
                bucket.append(cand)
                fresh.append(cand)
                total += 1
        if not fresh:
            break
        levels.append(fresh)
    return levels


def surface_growth_bfs(genus: int, radius: int,
                       cap: int = SURFACE_ELEMENT_CAP) -> GrowthTable:
    """Sphere sizes of the genus-g surface group out to the given radius."""
    p = SurfaceGroupPresentation(genus)
    levels = _surface_levels(p, radius, cap)
    spheres = [len(level) for level in levels]
    if len(spheres) <= radius:
        spheres.extend([0] * (radius + 1 - len(spheres)))
    balls = []
    total = 0
    for s in spheres:
        total += s
        balls.append(total)
    return GrowthTable(tuple(range(len(spheres))), tuple(spheres),
                       tuple(balls), False, cap)


@lru_cache(maxsize=None)
def _cached_levels(genus: int, radius: int):
    p = SurfaceGroupPresentation(genus)
    return tuple(tuple(level) for level in _surface_levels(p, radius))


def surface_metric(genus: int, max_radius: int = 4):
    """Word-metric oracle for the surface group, by bounded ball search."""
    p = SurfaceGroupPresentation(genus)

    def oracle(u, v) -> int:
        if isinstance(u, str):
            u = GroupWord.parse(u)
        if isinstance(v, str):
            v = GroupWord.parse(v)
        target = dehn_reduce(p, u * v.inverse())
        if not target:
            return 0
        key = _exponent_key(p, target)
        for r, level in enumerate(_cached_levels(genus, max_radius)):
            for z in level:
                if _exponent_key(p, z) == key and surface_equal(p, z, target):
                    return r
        raise ResourceCapError(
            "distance exceeds the search radius %d" % max_radius,
            cap=max_radius)

    return oracle
