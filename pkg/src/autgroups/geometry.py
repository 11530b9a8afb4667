"""Level actions and coarse geometry.

Schreier graphs of the action on length-n words, level transitivity,
ball/sphere enumeration keyed by canonical machines, and the four-point
hyperbolicity defect of a finite graph.
"""

from collections import deque
from dataclasses import dataclass
from itertools import product as letter_tuples

import numpy as np

from .action import evaluate
from .errors import StructureError
from .mealy import MealyMachine, minimize, reachable_product
from .words import GroupWord

# Growth enumeration stops after this many distinct canonical machines.
GROWTH_ELEMENT_CAP = 2 * 10**6


def _as_words(gens):
    words = []
    for g in gens:
        words.append(g if isinstance(g, GroupWord) else GroupWord.parse(g))
    return tuple(words)


def _join_word(alphabet, word):
    if not word:
        return "ε"
    if all(len(str(a)) == 1 for a in alphabet):
        return "".join(word)
    return ".".join(word)


# -- Schreier graphs ----------------------------------------------------------


@dataclass(frozen=True)
class SchreierGraph:
    """Action graph on level-n words.

    One directed edge (v, g·v) per generator g and vertex v, labeled by the
    generator's rendered word. Vertices are joined letter strings in
    lexicographic order.
    """

    level: int
    vertices: tuple
    edges: tuple
    generators: tuple


def schreier_graph(m: MealyMachine, gens, n: int) -> SchreierGraph:
    """Graph of the generator action on all words of length n."""
    words = _as_words(gens)
    acting = [(w.render(), evaluate(m, w)) for w in words]
    raw = list(letter_tuples(m.alphabet, repeat=n))
    names = {v: _join_word(m.alphabet, v) for v in raw}
    edges = []
    for v in raw:
        for label, elem in acting:
            image = tuple(elem.apply(v))
            edges.append((names[v], label, names[image]))
    return SchreierGraph(
        level=n,
        vertices=tuple(names[v] for v in raw),
        edges=tuple(edges),
        generators=tuple(label for label, _ in acting),
    )


def is_level_transitive(m: MealyMachine, gens, n: int) -> bool:
    """Whether the generators act transitively on words of length n."""
    graph = schreier_graph(m, gens, n)
    if not graph.vertices:
        return True
    adj = {v: set() for v in graph.vertices}
    for src, _, dst in graph.edges:
        adj[src].add(dst)
        adj[dst].add(src)
    seen = {graph.vertices[0]}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(graph.vertices)


# -- growth -------------------------------------------------------------------


@dataclass(frozen=True)
class GrowthTable:
    """Sphere and ball sizes per radius.

    When the element cap is hit the table is truncated to the radii that
    were fully explored and `truncated` is set; no partial sphere counts
    are ever reported.
    """

    radii: tuple
    spheres: tuple
    balls: tuple
    truncated: bool
    cap: int

    def rows(self):
        return list(zip(self.radii, self.spheres, self.balls))


def growth(m: MealyMachine, gens, radius: int,
           cap: int = GROWTH_ELEMENT_CAP) -> GrowthTable:
    """Ball sizes of the group generated by gens, out to the given radius.

    The generator list is closed under inverses and deduplicated by
    canonical machine, so word order and repeats do not matter. Elements
    are discovered by breadth-first right multiplication.
    """
    words = _as_words(gens)
    step_machines = {}
    for w in words:
        for u in (w, w.inverse()):
            elem = evaluate(m, u)
            step_machines.setdefault(elem.key(), elem)
    steps = [step_machines[k] for k in sorted(step_machines)]

    one = evaluate(m, GroupWord(()))
    seen = {one.key()}
    spheres = [1]
    frontier = [one]
    truncated = False
    for _ in range(radius):
        fresh = []
        for elem in frontier:
            base = elem.to_initial()
            for g in steps:
                new = minimize(reachable_product(g.to_initial(), base))
                key = new.key()
                if key in seen:
                    continue
                if len(seen) >= cap:
                    truncated = True
                    break
                seen.add(key)
                fresh.append(new)
            if truncated:
                break
        if truncated:
            break
        if not fresh:
            break
        spheres.append(len(fresh))
        frontier = fresh

    if not truncated and len(spheres) <= radius:
        # the group was exhausted early; later spheres are empty
        spheres.extend([0] * (radius + 1 - len(spheres)))
    balls = []
    total = 0
    for s in spheres:
        total += s
        balls.append(total)
    return GrowthTable(
        radii=tuple(range(len(spheres))),
        spheres=tuple(spheres),
        balls=tuple(balls),
        truncated=truncated,
        cap=cap,
    )


# -- four-point hyperbolicity ------------------------------------------------


def _undirected_adjacency(graph):
    if isinstance(graph, SchreierGraph):
        verts = list(graph.vertices)
        index = {v: i for i, v in enumerate(verts)}
        adj = [set() for _ in verts]
        for src, _, dst in graph.edges:
            adj[index[src]].add(index[dst])
            adj[index[dst]].add(index[src])
        return verts, adj
    verts = list(graph)
    index = {v: i for i, v in enumerate(verts)}
    adj = [set() for _ in verts]
    for v, neighbours in graph.items():
        for w in neighbours:
            if w not in index:
                raise StructureError("neighbour %r is not a vertex" % (w,))
            adj[index[v]].add(index[w])
            adj[index[w]].add(index[v])
    return verts, adj


def _distance_matrix(adj):
    n = len(adj)
    dist = np.full((n, n), -1, dtype=np.int32)
    for s in range(n):
        row = dist[s]
        row[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            d = row[v] + 1
            for w in adj[v]:
                if row[w] < 0:
                    row[w] = d
                    queue.append(w)
    if (dist < 0).any():
        raise StructureError("four_point_delta needs a connected graph")
    return dist


def four_point_delta(graph) -> int:
    """Largest four-point defect over all vertex quadruples.

    For each quadruple (a, b, c, d), with repetition allowed, the three
    pairings d(a,b)+d(c,d), d(a,c)+d(b,d), d(a,d)+d(b,c) are formed and
    the defect is the largest minus the second largest. Accepts a
    SchreierGraph or an adjacency mapping; edges are taken undirected.
    """
    _, adj = _undirected_adjacency(graph)
    dist = _distance_matrix(adj)
    n = len(adj)
    if n == 0:
        raise StructureError("four_point_delta needs a nonempty graph")
    best = 0
    block = max(1, 2**21 // max(n * n, 1))
    for a in range(n):
        for b0 in range(0, n, block):
            b1 = min(n, b0 + block)
            s1 = dist[a, b0:b1][:, None, None] + dist[None, :, :]
            s2 = dist[a][None, :, None] + dist[b0:b1][:, None, :]
            s3 = dist[a][None, None, :] + dist[b0:b1][:, :, None]
            top = np.maximum(np.maximum(s1, s2), s3)
            low = np.minimum(np.minimum(s1, s2), s3)
            defect = 2 * top + low - (s1 + s2 + s3)
            local = int(defect.max())
            if local > best:
                best = local
    return best
