"""Wirtinger presentations of virtual link groups.

A relator ``(i, j, w)`` says ``m_i = w^-1 m_j w``.  The presentation graph has
one vertex per generator and one edge ``i -- j`` per relator; a presentation
comes from a virtual link exactly when every connected component of the graph
has Euler characteristic ``V - E`` equal to 0 or 1.  This module extracts the
group of a Gauss diagram, runs the two reductions (cyclic form, then
single-letter conjugators) and draws a Gauss diagram realizing the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from string import ascii_lowercase
from typing import NamedTuple

from ._unionfind import UnionFind
from .diagram import Arrow, GaussDiagram


class NotRealizable(ValueError):
    """Some component of the presentation graph has Euler characteristic < 0."""


class InvalidPresentation(ValueError):
    pass


Syllable = tuple[int, int]  # (generator, exponent +1 / -1)


def inverse(word) -> tuple[Syllable, ...]:
    return tuple((g, -e) for g, e in reversed(word))


def reduce_word(word) -> tuple[Syllable, ...]:
    out = []
    for g, e in word:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


class Relator(NamedTuple):
    """``m_target = conjugator^-1 m_source conjugator``."""

    target: int
    source: int
    conjugator: tuple[Syllable, ...] = ()

    def flipped(self) -> Relator:
        """The same relation solved for the source generator."""
        return Relator(self.source, self.target, inverse(self.conjugator))


@dataclass(frozen=True)
class WirtingerPresentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        rels = tuple(Relator(r[0], r[1], tuple(tuple(s) for s in r[2])) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise InvalidPresentation("generator names must be distinct")
        for r in rels:
            gens = [r.target, r.source] + [g for g, _ in r.conjugator]
            if any(not 0 <= g < n for g in gens):
                raise InvalidPresentation(f"relator {r} refers to a missing generator")
            if any(e not in (1, -1) for _, e in r.conjugator):
                raise InvalidPresentation(f"relator {r} has an exponent other than +-1")

    @classmethod
    def from_names(cls, generators, relators) -> WirtingerPresentation:
        """Build from ``(target, source, [(name, exp), ...])`` triples of names.

        A bare name in the conjugator stands for exponent +1.
        """
        generators = tuple(generators)
        idx = {name: g for g, name in enumerate(generators)}

        def syl(s):
            return (idx[s], 1) if isinstance(s, str) else (idx[s[0]], s[1])

        return cls(generators, tuple(
            Relator(idx[t], idx[s], tuple(map(syl, w))) for t, s, w in relators
        ))

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def s(self) -> int:
        return len(self.relators)

    def relator_str(self, r: Relator) -> str:
        return _fmt(self.generators, r)

    def __str__(self):
        return "; ".join([f"gens {' '.join(self.generators)}"]
                         + [f"rel {self.relator_str(r)}" for r in self.relators]) + ";"

    def renumbered(self, order) -> WirtingerPresentation:
        """Generator ``order[k]`` becomes generator ``k``."""
        new = {old: k for k, old in enumerate(order)}
        return WirtingerPresentation(
            tuple(self.generators[g] for g in order),
            tuple(Relator(new[r.target], new[r.source],
                          tuple((new[g], e) for g, e in r.conjugator)) for r in self.relators),
        )


def default_names(count: int) -> tuple[str, ...]:
    if count <= len(ascii_lowercase):
        return tuple(ascii_lowercase[:count])
    return tuple(f"m{k}" for k in range(1, count + 1))


def fresh_names(taken, count: int) -> list[str]:
    taken, out, k = set(taken), [], 0
    while len(out) < count:
        k += 1
        if f"m{k}" not in taken:
            out.append(f"m{k}")
    return out


# -- group of a Gauss diagram -------------------------------------------------

def group_of_diagram(d: GaussDiagram) -> WirtingerPresentation:
    """One generator per arc between consecutive arrowheads, one relator per
    arrow.  A circle without heads is a single arc with no relation."""
    heads = [[] for _ in d.circle_sizes]
    for a in d.arrows:
        heads[a.head[0]].append(a.head[1])
    arc_id = []  # arc_id[c][h]: generator of the arc starting after head h
    count = 0
    for hs in heads:
        hs.sort()
        ids = {}
        for h in hs:
            ids[h] = count
            count += 1
        if not hs:
            ids[None] = count
            count += 1
        arc_id.append(ids)

    def arc_of(c, p):
        hs = heads[c]
        if not hs:
            return arc_id[c][None]
        before = [h for h in hs if h < p]
        return arc_id[c][before[-1] if before else hs[-1]]

    relators = []
    for a in d.arrows:
        c, h = a.head
        tail_arc = arc_of(*a.tail)
        relators.append(Relator(arc_id[c][h], arc_of(c, h), ((tail_arc, a.sign),)))
    return WirtingerPresentation(default_names(count), tuple(relators))


# -- presentation graph ------------------------------------------------------------

class PresentationGraph(NamedTuple):
    vertex_count: int
    edges: list[tuple[int, int, tuple[Syllable, ...]]]
    components: list[list[int]]
    component_edges: list[list[int]]

    @property
    def euler_characteristics(self) -> list[int]:
        return [len(v) - len(e) for v, e in zip(self.components, self.component_edges)]


def build_graph(pres: WirtingerPresentation) -> PresentationGraph:
    uf = UnionFind(pres.n)
    for r in pres.relators:
        uf.union(r.target, r.source)
    comps = uf.groups()
    where = {v: c for c, vs in enumerate(comps) for v in vs}
    comp_edges = [[] for _ in comps]
    for q, r in enumerate(pres.relators):
        comp_edges[where[r.target]].append(q)
    edges = [(r.target, r.source, r.conjugator) for r in pres.relators]
    return PresentationGraph(pres.n, edges, comps, comp_edges)


def is_realizable(pres: WirtingerPresentation) -> bool:
    return all(chi in (0, 1) for chi in build_graph(pres).euler_characteristics)


def abelianization_rank(pres: WirtingerPresentation) -> int:
    """Each relator abelianizes to ``m_i = m_j``, leaving one free factor per
    component of the presentation graph."""
    return len(build_graph(pres).components)


def _require_realizable(pres):
    graph = build_graph(pres)
    bad = [chi for chi in graph.euler_characteristics if chi not in (0, 1)]
    if bad:
        raise NotRealizable(f"graph component with Euler characteristic {min(bad)}")
    return graph


# -- reduction to cyclic form ------------------------------------------------------

def _cycle_vertices(vertices, rels):
    """Vertices left after repeatedly stripping leaves of a connected graph."""
    degree = {v: 0 for v in vertices}
    adj = {v: [] for v in vertices}
    for r in rels:
        degree[r.target] += 1
        degree[r.source] += 1
        adj[r.target].append(r.source)
        adj[r.source].append(r.target)
    alive = set(vertices)
    stack = [v for v in vertices if degree[v] == 1]
    while stack:
        v = stack.pop()
        alive.discard(v)
        for u in adj[v]:
            if u in alive:
                degree[u] -= 1
                if degree[u] == 1:
                    stack.append(u)
    return alive


def _fmt(names, r: Relator) -> str:
    def word(w):
        return " ".join(names[g] + ("" if e > 0 else "^-1") for g, e in w)
    return f"{names[r.target]} = {word(inverse(r.conjugator) + ((r.source, 1),) + r.conjugator)}"


def to_cyclic_form(pres: WirtingerPresentation, trace=None) -> WirtingerPresentation:
    """Rewrite every graph component into a simple cycle.

    Tree components first get the harmless loop ``m_v = m_v^-1 m_v m_v`` at
    their lowest vertex.  Then a cycle edge ``m_i = w_q^-1 m_j w_q`` next to a
    tree edge ``m_j = w_p^-1 m_k w_p`` is replaced by
    ``m_i = (w_p w_q)^-1 m_k (w_p w_q)``, which pulls ``k`` into the cycle.
    Generators are finally renumbered so that relator ``t`` of a component
    reads ``m_t = w^-1 m_(t+1) w`` around the cycle.
    """
    graph = _require_realizable(pres)
    names = pres.generators
    log = trace if trace is not None else []
    rels = list(pres.relators)
    comp_rels = [list(qs) for qs in graph.component_edges]
    for vs, qs, chi in zip(graph.components, comp_rels, graph.euler_characteristics):
        if chi == 1:
            v = vs[0]
            rels.append(Relator(v, v, ((v, 1),)))
            qs.append(len(rels) - 1)
            log.append(f"pad: rel {_fmt(names, rels[-1])}")

    for vs, qs in zip(graph.components, comp_rels):
        while True:
            cycle = _cycle_vertices(vs, [rels[q] for q in qs])
            spoke = next(((j, q) for j in sorted(cycle) for q in qs
                          if j in rels[q][:2] and not set(rels[q][:2]) <= cycle), None)
            if spoke is None:
                break
            j, p = spoke
            q = next(q for q in qs if j in rels[q][:2] and set(rels[q][:2]) <= cycle)
            rq = rels[q] if rels[q].source == j else rels[q].flipped()
            rp = rels[p] if rels[p].target == j else rels[p].flipped()
            rels[p] = rp
            rels[q] = Relator(rq.target, rp.source,
                              reduce_word(rp.conjugator + rq.conjugator))
            log.append(f"rewrite: rel {_fmt(names, rq)} becomes rel {_fmt(names, rels[q])}")

    order, new_rels = [], []
    for vs, qs in zip(graph.components, comp_rels):
        start = len(order)
        v, unused = vs[0], set(qs)
        walk = [v]
        while unused:
            q = min(q for q in unused if v in rels[q][:2])
            unused.discard(q)
            r = rels[q] if rels[q].target == v else rels[q].flipped()
            new_rels.append(r)
            v = r.source
            walk.append(v)
        assert walk[-1] == walk[0] and len(walk) - 1 == len(vs), "component is not a cycle"
        order.extend(walk[:-1])
        assert len(order) - start == len(vs)
    result = WirtingerPresentation(pres.generators, tuple(new_rels)).renumbered(order)
    log.append(f"cyclic form: {result}")
    return result


def cycle_classes(pres: WirtingerPresentation) -> list[range]:
    """Generator ranges of a presentation in cyclic form.

    Raises ``ValueError`` unless relator ``t`` of each range conjugates
    ``m_(t+1)`` (wrapping around) into ``m_t``, in order.
    """
    classes, t = [], 0
    rels = pres.relators
    if len(rels) != pres.n:
        raise ValueError("cyclic form needs as many relators as generators")
    while t < pres.n:
        start = t
        while rels[t].source == t + 1 and t + 1 < pres.n:
            t += 1
        if rels[t].source != start:
            raise ValueError(f"relator {t} does not close the cycle at {start}")
        if any(rels[u].target != u for u in range(start, t + 1)):
            raise ValueError("relators are not ordered along the cycle")
        t += 1
        classes.append(range(start, t))
    return classes


# -- reduction to single-letter conjugators ----------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    """Cyclic presentation whose conjugators are single letters.

    Relator ``t`` of ``presentation`` reads ``m_t = x^-1 m_(t+1) x`` inside its
    class; ``classes`` lists the generator ranges of the conjugacy classes.
    """

    presentation: WirtingerPresentation
    classes: tuple[range, ...]


def to_simple_form(pres: WirtingerPresentation, trace=None) -> CanonicalForm:
    """Split long conjugators one letter at a time, from the right.

    ``m_i = (u x)^-1 m_j (u x)`` becomes ``m_i = x^-1 m x`` and
    ``m = u^-1 m_j u`` for a new generator ``m`` placed between ``m_i`` and
    ``m_j`` in the cycle.  An empty conjugator is replaced by ``m_j`` itself.
    """
    classes = cycle_classes(pres)
    log = trace if trace is not None else []
    total_new = sum(max(len(r.conjugator) - 1, 0) for r in pres.relators)
    extra = iter(fresh_names(pres.generators, total_new))
    names = list(pres.generators)
    # chain entries: (generator id in old+new numbering, letter)
    new_rels_by_class = []
    for cls in classes:
        chain = []
        for t in cls:
            r = pres.relators[t]
            w = r.conjugator or ((r.source, 1),)
            if not r.conjugator:
                log.append(f"empty conjugator of {names[t]} replaced by {names[r.source]}")
            chain.append((t, w[-1]))
            for x in reversed(w[:-1]):
                names.append(next(extra))
                log.append(f"split: new generator {names[-1]} between "
                           f"{names[t]} and {names[r.source]}")
                chain.append((len(names) - 1, x))
        new_rels_by_class.append(chain)

    order = [g for chain in new_rels_by_class for g, _ in chain]
    new = {old: k for k, old in enumerate(order)}
    rels, out_classes, base = [], [], 0
    for chain in new_rels_by_class:
        size = len(chain)
        for t, (g, (x, e)) in enumerate(chain):
            rels.append(Relator(base + t, base + (t + 1) % size, ((new[x], e),)))
        out_classes.append(range(base, base + size))
        base += size
    result = WirtingerPresentation(tuple(names[g] for g in order), tuple(rels))
    log.append(f"simple form: {result}")
    return CanonicalForm(result, tuple(out_classes))


# -- realization ----------------------------------------------------------------------

def realize(pres: WirtingerPresentation, trace=None) -> GaussDiagram:
    """Gauss diagram whose group is ``pres``.

    One circle per class, its arcs carrying the class generators; each relator
    ``m_t = x^-e m_(t+1) x^e`` becomes an arrow of sign ``e`` from the arc of
    ``x`` to the point where arc ``m_(t+1)`` ends and arc ``m_t`` begins.
    Tautologies ``m = m^-e m m^e`` on one-arc circles are dropped.
    """
    canon = to_simple_form(to_cyclic_form(pres, trace), trace)
    p = canon.presentation
    kept = [q for q, r in enumerate(p.relators)
            if not (r.target == r.source == r.conjugator[0][0])]
    tails = {}
    for q in kept:
        tails.setdefault(p.relators[q].conjugator[0][0], []).append(q)
    kept = set(kept)

    sizes, tail_slot, head_slot = [], {}, {}
    for c, cls in enumerate(canon.classes):
        slots = 0
        for t in reversed(cls):
            if t in kept:
                head_slot[t] = (c, slots)
                slots += 1
            for q in tails.get(t, ()):
                tail_slot[q] = (c, slots)
                slots += 1
        sizes.append(slots)
    arrows = tuple(Arrow(tail_slot[q], head_slot[q], p.relators[q].conjugator[0][1])
                   for q in sorted(kept))
    return GaussDiagram(tuple(sizes), arrows)


__all__ = [
    "CanonicalForm", "InvalidPresentation", "NotRealizable", "PresentationGraph",
    "Relator", "WirtingerPresentation", "abelianization_rank", "build_graph",
    "cycle_classes", "group_of_diagram", "is_realizable", "realize", "reduce_word",
    "to_cyclic_form", "to_simple_form",
]
