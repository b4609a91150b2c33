"""The tree an amalgam acts on, with exact coset labels.

Vertices of one type are cosets of the first factor, vertices of the other
type are cosets of the second factor, and edges are cosets of the edge
group.  Every coset has a canonical label: the alternating sequence of
nontrivial transversal representatives of any member (the H tail never
matters).  A vertex label (i, sigma) additionally drops a trailing syllable
lying in factor i.

Distances and geodesics are computed by walking labels toward the root
vertex (the trivial coset of factor 1), so no ball needs to be built first.
"""
from __future__ import annotations

from typing import Dict, Iterator, List, Set, Tuple

from .abelian import Element
from .errors import BallBudgetError, ConstructionError
from .groupspec import AmalgamSpec, NormalForm

Syllables = Tuple[Tuple[int, Element], ...]
Vertex = Tuple[int, Syllables]
Edge = Syllables


def base_vertex(i: int) -> Vertex:
    return (i, ())


BASE_EDGE: Edge = ()


def vertex_label(i: int, sylls: Syllables) -> Vertex:
    """Canonical label of the coset (product of sylls) * G_i."""
    if sylls and sylls[-1][0] == i:
        sylls = sylls[:-1]
    return (i, sylls)


def edge_endpoints(edge: Edge) -> Tuple[Vertex, Vertex]:
    """(factor-1 endpoint, factor-2 endpoint) of an edge."""
    return vertex_label(1, edge), vertex_label(2, edge)


def parent(v: Vertex) -> Tuple[Vertex, Edge]:
    """Neighbor nearer the root, and the edge crossed to reach it."""
    i, sylls = v
    if not sylls:
        if i == 1:
            raise ConstructionError("the root has no parent")
        return (1, ()), BASE_EDGE
    return (3 - i, sylls[:-1]), sylls


def depth(v: Vertex) -> int:
    d = 0
    while v != (1, ()):
        v, _ = parent(v)
        d += 1
    return d


def tree_distance(v: Vertex, w: Vertex) -> int:
    return len(geodesic_edges(v, w))


def geodesic_edges(src: Vertex, dst: Vertex) -> List[Tuple[Edge, int]]:
    """Edges crossed walking src -> dst, each with a traversal sign.

    The sign is +1 when the edge is crossed from its factor-1 endpoint to
    its factor-2 endpoint and -1 the other way.  Walking toward the root
    from a factor-2 vertex crosses an edge 2 -> 1, hence sign -1.
    """
    # Walking up from a vertex of type i crosses its parent edge in the
    # direction i -> (3-i), so the sign is +1 exactly when i == 1.
    up_src: List[Tuple[Edge, int]] = []
    up_dst: List[Tuple[Edge, int]] = []
    a, b = src, dst
    da, db = depth(a), depth(b)
    while da > db:
        sign = 1 if a[0] == 1 else -1
        a, e = parent(a)
        up_src.append((e, sign))
        da -= 1
    while db > da:
        sign = 1 if b[0] == 1 else -1
        b, e = parent(b)
        up_dst.append((e, sign))
        db -= 1
    while a != b:
        sa = 1 if a[0] == 1 else -1
        a, e = parent(a)
        up_src.append((e, sa))
        sb = 1 if b[0] == 1 else -1
        b, f = parent(b)
        up_dst.append((f, sb))
    # Edges on dst's side are traversed downward on the src -> dst walk,
    # so their signs flip.
    out = list(up_src)
    out.extend((e, -s) for e, s in reversed(up_dst))
    return out


class TreeAction:
    """Left action of an amalgam on its tree, by relabeling cosets."""

    def __init__(self, spec: AmalgamSpec):
        self.spec = spec

    def _push(self, g: NormalForm, sylls: Syllables) -> Syllables:
        form = g
        for i, c in sylls:
            form = self.spec.append_letter(form, i, c)
        return form.syllables

    def on_vertex(self, g: NormalForm, v: Vertex) -> Vertex:
        i, sylls = v
        return vertex_label(i, self._push(g, sylls))

    def on_edge(self, g: NormalForm, e: Edge) -> Edge:
        return self._push(g, e)

    def degree(self, v: Vertex):
        """Vertex degree in the full tree; None when infinite."""
        return self.spec.embedding(v[0]).index()

    def neighbors(self, v: Vertex, bound: int = 0) -> Iterator[Tuple[Edge, Vertex]]:
        i, sylls = v
        for rep in self.spec.embedding(i).transversal(bound):
            if rep == self.spec.factor(i).identity:
                e = sylls
            else:
                e = sylls + ((i, rep),)
            yield e, vertex_label(3 - i, e)


class TreeBall:
    """All vertices within a radius of the root, built breadth first."""

    def __init__(
        self,
        spec: AmalgamSpec,
        radius: int,
        exponent_bound: int = 0,
        vertex_budget: int = 200000,
    ):
        self.spec = spec
        self.radius = radius
        self.exponent_bound = exponent_bound
        self.truncated = any(spec.embedding(i).index() is None for i in (1, 2))
        self.action = TreeAction(spec)
        self.vertices: Dict[Vertex, int] = {}
        self.edges: Set[Edge] = set()
        frontier = [(1, ())]
        self.vertices[(1, ())] = 0
        for d in range(radius):
            nxt = []
            for v in frontier:
                for e, w in self.action.neighbors(v, exponent_bound):
                    self.edges.add(e)
                    if w not in self.vertices:
                        self.vertices[w] = d + 1
                        nxt.append(w)
                        if len(self.vertices) > vertex_budget:
                            raise BallBudgetError(
                                vertex_budget,
                                f"radius {radius} exceeds the vertex budget",
                            )
            frontier = nxt

    def vertex_count(self) -> int:
        return len(self.vertices)

    def edge_count(self) -> int:
        return len(self.edges)


def render_vertex(spec: AmalgamSpec, v: Vertex) -> str:
    i, sylls = v
    word = spec.render(NormalForm(sylls, spec.edge.identity))
    return f"G{i}:{word}"


def render_edge(spec: AmalgamSpec, e: Edge) -> str:
    word = spec.render(NormalForm(e, spec.edge.identity))
    return f"H:{word}"


def to_dot(spec: AmalgamSpec, ball: TreeBall) -> str:
    """GraphViz rendering of a ball, deterministic line order."""
    lines = ["graph tree {", "  node [shape=circle];"]
    for v in sorted(ball.vertices, key=_vertex_key):
        label = render_vertex(spec, v)
        shape = "circle" if v[0] == 1 else "box"
        lines.append(f'  "{label}" [shape={shape}];')
    for e in sorted(ball.edges, key=_sylls_key):
        a, b = edge_endpoints(e)
        if a not in ball.vertices or b not in ball.vertices:
            continue
        la, lb = render_vertex(spec, a), render_vertex(spec, b)
        lines.append(f'  "{la}" -- "{lb}" [label="{render_edge(spec, e)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _sylls_key(sylls: Syllables):
    return (len(sylls), sylls)


def _vertex_key(v: Vertex):
    return (len(v[1]), v[0], v[1])
