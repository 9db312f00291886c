"""m-Cayley digraphs on vertex set G x Z_m, plus the digraph predicates.

Vertex (g, i) has linear index i*|G| + g.  The arc set is
{(g_i, (t*g)_j) : t in T[i][j], g in G}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ParseError
from .groups import Group, GroupElement, _idx
from .perms import Perm


@dataclass(frozen=True)
class Vertex:
    g: int
    block: int


def vertex_index(v: Vertex, group_order: int) -> int:
    return v.block * group_order + v.g


def vertex_at(idx: int, group_order: int) -> Vertex:
    return Vertex(idx % group_order, idx // group_order)


class ConnectionTable:
    """m x m array of element subsets defining the inter-block arcs."""

    __slots__ = ("m", "sets")

    def __init__(self, m: int, sets):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.sets = tuple(tuple(frozenset(_idx(e) for e in sets[i][j])
                                for j in range(m)) for i in range(m))

    @classmethod
    def from_dict(cls, m: int, entries: dict) -> "ConnectionTable":
        sets = [[entries.get((i, j), ()) for j in range(m)] for i in range(m)]
        return cls(m, sets)

    def validate(self, G: Group) -> None:
        for i in range(self.m):
            for j in range(self.m):
                for t in self.sets[i][j]:
                    if not 0 <= t < G.order:
                        raise ValueError(f"T[{i}][{j}] entry {t} not an element of {G!r}")

    def to_text(self) -> str:
        lines = [f"m: {self.m}"]
        for i in range(self.m):
            for j in range(self.m):
                if self.sets[i][j]:
                    body = " ".join(str(t) for t in sorted(self.sets[i][j]))
                    lines.append(f"T {i} {j} : {body}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, ConnectionTable) and self.sets == other.sets

    def __hash__(self):
        return hash(self.sets)

    def __repr__(self):
        return f"ConnectionTable(m={self.m})"


def parse_connection_table(text: str) -> ConnectionTable:
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    content = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not content or not content[0][1].startswith("m:"):
        raise ParseError("expected leading 'm: <int>' line", content[0][0] if content else 1)
    hdr_no, hdr = content[0]
    try:
        m = int(hdr.split(":", 1)[1])
    except ValueError:
        raise ParseError("m must be an integer", hdr_no, hdr.index(":") + 2)
    entries = {}
    for no, ln in content[1:]:
        head, sep, body = ln.partition(":")
        toks = head.split()
        if len(toks) != 3 or toks[0] != "T" or not sep:
            raise ParseError("expected 'T i j : e1 e2 ...'", no)
        try:
            i, j = int(toks[1]), int(toks[2])
        except ValueError:
            raise ParseError("block indices must be integers", no, 3)
        if not (0 <= i < m and 0 <= j < m):
            raise ParseError(f"block index ({i},{j}) out of range for m={m}", no)
        try:
            elems = [int(t) for t in body.split()]
        except ValueError:
            raise ParseError("element indices must be integers", no, ln.index(":") + 2)
        entries[(i, j)] = set(entries.get((i, j), set())) | set(elems)
    return ConnectionTable.from_dict(m, entries)


class Digraph:
    """Immutable digraph with both adjacency directions precomputed."""

    __slots__ = ("n", "out_adj", "in_adj", "out_sets", "in_sets")

    def __init__(self, n: int, out_adj):
        self.n = n
        self.out_adj = tuple(tuple(sorted(nbrs)) for nbrs in out_adj)
        rev = [[] for _ in range(n)]
        for u in range(n):
            for v in self.out_adj[u]:
                rev[v].append(u)
        self.in_adj = tuple(tuple(sorted(nbrs)) for nbrs in rev)
        self.out_sets = tuple(frozenset(nbrs) for nbrs in self.out_adj)
        self.in_sets = tuple(frozenset(nbrs) for nbrs in self.in_adj)

    def arcs(self):
        return [(u, v) for u in range(self.n) for v in self.out_adj[u]]

    def arc_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.out_adj)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out_sets[u]


class MCayleyDigraph(Digraph):
    """Digraph over G x Z_m built from a connection table."""

    __slots__ = ("group", "m", "table")

    def __init__(self, group: Group, table: ConnectionTable, out_adj):
        super().__init__(group.order * table.m, out_adj)
        self.group = group
        self.m = table.m
        self.table = table

    def vertex(self, g, block: int) -> Vertex:
        return Vertex(_idx(g), block)

    def index_of(self, v: Vertex) -> int:
        return vertex_index(v, self.group.order)

    def vertex_at(self, idx: int) -> Vertex:
        return vertex_at(idx, self.group.order)


def build_mcayley(G: Group, T: ConnectionTable) -> MCayleyDigraph:
    """Materialize the digraph; adjacency lists sorted by linear index."""
    T.validate(G)
    n, m = G.order, T.m
    out = [[] for _ in range(n * m)]
    for i in range(m):
        for j in range(m):
            for t in T.sets[i][j]:
                row = G.mult[t]
                for g in range(n):
                    out[i * n + g].append(j * n + row[g])
    return MCayleyDigraph(G, T, out)


def out_neighbors(d: MCayleyDigraph, v: Vertex) -> set:
    idx = d.index_of(v)
    return {d.vertex_at(w) for w in d.out_adj[idx]}


def in_neighbors(d: MCayleyDigraph, v: Vertex) -> set:
    idx = d.index_of(v)
    return {d.vertex_at(w) for w in d.in_adj[idx]}


def distance2_out_set(d: MCayleyDigraph, v: Vertex) -> set:
    """Union of out-neighborhoods over the out-neighbors of v."""
    idx = d.index_of(v)
    seen = set()
    for w in d.out_adj[idx]:
        seen.update(d.out_adj[w])
    return {d.vertex_at(w) for w in seen}


def is_oriented(d: Digraph) -> bool:
    """No loops and no pair of oppositely directed arcs."""
    for u in range(d.n):
        if u in d.out_sets[u]:
            return False
        for v in d.out_adj[u]:
            if v > u and u in d.out_sets[v]:
                return False
    return True


def oriented_table_criterion(G: Group, T: ConnectionTable) -> bool:
    """Connection-set test: no identity on the diagonal, no T[i][j] meeting T[j][i]^-1."""
    for i in range(T.m):
        if 0 in T.sets[i][i]:
            return False
    for i in range(T.m):
        for j in range(T.m):
            inv_ji = {G.inverse(t) for t in T.sets[j][i]}
            if T.sets[i][j] & inv_ji:
                return False
    return True


def is_k_regular(d: Digraph, k: int) -> bool:
    return all(len(d.out_adj[v]) == k and len(d.in_adj[v]) == k for v in range(d.n))


def _reachable(adj, start: int) -> int:
    seen = [False] * len(adj)
    seen[start] = True
    stack = [start]
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count


def is_connected(d: Digraph) -> bool:
    """Strong connectivity: forward and reverse sweeps both cover V."""
    if d.n == 0:
        return False
    return _reachable(d.out_adj, 0) == d.n and _reachable(d.in_adj, 0) == d.n


def is_weakly_connected(d: Digraph) -> bool:
    sym = [sorted(set(d.out_adj[v]) | set(d.in_adj[v])) for v in range(d.n)]
    return d.n > 0 and _reachable(sym, 0) == d.n


def right_translation(G: Group, m: int, g) -> Perm:
    """Vertex permutation x_i -> (x*g)_i."""
    g = _idx(g)
    n = G.order
    images = []
    for i in range(m):
        base = i * n
        images.extend(base + G.mult[x][g] for x in range(n))
    return tuple(images)


def induced_subdigraph(d: Digraph, vertices):
    """Digraph on the given vertices with all internal arcs.

    Vertices may be Vertex values (for m-Cayley digraphs) or linear indices.
    Returns (subdigraph, labels) where labels[i] is the original index of
    the i-th vertex in sorted order.
    """
    idxs = set()
    for v in vertices:
        if isinstance(v, Vertex):
            idxs.add(d.index_of(v))
        else:
            idxs.add(int(v))
    labels = sorted(idxs)
    pos = {u: i for i, u in enumerate(labels)}
    out = [[pos[w] for w in d.out_adj[u] if w in idxs] for u in labels]
    return Digraph(len(labels), out), labels


def export_arclist(d: Digraph) -> str:
    """JSON header line followed by one 'u v' arc per line."""
    header = {"vertex_count": d.n, "arc_count": d.arc_count()}
    if isinstance(d, MCayleyDigraph):
        header["group"] = d.group.label
        header["m"] = d.m
    lines = [json.dumps(header, sort_keys=True)]
    lines.extend(f"{u} {v}" for u, v in d.arcs())
    return "\n".join(lines) + "\n"
