"""Digraph automorphism groups via color refinement and backtracking.

The engine enumerates the full automorphism group with an
individualize-refine search; a factorial brute-force oracle is provided
for cross-validation on tiny digraphs.
"""

from __future__ import annotations

import itertools
import json
import os
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import perms as permlib
from .digraphs import Digraph, MCayleyDigraph, is_connected, is_k_regular, is_oriented, right_translation
from .errors import BlockMismatch, TooLarge
from .groups import Group
from .reports import VerificationReport

DEFAULT_VERTEX_CAP = 512
BRUTE_FORCE_CAP = 8
ELEMENT_CAP = 10 ** 6


def vertex_cap() -> int:
    override = os.environ.get("OMSR_VERTEX_CAP")
    return int(override) if override else DEFAULT_VERTEX_CAP


@dataclass
class PermutationGroup:
    """A permutation group with its exact order and materialized elements."""

    degree: int
    generators: List[tuple]
    order: int
    elements: Optional[List[tuple]] = None

    def element_set(self) -> set:
        if self.elements is None:
            self.elements = _closure_elements(self.generators, self.degree)
            if len(self.elements) != self.order:
                raise ValueError("generator closure disagrees with recorded order")
        return set(self.elements)

    def to_json(self) -> str:
        return json.dumps({
            "degree": self.degree,
            "order": self.order,
            "generators": [permlib.to_cycle_string(g) for g in self.generators],
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PermutationGroup":
        data = json.loads(text)
        gens = [permlib.from_cycle_string(s, degree=data["degree"])
                for s in data["generators"]]
        return cls(degree=data["degree"], generators=gens, order=data["order"])


def _closure_elements(generators, degree, cap=ELEMENT_CAP):
    ident = permlib.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in generators:
                q = permlib.compose(p, g)
                if q not in seen:
                    if len(seen) >= cap:
                        raise TooLarge(f"group closure exceeds element cap {cap}")
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


def _generating_subset(elements, degree):
    """Greedy small generating set drawn from the sorted element list."""
    target = len(elements)
    gens: List[tuple] = []
    span = {permlib.identity(degree)}
    for p in sorted(elements):
        if p in span:
            continue
        gens.append(p)
        span = set(_closure_elements(gens, degree))
        if len(span) == target:
            break
    return gens


# --- refinement --------------------------------------------------------------

def _normalize_colors(colors):
    mapping = {}
    out = []
    for c in colors:
        if c not in mapping:
            mapping[c] = len(mapping)
        out.append(mapping[c])
    return out


def _refine(out_adj, in_adj, colors, canonical):
    """Coarsest stable refinement of the input coloring.

    canonical=False numbers new colors by first occurrence in vertex order;
    canonical=True numbers by sorted signature so that colorings of
    corresponding search branches stay aligned.
    """
    n = len(colors)
    ncolors = len(set(colors))
    while True:
        sigs = [
            (colors[v],
             tuple(sorted(colors[w] for w in out_adj[v])),
             tuple(sorted(colors[w] for w in in_adj[v])))
            for v in range(n)
        ]
        if canonical:
            mapping = {s: i for i, s in enumerate(sorted(set(sigs)))}
        else:
            mapping = {}
            for s in sigs:
                if s not in mapping:
                    mapping[s] = len(mapping)
        new = [mapping[s] for s in sigs]
        if len(mapping) == ncolors:
            return new
        colors = new
        ncolors = len(mapping)


def refine(d: Digraph, initial: Optional[Sequence[int]] = None) -> List[int]:
    """Stable coloring refining the input (uniform by default)."""
    colors = _normalize_colors(initial) if initial is not None else [0] * d.n
    if len(colors) != d.n:
        raise ValueError("initial coloring length must match vertex count")
    return _refine(d.out_adj, d.in_adj, colors, canonical=False)


# --- search ------------------------------------------------------------------

def _is_automorphism(d: Digraph, p) -> bool:
    out_sets = d.out_sets
    for u in range(d.n):
        if {p[w] for w in d.out_adj[u]} != out_sets[p[u]]:
            return False
    return True


def _profile(colors):
    counts = {}
    for c in colors:
        counts[c] = counts.get(c, 0) + 1
    return tuple(counts[c] for c in sorted(counts))


def _cells(colors):
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return cells


def _individualize(out_adj, in_adj, colors, v):
    fresh = list(colors)
    fresh[v] = max(colors) + 1
    return _refine(out_adj, in_adj, fresh, canonical=True)


class _AbortSearch(Exception):
    """Internal: the caller's abort threshold was crossed."""


def _aut_elements(d: Digraph, element_cap=ELEMENT_CAP,
                  abort_above: Optional[int] = None):
    """Enumerate all automorphisms; returns (elements, aborted).

    With abort_above set, the search stops as soon as more than that many
    automorphisms exist — enough to decide |Aut| <= abort_above cheaply.
    """
    out_adj, in_adj = d.out_adj, d.in_adj
    base = _refine(out_adj, in_adj, [0] * d.n, canonical=True)
    found: List[tuple] = []

    def descend(c1, c2):
        cells1 = _cells(c1)
        cells2 = _cells(c2)
        target = None
        for color in sorted(cells1):
            size = len(cells1[color])
            if size > 1 and (target is None or size < len(cells1[target])):
                target = color
        if target is None:
            perm = [0] * d.n
            for color, members in cells1.items():
                perm[members[0]] = cells2[color][0]
            perm = tuple(perm)
            if _is_automorphism(d, perm):
                if len(found) >= element_cap:
                    raise TooLarge(f"automorphism count exceeds cap {element_cap}")
                found.append(perm)
                if abort_above is not None and len(found) > abort_above:
                    raise _AbortSearch
            return
        v = cells1[target][0]
        c1v = _individualize(out_adj, in_adj, c1, v)
        prof = _profile(c1v)
        for u in cells2[target]:
            c2u = _individualize(out_adj, in_adj, c2, u)
            if _profile(c2u) == prof:
                descend(c1v, c2u)

    try:
        descend(base, base)
    except _AbortSearch:
        return found, True
    return found, False


def automorphisms(d: Digraph, cap: Optional[int] = None) -> PermutationGroup:
    """Full automorphism group by individualize-refine backtracking."""
    limit = cap if cap is not None else vertex_cap()
    if d.n > limit:
        raise TooLarge(f"{d.n} vertices exceeds cap {limit}")
    elements, _ = _aut_elements(d)
    elements = sorted(elements)
    gens = _generating_subset(elements, d.n)
    return PermutationGroup(degree=d.n, generators=gens,
                            order=len(elements), elements=elements)


def aut_order_bounded(d: Digraph, threshold: int) -> Optional[int]:
    """Exact |Aut| when it is <= threshold, else None.

    Short-circuits to 1 when refinement is already discrete.
    """
    colors = _refine(d.out_adj, d.in_adj, [0] * d.n, canonical=True)
    if len(set(colors)) == d.n:
        return 1
    found, aborted = _aut_elements(d, abort_above=threshold)
    return None if aborted else len(found)


def brute_force_automorphisms(d: Digraph) -> PermutationGroup:
    """Oracle: filter all N! bijections by arc preservation (N <= 8)."""
    if d.n > BRUTE_FORCE_CAP:
        raise TooLarge(f"brute force limited to {BRUTE_FORCE_CAP} vertices")
    elements = [p for p in itertools.permutations(range(d.n)) if _is_automorphism(d, p)]
    gens = _generating_subset(elements, d.n)
    return PermutationGroup(degree=d.n, generators=gens,
                            order=len(elements), elements=elements)


def stabilizer(A: PermutationGroup, v: int) -> PermutationGroup:
    """Subgroup of A fixing the vertex v."""
    sub = sorted(p for p in A.element_set() if p[v] == v)
    gens = _generating_subset(sub, A.degree)
    return PermutationGroup(degree=A.degree, generators=gens,
                            order=len(sub), elements=sub)


def orbit_count(A: PermutationGroup) -> int:
    return len(permlib.orbit_partition(A.generators, A.degree))


def is_omsr(gamma: MCayleyDigraph, G: Group, m: int, valency: int = 2,
            construction_kind: str = "custom",
            aut: Optional[PermutationGroup] = None) -> VerificationReport:
    """Verdict: oriented, regular of the given valency, and |Aut| = |G|.

    |Aut| = |G| suffices for Aut = R(G) because the right translations
    always embed; the report still confirms the embedding explicitly.
    """
    if gamma.n != m * G.order:
        raise BlockMismatch(f"vertex count {gamma.n} != m*|G| = {m * G.order}")
    start = time.perf_counter()
    oriented = is_oriented(gamma)
    regular = is_k_regular(gamma, valency)
    connected = is_connected(gamma)
    A = aut if aut is not None else automorphisms(gamma)
    elems = A.element_set()
    embeds = all(right_translation(G, m, g) in elems for g in G.elements())
    stab = stabilizer(A, 0)
    verdict = bool(oriented and regular and A.order == G.order)
    elapsed = (time.perf_counter() - start) * 1000.0
    return VerificationReport(
        group_label=G.label or f"order-{G.order}",
        m=m,
        group_order=G.order,
        construction_kind=construction_kind,
        omsr=verdict,
        oriented=oriented,
        regular2=regular,
        connected=connected,
        aut_order=A.order,
        stabilizer_order=stab.order,
        orbit_count=orbit_count(A),
        translations_embed=embeds,
        runtime_ms=elapsed,
    )
