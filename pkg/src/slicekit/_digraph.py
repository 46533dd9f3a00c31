"""Small directed-graph helpers: iterative Tarjan SCCs and condensation
reachability.  Vertices are arbitrary hashables; callers supply a sort key
when deterministic component order matters.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, Mapping, Sequence

Vertex = Hashable


def strongly_connected_components(
    vertices: Sequence[Vertex], succ: Mapping[Vertex, Iterable[Vertex]]
) -> list[list[Vertex]]:
    """Tarjan's algorithm, iterative.  Returns components in reverse
    topological order of the condensation (standard Tarjan emission order)."""
    index: dict[Vertex, int] = {}
    low: dict[Vertex, int] = {}
    on_stack: set[Vertex] = set()
    stack: list[Vertex] = []
    counter = 0
    comps: list[list[Vertex]] = []

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
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
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def condensation_reachability(
    comps: Sequence[Sequence[Vertex]], succ: Mapping[Vertex, Iterable[Vertex]]
) -> set[tuple[int, int]]:
    """Reflexive-transitive reachability between components, as index pairs
    (i, j) meaning component i reaches component j."""
    comp_of = {v: i for i, comp in enumerate(comps) for v in comp}
    direct: dict[int, set[int]] = {i: set() for i in range(len(comps))}
    for i, comp in enumerate(comps):
        for v in comp:
            for w in succ.get(v, ()):
                j = comp_of[w]
                if j != i:
                    direct[i].add(j)
    reach: set[tuple[int, int]] = set()
    for i in range(len(comps)):
        seen = {i}
        frontier = [i]
        while frontier:
            a = frontier.pop()
            for b in direct[a]:
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        reach.update((i, j) for j in seen)
    return reach


def sort_components(
    comps: list[list[Vertex]], key: Callable[[Vertex], object]
) -> list[list[Vertex]]:
    """Deterministic order: sort members within each component, then
    components by their smallest member key."""
    ordered = [sorted(c, key=key) for c in comps]
    ordered.sort(key=lambda c: key(c[0]))
    return ordered
