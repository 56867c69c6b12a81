"""Tanner graphs of parity-check matrices."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .ring_code import ParityCheckMatrix


@dataclass(frozen=True)
class TannerGraph:
    """Bipartite graph with variable vertices ``0..n-1`` and check vertices ``0..m-1``.

    ``edges`` holds ``(i, j, label)`` triples ordered by check then variable.
    """

    n: int
    m: int
    edges: tuple[tuple[int, int, int], ...]
    check_neighbors: tuple[tuple[int, ...], ...]
    var_neighbors: tuple[tuple[int, ...], ...]

    def label(self, i: int, j: int) -> int:
        for ii, jj, lab in self.edges:
            if ii == i and jj == j:
                return lab
        raise KeyError((i, j))

    @property
    def var_degrees(self) -> tuple[int, ...]:
        return tuple(len(nb) for nb in self.var_neighbors)

    @property
    def check_degrees(self) -> tuple[int, ...]:
        return tuple(len(nb) for nb in self.check_neighbors)


def from_matrix(H: ParityCheckMatrix) -> TannerGraph:
    edges = []
    var_nb: list[list[int]] = [[] for _ in range(H.n)]
    for j, support in enumerate(H.supports):
        for i in support:
            edges.append((i, j, int(H.entries[j, i])))
            var_nb[i].append(j)
    return TannerGraph(
        n=H.n,
        m=H.m,
        edges=tuple(edges),
        check_neighbors=H.supports,
        var_neighbors=tuple(tuple(nb) for nb in var_nb),
    )


def regularity(G: TannerGraph) -> tuple[int, int] | None:
    """``(c, d)`` if all variable degrees equal c and all check degrees equal d."""
    vd = set(G.var_degrees)
    cd = set(G.check_degrees)
    if len(vd) == 1 and len(cd) == 1:
        return vd.pop(), cd.pop()
    return None


def is_connected(G: TannerGraph) -> bool:
    # vertices: ('u', i) and ('v', j)
    seen_u = [False] * G.n
    seen_v = [False] * G.m
    seen_u[0] = True
    queue = deque([("u", 0)])
    while queue:
        kind, idx = queue.popleft()
        if kind == "u":
            for j in G.var_neighbors[idx]:
                if not seen_v[j]:
                    seen_v[j] = True
                    queue.append(("v", j))
        else:
            for i in G.check_neighbors[idx]:
                if not seen_u[i]:
                    seen_u[i] = True
                    queue.append(("u", i))
    return all(seen_u) and all(seen_v)
