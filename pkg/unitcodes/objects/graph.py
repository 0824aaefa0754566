import logging
from collections import deque
from math import gcd
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, maximum_flow, shortest_path

from ..core.field import GfMatrix, PrimeField
from ..core.ring import RingElement, RingSpec, add, euler_phi, is_unit, parity_case
from ..types import INFINITE, CaseTag, Extent, GraphInvariants, ParityCase, StructureProfile


def _unit_mask(k: int) -> np.ndarray:
    return np.array([gcd(i, k) == 1 for i in range(k)], dtype=bool)


class UnitGraph:
    """
    The unit graph G(Z_n (+) Z_m): x ~ y iff x != y and x + y is a unit.

    Vertex v is the element (v // m, v % m). Edges are (u, w) pairs with
    u < w in lexicographic order; that order is also the column order of the
    incidence matrix. Instances are immutable; invariants are computed on
    first use and cached.

    Example:
        graph = UnitGraph.build(RingSpec(5, 5))
        print(graph.num_vertices, graph.num_edges)   # 25 192
        print(graph.invariants().diameter)           # 2
    """

    def __init__(self, spec: RingSpec, edges: List[Tuple[int, int]]):
        self.spec = spec
        self.vertices: List[RingElement] = spec.elements()
        self.edges: List[Tuple[int, int]] = edges
        self.adjacency: List[List[int]] = [[] for _ in self.vertices]
        self.incident_edges: List[List[int]] = [[] for _ in self.vertices]
        self.edge_index: Dict[Tuple[int, int], int] = {}
        for idx, (u, w) in enumerate(edges):
            self.adjacency[u].append(w)
            self.adjacency[w].append(u)
            self.incident_edges[u].append(idx)
            self.incident_edges[w].append(idx)
            self.edge_index[(u, w)] = idx
        for neighbours in self.adjacency:
            neighbours.sort()
        self._cache: Dict[str, object] = {}

    @classmethod
    def build(cls, spec: RingSpec) -> "UnitGraph":
        """Enumerate all vertex pairs whose sum is a unit."""
        n, m = spec.n, spec.m
        first = np.repeat(np.arange(n, dtype=np.int64), m)
        second = np.tile(np.arange(m, dtype=np.int64), n)
        units = _unit_mask(n)[(first[:, None] + first[None, :]) % n]
        units &= _unit_mask(m)[(second[:, None] + second[None, :]) % m]
        us, ws = np.nonzero(np.triu(units, k=1))
        edges = list(zip(us.tolist(), ws.tolist()))
        logging.debug(f"Built G(Z{n}+Z{m}): {n * m} vertices, {len(edges)} edges")
        return cls(spec, edges)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> List[int]:
        return [len(neighbours) for neighbours in self.adjacency]

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    def has_edge(self, u: int, w: int) -> bool:
        return (min(u, w), max(u, w)) in self.edge_index

    def vertex_of(self, x: RingElement) -> int:
        return self.spec.index_of(x)

    def _csgraph(self) -> csr_matrix:
        if "csgraph" not in self._cache:
            size = self.num_vertices
            if self.edges:
                us, ws = np.array(self.edges, dtype=np.int32).T
            else:
                us = ws = np.zeros(0, dtype=np.int32)
            rows = np.concatenate([us, ws])
            cols = np.concatenate([ws, us])
            data = np.ones(rows.size, dtype=np.int32)
            self._cache["csgraph"] = csr_matrix((data, (rows, cols)), shape=(size, size), dtype=np.int32)
        return self._cache["csgraph"]

    def components(self) -> Tuple[int, List[int]]:
        """Number of connected components and the component label of each vertex."""
        if "components" not in self._cache:
            count, labels = connected_components(self._csgraph(), directed=False)
            self._cache["components"] = (int(count), labels.tolist())
        return self._cache["components"]

    def is_connected(self) -> bool:
        return self.components()[0] == 1

    def diameter(self) -> Extent:
        """Largest BFS distance between two vertices; Infinite when disconnected."""
        if "diameter" not in self._cache:
            if not self.is_connected():
                self._cache["diameter"] = INFINITE
            else:
                distances = shortest_path(self._csgraph(), directed=False, unweighted=True)
                self._cache["diameter"] = int(distances.max())
        return self._cache["diameter"]

    def bipartition(self) -> Optional[Tuple[List[int], List[int]]]:
        """Colour classes of a BFS 2-colouring, or None when an odd cycle exists."""
        if "bipartition" not in self._cache:
            colour = [-1] * self.num_vertices
            result: Optional[Tuple[List[int], List[int]]] = None
            proper = True
            for start in range(self.num_vertices):
                if colour[start] != -1 or not proper:
                    continue
                colour[start] = 0
                queue = deque([start])
                while queue and proper:
                    u = queue.popleft()
                    for w in self.adjacency[u]:
                        if colour[w] == -1:
                            colour[w] = 1 - colour[u]
                            queue.append(w)
                        elif colour[w] == colour[u]:
                            proper = False
                            break
            if proper:
                result = (
                    [v for v, c in enumerate(colour) if c == 0],
                    [v for v, c in enumerate(colour) if c == 1],
                )
            self._cache["bipartition"] = result
        return self._cache["bipartition"]

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def shortest_cycle(self) -> Tuple[Extent, List[int]]:
        """
        Girth by breadth-first search from every vertex, plus one shortest cycle.

        Returns:
            (girth, edge indices of a shortest cycle in walking order);
            (Infinite, []) for a forest.
        """
        if "cycle" in self._cache:
            return self._cache["cycle"]
        best: Optional[int] = None
        best_cycle: List[int] = []
        floor = 4 if self.is_bipartite() else 3
        for source in range(self.num_vertices):
            dist = [-1] * self.num_vertices
            parent = [-1] * self.num_vertices
            dist[source] = 0
            queue = deque([source])
            while queue:
                u = queue.popleft()
                if best is not None and 2 * dist[u] >= best:
                    break
                for w in self.adjacency[u]:
                    if dist[w] == -1:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif w != parent[u]:
                        length = dist[u] + dist[w] + 1
                        if best is None or length < best:
                            best = length
                            best_cycle = self._close_cycle(parent, u, w)
            if best == floor:
                break
        result: Tuple[Extent, List[int]] = (INFINITE, []) if best is None else (best, best_cycle)
        self._cache["cycle"] = result
        return result

    def _close_cycle(self, parent: List[int], u: int, w: int) -> List[int]:
        """Edges of the closed walk u -> root -> w -> u through the BFS tree."""
        up = [u]
        while parent[up[-1]] != -1:
            up.append(parent[up[-1]])
        down = [w]
        while parent[down[-1]] != -1:
            down.append(parent[down[-1]])
        walk = up + down[::-1][1:]
        walk.append(u)
        return [self.edge_index[(min(a, b), max(a, b))] for a, b in zip(walk, walk[1:])]

    def girth(self) -> Extent:
        return self.shortest_cycle()[0]

    def edge_connectivity(self) -> int:
        """
        Minimum edge cut by max-flow: lambda = min over t != 0 of maxflow(0, t).

        Each undirected edge is a pair of unit-capacity arcs and every flow is
        computed by Edmonds-Karp. A disconnected graph yields 0.
        """
        if "lambda" not in self._cache:
            capacity = self._csgraph()
            best: Optional[int] = None
            for sink in range(1, self.num_vertices):
                flow = int(maximum_flow(capacity, 0, sink, method="edmonds_karp").flow_value)
                best = flow if best is None else min(best, flow)
                if best == 0:
                    break
            self._cache["lambda"] = best or 0
        return self._cache["lambda"]

    def invariants(self) -> GraphInvariants:
        """All structural invariants, each from its own traversal or flow oracle."""
        return GraphInvariants(
            connected=self.is_connected(),
            num_components=self.components()[0],
            diameter=self.diameter(),
            bipartite=self.is_bipartite(),
            bipartition=self.bipartition(),
            girth=self.girth(),
            min_degree=self.min_degree,
            edge_connectivity=self.edge_connectivity(),
        )

    def incidence_matrix(self, r: int) -> GfMatrix:
        """|V| x |E| unoriented incidence matrix over GF(r), columns in edge order."""
        field = PrimeField(r)
        matrix = np.zeros((self.num_vertices, self.num_edges), dtype=np.int64)
        for idx, (u, w) in enumerate(self.edges):
            matrix[u, idx] = 1
            matrix[w, idx] = 1
        return GfMatrix(field, matrix)


def build(spec: RingSpec) -> UnitGraph:
    """Build G(Z_n (+) Z_m) in canonical order."""
    return UnitGraph.build(spec)


def edge_count_formula(spec: RingSpec) -> int:
    """Closed-form |E|: (nm-1)phi(n)phi(m)/2 when both moduli are odd, else nm*phi(n)phi(m)/2."""
    units = euler_phi(spec.n) * euler_phi(spec.m)
    if parity_case(spec) == ParityCase.BOTH_ODD:
        return (spec.order - 1) * units // 2
    return spec.order * units // 2


def expected_degree(spec: RingSpec, x: RingElement) -> int:
    """Degree predicted by the unit count: one less for units when 2 is a unit."""
    units = euler_phi(spec.n) * euler_phi(spec.m)
    if parity_case(spec) == ParityCase.BOTH_ODD and is_unit(spec, x):
        return units - 1
    return units


def parity_bipartition(spec: RingSpec) -> Optional[Tuple[List[int], List[int]]]:
    """
    Even/odd classes of the coordinate whose modulus is even.

    Only defined when exactly one modulus is even; adding two elements of the
    same class then gives an even coordinate, which is never a unit.
    """
    if parity_case(spec) != ParityCase.EXACTLY_ONE_EVEN:
        return None
    use_second = spec.m % 2 == 0
    even: List[int] = []
    odd: List[int] = []
    for idx, x in enumerate(spec.elements()):
        value = x.b if use_second else x.a
        (odd if value % 2 else even).append(idx)
    return even, odd


def girth_witness(profile: StructureProfile) -> Optional[List[RingElement]]:
    """
    The explicit short cycle used to pin down the girth in each proven case.

    Returns the cycle's vertices in walking order (the closing edge runs from
    the last vertex back to the first), or None outside the proven cases.
    """
    spec = RingSpec(profile.n, profile.m)
    tag = profile.case_tag

    if tag == CaseTag.PP_ODD_ODD:
        p = profile.n_factorization[0][0]
        q = profile.m_factorization[0][0]
        return [spec.element(1, q), spec.element(p, 1), spec.element(1, 1)]

    if tag == CaseTag.PPPP_ODD_ODD:
        (p1, _), (p2, _) = profile.n_factorization
        (q1, _), (q2, _) = profile.m_factorization
        return [spec.element(p1, q1), spec.element(p2, q2), spec.element(p1 + p2, q1 + q2)]

    if tag not in (CaseTag.PP_ODD_TWO, CaseTag.PPPP_ONE_EVEN):
        return None

    # (odd coordinate, even coordinate) pairs, flipped when n is the even modulus
    odd_first = profile.n % 2 == 1
    odd_modulus = profile.n if odd_first else profile.m
    even_modulus = profile.m if odd_first else profile.n
    odd_factors = profile.n_factorization if odd_first else profile.m_factorization
    even_factors = profile.m_factorization if odd_first else profile.n_factorization

    if tag == CaseTag.PPPP_ONE_EVEN:
        (p1, _), (p2, _) = odd_factors
        q = even_factors[1][0]
        pairs = [(p1, 2), (p2, q), (p1 + p2, 2), (p1 + p2, q)]
    elif even_modulus >= 4:
        pairs = [(0, 0), (1, 1), (0, 2), (1, 3)]
    elif odd_modulus == 3:
        pairs = [(0, 0), (1, 1), (1, 0), (0, 1), (2, 0), (2, 1)]
    else:
        a = 3 if odd_factors[0][0] == 3 else 1
        pairs = [(0, 0), (1, 1), (a, 0), (2, 1)]

    if odd_first:
        return [spec.element(x, y) for x, y in pairs]
    return [spec.element(y, x) for x, y in pairs]


def witness_is_cycle(graph: UnitGraph, cycle: List[RingElement]) -> bool:
    """True iff the vertices are distinct and consecutive ones (cyclically) are adjacent."""
    indices = [graph.vertex_of(x) for x in cycle]
    if len(set(indices)) != len(indices) or len(indices) < 3:
        return False
    spec = graph.spec
    for x, y in zip(cycle, cycle[1:] + cycle[:1]):
        if not is_unit(spec, add(spec, x, y)):
            return False
        if not graph.has_edge(spec.index_of(x), spec.index_of(y)):
            return False
    return True
