import logging
from itertools import combinations, product
from typing import Dict, List, Optional

import numpy as np

from ..core.field import GfMatrix, PrimeField
from ..core.ring import euler_phi
from ..types import (
    INFINITE, CaseTag, CodeParams, Distance, ParityCase, PredictedParams,
    StructureProfile, TheoremSource, Unknown,
)
from .graph import UnitGraph

DEFAULT_BUDGET = 2 ** 26
DEFAULT_DUAL_CAP = 8

# rows of the precomputed low-order codeword table
_TABLE_ROWS = 2 ** 16
_TABLE_BITS = 16
_BYTE_WEIGHTS = np.array([bin(b).count("1") for b in range(256)], dtype=np.uint8)


class LinearCode:
    """
    Linear code over GF(r) spanned by the rows of a generator matrix.

    Codes built with from_incidence keep their graph, which lets the dual
    distance search walk cycles instead of arbitrary column subsets.

    When r^k exceeds the enumeration budget, min_distance_exact returns
    Unknown[1, w] where w is the weight of the lightest nonzero generator
    row, a tighter upper end than the code length.

    Example:
        code = LinearCode.from_incidence(UnitGraph.build(RingSpec(3, 2)), 3)
        print(code.length, code.dimension)        # 6 5
        print(code.min_distance_exact())          # 2
    """

    def __init__(self, generator: GfMatrix, graph: Optional[UnitGraph] = None):
        self.generator = generator
        self.field: PrimeField = generator.field
        self.graph = graph
        self.basis = generator.row_basis()

    @classmethod
    def from_incidence(cls, graph: UnitGraph, r: int) -> "LinearCode":
        """The code C_r(H) generated by the incidence matrix H of the graph."""
        return cls(graph.incidence_matrix(r), graph)

    @property
    def r(self) -> int:
        return self.field.r

    @property
    def length(self) -> int:
        return self.generator.cols

    @property
    def dimension(self) -> int:
        return self.basis.rows

    def dual_dimension(self) -> int:
        """dim(C^perp) = n - k."""
        return self.length - self.dimension

    def fits_budget(self, budget: int) -> bool:
        return self.r ** self.dimension <= budget

    def min_distance_exact(self, budget: int = DEFAULT_BUDGET) -> Distance:
        """
        Minimum nonzero codeword weight by enumerating every message.

        Runs when r^k <= budget. The low-order basis rows are tabulated once
        and every high-order combination is added to the whole table at a
        time. Over GF(2) codewords are bit-packed and the high-order part is
        walked in Gray-code order; over odd r only messages whose leading
        high-order coefficient is 1 are visited.

        Returns:
            The exact distance, or Unknown carrying (1, weight of the lightest
            generator row) when the budget is exceeded.
        """
        if self.dimension == 0:
            return Unknown(1, None, "zero code")
        if not self.fits_budget(budget):
            logging.info(f"Enumeration of {self.r}^{self.dimension} codewords exceeds budget {budget}")
            return Unknown(1, self._lightest_row(), "budget exceeded")
        return _minimum_weight(self.basis.to_array(), self.r)

    def _lightest_row(self) -> int:
        weights = [w for w in np.count_nonzero(self.generator.to_array(), axis=1).tolist() if w]
        return min(weights) if weights else self.length

    def params(self, budget: int = DEFAULT_BUDGET) -> CodeParams:
        return CodeParams(self.length, self.dimension, self.min_distance_exact(budget))

    def dual_min_distance(self, cap: int = DEFAULT_DUAL_CAP) -> Distance:
        """
        Minimum distance of the dual code: the fewest dependent generator columns.

        The generator of C is a parity-check matrix of C^perp, so the search
        looks for the smallest t <= cap such that some t columns are linearly
        dependent. Over GF(2) an incidence code answers with the girth of its
        graph, after checking that the shortest cycle's columns are dependent.
        """
        if self.dimension == 0:
            return Unknown(1, None, "zero code")
        if self.graph is not None and self.r == 2:
            shortcut = self._girth_shortcut(cap)
            if shortcut is not None:
                return shortcut
        for t in range(1, cap + 1):
            if self.graph is not None:
                witness = self._circuit_of_size(t)
            else:
                witness = self._dependent_columns(t)
            if witness is not None:
                logging.debug(f"Dependent columns of size {t}: {witness}")
                return t
        return Unknown(cap + 1, None, "no dependent columns within cap")

    def _girth_shortcut(self, cap: int) -> Optional[Distance]:
        girth, cycle = self.graph.shortest_cycle()
        if girth is INFINITE or girth > cap:
            return Unknown(cap + 1, None, "no cycle within cap")
        if self.generator.columns_dependent(cycle):
            return girth
        logging.warning(f"Shortest cycle {cycle} is not a dependent column set over GF(2)")
        return None

    def _dependent_columns(self, t: int) -> Optional[List[int]]:
        for cols in combinations(range(self.length), t):
            if self.generator.columns_dependent(cols):
                return list(cols)
        return None

    def _circuit_of_size(self, t: int) -> Optional[List[int]]:
        """
        A dependent set of t incidence columns, if one exists.

        A minimal dependent set of incidence columns is a connected edge set
        in which every touched vertex meets at least two edges, so the search
        grows connected edge sets from each anchor edge (the lowest index in
        the set) and always extends at a vertex that still has degree one.
        """
        for anchor in range(self.length):
            u, w = self.graph.edges[anchor]
            found = self._grow([anchor], {u: 1, w: 1}, anchor, t)
            if found is not None:
                return found
        return None

    def _grow(self, chosen: List[int], degree: Dict[int, int], anchor: int, t: int) -> Optional[List[int]]:
        if len(chosen) == t:
            if all(d >= 2 for d in degree.values()) and self.generator.columns_dependent(chosen):
                return sorted(chosen)
            return None
        remaining = t - len(chosen)
        deficient = sorted(v for v, d in degree.items() if d == 1)
        if len(deficient) > 2 * remaining:
            return None

        graph = self.graph
        if remaining == 1 and len(deficient) == 2:
            closing = graph.edge_index.get((deficient[0], deficient[1]))
            candidates = [] if closing is None else [closing]
        elif deficient:
            candidates = graph.incident_edges[deficient[0]]
        else:
            candidates = sorted({e for v in degree for e in graph.incident_edges[v]})

        for e in candidates:
            if e <= anchor or e in chosen:
                continue
            u, w = graph.edges[e]
            chosen.append(e)
            degree[u] = degree.get(u, 0) + 1
            degree[w] = degree.get(w, 0) + 1
            found = self._grow(chosen, degree, anchor, t)
            for v in (u, w):
                degree[v] -= 1
                if degree[v] == 0:
                    del degree[v]
            chosen.pop()
            if found is not None:
                return found
        return None

    def __str__(self) -> str:
        return f"[{self.length},{self.dimension}]_{self.r}"


def _pack_bits(rows: np.ndarray) -> np.ndarray:
    """Rows of 0/1 entries as rows of uint64 words."""
    packed = np.packbits(rows.astype(np.uint8), axis=1)
    pad = (-packed.shape[1]) % 8
    if pad:
        packed = np.pad(packed, ((0, 0), (0, pad)))
    return np.ascontiguousarray(packed).view(np.uint64)


def _row_weights(words: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(words).sum(axis=1, dtype=np.int64)
    return _BYTE_WEIGHTS[words.view(np.uint8)].sum(axis=1, dtype=np.int64)


def _binary_minimum_weight(basis: np.ndarray) -> int:
    """
    GF(2) enumeration on bit-packed codewords.

    The first _TABLE_BITS basis rows are tabulated as every XOR combination;
    the remaining rows are walked in Gray-code order so each step XORs a
    single row into the offset.
    """
    k, length = basis.shape
    packed = _pack_bits(basis)
    low = min(k, _TABLE_BITS)
    table = np.zeros((1, packed.shape[1]), dtype=np.uint64)
    for row in packed[:low]:
        table = np.concatenate([table, table ^ row])
    high = packed[low:]

    best = length + 1
    offset = np.zeros(packed.shape[1], dtype=np.uint64)
    for step in range(1 << high.shape[0]):
        if step:
            offset ^= high[(step & -step).bit_length() - 1]
        weights = _row_weights(table ^ offset)
        if not step:
            weights[0] = length + 1
        best = min(best, int(weights.min()))
        if best == 1:
            break
    return best


def _minimum_weight(basis: np.ndarray, r: int) -> int:
    if r == 2:
        return _binary_minimum_weight(basis)
    k, length = basis.shape
    low = 1
    while low < k and r ** (low + 1) <= _TABLE_ROWS:
        low += 1

    table = np.zeros((1, length), dtype=np.int64)
    for row in basis[:low]:
        table = np.concatenate([(table + c * row) % r for c in range(r)])
    # sums of two residues stay below 2r
    narrow = r < 128
    table = table.astype(np.uint8 if narrow else np.int64)
    high = basis[low:].astype(np.int64)

    best = length + 1
    for coeffs in product(range(r), repeat=k - low):
        lead = next((c for c in coeffs if c), 0)
        # scalar multiples share a weight, so only messages led by 1 are visited
        if lead > 1:
            continue
        if lead:
            offset = (np.asarray(coeffs, dtype=np.int64) @ high) % r
            words = table + offset.astype(table.dtype)
        else:
            words = table
        if narrow:
            weights = np.count_nonzero((words != 0) & (words != r), axis=1)
        else:
            weights = np.count_nonzero(words % r, axis=1)
        if not lead:
            weights[0] = length + 1
        best = min(best, int(weights.min()))
        if best == 1:
            break
    return best


def min_distance_exact(code: LinearCode, budget: int = DEFAULT_BUDGET) -> Distance:
    return code.min_distance_exact(budget)


def dual_min_distance(code: LinearCode, cap: int = DEFAULT_DUAL_CAP) -> Distance:
    return code.dual_min_distance(cap)


def _binary_odd_odd(order: int, units: int, dual_distance: Optional[int]) -> PredictedParams:
    length = (order - 1) * units // 2
    return PredictedParams(
        primal=CodeParams(length, order - 1, units - 1),
        dual=CodeParams(length, length - (order - 1), dual_distance),
    )


def _odd_field_one_even(order: int, units: int, dual_distance: Optional[int]) -> PredictedParams:
    length = order * units // 2
    return PredictedParams(
        primal=CodeParams(length, order - 1, units),
        dual=CodeParams(length, length - (order - 1), dual_distance),
    )


def predict(profile: StructureProfile, r: int) -> PredictedParams:
    """
    Closed-form [n, k, d] for the code and its dual, where a result applies.

    Binary rows need both moduli odd and r = 2; r-ary rows need exactly one
    even modulus and an odd prime r. In the prime-power even case with
    2^m p^n = 6 the dual distance is the girth 6 of a hexagon, not 4.
    General tags get the conjectured parameters without a dual distance.
    """
    PrimeField(r)
    order = profile.n * profile.m
    units = euler_phi(profile.n) * euler_phi(profile.m)
    tag = profile.case_tag

    if r == 2 and tag in (CaseTag.PP_ODD_ODD, CaseTag.PPPP_ODD_ODD):
        base = _binary_odd_odd(order, units, 3)
        source = TheoremSource.S4_C2 if tag == CaseTag.PP_ODD_ODD else TheoremSource.S5_C2
    elif r != 2 and tag in (CaseTag.PP_ODD_TWO, CaseTag.PPPP_ONE_EVEN):
        base = _odd_field_one_even(order, units, 6 if order == 6 else 4)
        source = TheoremSource.S4_CR if tag == CaseTag.PP_ODD_TWO else TheoremSource.S5_CR
    elif r == 2 and tag == CaseTag.GENERAL_ODD_ODD:
        base = _binary_odd_odd(order, units, None)
        source = TheoremSource.CONJ_II_C2
    elif r != 2 and tag == CaseTag.GENERAL_ONE_EVEN:
        base = _odd_field_one_even(order, units, None)
        source = TheoremSource.CONJ_II_CR
    else:
        return PredictedParams(primal=None, dual=None, source=TheoremSource.NONE)
    return PredictedParams(primal=base.primal, dual=base.dual, source=source)


def conjecture_params(profile: StructureProfile, r: int) -> PredictedParams:
    """
    Conjecture II parameters by parity alone, for any pair of moduli.

    Proven cases get these too, so the conjecture is also exercised where a
    theorem already settles it.
    """
    order = profile.n * profile.m
    units = euler_phi(profile.n) * euler_phi(profile.m)
    if r == 2 and profile.parity == ParityCase.BOTH_ODD:
        base = _binary_odd_odd(order, units, None)
        return PredictedParams(base.primal, base.dual, TheoremSource.CONJ_II_C2)
    if r != 2 and profile.parity == ParityCase.EXACTLY_ONE_EVEN:
        base = _odd_field_one_even(order, units, None)
        return PredictedParams(base.primal, base.dual, TheoremSource.CONJ_II_CR)
    return PredictedParams(primal=None, dual=None, source=TheoremSource.NONE)
