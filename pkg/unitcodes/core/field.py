from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .ring import is_prime


@dataclass(frozen=True)
class PrimeField:
    """The prime field GF(r)."""
    r: int

    def __post_init__(self):
        if not is_prime(self.r):
            raise ValueError(f"Field size {self.r} is not prime")

    def inverse(self, a: int) -> int:
        """Multiplicative inverse by the extended Euclidean algorithm."""
        a %= self.r
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.r})")
        old_r, rem = a, self.r
        old_s, s = 1, 0
        while rem:
            quotient = old_r // rem
            old_r, rem = rem, old_r - quotient * rem
            old_s, s = s, old_s - quotient * s
        return old_s % self.r


class GfMatrix:
    """
    Dense matrix over GF(r), stored row-major as a read-only int64 array.

    Every operation works on a private copy, so instances can be shared
    freely between threads and callers.
    """

    def __init__(self, field: PrimeField, entries: np.ndarray):
        array = np.array(entries, dtype=np.int64, copy=True)
        if array.ndim != 2:
            raise ValueError(f"Expected a 2-D array, got shape {array.shape}")
        array %= field.r
        array.setflags(write=False)
        self.field = field
        self._entries = array

    @classmethod
    def from_rows(cls, r: int, rows: Sequence[Sequence[int]], cols: int = 0) -> "GfMatrix":
        """Build a matrix from nested lists; cols is only needed for zero rows."""
        if not rows:
            return cls(PrimeField(r), np.zeros((0, cols), dtype=np.int64))
        return cls(PrimeField(r), np.asarray(rows, dtype=np.int64))

    @classmethod
    def identity(cls, r: int, k: int) -> "GfMatrix":
        return cls(PrimeField(r), np.eye(k, dtype=np.int64))

    @classmethod
    def zeros(cls, r: int, rows: int, cols: int) -> "GfMatrix":
        return cls(PrimeField(r), np.zeros((rows, cols), dtype=np.int64))

    @property
    def r(self) -> int:
        return self.field.r

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def entries(self) -> List[int]:
        """Row-major residues."""
        return [int(v) for v in self._entries.ravel()]

    def to_array(self) -> np.ndarray:
        """Writable copy of the entries."""
        return self._entries.copy()

    def to_lists(self) -> List[List[int]]:
        return self._entries.tolist()

    def transpose(self) -> "GfMatrix":
        return GfMatrix(self.field, self._entries.T)

    def select_columns(self, cols: Iterable[int]) -> "GfMatrix":
        return GfMatrix(self.field, self._entries[:, list(cols)])

    def scale_rows(self, factors: Sequence[int]) -> "GfMatrix":
        """Multiply row i by factors[i]."""
        column = np.asarray(factors, dtype=np.int64).reshape(-1, 1)
        return GfMatrix(self.field, self._entries * column)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GfMatrix):
            return NotImplemented
        return self.field == other.field and np.array_equal(self._entries, other._entries)

    def __repr__(self) -> str:
        return f"GfMatrix(r={self.r}, shape=({self.rows}, {self.cols}))"

    def rref(self) -> Tuple["GfMatrix", List[int]]:
        """
        Reduced row echelon form over GF(r).

        The pivot in each column is the first nonzero entry at or below the
        current row; exact arithmetic needs no pivoting heuristics.

        Returns:
            The reduced matrix (same shape) and the strictly increasing list
            of pivot columns.
        """
        r = self.r
        work = self._entries.copy()
        rows, cols = work.shape
        pivots: List[int] = []
        row = 0
        for col in range(cols):
            if row == rows:
                break
            nonzero = np.flatnonzero(work[row:, col])
            if nonzero.size == 0:
                continue
            pivot = row + int(nonzero[0])
            if pivot != row:
                work[[row, pivot]] = work[[pivot, row]]
            inverse = self.field.inverse(int(work[row, col]))
            work[row] = (work[row] * inverse) % r
            factors = work[:, col].copy()
            factors[row] = 0
            targets = np.flatnonzero(factors)
            if targets.size:
                work[targets] = (work[targets] - np.outer(factors[targets], work[row])) % r
            pivots.append(col)
            row += 1
        return GfMatrix(self.field, work), pivots

    def rank(self) -> int:
        """Rank over GF(r); the matrix itself is left untouched."""
        _, pivots = self.rref()
        return len(pivots)

    def row_basis(self) -> "GfMatrix":
        """Nonzero rows of the reduced echelon form."""
        reduced, pivots = self.rref()
        return GfMatrix(self.field, reduced._entries[: len(pivots)])

    def nullspace(self) -> "GfMatrix":
        """
        Basis of the right nullspace {x : M x = 0} as rows.

        For an incidence generator this is a basis of the dual code.
        """
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = np.zeros((len(free), self.cols), dtype=np.int64)
        work = reduced._entries
        for i, f in enumerate(free):
            basis[i, f] = 1
            for row, pc in enumerate(pivots):
                basis[i, pc] = (-work[row, f]) % self.r
        return GfMatrix(self.field, basis)

    def multiply(self, other: "GfMatrix") -> "GfMatrix":
        if self.field != other.field:
            raise ValueError(f"Cannot multiply over GF({self.r}) and GF({other.r})")
        return GfMatrix(self.field, (self._entries @ other._entries) % self.r)

    def columns_dependent(self, cols: Sequence[int]) -> bool:
        """True iff the selected columns are linearly dependent over GF(r)."""
        chosen = list(cols)
        if len(set(chosen)) != len(chosen):
            raise ValueError(f"Column indices must be distinct: {chosen}")
        for c in chosen:
            if not 0 <= c < self.cols:
                raise IndexError(f"Column {c} out of range for {self.cols} columns")
        if not chosen:
            return False
        return self.select_columns(chosen).rank() < len(chosen)
