"""Dataclass definitions shared by the ring, graph, code and verify modules."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple, Union


# ===== Sentinels =====

class _Infinite:
    """Value of a diameter or girth that does not exist."""

    _instance = None

    def __new__(cls) -> "_Infinite":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinite"

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


@dataclass(frozen=True)
class Unknown:
    """A quantity that was not computed exactly, with the bounds that are known."""
    lower: int
    upper: Optional[int] = None
    note: str = ""

    def contains(self, value: int) -> bool:
        if value < self.lower:
            return False
        return self.upper is None or value <= self.upper

    def __str__(self) -> str:
        upper = "?" if self.upper is None else str(self.upper)
        return f"Unknown[{self.lower},{upper}]"


Extent = Union[int, _Infinite]
Distance = Union[int, Unknown]


# ===== Ring Types =====

class ParityCase(str, Enum):
    BOTH_ODD = "BothOdd"
    EXACTLY_ONE_EVEN = "ExactlyOneEven"
    BOTH_EVEN = "BothEven"


class CaseTag(str, Enum):
    """Which closed-form results apply to a pair of moduli."""
    PP_ODD_ODD = "PP_OddOdd"
    PP_ODD_TWO = "PP_OddTwo"
    PPPP_ODD_ODD = "PPPP_OddOdd"
    PPPP_ONE_EVEN = "PPPP_OneEven"
    GENERAL_ODD_ODD = "GeneralOddOdd"
    GENERAL_ONE_EVEN = "GeneralOneEven"
    BOTH_EVEN = "BothEven"
    # reserved, classify() never returns it for a valid RingSpec
    OTHER = "Other"

    @property
    def is_theorem_case(self) -> bool:
        return self in _THEOREM_CASES


_THEOREM_CASES = frozenset({
    CaseTag.PP_ODD_ODD, CaseTag.PP_ODD_TWO, CaseTag.PPPP_ODD_ODD, CaseTag.PPPP_ONE_EVEN,
})

Factorization = List[Tuple[int, int]]


@dataclass(frozen=True)
class StructureProfile:
    """Prime factorisation of both moduli and the case they fall into."""
    n: int
    m: int
    n_factorization: Factorization
    m_factorization: Factorization
    case_tag: CaseTag

    @property
    def parity(self) -> ParityCase:
        odd = (self.n % 2) + (self.m % 2)
        if odd == 2:
            return ParityCase.BOTH_ODD
        if odd == 1:
            return ParityCase.EXACTLY_ONE_EVEN
        return ParityCase.BOTH_EVEN


# ===== Graph Types =====

@dataclass(frozen=True)
class GraphInvariants:
    """Structural invariants of a unit graph, each from its own algorithm."""
    connected: bool
    num_components: int
    diameter: Extent
    bipartite: bool
    bipartition: Optional[Tuple[List[int], List[int]]]
    girth: Extent
    min_degree: int
    edge_connectivity: int


# ===== Code Types =====

class TheoremSource(str, Enum):
    S4_C2 = "S4_C2"
    S4_CR = "S4_Cr"
    S5_C2 = "S5_C2"
    S5_CR = "S5_Cr"
    CONJ_II_C2 = "ConjII_C2"
    CONJ_II_CR = "ConjII_Cr"
    NONE = "None"

    @property
    def is_proven(self) -> bool:
        return self in (TheoremSource.S4_C2, TheoremSource.S4_CR,
                        TheoremSource.S5_C2, TheoremSource.S5_CR)

    @property
    def is_conjecture(self) -> bool:
        return self in (TheoremSource.CONJ_II_C2, TheoremSource.CONJ_II_CR)


@dataclass(frozen=True)
class CodeParams:
    """[n, k, d] parameters; min_distance is None when nothing is predicted."""
    length: int
    dimension: int
    min_distance: Optional[Distance]

    def as_list(self) -> list:
        return [self.length, self.dimension, self.min_distance]

    def __str__(self) -> str:
        return f"[{self.length},{self.dimension},{self.min_distance}]"


@dataclass(frozen=True)
class PredictedParams:
    """Closed-form primal and dual parameters with the result they come from."""
    primal: Optional[CodeParams]
    dual: Optional[CodeParams]
    source: TheoremSource = TheoremSource.NONE


# ===== Verification Types =====

class CheckStatus(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"
    SKIPPED = "Skipped"
    CONJECTURE_PASS = "ConjecturePass"
    CONJECTURE_FAIL = "ConjectureFail"


@dataclass
class CheckResult:
    """One predicted-versus-observed comparison."""
    name: str
    predicted: object
    observed: object
    status: CheckStatus
    reason: Optional[str] = None


@dataclass
class CheckRecord:
    """All checks run for one (n, m, r) instance."""
    n: int
    m: int
    r: int
    case_tag: CaseTag
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def key(self) -> Tuple[int, int, int]:
        return (self.n, self.m, self.r)

    def check(self, name: str) -> Optional[CheckResult]:
        """Return the check with the given name, if it was emitted."""
        for result in self.checks:
            if result.name == name:
                return result
        return None

    def has_failure(self) -> bool:
        return any(c.status == CheckStatus.FAIL for c in self.checks)


MAX_MODULUS = 64
MIN_BUDGET = 2 ** 10


@dataclass(frozen=True)
class SweepConfig:
    """Parameter ranges and resource caps for a verification sweep."""
    n_range: Tuple[int, int] = (2, 12)
    m_range: Tuple[int, int] = (2, 12)
    fields: Tuple[int, ...] = (2, 3, 5)
    budget: int = 2 ** 26
    dual_cap: int = 8
    jobs: int = 1
    max_matrix_entries: int = 200_000
    max_flow_vertices: int = 900

    def __post_init__(self):
        for label, (low, high) in (("n", self.n_range), ("m", self.m_range)):
            if low < 2 or high > MAX_MODULUS:
                raise ValueError(f"{label} range {low}..{high} must lie within 2..{MAX_MODULUS}")
        if self.budget < MIN_BUDGET:
            raise ValueError(f"Enumeration budget {self.budget} is below {MIN_BUDGET}")
        if self.dual_cap < 2:
            raise ValueError(f"Dual search cap {self.dual_cap} must be at least 2")
        if self.jobs < 1:
            raise ValueError(f"Parallelism width {self.jobs} must be at least 1")
        # late import: core.ring depends on this module
        from ..core.ring import is_prime
        for r in self.fields:
            if not is_prime(r):
                raise ValueError(f"Field size {r} is not prime")

    def instances(self) -> List[Tuple[int, int, int]]:
        """Every (n, m, r) in lexicographic order; empty when a range is empty."""
        return [
            (n, m, r)
            for n in range(self.n_range[0], self.n_range[1] + 1)
            for m in range(self.m_range[0], self.m_range[1] + 1)
            for r in sorted(set(self.fields))
        ]

    def to_dict(self) -> dict:
        return {
            "n_range": list(self.n_range),
            "m_range": list(self.m_range),
            "fields": list(self.fields),
            "budget": self.budget,
            "dual_cap": self.dual_cap,
            "max_matrix_entries": self.max_matrix_entries,
            "max_flow_vertices": self.max_flow_vertices,
        }


@dataclass
class SweepReport:
    """Records of a sweep in (n, m, r) order with their status counts."""
    config: SweepConfig
    records: List[CheckRecord]
    summary: dict

    def has_failure(self) -> bool:
        return any(record.has_failure() for record in self.records)

    @property
    def exit_code(self) -> int:
        """2 when a proven-theorem check failed, else 0; conjecture failures never count."""
        return 2 if self.has_failure() else 0
