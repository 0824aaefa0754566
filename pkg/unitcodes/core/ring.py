from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import List, Tuple

from ..types import CaseTag, Factorization, ParityCase, StructureProfile


@dataclass(frozen=True)
class RingSpec:
    """
    The ring Z_n (+) Z_m with componentwise addition and multiplication.

    Both moduli must be at least 2; Z_1 components are rejected rather than
    normalised away.
    """
    n: int
    m: int

    def __post_init__(self):
        if self.n < 2 or self.m < 2:
            raise ValueError(f"Moduli must be at least 2, got n={self.n}, m={self.m}")

    @property
    def order(self) -> int:
        return self.n * self.m

    def element(self, a: int, b: int) -> "RingElement":
        """Build an element, reducing both coordinates."""
        return RingElement(a % self.n, b % self.m)

    def elements(self) -> List["RingElement"]:
        """All elements in canonical order: index a*m + b."""
        return [RingElement(a, b) for a in range(self.n) for b in range(self.m)]

    def index_of(self, x: "RingElement") -> int:
        return x.a * self.m + x.b

    def contains(self, x: "RingElement") -> bool:
        return 0 <= x.a < self.n and 0 <= x.b < self.m


@dataclass(frozen=True)
class RingElement:
    """An element (a, b) of Z_n (+) Z_m, always stored reduced."""
    a: int
    b: int

    def __str__(self) -> str:
        return f"({self.a},{self.b})"


def _check_element(spec: RingSpec, x: RingElement) -> None:
    if not spec.contains(x):
        raise ValueError(f"Element {x} is not reduced modulo ({spec.n}, {spec.m})")


def add(spec: RingSpec, x: RingElement, y: RingElement) -> RingElement:
    """Componentwise sum reduced modulo (n, m)."""
    _check_element(spec, x)
    _check_element(spec, y)
    return RingElement((x.a + y.a) % spec.n, (x.b + y.b) % spec.m)


def multiply(spec: RingSpec, x: RingElement, y: RingElement) -> RingElement:
    """Componentwise product reduced modulo (n, m)."""
    _check_element(spec, x)
    _check_element(spec, y)
    return RingElement((x.a * y.a) % spec.n, (x.b * y.b) % spec.m)


def is_unit(spec: RingSpec, x: RingElement) -> bool:
    """A pair is a unit exactly when each coordinate is coprime to its modulus."""
    _check_element(spec, x)
    return gcd(x.a, spec.n) == 1 and gcd(x.b, spec.m) == 1


def unit_count(spec: RingSpec) -> int:
    """|U(Z_n (+) Z_m)| = phi(n) * phi(m)."""
    return euler_phi(spec.n) * euler_phi(spec.m)


@lru_cache(maxsize=None)
def factorize(k: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorisation of k by trial division, primes ascending."""
    if k < 1:
        raise ValueError(f"Cannot factorise {k}")
    factors = []
    p = 2
    while p * p <= k:
        if k % p == 0:
            exponent = 0
            while k % p == 0:
                k //= p
                exponent += 1
            factors.append((p, exponent))
        p += 1 if p == 2 else 2
    if k > 1:
        factors.append((k, 1))
    return tuple(factors)


def euler_phi(k: int) -> int:
    """Euler's totient via trial-division factorisation."""
    if k < 1:
        raise ValueError(f"Euler totient is defined for k >= 1, got {k}")
    result = k
    for p, _ in factorize(k):
        result -= result // p
    return result


def is_prime(k: int) -> bool:
    """Deterministic primality by trial division."""
    if k < 2:
        return False
    return factorize(k) == ((k, 1),)


def parity_case(spec: RingSpec) -> ParityCase:
    odd = (spec.n % 2) + (spec.m % 2)
    if odd == 2:
        return ParityCase.BOTH_ODD
    if odd == 1:
        return ParityCase.EXACTLY_ONE_EVEN
    return ParityCase.BOTH_EVEN


def _single_odd_prime_power(factors: Factorization) -> bool:
    return len(factors) == 1 and factors[0][0] != 2


def _power_of_two(factors: Factorization) -> bool:
    return len(factors) == 1 and factors[0][0] == 2


def _two_odd_prime_powers(factors: Factorization) -> bool:
    return len(factors) == 2 and all(p != 2 for p, _ in factors)


def _two_power_times_odd(factors: Factorization) -> bool:
    return len(factors) == 2 and factors[0][0] == 2


def classify(spec: RingSpec) -> StructureProfile:
    """
    Factorise both moduli and decide which closed-form results apply.

    The prime-power cases and the two-prime-power cases need an exact match
    of their hypotheses; everything else falls back to the parity-based
    General tags, where only the conjectures are tested.
    """
    n_factors = list(factorize(spec.n))
    m_factors = list(factorize(spec.m))
    parity = parity_case(spec)

    if parity == ParityCase.BOTH_EVEN:
        tag = CaseTag.BOTH_EVEN
    elif parity == ParityCase.BOTH_ODD:
        if _single_odd_prime_power(n_factors) and _single_odd_prime_power(m_factors):
            tag = CaseTag.PP_ODD_ODD
        elif _two_odd_prime_powers(n_factors) and _two_odd_prime_powers(m_factors):
            tag = CaseTag.PPPP_ODD_ODD
        else:
            tag = CaseTag.GENERAL_ODD_ODD
    else:
        odd, even = (n_factors, m_factors) if spec.n % 2 else (m_factors, n_factors)
        if _single_odd_prime_power(odd) and _power_of_two(even):
            tag = CaseTag.PP_ODD_TWO
        elif _two_odd_prime_powers(odd) and _two_power_times_odd(even):
            tag = CaseTag.PPPP_ONE_EVEN
        else:
            tag = CaseTag.GENERAL_ONE_EVEN

    return StructureProfile(
        n=spec.n,
        m=spec.m,
        n_factorization=n_factors,
        m_factorization=m_factors,
        case_tag=tag,
    )
