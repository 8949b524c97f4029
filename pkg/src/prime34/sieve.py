"""Prime sieve with exact rational range queries and the two classical
prime bounds (pi(n) <= n/2 and the primorial bound prod p <= 4^x).
"""

from __future__ import annotations

import math
from array import array
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate, compress

from .errors import CapacityError, CoverageError, DomainError, PrecisionError

MEMORY_CAP = 2**31

_LN4 = math.log(4)

Rational = Fraction


def _as_rational(x) -> Fraction:
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    raise DomainError(f"expected an int or Fraction endpoint, got {type(x).__name__}")


@dataclass(frozen=True, eq=False)
class PrimeSieve:
    """Immutable primality table over [0, limit] with O(1) prime counting.

    table[k] is 1 iff k is prime; cum[k] equals pi(k).
    """

    limit: int
    table: bytes = field(repr=False)
    cum: array = field(repr=False)
    primes: tuple = field(repr=False)

    def is_prime(self, k: int) -> bool:
        if not 0 <= k <= self.limit:
            raise CoverageError(f"{k} outside sieve range [0, {self.limit}]")
        return bool(self.table[k])

    def pi(self, x: int) -> int:
        """Count of primes <= x."""
        if x < 0:
            raise DomainError("pi is defined for x >= 0")
        if x > self.limit:
            raise CoverageError(f"pi({x}) beyond sieve limit {self.limit}")
        return self.cum[x]

    def primes_in(self, lo_exclusive, hi_inclusive) -> list:
        """Ascending primes p with lo < p <= hi, endpoints exact rationals.

        Membership is decided by integer floors of the endpoints, never by
        floating point: p > lo iff p >= floor(lo) + 1, p <= hi iff
        p <= floor(hi).
        """
        lo = _as_rational(lo_exclusive)
        hi = _as_rational(hi_inclusive)
        if lo < 0:
            raise DomainError("lower endpoint must be >= 0")
        if lo >= hi:
            raise DomainError(f"empty interval: lo={lo} >= hi={hi}")
        if hi > self.limit:
            raise CoverageError(f"endpoint {hi} beyond sieve limit {self.limit}")
        start = bisect_right(self.primes, math.floor(lo))
        stop = bisect_right(self.primes, math.floor(hi))
        return list(self.primes[start:stop])


def build_sieve(limit: int, memory_cap: int = MEMORY_CAP) -> PrimeSieve:
    """Sieve of Eratosthenes over [0, limit] with a cumulative count table."""
    if limit < 2 or limit > memory_cap:
        raise CapacityError(f"sieve limit {limit} outside [2, {memory_cap}]")
    table = bytearray(limit + 1)
    table[2:] = b"\x01" * (limit - 1)
    for p in range(2, math.isqrt(limit) + 1):
        if table[p]:
            table[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    frozen = bytes(table)
    cum = array("i", accumulate(frozen))
    primes = tuple(compress(range(limit + 1), frozen))
    return PrimeSieve(limit=limit, table=frozen, cum=cum, primes=primes)


def check_pi_bound(sieve: PrimeSieve, n: int) -> bool:
    """pi(n) <= n/2, valid for n >= 8; checked as 2*pi(n) <= n exactly."""
    if n < 8:
        raise DomainError("the pi(n) <= n/2 bound requires n >= 8")
    if n > sieve.limit:
        raise CoverageError(f"n={n} beyond sieve limit {sieve.limit}")
    return 2 * sieve.pi(n) <= n


@lru_cache(maxsize=4)
def _log_prefix(sieve: PrimeSieve) -> array:
    """prefix[k] = sum of ln p over the first k primes of the sieve."""
    return array("d", accumulate((math.log(p) for p in sieve.primes), initial=0.0))


def _balanced_product(parts) -> int:
    """Product of a sequence of ints via halving, cheap for many factors."""
    parts = list(parts)
    if not parts:
        return 1
    while len(parts) > 1:
        parts = [
            parts[i] * parts[i + 1] if i + 1 < len(parts) else parts[i]
            for i in range(0, len(parts), 2)
        ]
    return parts[0]


def check_primorial_bound(sieve: PrimeSieve, x) -> bool:
    """prod_{p <= x} p <= 4^x for rational x > 0.

    Compared in log domain first.  The margin scales the per-term 2^-50
    allowance by the magnitude of the compared values, since the plain
    term-count bound is only valid for sums below 1.  A comparison inside
    the margin escalates to an exact big-integer check of
    (prod p)^b <= 4^a for x = a/b.
    """
    x = _as_rational(x)
    if x <= 0:
        raise DomainError("primorial bound requires x > 0")
    if x > sieve.limit:
        raise CoverageError(f"x={x} beyond sieve limit {sieve.limit}")
    k = sieve.pi(math.floor(x))
    lhs = _log_prefix(sieve)[k]
    rhs = float(x) * _LN4
    margin = (k + 4) * 2.0**-50 * max(1.0, lhs, abs(rhs))
    if lhs + margin <= rhs:
        return True
    if lhs - margin > rhs:
        return False
    if x.denominator > 4096:
        raise PrecisionError(
            "comparison within float margin and exact escalation infeasible "
            f"for denominator {x.denominator}"
        )
    prod = _balanced_product(sieve.primes[:k])
    return prod ** x.denominator <= 4 ** x.numerator
