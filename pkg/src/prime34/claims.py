"""Window claims on the prime exponents of C(4n,3n) beyond the T1 region.

Twenty-two contiguous windows (a*n, b*n] tile (sqrt(4n), 3n].  Each claim
asserts one consequence for every prime p in its window: the exponent
beta(p) of p in C(4n,3n) is zero, or p^beta(p) divides one of the four
absorbers A, B, C, D, or (first window only) the product of the window's
primes is at most 4^(n/6).  Together the consequences give the divisibility
bound T2 <= 4^(n/6) A B C D.

A claim may carry a chain of linear inequalities that justifies its
consequence.  Chains are verified exactly over the rationals at both window
endpoints: the open endpoint is evaluated at p = lo*n + epsilon via
lexicographic (value, epsilon-coefficient) comparison, the closed endpoint
at p = hi*n directly.  Every side of every link is linear in p, so endpoint
validity implies validity across the whole window.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional

from .errors import DomainError
from .exact import _legendre, absorber_index, absorber_valuation
from .sieve import PrimeSieve

BETA_ZERO = "BETA_ZERO"
DIVIDES_A = "DIVIDES_A"
DIVIDES_B = "DIVIDES_B"
DIVIDES_C = "DIVIDES_C"
DIVIDES_D = "DIVIDES_D"
PRIMORIAL_16TH = "PRIMORIAL_16TH"

CONSEQUENCES = frozenset(
    {BETA_ZERO, DIVIDES_A, DIVIDES_B, DIVIDES_C, DIVIDES_D, PRIMORIAL_16TH}
)

_ABSORBER_OF = {
    DIVIDES_A: "A",
    DIVIDES_B: "B",
    DIVIDES_C: "C",
    DIVIDES_D: "D",
}

# one chain side: optional multiplier, variable p or n, optional divisor
_SIDE_RE = re.compile(r"^(\d+)?([pn])(?:/(\d+))?$")

_OPS = ("<", "<=")


def _parse_side(token: str):
    m = _SIDE_RE.match(token)
    if m is None:
        raise DomainError(f"unparseable chain term {token!r}")
    mult = int(m.group(1) or 1)
    div = int(m.group(3) or 1)
    return Fraction(mult, div), m.group(2)


@lru_cache(maxsize=64)
def parse_chain(chain: str):
    """Split a chain like '2p < n/2 < 3p <= 2n' into sides and operators."""
    tokens = chain.split()
    if len(tokens) < 3 or len(tokens) % 2 == 0:
        raise DomainError(f"chain must alternate terms and comparisons: {chain!r}")
    sides = tuple(_parse_side(t) for t in tokens[0::2])
    ops = tuple(tokens[1::2])
    bad = [op for op in ops if op not in _OPS]
    if bad:
        raise DomainError(f"unknown chain comparison {bad[0]!r}")
    return sides, ops


@dataclass(frozen=True)
class ClaimSpec:
    """One window claim: interval (lo_coeff*n, hi_coeff*n], a consequence,
    and an optional justification chain.  lo_coeff None means the window
    opens at sqrt(4n), applied exactly as p*p > 4n."""

    id: int
    lo_coeff: Optional[Fraction]
    hi_coeff: Fraction
    consequence: str
    chain: str = ""

    def __post_init__(self):
        if not 1 <= self.id <= 22:
            raise DomainError(f"claim id {self.id} out of range")
        if self.lo_coeff is not None:
            object.__setattr__(self, "lo_coeff", Fraction(self.lo_coeff))
        object.__setattr__(self, "hi_coeff", Fraction(self.hi_coeff))
        if self.lo_coeff is not None and not 0 <= self.lo_coeff < self.hi_coeff:
            raise DomainError(f"claim {self.id}: window is empty or negative")
        if self.consequence not in CONSEQUENCES:
            raise DomainError(f"claim {self.id}: unknown consequence")
        if self.chain:
            parse_chain(self.chain)  # fail fast on typos

    def window(self, n: int):
        """Exact rational (lo, hi] bounds at this n; lo of sqrt(4n) windows
        is isqrt(4n), since p > sqrt(4n) iff p > isqrt(4n) for integer p."""
        lo = Fraction(isqrt(4 * n)) if self.lo_coeff is None else self.lo_coeff * n
        return lo, self.hi_coeff * n


@dataclass(frozen=True)
class ClaimResult:
    """Outcome of one claim at one n; failures empty iff the claim holds."""

    claim_id: int
    n: int
    primes_checked: int
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


_TABLE = (
    ClaimSpec(1, None, Fraction(1, 6), PRIMORIAL_16TH),
    ClaimSpec(
        2, Fraction(1, 6), Fraction(2, 11), DIVIDES_B,
        "2p < n/2 < 3p < 8p < 3n/2 < 9p < 11p <= 2n",
    ),
    ClaimSpec(
        3, Fraction(2, 11), Fraction(4, 21), DIVIDES_A,
        "p < n/3 < 2p < 5p < n < 6p < 7p <= 4n/3",
    ),
    ClaimSpec(
        4, Fraction(4, 21), Fraction(1, 5), BETA_ZERO,
        "5p <= n < 6p < 15p <= 3n < 16p < 20p <= 4n < 21p",
    ),
    ClaimSpec(
        5, Fraction(1, 5), Fraction(2, 9), DIVIDES_A,
        "p < n/3 < 2p < 4p < n < 5p < 6p <= 4n/3",
    ),
    # the 13p-3n link is non-strict: the closed endpoint p = 3n/13 makes
    # 13p equal to 3n, and the consequence still holds there
    ClaimSpec(
        6, Fraction(2, 9), Fraction(3, 13), BETA_ZERO,
        "4p < n < 5p < 13p <= 3n < 14p < 17p < 4n < 18p",
    ),
    ClaimSpec(7, Fraction(3, 13), Fraction(4, 17), DIVIDES_C),
    ClaimSpec(
        8, Fraction(4, 17), Fraction(1, 4), BETA_ZERO,
        "4p <= n < 5p < 12p <= 3n < 13p < 16p <= 4n < 17p",
    ),
    ClaimSpec(
        9, Fraction(1, 4), Fraction(4, 15), DIVIDES_A,
        "p < n/3 < 2p < 3p < n < 4p < 5p <= 4n/3",
    ),
    ClaimSpec(10, Fraction(4, 15), Fraction(2, 7), DIVIDES_D),
    ClaimSpec(
        11, Fraction(2, 7), Fraction(3, 10), BETA_ZERO,
        "3p < n < 4p < 10p <= 3n < 11p < 13p < 4n < 14p",
    ),
    ClaimSpec(
        12, Fraction(3, 10), Fraction(1, 3), DIVIDES_B,
        "p < n/2 < 2p < 4p < 3n/2 < 5p < 6p <= 2n",
    ),
    ClaimSpec(
        13, Fraction(1, 3), Fraction(4, 9), DIVIDES_A,
        "n/3 < p < 2p < n < 3p <= 4n/3",
    ),
    ClaimSpec(
        14, Fraction(4, 9), Fraction(1, 2), BETA_ZERO,
        "2p <= n < 3p < 6p <= 3n < 7p < 8p <= 4n < 9p",
    ),
    ClaimSpec(
        15, Fraction(1, 2), Fraction(2, 3), DIVIDES_B,
        "n/2 < p < 2p < 3n/2 < 3p <= 2n",
    ),
    ClaimSpec(
        16, Fraction(2, 3), Fraction(3, 4), BETA_ZERO,
        "p < n < 2p < 4p <= 3n < 5p < 4n < 6p",
    ),
    ClaimSpec(
        17, Fraction(3, 4), Fraction(4, 5), DIVIDES_B,
        "n/2 < p < 3n/2 < 2p <= 2n",
    ),
    ClaimSpec(
        18, Fraction(4, 5), Fraction(1), BETA_ZERO,
        "p <= n < 2p < 3p <= 3n < 4p <= 4n < 5p",
    ),
    ClaimSpec(19, Fraction(1), Fraction(4, 3), DIVIDES_A),
    ClaimSpec(
        20, Fraction(4, 3), Fraction(3, 2), BETA_ZERO,
        "n < p < 2p <= 3n < 4n < 3p",
    ),
    ClaimSpec(21, Fraction(3, 2), Fraction(2), DIVIDES_B),
    ClaimSpec(22, Fraction(2), Fraction(3), BETA_ZERO, "n < p <= 3n < 4n < 2p"),
)


def claim_table() -> list:
    """The 22 window claims, in window order."""
    return list(_TABLE)


def claim_to_dict(claim: ClaimSpec) -> dict:
    """JSON-friendly form with lo/hi as coefficient strings."""
    return {
        "id": claim.id,
        "lo": "sqrt(4n)" if claim.lo_coeff is None else str(claim.lo_coeff),
        "hi": str(claim.hi_coeff),
        "consequence": claim.consequence,
        "chain": claim.chain,
    }


def check_tiling(table=None) -> bool:
    """Symbolic coefficient check that the windows tile (sqrt(4n), 3n]:
    window 1 opens at sqrt(4n) and each later window opens exactly where
    the previous one closed, ending at 3n.  (sqrt(4n) <= n/6 holds once
    n >= 144; below that window 1 narrows or empties, and windows still
    never overlap because its lower bound is applied as p*p > 4n.)"""
    table = claim_table() if table is None else table
    if len(table) != 22 or table[0].lo_coeff is not None:
        return False
    prev_hi = None
    for claim in table:
        if claim.lo_coeff is None:
            if prev_hi is not None:
                return False
        elif claim.lo_coeff != prev_hi or claim.lo_coeff >= claim.hi_coeff:
            return False
        prev_hi = claim.hi_coeff
    return prev_hi == 3


def _chain_holds_at(sides, ops, n: int, p_coeff: Fraction, open_end: bool) -> bool:
    """Evaluate the chain at p = p_coeff*n (+ epsilon when open_end)."""

    def ev(side):
        coeff, var = side
        if var == "n":
            return coeff * n, Fraction(0)
        return coeff * p_coeff * n, coeff if open_end else Fraction(0)

    values = [ev(s) for s in sides]
    for (x, dx), op, (y, dy) in zip(values, ops, values[1:]):
        if x > y:
            return False
        if x == y and not (dx < dy if op == "<" else dx <= dy):
            return False
    return True


def check_chain(claim: ClaimSpec, n: int) -> bool:
    """Whether the claim's inequality chain holds over its whole window at
    this n, decided exactly at the two rational endpoints."""
    if not claim.chain:
        raise DomainError(f"claim {claim.id} has no chain")
    if claim.lo_coeff is None:
        raise DomainError("chain endpoints require a rational window")
    if n < 1:
        raise DomainError("chain check requires n >= 1")
    sides, ops = parse_chain(claim.chain)
    return _chain_holds_at(sides, ops, n, claim.lo_coeff, True) and _chain_holds_at(
        sides, ops, n, claim.hi_coeff, False
    )


def _beta_window(n: int, p: int) -> int:
    """beta(p) for a window prime.  Above sqrt(4n) every Legendre sum is a
    single floor; smaller primes (only reachable when n < 144) fall back to
    the full sums."""
    if p * p > 4 * n:
        return 4 * n // p - 3 * n // p - n // p
    return _legendre(4 * n, p) - _legendre(3 * n, p) - _legendre(n, p)


def check_claim(claim: ClaimSpec, n: int, sieve: PrimeSieve) -> ClaimResult:
    """Verify the claim's consequence for every prime in its window at n.

    An empty window passes vacuously.  A divisibility claim whose absorber
    is undefined at this n (index outside s > r >= 1) fails for every
    window prime, since nothing is available to absorb them.
    """
    if n < 1:
        raise DomainError("claims are checked for n >= 1")
    lo, hi = claim.window(n)
    if lo >= hi:
        return ClaimResult(claim.id, n, 0, ())
    primes = sieve.primes_in(lo, hi)
    if not primes:
        return ClaimResult(claim.id, n, 0, ())

    failures = []
    if claim.consequence == BETA_ZERO:
        for p in primes:
            b = _beta_window(n, p)
            if b != 0:
                failures.append((p, f"beta={b}"))
    elif claim.consequence == PRIMORIAL_16TH:
        # product of window primes <= 4^(n/6), i.e. (product)^6 <= 4^n;
        # float log screen first, exact big-int comparison inside the band
        lhs = 6.0 * sum(map(math.log, primes))
        rhs = n * math.log(4.0)
        margin = (len(primes) + 8) * 2.0**-50 * max(1.0, lhs, rhs)
        if lhs > rhs - margin:
            if math.prod(primes) ** 6 > 4**n:
                failures.append((0, "window primorial exceeds 4^(n/6)"))
    else:
        which = _ABSORBER_OF[claim.consequence]
        try:
            absorber_index(which, n)
        except DomainError:
            failures.extend((p, f"absorber {which} undefined at n={n}") for p in primes)
        else:
            for p in primes:
                b = _beta_window(n, p)
                v = absorber_valuation(which, n, p)
                if v < b:
                    failures.append((p, f"valuation {v} in {which} < beta {b}"))
    return ClaimResult(claim.id, n, len(primes), tuple(failures))


def minimal_valid_n(claim: ClaimSpec, n_max: int, sieve: PrimeSieve):
    """Smallest n such that check_claim passes for every n' in [n, n_max];
    None if the claim still fails at n_max."""
    if n_max < 1:
        raise DomainError("minimal_valid_n requires n_max >= 1")
    last_bad = 0
    for n in range(1, n_max + 1):
        if check_claim(claim, n, sieve).failures:
            last_bad = n
    return None if last_bad == n_max else last_bad + 1
