"""Exact element-order statistics.

All quantities are Python ints or :class:`fractions.Fraction`; nothing on a
verdict path touches floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

from .groups import FiniteGroup

__all__ = [
    "OrderSpectrum",
    "order_spectrum",
    "psi_k",
    "psi",
    "psi_k_cyclic",
    "factorize",
    "divisors",
    "euler_phi",
    "prime_divisors",
    "is_prime",
    "psi_k_a5",
    "psi_k_z60",
    "d_k",
    "claim_bound",
    "claim_inequality_holds",
    "compare",
]


@dataclass(frozen=True)
class OrderSpectrum:
    """Element order -> number of elements of that order."""

    group_order: int
    counts: Mapping[int, int]

    def __post_init__(self):
        counts = {int(d): int(c) for d, c in sorted(dict(self.counts).items()) if c}
        if sum(counts.values()) != self.group_order:
            raise ValueError("spectrum counts do not sum to the group order")
        if counts.get(1) != 1:
            raise ValueError("exactly one element must have order 1")
        for d, c in counts.items():
            if self.group_order % d:
                raise ValueError(f"element order {d} does not divide {self.group_order}")
            if c % euler_phi(d):
                raise ValueError(f"count {c} of order-{d} elements is not a multiple of phi({d})")
        object.__setattr__(self, "counts", MappingProxyType(counts))

    def __hash__(self):
        return hash((self.group_order, tuple(self.counts.items())))

    def __eq__(self, other):
        if not isinstance(other, OrderSpectrum):
            return NotImplemented
        return self.group_order == other.group_order and dict(self.counts) == dict(other.counts)

    def summary(self) -> str:
        return " ".join(f"{d}:{c}" for d, c in self.counts.items())


def order_spectrum(G: FiniteGroup) -> OrderSpectrum:
    counts = Counter(int(o) for o in G.element_orders)
    return OrderSpectrum(G.order, counts)


def psi_k(spectrum: OrderSpectrum | FiniteGroup, k: int) -> int:
    """Sum of k-th powers of element orders."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if isinstance(spectrum, FiniteGroup):
        spectrum = order_spectrum(spectrum)
    return sum(c * d**k for d, c in spectrum.counts.items())


def psi(G: OrderSpectrum | FiniteGroup) -> int:
    return psi_k(G, 1)


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as ((p, e), ...) ascending."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def psi_k_cyclic(n: int, k: int) -> int:
    """psi_k of the cyclic group of order n, via sum over d | n of phi(d) d^k."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    return sum(euler_phi(d) * d**k for d in divisors(n))


def psi_k_a5(k: int) -> int:
    return 1 + 15 * 2**k + 20 * 3**k + 24 * 5**k


def psi_k_z60(k: int) -> int:
    return (1 + 2**k + 2 * 4**k) * (1 + 2 * 3**k) * (1 + 4 * 5**k)


def d_k(k: int) -> Fraction:
    """The threshold constant psi_k(A5) / psi_k(Z60)."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    return Fraction(psi_k_a5(k), psi_k_z60(k))


def claim_bound(p: int, k: int) -> Fraction:
    return Fraction(1, 2**k * p ** (k - 1))


def claim_inequality_holds(p: int, k: int) -> bool:
    """Whether d_k(k) > 1 / (2^k p^(k-1)) holds exactly."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be a positive integer")
    return compare(d_k(k), claim_bound(p, k)) > 0


def compare(a: Fraction, b: Fraction) -> int:
    """Three-way exact comparison by cross-multiplication: -1, 0 or 1."""
    a, b = Fraction(a), Fraction(b)
    left = a.numerator * b.denominator
    right = b.numerator * a.denominator
    return (left > right) - (left < right)
