"""Sufficient conditions for solvability in terms of element-order power sums.

Each checker compares two exact rationals and certifies solvability only when
the relation from the underlying theorem holds.  A failed check is
``INCONCLUSIVE``; a group outside a theorem's hypotheses is ``INAPPLICABLE``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .groups import FiniteGroup, is_solvable
from .metrics import (
    OrderSpectrum,
    compare,
    d_k,
    euler_phi,
    order_spectrum,
    prime_divisors,
    psi_k,
    psi_k_cyclic,
)

DEFAULT_K_WINDOW = range(4, 33)
ORACLE_CAP = 5000

HLM_FACTOR = Fraction(25, 167)  # 1 / 6.68
A5_PSI = 211
Z60_PSI = 1617


class Criterion(enum.Enum):
    HLM2018 = "HLM2018"
    AZAD_KHOSRAVI = "AzadKhosravi"
    AVERAGE_ORDER = "AverageOrder"
    TARNAUCEANU = "Tarnauceanu"
    MAIN_PSI_K = "MainPsiK"
    PHI_BOUND = "PhiBound"
    PHI_BOUND_K = "PhiBoundK"
    BURNSIDE = "Burnside"
    CYCLIC_DETECT = "CyclicDetect"


class Relation(enum.Enum):
    STRICTLY_GREATER = "strictly_greater"
    STRICTLY_LESS = "strictly_less"
    AT_LEAST = "at_least"

    def holds(self, lhs: Fraction, rhs: Fraction) -> bool:
        c = compare(lhs, rhs)
        if self is Relation.STRICTLY_GREATER:
            return c > 0
        if self is Relation.STRICTLY_LESS:
            return c < 0
        return c >= 0


class Verdict(enum.Enum):
    SOLVABLE_CERTIFIED = "SolvableCertified"
    INCONCLUSIVE = "Inconclusive"
    INAPPLICABLE = "Inapplicable"


CRITERION_ORDER = list(Criterion)


@dataclass(frozen=True)
class CriterionVerdict:
    criterion: Criterion
    group_name: str
    n: int
    lhs: Fraction
    rhs: Fraction
    relation: Relation
    verdict: Verdict
    k_used: int | None = None
    note: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.SOLVABLE_CERTIFIED


@dataclass
class CriteriaReport:
    group_name: str
    order: int
    spectrum: OrderSpectrum
    verdicts: list[CriterionVerdict]
    oracle_solvable: bool | None = None
    k_window: list[int] = field(default_factory=lambda: list(DEFAULT_K_WINDOW))

    @property
    def consistency(self) -> bool:
        if self.oracle_solvable is not False:
            return True
        return not any(v.certified for v in self.verdicts)

    @property
    def certified_by(self) -> list[Criterion]:
        return [v.criterion for v in self.verdicts if v.certified]

    def verdict(self, criterion: Criterion) -> CriterionVerdict:
        for v in self.verdicts:
            if v.criterion is criterion:
                return v
        raise KeyError(criterion)


def _spectrum(G: FiniteGroup | OrderSpectrum) -> OrderSpectrum:
    return G if isinstance(G, OrderSpectrum) else order_spectrum(G)


def _name(G) -> str:
    return getattr(G, "name", "G")


def _decide(criterion, G, lhs, rhs, relation, k=None, note="") -> CriterionVerdict:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    verdict = Verdict.SOLVABLE_CERTIFIED if relation.holds(lhs, rhs) else Verdict.INCONCLUSIVE
    n = G.group_order if isinstance(G, OrderSpectrum) else G.order
    return CriterionVerdict(criterion, _name(G), n, lhs, rhs, relation, verdict, k, note)


def crit_hlm_2018(G) -> CriterionVerdict:
    """psi(G) > psi(Z_n) / 6.68."""
    s = _spectrum(G)
    rhs = HLM_FACTOR * psi_k_cyclic(s.group_order, 1)
    return _decide(Criterion.HLM2018, G, psi_k(s, 1), rhs, Relation.STRICTLY_GREATER)


def crit_azad_khosravi(G) -> CriterionVerdict:
    """psi(G) > (211/1617) psi(Z_n)."""
    s = _spectrum(G)
    rhs = Fraction(A5_PSI, Z60_PSI) * psi_k_cyclic(s.group_order, 1)
    return _decide(Criterion.AZAD_KHOSRAVI, G, psi_k(s, 1), rhs, Relation.STRICTLY_GREATER)


def crit_average_order(G) -> CriterionVerdict:
    """psi(G) < n psi(A5) / 60, i.e. average order below that of A5."""
    s = _spectrum(G)
    rhs = Fraction(s.group_order * A5_PSI, 60)
    return _decide(Criterion.AVERAGE_ORDER, G, psi_k(s, 1), rhs, Relation.STRICTLY_LESS)


def crit_tarnauceanu(G) -> CriterionVerdict:
    """psi(G) / n^2 > 211/3600."""
    s = _spectrum(G)
    lhs = Fraction(psi_k(s, 1), s.group_order**2)
    return _decide(Criterion.TARNAUCEANU, G, lhs, Fraction(A5_PSI, 3600), Relation.STRICTLY_GREATER)


def main_psi_k_window(n: int, k_range: Iterable[int]) -> list[int]:
    """The k values the main criterion may use for a group of order n."""
    primes = prime_divisors(n)
    p = primes[-1] if primes else 1
    if p > 7:
        low = 4
    elif p == 7:
        low = 13
    else:
        return []
    return [k for k in k_range if k >= low]


def crit_main_psi_k(G, k_range: Iterable[int] = DEFAULT_K_WINDOW) -> CriterionVerdict:
    """psi_k(G) > d_k(k) psi_k(Z_n) for some admissible k in the window.

    Admissible means k >= 4 when the largest prime divisor of n exceeds 7
    and k >= 13 when it equals 7.  Every k in the window is tried in order.
    """
    s = _spectrum(G)
    n = s.group_order
    k_range = list(k_range)
    window = f"{k_range[0]}..{k_range[-1]}" if k_range else "empty"
    primes = prime_divisors(n)
    if not primes or primes[-1] <= 5:
        return CriterionVerdict(
            Criterion.MAIN_PSI_K, _name(G), n, Fraction(0), Fraction(0),
            Relation.STRICTLY_GREATER, Verdict.INAPPLICABLE,
            note="largest prime divisor of the order is at most 5",
        )
    ks = main_psi_k_window(n, k_range)
    if not ks:
        return CriterionVerdict(
            Criterion.MAIN_PSI_K, _name(G), n, Fraction(0), Fraction(0),
            Relation.STRICTLY_GREATER, Verdict.INAPPLICABLE,
            note=f"no admissible k in window {window}",
        )
    first = None
    for k in ks:
        v = _decide(
            Criterion.MAIN_PSI_K, G, psi_k(s, k), d_k(k) * psi_k_cyclic(n, k),
            Relation.STRICTLY_GREATER, k, f"window {window}",
        )
        if v.certified:
            return v
        first = first or v
    return first


def crit_phi_bound(G) -> CriterionVerdict:
    """psi(G) >= (3n/5) phi(n)."""
    s = _spectrum(G)
    n = s.group_order
    rhs = Fraction(3 * n * euler_phi(n), 5)
    return _decide(Criterion.PHI_BOUND, G, psi_k(s, 1), rhs, Relation.AT_LEAST)


def crit_phi_bound_k(G, k: int) -> CriterionVerdict:
    """psi_k(G) >= 3 n^k phi(n) / (5 q^(k-1)) with q the smallest prime of n."""
    s = _spectrum(G)
    n = s.group_order
    primes = prime_divisors(n)
    q = primes[0] if primes else 1
    rhs = Fraction(3 * n**k * euler_phi(n), 5 * q ** (k - 1))
    return _decide(Criterion.PHI_BOUND_K, G, psi_k(s, k), rhs, Relation.AT_LEAST, k)


def crit_burnside(G) -> CriterionVerdict:
    """At most two distinct primes divide the order."""
    s = _spectrum(G)
    count = len(prime_divisors(s.group_order))
    # 2 >= #primes, phrased so the shared relation machinery applies
    return _decide(Criterion.BURNSIDE, G, 2, count, Relation.AT_LEAST)


def crit_cyclic_detect(G, k: int) -> CriterionVerdict:
    """psi_k(G) > (1 + 3*2^k) / (1 + 2^k + 2*4^k) psi_k(Z_n) forces G cyclic."""
    s = _spectrum(G)
    bound = Fraction(1 + 3 * 2**k, 1 + 2**k + 2 * 4**k)
    rhs = bound * psi_k_cyclic(s.group_order, k)
    return _decide(Criterion.CYCLIC_DETECT, G, psi_k(s, k), rhs, Relation.STRICTLY_GREATER, k)


def _first_certifying(check, G, ks: Iterable[int]) -> CriterionVerdict:
    first = None
    for k in ks:
        v = check(G, k)
        if v.certified:
            return v
        first = first or v
    return first


def run_all(
    G: FiniteGroup,
    k_range: Iterable[int] = DEFAULT_K_WINDOW,
    oracle: bool | None = None,
    oracle_cap: int = ORACLE_CAP,
) -> CriteriaReport:
    """Apply every criterion and cross-check against the derived series.

    ``oracle=None`` runs the derived-series check only up to ``oracle_cap``;
    ``True`` forces it and ``False`` skips it.  PhiBoundK and CyclicDetect
    report the first k in ``1..max(k_range)`` that certifies.
    """
    k_range = list(k_range)
    if not k_range:
        raise ValueError("k_range must be non-empty")
    s = order_spectrum(G)
    small_ks = range(1, max(k_range) + 1)
    verdicts = [
        crit_hlm_2018(G),
        crit_azad_khosravi(G),
        crit_average_order(G),
        crit_tarnauceanu(G),
        crit_main_psi_k(G, k_range),
        crit_phi_bound(G),
        _first_certifying(crit_phi_bound_k, G, small_ks),
        crit_burnside(G),
        _first_certifying(crit_cyclic_detect, G, small_ks),
    ]
    if oracle is None:
        oracle = G.order <= oracle_cap
    oracle_solvable = is_solvable(G) if oracle else None
    return CriteriaReport(G.name, G.order, s, verdicts, oracle_solvable, k_range)
