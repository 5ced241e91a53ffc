"""Invariants checked on randomly assembled groups."""

from fractions import Fraction
from math import gcd

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from psisolv.catalog_io import catalog, dihedral, multiplier_action
from psisolv.criteria import crit_phi_bound, crit_phi_bound_k, run_all
from psisolv.groups import (
    ActionSpec,
    center,
    cyclic_group,
    derived_series,
    direct_product,
    is_cyclic,
    is_normal,
    is_solvable,
    quotient,
    semidirect_product,
)
from psisolv.metrics import euler_phi, order_spectrum, prime_divisors, psi_k, psi_k_cyclic

from oracles import brute_is_solvable, table_of

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])

_FIXED = {name: catalog(name) for name in ("S3", "S4", "A5", "Z2xZ2", "A4", "H1", "H2")}


def _multiplier_groups(draw):
    """Z_m : Z_h with a random unit of Z_m whose order divides h."""
    m = draw(st.integers(2, 30))
    units = [r for r in range(1, m) if gcd(r, m) == 1]
    r = draw(st.sampled_from(units))
    order = next(e for e in range(1, m + 1) if pow(r, e, m) == 1)
    h = max(2, order * draw(st.integers(1, 3)))
    return semidirect_product(cyclic_group(m), cyclic_group(h), multiplier_action(m, r), [1])


@st.composite
def small_groups(draw, max_order=240):
    kind = draw(st.sampled_from(["cyclic", "dihedral", "fixed", "semidirect", "product"]))
    if kind == "cyclic":
        return cyclic_group(draw(st.integers(1, 120)))
    if kind == "dihedral":
        return dihedral(draw(st.integers(1, 40)))
    if kind == "fixed":
        return _FIXED[draw(st.sampled_from(sorted(_FIXED)))]
    if kind == "semidirect":
        return _multiplier_groups(draw)
    a = draw(small_groups(max_order=max_order))
    b = draw(st.one_of(st.builds(cyclic_group, st.integers(1, 12)), st.sampled_from([_FIXED["S3"], _FIXED["Z2xZ2"], _FIXED["A5"]])))
    if a.order * b.order > max_order:
        return a
    return direct_product(a, b)


@SETTINGS
@given(small_groups())
def test_spectrum_invariants(G):
    s = order_spectrum(G)
    assert sum(s.counts.values()) == G.order
    assert all(G.order % d == 0 and c % euler_phi(d) == 0 for d, c in s.counts.items())


@SETTINGS
@given(small_groups(), st.integers(1, 8))
def test_cyclic_group_maximises_psi_k(G, k):
    value, top = psi_k(G, k), psi_k_cyclic(G.order, k)
    assert value <= top
    assert (value == top) == is_cyclic(G)


@SETTINGS
@given(small_groups(), st.integers(1, 8))
def test_non_cyclic_bound(G, k):
    if not is_cyclic(G):
        bound = Fraction(1 + 3 * 2**k, 1 + 2**k + 2 * 4**k)
        assert psi_k(G, k) <= bound * psi_k_cyclic(G.order, k)


def test_non_cyclic_bound_attained_by_klein():
    for k in range(1, 10):
        assert psi_k(_FIXED["Z2xZ2"], k) == 1 + 3 * 2**k
        assert psi_k_cyclic(4, k) == 1 + 2**k + 2 * 4**k


@SETTINGS
@given(small_groups(), st.integers(2, 6))
def test_small_prime_power_bound(G, k):
    if not is_cyclic(G):
        n, q = G.order, prime_divisors(G.order)[0]
        assert psi_k(G, k) * q ** (k - 1) <= n ** (k - 1) * psi_k(G, 1)


@SETTINGS
@given(small_groups(max_order=60), small_groups(max_order=60), st.integers(1, 6))
def test_product_multiplicativity(A, B, k):
    if A.order * B.order > 3000:
        return
    lhs, rhs = psi_k(direct_product(A, B), k), psi_k(A, k) * psi_k(B, k)
    if gcd(A.order, B.order) == 1:
        assert lhs == rhs
    else:
        assert lhs < rhs


@SETTINGS
@given(small_groups())
def test_psi_k_strictly_increasing(G):
    if G.order >= 2:
        vals = [psi_k(G, k) for k in range(1, 7)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


@SETTINGS
@given(small_groups())
def test_soundness(G):
    report = run_all(G, range(4, 20), oracle=True)
    assert report.consistency
    if report.certified_by:
        assert report.oracle_solvable


@SETTINGS
@given(small_groups())
def test_k_reduction(G):
    assert crit_phi_bound_k(G, 1).verdict is crit_phi_bound(G).verdict


@SETTINGS
@given(small_groups(max_order=120))
def test_derived_series_shape(G):
    series = derived_series(G)
    for upper, lower in zip(series, series[1:]):
        assert lower.order < upper.order and upper.order % lower.order == 0
        assert is_normal(G, lower)
    assert G.order % series[-1].order == 0


@settings(max_examples=25, deadline=None)
@given(small_groups(max_order=72))
def test_solvability_matches_brute_force(G):
    assert is_solvable(G) == brute_is_solvable(table_of(G))


@SETTINGS
@given(small_groups())
def test_center_quotient(G):
    Z = center(G)
    assert is_normal(G, Z)
    assert quotient(G, Z).order * Z.order == G.order


@SETTINGS
@given(st.integers(1, 20), st.integers(2, 12))
def test_trivial_action_matches_direct_product(m, h):
    N, H = cyclic_group(m), cyclic_group(h)
    G = semidirect_product(N, H, ActionSpec(m, (tuple(range(m)),)), [1])
    assert order_spectrum(G) == order_spectrum(direct_product(N, H))


def test_small_orders_are_solvable():
    for n in range(1, 60):
        assert is_solvable(cyclic_group(n))
    for name in ("S3", "S4", "A4", "D29", "H1", "H2"):
        assert is_solvable(catalog(name))
    assert not is_solvable(catalog("A5")) and not is_solvable(catalog("S5"))
