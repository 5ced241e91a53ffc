"""Finite groups as Cayley tables.

Elements are the indices ``0..n-1`` and the identity is always ``0``.  Tables
are read-only numpy arrays, so a :class:`FiniteGroup` can be shared freely once
built.  Everything structural (orders, subgroups, derived series, quotients)
reduces to table lookups.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_CAP = 20000
ASSOCIATIVITY_CHECK_LIMIT = 256
INDEX_DTYPE = np.int32  # halves table memory; every order under the cap fits

__all__ = [
    "DEFAULT_CAP",
    "GroupError",
    "GroupTooLarge",
    "FiniteGroup",
    "Permutation",
    "SubgroupSet",
    "ActionSpec",
    "cyclic_group",
    "perm_group",
    "direct_product",
    "semidirect_product",
    "element_order",
    "subgroup_generated",
    "commutator_subgroup",
    "derived_series",
    "is_solvable",
    "center",
    "is_normal",
    "cyclic_normal_sylow",
    "quotient",
    "max_element_order",
    "is_cyclic",
]


class GroupError(ValueError):
    """Invalid group data or a violated constructor precondition."""


class GroupTooLarge(GroupError):
    pass


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise GroupTooLarge(f"group too large: order {n} exceeds cap {cap}")


class FiniteGroup:
    """A finite group given by its full multiplication table.

    ``table[a, b]`` is the index of ``a*b``.  Use :meth:`from_table` for
    untrusted input; the plain constructor trusts its caller (the
    constructors in this module build associative tables by design).
    """

    def __init__(self, table, name: str = "G", inverse=None):
        table = np.array(table, dtype=INDEX_DTYPE)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        n = table.shape[0]
        if inverse is None:
            rows, cols = np.nonzero(table == 0)
            inverse = np.empty(n, dtype=INDEX_DTYPE)
            inverse[rows] = cols
        else:
            inverse = np.array(inverse, dtype=INDEX_DTYPE)
        table.setflags(write=False)
        inverse.setflags(write=False)
        self.table = table
        self.inverse = inverse
        self.name = name

    identity = 0

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    @classmethod
    def from_table(cls, rows, name: str = "G", check_associative: bool | None = None) -> FiniteGroup:
        """Validate an imported table and wrap it.

        Latin-square, identity and inverse checks always run.  The O(n^3)
        associativity check runs for n <= 256 unless forced either way.
        """
        try:
            table = np.array(rows, dtype=np.int64)
        except (TypeError, ValueError) as exc:
            raise GroupError(f"table is not a rectangular integer array: {exc}") from None
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise GroupError(f"table entries must lie in 0..{n - 1}")
        expected = np.arange(n)
        if not (np.array_equal(table[0], expected) and np.array_equal(table[:, 0], expected)):
            raise GroupError("element 0 must be the identity")
        sorted_rows = np.sort(table, axis=1)
        sorted_cols = np.sort(table, axis=0)
        if not (sorted_rows == expected).all() or not (sorted_cols == expected[:, None]).all():
            raise GroupError("table is not a Latin square")
        group = cls(table, name=name)
        if not np.array_equal(group.table[expected, group.inverse], np.zeros(n, dtype=np.int64)):
            raise GroupError("inverse data inconsistent")
        if check_associative is None:
            check_associative = n <= ASSOCIATIVITY_CHECK_LIMIT
        if check_associative and not group.is_associative():
            raise GroupError("table is not associative")
        return group

    def is_associative(self) -> bool:
        t = self.table
        for a in range(self.order):
            # (a*b)*c versus a*(b*c), all b and c at once
            if not np.array_equal(t[t[a]], t[a][t]):
                return False
        return True

    @cached_property
    def element_orders(self) -> np.ndarray:
        """Order of every element, computed by stepping all powers together."""
        n = self.order
        t = self.table
        idx = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        power = idx.copy()
        m = 1
        while True:
            hit = (power == 0) & (orders == 0)
            orders[hit] = m
            if orders.all():
                break
            power = t[power, idx]
            m += 1
        orders.setflags(write=False)
        return orders

    def elements(self) -> range:
        return range(self.order)


@dataclass(frozen=True)
class Permutation:
    """A permutation of ``0..degree-1`` stored as its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise GroupError(f"not a permutation: {list(self.images)}")
        object.__setattr__(self, "images", images)

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Permutation:
        images = list(range(degree))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    def __mul__(self, other: Permutation) -> Permutation:
        # apply self first, then other
        return Permutation(tuple(other.images[i] for i in self.images))


@dataclass(frozen=True)
class SubgroupSet:
    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        if self.parent.order % len(self.members):
            raise GroupError("subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a) -> bool:
        return int(a) in self._lookup

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def _lookup(self) -> frozenset[int]:
        return frozenset(self.members)

    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m


@dataclass(frozen=True)
class ActionSpec:
    """Images of the normal group's elements under each acting generator."""

    normal_order: int
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        maps = tuple(tuple(int(x) for x in m) for m in self.maps)
        for m in maps:
            if len(m) != self.normal_order:
                raise GroupError(f"action map has length {len(m)}, expected {self.normal_order}")
        object.__setattr__(self, "maps", maps)

    def validate(self, normal: FiniteGroup) -> None:
        if normal.order != self.normal_order:
            raise GroupError("action does not match the normal group's order")
        t = normal.table
        for i, m in enumerate(self.maps):
            f = np.array(m)
            if sorted(m) != list(range(self.normal_order)):
                raise GroupError(f"action map {i} is not a bijection")
            if not np.array_equal(f[t], t[f][:, f]):
                raise GroupError(f"action map {i} is not an automorphism")


def _table_from_right_actions(
    n: int, parent: Sequence[int], via: Sequence[int], gen_cols: np.ndarray
) -> np.ndarray:
    """Build a Cayley table from right multiplication by generators.

    ``gen_cols[:, j]`` is the index of ``a*g_j`` for every ``a``; element
    ``b`` was discovered as ``parent[b] * g[via[b]]``, so the column for
    ``b`` is the generator column applied to the column of its parent.
    """
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for b in range(1, n):
        table[:, b] = gen_cols[table[:, parent[b]], via[b]]
    return table


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be at least 1")
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, name=f"Z{n}")


def perm_group(
    degree: int, gens: Iterable[Permutation | Sequence[int]], cap: int = DEFAULT_CAP, name: str | None = None
) -> FiniteGroup:
    """Breadth-first closure of permutation generators.

    Identity first, then elements in discovery order, generators tried in
    the order given.  Products compose left to right (``a*b`` applies ``a``
    first).
    """
    if degree < 1:
        raise GroupError("degree must be positive")
    perms = [g if isinstance(g, Permutation) else Permutation(tuple(g)) for g in gens]
    for g in perms:
        if g.degree != degree:
            raise GroupError(f"generator {list(g.images)} has degree {g.degree}, expected {degree}")
    start = Permutation.identity(degree)
    index = {start.images: 0}
    elements = [start]
    parent, via = [0], [0]
    edges: list[list[int]] = []
    i = 0
    while i < len(elements):
        cur = elements[i]
        row = []
        for j, g in enumerate(perms):
            nxt = cur * g
            k = index.get(nxt.images)
            if k is None:
                k = len(elements)
                _check_cap(k + 1, cap)
                index[nxt.images] = k
                elements.append(nxt)
                parent.append(i)
                via.append(j)
            row.append(k)
        edges.append(row)
        i += 1
    n = len(elements)
    gen_cols = np.array(edges, dtype=np.int64).reshape(n, len(perms))
    table = _table_from_right_actions(n, parent, via, gen_cols)
    return FiniteGroup(table, name=name or f"perm{degree}[{n}]")


def direct_product(A: FiniteGroup, B: FiniteGroup, cap: int = DEFAULT_CAP, name: str | None = None) -> FiniteGroup:
    """Pairs ``(a, b)`` indexed as ``a*|B| + b``."""
    na, nb = A.order, B.order
    _check_cap(na * nb, cap)
    t = A.table[:, None, :, None] * nb + B.table[None, :, None, :]
    return FiniteGroup(t.reshape(na * nb, na * nb), name=name or f"{A.name}x{B.name}")


def _extend_action(H: FiniteGroup, h_gens: Sequence[int], maps: Sequence[np.ndarray]) -> np.ndarray:
    """Extend generator images to an anti-homomorphism H -> Aut(N).

    Walks H from the identity by right multiplication with the generators,
    setting alpha(h*g) = alpha(g) o alpha(h) and checking every revisited
    element for agreement.
    """
    m = len(maps[0]) if maps else 0
    alpha: list[np.ndarray | None] = [None] * H.order
    alpha[0] = np.arange(m)
    queue = [0]
    for h in queue:
        for g, f in zip(h_gens, maps):
            hg = H.mul(h, g)
            image = f[alpha[h]]
            if alpha[hg] is None:
                alpha[hg] = image
                queue.append(hg)
            elif not np.array_equal(alpha[hg], image):
                raise GroupError("action does not extend consistently to the acting group")
    if len(queue) != H.order:
        raise GroupError("acting generators do not generate the acting group")
    return np.array(alpha, dtype=np.int64).reshape(H.order, m)


def semidirect_product(
    N: FiniteGroup,
    H: FiniteGroup,
    action: ActionSpec,
    h_gens: Sequence[int],
    cap: int = DEFAULT_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Semidirect product on pairs ``(h, n)`` indexed as ``h*|N| + n``.

    Multiplication is ``(h1, n1)(h2, n2) = (h1 h2, alpha(h2)(n1) n2)`` where
    ``alpha`` is the right action determined by ``action.maps[i]`` being the
    image array of ``h_gens[i]``.
    """
    if len(action.maps) != len(h_gens):
        raise GroupError("need exactly one action map per acting generator")
    for g in h_gens:
        if not 0 <= int(g) < H.order:
            raise GroupError(f"acting generator {g} out of range")
    action.validate(N)
    nn, nh = N.order, H.order
    _check_cap(nn * nh, cap)
    alpha = _extend_action(H, [int(g) for g in h_gens], [np.array(m) for m in action.maps])
    # twisted[h2, n1] = alpha(h2)(n1)
    h1 = np.arange(nh)[:, None, None, None]
    n1 = np.arange(nn)[None, :, None, None]
    h2 = np.arange(nh)[None, None, :, None]
    n2 = np.arange(nn)[None, None, None, :]
    hh = H.table[h1, h2]
    nn_part = N.table[alpha[h2, n1], n2]
    t = hh * nn + nn_part
    n = nn * nh
    return FiniteGroup(t.reshape(n, n), name=name or f"{N.name}:{H.name}")


def _check_index(G: FiniteGroup, a: int) -> None:
    if not 0 <= a < G.order:
        raise IndexError(f"element {a} out of range for group of order {G.order}")


def element_order(G: FiniteGroup, a: int) -> int:
    _check_index(G, a)
    m, x = 1, a
    while x != 0:
        x = G.mul(x, a)
        m += 1
    return m


def _closure(G: FiniteGroup, gens: Sequence[int]) -> np.ndarray:
    """Boolean membership mask of the subgroup generated by ``gens``."""
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    if gens.size == 0:
        return mask
    frontier = np.array([0])
    while frontier.size:
        products = np.unique(G.table[frontier][:, gens])
        new = products[~mask[products]]
        mask[new] = True
        frontier = new
    return mask


def _subgroup(G: FiniteGroup, mask: np.ndarray) -> SubgroupSet:
    return SubgroupSet(G, tuple(int(x) for x in np.flatnonzero(mask)))


def subgroup_generated(G: FiniteGroup, S: Iterable[int]) -> SubgroupSet:
    S = [int(s) for s in S]
    for s in S:
        _check_index(G, s)
    return _subgroup(G, _closure(G, S))


def _generators(G: FiniteGroup, H: SubgroupSet) -> list[int]:
    """A small generating set for H, picked greedily in index order."""
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    for h in H.members:
        if not mask[h]:
            gens.append(h)
            mask = _closure(G, gens)
            if mask.sum() == H.order:
                break
    return gens


def _normal_closure(G: FiniteGroup, seeds: Sequence[int], conj_by: Sequence[int]) -> np.ndarray:
    t, inv = G.table, G.inverse
    gens = [int(s) for s in seeds if s != 0]
    mask = _closure(G, gens)
    pending = list(gens)
    while pending:
        s = pending.pop()
        for g in conj_by:
            c = int(t[t[inv[g], s], g])
            if not mask[c]:
                gens.append(c)
                pending.append(c)
                mask = _closure(G, gens)
    return mask


def commutator_subgroup(G: FiniteGroup, H: SubgroupSet | None = None) -> SubgroupSet:
    """[H, H]: the normal closure in H of commutators of H's generators."""
    if H is None:
        H = _subgroup(G, np.ones(G.order, dtype=bool))
    t, inv = G.table, G.inverse
    gens = _generators(G, H)
    comms = []
    for i, a in enumerate(gens):
        for b in gens[i + 1 :]:
            comms.append(int(t[t[inv[a], inv[b]], t[a, b]]))
    return _subgroup(G, _normal_closure(G, comms, gens))


def derived_series(G: FiniteGroup) -> list[SubgroupSet]:
    """G, G', G'', ... up to the first repeated term."""
    series = [_subgroup(G, np.ones(G.order, dtype=bool))]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt.order == series[-1].order:
            return series
        series.append(nxt)


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].order == 1


def center(G: FiniteGroup) -> SubgroupSet:
    t = G.table
    return _subgroup(G, (t == t.T).all(axis=1))


def is_normal(G: FiniteGroup, H: SubgroupSet) -> bool:
    t, inv = G.table, G.inverse
    members = np.array(H.members)
    mask = H.mask()
    # g^-1 h g for every g (rows) and h (columns)
    conj = t[t[inv[:, None], members[None, :]], np.arange(G.order)[:, None]]
    return bool(mask[conj].all())


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def cyclic_normal_sylow(G: FiniteGroup, p: int) -> SubgroupSet | None:
    """The Sylow p-subgroup if it is cyclic and normal, else ``None``."""
    if not _is_prime(p):
        raise GroupError(f"{p} is not prime")
    n = G.order
    if n % p:
        raise GroupError(f"{p} does not divide {n}")
    part = 1
    while n % (part * p) == 0:
        part *= p
    witnesses = np.flatnonzero(G.element_orders == part)
    if witnesses.size == 0:
        return None
    P = subgroup_generated(G, [int(witnesses[0])])
    return P if is_normal(G, P) else None


def quotient(G: FiniteGroup, N: SubgroupSet, name: str | None = None) -> FiniteGroup:
    """G/N on left cosets, numbered by their smallest element."""
    if not is_normal(G, N):
        raise GroupError("subgroup is not normal")
    n = G.order
    members = np.array(N.members)
    label = np.full(n, -1, dtype=np.int64)
    reps = []
    for g in range(n):
        if label[g] < 0:
            label[G.table[g, members]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    table = label[G.table[reps[:, None], reps[None, :]]]
    return FiniteGroup(table, name=name or f"{G.name}/N{len(members)}")


def max_element_order(G: FiniteGroup) -> int:
    return int(G.element_orders.max())


def is_cyclic(G: FiniteGroup) -> bool:
    return max_element_order(G) == G.order
