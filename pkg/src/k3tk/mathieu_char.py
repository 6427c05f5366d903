"""Exact arithmetic for the Mathieu character.

A Mathieu representation is 24-dimensional with character value
``epsilon(ord(g))`` at ``g``.  Everything here works in
:class:`fractions.Fraction`; the integrality of ``24/N`` downstream depends on it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "OrderHistogram",
    "epsilon",
    "mu",
    "is_tame_order",
    "check_point_count_relation",
    "TAME_ORDERS",
]

#: element orders allowed for tame symplectic automorphisms
TAME_ORDERS = frozenset(range(1, 9))


def _prime_divisors(n: int) -> list[int]:
    primes = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            primes.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        primes.append(n)
    return primes


def epsilon(n: int) -> Fraction:
    """Return ``24 / (n * prod_{q | n} (1 + 1/q))`` exactly.

    For ``2 <= n <= 8`` this is the number of fixed points of a tame symplectic
    automorphism of order ``n``.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"order must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    denom = Fraction(n)
    for q in _prime_divisors(n):
        denom *= Fraction(q + 1, q)
    return Fraction(24) / denom


def is_tame_order(n: int) -> bool:
    return n in TAME_ORDERS


@dataclass(frozen=True)
class OrderHistogram:
    """Counts of group elements by element order.

    ``entries[d]`` is the number of elements of order ``d``.  The group order is
    the total count unless ``group_order`` is given, in which case it must
    match and every order must divide it.
    """

    entries: Mapping[int, int]
    group_order: int | None = None
    _items: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        items = tuple(sorted((int(d), int(c)) for d, c in dict(self.entries).items()))
        object.__setattr__(self, "_items", items)
        object.__setattr__(self, "entries", dict(items))
        self.validate()

    def validate(self) -> None:
        if not self._items:
            raise ValueError("empty histogram")
        for d, c in self._items:
            if d < 1:
                raise ValueError(f"element order must be positive, got {d}")
            if c < 1:
                raise ValueError(f"count for order {d} must be positive, got {c}")
        if self.entries.get(1) != 1:
            raise ValueError("histogram must contain exactly one element of order 1")
        if self.group_order is not None:
            if self.total != self.group_order:
                raise ValueError(
                    f"counts sum to {self.total}, expected group order {self.group_order}"
                )
            bad = [d for d, _ in self._items if self.group_order % d]
            if bad:
                raise ValueError(f"orders {bad} do not divide {self.group_order}")

    @property
    def total(self) -> int:
        return sum(c for _, c in self._items)

    @property
    def order(self) -> int:
        return self.group_order if self.group_order is not None else self.total

    def max_order(self) -> int:
        return self._items[-1][0]

    def items(self):
        return iter(self._items)

    def __eq__(self, other):
        if isinstance(other, OrderHistogram):
            return self._items == other._items
        if isinstance(other, Mapping):
            return dict(self._items) == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(self._items)


def mu(hist: OrderHistogram | Mapping[int, int]) -> Fraction:
    """Average of ``epsilon(ord(g))`` over the group: the invariant dimension."""
    if not isinstance(hist, OrderHistogram):
        hist = OrderHistogram(hist)
    total = sum((c * epsilon(d) for d, c in hist.items()), Fraction(0))
    return total / hist.total


def check_point_count_relation(
    orders: Iterable[int], N: int, mu_value: Fraction | int
) -> bool:
    """Check ``sum(1/o_i) == 24/N + k - mu`` exactly, ``k`` being ``len(orders)``.

    ``orders`` are the stabilizer orders of the singular points of ``X/G``.
    """
    orders = list(orders)
    lhs = sum((Fraction(1, o) for o in orders), Fraction(0))
    rhs = Fraction(24, N) + len(orders) - Fraction(mu_value)
    return lhs == rhs
