"""Exhaustive search over singularity configurations of ``X/G``.

A configuration is a multiset of stabilizer lattice types.  For ``k`` points
with stabilizer orders ``o_i``, components ``c_i`` and discriminant orders
``d_i`` the constraints are

* rank: ``sum c_i == 20``
* identity: ``sum 1/o_i == k - 4 + 24/N`` for a positive integer ``N``
* divisibility: every ``o_i`` divides ``N``
* nonsquare: ``prod d_i`` is not a perfect square
* k range: ``k`` is 4 or 5

:func:`enumerate_list` returns every ``(N, configuration)`` pair meeting them;
with default arguments this is the 56-entry list in ``data/reference_list.tsv``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from . import _data
from .ade_lattice import (
    ALPHABET,
    AdeType,
    disc_order,
    format_factorization,
    is_square,
    parse_ade_list,
    stabilizer_record,
)

__all__ = [
    "SingConfig",
    "ListEntry",
    "ConstraintReport",
    "ListDiff",
    "ListFormatError",
    "candidate_order",
    "check_constraints",
    "enumerate_list",
    "load_reference_list",
    "parse_order",
    "verify_table2",
]

TARGET_RANK = 20
DEFAULT_K_RANGE = (4, 5)


class ListFormatError(ValueError):
    """The reference list file could not be parsed."""


@dataclass(frozen=True, order=True)
class SingConfig:
    """Canonically sorted multiset of stabilizer lattice types."""

    types: tuple[AdeType, ...]

    def __post_init__(self):
        types = tuple(sorted(self.types))
        object.__setattr__(self, "types", types)
        outside = sorted({t for t in types if t not in ALPHABET})
        if outside:
            names = ", ".join(map(str, outside))
            raise ValueError(f"not stabilizer types: {names}")

    @classmethod
    def parse(cls, text: str) -> "SingConfig":
        return cls(parse_ade_list(text))

    @property
    def k(self) -> int:
        return len(self.types)

    @property
    def rank(self) -> int:
        return sum(t.rank for t in self.types)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(stabilizer_record(t).o_x for t in self.types)

    @property
    def disc_product(self) -> int:
        return disc_order(self.types)

    def tex(self) -> str:
        """``"A_2A_4A_4A_6D_4"``"""
        return "".join(t.tex for t in self.types)

    def __str__(self):
        return ",".join(map(str, self.types))


@dataclass(frozen=True, order=True)
class ListEntry:
    N: int
    config: SingConfig

    def sort_key(self):
        return (-self.N, self.config)


def _slack(orders: Iterable[int]) -> Fraction:
    # s = sum 1/o_i - (k - 4), so that the identity reads N = 24/s
    orders = list(orders)
    return sum((Fraction(1, o) for o in orders), Fraction(0)) - (len(orders) - 4)


def _order_from_slack(s: Fraction, orders: Sequence[int]) -> int | None:
    if s <= 0:
        return None
    n = Fraction(24) / s
    if n.denominator != 1:
        return None
    N = n.numerator
    if any(N % o for o in orders):
        return None
    return N


def candidate_order(config: SingConfig) -> int | None:
    """The group order ``N`` forced by the identity and divisibility constraints, if any."""
    orders = config.orders
    return _order_from_slack(_slack(orders), orders)


@dataclass(frozen=True)
class ConstraintReport:
    """Per-constraint verdicts for a configuration and a proposed order."""

    alphabet: bool
    rank_sum: bool
    identity: bool
    divisibility: bool
    nonsquare: bool
    k_range: bool

    LABELS = (
        ("alphabet", "stabilizer alphabet"),
        ("rank_sum", "rank sum is 20"),
        ("identity", "sum 1/o = k - 4 + 24/N"),
        ("divisibility", "o_i | N"),
        ("nonsquare", "discriminant product not a square"),
        ("k_range", "k in {4, 5}"),
    )

    @property
    def passed(self) -> bool:
        return all(getattr(self, name) for name, _ in self.LABELS)

    def failures(self) -> list[str]:
        return [name for name, _ in self.LABELS if not getattr(self, name)]

    def lines(self) -> list[str]:
        return [
            f"{label}: {'pass' if getattr(self, name) else 'FAIL'}"
            for name, label in self.LABELS
        ]


def check_constraints(config: SingConfig | Iterable[AdeType], N: int) -> ConstraintReport:
    """Evaluate each constraint separately.

    Accepts any multiset of ADE types so that out-of-alphabet configurations
    (e.g. two ``A_10`` points) get a report rather than an exception; the
    order-based constraints then fail since those types have no stabilizer.
    """
    types = tuple(sorted(config.types if isinstance(config, SingConfig) else config))
    in_alphabet = all(t in ALPHABET for t in types)
    k = len(types)
    rank_ok = sum(t.rank for t in types) == TARGET_RANK
    if in_alphabet and k:
        orders = [stabilizer_record(t).o_x for t in types]
        identity = N > 0 and _slack(orders) * N == 24
        divisibility = N > 0 and all(N % o == 0 for o in orders)
    else:
        identity = divisibility = False
    nonsquare = bool(types) and not is_square(disc_order(types))
    return ConstraintReport(
        alphabet=in_alphabet,
        rank_sum=rank_ok,
        identity=identity,
        divisibility=divisibility,
        nonsquare=nonsquare,
        k_range=k in (4, 5),
    )


def enumerate_list(
    k_range: tuple[int, int] = DEFAULT_K_RANGE,
    require_rank20: bool = True,
    require_nonsquare: bool = True,
    alphabet: Sequence[AdeType] = ALPHABET,
) -> list[ListEntry]:
    """All configurations with ``k`` in ``k_range`` (inclusive) passing the filters.

    Multisets are generated in non-decreasing alphabet order.  A prefix is
    abandoned once the rank target is out of reach or once the slack
    ``sum 1/o_i - (k - 4)`` can no longer end up positive (each further point
    lowers it by at least 1/2).  Output is sorted by ``N`` descending, then by
    configuration.
    """
    k_lo, k_hi = k_range
    if not 1 <= k_lo <= k_hi <= 20:
        raise ValueError(f"k_range must lie within [1, 20], got {k_range}")
    alphabet = sorted(set(alphabet))
    ranks = [t.rank for t in alphabet]
    orders = [stabilizer_record(t).o_x for t in alphabet]
    min_rank = min(ranks)
    max_rank = max(ranks)
    half = Fraction(1, 2)
    found: list[ListEntry] = []

    def emit(idx: list[int]):
        os_ = [orders[i] for i in idx]
        N = _order_from_slack(_slack(os_), os_)
        if N is None:
            return
        types = tuple(alphabet[i] for i in idx)
        if require_nonsquare and is_square(disc_order(types)):
            return
        found.append(ListEntry(N, SingConfig(types)))

    for k in range(k_lo, k_hi + 1):
        idx: list[int] = []

        def extend(start: int, rank: int, slack: Fraction):
            # slack here counts the fixed +4 and the -1 per chosen point
            left = k - len(idx)
            if left == 0:
                if not require_rank20 or rank == TARGET_RANK:
                    emit(idx)
                return
            if slack - left * half <= 0:
                return
            if require_rank20:
                if rank + left * min_rank > TARGET_RANK or rank + left * max_rank < TARGET_RANK:
                    return
            for i in range(start, len(alphabet)):
                idx.append(i)
                extend(i, rank + ranks[i], slack + Fraction(1, orders[i]) - 1)
                idx.pop()

        extend(0, 0, Fraction(4))

    found.sort(key=ListEntry.sort_key)
    return found


_PRIME_POWER_RE = re.compile(r"(\d+)(?:\^(\d+))?")


def parse_order(text: str) -> int:
    """``"2^6.3^2.5.7" -> 20160``"""
    n = 1
    for part in text.strip().split("."):
        m = _PRIME_POWER_RE.fullmatch(part)
        if not m:
            raise ValueError(f"bad prime-power product {text!r}")
        n *= int(m.group(1)) ** int(m.group(2) or 1)
    return n


def load_reference_list(path: str | Path | None = None) -> list[ListEntry]:
    """Read the reference list: ``order<TAB>lattice`` lines, ``#`` comments."""
    path = Path(path) if path is not None else _data.data_path("reference_list.tsv")
    entries = []
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ListFormatError(f"cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ListFormatError(f"{path}:{lineno}: expected 2 tab-separated fields")
        try:
            N = parse_order(fields[0])
            config = SingConfig.parse(fields[1])
        except ValueError as exc:
            raise ListFormatError(f"{path}:{lineno}: {exc}") from exc
        entries.append(ListEntry(N, config))
    if not entries:
        raise ListFormatError(f"{path}: no entries")
    if len(set(entries)) != len(entries):
        raise ListFormatError(f"{path}: duplicate entries")
    return entries


@dataclass(frozen=True)
class ListDiff:
    missing: tuple[ListEntry, ...]
    extra: tuple[ListEntry, ...]

    @property
    def empty(self) -> bool:
        return not self.missing and not self.extra

    def lines(self) -> list[str]:
        out = []
        for tag, items in (("missing", self.missing), ("extra", self.extra)):
            for e in items:
                out.append(f"{tag}\t{format_factorization(e.N)}\t{e.config.tex()}")
        return out


def verify_table2(
    entries: Iterable[ListEntry], reference: Iterable[ListEntry] | None = None
) -> ListDiff:
    """Set difference against the bundled transcription (or ``reference``)."""
    ref = set(load_reference_list() if reference is None else reference)
    got = set(entries)
    return ListDiff(
        missing=tuple(sorted(ref - got, key=ListEntry.sort_key)),
        extra=tuple(sorted(got - ref, key=ListEntry.sort_key)),
    )
