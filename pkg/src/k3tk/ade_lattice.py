"""ADE root lattices and their discriminant groups.

Gram matrices are negative definite (``-2`` on the diagonal, ``+1`` between
adjacent Dynkin nodes).  Node numbering:

- ``A_n``: the path ``1 - 2 - ... - n``
- ``D_n``: the path ``1 - ... - (n-2)``, nodes ``n-1`` and ``n`` both on ``n-2``
- ``E_n``: the path ``1 - ... - (n-1)``, node ``n`` on node ``3``

Discriminant groups are read off the Smith normal form of the Gram matrix.
The twelve stabilizer types are also kept as compiled-in catalog data
(:data:`STABILIZERS`); the test suite checks the two against each other.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import isqrt
from operator import mul
from typing import Iterable, Sequence

__all__ = [
    "AdeType",
    "AbelianInvariants",
    "StabilizerRecord",
    "STABILIZERS",
    "ALPHABET",
    "parse_ade",
    "parse_ade_list",
    "gram_matrix",
    "block_gram_matrix",
    "smith_normal_form",
    "discriminant_group",
    "disc_order",
    "is_square",
    "is_prime",
    "factorize",
    "format_factorization",
    "l_part_generator_count",
    "stabilizer_record",
]

_MIN_RANK = {"A": 1, "D": 4, "E": 6}


@dataclass(frozen=True, order=True)
class AdeType:
    """A root lattice type such as ``A_2``, ``D_4`` or ``E_7``.

    Instances sort by family (A < D < E) and then by rank.
    """

    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _MIN_RANK:
            raise ValueError(f"unknown ADE family {self.family!r}")
        if isinstance(self.rank, bool) or not isinstance(self.rank, int):
            raise TypeError("rank must be an int")
        if self.rank < _MIN_RANK[self.family]:
            raise ValueError(f"{self.family}_{self.rank} is not a valid root lattice type")
        if self.family == "E" and self.rank > 8:
            raise ValueError(f"E_{self.rank} is not a valid root lattice type")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def tex(self) -> str:
        """Concatenation-friendly form, e.g. ``A_2`` or ``A_10``."""
        return f"{self.family}_{self.rank}"


_TOKEN_RE = re.compile(r"([ADE])_?\{?(\d+)\}?")


def parse_ade(token: str) -> AdeType:
    """Parse ``"A2"``, ``"A_2"`` or ``"A_{10}"``."""
    m = _TOKEN_RE.fullmatch(token.strip())
    if not m:
        raise ValueError(f"cannot parse root lattice type {token!r}")
    return AdeType(m.group(1), int(m.group(2)))


def parse_ade_list(text: str) -> tuple[AdeType, ...]:
    """Parse a comma-separated (``"A2,D4"``) or concatenated (``"A_2D_4"``) list."""
    text = text.strip()
    if not text:
        return ()
    if "," in text or " " in text:
        tokens = re.split(r"\s*,\s*|\s+", text)
        if "" in tokens:
            raise ValueError(f"empty entry in root lattice list {text!r}")
        return tuple(parse_ade(t) for t in tokens)
    pos = 0
    out = []
    pattern = re.compile(r"([ADE])(?:_\{(\d+)\}|_(\d+)|(\d+))")
    while pos < len(text):
        m = pattern.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse root lattice list {text!r} at position {pos}")
        digits = next(g for g in m.groups()[1:] if g is not None)
        out.append(AdeType(m.group(1), int(digits)))
        pos = m.end()
    return tuple(out)


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors ``d1 | d2 | ... | dm`` of a finite abelian group."""

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        factors = tuple(int(f) for f in self.factors)
        object.__setattr__(self, "factors", factors)
        for f in factors:
            if f < 2:
                raise ValueError(f"invariant factors must be >= 2, got {factors}")
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise ValueError(f"invariant factors {factors} violate divisibility")

    @property
    def order(self) -> int:
        return reduce(mul, self.factors, 1)

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for f in sorted(set(self.factors)):
            n = self.factors.count(f)
            parts.append(f"C{f}" + (f"^{n}" if n > 1 else ""))
        return "x".join(parts)


@dataclass(frozen=True)
class StabilizerRecord:
    """One stabilizer type: group, order ``o_x``, components ``c_x``, discriminant."""

    ade: AdeType
    group_name: str
    o_x: int
    c_x: int
    disc_invariants: AbelianInvariants
    d_x: int

    def __post_init__(self):
        if self.c_x != self.ade.rank:
            raise ValueError(f"{self.group_name}: c_x {self.c_x} != rank of {self.ade}")
        if self.d_x != self.disc_invariants.order:
            raise ValueError(f"{self.group_name}: d_x {self.d_x} != |{self.disc_invariants}|")

    def as_record(self) -> dict:
        return {
            "type": str(self.ade),
            "group": self.group_name,
            "o_x": self.o_x,
            "c_x": self.c_x,
            "D_x": list(self.disc_invariants.factors),
            "d_x": self.d_x,
        }


def _rec(tok, name, o, c, factors):
    inv = AbelianInvariants(tuple(factors))
    return StabilizerRecord(parse_ade(tok), name, o, c, inv, inv.order)


#: The twelve possible stabilizer groups of a tame symplectic action.
STABILIZERS: tuple[StabilizerRecord, ...] = (
    _rec("A1", "C2", 2, 1, [2]),
    _rec("A2", "C3", 3, 2, [3]),
    _rec("A3", "C4", 4, 3, [4]),
    _rec("A4", "C5", 5, 4, [5]),
    _rec("A5", "C6", 6, 5, [6]),
    _rec("A6", "C7", 7, 6, [7]),
    _rec("A7", "C8", 8, 7, [8]),
    _rec("D4", "Q8", 8, 4, [2, 2]),
    _rec("D5", "Q12", 12, 5, [4]),
    _rec("D6", "Q16", 16, 6, [2, 2]),
    _rec("E6", "T24", 24, 6, [3]),
    _rec("E7", "O48", 48, 7, [2]),
)

_BY_TYPE = {r.ade: r for r in STABILIZERS}

#: The twelve stabilizer lattice types in canonical order.
ALPHABET: tuple[AdeType, ...] = tuple(sorted(_BY_TYPE))


def stabilizer_record(t: AdeType) -> StabilizerRecord:
    try:
        return _BY_TYPE[t]
    except KeyError:
        raise KeyError(f"{t} is not a stabilizer type") from None


def _edges(t: AdeType) -> list[tuple[int, int]]:
    # 0-based node indices
    n = t.rank
    if t.family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if t.family == "D":
        return [(i, i + 1) for i in range(n - 3)] + [(n - 3, n - 2), (n - 3, n - 1)]
    return [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]


def gram_matrix(t: AdeType) -> list[list[int]]:
    """Negative definite Gram matrix of the root lattice ``t``."""
    n = t.rank
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = -2
    for i, j in _edges(t):
        g[i][j] = g[j][i] = 1
    return g


def block_gram_matrix(types: Iterable[AdeType]) -> list[list[int]]:
    """Gram matrix of the orthogonal sum, blocks in the given order."""
    blocks = [gram_matrix(t) for t in types]
    n = sum(len(b) for b in blocks)
    g = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            g[off + i][off : off + len(row)] = row
        off += len(b)
    return g


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Smith normal form over the integers.

    Returns ``(L, S, R)`` with ``M == L @ S @ R``, ``L`` and ``R`` unimodular,
    ``S`` diagonal with non-negative entries ``s1 | s2 | ...``.  Works on any
    rectangular matrix; all arithmetic is on Python ints.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    if any(len(row) != n for row in A):
        raise ValueError("ragged matrix")
    # invariant: M == L * A * R
    L = _identity(m)
    R = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        for row in L:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        R[i], R[j] = R[j], R[i]

    def add_row(dst, src, k):
        # A[dst] += k * A[src]
        if k == 0:
            return
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        for row in L:
            row[src] -= k * row[dst]

    def add_col(dst, src, k):
        # A[:, dst] += k * A[:, src]
        if k == 0:
            return
        for row in A:
            row[dst] += k * row[src]
        R[src] = [a - k * b for a, b in zip(R[src], R[dst])]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        for row in L:
            row[i] = -row[i]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return L, A, R
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                add_row(i, t, -(A[i][t] // p))
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                add_col(j, t, -(A[t][j] // p))
                dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            negate_row(t)
    return L, A, R


@lru_cache(maxsize=None)
def discriminant_group(t: AdeType) -> AbelianInvariants:
    """Invariant factors of ``L*/L``, computed from the Smith normal form."""
    _, S, _ = smith_normal_form(gram_matrix(t))
    diag = [S[i][i] for i in range(t.rank)]
    if 0 in diag:
        raise ArithmeticError(f"Gram matrix of {t} is degenerate")
    return AbelianInvariants(tuple(d for d in diag if d > 1))


def disc_order(types: Iterable[AdeType]) -> int:
    """Order of the discriminant group of the orthogonal sum."""
    types = list(types)
    if not types:
        raise ValueError("empty multiset of root lattices")
    return reduce(mul, (discriminant_group(t).order for t in types), 1)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, isqrt(n) + 1))


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def format_factorization(n: int) -> str:
    """``20160 -> "2^6.3^2.5.7"``; ``1 -> "1"``."""
    f = factorize(n)
    if not f:
        return "1"
    return ".".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(f.items()))


def l_part_generator_count(types: Iterable[AdeType], l: int) -> int:
    """Minimal number of generators of the ``l``-primary discriminant part."""
    if not is_prime(l):
        raise ValueError(f"{l} is not prime")
    return sum(1 for t in types for d in discriminant_group(t).factors if d % l == 0)
