"""Linear and affine maps of the 16-point space ``F_2^4``.

Vectors are ints in ``[0, 15]`` with coordinate ``k`` (1-based) stored in bit
``k - 1``.  A matrix is four row bitmasks, row ``r`` bit ``j`` being the entry
in column ``j + 1``; it acts on column vectors.  Worked example: the matrix
``1100/0110/0011/0001`` sends ``c = 0101`` (coordinates 2 and 4, int 10) to
``(c1+c2, c2+c3, c3+c4, c4) = 1111`` (int 15).

The 16-point permutation of an affine map indexes points by their int value,
which makes :func:`to_permutation` an injective homomorphism into
:class:`~k3tk.permgroup.Permutation` (composition ``(f @ g)(v) == f(g(v))``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import _data
from .permgroup import Permutation, PermGroup

__all__ = [
    "F2Mat4",
    "AffineMap4",
    "ConstructionError",
    "parse_vec",
    "format_vec",
    "mat_mul",
    "mat_apply",
    "mat_order",
    "gl4_elements",
    "matrix_group",
    "verify_s4_presentation",
    "linear_orbit_shape",
    "to_permutation",
    "load_constants",
    "build_O48",
    "build_O48_2",
    "s4_shape_census",
    "classify_s4_shapes",
]

DIM = 4
NPOINTS = 1 << DIM


class ConstructionError(RuntimeError):
    """A printed relation failed for the bundled constants."""


def _parity(v: int) -> int:
    return bin(v).count("1") & 1


def parse_vec(text: str) -> int:
    text = text.strip()
    if len(text) != DIM or set(text) - {"0", "1"}:
        raise ValueError(f"expected {DIM} bits, got {text!r}")
    return sum(1 << k for k, ch in enumerate(text) if ch == "1")


def format_vec(v: int) -> str:
    return "".join("1" if v >> k & 1 else "0" for k in range(DIM))


@dataclass(frozen=True)
class F2Mat4:
    rows: tuple[int, int, int, int]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != DIM or any(not 0 <= r < NPOINTS for r in rows):
            raise ValueError(f"bad matrix rows {self.rows}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls) -> "F2Mat4":
        return cls(tuple(1 << k for k in range(DIM)))

    @classmethod
    def parse(cls, text: str) -> "F2Mat4":
        """``"1100/0110/0011/0001"``"""
        parts = text.strip().split("/")
        if len(parts) != DIM:
            raise ValueError(f"expected {DIM} rows in {text!r}")
        return cls(tuple(parse_vec(p) for p in parts))

    def __str__(self):
        return "/".join(format_vec(r) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, F2Mat4):
            return mat_mul(self, other)
        return NotImplemented

    def __call__(self, v: int) -> int:
        return mat_apply(self, v)

    def rank(self) -> int:
        rows = list(self.rows)
        rank = 0
        for col in range(DIM):
            piv = next((i for i in range(rank, DIM) if rows[i] >> col & 1), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for i in range(DIM):
                if i != rank and rows[i] >> col & 1:
                    rows[i] ^= rows[rank]
            rank += 1
        return rank

    def is_invertible(self) -> bool:
        return self.rank() == DIM

    def inverse(self) -> "F2Mat4":
        # Gauss-Jordan on [M | I]
        rows = [r | (1 << (DIM + i)) for i, r in enumerate(self.rows)]
        for col in range(DIM):
            piv = next((i for i in range(col, DIM) if rows[i] >> col & 1), None)
            if piv is None:
                raise ValueError(f"singular matrix {self}")
            rows[col], rows[piv] = rows[piv], rows[col]
            for i in range(DIM):
                if i != col and rows[i] >> col & 1:
                    rows[i] ^= rows[col]
        return F2Mat4(tuple(r >> DIM for r in rows))

    def __pow__(self, e: int) -> "F2Mat4":
        base = self if e >= 0 else self.inverse()
        out = F2Mat4.identity()
        e = abs(e)
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out


def mat_mul(a: F2Mat4, b: F2Mat4) -> F2Mat4:
    out = []
    for r in a.rows:
        acc = 0
        for j in range(DIM):
            if r >> j & 1:
                acc ^= b.rows[j]
        out.append(acc)
    return F2Mat4(tuple(out))


def mat_apply(m: F2Mat4, v: int) -> int:
    return sum(_parity(r & v) << k for k, r in enumerate(m.rows))


_IDENTITY = F2Mat4.identity()


def mat_order(m: F2Mat4) -> int:
    """Least ``e >= 1`` with ``m**e == 1``; raises for singular matrices."""
    if not m.is_invertible():
        raise ValueError(f"{m} is singular")
    p = m
    e = 1
    while p != _IDENTITY:
        p = p @ m
        e += 1
    return e


@lru_cache(maxsize=1)
def gl4_elements() -> tuple[F2Mat4, ...]:
    """All invertible 4x4 matrices, by brute force over the 2^16 candidates."""
    out = []
    for code in range(1 << (DIM * DIM)):
        m = F2Mat4(tuple(code >> (DIM * r) & 0xF for r in range(DIM)))
        if m.is_invertible():
            out.append(m)
    return tuple(out)


def matrix_group(generators: Iterable[F2Mat4], limit: int | None = None) -> set[F2Mat4]:
    """Closure of the generators; stops early once more than ``limit`` elements exist."""
    gens = list(generators)
    seen = {_IDENTITY}
    frontier = [_IDENTITY]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                h = m @ g
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if limit is not None and len(seen) > limit:
                        return seen
        frontier = nxt
    return seen


def verify_s4_presentation(x: F2Mat4, y: F2Mat4) -> bool:
    """``x^4 = y^2 = (xy)^3 = 1`` and ``<x, y>`` has order 24."""
    if not (x.is_invertible() and y.is_invertible()):
        return False
    if x**4 != _IDENTITY or y**2 != _IDENTITY or (x @ y) ** 3 != _IDENTITY:
        return False
    return len(matrix_group([x, y], limit=24)) == 24


def linear_orbit_shape(generators: Sequence[F2Mat4]) -> tuple[int, ...]:
    """Sorted orbit sizes of ``<generators>`` on the 15 nonzero vectors."""
    seen: set[int] = set()
    sizes = []
    for v in range(1, NPOINTS):
        if v in seen:
            continue
        orbit = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for g in generators:
                u = mat_apply(g, w)
                if u not in orbit:
                    orbit.add(u)
                    stack.append(u)
        seen |= orbit
        sizes.append(len(orbit))
    return tuple(sorted(sizes))


@dataclass(frozen=True)
class AffineMap4:
    """``v -> linear(v) + translation``."""

    linear: F2Mat4
    translation: int = 0

    def __post_init__(self):
        if not self.linear.is_invertible():
            raise ValueError(f"linear part {self.linear} is singular")
        if not 0 <= self.translation < NPOINTS:
            raise ValueError(f"bad translation {self.translation}")

    @classmethod
    def translation_by(cls, a: int) -> "AffineMap4":
        return cls(_IDENTITY, a)

    def __call__(self, v: int) -> int:
        return mat_apply(self.linear, v) ^ self.translation

    def __matmul__(self, other: "AffineMap4") -> "AffineMap4":
        # (self @ other)(v) == self(other(v))
        return AffineMap4(self.linear @ other.linear, self(other.translation))

    def __pow__(self, e: int) -> "AffineMap4":
        if e < 0:
            raise ValueError("negative powers not supported")
        out = AffineMap4(_IDENTITY)
        for _ in range(e):
            out = out @ self
        return out

    def is_translation(self) -> bool:
        return self.linear == _IDENTITY


def to_permutation(m: AffineMap4) -> Permutation:
    return Permutation(m(v) for v in range(NPOINTS))


def load_constants(path: str | Path | None = None) -> dict[str, str]:
    """Read ``name = value`` lines (``#`` comments) from the constants file."""
    path = Path(path) if path is not None else _data.data_path("agl4_constants.txt")
    out = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{lineno}: expected 'name = value'")
        out[name.strip()] = value.strip()
    return out


def _case_constants(case: str, constants: Mapping[str, str] | None):
    c = load_constants() if constants is None else constants
    try:
        x = F2Mat4.parse(c[f"{case}_x"])
        y = F2Mat4.parse(c[f"{case}_y"])
        a, b, cc = (parse_vec(c[f"{case}_{k}"]) for k in "abc")
    except KeyError as exc:
        raise ConstructionError(f"missing constant {exc.args[0]}") from None
    except ValueError as exc:
        raise ConstructionError(f"malformed constant for case {case}: {exc}") from None
    for name, m in (("x", x), ("y", y)):
        if not m.is_invertible():
            raise ConstructionError(f"case {case}: matrix {name} = {m} is singular")
    return x, y, a, b, cc, c


def _checked_generators(case: str, constants) -> tuple[AffineMap4, AffineMap4, int, Mapping]:
    x, y, a, b, c, raw = _case_constants(case, constants)
    if not verify_s4_presentation(x, y):
        raise ConstructionError(f"case {case}: x = {x}, y = {y} do not present S4")
    # t_b x = x t_c  <=>  x(c) = b
    if mat_apply(x, c) != b:
        raise ConstructionError(
            f"case {case}: t_b x != x t_c (x(c) = {format_vec(mat_apply(x, c))}, b = {format_vec(b)})"
        )
    f = AffineMap4(x, b)
    g = AffineMap4(y, c)
    f4, g2 = f**4, g**2
    for label, h in (("(t_b x)^4", f4), ("(t_c y)^2", g2)):
        if h != AffineMap4.translation_by(a):
            raise ConstructionError(
                f"case {case}: {label} = [{h.linear} | {format_vec(h.translation)}], "
                f"expected translation by a = {format_vec(a)}"
            )
    return f, g, a, raw


def build_O48(constants: Mapping[str, str] | None = None) -> PermGroup:
    """Binary octahedral group ``<t_b x, t_c y>`` as a group on 16 points."""
    f, g, _, _ = _checked_generators("o48", constants)
    return PermGroup([to_permutation(f), to_permutation(g)], name="O48")


def build_O48_2(constants: Mapping[str, str] | None = None) -> PermGroup:
    """``<t_b x, t_c y, t_a'>`` for the second matrix pair, on 16 points."""
    f, g, _, raw = _checked_generators("o48_2", constants)
    try:
        a2 = parse_vec(raw["o48_2_a2"])
    except (KeyError, ValueError) as exc:
        raise ConstructionError(f"bad constant o48_2_a2: {exc}") from None
    gens = [f, g, AffineMap4.translation_by(a2)]
    return PermGroup([to_permutation(h) for h in gens], name="O48:2")


def _order4_class_representatives() -> list[F2Mat4]:
    gl = gl4_elements()
    inverses = {m: m.inverse() for m in gl}
    remaining = {m for m in gl if m**4 == _IDENTITY and m**2 != _IDENTITY}
    reps = []
    while remaining:
        x = min(remaining, key=lambda m: m.rows)
        reps.append(x)
        remaining -= {g @ x @ inverses[g] for g in gl}
    return reps


def s4_shape_census() -> Counter:
    """Orbit shapes of faithful S4 actions ``<x, y>`` on the nonzero vectors.

    ``x`` runs over conjugacy class representatives of order-4 elements of
    GL_4(2) and ``y`` over all involutions; each accepted pair is counted once.
    Orbit shapes are conjugation invariant, so this sees every shape.
    """
    gl = gl4_elements()
    involutions = [m for m in gl if m != _IDENTITY and m @ m == _IDENTITY]
    census: Counter = Counter()
    for x in _order4_class_representatives():
        for y in involutions:
            if (x @ y) ** 3 != _IDENTITY:
                continue
            if len(matrix_group([x, y], limit=24)) != 24:
                continue
            census[linear_orbit_shape([x, y])] += 1
    return census


def classify_s4_shapes() -> frozenset[tuple[int, ...]]:
    return frozenset(s4_shape_census())
