"""Permutation groups on at most 64 points.

Groups are stored as a stabilizer chain built by deterministic, incremental
Schreier-Sims.  Unless a base prefix is given, a new base point is the
smallest point moved by the element that forced the new level.

Composition follows function composition: ``(p * q)(i) == p(q(i))``.
Points are 0-based in memory and 1-based in group files.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .mathieu_char import OrderHistogram, is_tame_order, mu

__all__ = [
    "MAX_DEGREE",
    "DEFAULT_CAP",
    "Permutation",
    "PermGroup",
    "GroupTooLargeError",
    "GroupFileError",
    "WildOrderWarning",
    "build",
    "load_group",
    "dump_group",
]

MAX_DEGREE = 64
DEFAULT_CAP = 10**6


class GroupTooLargeError(ValueError):
    """Element enumeration was asked for a group larger than the cap."""


class GroupFileError(ValueError):
    """A group file is malformed."""


class WildOrderWarning(UserWarning):
    """A group contains elements of order > 8, impossible for tame symplectic actions."""


def _mul(p, q):
    return tuple(map(p.__getitem__, q))


def _inv(p):
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def _is_identity(p):
    return all(i == x for i, x in enumerate(p))


def _perm_order(p) -> int:
    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        n = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        out = out * n // gcd(out, n)
    return out


class Permutation:
    """A bijection of ``{0, ..., degree-1}``."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        n = len(images)
        if n < 1 or n > MAX_DEGREE:
            raise ValueError(f"degree must be in [1, {MAX_DEGREE}], got {n}")
        if sorted(images) != list(range(n)):
            raise ValueError(f"not a bijection on {n} points: {images}")
        self.images = images

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int, one_based: bool = False):
        img = list(range(degree))
        off = 1 if one_based else 0
        for cyc in cycles:
            cyc = [c - off for c in cyc]
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @classmethod
    def from_one_based(cls, images: Iterable[int]) -> "Permutation":
        return cls(i - 1 for i in images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation(_mul(self.images, other.images))

    def __pow__(self, e: int) -> "Permutation":
        base = self.images if e >= 0 else _inv(self.images)
        result = tuple(range(self.degree))
        e = abs(e)
        while e:
            if e & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            e >>= 1
        return Permutation(result)

    def inverse(self) -> "Permutation":
        return Permutation(_inv(self.images))

    def order(self) -> int:
        return _perm_order(self.images)

    def is_identity(self) -> bool:
        return _is_identity(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def one_based(self) -> list[int]:
        return [i + 1 for i in self.images]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles()) or "()"
        return f"Permutation({cyc}, degree={self.degree})"


class _Level:
    __slots__ = ("base", "gens", "trans", "inv")

    def __init__(self, base: int, identity: tuple):
        self.base = base
        self.gens: list[tuple] = []
        self.trans = {base: identity}  # point -> u with u(base) == point
        self.inv = {base: identity}


class _ChainBuilder:
    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.prefix = list(base_prefix)
        self.levels: list[_Level] = []

    def _new_level(self, g) -> _Level:
        i = len(self.levels)
        if i < len(self.prefix):
            b = self.prefix[i]
        else:
            b = next(j for j, x in enumerate(g) if j != x)
        lv = _Level(b, self.identity)
        self.levels.append(lv)
        return lv

    def sift(self, g, start: int = 0):
        for lv in self.levels[start:]:
            ui = lv.inv.get(g[lv.base])
            if ui is None:
                return g
            g = _mul(ui, g)
        return g

    def add(self, g, i: int = 0):
        if _is_identity(self.sift(g, i)):
            return
        lv = self.levels[i] if i < len(self.levels) else self._new_level(g)
        lv.gens.append(g)
        queue = []
        for pt in list(lv.trans):
            self._schreier(i, lv, pt, g, queue)
        while queue:
            pt = queue.pop()
            for s in lv.gens:
                self._schreier(i, lv, pt, s, queue)

    def _schreier(self, i, lv, pt, s, queue):
        cand = _mul(s, lv.trans[pt])
        img = cand[lv.base]
        known = lv.inv.get(img)
        if known is None:
            lv.trans[img] = cand
            lv.inv[img] = _inv(cand)
            queue.append(img)
            return
        h = _mul(known, cand)
        if not _is_identity(h):
            self.add(h, i + 1)


def _check_generators(generators) -> tuple[int | None, list[tuple]]:
    perms = []
    degree = None
    for g in generators:
        if not isinstance(g, Permutation):
            g = Permutation(g)
        if degree is None:
            degree = g.degree
        elif g.degree != degree:
            raise ValueError(f"mixed degrees {degree} and {g.degree}")
        perms.append(g.images)
    return degree, perms


class PermGroup:
    """A permutation group with a verified stabilizer chain.  Immutable."""

    def __init__(
        self,
        generators: Iterable[Permutation | Sequence[int]] = (),
        degree: int | None = None,
        base: Sequence[int] = (),
        name: str | None = None,
    ):
        gdeg, gens = _check_generators(generators)
        if degree is None:
            degree = gdeg if gdeg is not None else 1
        elif gdeg is not None and gdeg != degree:
            raise ValueError(f"generators have degree {gdeg}, expected {degree}")
        if not 1 <= degree <= MAX_DEGREE:
            raise ValueError(f"degree must be in [1, {MAX_DEGREE}], got {degree}")
        if any(not 0 <= b < degree for b in base) or len(set(base)) != len(base):
            raise ValueError(f"bad base prefix {base}")
        builder = _ChainBuilder(degree, base)
        for g in gens:
            builder.add(g)
        self.degree = degree
        self.name = name
        self.generators = tuple(Permutation(g) for g in gens)
        self._levels = tuple(builder.levels)
        self._verify()

    @classmethod
    def _from_levels(cls, degree, levels, name=None) -> "PermGroup":
        obj = cls.__new__(cls)
        obj.degree = degree
        obj.name = name
        obj.generators = tuple(Permutation(g) for g in levels[0].gens) if levels else ()
        obj._levels = tuple(levels)
        return obj

    def _verify(self):
        builder = _ChainBuilder(self.degree)
        builder.levels = list(self._levels)
        for g in self.generators:
            if not _is_identity(builder.sift(g.images)):
                raise AssertionError("generator does not sift through the chain")

    # chain data

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lv.base for lv in self._levels)

    @property
    def orbit_sizes(self) -> tuple[int, ...]:
        """Fundamental orbit sizes along the chain."""
        return tuple(len(lv.trans) for lv in self._levels)

    def strong_generators(self) -> list[Permutation]:
        seen = {}
        for lv in self._levels:
            for g in lv.gens:
                seen.setdefault(g, None)
        return [Permutation(g) for g in seen]

    def order(self) -> int:
        n = 1
        for s in self.orbit_sizes:
            n *= s
        return n

    def __len__(self):
        return self.order()

    def contains(self, p: Permutation | Sequence[int]) -> bool:
        if not isinstance(p, Permutation):
            p = Permutation(p)
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {self.degree}")
        g = p.images
        for lv in self._levels:
            ui = lv.inv.get(g[lv.base])
            if ui is None:
                return False
            g = _mul(ui, g)
        return _is_identity(g)

    __contains__ = contains

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        stack = [point]
        while stack:
            x = stack.pop()
            for g in self.generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return sorted(seen)

    def orbit_partition(self) -> list[list[int]]:
        """Orbits on all points, ordered by smallest element."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i not in seen:
                orb = self.orbit(i)
                seen.update(orb)
                out.append(orb)
        return out

    def stabilizer(self, point: int) -> "PermGroup":
        """Point stabilizer; reuses the chain when ``point`` is the first base point."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        levels = self._levels
        if not levels:
            return self
        if levels[0].base != point:
            rebased = PermGroup(self.strong_generators(), self.degree, base=[point])
            levels = rebased._levels
        rest = [lv for lv in levels[1:]]
        while rest and not rest[0].gens:
            rest.pop(0)
        if not rest:
            return PermGroup(degree=self.degree)
        return PermGroup._from_levels(self.degree, rest)

    def stabilizer_chain(self, points: Iterable[int]) -> list["PermGroup"]:
        """``[G, G_p1, G_p1p2, ...]``"""
        groups = [self]
        for p in points:
            groups.append(groups[-1].stabilizer(p))
        return groups

    def elements(self, cap: int | None = DEFAULT_CAP) -> Iterator[Permutation]:
        for g in self._iter_raw(cap):
            yield Permutation(g)

    def _iter_raw(self, cap):
        if cap is not None and self.order() > cap:
            raise GroupTooLargeError(f"group order {self.order()} exceeds cap {cap}")
        transversals = [list(lv.trans.values()) for lv in self._levels]
        identity = tuple(range(self.degree))

        def walk(depth, prefix):
            if depth == len(transversals):
                yield prefix
                return
            for u in transversals[depth]:
                yield from walk(depth + 1, _mul(prefix, u))

        return walk(0, identity)

    def element_order_histogram(self, cap: int = DEFAULT_CAP) -> OrderHistogram:
        counts: dict[int, int] = {}
        for g in self._iter_raw(cap):
            o = _perm_order(g)
            counts[o] = counts.get(o, 0) + 1
        return OrderHistogram(counts, group_order=self.order())

    def mu(self, cap: int = DEFAULT_CAP, allow_wild: bool = False) -> Fraction:
        """Invariant dimension of the Mathieu character, by full enumeration.

        Warns with :class:`WildOrderWarning` when some element has order > 8,
        unless ``allow_wild`` is set.
        """
        hist = self.element_order_histogram(cap)
        wild = [d for d, _ in hist.items() if not is_tame_order(d)]
        if wild and not allow_wild:
            warnings.warn(
                f"element orders {wild} exceed 8; not a tame symplectic group",
                WildOrderWarning,
                stacklevel=2,
            )
        return mu(hist)

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"PermGroup({label}degree={self.degree}, order={self.order()})"


def build(generators: Iterable[Permutation | Sequence[int]], degree: int | None = None, **kw) -> PermGroup:
    return PermGroup(generators, degree=degree, **kw)


def element_order_histogram(G: PermGroup, cap: int = DEFAULT_CAP) -> OrderHistogram:
    return G.element_order_histogram(cap)


def mu_of_group(G: PermGroup, cap: int = DEFAULT_CAP, allow_wild: bool = False) -> Fraction:
    return G.mu(cap, allow_wild=allow_wild)


@dataclass(frozen=True)
class _GroupFile:
    name: str
    degree: int
    generators: list[Permutation]


def _parse_group_file(text: str, origin: str) -> _GroupFile:
    name = None
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"{origin}:{lineno}"
        if key == "name":
            name = rest
        elif key == "degree":
            try:
                degree = int(rest)
            except ValueError:
                raise GroupFileError(f"{where}: bad degree {rest!r}") from None
        elif key == "gen":
            if degree is None:
                raise GroupFileError(f"{where}: 'gen' before 'degree'")
            try:
                images = [int(t) for t in rest.split()]
                if len(images) != degree:
                    raise ValueError(f"{len(images)} images for degree {degree}")
                gens.append(Permutation.from_one_based(images))
            except ValueError as exc:
                raise GroupFileError(f"{where}: {exc}") from None
        else:
            raise GroupFileError(f"{where}: unknown key {key!r}")
    if degree is None:
        raise GroupFileError(f"{origin}: missing degree")
    return _GroupFile(name or Path(origin).stem, degree, gens)


def load_group(path: str | Path) -> PermGroup:
    """Read a group file.

    Format (``#`` starts a comment)::

        name A6
        degree 6
        gen 2 3 1 4 5 6
        gen 1 2 4 5 6 3
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GroupFileError(f"cannot read {path}: {exc}") from exc
    parsed = _parse_group_file(text, str(path))
    try:
        return PermGroup(parsed.generators, degree=parsed.degree, name=parsed.name)
    except ValueError as exc:
        raise GroupFileError(f"{path}: {exc}") from exc


def dump_group(G: PermGroup, name: str | None = None, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {c}" for c in comment.splitlines()]
    lines.append(f"name {name or G.name or 'G'}")
    lines.append(f"degree {G.degree}")
    for g in G.generators:
        lines.append("gen " + " ".join(map(str, g.one_based())))
    return "\n".join(lines) + "\n"
