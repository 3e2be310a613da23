"""Finite topological spaces and the base operators.

Subsets of an ``n``-point space are plain ``int`` bitmasks: bit ``i`` set means
point ``i`` belongs to the set.  Every operator is a pure function of its
arguments; a :class:`Space` memoizes derived tables in a private write-once
cache so repeated family computations stay cheap.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

MAX_POINTS = 16

Subset = int


class TopologyError(ValueError):
    """Base class for every error raised by this package."""


class MissingEmpty(TopologyError):
    pass


class MissingFull(TopologyError):
    pass


class NotClosedUnderUnion(TopologyError):
    def __init__(self, a: Subset, b: Subset):
        self.pair = (a, b)
        super().__init__(
            f"union of {fmt(a)} and {fmt(b)} is not open"
        )


class NotClosedUnderIntersection(TopologyError):
    def __init__(self, a: Subset, b: Subset):
        self.pair = (a, b)
        super().__init__(
            f"intersection of {fmt(a)} and {fmt(b)} is not open"
        )


class PointOutOfRange(TopologyError):
    pass


class DimensionMismatch(TopologyError):
    pass


class CapExceeded(TopologyError):
    pass


# -- subset helpers ---------------------------------------------------------


def subset(points: Iterable[int]) -> Subset:
    bits = 0
    for p in points:
        bits |= 1 << p
    return bits


def points(bits: Subset) -> list[int]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def fmt(bits: Subset) -> str:
    return "{" + ",".join(str(p) for p in points(bits)) + "}"


def is_subset(a: Subset, b: Subset) -> bool:
    return a & ~b == 0


def full_set(n: int) -> Subset:
    return (1 << n) - 1


def popcount(bits: Subset) -> int:
    return bin(bits).count("1")


# -- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """Structured data justifying a verdict.

    ``payload`` holds ``(label, tag, value)`` triples where ``tag`` is one of
    ``"set"``, ``"point"`` or ``"text"``.
    """

    role: str
    payload: tuple[tuple[str, str, Any], ...] = ()

    def get(self, label: str) -> Any:
        for lab, _, value in self.payload:
            if lab == label:
                return value
        raise KeyError(label)

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        items = []
        for lab, tag, value in self.payload:
            if tag == "set":
                pts: list = points(value)
                if labels is not None:
                    pts = [labels[p] for p in pts]
                items.append({"label": lab, "set": pts})
            elif tag == "point":
                items.append(
                    {"label": lab, "point": labels[value] if labels else value}
                )
            else:
                items.append({"label": lab, tag: value})
        return {"role": self.role, "payload": items}


_POINT_LABELS = frozenset({"x", "y"})
_TEXT_LABELS = frozenset({"space", "map", "case", "theorem"})


def witness(role: str, **items: Any) -> Witness:
    """Build a witness; ``x`` and ``y`` are points, a few labels carry plain
    text, and everything else is a subset."""
    payload = []
    for lab, value in items.items():
        if lab in _POINT_LABELS:
            tag = "point"
        elif lab in _TEXT_LABELS:
            tag = "text"
        else:
            tag = "set"
        payload.append((lab, tag, value))
    return Witness(role, tuple(payload))


@dataclass(frozen=True)
class Verdict:
    property_id: str
    holds: bool
    witness: Witness | None = None
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        out: dict[str, Any] = {"property": self.property_id, "holds": self.holds}
        if self.vacuous:
            out["vacuous"] = True
        if self.witness is not None:
            out["witness"] = self.witness.to_json(labels)
        return out


# -- spaces -----------------------------------------------------------------


@dataclass(frozen=True)
class Space:
    """A validated finite topology on points ``0..n-1``.

    Build through :func:`validate_space`; the raw constructor trusts its
    input.
    """

    n: int
    opens: tuple[Subset, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def full(self) -> Subset:
        return (1 << self.n) - 1

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def closeds(self) -> tuple[Subset, ...]:
        c = self._cache.get("closeds")
        if c is None:
            c = tuple(sorted(self.full ^ u for u in self.opens))
            self._cache["closeds"] = c
        return c

    @property
    def open_set(self) -> frozenset[Subset]:
        c = self._cache.get("open_set")
        if c is None:
            c = self._cache["open_set"] = frozenset(self.opens)
        return c

    @property
    def fingerprint(self) -> str:
        fp = self._cache.get("fingerprint")
        if fp is None:
            text = f"{self.n}:" + ",".join(format(u, "x") for u in self.opens)
            fp = hashlib.sha256(text.encode()).hexdigest()[:16]
            self._cache["fingerprint"] = fp
        return fp

    def memo(self, key: Any, build):
        """Return the cached value for ``key``, computing it once."""
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = build()
            return value

    def check(self, a: Subset) -> Subset:
        if a < 0 or a >> self.n:
            raise DimensionMismatch(
                f"subset {a:#x} does not fit a {self.n}-point space"
            )
        return a

    def complement(self, a: Subset) -> Subset:
        return self.full ^ a

    def is_open(self, a: Subset) -> bool:
        return a in self.open_set

    def is_closed(self, a: Subset) -> bool:
        return (self.full ^ a) in self.open_set

    def to_json(self) -> dict:
        if self.labels is not None:
            opens = [[self.labels[p] for p in points(u)] for u in self.opens]
            return {"n": self.n, "labels": list(self.labels), "opens": opens}
        return {"n": self.n, "opens": [points(u) for u in self.opens]}


def validate_space(
    n: int, opens: Iterable[Subset], labels: Sequence[str] | None = None
) -> Space:
    """Check the topology axioms and return a :class:`Space`.

    Finite spaces only need closure under pairwise unions and intersections.
    """
    if n < 1:
        raise PointOutOfRange(f"a space needs at least one point, got n={n}")
    if n > MAX_POINTS:
        raise CapExceeded(f"n={n} exceeds the {MAX_POINTS}-point cap")
    fam = sorted(set(opens))
    full = (1 << n) - 1
    for u in fam:
        if u < 0 or u >> n:
            raise PointOutOfRange(f"subset {u:#x} has points outside 0..{n - 1}")
    members = set(fam)
    if 0 not in members:
        raise MissingEmpty("the empty set is not open")
    if full not in members:
        raise MissingFull("the whole space is not open")
    for i, a in enumerate(fam):
        for b in fam[i + 1 :]:
            if a | b not in members:
                raise NotClosedUnderUnion(a, b)
            if a & b not in members:
                raise NotClosedUnderIntersection(a, b)
    return Space(n, tuple(fam), tuple(labels) if labels is not None else None)


def space_from_json(data: dict | str) -> Space:
    """Parse the Space JSON form.

    Points are 0-indexed integers, or strings when a ``labels`` list (or
    string points throughout) is given.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if "opens_hex" in data:
        return validate_space(int(data["n"]), (int(h, 16) for h in data["opens_hex"]))
    raw_opens = data["opens"]
    labels = data.get("labels")
    uses_strings = any(isinstance(p, str) for u in raw_opens for p in u)
    if uses_strings and labels is None:
        labels = sorted({p for u in raw_opens for p in u})
    n = int(data["n"]) if "n" in data else len(labels)
    if labels is not None:
        if len(labels) != n:
            raise PointOutOfRange(f"{len(labels)} labels for n={n} points")
        index = {lab: i for i, lab in enumerate(labels)}
        try:
            opens = [
                subset(index[p] if isinstance(p, str) else int(p) for p in u)
                for u in raw_opens
            ]
        except KeyError as exc:
            raise PointOutOfRange(f"unknown point label {exc.args[0]!r}") from None
    else:
        opens = []
        for u in raw_opens:
            for p in u:
                if not 0 <= int(p) < n:
                    raise PointOutOfRange(f"point {p} outside 0..{n - 1}")
            opens.append(subset(int(p) for p in u))
    return validate_space(n, opens, labels)


def hex_opens(space: Space) -> list[str]:
    return [format(u, "x") for u in space.opens]


# -- named spaces -----------------------------------------------------------


def discrete(n: int) -> Space:
    return Space(n, tuple(range(1 << n)))


def indiscrete(n: int) -> Space:
    return Space(n, tuple(sorted({0, (1 << n) - 1})))


def sierpinski() -> Space:
    return validate_space(2, [0, 0b01, 0b11])


def _letters(n: int) -> tuple[str, ...]:
    return tuple("abcdefghijklmnopqrstuvwxyz"[:n])


def example_s1() -> Space:
    """X = {1,2,3,4} with opens {1},{2},{1,2},{1,3,4}, shifted to 0..3."""
    opens = [[], [0], [1], [0, 1], [0, 2, 3], [0, 1, 2, 3]]
    return validate_space(4, (subset(u) for u in opens), ("1", "2", "3", "4"))


def example_s2() -> Space:
    """X = {a,b,c,d} with opens {a},{b},{a,b},{a,b,c}."""
    opens = [[], [0], [1], [0, 1], [0, 1, 2], [0, 1, 2, 3]]
    return validate_space(4, (subset(u) for u in opens), _letters(4))


def example_s3() -> Space:
    """X = {a,b,c,d} with opens {a},{b},{a,b},{a,c},{a,b,c},{a,b,d}."""
    opens = [[], [0], [1], [0, 1], [0, 2], [0, 1, 2], [0, 1, 3], [0, 1, 2, 3]]
    return validate_space(4, (subset(u) for u in opens), _letters(4))


# -- base operators ---------------------------------------------------------


def closure(space: Space, a: Subset) -> Subset:
    """Intersection of all closed supersets of ``a``."""
    space.check(a)
    out = space.full
    for f in space.closeds:
        if a & ~f == 0:
            out &= f
    return out


def interior(space: Space, a: Subset) -> Subset:
    """Union of all open subsets of ``a``."""
    space.check(a)
    out = 0
    for u in space.opens:
        if u & ~a == 0:
            out |= u
    return out


def _table(space: Space, name: str, fn) -> list[Subset]:
    return space.memo(("table", name), lambda: [fn(space, a) for a in range(space.size)])


def cl_table(space: Space) -> list[Subset]:
    return _table(space, "cl", closure)


def int_table(space: Space) -> list[Subset]:
    return _table(space, "int", interior)


def _ro_hulls_by_point(space: Space) -> list[list[Subset]]:
    # for each x, int(cl(U)) over every open U containing x
    def build():
        hulls = {u: interior(space, closure(space, u)) for u in space.opens}
        return [
            [hulls[u] for u in space.opens if u >> x & 1] for x in range(space.n)
        ]

    return space.memo("ro_hulls", build)


def delta_closure(space: Space, a: Subset) -> Subset:
    """Points every open neighbourhood of which has int(cl U) meeting ``a``."""
    space.check(a)
    out = 0
    for x, hulls in enumerate(_ro_hulls_by_point(space)):
        if all(h & a for h in hulls):
            out |= 1 << x
    return out


def delta_interior(space: Space, a: Subset) -> Subset:
    """Points with an open neighbourhood U such that int(cl U) lies in ``a``."""
    space.check(a)
    out = 0
    for x, hulls in enumerate(_ro_hulls_by_point(space)):
        if any(h & ~a == 0 for h in hulls):
            out |= 1 << x
    return out


def cld_table(space: Space) -> list[Subset]:
    return _table(space, "cld", delta_closure)


def intd_table(space: Space) -> list[Subset]:
    return _table(space, "intd", delta_interior)


def regular_open_family(space: Space) -> list[Subset]:
    cl, it = cl_table(space), int_table(space)
    return [a for a in range(space.size) if it[cl[a]] == a]


def regular_closed_family(space: Space) -> list[Subset]:
    cl, it = cl_table(space), int_table(space)
    return [a for a in range(space.size) if cl[it[a]] == a]
