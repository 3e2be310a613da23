"""Generalized open sets, their closures, and the theta operators.

Every family here is computed by sweeping all ``2**n`` subsets against the
defining inclusion, so results are exact for the small spaces this package
targets.  Families are memoized on the :class:`~finitopo.core.Space`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .core import (
    Space,
    Subset,
    Verdict,
    cl_table,
    cld_table,
    int_table,
    intd_table,
    points,
    witness,
)


class Kind(str, Enum):
    OPEN = "OPEN"
    SEMI = "SEMI"
    PRE = "PRE"
    B = "B"
    BETA = "BETA"
    E = "E"
    ESTAR = "ESTAR"
    DELTA_OPEN = "DELTA_OPEN"
    REGULAR_OPEN = "REGULAR_OPEN"


class ThetaKind(str, Enum):
    ESTAR_THETA = "ESTAR_THETA"
    BETA_THETA = "BETA_THETA"


class GVariant(str, Enum):
    GE_STAR_THETA = "GE_STAR_THETA"
    PAIR = "PAIR"


# kinds whose open family is closed under arbitrary unions, so that the
# matching kind-closure is itself kind-closed
UNION_CLOSED = frozenset(
    {Kind.OPEN, Kind.SEMI, Kind.PRE, Kind.B, Kind.BETA, Kind.E, Kind.ESTAR, Kind.DELTA_OPEN}
)

THETA_BASE = {ThetaKind.ESTAR_THETA: Kind.ESTAR, ThetaKind.BETA_THETA: Kind.BETA}


@dataclass(frozen=True)
class SetFamily:
    space_fingerprint: str
    kind: str
    members: tuple[Subset, ...]

    def __contains__(self, a: object) -> bool:
        return a in self.member_set

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset[Subset]:
        # frozen dataclass: stash the lookup set without tripping __setattr__
        try:
            return self.__dict__["_set"]
        except KeyError:
            s = frozenset(self.members)
            object.__setattr__(self, "_set", s)
            return s

    def complements(self, n: int, kind: str) -> "SetFamily":
        full = (1 << n) - 1
        return SetFamily(self.space_fingerprint, kind, tuple(sorted(full ^ a for a in self.members)))

    def to_json(self, labels=None) -> dict:
        def show(a):
            pts = points(a)
            return [labels[p] for p in pts] if labels else pts

        return {
            "space": self.space_fingerprint,
            "kind": self.kind,
            "members": [show(a) for a in self.members],
        }


def _family(space: Space, kind: str, members) -> SetFamily:
    return SetFamily(space.fingerprint, kind, tuple(sorted(members)))


def _kind_predicate(space: Space, kind: Kind):
    cl, it = cl_table(space), int_table(space)
    if kind is Kind.SEMI:
        return lambda a: a & ~cl[it[a]] == 0
    if kind is Kind.PRE:
        return lambda a: a & ~it[cl[a]] == 0
    if kind is Kind.B:
        return lambda a: a & ~(cl[it[a]] | it[cl[a]]) == 0
    if kind is Kind.BETA:
        return lambda a: a & ~cl[it[cl[a]]] == 0
    cld, intd = cld_table(space), intd_table(space)
    if kind is Kind.E:
        return lambda a: a & ~(cl[intd[a]] | it[cld[a]]) == 0
    if kind is Kind.ESTAR:
        return lambda a: a & ~cl[it[cld[a]]] == 0
    if kind is Kind.DELTA_OPEN:
        full = space.full
        return lambda a: cld[full ^ a] == full ^ a
    if kind is Kind.REGULAR_OPEN:
        return lambda a: it[cl[a]] == a
    raise ValueError(f"unknown kind {kind!r}")


def open_family(space: Space, kind: Kind | str) -> SetFamily:
    """All subsets satisfying the defining inclusion of ``kind``."""
    kind = Kind(kind)

    def build():
        if kind is Kind.OPEN:
            return _family(space, kind.value, space.opens)
        pred = _kind_predicate(space, kind)
        return _family(space, kind.value, (a for a in range(space.size) if pred(a)))

    return space.memo(("family", kind), build)


def closed_family(space: Space, kind: Kind | str) -> SetFamily:
    kind = Kind(kind)
    return space.memo(
        ("closed-family", kind),
        lambda: open_family(space, kind).complements(space.n, kind.value + "_CLOSED"),
    )


def kind_closure(space: Space, kind: Kind | str, a: Subset) -> Subset:
    """Intersection of all ``kind``-closed supersets of ``a``."""
    kind = Kind(kind)
    space.check(a)
    closeds = closed_family(space, kind)
    out = space.full
    for f in closeds:
        if a & ~f == 0:
            out &= f
    if kind in UNION_CLOSED and out not in closeds:
        raise AssertionError(
            f"{kind.value}-closed sets of {space.fingerprint} are not closed under intersection"
        )
    return out


def kind_interior(space: Space, kind: Kind | str, a: Subset) -> Subset:
    """Union of all ``kind``-open subsets of ``a``."""
    space.check(a)
    out = 0
    for u in open_family(space, kind):
        if u & ~a == 0:
            out |= u
    return out


def _theta_base(space: Space, tk: ThetaKind) -> list[list[Subset]]:
    """For each point x, the kind-closures of base-open sets containing x."""
    base = THETA_BASE[tk]

    def build():
        pairs = [(u, kind_closure(space, base, u)) for u in open_family(space, base)]
        return [[c for u, c in pairs if u >> x & 1] for x in range(space.n)]

    return space.memo(("theta-base", tk), build)


def theta_closure(space: Space, tk: ThetaKind | str, a: Subset) -> Subset:
    """Theta-cluster points of ``a``: every base-open U around x has a
    kind-closure meeting ``a``.  Evaluated pointwise, never iterated."""
    tk = ThetaKind(tk)
    space.check(a)
    out = 0
    for x, closures in enumerate(_theta_base(space, tk)):
        if all(c & a for c in closures):
            out |= 1 << x
    return out


def theta_interior(space: Space, tk: ThetaKind | str, a: Subset) -> Subset:
    """Points x with a base-open U around x whose kind-closure lies in ``a``."""
    tk = ThetaKind(tk)
    space.check(a)
    out = 0
    for x, closures in enumerate(_theta_base(space, tk)):
        if any(c & ~a == 0 for c in closures):
            out |= 1 << x
    return out


def theta_closure_table(space: Space, tk: ThetaKind | str = ThetaKind.ESTAR_THETA) -> list[Subset]:
    tk = ThetaKind(tk)
    return space.memo(
        ("theta-cl-table", tk), lambda: [theta_closure(space, tk, a) for a in range(space.size)]
    )


def theta_interior_table(space: Space, tk: ThetaKind | str = ThetaKind.ESTAR_THETA) -> list[Subset]:
    tk = ThetaKind(tk)
    return space.memo(
        ("theta-int-table", tk), lambda: [theta_interior(space, tk, a) for a in range(space.size)]
    )


def theta_open_family(space: Space, tk: ThetaKind | str) -> SetFamily:
    """Complements of the theta-closed sets (those equal to their closure)."""
    tk = ThetaKind(tk)

    def build():
        tcl, full = theta_closure_table(space, tk), space.full
        return _family(space, tk.value, (u for u in range(space.size) if tcl[full ^ u] == full ^ u))

    return space.memo(("family", tk), build)


def theta_open_family_by_interior(space: Space, tk: ThetaKind | str) -> SetFamily:
    """Same family via the fixed points of the theta-interior."""
    tk = ThetaKind(tk)
    tint = theta_interior_table(space, tk)
    return _family(space, tk.value, (u for u in range(space.size) if tint[u] == u))


def theta_closed_family(space: Space, tk: ThetaKind | str) -> SetFamily:
    tk = ThetaKind(tk)
    return space.memo(
        ("closed-family", tk),
        lambda: theta_open_family(space, tk).complements(space.n, tk.value + "_CLOSED"),
    )


def regular_sets(space: Space, which: ThetaKind | Kind | str) -> SetFamily:
    """Sets that are simultaneously open and closed for ``which``."""
    try:
        which = ThetaKind(which)
        opens, closeds = theta_open_family(space, which), theta_closed_family(space, which)
    except ValueError:
        which = Kind(which)
        opens, closeds = open_family(space, which), closed_family(space, which)
    return space.memo(
        ("regular-sets", which),
        lambda: _family(space, which.value + "_REGULAR", (a for a in opens if a in closeds)),
    )


# -- generalized closed sets ------------------------------------------------


def _enclosing(space: Space, variant: GVariant) -> tuple[Subset, ...]:
    if variant is GVariant.GE_STAR_THETA:
        return space.opens
    return theta_open_family(space, ThetaKind.ESTAR_THETA).members


def g_closed_family(space: Space, variant: GVariant | str) -> SetFamily:
    """Sets whose e*-theta-closure stays inside every enclosing set of the
    variant's sort (open sets, or e*-theta-open sets for ``PAIR``)."""
    variant = GVariant(variant)

    def build():
        tcl = theta_closure_table(space)
        enclosing = _enclosing(space, variant)
        members = []
        for a in range(space.size):
            c = tcl[a]
            if all(c & ~u == 0 for u in enclosing if a & ~u == 0):
                members.append(a)
        return _family(space, variant.value + "_CLOSED", members)

    return space.memo(("g-closed", variant), build)


def g_open_family(space: Space, variant: GVariant | str) -> SetFamily:
    variant = GVariant(variant)
    return space.memo(
        ("g-open", variant),
        lambda: g_closed_family(space, variant).complements(space.n, variant.value + "_OPEN"),
    )


def g_open_check(space: Space, variant: GVariant | str, a: Subset) -> Verdict:
    """Decide g-openness of ``a`` by the closed-subset characterization:
    every closed F inside ``a`` (e*-theta-closed F for ``PAIR``) lies in
    the e*-theta-interior of ``a``."""
    variant = GVariant(variant)
    space.check(a)
    if variant is GVariant.GE_STAR_THETA:
        fs = space.closeds
        pid = "gopen.ge_star_theta"
    else:
        fs = theta_closed_family(space, ThetaKind.ESTAR_THETA).members
        pid = "gopen.pair"
    inner = theta_interior(space, ThetaKind.ESTAR_THETA, a)
    for f in fs:
        if f & ~a == 0 and f & ~inner:
            return Verdict(pid, False, witness("closed set inside A", A=a, F=f))
    return Verdict(pid, True)


# -- the basic e*-theta-closure lemma ---------------------------------------

LEMMA1_CLAUSES = tuple(range(1, 11))


def lemma1_failures(space: Space, a: Subset, b: Subset) -> list[int]:
    """Clause numbers of the e*-theta-closure lemma that fail at (a, b).

    Set-level clauses use ``a`` (and ``b`` for the monotonicity and the
    pairwise union/intersection clauses); the intersection formula and
    family-wide folds are evaluated for the whole space.
    """
    tk = ThetaKind.ESTAR_THETA
    full = space.full
    tcl = theta_closure_table(space, tk)
    tint = theta_interior_table(space, tk)
    estar = open_family(space, Kind.ESTAR)
    tc = theta_closed_family(space, tk)
    to = theta_open_family(space, tk)
    ecl = kind_closure(space, Kind.ESTAR, a)
    bad = []
    if not (a & ~ecl == 0 and ecl & ~tcl[a] == 0):
        bad.append(1)
    if a in estar and tcl[a] != ecl:
        bad.append(2)
    if a & ~b == 0 and tcl[a] & ~tcl[b]:
        bad.append(3)
    if tcl[a] not in tc or tcl[tcl[a]] != tcl[a]:
        bad.append(4)
    if a in tc and tcl[a] != a:
        bad.append(5)
    if a in tc and not (full ^ a in to and tint[full ^ a] == full ^ a):
        bad.append(6)
    if a in tc and b in tc and (a & b) not in tc:
        bad.append(7)
    if a in to and b in to and (a | b) not in to:
        bad.append(8)
    meet = full
    for u in tc:
        if a & ~u == 0:
            meet &= u
    if meet != tcl[a]:
        bad.append(9)
    if tcl[full ^ a] != full ^ tint[a] or tint[full ^ a] != full ^ tcl[a]:
        bad.append(10)
    return bad


def lemma1_family_folds(space: Space) -> list[int]:
    """Clauses 7 and 8 over whole families: the meet of every e*-theta-closed
    set and the union of every e*-theta-open set, folded over all prefixes."""
    tk = ThetaKind.ESTAR_THETA
    tc, to = theta_closed_family(space, tk), theta_open_family(space, tk)
    bad = []
    acc = space.full
    for f in tc:
        acc &= f
        if acc not in tc:
            bad.append(7)
            break
    acc = 0
    for u in to:
        acc |= u
        if acc not in to:
            bad.append(8)
            break
    return bad
