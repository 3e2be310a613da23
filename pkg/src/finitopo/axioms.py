"""Space-level properties: regularity and normality variants, separation
axioms, and the clause vectors of the characterization theorems.

Quantifiers are evaluated exactly as stated, with no symmetry shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .core import Space, Subset, Verdict, Witness, closure, witness
from .genop import (
    GVariant,
    Kind,
    ThetaKind,
    g_closed_family,
    g_open_family,
    kind_closure,
    open_family,
    regular_sets,
    theta_closed_family,
    theta_closure_table,
    theta_open_family,
)

ET = ThetaKind.ESTAR_THETA


class RegularityVariant(str, Enum):
    CLASSICAL = "CLASSICAL"
    P = "P"
    S = "S"
    B = "B"
    BETA = "BETA"
    BETA_THETA = "BETA_THETA"
    E = "E"
    ESTAR = "ESTAR"
    ESTAR_THETA = "ESTAR_THETA"
    PAIR_E_THETA = "PAIR_E_THETA"


class NormalityVariant(str, Enum):
    CLASSICAL = "CLASSICAL"
    ESTAR_THETA = "ESTAR_THETA"
    PAIR_STAR = "PAIR_STAR"


REGULARITY_IDS = {
    RegularityVariant.CLASSICAL: "regular.classical",
    RegularityVariant.P: "regular.p",
    RegularityVariant.S: "regular.s",
    RegularityVariant.B: "regular.b",
    RegularityVariant.BETA: "regular.beta",
    RegularityVariant.BETA_THETA: "regular.beta_theta",
    RegularityVariant.E: "regular.e",
    RegularityVariant.ESTAR: "regular.estar",
    RegularityVariant.ESTAR_THETA: "regular.estar_theta",
    RegularityVariant.PAIR_E_THETA: "regular.pair_e_theta",
}

NORMALITY_IDS = {
    NormalityVariant.CLASSICAL: "normal.classical",
    NormalityVariant.ESTAR_THETA: "normal.estar_theta",
    NormalityVariant.PAIR_STAR: "normal.pair_star",
}


@dataclass(frozen=True)
class ClauseVector:
    theorem_id: str
    clauses: tuple[bool, ...]
    witness: Witness | None = None

    @property
    def all_equal(self) -> bool:
        return len(set(self.clauses)) <= 1

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        out = {
            "theorem": self.theorem_id,
            "clauses": list(self.clauses),
            "all_equal": self.all_equal,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json(labels)
        return out


def _vector(theorem_id: str, results: Sequence[tuple[bool, Witness | None]]) -> ClauseVector:
    clauses = tuple(ok for ok, _ in results)
    wit = None
    if len(set(clauses)) > 1:
        # attach the first failing clause's counterexample
        for i, (ok, w) in enumerate(results, start=1):
            if not ok:
                wit = Witness(f"clause {i} fails", w.payload if w else ())
                break
    return ClauseVector(theorem_id, clauses, wit)


def _check(results: Iterable[tuple[bool, Witness | None]]) -> tuple[bool, Witness | None]:
    for ok, w in results:
        if not ok:
            return False, w
    return True, None


# -- shared separation predicates --------------------------------------------


def separated(family: Sequence[Subset], a: Subset, b: Subset) -> bool:
    """Disjoint members U, V of ``family`` with a ⊆ U and b ⊆ V exist."""
    over_a = [u for u in family if a & ~u == 0]
    over_b = [v for v in family if b & ~v == 0]
    return any(u & v == 0 for u in over_a for v in over_b)


def regularity_family(space: Space, variant: RegularityVariant | str) -> tuple[Subset, ...]:
    variant = RegularityVariant(variant)
    if variant in (RegularityVariant.CLASSICAL, RegularityVariant.PAIR_E_THETA):
        return space.opens
    if variant is RegularityVariant.BETA_THETA:
        return theta_open_family(space, ThetaKind.BETA_THETA).members
    if variant is RegularityVariant.ESTAR_THETA:
        return theta_open_family(space, ET).members
    kind = {
        RegularityVariant.P: Kind.PRE,
        RegularityVariant.S: Kind.SEMI,
        RegularityVariant.B: Kind.B,
        RegularityVariant.BETA: Kind.BETA,
        RegularityVariant.E: Kind.E,
        RegularityVariant.ESTAR: Kind.ESTAR,
    }[variant]
    return open_family(space, kind).members


def regularity(space: Space, variant: RegularityVariant | str) -> Verdict:
    """Every closed F and point x outside F are separated by disjoint members
    of the variant's family.  ``PAIR_E_THETA`` separates e*-theta-regular sets
    from points by open sets instead."""
    variant = RegularityVariant(variant)

    def build():
        fam = regularity_family(space, variant)
        if variant is RegularityVariant.PAIR_E_THETA:
            targets = regular_sets(space, ET).members
        else:
            targets = space.closeds
        for f in targets:
            for x in range(space.n):
                if f >> x & 1:
                    continue
                if not separated(fam, f, 1 << x):
                    return Verdict(REGULARITY_IDS[variant], False, witness("closed set and point", F=f, x=x))
        return Verdict(REGULARITY_IDS[variant], True)

    return space.memo(("regularity", variant), build)


def regular_by_neighbourhoods(space: Space) -> Verdict:
    """Classical regularity through shrinking neighbourhoods: each open U
    around x contains cl(V) for some open V around x."""
    for u in space.opens:
        for x in range(space.n):
            if not u >> x & 1:
                continue
            if not any(v >> x & 1 and closure(space, v) & ~u == 0 for v in space.opens):
                return Verdict("regular.nbhd", False, witness("open set and point", U=u, x=x))
    return Verdict("regular.nbhd", True)


def regularity_clauses_thm1(space: Space) -> ClauseVector:
    """Five characterizations of e*-theta-regularity."""
    n, full = space.n, space.full
    to = theta_open_family(space, ET).members
    tcl = theta_closure_table(space)

    def c1():
        v = regularity(space, RegularityVariant.ESTAR_THETA)
        yield v.holds, v.witness

    def c2():
        for u in space.opens:
            for x in range(n):
                if u >> x & 1 and not any(v >> x & 1 and tcl[v] & ~u == 0 for v in to):
                    yield False, witness("point and open set", x=x, U=u)

    def c3():
        for f in space.closeds:
            meet = full
            for v in to:
                if f & ~v == 0:
                    meet &= tcl[v]
            if meet != f:
                yield False, witness("closed set", F=f)

    def c4():
        for a in range(space.size):
            for u in space.opens:
                if a & u and not any(a & v and tcl[v] & ~u == 0 for v in to):
                    yield False, witness("set and open set", A=a, U=u)

    def c5():
        for a in range(1, space.size):
            for f in space.closeds:
                if a & f:
                    continue
                ok = any(
                    a & v and f & ~w == 0 and v & w == 0 for v in to for w in to
                )
                if not ok:
                    yield False, witness("set and closed set", A=a, F=f)

    return _vector("thm1", [_check(c()) for c in (c1, c2, c3, c4, c5)])


def regularity_clauses_thm2(space: Space) -> ClauseVector:
    """Two characterizations of (e*,theta)-regularity."""
    regs = regular_sets(space, ET).members

    def c1():
        v = regularity(space, RegularityVariant.PAIR_E_THETA)
        yield v.holds, v.witness

    def c2():
        for u in regs:
            for x in range(space.n):
                if not u >> x & 1:
                    continue
                if not any(v >> x & 1 and closure(space, v) & ~u == 0 for v in space.opens):
                    yield False, witness("point and e*-theta-regular set", x=x, U=u)

    return _vector("thm2", [_check(c1()), _check(c2())])


def ed_check(space: Space) -> Verdict:
    """The e*-theta-closure of every e*-theta-open set is e*-theta-open."""
    to = theta_open_family(space, ET)
    tcl = theta_closure_table(space)
    for u in to:
        if tcl[u] not in to:
            return Verdict("ed.estar_theta", False, witness("e*-theta-open set", U=u))
    return Verdict("ed.estar_theta", True)


def composite_thm3(space: Space) -> Verdict:
    """e*-theta-regular, (e*,theta)-regular and ED together force regularity."""
    hyps = (
        regularity(space, RegularityVariant.ESTAR_THETA),
        regularity(space, RegularityVariant.PAIR_E_THETA),
        ed_check(space),
    )
    if not all(hyps):
        return Verdict("thm3", True, vacuous=True)
    concl = regularity(space, RegularityVariant.CLASSICAL)
    return Verdict("thm3", concl.holds, concl.witness)


# -- normality ----------------------------------------------------------------


def _normality_sorts(space: Space, variant: NormalityVariant):
    if variant is NormalityVariant.CLASSICAL:
        return space.closeds, space.opens
    to = theta_open_family(space, ET).members
    if variant is NormalityVariant.ESTAR_THETA:
        return space.closeds, to
    return theta_closed_family(space, ET).members, to


def normality(space: Space, variant: NormalityVariant | str) -> Verdict:
    """Disjoint pairs of the variant's closed sort are separated by disjoint
    members of its open sort; ordered pairs are all checked."""
    variant = NormalityVariant(variant)

    def build():
        pid = NORMALITY_IDS[variant]
        closeds, fam = _normality_sorts(space, variant)
        for f1 in closeds:
            for f2 in closeds:
                if f1 & f2 == 0 and not separated(fam, f1, f2):
                    return Verdict(pid, False, witness("disjoint pair", F1=f1, F2=f2))
        return Verdict(pid, True)

    return space.memo(("normality", variant), build)


def _cover_clause(opens_a, opens_b, closed_sort, full):
    # every covering pair U ∪ V = X shrinks to a covering pair A ⊆ U, B ⊆ V
    for u in opens_a:
        for v in opens_b:
            if u | v != full:
                continue
            inside_u = [a for a in closed_sort if a & ~u == 0]
            inside_v = [b for b in closed_sort if b & ~v == 0]
            if not any(a | b == full for a in inside_u for b in inside_v):
                yield False, witness("covering pair", U=u, V=v)


def _sandwich_clause(closeds, opens_g, candidates, tcl):
    # closed F ⊆ open G admits a candidate U with F ⊆ U ⊆ cl_theta(U) ⊆ G
    for f in closeds:
        for g in opens_g:
            if f & ~g:
                continue
            if not any(f & ~u == 0 and u & ~tcl[u] == 0 and tcl[u] & ~g == 0 for u in candidates):
                yield False, witness("closed set inside open set", F=f, G=g)


def _disjoint_clause(closeds, fam):
    for f1 in closeds:
        for f2 in closeds:
            if f1 & f2 == 0 and not separated(fam, f1, f2):
                yield False, witness("disjoint pair", F1=f1, F2=f2)


def normality_clauses(space: Space, theorem_id: str) -> ClauseVector:
    """Clause vectors for the three normality characterization theorems:
    ``THM9`` (3 clauses), ``THM10`` (4) and ``THM00`` (6)."""
    tid = theorem_id.upper()
    full = space.full
    tcl = theta_closure_table(space)
    to = theta_open_family(space, ET).members
    tc = theta_closed_family(space, ET).members

    if tid == "THM9":
        n1 = normality(space, NormalityVariant.ESTAR_THETA)
        results = [
            (n1.holds, n1.witness),
            _check(_cover_clause(space.opens, space.opens, tc, full)),
            _check(_sandwich_clause(space.closeds, space.opens, to, tcl)),
        ]
        return _vector("thm9", results)
    if tid == "THM10":
        gc = g_closed_family(space, GVariant.GE_STAR_THETA).members
        go = g_open_family(space, GVariant.GE_STAR_THETA).members
        n1 = normality(space, NormalityVariant.ESTAR_THETA)
        results = [
            (n1.holds, n1.witness),
            _check(_cover_clause(space.opens, space.opens, gc, full)),
            _check(_sandwich_clause(space.closeds, space.opens, go, tcl)),
            _check(_disjoint_clause(space.closeds, go)),
        ]
        return _vector("thm10", results)
    if tid == "THM00":
        pc = g_closed_family(space, GVariant.PAIR).members
        po = g_open_family(space, GVariant.PAIR).members
        n1 = normality(space, NormalityVariant.PAIR_STAR)
        results = [
            (n1.holds, n1.witness),
            _check(_cover_clause(to, to, tc, full)),
            _check(_sandwich_clause(tc, to, to, tcl)),
            _check(_cover_clause(to, to, pc, full)),
            _check(_sandwich_clause(tc, to, po, tcl)),
            _check(_disjoint_clause(tc, po)),
        ]
        return _vector("thm00", results)
    raise ValueError(f"unknown normality theorem {theorem_id!r}")


def r0_check(space: Space) -> Verdict:
    """Each open set contains the e*-theta-closure of each of its points."""
    tcl = theta_closure_table(space)
    for u in space.opens:
        for x in range(space.n):
            if u >> x & 1 and tcl[1 << x] & ~u:
                return Verdict("r0.estar_theta", False, witness("open set and point", U=u, x=x))
    return Verdict("r0.estar_theta", True)


# -- separation axioms ----------------------------------------------------------

SEPARATION_IDS = (
    "sep.estar_theta_t0",
    "sep.estar_theta_t1",
    "sep.estar_theta_t2",
    "sep.estar_t2",
    "sep.estar_closure_disjoint",
    "sep.estar_regular_disjoint",
    "sep.estar_theta_closure_disjoint",
)


def separation_axioms(space: Space) -> ClauseVector:
    """The seven equivalent separation conditions, each from its own
    definition, over all ordered pairs of distinct points."""

    def build():
        n = space.n
        to = theta_open_family(space, ET).members
        eo = open_family(space, Kind.ESTAR).members
        er = regular_sets(space, Kind.ESTAR).members
        tcl = theta_closure_table(space)
        ecl = {u: kind_closure(space, Kind.ESTAR, u) for u in eo}
        pairs = [(x, y) for x in range(n) for y in range(n) if x != y]

        def has(fam, x, y):
            return any(u >> x & 1 and not u >> y & 1 for u in fam)

        def around(fam, x):
            return [u for u in fam if u >> x & 1]

        def clause(pred):
            for x, y in pairs:
                if not pred(x, y):
                    yield False, witness("pair of points", x=x, y=y)

        c1 = clause(lambda x, y: has(to, x, y) or has(to, y, x))
        c2 = clause(lambda x, y: has(to, x, y) and has(to, y, x))
        c3 = clause(lambda x, y: any(u & v == 0 for u in around(to, x) for v in around(to, y)))
        c4 = clause(lambda x, y: any(u & v == 0 for u in around(eo, x) for v in around(eo, y)))
        c5 = clause(
            lambda x, y: any(ecl[u] & ecl[v] == 0 for u in around(eo, x) for v in around(eo, y))
        )
        c6 = clause(lambda x, y: any(u & v == 0 for u in around(er, x) for v in around(er, y)))
        c7 = clause(
            lambda x, y: any(tcl[u] & tcl[v] == 0 for u in around(to, x) for v in around(to, y))
        )
        return _vector("sep", [_check(c) for c in (c1, c2, c3, c4, c5, c6, c7)])

    return space.memo("separation", build)


# -- properties and expected implications -------------------------------------------


def property_table(space: Space) -> dict[str, bool]:
    """Every space-level property keyed by its stable identifier."""
    props = {REGULARITY_IDS[v]: regularity(space, v).holds for v in RegularityVariant}
    props.update({NORMALITY_IDS[v]: normality(space, v).holds for v in NormalityVariant})
    props["ed.estar_theta"] = ed_check(space).holds
    props["r0.estar_theta"] = r0_check(space).holds
    sep = separation_axioms(space)
    props.update(zip(SEPARATION_IDS[:4], sep.clauses[:4]))
    return props


PROPERTY_IDS = (
    *REGULARITY_IDS.values(),
    *NORMALITY_IDS.values(),
    "ed.estar_theta",
    "r0.estar_theta",
    *SEPARATION_IDS[:4],
)


def check_property(space: Space, property_id: str) -> Verdict:
    """Dispatch a stable property identifier to its decision procedure."""
    for v, pid in REGULARITY_IDS.items():
        if pid == property_id:
            return regularity(space, v)
    for v, pid in NORMALITY_IDS.items():
        if pid == property_id:
            return normality(space, v)
    if property_id == "ed.estar_theta":
        return ed_check(space)
    if property_id == "r0.estar_theta":
        return r0_check(space)
    if property_id in SEPARATION_IDS:
        sep = separation_axioms(space)
        i = SEPARATION_IDS.index(property_id)
        holds = sep.clauses[i]
        wit = None if holds else sep.witness
        return Verdict(property_id, holds, wit)
    if property_id == "regular.nbhd":
        return regular_by_neighbourhoods(space)
    raise KeyError(f"unknown property {property_id!r}")


@dataclass(frozen=True)
class Arrow:
    premises: tuple[str, ...]
    conclusion: str
    anchor: str
    note: str = ""


def implication_expectations() -> list[Arrow]:
    """Implications asserted among the regularity and normality notions."""
    diagram = "generalized-regularity diagram"
    return [
        Arrow(("regular.p",), "regular.e", diagram),
        Arrow(("regular.e",), "regular.estar", diagram),
        Arrow(("regular.estar_theta",), "regular.estar", diagram),
        Arrow(
            ("regular.p",),
            "regular.b",
            diagram,
            "diagonal arrow read as p-regular to b-regular (preopen sets are b-open)",
        ),
        Arrow(("regular.s",), "regular.b", diagram),
        Arrow(("regular.b",), "regular.beta", diagram),
        Arrow(("regular.beta_theta",), "regular.beta", diagram),
        Arrow(("regular.beta",), "regular.estar", diagram),
        Arrow(("regular.beta_theta",), "regular.estar_theta", diagram),
        Arrow(("normal.classical",), "normal.estar_theta", "normal to e*theta-normal"),
        Arrow(("regular.classical",), "regular.estar_theta", "regular to e*theta-regular"),
        Arrow(
            ("regular.pair_e_theta",),
            "regular.estar_theta",
            "(e*,theta)-regular to e*theta-regular",
        ),
        Arrow(
            ("regular.estar_theta", "regular.pair_e_theta", "ed.estar_theta"),
            "regular.classical",
            "composite criterion for regularity",
        ),
        Arrow(
            ("normal.estar_theta", "r0.estar_theta"),
            "regular.estar_theta",
            "normal plus R0 gives e*theta-regular",
        ),
    ]
