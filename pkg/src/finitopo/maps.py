"""Maps between finite spaces: classification and preservation theorems."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .axioms import (
    ClauseVector,
    NormalityVariant,
    RegularityVariant,
    _vector,
    normality,
    regularity,
)
from .core import Space, Subset, TopologyError, Verdict, Witness, witness
from .genop import (
    GVariant,
    Kind,
    ThetaKind,
    g_closed_family,
    g_open_family,
    kind_closure,
    open_family,
    theta_closed_family,
    theta_closure_table,
    theta_open_family,
)

ET = ThetaKind.ESTAR_THETA
EXHAUSTIVE_MAPS = 1 << 20


class FingerprintMismatch(TopologyError):
    pass


class UnknownTheorem(TopologyError):
    pass


@dataclass(frozen=True)
class SpaceMap:
    dom: Space
    cod: Space
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.dom.n:
            raise TopologyError(
                f"image has {len(self.image)} entries for a {self.dom.n}-point domain"
            )
        for y in self.image:
            if not 0 <= y < self.cod.n:
                raise TopologyError(f"image point {y} outside 0..{self.cod.n - 1}")

    def __call__(self, a: Subset) -> Subset:
        """Direct image of a subset."""
        out = 0
        for x, y in enumerate(self.image):
            if a >> x & 1:
                out |= 1 << y
        return out

    def preimage(self, b: Subset) -> Subset:
        out = 0
        for x, y in enumerate(self.image):
            if b >> y & 1:
                out |= 1 << x
        return out

    @property
    def injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    @property
    def surjective(self) -> bool:
        return len(set(self.image)) == self.cod.n

    def compose(self, g: "SpaceMap") -> "SpaceMap":
        """``g`` after ``self``."""
        return SpaceMap(self.dom, g.cod, tuple(g.image[y] for y in self.image))

    def to_json(self) -> dict:
        return {"dom": self.dom.fingerprint, "cod": self.cod.fingerprint, "image": list(self.image)}


def map_from_json(data: Mapping, spaces: Mapping[str, Space]) -> SpaceMap:
    """Resolve the fingerprints in a map record against loaded spaces."""
    try:
        dom, cod = spaces[data["dom"]], spaces[data["cod"]]
    except KeyError as exc:
        raise FingerprintMismatch(f"space {exc.args[0]} is not loaded") from None
    return SpaceMap(dom, cod, tuple(int(y) for y in data["image"]))


def identity(space: Space) -> SpaceMap:
    return SpaceMap(space, space, tuple(range(space.n)))


def all_maps(dom: Space, cod: Space) -> Iterator[SpaceMap]:
    for image in itertools.product(range(cod.n), repeat=dom.n):
        yield SpaceMap(dom, cod, image)


def maps_between(dom: Space, cod: Space, seed: int = 0, samples: int = 4096) -> Iterator[SpaceMap]:
    """Every map when there are at most 2**20 of them, else seeded samples."""
    if cod.n**dom.n <= EXHAUSTIVE_MAPS:
        yield from all_maps(dom, cod)
        return
    rng = random.Random(seed)
    for _ in range(samples):
        yield SpaceMap(dom, cod, tuple(rng.randrange(cod.n) for _ in range(dom.n)))


# -- classification -----------------------------------------------------------


def _images_in(f: SpaceMap, sources, targets) -> bool:
    return all(f(a) in targets for a in sources)


def _preimages_in(f: SpaceMap, sources, targets) -> bool:
    return all(f.preimage(b) in targets for b in sources)


def _strongly_irresolute_pointwise(f: SpaceMap) -> bool:
    x_open = open_family(f.dom, Kind.ESTAR).members
    y_open = open_family(f.cod, Kind.ESTAR).members
    ecl = {u: kind_closure(f.dom, Kind.ESTAR, u) for u in x_open}
    for x in range(f.dom.n):
        fx = f.image[x]
        around = [u for u in x_open if u >> x & 1]
        for v in y_open:
            if v >> fx & 1 and not any(f(ecl[u]) & ~v == 0 for u in around):
                return False
    return True


def _almost_irresolute(f: SpaceMap, exact: bool) -> bool:
    xcl, ycl = theta_closure_table(f.dom), theta_closure_table(f.cod)
    for u in theta_open_family(f.dom, ET):
        lhs, rhs = f(xcl[u]), ycl[f(u)]
        if (lhs != rhs) if exact else (lhs & ~rhs):
            return False
    return True


FLAG_NAMES = (
    "continuous",
    "closed",
    "open",
    "injective",
    "surjective",
    "estar_theta_continuous",
    "strongly_estar_irresolute_pointwise",
    "strongly_estar_irresolute_preimage",
    "estar_theta_closed",
    "estar_theta_open",
    "pre_estar_theta_closed",
    "pre_estar_theta_open",
    "ge_closed",
    "ge_open",
    "pre_ge_closed",
    "pre_ge_open",
    "pair_star_closed",
    "almost_estar_theta_irresolute",
    "almost_estar_theta_irresolute_inclusion",
)


def classify_map(f: SpaceMap) -> dict[str, bool]:
    """Every map-class flag, each straight from its definition."""
    X, Y = f.dom, f.cod
    x_to, x_tc = theta_open_family(X, ET), theta_closed_family(X, ET)
    y_to, y_tc = theta_open_family(Y, ET), theta_closed_family(Y, ET)
    x_gc, x_go = g_closed_family(X, GVariant.GE_STAR_THETA), g_open_family(X, GVariant.GE_STAR_THETA)
    y_gc, y_go = g_closed_family(Y, GVariant.GE_STAR_THETA), g_open_family(Y, GVariant.GE_STAR_THETA)
    y_pc = g_closed_family(Y, GVariant.PAIR)
    flags = {
        "continuous": _preimages_in(f, Y.opens, X.open_set),
        "closed": _images_in(f, X.closeds, set(Y.closeds)),
        "open": _images_in(f, X.opens, Y.open_set),
        "injective": f.injective,
        "surjective": f.surjective,
        "estar_theta_continuous": _preimages_in(f, Y.closeds, x_tc),
        "strongly_estar_irresolute_pointwise": _strongly_irresolute_pointwise(f),
        "strongly_estar_irresolute_preimage": _preimages_in(f, y_to, x_to),
        "estar_theta_closed": _images_in(f, X.closeds, y_tc),
        "estar_theta_open": _images_in(f, X.opens, y_to),
        "pre_estar_theta_closed": _images_in(f, x_tc, y_tc),
        "pre_estar_theta_open": _images_in(f, x_to, y_to),
        "ge_closed": _images_in(f, X.closeds, y_gc),
        "ge_open": _images_in(f, X.opens, y_go),
        "pre_ge_closed": _images_in(f, x_gc, y_gc),
        "pre_ge_open": _images_in(f, x_go, y_go),
        "pair_star_closed": _images_in(f, x_tc, y_pc),
        "almost_estar_theta_irresolute": _almost_irresolute(f, exact=True),
        "almost_estar_theta_irresolute_inclusion": _almost_irresolute(f, exact=False),
    }
    return flags


# -- closed-function lemmas -----------------------------------------------------

LEMMAS = ("L_CLOSED", "L_PRECLOSED", "L_G", "L_PRE_G", "L_PAIR")


def _lemma_parts(f: SpaceMap, lemma_id: str):
    X, Y = f.dom, f.cod
    if lemma_id == "L_CLOSED":
        return "estar_theta_closed", X.opens, theta_open_family(Y, ET).members
    if lemma_id == "L_PRECLOSED":
        return "pre_estar_theta_closed", theta_open_family(X, ET).members, theta_open_family(Y, ET).members
    if lemma_id == "L_G":
        return "ge_closed", X.opens, g_open_family(Y, GVariant.GE_STAR_THETA).members
    if lemma_id == "L_PRE_G":
        return (
            "pre_ge_closed",
            g_open_family(X, GVariant.GE_STAR_THETA).members,
            g_open_family(Y, GVariant.GE_STAR_THETA).members,
        )
    if lemma_id == "L_PAIR":
        return "pair_star_closed", theta_open_family(X, ET).members, g_open_family(Y, GVariant.PAIR).members
    raise UnknownTheorem(f"unknown lemma {lemma_id!r}")


def lemma_equivalence(f: SpaceMap, lemma_id: str, flags: Mapping[str, bool] | None = None) -> ClauseVector:
    """The closed-function definition next to its B/U characterization: for
    every B ⊆ Y and every qualifying U ⊇ f⁻¹[B] some qualifying V ⊇ B has
    f⁻¹[V] ⊆ U."""
    flag, x_sets, y_sets = _lemma_parts(f, lemma_id)
    if flags is None:
        flags = classify_map(f)
    pre = {v: f.preimage(v) for v in y_sets}

    def characterization():
        for b in range(f.cod.size):
            fb = f.preimage(b)
            for u in x_sets:
                if fb & ~u:
                    continue
                if not any(b & ~v == 0 and pre[v] & ~u == 0 for v in y_sets):
                    return False, witness("subset and enclosing set", B=b, U=u)
        return True, None

    return _vector(lemma_id, [(flags[flag], None), characterization()])


# -- preservation theorems ------------------------------------------------------

THEOREMS = ("T8", "T_norm_push", "T_norm_g", "T_pull", "T_pull2", "T_pair_push", "T_pair_pull")


def preservation_check(theorem_id: str, f: SpaceMap, flags: Mapping[str, bool] | None = None) -> Verdict:
    """Check one preservation theorem on ``f``.

    Returns a vacuous verdict when a hypothesis fails, so campaign statistics
    can separate verified instances from untriggered ones.
    """
    if theorem_id not in THEOREMS:
        raise UnknownTheorem(f"unknown preservation theorem {theorem_id!r}")
    if flags is None:
        flags = classify_map(f)
    X, Y = f.dom, f.cod
    NV, RV = NormalityVariant, RegularityVariant

    def need(*names):
        return all(flags[n] for n in names)

    case = ""
    if theorem_id == "T8":
        hyp = need("continuous", "estar_theta_open", "ge_closed", "surjective") and regularity(X, RV.CLASSICAL).holds
        target = lambda: regularity(Y, RV.ESTAR_THETA)
    elif theorem_id == "T_norm_push":
        hyp = (
            need("pre_estar_theta_open", "continuous", "almost_estar_theta_irresolute", "surjective")
            and normality(X, NV.ESTAR_THETA).holds
        )
        target = lambda: normality(Y, NV.ESTAR_THETA)
    elif theorem_id == "T_norm_g":
        g_case = need("ge_closed", "continuous", "surjective") and normality(X, NV.CLASSICAL).holds
        pre_case = need("pre_ge_closed", "continuous", "surjective") and normality(X, NV.ESTAR_THETA).holds
        hyp = g_case or pre_case
        case = "+".join(c for c, on in (("ge", g_case), ("pre_ge", pre_case)) if on)
        target = lambda: normality(Y, NV.ESTAR_THETA)
    elif theorem_id == "T_pull":
        hyp = (
            need("strongly_estar_irresolute_pointwise", "closed", "injective")
            and normality(Y, NV.ESTAR_THETA).holds
        )
        target = lambda: normality(X, NV.ESTAR_THETA)
    elif theorem_id == "T_pull2":
        hyp = need("estar_theta_continuous", "closed", "injective") and normality(Y, NV.CLASSICAL).holds
        target = lambda: normality(X, NV.ESTAR_THETA)
    elif theorem_id == "T_pair_push":
        hyp = (
            need("pair_star_closed", "strongly_estar_irresolute_pointwise", "surjective")
            and normality(X, NV.PAIR_STAR).holds
        )
        target = lambda: normality(Y, NV.PAIR_STAR)
    else:  # T_pair_pull
        hyp = (
            need("pre_estar_theta_closed", "strongly_estar_irresolute_pointwise", "injective")
            and normality(Y, NV.PAIR_STAR).holds
        )
        target = lambda: normality(X, NV.PAIR_STAR)

    if not hyp:
        return Verdict(theorem_id, True, vacuous=True)
    concl = target()
    if concl.holds:
        return Verdict(theorem_id, True, witness("triggered", case=case) if case else None)
    payload = witness("violated", map=",".join(map(str, f.image)), case=case).payload
    if concl.witness is not None:
        payload += concl.witness.payload
    return Verdict(theorem_id, False, Witness("violated", payload))


# -- campaign -------------------------------------------------------------------


def map_campaign(spaces: Sequence[Space], seed: int = 0) -> dict:
    """Lemma agreement, irresolute-definition agreement and preservation
    theorem statistics over all maps between all ordered pairs of ``spaces``."""
    from .zoo import SCHEMA, canonical_form

    lemma_stats = {lid: {"agree": 0, "discrepancies": []} for lid in LEMMAS}
    thm_stats = {tid: {"triggered": 0, "vacuous": 0, "violations": []} for tid in THEOREMS}
    irresolute = {"agree": 0, "discrepancies": []}
    inclusion_only = 0
    total = 0
    for X in spaces:
        for Y in spaces:
            for f in maps_between(X, Y, seed=seed):
                total += 1
                flags = classify_map(f)
                ref = {"dom": canonical_form(X), "cod": canonical_form(Y), "image": list(f.image)}
                for lid in LEMMAS:
                    vec = lemma_equivalence(f, lid, flags)
                    if vec.all_equal:
                        lemma_stats[lid]["agree"] += 1
                    else:
                        lemma_stats[lid]["discrepancies"].append({**ref, "clauses": list(vec.clauses)})
                a, b = flags["strongly_estar_irresolute_pointwise"], flags["strongly_estar_irresolute_preimage"]
                if a == b:
                    irresolute["agree"] += 1
                else:
                    irresolute["discrepancies"].append({**ref, "pointwise": a, "preimage": b})
                if flags["almost_estar_theta_irresolute_inclusion"] != flags["almost_estar_theta_irresolute"]:
                    inclusion_only += 1
                for tid in THEOREMS:
                    v = preservation_check(tid, f, flags)
                    if v.vacuous:
                        thm_stats[tid]["vacuous"] += 1
                    else:
                        thm_stats[tid]["triggered"] += 1
                        if not v.holds:
                            thm_stats[tid]["violations"].append(ref)
    never = sorted(t for t, s in thm_stats.items() if s["triggered"] == 0)
    return {
        "schema": SCHEMA,
        "campaign": "MAPS",
        "spaces": len(spaces),
        "maps": total,
        "lemmas": lemma_stats,
        "strongly_irresolute": irresolute,
        "almost_irresolute_inclusion_only": inclusion_only,
        "theorems": thm_stats,
        "never_triggered": never,
        "total_discrepancies": sum(len(s["discrepancies"]) for s in lemma_stats.values())
        + len(irresolute["discrepancies"])
        + sum(len(s["violations"]) for s in thm_stats.values()),
    }
