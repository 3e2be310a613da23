"""Enumeration, canonicalization and corpus-wide scans of small topologies."""

from __future__ import annotations

import hashlib
import inspect
import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import axioms, genop
from .core import CapExceeded, Space, TopologyError, validate_space
from .axioms import (
    PROPERTY_IDS,
    RegularityVariant,
    implication_expectations,
    normality_clauses,
    property_table,
    regularity,
    regularity_clauses_thm1,
    regularity_clauses_thm2,
    separation_axioms,
)

EXHAUSTIVE_CAP = 5
SCHEMA = "finitopo.report/1"


# -- enumeration -------------------------------------------------------------


def _labeled(n: int) -> Iterator[tuple[int, ...]]:
    """Depth-first decision over proper nonempty subsets in increasing order.

    Including ``s`` requires each ``s & t`` (numerically below ``s``) to be
    in already and marks each ``s | t`` as required; excluding ``s`` is only
    allowed when nothing requires it.  Each topology is produced once.
    """
    full = (1 << n) - 1
    chosen: list[int] = [0]
    required: dict[int, int] = {}

    def rec(s: int) -> Iterator[tuple[int, ...]]:
        if s == full:
            yield tuple(chosen) + (full,)
            return
        if not required.get(s):
            yield from rec(s + 1)
        # try to include s
        members = set(chosen)
        if all((s & t) in members or (s & t) == s for t in chosen):
            added = []
            for t in chosen:
                u = s | t
                if u != s and u != full:
                    required[u] = required.get(u, 0) + 1
                    added.append(u)
            chosen.append(s)
            yield from rec(s + 1)
            chosen.pop()
            for u in added:
                required[u] -= 1

    if n == 0:
        return
    if full == 1:
        yield (0, 1)
        return
    yield from rec(1)


def _perm_tables(n: int) -> list[list[int]]:
    def build():
        tables = []
        for perm in itertools.permutations(range(n)):
            table = [0] * (1 << n)
            for a in range(1 << n):
                b = 0
                for i in range(n):
                    if a >> i & 1:
                        b |= 1 << perm[i]
                table[a] = b
            tables.append(table)
        return tables

    if n not in _PERM_CACHE:
        _PERM_CACHE[n] = build()
    return _PERM_CACHE[n]


_PERM_CACHE: dict[int, list[list[int]]] = {}


def canonical_opens(n: int, opens: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least sorted open-set tuple over all relabelings."""
    if n > 6:
        raise CapExceeded(f"canonical form limited to n <= 6, got {n}")
    best = None
    for table in _perm_tables(n):
        cand = tuple(sorted(table[u] for u in opens))
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(space: Space) -> str:
    """Permutation-invariant identifier; equal ids mean homeomorphic spaces."""
    return space.memo(
        "canonical_id",
        lambda: _format_id(space.n, canonical_opens(space.n, space.opens)),
    )


def _format_id(n: int, opens: Sequence[int]) -> str:
    return f"{n}:" + ".".join(format(u, "x") for u in opens)


def space_from_id(canonical_id: str) -> Space:
    n, body = canonical_id.split(":")
    return validate_space(int(n), (int(h, 16) for h in body.split(".")))


def permute(space: Space, perm: Sequence[int]) -> Space:
    """Relabel point i as perm[i]."""
    def move(a):
        return sum(1 << perm[i] for i in range(space.n) if a >> i & 1)

    return Space(space.n, tuple(sorted(move(u) for u in space.opens)))


def enumerate_topologies(n: int, mode: str = "labeled") -> Iterator[Space]:
    """Every topology on ``n`` points; ``canonical`` keeps one per class,
    each given in its canonical labeling, ordered by canonical id."""
    if not 1 <= n <= EXHAUSTIVE_CAP:
        raise CapExceeded(f"exhaustive enumeration needs 1 <= n <= {EXHAUSTIVE_CAP}, got {n}")
    if mode == "labeled":
        for opens in _labeled(n):
            yield Space(n, opens)
    elif mode == "canonical":
        # each new labeled family contributes its whole orbit at once
        tables = _perm_tables(n)
        seen: set[tuple[int, ...]] = set()
        reps = []
        for opens in _labeled(n):
            if opens in seen:
                continue
            orbit = {tuple(sorted(t[u] for u in opens)) for t in tables}
            seen |= orbit
            reps.append(min(orbit))
        for opens in sorted(reps):
            yield Space(n, opens)
    else:
        raise ValueError(f"mode must be 'labeled' or 'canonical', not {mode!r}")


def corpus(n_max: int, mode: str = "labeled") -> list[Space]:
    return [s for n in range(1, n_max + 1) for s in enumerate_topologies(n, mode)]


def random_space(n: int, seed: int, density: float = 0.3) -> Space:
    """Seeded random topology generated by subsets drawn with probability
    ``density``."""
    if not 1 <= n <= 16:
        raise CapExceeded(f"random spaces need 1 <= n <= 16, got {n}")
    rng = random.Random(seed)
    full = (1 << n) - 1
    drawn = [a for a in range(1, full) if rng.random() < density]
    # minimal neighbourhoods of the generated topology
    nbhd = [full] * n
    for a in drawn:
        for x in range(n):
            if a >> x & 1:
                nbhd[x] &= a
    opens = {0}
    for m in nbhd:
        opens |= {u | m for u in opens}
    opens.add(full)
    return Space(n, tuple(sorted(opens)))


# -- persistence -------------------------------------------------------------


def zoo_record(space: Space, with_props: bool = True) -> dict:
    rec = {
        "id": canonical_form(space) if space.n <= 6 else space.fingerprint,
        "n": space.n,
        "opens_hex": [format(u, "x") for u in space.opens],
    }
    if with_props:
        rec["props"] = property_table(space)
    return rec


def write_corpus(spaces: Iterable[Space], path, with_props: bool = True) -> int:
    count = 0
    with open(path, "a", encoding="utf-8") as fh:
        for s in spaces:
            fh.write(json.dumps(zoo_record(s, with_props), sort_keys=True) + "\n")
            count += 1
    return count


def read_corpus(path) -> list[tuple[Space, dict]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            space = validate_space(rec["n"], (int(h, 16) for h in rec["opens_hex"]))
            out.append((space, rec.get("props", {})))
    return out


# -- scans -------------------------------------------------------------------

THEOREMS = ("thm1", "thm2", "thm9", "thm10", "thm00", "sep")


def theorem_vector(space: Space, theorem_id: str):
    if theorem_id == "thm1":
        return regularity_clauses_thm1(space)
    if theorem_id == "thm2":
        return regularity_clauses_thm2(space)
    if theorem_id in ("thm9", "thm10", "thm00"):
        return normality_clauses(space, theorem_id)
    if theorem_id == "sep":
        return separation_axioms(space)
    raise KeyError(f"unknown theorem {theorem_id!r}")


def verify_theorems(spaces: Sequence[Space], theorems: Sequence[str] = THEOREMS) -> dict:
    """Clause-agreement counts and discrepancies per theorem."""
    report: dict = {"schema": SCHEMA, "campaign": "THEOREMS", "spaces": len(spaces), "theorems": {}}
    for tid in theorems:
        agree, disc = 0, []
        for s in spaces:
            vec = theorem_vector(s, tid)
            if vec.all_equal:
                agree += 1
            else:
                disc.append({"space": _space_ref(s), **vec.to_json()})
        report["theorems"][tid] = {"agree": agree, "discrepancies": disc}
    report["total_discrepancies"] = sum(len(t["discrepancies"]) for t in report["theorems"].values())
    return report


def verify_lemma1(spaces: Sequence[Space]) -> dict:
    """Every clause of the e*-theta-closure lemma at every (A, B) pair."""
    failures = []
    checks = 0
    for s in spaces:
        bad = set(genop.lemma1_family_folds(s))
        for a in range(s.size):
            for b in range(s.size):
                checks += 1
                bad.update(genop.lemma1_failures(s, a, b))
        if bad:
            failures.append({"space": _space_ref(s), "clauses": sorted(bad)})
    return {
        "schema": SCHEMA,
        "campaign": "LEMMA1",
        "spaces": len(spaces),
        "checks": checks,
        "discrepancies": failures,
        "total_discrepancies": len(failures),
    }


def _space_ref(space: Space) -> str:
    return canonical_form(space) if space.n <= 6 else space.fingerprint


@dataclass
class ImplicationMatrix:
    properties: tuple[str, ...]
    refuted: dict[tuple[str, str], list[str]] = field(default_factory=dict)

    def status(self, p: str, q: str) -> str:
        return "REFUTED" if (p, q) in self.refuted else "IMPLIED"

    def witnesses(self, p: str, q: str) -> list[str]:
        return self.refuted.get((p, q), [])

    def to_json(self) -> dict:
        rows = {}
        for p in self.properties:
            rows[p] = {}
            for q in self.properties:
                if p == q:
                    continue
                w = self.witnesses(p, q)
                rows[p][q] = {"status": "REFUTED", "witnesses": w} if w else {"status": "IMPLIED"}
        return {"properties": list(self.properties), "rows": rows}


def scan_implications(spaces: Sequence[Space]) -> dict:
    """Implication matrix over all property ids plus expected-arrow audit."""
    tables = [(s, property_table(s)) for s in spaces]
    matrix = ImplicationMatrix(PROPERTY_IDS)
    for s, props in tables:
        sid = _space_ref(s)
        for p in PROPERTY_IDS:
            if not props[p]:
                continue
            for q in PROPERTY_IDS:
                if p != q and not props[q]:
                    ids = matrix.refuted.setdefault((p, q), [])
                    if sid not in ids:
                        ids.append(sid)
    for ids in matrix.refuted.values():
        ids.sort()
    arrows = []
    violations = 0
    for arrow in implication_expectations():
        bad = sorted(
            {
                _space_ref(s)
                for s, props in tables
                if all(props[p] for p in arrow.premises) and not props[arrow.conclusion]
            }
        )
        triggered = sum(all(props[p] for p in arrow.premises) for _, props in tables)
        violations += len(bad)
        arrows.append(
            {
                "premises": list(arrow.premises),
                "conclusion": arrow.conclusion,
                "anchor": arrow.anchor,
                "note": arrow.note,
                "triggered": triggered,
                "violations": bad,
            }
        )
    return {
        "schema": SCHEMA,
        "campaign": "IMPLICATIONS",
        "spaces": len(spaces),
        "arrows": arrows,
        "arrow_violations": violations,
        "matrix": matrix.to_json(),
    }


def scan_separations(spaces: Sequence[Space]) -> dict:
    counts = {pid: 0 for pid in axioms.SEPARATION_IDS}
    disc = []
    for s in spaces:
        vec = separation_axioms(s)
        for pid, ok in zip(axioms.SEPARATION_IDS, vec.clauses):
            counts[pid] += ok
        if not vec.all_equal:
            disc.append({"space": _space_ref(s), **vec.to_json()})
    return {
        "schema": SCHEMA,
        "campaign": "SEPARATIONS",
        "spaces": len(spaces),
        "holds": counts,
        "discrepancies": disc,
        "total_discrepancies": len(disc),
    }


def scan(spaces: Sequence[Space], campaign: str) -> dict:
    spaces = list(spaces)
    if not spaces:
        raise TopologyError("scan needs a nonempty corpus")
    campaign = campaign.upper()
    if campaign == "THEOREMS":
        return verify_theorems(spaces)
    if campaign == "IMPLICATIONS":
        return scan_implications(spaces)
    if campaign == "SEPARATIONS":
        return scan_separations(spaces)
    raise ValueError(f"unknown campaign {campaign!r}")


# -- the open question -------------------------------------------------------


def property_version() -> str:
    """Hash of the code that decides the searched properties."""
    h = hashlib.sha256()
    for mod in (genop, axioms):
        h.update(inspect.getsource(mod).encode())
    return h.hexdigest()[:16]


def search_open_question(n_max: int) -> dict:
    """Look for a space that is e*-regular but not e*theta-regular.

    Sweeps canonical spaces with n = 1..n_max in canonical order and stops at
    the first hit.  A miss is a bounded search result, not a proof.
    """
    if not 1 <= n_max <= EXHAUSTIVE_CAP:
        raise CapExceeded(f"exhaustive search needs 1 <= n_max <= {EXHAUSTIVE_CAP}, got {n_max}")
    searched = 0
    per_n = {}
    for n in range(1, n_max + 1):
        count = 0
        for s in enumerate_topologies(n, "canonical"):
            count += 1
            searched += 1
            er = regularity(s, RegularityVariant.ESTAR)
            etr = regularity(s, RegularityVariant.ESTAR_THETA)
            if er.holds and not etr.holds:
                per_n[str(n)] = count
                return {
                    "schema": SCHEMA,
                    "question": "estar-not-estartheta",
                    "found": True,
                    "witness": {
                        "id": canonical_form(s),
                        "space": s.to_json(),
                        "regular.estar": True,
                        "regular.estar_theta": False,
                        "failure": etr.witness.to_json(),
                    },
                    "searched": searched,
                    "n_max": n_max,
                    "property_version": property_version(),
                }
        per_n[str(n)] = count
    return {
        "schema": SCHEMA,
        "question": "estar-not-estartheta",
        "found": False,
        "summary": f"none found up to n={n_max}",
        "searched": searched,
        "canonical_per_n": per_n,
        "n_max": n_max,
        "property_version": property_version(),
    }
