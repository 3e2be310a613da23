import pytest

from finitopo.axioms import (
    NormalityVariant as NV,
    PROPERTY_IDS,
    RegularityVariant as RV,
    check_property,
    composite_thm3,
    ed_check,
    implication_expectations,
    normality,
    normality_clauses,
    property_table,
    r0_check,
    regular_by_neighbourhoods,
    regularity,
    regularity_clauses_thm1,
    regularity_clauses_thm2,
    regularity_family,
    separated,
    separation_axioms,
)
from finitopo.core import discrete, indiscrete, subset
from finitopo.genop import ThetaKind, theta_closure, theta_closed_family

from oracle import Topo

CLOSED_SORT_VARIANTS = [v for v in RV if v is not RV.PAIR_E_THETA]


def oracle_of(sp):
    return Topo(sp.n, [[p for p in range(sp.n) if u >> p & 1] for u in sp.opens])


def as_sets(fam, n):
    return [frozenset(p for p in range(n) if a >> p & 1) for a in fam]


class TestExamples:
    def test_s1(self, s1):
        assert regularity(s1, RV.ESTAR_THETA).holds
        assert not regularity(s1, RV.BETA_THETA).holds
        assert regularity_clauses_thm1(s1).clauses == (True,) * 5
        assert ed_check(s1).holds

    def test_s2(self, s2):
        assert regularity(s2, RV.ESTAR_THETA).holds
        assert not regularity(s2, RV.CLASSICAL).holds
        assert not regularity(s2, RV.PAIR_E_THETA).holds
        assert regularity_clauses_thm2(s2).clauses == (False, False)
        v = composite_thm3(s2)
        assert v.holds and v.vacuous

    def test_s3(self, s3):
        assert normality(s3, NV.ESTAR_THETA).holds
        assert not normality(s3, NV.CLASSICAL).holds
        assert normality_clauses(s3, "THM9").clauses == (True, True, True)

    def test_discrete(self):
        d = discrete(3)
        assert all(regularity(d, v).holds for v in RV)
        assert all(normality(d, v).holds for v in NV)
        assert regularity_clauses_thm2(d).clauses == (True, True)
        assert ed_check(d).holds and r0_check(d).holds
        assert separation_axioms(d).clauses == (True,) * 7
        v = composite_thm3(d)
        assert v.holds and not v.vacuous

    def test_indiscrete(self):
        sp = indiscrete(3)
        # only closed sets are the empty set and X: vacuous for closed-set variants
        assert all(regularity(sp, v).holds for v in CLOSED_SORT_VARIANTS)
        assert regularity_clauses_thm1(sp).clauses == (True,) * 5
        assert normality_clauses(sp, "THM00").all_equal
        assert separation_axioms(sp).all_equal

    def test_sierpinski_r0_by_hand(self, sier):
        tcl = theta_closure(sier, ThetaKind.ESTAR_THETA, 0b01)
        assert r0_check(sier).holds == (tcl & ~0b01 == 0)


class TestAgainstOracle:
    ORACLE_FAMILY = {
        RV.CLASSICAL: "OPEN",
        RV.P: "PRE",
        RV.S: "SEMI",
        RV.B: "B",
        RV.BETA: "BETA",
        RV.E: "E",
        RV.ESTAR: "ESTAR",
    }

    def test_regularity(self, small_spaces, random_spaces):
        for sp in small_spaces + random_spaces[:6]:
            t = oracle_of(sp)
            for v, kind in self.ORACLE_FAMILY.items():
                assert regularity(sp, v).holds == t.regular(t.family(kind)), (sp, v)
            assert regularity(sp, RV.ESTAR_THETA).holds == t.regular(t.theta_open("ESTAR"))
            assert regularity(sp, RV.BETA_THETA).holds == t.regular(t.theta_open("BETA"))

    def test_normality(self, small_spaces):
        for sp in small_spaces:
            t = oracle_of(sp)
            to = t.theta_open("ESTAR")
            tc = [t.X - u for u in to]
            assert normality(sp, NV.CLASSICAL).holds == t.normal(t.closeds, t.opens)
            assert normality(sp, NV.ESTAR_THETA).holds == t.normal(t.closeds, to)
            assert normality(sp, NV.PAIR_STAR).holds == t.normal(tc, to)


class TestMeta:
    def test_lemma_two(self, small_spaces, random_spaces):
        for sp in small_spaces + random_spaces:
            assert regular_by_neighbourhoods(sp).holds == regularity(sp, RV.CLASSICAL).holds

    def test_antitone_in_family(self, small_spaces, random_spaces):
        for sp in small_spaces + random_spaces:
            fams = {v: set(regularity_family(sp, v)) for v in CLOSED_SORT_VARIANTS}
            for v1 in CLOSED_SORT_VARIANTS:
                for v2 in CLOSED_SORT_VARIANTS:
                    if fams[v1] <= fams[v2] and regularity(sp, v1).holds:
                        assert regularity(sp, v2).holds, (sp, v1, v2)

    def test_witness_replay(self, small_spaces, random_spaces):
        for sp in small_spaces + random_spaces:
            for v in RV:
                verdict = regularity(sp, v)
                if verdict.holds:
                    continue
                f, x = verdict.witness.get("F"), verdict.witness.get("x")
                assert not f >> x & 1
                assert not separated(regularity_family(sp, v), f, 1 << x)
            for v in NV:
                verdict = normality(sp, v)
                if verdict.holds:
                    continue
                f1, f2 = verdict.witness.get("F1"), verdict.witness.get("F2")
                assert f1 & f2 == 0
                if v is NV.PAIR_STAR:
                    tc = set(theta_closed_family(sp, ThetaKind.ESTAR_THETA))
                    assert f1 in tc and f2 in tc
                else:
                    assert sp.is_closed(f1) and sp.is_closed(f2)

    def test_symmetric_normality(self, small_spaces):
        # a failing pair also fails with its sets swapped
        for sp in small_spaces:
            to = sp.opens
            for v in NV:
                verdict = normality(sp, v)
                if not verdict.holds:
                    fam = to if v is NV.CLASSICAL else regularity_family(sp, RV.ESTAR_THETA)
                    f1, f2 = verdict.witness.get("F1"), verdict.witness.get("F2")
                    assert not separated(fam, f2, f1)

    def test_small_spaces_all_equal(self, small_spaces):
        for sp in small_spaces:
            assert regularity_clauses_thm1(sp).all_equal
            assert regularity_clauses_thm2(sp).all_equal
            for tid in ("THM9", "THM10", "THM00"):
                assert normality_clauses(sp, tid).all_equal
            assert separation_axioms(sp).all_equal

    def test_clause_vector_lengths(self, s3):
        assert len(regularity_clauses_thm1(s3).clauses) == 5
        assert len(regularity_clauses_thm2(s3).clauses) == 2
        assert [len(normality_clauses(s3, t).clauses) for t in ("THM9", "THM10", "THM00")] == [3, 4, 6]
        assert len(separation_axioms(s3).clauses) == 7
        with pytest.raises(ValueError):
            normality_clauses(s3, "THM7")


class TestProperties:
    def test_table_keys(self, s1):
        assert tuple(property_table(s1)) == PROPERTY_IDS

    def test_dispatch(self, s1):
        assert check_property(s1, "regular.estar_theta").holds
        assert not check_property(s1, "regular.beta_theta").holds
        with pytest.raises(KeyError):
            check_property(s1, "compact")

    def test_expectations(self):
        arrows = {(a.premises, a.conclusion) for a in implication_expectations()}
        assert (("regular.beta_theta",), "regular.beta") in arrows
        assert (("normal.classical",), "normal.estar_theta") in arrows
        assert (("regular.estar",), "regular.estar_theta") not in arrows
        diagonal = [a for a in implication_expectations() if a.note]
        assert diagonal and diagonal[0].premises == ("regular.p",)
        assert diagonal[0].conclusion == "regular.b"
