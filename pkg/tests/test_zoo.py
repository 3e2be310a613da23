import itertools
import json
import random

import pytest

from finitopo.core import CapExceeded, TopologyError, discrete, indiscrete, sierpinski, validate_space
from finitopo.zoo import (
    canonical_form,
    corpus,
    enumerate_topologies,
    permute,
    random_space,
    read_corpus,
    scan,
    search_open_question,
    space_from_id,
    write_corpus,
)

from oracle import count_topologies, is_topology


def _frozen(space):
    return frozenset(frozenset(i for i in range(space.n) if u >> i & 1) for u in space.opens)


def _orbit_count(n):
    # homeomorphism classes by brute force over all point permutations
    classes = set()
    for s in enumerate_topologies(n):
        fam = _frozen(s)
        classes.add(min(
            tuple(sorted(tuple(sorted(p[i] for i in u)) for u in fam))
            for p in itertools.permutations(range(n))
        ))
    return len(classes)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_labeled_count_matches_oracle(n):
    spaces = list(enumerate_topologies(n))
    assert len(spaces) == count_topologies(n)
    assert len({s.opens for s in spaces}) == len(spaces)
    for s in spaces:
        assert is_topology(n, _frozen(s))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_canonical_count(n):
    assert len(list(enumerate_topologies(n, "canonical"))) == _orbit_count(n)


def test_canonical_is_sorted_and_unique():
    ids = [canonical_form(s) for s in enumerate_topologies(4, "canonical")]
    assert len(set(ids)) == len(ids)
    for s in enumerate_topologies(4, "canonical"):
        assert space_from_id(canonical_form(s)).opens == s.opens


def test_cap():
    with pytest.raises(CapExceeded):
        list(enumerate_topologies(6))
    with pytest.raises(CapExceeded):
        list(enumerate_topologies(0))
    with pytest.raises(CapExceeded):
        search_open_question(6)


def test_homeomorphic_share_id(s1):
    a = sierpinski()
    b = validate_space(2, [0, 2, 3])
    assert canonical_form(a) == canonical_form(b)
    assert canonical_form(discrete(3)) != canonical_form(indiscrete(3))
    swapped = permute(s1, [1, 0, 3, 2])
    assert canonical_form(swapped) == canonical_form(s1)


def test_canonical_invariance_random():
    rng = random.Random(3)
    for seed in range(30):
        s = random_space(5, seed, rng.uniform(0.1, 0.5))
        cid = canonical_form(s)
        canon = space_from_id(cid)
        assert canonical_form(canon) == cid
        perm = list(range(5))
        rng.shuffle(perm)
        assert canonical_form(permute(s, perm)) == cid


def test_random_space_deterministic():
    for seed in range(10):
        a, b = random_space(6, seed, 0.3), random_space(6, seed, 0.3)
        assert a.opens == b.opens
        validate_space(6, a.opens)
    assert random_space(4, 0, 1.0).opens == discrete(4).opens
    assert random_space(4, 0, 0.0).opens == indiscrete(4).opens


def test_scan_refutations(s1, s3):
    m = scan([s1], "IMPLICATIONS")["matrix"]["rows"]
    cell = m["regular.estar_theta"]["regular.beta_theta"]
    assert cell == {"status": "REFUTED", "witnesses": [canonical_form(s1)]}
    m = scan([s3], "IMPLICATIONS")["matrix"]["rows"]
    cell = m["normal.estar_theta"]["normal.classical"]
    assert cell["status"] == "REFUTED" and cell["witnesses"] == [canonical_form(s3)]


def test_scan_small_corpus_clean():
    spaces = corpus(3)
    assert scan(spaces, "IMPLICATIONS")["arrow_violations"] == 0
    assert scan(spaces, "THEOREMS")["total_discrepancies"] == 0
    assert scan(spaces, "SEPARATIONS")["total_discrepancies"] == 0


def test_scan_empty():
    with pytest.raises(TopologyError):
        scan([], "THEOREMS")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_search_small(n):
    first = search_open_question(n)
    assert first["found"] is False and first["n_max"] == n
    assert json.dumps(first, sort_keys=True) == json.dumps(search_open_question(n), sort_keys=True)


def test_corpus_roundtrip(tmp_path):
    path = tmp_path / "zoo.jsonl"
    spaces = corpus(3, "canonical")
    assert write_corpus(spaces, path) == len(spaces)
    back = read_corpus(path)
    assert [s.opens for s, _ in back] == [s.opens for s in spaces]
    assert all(len(props) == 19 for _, props in back)
    write_corpus(spaces[:2], path, with_props=False)
    assert len(read_corpus(path)) == len(spaces) + 2
