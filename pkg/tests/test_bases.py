"""Base-statistic tests with full-branch brute-force oracles on small groups."""

import itertools

import pytest

from diagbase.bases import (
    BaseSearcher,
    closed_form_base,
    closed_form_greedy,
    greedy_sizes,
    group_labels,
    max_irredundant,
    min_base,
    verify_paper_case,
)
from diagbase.diagonal import build_group, enumerate_overgroups, make_config
from diagbase.errors import DomainError
from diagbase.perm import Permutation, bsgs_build, orbits, pointwise_stabilizer


def brute_greedy_sizes(chain, domain):
    """Greedy terminal depths branching over every point of every longest
    orbit (no representative reduction); the oracle for greedy_sizes."""
    out = set()

    def walk(ch, depth):
        if ch.order() == 1:
            out.add(depth)
            return
        orbs = orbits(ch.generators(), domain)
        longest = len(orbs[0])
        for o in orbs:
            if len(o) != longest:
                break
            for pt in o:
                walk(pointwise_stabilizer(ch, [pt]), depth + 1)

    walk(chain, 0)
    return out


def brute_min_base(chain, domain):
    for size in range(0, domain + 1):
        for combo in itertools.combinations(range(domain), size):
            if pointwise_stabilizer(chain, combo).order() == 1:
                return size
    return None


def brute_max_irredundant(chain, domain):
    best = 0

    def walk(ch, depth):
        nonlocal best
        if ch.order() == 1:
            best = max(best, depth)
            return
        for pt in range(domain):
            st = pointwise_stabilizer(ch, [pt])
            if st.order() < ch.order():
                walk(st, depth + 1)

    walk(chain, 0)
    return best


def s5_chain():
    return bsgs_build(
        [Permutation.from_cycles(5, (0, 1)), Permutation.from_cycles(5, (0, 1, 2, 3, 4))]
    )


def a5_chain():
    return bsgs_build(
        [Permutation.from_cycles(5, (0, 1, 2)), Permutation.from_cycles(5, (0, 1, 2, 3, 4))]
    )


def test_greedy_sizes_s5_natural_matches_brute_force():
    chain = s5_chain()
    assert brute_greedy_sizes(chain, 5) == {4}
    assert greedy_sizes(chain, 5) == {4}


def test_greedy_sizes_a5_and_dihedral_match_brute_force():
    chain = a5_chain()
    assert greedy_sizes(chain, 5) == brute_greedy_sizes(chain, 5) == {3}
    d12 = bsgs_build(
        [Permutation.from_cycles(6, (0, 1, 2, 3, 4, 5)), Permutation([0, 5, 4, 3, 2, 1])]
    )
    assert greedy_sizes(d12, 6) == brute_greedy_sizes(d12, 6)


def test_min_base_matches_brute_force():
    for chain, domain in [(s5_chain(), 5), (a5_chain(), 5)]:
        b, wit = min_base(chain, domain)
        assert b == brute_min_base(chain, domain)
        assert pointwise_stabilizer(chain, wit).order() == 1
        assert len(wit) == b


def test_max_irredundant_matches_brute_force():
    for chain, domain in [(s5_chain(), 5), (a5_chain(), 5)]:
        irr, wit = max_irredundant(chain, domain)
        assert irr == brute_max_irredundant(chain, domain)
        # witness really is an irredundant base
        ch = chain
        for pt in wit:
            st = pointwise_stabilizer(ch, [pt])
            assert st.order() < ch.order()
            ch = st
        assert ch.order() == 1


def test_trivial_group_statistics():
    triv = bsgs_build([], degree=4)
    assert min_base(triv, 4) == (0, [])
    assert max_irredundant(triv, 4) == (0, [])
    assert greedy_sizes(triv, 4) == {0}


def test_closed_form_greedy():
    assert closed_form_greedy(60, 2, "S", "S", "Alt(5)", True) == 4
    assert closed_form_greedy(60, 2, "S", "S", "Alt(5)", False) == 3
    assert closed_form_greedy(60, 2, "1", "1", "L2(8)", False) == 3
    assert closed_form_greedy(60, 5, "other", None) == 2
    assert closed_form_greedy(60, 3600, "S", "A") == 4
    assert closed_form_greedy(60, 3600, "S", "S") == 4
    assert closed_form_greedy(60, 100, "S", "S") == 3
    assert closed_form_greedy(60, 3599, "S", "S") == 4
    assert closed_form_greedy(60, 3599, "S", "A") == 3
    with pytest.raises(DomainError):
        closed_form_greedy(60, 1, "S", "S")


def test_closed_form_base():
    assert closed_form_base(60, 60, "A", "A") == 3
    assert closed_form_base(60, 58, "S", "S") == 3
    assert closed_form_base(60, 58, "S", "A") == 2
    assert closed_form_base(60, 2, "S", "S", "Alt(5)", True) == 4
    assert closed_form_base(60, 2, "S", "S", "L2(7)", False) == 3
    assert closed_form_base(60, 3, "A", "A") == 2
    assert closed_form_base(60, 3598, "S", "S", "Alt(5)", True) == 4
    assert closed_form_base(60, 3598, "S", "S", "Alt(5)", False) == 3
    assert closed_form_base(60, 3600, "S", "S") == 4
    assert closed_form_base(60, 3600, "S", "A") == 3


def test_group_labels():
    G = build_group(make_config("Alt", 5, 3, "top", top="S", q="A"))
    p, q, full = group_labels(G)
    assert (p, q, full) == ("S", "A", False)
    G2 = build_group(make_config("Alt", 5, 2, "full_W"))
    assert group_labels(G2) == ("S", "S", True)
    G3 = build_group(make_config("Alt", 5, 2, "socle"))
    assert group_labels(G3) == ("1", "1", False)


def test_verify_paper_case_a5_socle_k2():
    G = build_group(make_config("Alt", 5, 2, "socle"))
    report = verify_paper_case(G)
    assert report.b == 3
    assert report.greedy_sizes == (3,)
    assert report.match and report.invariants_ok and report.greedy_singleton
    assert report.predicted["b"]["value"] == 3


def test_verify_paper_case_a5_full_k2():
    G = build_group(make_config("Alt", 5, 2, "full_W"))
    report = verify_paper_case(G)
    assert report.b == 4
    assert report.greedy_sizes == (4,)
    assert report.irr >= 4
    assert report.match and report.invariants_ok


def test_all_a5_overgroups_match_closed_forms():
    for case in enumerate_overgroups("Alt", 5):
        G = build_group(case.config)
        report = verify_paper_case(G)
        assert report.match and report.invariants_ok, case.config.label
        expect = 4 if G.order == 14400 else 3
        assert report.b == expect and report.greedy_sizes == (expect,)
