"""Partition-type tests; the labeled brute force over S_k is the oracle."""

import itertools
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagbase.errors import DomainError
from diagbase.partitions import (
    ceil_chain,
    closed_form_vs_sim,
    ell,
    gamma_type,
    greedy_refine_sim,
    greedy_refine_trace,
    m_prime,
    npart_types,
    predicted_refine_value,
    ptype,
    ptype_from_sizes,
    ptype_total,
    sigma_type,
    split_type,
    stab_is_trivial,
    stab_order,
    verify_min_part,
    verify_part_sigma,
)


def labeled_stab_count(sizes, q_label):
    """Count permutations of S_k (or A_k) preserving each part of a concrete
    labeled partition with the given part sizes; the independent oracle."""
    k = sum(sizes)
    part_id = []
    for pid, s in enumerate(sizes):
        part_id.extend([pid] * s)
    part_id = tuple(part_id)
    count = 0
    for perm in itertools.permutations(range(k)):
        if all(part_id[perm[i]] == part_id[i] for i in range(k)):
            if q_label == "A":
                inv = sum(
                    1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j]
                )
                if inv % 2:
                    continue
            count += 1
    return count


def test_gamma_type_examples():
    assert gamma_type(7, 3) == ((2, 2), (3, 1))
    assert gamma_type(6, 3) == ((2, 3),)
    assert gamma_type(61, 60) == ((1, 59), (2, 1))
    assert gamma_type(3, 5) == ((0, 2), (1, 3))


def test_sigma_type_examples():
    # k = mn with n = 6, m = 5
    assert sigma_type(30, 6) == ((4, 2), (5, 2), (6, 2))
    # k = (m-1)n + 1 with n = 6, m = 3
    assert sigma_type(13, 6) == ((1, 1), (2, 3), (3, 2))
    # middle window equals gamma
    for k in range(15, 16):
        assert sigma_type(k, 6) == gamma_type(k, 6)
    assert sigma_type(14, 6) == ((1, 1), (2, 2), (3, 3))
    with pytest.raises(DomainError):
        sigma_type(6, 6)
    with pytest.raises(DomainError):
        sigma_type(10, 4)


def test_sigma_type_sums():
    for n in (5, 6, 7, 8):
        for k in range(n + 1, 4 * n + 1):
            assert ptype_total(sigma_type(k, n)) == k
            assert sum(m for _, m in sigma_type(k, n)) == n


def test_stab_order_basic():
    assert stab_order(ptype_from_sizes([2, 2, 3]), "S") == 24
    assert stab_order(ptype_from_sizes([2, 2, 3]), "A") == 12
    assert stab_order(ptype_from_sizes([1] * 5), "A") == 1
    assert stab_order(ptype_from_sizes([1] * 5), "S") == 1
    assert stab_order(ptype_from_sizes([0, 0, 4]), "S") == 24


@pytest.mark.parametrize("k", range(2, 10))
def test_stab_order_matches_labeled_brute_force(k):
    for t in npart_types(k, k):  # all types of k (padding with zeros)
        sizes = [s for s, m in t for _ in range(m) if s > 0]
        if not sizes:
            continue
        for q in ("S", "A"):
            assert stab_order(t, q) == labeled_stab_count(sizes, q), (t, q)


def test_stab_is_trivial_matches_order():
    for k in range(2, 12):
        for t in npart_types(k, min(k, 6)):
            for q in ("S", "A"):
                assert stab_is_trivial(t, q) == (stab_order(t, q) == 1)


def test_npart_types_counts():
    # partitions of 7 into exactly 3 parts allowing empties = p(7, <=3) = 8
    assert len(npart_types(7, 3)) == 8
    for t in npart_types(7, 3):
        assert ptype_total(t) == 7
        assert sum(m for _, m in t) == 3


@pytest.mark.parametrize(
    "k,n,q",
    [(7, 3, "S"), (13, 6, "A"), (7, 6, "S"), (9, 8, "S")],
)
def test_verify_min_part_spot(k, n, q):
    ok, bad = verify_min_part(k, n, q)
    assert ok, bad


def test_gamma_is_unique_minimum_small():
    for n in (3, 4, 5):
        for k in range(n + 1, 3 * n):
            g = gamma_type(k, n)
            hg = stab_order(g, "S")
            others = [stab_order(t, "S") for t in npart_types(k, n) if t != g]
            assert all(h > hg for h in others)


@pytest.mark.parametrize("k,n,q", [(30, 6, "S"), (13, 6, "A"), (31, 6, "S")])
def test_verify_part_sigma_spot(k, n, q):
    ok, bad = verify_part_sigma(k, n, q)
    assert ok, bad


def test_ceil_chain_examples():
    assert ceil_chain(11, 3, 1)
    assert ceil_chain(8, 2, 2)
    assert ceil_chain(0, 5, 3)


@given(st.integers(0, 10**9), st.integers(1, 50), st.integers(0, 8))
@settings(max_examples=300, deadline=None)
def test_ceil_chain_property(m, n, r):
    assert ceil_chain(m, n, r)


def test_split_type():
    assert split_type(ptype_from_sizes([61]), 60) == ((1, 59), (2, 1))
    assert split_type(ptype_from_sizes([2, 2]), 60) == ((0, 116), (1, 4))


def test_refine_sim_examples():
    assert greedy_refine_sim(60, 3600, "S") == 4  # k = |T|^2
    assert greedy_refine_sim(60, 100, "S") == 3
    assert greedy_refine_sim(60, 61, "A") in (3, 4)
    assert greedy_refine_sim(60, 61, "A") == 3


def test_refine_boundary_cases():
    # k in {n^l - 1, n^l - 2}: l+2 exactly for Q = S (the consistent reading)
    for k in (3598, 3599):
        assert greedy_refine_sim(60, k, "S") == 4
        assert greedy_refine_sim(60, k, "A") == 3
    assert greedy_refine_sim(60, 3600, "A") == 4
    assert greedy_refine_sim(60, 3601, "S") == 4  # ell jumps to 3


def test_largest_part_invariant():
    # largest part at step i is ceil(m'/n^(i-1))
    for n, k in [(60, 100), (60, 3600), (168, 200), (60, 3599)]:
        mp = m_prime(k, n)
        for i, t in enumerate(greedy_refine_trace(n, k, "S"), start=1):
            largest = max(s for s, _ in t)
            assert largest == -(-mp // n ** (i - 1))


def test_two_largest_parts_invariant():
    # away from k = -1, -2 mod n^i there are at least two largest parts
    for n, k in [(60, 100), (60, 3600), (60, 130)]:
        for i, t in enumerate(greedy_refine_trace(n, k, "S"), start=1):
            if max(s for s, _ in t) <= 1:
                continue
            if k % (n**i) not in (n**i - 1, n**i - 2):
                largest = max(s for s, _ in t)
                assert sum(m for s, m in t if s == largest) >= 2, (n, k, i, t)


def test_sim_in_predicted_window():
    for n in (60, 168):
        for k in list(range(n + 1, n + 40)) + [n**2 - 2, n**2 - 1, n**2, n**2 + 1]:
            e = ell(n, k)
            for q in ("A", "S"):
                assert greedy_refine_sim(n, k, q) in (e + 1, e + 2)


def test_closed_form_vs_sim_rows():
    rows = closed_form_vs_sim(60, [3598, 3599, 3600])
    for row in rows:
        assert row["agree_prop"], row
        if row["k"] == 3600:
            assert row["agree_thm"]
        else:
            assert row["agree_thm"] != (row["q"] in ("A", "S"))  # literal reading fails
    rows = closed_form_vs_sim(60, range(61, 201))
    assert all(r["sim"] == 3 == r["prop_reading"] for r in rows)


def test_predicted_refine_readings_differ_only_at_boundary():
    for k in (3598, 3599):
        for q in ("A", "S"):
            assert predicted_refine_value(60, k, q, "prop") != predicted_refine_value(
                60, k, q, "thm-literal"
            )
    assert predicted_refine_value(60, 3600, "A", "prop") == predicted_refine_value(
        60, 3600, "A", "thm-literal"
    )
