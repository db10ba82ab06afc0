"""Relational complexity tests: witnesses, bounds, and the degree arithmetic."""

import pytest

from diagbase.diagonal import build_group, make_config
from diagbase.errors import DomainError
from diagbase.rc import (
    RCBound,
    WitnessPair,
    rc_bounds,
    same_orbit,
    subtuple_complete,
    thm14_arithmetic,
    thm14_sweep,
    verify_witness,
    witness_from_json,
    witness_prop53,
    witness_rc4,
    witness_to_json,
)


def test_witness_pair_validation():
    with pytest.raises(DomainError):
        WitnessPair((1, 2), (1,), 1)
    with pytest.raises(DomainError):
        WitnessPair((1, 2), (3, 4), 2)


def test_identical_tuples_complete():
    G = build_group(make_config("Alt", 5, 2, "socle"))
    chain = G.realize()
    pair = WitnessPair((0, 5, 9), (0, 5, 9), 2)
    ok, trans = subtuple_complete(chain, pair)
    assert ok and len(trans) == 3
    assert same_orbit(chain, pair.lam, pair.sig)


def test_rc4_witness_a5_socle_k2():
    G = build_group(make_config("Alt", 5, 2, "socle"))
    pair = witness_rc4(G)
    cert = verify_witness(G, pair)
    assert cert.complete and not cert.joint and cert.rc_lower == 4
    assert pair.provenance == "rc4-base-triple"


def test_rc4_witness_a5_full_fallback():
    G = build_group(make_config("Alt", 5, 2, "full_W"))
    pair = witness_rc4(G)
    cert = verify_witness(G, pair)
    assert cert.certified and cert.rc_lower == 4
    assert pair.provenance == "rc4-search"


def test_rc4_witness_k3():
    G = build_group(make_config("Alt", 5, 3, "full_W"))
    pair = witness_rc4(G)
    assert pair.provenance == "rc4-generating-pair"
    cert = verify_witness(G, pair)
    assert cert.certified and cert.rc_lower == 4


def test_monotonicity_of_completeness():
    G = build_group(make_config("Alt", 5, 2, "socle"))
    chain = G.realize()
    pair = witness_rc4(G)
    for s in (1, 2, 3):
        ok, _ = subtuple_complete(chain, WitnessPair(pair.lam, pair.sig, s))
        assert ok


def test_same_orbit_implies_complete():
    G = build_group(make_config("Alt", 5, 2, "socle"))
    chain = G.realize()
    gens = G.generators
    w = gens[0] * gens[3] * gens[1]
    lam = (0, 7, 23, 41)
    sig = tuple(w.image(p) for p in lam)
    assert same_orbit(chain, lam, sig)
    for s in (1, 2, 3):
        ok, _ = subtuple_complete(chain, WitnessPair(lam, sig, s))
        assert ok


def test_prop53_m3_k3():
    G, pair = witness_prop53(3, 3)
    assert len(pair.lam) == 3 and pair.s == 2
    cert = verify_witness(G, pair)
    assert cert.certified and cert.rc_lower == 3


def test_rc_bounds_l2_8_socle_exact():
    G = build_group(make_config("PSL2", 8, 2, "socle"))
    pair = witness_rc4(G)
    bound = rc_bounds(G, witnesses=[pair])
    assert bound.upper == 4  # I(G) = 3
    assert bound.lower == 4 and bound.exact
    assert bound.upper_source == "I_plus_1"


def test_rc_bounds_without_witness_reports_gap():
    G = build_group(make_config("Alt", 5, 2, "socle"))
    bound = rc_bounds(G)
    assert bound.lower == 2 and bound.upper >= 4
    assert not bound.exact and "no witness search" in bound.note


def test_witness_json_roundtrip_reverifies():
    G = build_group(make_config("Alt", 5, 2, "socle"))
    pair = witness_rc4(G)
    cert = verify_witness(G, pair)
    doc = witness_to_json(G, pair, cert.transporters)
    pair2 = witness_from_json(G, doc)
    assert pair2.lam == pair.lam and pair2.sig == pair.sig and pair2.s == pair.s
    cert2 = verify_witness(G, pair2)
    assert cert2.certified


def test_thm14_values():
    assert thm14_arithmetic(1000).ok
    assert thm14_arithmetic(64).ok and not thm14_arithmetic(64).below_threshold
    small = thm14_arithmetic(3)
    assert small.below_threshold and not small.ok  # chain genuinely fails small
    assert small.ratio > 0


def test_thm14_sweep_matches_single():
    sweep = thm14_sweep(60, 70)
    for res in sweep:
        single = thm14_arithmetic(res.m)
        assert res.ok == single.ok
        assert abs(res.log_n - single.log_n) < 1e-9


def test_rc4_witness_a6_full_fallback():
    # the other k=2 group without a base triple; the bounded search covers it
    G = build_group(make_config("Alt", 6, 2, "full_W"))
    pair = witness_rc4(G)
    assert pair.provenance == "rc4-search"
    cert = verify_witness(G, pair)
    assert cert.certified and cert.rc_lower == 4
