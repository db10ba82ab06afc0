"""Catalog tests: element tables, Aut construction, invertilisers, holomorph."""

import json

import pytest

from diagbase.catalog import (
    AutGroupData,
    build_aut,
    build_simple,
    expected_out_order,
    holomorph,
    invertiliser,
    invertiliser_order,
    load_snapshot,
    snapshot,
)
from diagbase.errors import (
    DomainError,
    ResourceLimitError,
    UnsupportedGroupError,
)
from diagbase.perm import Permutation, membership, point_stabilizer


def test_build_alt5():
    T = build_simple("Alt", 5)
    assert T.order == 60 and T.degree == 5
    assert T.identity_index == 0
    assert T.elements[0].is_identity()
    # full closure check: mult table closed, associative on sampled triples
    for i in (1, 7, 30):
        for j in (2, 11, 59):
            for k in (3, 25, 42):
                assert T.mult[T.mult[i][j]][k] == T.mult[i][T.mult[j][k]]
    assert all(T.mult[i][T.inv[i]] == 0 for i in range(60))
    assert all(T.inv[T.inv[i]] == i for i in range(60))
    assert len(T.generated_by(list(T.gens))) == 60


@pytest.mark.parametrize(
    "family,param,order",
    [
        ("Alt", 6, 360),
        ("PSL2", 7, 168),
        ("PSL2", 8, 504),
        ("PSL2", 11, 660),
        ("PSL2", 13, 1092),
    ],
)
def test_known_orders(family, param, order):
    T = build_simple(family, param)
    assert T.order == order
    assert T.degree == (param if family == "Alt" else param + 1)


def test_psl2_alias_rejected_by_default():
    with pytest.raises(UnsupportedGroupError):
        build_simple("PSL2", 4)
    with pytest.raises(UnsupportedGroupError):
        build_simple("PSL2", 9)
    assert build_simple("PSL2", 4, allow_alias=True).name == "Alt(5)"
    assert build_simple("PSL2", 9, allow_alias=True).name == "Alt(6)"


def test_unsupported_parameters():
    with pytest.raises(UnsupportedGroupError):
        build_simple("PSL2", 6)
    with pytest.raises(UnsupportedGroupError):
        build_simple("Alt", 4)
    with pytest.raises(UnsupportedGroupError):
        build_simple("Sporadic", 1)
    with pytest.raises(ResourceLimitError):
        build_simple("Alt", 7)  # 2520 > default cap 1200
    with pytest.raises(UnsupportedGroupError):
        build_simple("PSL2", 16)  # q > 13 config-gated


def test_class_structure_a5():
    T = build_simple("Alt", 5)
    sizes = sorted(len(c) for c in T.classes())
    assert sizes == [1, 12, 12, 15, 20]


@pytest.mark.parametrize(
    "family,param,aut_order",
    [
        ("Alt", 5, 120),
        ("Alt", 6, 1440),
        ("PSL2", 7, 336),
        ("PSL2", 8, 1512),
        ("PSL2", 11, 1320),
        ("PSL2", 13, 2184),
    ],
)
def test_aut_orders(family, param, aut_order):
    T = build_simple(family, param)
    aut = build_aut(T)
    assert aut.aut_chain.order() == aut_order
    assert aut.out_order == expected_out_order(T)
    assert aut.inn_chain.order() == T.order
    # Inn normal in Aut: conjugates of Inn generators stay in Inn
    for s in aut.aut_chain.generators()[:3]:
        for g in aut.inn_chain.generators():
            assert aut.inn_chain.contains(s.inv() * g * s)


def test_aut_generators_preserve_mult_a5():
    T = build_simple("Alt", 5)
    aut = build_aut(T)
    for phi in aut.aut_chain.generators():
        img = phi.images
        assert all(
            img[T.mult[i][j]] == T.mult[img[i]][img[j]]
            for i in range(60)
            for j in range(60)
        )


def test_out_tables_consistent():
    T = build_simple("Alt", 5)
    aut = build_aut(T)
    for i in range(aut.out_order):
        for j in range(aut.out_order):
            m = aut.out_mult[i][j]
            h = aut.out_corr[i][j]
            lhs = aut.out_reps[i] * aut.out_reps[j]
            rhs = T.conj_index_perm(h) * aut.out_reps[m]
            assert lhs == rhs
    for i in range(aut.out_order):
        m = aut.out_inv[i]
        h = aut.out_inv_corr[i]
        assert aut.out_reps[i].inv() == T.conj_index_perm(h) * aut.out_reps[m]


def test_decompose_roundtrip():
    T = build_simple("Alt", 5)
    aut = build_aut(T)
    phi = aut.aut_chain.generators()[-1] * aut.aut_chain.generators()[0]
    h, o = aut.decompose(phi)
    assert T.conj_index_perm(h) * aut.out_reps[o] == phi


def brute_invertiliser_size(T, aut, t):
    els = aut.aut_chain.elements()
    ti = T.inv[t]
    return sum(1 for p in els if p.image(t) in (t, ti))


def test_invertiliser_a5():
    T = build_simple("Alt", 5)
    aut = build_aut(T)
    five = next(i for i in range(1, 60) if T.elem_order(i) == 5)
    I = invertiliser(aut.aut_chain, five, T)
    assert I.order() == 10  # D10 inside S5
    assert I.order() == brute_invertiliser_size(T, aut, five)
    assert invertiliser_order(aut, five) == 10
    invol = next(i for i in range(1, 60) if T.elem_order(i) == 2)
    C = point_stabilizer(aut.aut_chain, invol)
    I2 = invertiliser(aut.aut_chain, invol, T)
    assert I2.order() == C.order()  # |t| = 2 means I = C
    triv = point_stabilizer(aut.aut_chain, five)  # placeholder small subgroup
    from diagbase.perm import bsgs_build

    trivial_chain = bsgs_build([], identity=Permutation.identity(60))
    assert invertiliser(trivial_chain, five, T).order() == 1


def test_invertiliser_c_vs_i_bounds():
    T = build_simple("PSL2", 7)
    aut = build_aut(T)
    for t in T.class_reps():
        if t == 0:
            continue
        C = point_stabilizer(aut.aut_chain, t)
        I = invertiliser(aut.aut_chain, t, T)
        assert C.order() <= I.order() <= 2 * C.order()
        assert I.order() in (C.order(), 2 * C.order())
        assert I.order() == invertiliser_order(aut, t)


def test_holomorph_a5():
    T = build_simple("Alt", 5)
    aut = build_aut(T)
    hol = holomorph(T, aut, include_inversion=False)
    assert hol.chain.order() == 60 * 120
    full = holomorph(T, aut, include_inversion=True)
    assert full.chain.order() == 14400
    stab = point_stabilizer(hol.chain, T.identity_index)
    assert stab.order() == 120
    # action law: t^{g phi} = (g^-1 t)^phi on translation generators
    for gi, tg in zip(T.gens, hol.translation_gens):
        ginv = T.inv[gi]
        assert all(tg.image(x) == T.mult[ginv][x] for x in range(60))
    assert all(full.inversion.image(x) == T.inv[x] for x in range(60))


def test_snapshot_roundtrip():
    T = build_simple("PSL2", 7)
    snap = snapshot(T)
    blob = json.dumps(snap, sort_keys=True)
    T2 = load_snapshot(json.loads(blob))
    assert T2.order == 168
    bad = dict(snap)
    bad["order"] = 167
    with pytest.raises(DomainError):
        load_snapshot(bad)


def test_disk_snapshot_cache(tmp_path, monkeypatch):
    from diagbase.catalog import get_simple, CACHE_ENV

    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    T1 = get_simple("PSL2", 7)
    assert (tmp_path / "PSL2_7.json").exists()
    T2 = get_simple("PSL2", 7)
    assert T2.order == T1.order == 168
