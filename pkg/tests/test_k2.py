"""k=2 toolkit tests: stabiliser formula, procedure A, Qtilde, Lie criteria."""

from fractions import Fraction
from math import log2

import pytest

from diagbase.catalog import build_aut, build_simple, invertiliser
from diagbase.diagonal import build_group, enumerate_overgroups, make_config
from diagbase.errors import DomainError, InternalConsistencyError, MissingDataError
from diagbase.k2 import (
    CriterionParams,
    base_triple_test,
    criterion_cor311,
    criterion_value,
    exceptional_check,
    invertiliser_elements,
    l2_allowed_orders,
    l2_order_discrimination,
    lie_table_params,
    oplus_check,
    procedure_lemma_A,
    qtilde_exact,
    two_point_stab,
)


def qtilde_oracle_fraction(T, aut, x, y):
    """Fraction of conjugates y^g with nontrivial invertiliser intersection."""
    ix = [p for p in invertiliser_elements(aut, x) if not p.is_identity()]
    bad = 0
    for g in range(T.order):
        yg = T.mult[T.mult[T.inv[g]][y]][g]
        ygi = T.inv[yg]
        if any(p.image(yg) in (yg, ygi) for p in ix):
            bad += 1
    return Fraction(bad, T.order)


def test_two_point_stab_a5_socle_involution():
    G = build_group(make_config("Alt", 5, 2, "socle"))
    T = G.T
    invol = next(i for i in T.class_reps() if T.elem_order(i) == 2)
    res = two_point_stab(G, invol)
    assert res.agrees
    assert res.chain.order() == 4  # |C_Inn(x)| for a (2,2)-involution
    assert res.split == (4, 0)


def test_two_point_stab_full_includes_sigma_coset():
    G = build_group(make_config("Alt", 5, 2, "full_W"))
    T = G.T
    five = next(i for i in T.class_reps() if T.elem_order(i) == 5)
    res = two_point_stab(G, five)
    assert res.agrees
    assert res.split[1] > 0  # inverting sigma-coset elements present
    assert res.chain.order() == res.split[0] + res.split[1]


def test_two_point_stab_identity_degenerate():
    G = build_group(make_config("Alt", 5, 2, "full_W"))
    res = two_point_stab(G, 0)
    assert res.chain.order() == G.order // 60


def test_two_point_stab_agreement_everywhere_a5():
    for case in enumerate_overgroups("Alt", 5):
        G = build_group(case.config)
        for x in G.T.class_reps():
            if x:
                assert two_point_stab(G, x).agrees, (case.config.label, x)


def test_minimal_two_point_stab_invertiliser_bound():
    # if |G_1x| is minimal (P = S_2) then |I(x)| <= |I(y)| |Out| for all y
    from diagbase.catalog import invertiliser_order

    for fam, par in [("Alt", 5), ("PSL2", 7)]:
        T = build_simple(fam, par)
        aut = build_aut(T)
        for case in enumerate_overgroups(fam, par):
            if case.case == "a":
                continue  # P = S_2 needed
            G = build_group(case.config)
            reps = [r for r in T.class_reps() if r]
            sizes = {r: two_point_stab(G, r).chain.order() for r in reps}
            lo = min(sizes.values())
            for x in reps:
                if sizes[x] == lo:
                    ix = invertiliser_order(aut, x)
                    assert all(
                        ix <= invertiliser_order(aut, y) * aut.out_order for y in reps
                    )


def test_base_triple():
    G = build_group(make_config("PSL2", 7, 2, "full_W"))
    T = G.T
    threes = [i for i in range(T.order) if T.elem_order(i) == 3]
    x = threes[0]
    assert any(base_triple_test(G, x, y) for y in threes)
    # x = y of order > 2 can never pass
    five = next(i for i in range(60) if build_simple("Alt", 5).elem_order(i) == 5)
    G5 = build_group(make_config("Alt", 5, 2, "socle"))
    assert not base_triple_test(G5, five, five)


@pytest.mark.parametrize("fam,param", [("PSL2", 7), ("PSL2", 8), ("PSL2", 11)])
def test_procedure_lemma_A(fam, param):
    T = build_simple(fam, param)
    rep = procedure_lemma_A(T)
    assert rep.success, rep.failures
    assert rep.s_minimal and rep.inclusion_ok
    # every partner really completes a base in the realized full group
    from diagbase.perm import pointwise_stabilizer

    G = build_group(make_config(fam, param, 2, "full_W"))
    chain = G.realize()
    for x, x0 in rep.partners.items():
        assert pointwise_stabilizer(chain, [0, x, x0]).order() == 1


def test_procedure_lemma_A_literal_reading_fails_l2_7():
    # evidence: the order-7 class of L2(7) lies in s_paper but admits no
    # partner under the literal intersection test
    from diagbase.k2 import strong_base_triple

    T = build_simple("PSL2", 7)
    aut = build_aut(T)
    seven = next(r for r in T.class_reps() if T.elem_order(r) == 7)
    rep = procedure_lemma_A(T)
    assert seven in rep.s_paper
    assert not any(strong_base_triple(T, aut, seven, x0) for x0 in range(1, T.order))


def test_qtilde_a5_five_cycle_exact():
    # hand value: |I| = 10, |Out| = 2, intersections 5/15 (2,2) and 4/24 (5)
    T = build_simple("Alt", 5)
    five = next(i for i in T.class_reps() if T.elem_order(i) == 5)
    assert qtilde_exact(T, five) == Fraction(10)


def test_qtilde_dominates_oracle():
    for fam, par, orders in [("Alt", 5, (2, 3, 5)), ("PSL2", 7, (2, 3, 4))]:
        T = build_simple(fam, par)
        aut = build_aut(T)
        from diagbase.catalog import invertiliser_order

        for oy in orders:
            y = next(i for i in T.class_reps() if T.elem_order(i) == oy)
            q = qtilde_exact(T, y)
            iy = invertiliser_order(aut, y)
            for x in T.class_reps():
                if x and invertiliser_order(aut, x) <= iy * aut.out_order:
                    assert qtilde_oracle_fraction(T, aut, x, y) <= q


def test_qtilde_trivial_invertiliser_gives_zero():
    p = CriterionParams(c=1, a=1, b0=10**9, b1=10**9, b2=10**9, out_bound=2)
    assert criterion_cor311(p)


def test_l2_allowed_orders():
    assert l2_allowed_orders(7) == {7, 3}
    assert l2_allowed_orders(8) == {2, 7}
    assert l2_allowed_orders(11) == {11, 5}
    assert l2_allowed_orders(13) == {13, 2, 3, 6}


def test_l2_order_discrimination_q7():
    for case in enumerate_overgroups("PSL2", 7):
        if case.case == "a":
            continue
        G = build_group(case.config)
        rows = l2_order_discrimination(G)
        assert rows and all(r["ok"] for r in rows), (case.config.label, rows)
        assert sorted({r["x_order"] for r in rows}) == [2, 4]


def test_criterion_cor311_psp6_5():
    row = lie_table_params("PSp", 3, 5)
    assert row.c == 126
    assert row.b0 == Fraction(5**13, 24)
    assert row.b1 == Fraction(5**13, 12)
    assert row.b2 == Fraction(5**13, 24)
    assert row.a == 2
    assert criterion_cor311(row.params())


def test_criterion_cor311_l4_9_fails_table_bounds():
    # L4(9) is in the excluded finite list; the table bounds do not clear 1
    row = lie_table_params("L", 4, 9)
    assert row.c == 820
    val = criterion_value(row.params())
    assert val > 1
    assert not criterion_cor311(row.params())


def test_criterion_cor311_more_points():
    for fam, dims, q in [("PSp", 4, 3), ("L", 5, 3), ("U", 5, 3), ("Omega", 4, 3), ("U", 4, 9)]:
        row = lie_table_params(fam, dims, q)
        assert criterion_cor311(row.params()), (fam, dims, q, criterion_value(row.params()))


def test_criterion_degenerate_directions():
    assert not criterion_cor311(
        CriterionParams(c=10, a=2, b0=Fraction(1, 10), b1=10**9, b2=10**9, out_bound=2)
    )
    assert criterion_cor311(
        CriterionParams(c=1, a=1, b0=10**12, b1=10**12, b2=10**12, out_bound=2)
    )


def test_lie_table_values():
    assert lie_table_params("L", 4, 9).c == (9**4 - 1) // 8
    assert lie_table_params("E7", 1, 2).torus_order == 129
    assert lie_table_params("F4", 1, 2).torus_order == 17
    assert lie_table_params("F4", 1, 3).torus_order == 3**4 - 3**2 + 1
    assert lie_table_params("2B2", 1, 8).torus_order == 8 + 4 + 1
    assert lie_table_params("E7", 1, 3).torus_order == 4 * 703 // 2 * 2 // 2
    assert lie_table_params("E6", 1, 4).torus_order == (4**6 + 4**3 + 1) // 3


def test_oplus_check():
    assert oplus_check(4, 5)
    assert oplus_check(5, 2)
    assert oplus_check(4, 4)
    assert oplus_check(6, 2)
    with pytest.raises(DomainError):
        oplus_check(4, 2)
    with pytest.raises(DomainError):
        oplus_check(4, 3)


def test_exceptional_check_e7():
    for q in (3, 4, 5):
        assert exceptional_check("E7", q, q**34)
        assert exceptional_check("E7", q)  # built-in default
    with pytest.raises(MissingDataError):
        exceptional_check("E8", 2)
    assert exceptional_check("E8", 2, 2**100)
