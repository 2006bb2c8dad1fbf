import pytest

from fusionrep.errors import (EvenPrime, NotAHomomorphism, NotAPermutation,
                              NotInjective, OrderCapExceeded)
from fusionrep.permgroup import (build_group, core_p, coset_action,
                                 derived_subgroup, extraspecial_p3,
                                 format_cycles, frattini_maximals, make_hom,
                                 parse_cycles, sylow_subgroup)


def test_parse_cycles():
    assert parse_cycles("(1 2)(3 4)", 4) == (1, 0, 3, 2)
    assert parse_cycles("()", 3) == (0, 1, 2)
    with pytest.raises(NotAPermutation):
        parse_cycles("(1 2", 2)
    with pytest.raises(NotAPermutation):
        parse_cycles("(1 1)", 2)
    with pytest.raises(NotAPermutation):
        parse_cycles("(1 5)", 4)


def test_format_cycles_roundtrip():
    p = parse_cycles("(1 3 2)(4 5)", 6)
    assert parse_cycles(format_cycles(p), 6) == p
    assert format_cycles((0, 1, 2)) == "()"


def test_klein_four():
    V4 = build_group(4, ["(1 2)(3 4)", "(1 3)(2 4)"], names=["x", "y"])
    assert V4.order == 4
    assert V4.identity == 0
    assert sorted(V4.element_orders()) == [1, 2, 2, 2]
    assert V4.name_of(V4.names["x"]) == "x"
    assert V4.describe_element(V4.identity) == "()"


def test_cyclic_nine():
    G = build_group(9, ["(1 2 3 4 5 6 7 8 9)"], names=["s"])
    assert G.order == 9
    assert G.exponent() == 9
    s = G.names["s"]
    assert G.power(s, 9) == G.identity
    assert G.power(s, -1) == G.inv(s)
    assert len(G.conjugacy_classes()) == 9


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        build_group(9, ["(1 2 3 4 5 6 7 8 9)"], cap=5)


def test_extraspecial_basics():
    for p in (3, 5, 7):
        S = extraspecial_p3(p)
        assert S.order == p ** 3
        assert S.exponent() == p
        Z = S.center()
        assert Z.order == p
        assert S.names["c"] in Z.members
        a, b, c = S.names["a"], S.names["b"], S.names["c"]
        # [a, b] = c is the defining relation
        comm = S.mul(S.mul(S.inv(a), S.inv(b)), S.mul(a, b))
        assert comm in (c, S.inv(c)) or comm in Z.members
        assert comm != S.identity
    with pytest.raises(EvenPrime):
        extraspecial_p3(2)


def test_extraspecial_structure():
    S = extraspecial_p3(7)
    assert len(S.conjugacy_classes()) == 55
    maxs = frattini_maximals(S, S.full_subgroup(), 7)
    assert len(maxs) == 8 and all(m.order == 49 for m in maxs)
    assert derived_subgroup(S, S.full_subgroup()).order == 7
    Q, proj = coset_action(S, S.center())
    assert Q.order == 49
    assert proj[S.identity] == Q.identity
    a, b = S.names["a"], S.names["b"]
    assert proj[S.mul(a, b)] == Q.mul(proj[a], proj[b])
    assert len(S.all_subgroups()) == 67


def test_sl2_f3_sylow_core():
    import itertools
    vecs = [v for v in itertools.product(range(3), repeat=2) if v != (0, 0)]
    vi = {v: i for i, v in enumerate(vecs)}

    def mat_perm(m):
        return tuple(vi[((m[0][0] * v[0] + m[0][1] * v[1]) % 3,
                         (m[1][0] * v[0] + m[1][1] * v[1]) % 3)]
                     for v in vecs)

    G = build_group(8, [mat_perm([[1, 1], [0, 1]]),
                        mat_perm([[0, -1], [1, 0]])])
    assert G.order == 24
    assert sylow_subgroup(G, 2).order == 8
    assert core_p(G, 2).order == 8
    assert core_p(G, 3).order == 1


def test_make_hom_guards():
    Z3 = build_group(3, ["(1 2 3)"], names=["s"])
    s = Z3.names["s"]
    phi = make_hom(Z3.full_subgroup(), (Z3.power(s, 2),))
    assert phi.apply(s) == Z3.power(s, 2)
    assert phi.apply(Z3.identity) == Z3.identity
    with pytest.raises(NotAHomomorphism):
        Z2 = build_group(2, ["(1 2)"], names=["t"])
        make_hom(Z3.full_subgroup(), (Z2.names["t"],), codomain=Z2,
                 require_injective=False)
    with pytest.raises(NotInjective):
        make_hom(Z3.full_subgroup(), (Z3.identity,))


def test_subgroup_closure():
    S = extraspecial_p3(3)
    a, c = S.names["a"], S.names["c"]
    H = S.subgroup((a, c))
    assert H.order == 9
    assert H.contains(S.mul(a, c))
    assert not H.contains(S.names["b"])
