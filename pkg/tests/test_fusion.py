import pytest

from fusionrep.errors import NotCentral, SaturationCapExceeded
from fusionrep.fusion import build_fusion, quotient_fusion
from fusionrep.permgroup import build_group, extraspecial_p3, make_hom


def sigma3():
    Z3 = build_group(3, ["(1 2 3)"], names=["s"])
    s = Z3.names["s"]
    return Z3, build_fusion(Z3, [make_hom(Z3.full_subgroup(),
                                          (Z3.power(s, 2),))])


def a4_fusion():
    V4 = build_group(4, ["(1 2)(3 4)", "(1 3)(2 4)"], names=["x", "y"])
    x, y = V4.names["x"], V4.names["y"]
    rot = make_hom(V4.full_subgroup(), (y, V4.mul(x, y)))
    return V4, build_fusion(V4, [rot])


def test_sigma3_classes():
    Z3, F = sigma3()
    assert F.element_classes() == ((0,), (1, 2))
    assert F.check_saturation().ok


def test_trivial_fusion_is_conjugation():
    S = extraspecial_p3(3)
    F = build_fusion(S, [])
    assert F.element_classes() == tuple(
        sorted(S.conjugacy_classes(), key=lambda c: c[0]))
    ms = F.morphism_closure([S.full_subgroup()])
    assert len(ms) == S.order // S.center().order


def test_a4_fusion():
    V4, F = a4_fusion()
    cls = F.element_classes()
    assert len(cls) == 2 and len(cls[1]) == 3
    ms = F.morphism_closure([V4.full_subgroup()])
    assert len(ms.aut(0)) == 3
    assert F.is_centric(V4.full_subgroup())
    assert not F.is_centric(V4.subgroup((V4.names["x"],)))
    assert F.is_radical(V4.full_subgroup())
    rep = F.check_saturation()
    assert rep.ok, rep.violations


def test_unsaturated_axiom_one():
    Z9 = build_group(9, ["(1 2 3 4 5 6 7 8 9)"], names=["s"])
    s = Z9.names["s"]
    F = build_fusion(Z9, [make_hom(Z9.full_subgroup(), (Z9.power(s, 4),))])
    rep = F.check_saturation()
    assert not rep.ok
    assert len(rep.violations) == 1 and "axiom I" in rep.violations[0]


def test_unsaturated_axiom_two():
    P2 = build_group(6, ["(1 2 3)", "(4 5 6)"], names=["x", "y"])
    assert P2.order == 9
    x = P2.names["x"]
    L = P2.subgroup((x,))
    F = build_fusion(P2, [make_hom(L, (P2.power(x, 2),))])
    rep = F.check_saturation()
    assert not rep.ok
    assert any("axiom II" in v for v in rep.violations)


def test_saturation_cap():
    S = extraspecial_p3(7)
    F = build_fusion(S, [])
    with pytest.raises(SaturationCapExceeded):
        F.check_saturation()


def test_quotient_fusion():
    Q8 = build_group(8, ["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"],
                     names=["i", "j"])
    i, j = Q8.names["i"], Q8.names["j"]
    tau = make_hom(Q8.full_subgroup(), (j, Q8.mul(i, j)))
    F = build_fusion(Q8, [tau])
    assert len(F.element_classes()) == 3
    A = Q8.center()
    assert A.order == 2
    Fq = quotient_fusion(F, A)
    cls = Fq.element_classes()
    assert len(cls) == 2 and len(cls[1]) == 3
    assert Fq.check_saturation().ok
    assert F.check_saturation().ok
    # projection maps Q8 onto the quotient
    assert len(Fq.projection) == Q8.order
    assert Fq.projection[Q8.identity] == Fq.S.identity
    with pytest.raises(NotCentral):
        quotient_fusion(F, Q8.subgroup((i,)))


def test_onan_element_classes(pipeline):
    P = pipeline("onan")
    F, S = P.fusion, P.group
    cls = F.element_classes()
    sizes = tuple(len(c) for c in cls)
    assert sizes == (1, 174, 168)
    a, b, c = S.names["a"], S.names["b"], S.names["c"]
    k = F.element_class_of()
    ab = S.mul(a, b)
    ab2 = S.mul(a, S.power(b, 2))
    assert k[c] == k[b] == k[a] == k[ab] == 1
    assert k[ab2] == 2


def test_onan_subgroup_classes(pipeline):
    P = pipeline("onan")
    F, S = P.fusion, P.group
    A0 = P.subgroups["A0"]
    A1 = P.subgroups["A1"]
    assert len(F.subgroup_class(A0)) == 2
    assert len(F.subgroup_class(A1)) == 2
    ms = F.morphism_closure([A0])
    assert len(ms.aut(0)) == 672
    assert F.is_centric(A0) and F.is_radical(A0)
    assert F.is_centric(S.full_subgroup())
    assert not F.is_centric(S.center())


def test_fusion_stores_generators():
    V4, F = a4_fusion()
    assert len(F.generators) == 1
    Z3, F3 = sigma3()
    assert len(F3.generators) == 1
