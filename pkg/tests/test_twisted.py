import pytest

from fusionrep.chartable import character_table
from fusionrep.cyclotomic import Cyclotomic, root_of_unity
from fusionrep.errors import (BadSection, GeneratorMovesA, InvalidCocycle,
                              NotCentral, NotCyclicKernel, QuotientMismatch)
from fusionrep.fusion import build_fusion
from fusionrep.invariants import irreducible_invariants
from fusionrep.permgroup import build_group, make_hom
from fusionrep.ringpres import structure_constants
from fusionrep.twisted import (Cocycle, a_representations, central_extension,
                               cocycle_from_extension, completed_module,
                               extension_from_groups, in_twisted_monoid,
                               module_structure, trivial_cocycle,
                               twisted_covering, twisted_invariant_basis,
                               validate_cocycle, validate_twisted_table)

QTABLE = [
    [0, 0, 0, 0],
    [0, 1, 0, 1],
    [0, 1, 1, 0],
    [0, 0, 1, 1],
]


@pytest.fixture(scope="module")
def quaternion_setup():
    V4 = build_group(4, [(1, 0, 3, 2), (2, 3, 0, 1)], names=["x", "y"])
    alpha = Cocycle(V4, 2, QTABLE)
    E = central_extension(V4, alpha)
    return V4, alpha, E


def test_cocycle_validation(quaternion_setup):
    V4, alpha, _ = quaternion_setup
    assert validate_cocycle(alpha) == []
    bad = Cocycle(V4, 2, [[0, 0, 0, 0], [1, 1, 0, 1],
                          [0, 1, 1, 0], [0, 0, 1, 1]])
    assert validate_cocycle(bad) != []
    assert validate_cocycle(trivial_cocycle(V4, 2)) == []
    with pytest.raises(InvalidCocycle):
        central_extension(V4, bad)


def test_quaternion_extension(quaternion_setup):
    V4, alpha, E = quaternion_setup
    Q8 = E.group
    assert Q8.order == 8
    assert len(Q8.conjugacy_classes()) == 5
    assert sum(1 for o in Q8.element_orders() if o == 2) == 1
    assert E.projection.apply(E.a_gen) == V4.identity
    assert all(E.projection.apply(E.section[s]) == s for s in range(4))
    assert cocycle_from_extension(E) == alpha


def test_cyclic_four_extension():
    Z2 = build_group(2, [(1, 0)], names=["g"])
    aZ = Cocycle(Z2, 2, [[0, 0], [0, 1]])
    EZ = central_extension(Z2, aZ)
    assert EZ.group.order == 4
    assert max(EZ.group.element_orders()) == 4
    assert cocycle_from_extension(EZ) == aZ
    E0 = central_extension(Z2, trivial_cocycle(Z2, 2))
    assert max(E0.group.element_orders()) == 2


def test_extension_from_groups(quaternion_setup):
    V4, alpha, E = quaternion_setup
    Q8 = E.group
    E2 = extension_from_groups(Q8, E.a_gen, E.projection)
    assert cocycle_from_extension(E2) == alpha
    with pytest.raises(NotCyclicKernel):
        extension_from_groups(Q8, Q8.identity, E.projection)
    xi = V4.names["x"]
    with pytest.raises(NotCentral):
        extension_from_groups(Q8, E.section[xi], E.projection)
    S3 = build_group(3, [(1, 2, 0), (1, 0, 2)], names=["r", "t"])
    Z2b = build_group(2, [(1, 0)])
    sgn = make_hom(S3.full_subgroup(), (Z2b.identity, 1 - Z2b.identity),
                   codomain=Z2b, require_injective=False)
    with pytest.raises(NotCentral):
        extension_from_groups(S3, S3.names["r"], sgn)


def test_sections(quaternion_setup):
    V4, alpha, E = quaternion_setup
    Q8 = E.group
    xi, yi = V4.names["x"], V4.names["y"]
    xyi = V4.mul(xi, yi)
    with pytest.raises(BadSection):
        cocycle_from_extension(E, section=[1, E.section[xi],
                                           E.section[yi], E.section[xyi]])
    with pytest.raises(BadSection):
        cocycle_from_extension(E, section=[0, E.section[yi],
                                           E.section[yi], E.section[xyi]])
    alt = list(E.section)
    alt[xi] = Q8.mul(E.a_gen, alt[xi])
    alpha2 = cocycle_from_extension(E, section=alt)
    assert alpha2 != alpha
    assert validate_cocycle(alpha2) == []


def test_a_representations(quaternion_setup):
    V4, _, E = quaternion_setup
    ar = a_representations(E)
    tab = character_table(E.group)
    assert len(ar) == 1 and tab.degrees()[ar[0]] == 2
    rho = tab.irreducibles[ar[0]]
    assert rho.value_at_element(E.a_gen).coeffs[0] == -2
    # degrees of the a-representations square-sum to |base|
    assert sum(tab.degrees()[k] ** 2 for k in ar) == V4.order

    Z2 = build_group(2, [(1, 0)], names=["g"])
    EZ = central_extension(Z2, Cocycle(Z2, 2, [[0, 0], [0, 1]]))
    arZ = a_representations(EZ)
    tabZ = character_table(EZ.group)
    assert len(arZ) == 2
    assert sum(tabZ.degrees()[k] ** 2 for k in arZ) == 2
    E0 = central_extension(Z2, trivial_cocycle(Z2, 2))
    assert len(a_representations(E0)) == len(character_table(Z2).irreducibles)


def lifted_fusions(E):
    Q8 = E.group
    V4 = E.base
    zi, xq, yq = Q8.names["z"], Q8.names["x"], Q8.names["y"]
    tau = make_hom(Q8.full_subgroup(), (zi, yq, Q8.mul(xq, yq)))
    FQ = build_fusion(Q8, [tau])
    xi, yi = V4.names["x"], V4.names["y"]
    FA4 = build_fusion(V4, [make_hom(V4.full_subgroup(),
                                     (yi, V4.mul(xi, yi)))])
    return FQ, FA4


def test_twisted_basis(quaternion_setup):
    V4, _, E = quaternion_setup
    FQ, FA4 = lifted_fusions(E)
    ar = a_representations(E)
    TB = twisted_invariant_basis(E, FQ, base=FA4)
    assert len(TB.vectors) == 1
    assert TB.degrees() == (2,)
    assert TB.vectors[0].multiplicities[ar[0]] == 1
    assert twisted_covering(TB).ok
    assert in_twisted_monoid(TB, TB.vectors[0].multiplicities)
    badvec = [0] * len(character_table(E.group).irreducibles)
    badvec[0] = 1
    assert not in_twisted_monoid(TB, badvec)
    with pytest.raises(QuotientMismatch):
        twisted_invariant_basis(E, FQ, base=build_fusion(V4, []))


def test_generator_moving_kernel():
    V4 = build_group(4, [(1, 0, 3, 2), (2, 3, 0, 1)], names=["x", "y"])
    EE = central_extension(V4, trivial_cocycle(V4, 2))
    G8 = EE.group
    swap = make_hom(G8.full_subgroup(),
                    (G8.names["x"], G8.names["z"], G8.names["y"]))
    with pytest.raises(GeneratorMovesA):
        twisted_invariant_basis(EE, build_fusion(G8, [swap]))


def test_module_structure_and_completion(quaternion_setup):
    V4, _, E = quaternion_setup
    FQ, FA4 = lifted_fusions(E)
    B = irreducible_invariants(FA4)
    P = structure_constants(B)
    TB = twisted_invariant_basis(E, FQ, base=FA4)
    TM = module_structure(FA4, B, E, TB)
    assert TM.matrices == (((3,),),)
    CM = completed_module(TM, P)
    assert CM.kind == "finite"
    assert CM.free_rank == 1 and CM.torsion == ()
    assert CM.shifted == (((0,),),)
    assert CM.group_string() == "Z"
    assert str(CM).startswith("completed module: Z")


def test_trivial_cocycle_module():
    V4 = build_group(4, [(1, 0, 3, 2), (2, 3, 0, 1)], names=["x", "y"])
    xi, yi = V4.names["x"], V4.names["y"]
    FA4 = build_fusion(V4, [make_hom(V4.full_subgroup(),
                                     (yi, V4.mul(xi, yi)))])
    EE = central_extension(V4, trivial_cocycle(V4, 2))
    G8 = EE.group
    lift = make_hom(G8.full_subgroup(),
                    (G8.names["z"], G8.names["y"],
                     G8.mul(G8.names["x"], G8.names["y"])))
    FA4_lift = build_fusion(G8, [lift])
    TB0 = twisted_invariant_basis(EE, FA4_lift, base=FA4)
    assert TB0.degrees() == (1, 3)
    B = irreducible_invariants(FA4)
    TM0 = module_structure(FA4, B, EE, TB0)
    assert TM0.matrices == (((0, 3), (1, 2)),)
    # shifted chain keeps shrinking by a factor of 4, so no finite report
    CM0 = completed_module(TM0, structure_constants(B), cap=8)
    assert CM0.kind == "symbolic"
    assert CM0.group_string() == "(not stabilized)"
    assert "did not stabilize" in str(CM0)


def test_twisted_table_validation(quaternion_setup):
    _, _, E = quaternion_setup
    i4 = root_of_unity(4)
    one = Cyclotomic.rational(1, 4)
    zero = Cyclotomic.zero(4)
    mat_1 = ((one, zero), (zero, one))
    mat_i = ((i4, zero), (zero, -i4))
    mat_j = ((zero, one), (-one, zero))
    mat_k = ((zero, i4), (i4, zero))
    assert validate_twisted_table(E, [mat_1, mat_i, mat_j, mat_k]) == []
    assert validate_twisted_table(E, [mat_1, mat_i, mat_j, mat_j]) != []


def test_a4_sl23_fixture_pipeline(pipeline):
    P = pipeline("a4_sl23")
    E = P.extension
    assert E.group.order == 8
    TB = twisted_invariant_basis(E, P.fusion_alpha, base=P.fusion)
    assert TB.degrees() == (2,)
    B = P.basis
    TM = module_structure(P.fusion, B, E, TB)
    assert TM.matrices == (((3,),),)
    CM = completed_module(TM, structure_constants(B))
    assert CM.group_string() == "Z"
