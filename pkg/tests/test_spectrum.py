from fractions import Fraction

import pytest

from fusionrep.chartable import (ClassFunction, regular_character,
                                 trivial_character)
from fusionrep.cyclotomic import Cyclotomic, cyclotomic_polynomial
from fusionrep.errors import ConductorMismatch, FusionRepError
from fusionrep.fusion import build_fusion
from fusionrep.invariants import irreducible_invariants
from fusionrep.permgroup import build_group, make_hom
from fusionrep.spectrum import (CycPrime, PrimeSymbol, _polmod_mul,
                                _reduce_mod, format_poly, prime_symbols,
                                primes_above, residue_membership, symbol_leq)


def test_primes_above_small():
    assert [p.factor for p in primes_above(5, 4)] == [(2, 1), (3, 1)]
    ps = primes_above(3, 4)
    assert len(ps) == 1 and ps[0].factor == (1, 0, 1)
    ps = primes_above(7, 7)
    assert len(ps) == 1 and ps[0].factor == (6, 1)
    assert [p.factor for p in primes_above(2, 7)] \
        == [(1, 0, 1, 1), (1, 1, 0, 1)]
    for n in (1, 2):
        ps = primes_above(2, n)
        assert len(ps) == 1 and ps[0].factor == (1, 1)
    # inert case: order of 3 mod 7 is 6
    ps = primes_above(3, 7)
    assert len(ps) == 1 and len(ps[0].factor) == 7
    # split case: 29 = 1 mod 7
    ps = primes_above(29, 7)
    assert len(ps) == 6 and all(len(p.factor) == 2 for p in ps)


def test_primes_above_berlekamp():
    # 2 has order 147 mod 343, so Phi_343 mod 2 has two factors of
    # degree 147; far beyond the exhaustive search limit
    ps = primes_above(2, 343)
    assert len(ps) == 2
    assert all(len(p.factor) - 1 == 147 for p in ps)
    prod = _polmod_mul(ps[0].factor, ps[1].factor, 2)
    assert prod == _reduce_mod(cyclotomic_polynomial(343), 2)


def test_cycprime_guards():
    with pytest.raises(FusionRepError):
        CycPrime(4, 5, (1, 1))


def test_poset_z2():
    Z2 = build_group(2, ["(1 2)"], names=["g"])
    F = build_fusion(Z2, [])
    pos = prime_symbols(F, [2])
    assert len(pos.nodes) == 3
    assert len(pos.minimal()) == 2
    assert len(pos.edges) == 2
    assert pos.is_connected()


def test_poset_z3_connectivity():
    Z3 = build_group(3, ["(1 2 3)"], names=["g"])
    F = build_fusion(Z3, [])
    pos2 = prime_symbols(F, [2])
    assert len(pos2.nodes) == 6 and not pos2.is_connected()
    pos23 = prime_symbols(F, [2, 3])
    assert len(pos23.nodes) == 7 and pos23.is_connected()
    dot = pos23.to_dot()
    assert dot.startswith("digraph spectrum {") and "n0" in dot
    j = pos23.to_json()
    assert j["connected"] and len(j["nodes"]) == 7


def test_poset_klein_four():
    V4 = build_group(4, ["(1 2)(3 4)", "(1 3)(2 4)"], names=["x", "y"])
    xi, yi = V4.names["x"], V4.names["y"]
    F = build_fusion(V4, [make_hom(V4.full_subgroup(),
                                   (yi, V4.mul(xi, yi)))])
    k = len(F.element_classes())
    assert k == 2
    pos = prime_symbols(F, [2, 3])
    # 2 zero symbols + collapsed over the defining prime 2 + one symbol
    # per class over the single prime above 3 in Z
    assert len(pos.nodes) == 5
    assert pos.is_connected()
    assert len(pos.minimal()) == k
    pos3 = prime_symbols(F, [3])
    assert not pos3.is_connected()


def test_poset_onan(pipeline):
    P = pipeline("onan")
    F = P.fusion
    k = len(F.element_classes())
    assert k == 3
    pos = prime_symbols(F, [2, 7])
    assert len(pos.nodes) == 3 + 2 * 3 + 1
    assert pos.is_connected()
    assert pos.conductor == 7
    assert not prime_symbols(F, [2]).is_connected()


def test_conductor_order_mode():
    Z3 = build_group(3, ["(1 2 3)"], names=["g"])
    F = build_fusion(Z3, [])
    pos = prime_symbols(F, [3], conductor="order")
    assert pos.conductor == 3


def test_residue_membership(pipeline):
    P = pipeline("onan")
    F, S = P.fusion, P.group
    B = P.basis
    triv = trivial_character(S, 7)
    p7 = primes_above(7, 7)[0]
    sym7 = PrimeSymbol(F, p7, 0)
    assert not residue_membership(triv, sym7)
    for v in B.vectors:
        chi = v.character - triv.scale(v.degree())
        assert residue_membership(chi, sym7)
    reg = regular_character(S, 7)
    id_class = F.element_class_of()[S.identity]
    assert residue_membership(reg - triv.scale(343),
                              PrimeSymbol(F, CycPrime.zero(7), id_class))
    with pytest.raises(ConductorMismatch):
        residue_membership(
            ClassFunction(S, [Cyclotomic.rational(1, 14)]
                          * len(S.conjugacy_classes())), sym7)


def test_symbol_order(pipeline):
    P = pipeline("onan")
    F = P.fusion
    zero_syms = [PrimeSymbol(F, CycPrime.zero(7), x) for x in range(3)]
    p7 = primes_above(7, 7)[0]
    p2 = primes_above(2, 7)[0]
    sym7 = PrimeSymbol(F, p7, 0)
    s2 = PrimeSymbol(F, p2, 1)
    assert symbol_leq(zero_syms[1], s2)
    assert not symbol_leq(zero_syms[0], s2)
    assert all(symbol_leq(z, sym7) for z in zero_syms)
    assert not symbol_leq(s2, sym7)


def test_symbol_collapse_at_defining_prime(pipeline):
    P = pipeline("onan")
    F = P.fusion
    p7 = primes_above(7, 7)[0]
    assert PrimeSymbol(F, p7, 2) == PrimeSymbol(F, p7, 0)
    assert str(PrimeSymbol(F, p7, 0)).startswith("P[")


def test_format_poly():
    assert format_poly((1, 1, 0, 1)) == "t^3 + t + 1"
