"""Exact character tables of finite p-groups.

Irreducible characters are found by monomial induction: every irreducible of
a p-group is induced from a linear character of some subgroup H, and its
degree [G:H] satisfies [G:H]^2 <= |G|.  So only subgroups down to that index
bound are visited (walking maximal-subgroup chains), linear characters are
read off the abelianization H/[H,H], induced, and kept when their norm is 1.

Values live in Q(zeta_e) for e = exp(G); a table's rows are sorted by degree
and then by value vectors under the fixed total order on cyclotomic values,
so row indices are canonical.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd

from .cyclotomic import Cyclotomic, root_of_unity
from .errors import (
    ConductorMismatch,
    GroupMismatch,
    NotAPrimePowerGroup,
    NotASubgroup,
)
from .permgroup import (
    FiniteGroup,
    Subgroup,
    derived_subgroup,
    frattini_maximals,
    group_prime,
    p_part,
)


class ClassFunction:
    """A class function on a FiniteGroup: one value per conjugacy class."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        vals = tuple(values)
        if len(vals) != len(group.conjugacy_classes()):
            raise ValueError("one value per conjugacy class required")
        self.values = vals

    @property
    def conductor(self) -> int:
        return self.values[0].conductor

    def degree(self) -> Fraction:
        return self.values[0].as_rational()

    def value_at_element(self, i: int) -> Cyclotomic:
        return self.values[self.group.class_of()[i]]

    def _check(self, other: "ClassFunction"):
        if self.group is not other.group:
            raise GroupMismatch("class functions on different groups")
        if self.conductor != other.conductor:
            raise ConductorMismatch(
                f"conductors {self.conductor} and {other.conductor}; lift first"
            )

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group,
                             [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group,
                             [a - b for a, b in zip(self.values, other.values)])

    def scale(self, k) -> "ClassFunction":
        return ClassFunction(self.group, [v * k for v in self.values])

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [v.conjugate() for v in self.values])

    def lift(self, e: int) -> "ClassFunction":
        return ClassFunction(self.group, [v.lift(e) for v in self.values])

    def sort_key(self):
        return tuple(v.sort_key() for v in self.values)

    def to_json(self) -> dict:
        return {"values": [v.to_json() for v in self.values]}

    def __eq__(self, other):
        return (
            isinstance(other, ClassFunction)
            and self.group is other.group
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"ClassFunction({[str(v) for v in self.values]})"


class CharacterTable:
    """Canonically ordered irreducible characters of a p-group."""

    def __init__(self, group: FiniteGroup, irreducibles: tuple):
        self.group = group
        self.irreducibles = irreducibles

    def __len__(self):
        return len(self.irreducibles)

    def __getitem__(self, k) -> ClassFunction:
        return self.irreducibles[k]

    def degrees(self) -> tuple:
        return tuple(int(ch.degree()) for ch in self.irreducibles)

    def multiplicities(self, f: ClassFunction) -> tuple:
        return tuple(inner_product(f, ch) for ch in self.irreducibles)

    def to_json(self) -> dict:
        classes = self.group.conjugacy_classes()
        return {
            "order": self.group.order,
            "conductor": self.irreducibles[0].conductor if self.irreducibles else 1,
            "classes": [
                {
                    "size": len(c),
                    "representative": self.group.describe_element(c[0]),
                    "representative_order": self.group.element_orders()[c[0]],
                }
                for c in classes
            ],
            "characters": [
                {"degree": int(ch.degree()), "values": [v.to_json() for v in ch.values]}
                for ch in self.irreducibles
            ],
        }


def trivial_character(G: FiniteGroup, e: int = None) -> ClassFunction:
    e = e if e is not None else G.exponent()
    one = Cyclotomic.rational(1, e)
    return ClassFunction(G, [one] * len(G.conjugacy_classes()))


def regular_character(G: FiniteGroup, e: int = None) -> ClassFunction:
    e = e if e is not None else G.exponent()
    vals = [Cyclotomic.rational(G.order, e)] + [
        Cyclotomic.zero(e) for _ in G.conjugacy_classes()[1:]
    ]
    return ClassFunction(G, vals)


def inner_product(f: ClassFunction, g: ClassFunction) -> Fraction:
    """<f, g> = (1/|G|) sum |C| f(C) conj(g(C)); must come out rational."""
    f._check(g)
    classes = f.group.conjugacy_classes()
    total = Cyclotomic.zero(f.conductor)
    for c, fv, gv in zip(classes, f.values, g.values):
        if fv.is_zero() or gv.is_zero():
            continue
        total = total + fv * gv.conjugate() * len(c)
    return (total * Fraction(1, f.group.order)).as_rational()


def tensor(f: ClassFunction, g: ClassFunction) -> ClassFunction:
    f._check(g)
    return ClassFunction(f.group, [a * b for a, b in zip(f.values, g.values)])


def _subgroup_group(P: Subgroup) -> FiniteGroup:
    """Realize a Subgroup as its own FiniteGroup (cached on the Subgroup)."""
    cached = getattr(P, "_as_group", None)
    if cached is not None:
        return cached
    parent = P.parent
    elements = tuple(parent.elements[m] for m in P.members)
    gens = tuple(parent.elements[g] for g in P.gen_indices) or elements
    G = FiniteGroup(parent.degree, gens, elements)
    for name, idx in parent.names.items():
        if P.contains(idx):
            G.names.setdefault(name, G.index[parent.elements[idx]])
    P._as_group = G
    return G


def restrict(f: ClassFunction, P: Subgroup) -> ClassFunction:
    """Restriction to a subgroup of f's group, on P realized as a group."""
    if P.parent is not f.group:
        raise GroupMismatch("subgroup of a different group")
    H = _subgroup_group(P)
    parent = f.group
    vals = []
    for c in H.conjugacy_classes():
        rep_perm = H.elements[c[0]]
        vals.append(f.value_at_element(parent.index[rep_perm]))
    return ClassFunction(H, vals)


def induce(f: ClassFunction, H: Subgroup) -> ClassFunction:
    """Induction from a subgroup H (f lives on H realized as a group)."""
    G = H.parent
    HG = _subgroup_group(H)
    if f.group is not HG:
        raise GroupMismatch("class function does not live on the given subgroup")
    e = G.exponent()
    e = e * f.conductor // gcd(e, f.conductor)
    fv = [f.value_at_element(k).lift(e) for k in range(HG.order)]
    # left transversal of H in G
    covered = set()
    transversal = []
    for i in range(G.order):
        if i in covered:
            continue
        transversal.append(i)
        for m in H.members:
            covered.add(G.mul(i, m))
    vals = []
    inv = G.inv_array()
    for c in G.conjugacy_classes():
        g = c[0]
        acc = Cyclotomic.zero(e)
        for t in transversal:
            x = G.mul(G.mul(int(inv[t]), g), t)
            if H.contains(x):
                acc = acc + fv[HG.index[G.elements[x]]]
        vals.append(acc)
    return ClassFunction(G, vals)


# --- linear characters of a subgroup ------------------------------------------

def _abelian_basis(reps: list, qmul, qid, qorder) -> list:
    """Independent generators [(rep, order)] of a finite abelian p-group
    given by coset representatives; recursion through the quotient by the
    element of maximal order."""
    if len(reps) == 1:
        return []
    g = min(reps, key=lambda r: (-qorder(r), r))
    og = qorder(g)
    pow_of = {}
    acc = qid
    for k in range(og):
        pow_of[acc] = k
        acc = qmul(acc, g)
    # quotient by <g>
    rep2 = {}
    for r in reps:
        if r in rep2:
            continue
        block = []
        acc = r
        for _ in range(og):
            block.append(acc)
            acc = qmul(acc, g)
        rep = min(block)
        for b in block:
            rep2[b] = rep
    reps_q = sorted(set(rep2.values()))

    def qmul2(x, y):
        return rep2[qmul(x, y)]

    qid2 = rep2[qid]

    def qorder2(x):
        k = 1
        acc = x
        while acc != qid2:
            acc = qmul2(acc, x)
            k += 1
        return k

    sub = _abelian_basis(reps_q, qmul2, qid2, qorder2)
    out = [(g, og)]
    for h, oh in sub:
        # lift h to an element of true order oh: correct by a power of g
        z = qid
        for _ in range(oh):
            z = qmul(z, h)
        t = pow_of[z]  # h^oh = g^t with oh | t (og is maximal)
        corr = (og - t // oh) % og
        lifted = h
        for _ in range(corr):
            lifted = qmul(lifted, g)
        out.append((lifted, oh))
    return out


def _linear_characters(G: FiniteGroup, H: Subgroup, e: int) -> list:
    """All linear characters of H, as value lists aligned with H.members,
    values at conductor e (orders of abelianized elements divide e)."""
    D = derived_subgroup(G, H)
    dm = D.members
    rep_of = {}
    for m in H.members:
        if m in rep_of:
            continue
        block = sorted(G.mul(m, d) for d in dm)
        rep = block[0]
        for b in block:
            rep_of[b] = rep
    reps = sorted(set(rep_of.values()))
    qid = rep_of[G.identity]

    def qmul(x, y):
        return rep_of[G.mul(x, y)]

    def qorder(x):
        k = 1
        acc = x
        while acc != qid:
            acc = qmul(acc, x)
            k += 1
        return k

    basis = _abelian_basis(reps, qmul, qid, qorder)
    vec = {qid: ()}
    for idx, (b, ob) in enumerate(basis):
        grown = {}
        for r, v in vec.items():
            acc = r
            grown[r] = v + (0,)
            for k in range(1, ob):
                acc = qmul(acc, b)
                grown[acc] = v + (k,)
        vec = grown
    assert len(vec) == len(reps), "abelian decomposition failed"
    steps = [e // ob for _, ob in basis]
    chars = []
    for bvec in itertools.product(*[range(ob) for _, ob in basis]):
        exps = {
            r: sum(s * a * b for s, a, b in zip(steps, v, bvec)) % e
            for r, v in vec.items()
        }
        chars.append([root_of_unity(e, exps[rep_of[m]]) for m in H.members])
    return chars


def _index_bounded_subgroups(G: FiniteGroup, p: int) -> list:
    """Subgroups of index d with d^2 <= |G|, one per conjugacy class."""
    bound = 1
    while (bound * p) ** 2 <= G.order:
        bound *= p
    level = {frozenset(range(G.order)): G.full_subgroup()}
    chosen = dict(level)
    index = 1
    while index < bound:
        nxt = {}
        for sub in level.values():
            for m in frattini_maximals(G, sub, p):
                nxt.setdefault(m.key(), m)
        # keep one per G-conjugacy orbit (conjugate subgroups induce equal sets)
        seen = set()
        reduced = {}
        for key in sorted(nxt, key=lambda fs: sorted(fs)):
            if key in seen:
                continue
            orbit = {key}
            frontier = [key]
            while frontier:
                fs = frontier.pop()
                for g in G.gen_indices:
                    img = frozenset(G.conj(g, x) for x in fs)
                    if img not in orbit:
                        orbit.add(img)
                        frontier.append(img)
            seen |= orbit
            reduced[key] = nxt[key]
        for key, sub in reduced.items():
            chosen.setdefault(key, sub)
        # descending through class representatives suffices: a subgroup of a
        # conjugate maximal is conjugate to a subgroup of the representative
        level = reduced
        index *= p
    return [chosen[k] for k in sorted(chosen, key=lambda fs: (-len(fs), sorted(fs)))]


def character_table(G: FiniteGroup) -> CharacterTable:
    """The full irreducible character table of a p-group (cached on G)."""
    if G._chartable is not None:
        return G._chartable
    with G._lock:
        if G._chartable is not None:
            return G._chartable
        table = _compute_table(G)
        G._chartable = table
    return table


def _compute_table(G: FiniteGroup) -> CharacterTable:
    classes = G.conjugacy_classes()
    if G.order == 1:
        return CharacterTable(G, (trivial_character(G, 1),))
    p = group_prime(G)
    if p is None:
        raise NotAPrimePowerGroup(f"order {G.order} is not a prime power")
    e = G.exponent()
    found = {}
    for H in _index_bounded_subgroups(G, p):
        lin = _linear_characters(G, H, e)
        if H.order == G.order:
            for vals in lin:
                ch = ClassFunction(G, [vals[H.pos(c[0])] for c in classes])
                found.setdefault(tuple(ch.values), ch)
            continue
        for vals in lin:
            ch = induce(ClassFunction(_subgroup_group(H),
                                      _restrict_vals_to_classes(H, vals)), H)
            if inner_product(ch, ch) == 1:
                found.setdefault(tuple(ch.values), ch)
    chars = sorted(found.values(), key=lambda c: (c.degree(), c.sort_key()))
    if len(chars) != len(classes):
        raise NotAPrimePowerGroup(
            f"monomial search found {len(chars)} irreducibles, "
            f"expected {len(classes)}"
        )
    total = sum(int(c.degree()) ** 2 for c in chars)
    assert total == G.order, f"degree check failed: {total} != {G.order}"
    return CharacterTable(G, tuple(chars))


def _restrict_vals_to_classes(H: Subgroup, member_vals: list) -> list:
    HG = _subgroup_group(H)
    parent = H.parent
    out = []
    for c in HG.conjugacy_classes():
        rep_parent = parent.index[HG.elements[c[0]]]
        out.append(member_vals[H.pos(rep_parent)])
    return out
