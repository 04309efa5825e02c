"""Finite groups as multiplication tables, with derived invariants.

Elements are indices 0..order-1; the table is validated on construction
(Latin square, associativity, two-sided inverses).  Subgroups are plain
sorted index tuples inside the parent group.  All derived data (center,
classes, abelian decompositions, ...) is computed by brute-force scans,
which is exact and instant at the orders this package deals with (<= 64).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from hopfcensus.cyclotomic import CycNumber


class GroupError(ValueError):
    pass


class NotAbelianError(GroupError):
    pass


class NotAutomorphismActionError(GroupError):
    pass


class AmbiguousDegreesError(GroupError):
    """The degree-counting constraints admit more than one solution."""


MAX_GROUP_ORDER = 64


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, table, name: str = "", validate: bool = True):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.name = name or f"group{self.order}"
        if self.order > MAX_GROUP_ORDER:
            raise GroupError(f"order {self.order} exceeds supported bound {MAX_GROUP_ORDER}")
        ident = None
        for e in range(self.order):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(self.order)):
                ident = e
                break
        if ident is None:
            raise GroupError("no identity element")
        self.identity = ident
        if validate:
            self._validate()
        self._inv = tuple(self._find_inverse(g) for g in range(self.order))

    def _validate(self):
        n = self.order
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise GroupError("table is not a Latin square (row)")
        for c in range(n):
            if sorted(self.table[r][c] for r in range(n)) != list(range(n)):
                raise GroupError("table is not a Latin square (column)")
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")

    def _find_inverse(self, g: int) -> int:
        for h in range(self.order):
            if self.table[g][h] == self.identity == self.table[h][g]:
                return h
        raise GroupError(f"element {g} has no inverse")

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^{-1}."""
        return self.table[self.table[g][x]][self._inv[g]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            return self.power(self._inv[g], -k)
        result = self.identity
        base = g
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def element_order(self, g: int) -> int:
        x, n = g, 1
        while x != self.identity:
            x = self.table[x][g]
            n += 1
        return n

    def elements(self) -> range:
        return range(self.order)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"

    # -- derived invariants ---------------------------------------------------

    @cached_property
    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a))

    @cached_property
    def center(self) -> tuple[int, ...]:
        return tuple(g for g in range(self.order)
                     if all(self.table[g][x] == self.table[x][g]
                            for x in range(self.order)))

    def centralizer(self, g: int) -> tuple[int, ...]:
        return tuple(x for x in range(self.order)
                     if self.table[g][x] == self.table[x][g])

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.order
        classes = []
        for g in range(self.order):
            if seen[g]:
                continue
            cls = sorted({self.conjugate(x, g) for x in range(self.order)})
            for h in cls:
                seen[h] = True
            classes.append(tuple(cls))
        return tuple(classes)

    def subgroup_closure(self, gens) -> tuple[int, ...]:
        closed = {self.identity, *gens}
        frontier = list(closed)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(closed):
                    for c in (self.table[a][b], self.table[b][a], self._inv[a]):
                        if c not in closed:
                            closed.add(c)
                            nxt.append(c)
            frontier = nxt
        return tuple(sorted(closed))

    @cached_property
    def commutator_subgroup(self) -> tuple[int, ...]:
        comms = {self.table[self.table[a][b]][self.table[self._inv[a]][self._inv[b]]]
                 for a in range(self.order) for b in range(self.order)}
        return self.subgroup_closure(comms)

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        return (self.identity in s
                and all(self.table[a][b] in s for a in s for b in s))

    def is_normal(self, subset) -> bool:
        s = set(subset)
        return self.is_subgroup(s) and all(
            self.conjugate(g, x) in s for g in range(self.order) for x in s)

    def subgroup_as_group(self, subset, name: str = "") -> tuple["FiniteGroup", dict]:
        """The subgroup as a standalone group plus index map child -> parent."""
        subset = tuple(sorted(subset))
        pos = {g: i for i, g in enumerate(subset)}
        table = [[pos[self.table[a][b]] for b in subset] for a in subset]
        return FiniteGroup(table, name=name or f"{self.name}<{len(subset)}",
                           validate=False), dict(enumerate(subset))

    def quotient(self, normal_subset) -> tuple["FiniteGroup", list[int]]:
        """Quotient modulo a normal subgroup, plus the projection index list."""
        if not self.is_normal(normal_subset):
            raise GroupError("subset is not a normal subgroup")
        cosets: list[tuple[int, ...]] = []
        proj = [-1] * self.order
        for g in range(self.order):
            if proj[g] >= 0:
                continue
            coset = tuple(sorted(self.table[g][x] for x in normal_subset))
            idx = len(cosets)
            cosets.append(coset)
            for h in coset:
                proj[h] = idx
        table = [[proj[self.table[cosets[a][0]][cosets[b][0]]]
                  for b in range(len(cosets))] for a in range(len(cosets))]
        return FiniteGroup(table, name=f"{self.name}/N", validate=False), proj

    @cached_property
    def abelianization(self) -> "AbelianStructure":
        q, _ = self.quotient(self.commutator_subgroup)
        return abelian_decomposition(q).structure

    @cached_property
    def irreducible_degrees(self) -> tuple[int, ...]:
        """Multiset of irreducible complex representation degrees.

        Inferred by constrained counting: the number of linear characters is
        the order of the abelianization, the number of nonlinear ones is the
        remaining class count, their squares sum to the remaining order, and
        each degree divides the group order.  Raises AmbiguousDegreesError
        when these constraints admit more than one solution.
        """
        ell = math.prod(self.abelianization.invariant_factors) if \
            self.abelianization.invariant_factors else 1
        k = len(self.conjugacy_classes) - ell
        target = self.order - ell
        if k == 0:
            if target != 0:
                raise AmbiguousDegreesError("class count inconsistent with order")
            return (1,) * ell
        candidates = [d for d in range(2, self.order + 1)
                      if self.order % d == 0 and d * d <= target]
        solutions: list[tuple[int, ...]] = []

        def extend(prefix, start, remaining, slots):
            if slots == 0:
                if remaining == 0:
                    solutions.append(tuple(prefix))
                return
            for i in range(start, len(candidates)):
                d = candidates[i]
                if d * d * slots > remaining:
                    break  # entries are nondecreasing, so no later d fits
                prefix.append(d)
                extend(prefix, i, remaining - d * d, slots - 1)
                prefix.pop()

        extend([], 0, target, k)
        if len(solutions) != 1:
            raise AmbiguousDegreesError(
                f"{len(solutions)} degree multisets satisfy the constraints "
                f"for {self.name}")
        return (1,) * ell + solutions[0]


# -- abelian structure ------------------------------------------------------

@dataclass(frozen=True)
class AbelianStructure:
    """Invariant factors m_1 | m_2 | ... | m_k with product the group order."""
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        fs = self.invariant_factors
        for a, b in zip(fs, fs[1:]):
            if b % a != 0:
                raise GroupError(f"not a divisibility chain: {fs}")

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors) if self.invariant_factors else 1


@dataclass(frozen=True)
class AbelianDecomposition:
    """An abelian group with a chosen basis realizing its invariant factors.

    ``coords[g]`` are the exponents of g in the basis ``generators``;
    ``orders`` matches ``structure.invariant_factors`` (ascending chain).
    """
    group: FiniteGroup
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    coords: dict[int, tuple[int, ...]] = field(repr=False)

    @property
    def structure(self) -> AbelianStructure:
        return AbelianStructure(self.orders)

    def element_of(self, exponents) -> int:
        g = self.group.identity
        for e, x in zip(self.generators, exponents):
            g = self.group.mul(g, self.group.power(e, x))
        return g


def abelian_decomposition(a: FiniteGroup) -> AbelianDecomposition:
    if not a.is_abelian:
        raise NotAbelianError(f"{a.name} is not abelian")
    gens_desc: list[int] = []
    orders_desc: list[int] = []

    def peel(grp: FiniteGroup, lift_to_parent):
        """Extract a maximal-order generator, recurse on the quotient."""
        if grp.order == 1:
            return
        g = max(grp.elements(), key=lambda x: (grp.element_order(x), -x))
        m = grp.element_order(g)
        gens_desc.append(lift_to_parent(g))
        orders_desc.append(m)
        q, proj = grp.quotient(grp.subgroup_closure([g]))

        def lift_from_quotient(qe: int) -> int:
            candidates = [h for h in grp.elements() if proj[h] == qe]
            mq = q.element_order(qe)
            # Correct a lift h so that its order in grp equals its order in
            # the quotient: h^mq lands in <g>, say g^t, with mq | t, and
            # h * g^(-t/mq) is the corrected representative.
            h = min(candidates)
            hm = grp.power(h, mq)
            t = 0
            x = grp.identity
            while x != hm:
                x = grp.mul(x, g)
                t += 1
                if t > m:
                    raise GroupError("power of lift escaped the cyclic kernel")
            corrected = grp.mul(h, grp.power(grp.inv(g), t // mq))
            return lift_to_parent(corrected)

        peel(q, lift_from_quotient)

    peel(a, lambda x: x)
    generators = tuple(reversed(gens_desc))
    orders = tuple(reversed(orders_desc))

    coords: dict[int, tuple[int, ...]] = {}
    ranges = [range(m) for m in orders]
    for exps in itertools.product(*ranges):
        g = a.identity
        for e, x in zip(generators, exps):
            g = a.mul(g, a.power(e, x))
        if g in coords:
            raise GroupError("basis enumeration is not injective")
        coords[g] = exps
    if len(coords) != a.order:
        raise GroupError("basis does not span the group")
    return AbelianDecomposition(a, generators, orders, coords)


# -- constructions ----------------------------------------------------------

def build_cyclic(n: int) -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(table, name=f"Z{n}", validate=False)


def build_dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n; index d*n + i encodes r^i s^d."""
    order = 2 * n
    table = [[0] * order for _ in range(order)]
    for d1 in range(2):
        for i in range(n):
            for d2 in range(2):
                for j in range(n):
                    k = (i + j) % n if d1 == 0 else (i - j) % n
                    table[d1 * n + i][d2 * n + j] = ((d1 + d2) % 2) * n + k
    return FiniteGroup(table, name=f"D{n}", validate=False)


def build_quaternion() -> FiniteGroup:
    """Quaternion group of order 8; index d*4 + i encodes a^i b^d."""
    table = [[0] * 8 for _ in range(8)]
    for d1 in range(2):
        for i in range(4):
            for d2 in range(2):
                for j in range(4):
                    if d1 == 0:
                        k, d = (i + j) % 4, d2
                    else:
                        k, d = (i - j) % 4, (1 + d2) % 2
                        if d2 == 1:
                            k = (k + 2) % 4
                    table[d1 * 4 + i][d2 * 4 + j] = d * 4 + k
    return FiniteGroup(table, name="Q8", validate=False)


def build_symmetric(n: int) -> FiniteGroup:
    if n > 4:
        raise GroupError("symmetric groups supported up to n = 4")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms]
             for p in perms]
    return FiniteGroup(table, name=f"S{n}", validate=False)


def build_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    order_h = h.order
    table = [[0] * (g.order * order_h) for _ in range(g.order * order_h)]
    for a in range(g.order):
        for b in range(order_h):
            for c in range(g.order):
                for d in range(order_h):
                    table[a * order_h + b][c * order_h + d] = \
                        g.table[a][c] * order_h + h.table[b][d]
    return FiniteGroup(table, name=f"{g.name}x{h.name}", validate=False)


@dataclass(frozen=True)
class GroupAction:
    """An action of ``actor`` on the set 0..target_size-1."""
    actor: FiniteGroup
    target_size: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        t = self.table
        if len(t) != self.actor.order or any(len(r) != self.target_size for r in t):
            raise GroupError("action table has wrong shape")
        e = self.actor.identity
        if any(t[e][x] != x for x in range(self.target_size)):
            raise GroupError("identity does not act trivially")
        for a in range(self.actor.order):
            for b in range(self.actor.order):
                ab = self.actor.table[a][b]
                for x in range(self.target_size):
                    if t[ab][x] != t[a][t[b][x]]:
                        raise GroupError("action is not compatible with multiplication")

    def apply(self, g: int, x: int) -> int:
        return self.table[g][x]

    def is_by_automorphisms(self, target: FiniteGroup) -> bool:
        if target.order != self.target_size:
            return False
        for g in range(self.actor.order):
            row = self.table[g]
            for a in range(target.order):
                for b in range(target.order):
                    if row[target.table[a][b]] != target.table[row[a]][row[b]]:
                        return False
        return True


def action_from_generator_images(actor: FiniteGroup, target: FiniteGroup,
                                 images: dict[int, list[int]]) -> GroupAction:
    """Build a GroupAction from permutation images of some actor generators.

    ``images[g]`` is the permutation by which the actor element g acts.
    The remaining rows are filled in by composing along products; the usual
    compatibility checks run in the GroupAction constructor.
    """
    rows: dict[int, tuple[int, ...]] = {actor.identity: tuple(range(target.order))}
    for g, perm in images.items():
        rows[g] = tuple(perm)
    changed = True
    while changed and len(rows) < actor.order:
        changed = False
        for a in list(rows):
            for b in list(rows):
                ab = actor.table[a][b]
                if ab not in rows:
                    rows[ab] = tuple(rows[a][rows[b][x]] for x in range(target.order))
                    changed = True
    if len(rows) != actor.order:
        raise GroupError("generator images do not determine the action")
    return GroupAction(actor, target.order, tuple(rows[g] for g in range(actor.order)))


def build_semidirect(n: FiniteGroup, q: FiniteGroup, act: GroupAction) -> FiniteGroup:
    """Semidirect product N x| Q with (n,q)(n',q') = (n * (q . n'), q q')."""
    if act.actor is not q and act.actor.table != q.table:
        raise NotAutomorphismActionError("action's actor is not the quotient factor")
    if not act.is_by_automorphisms(n):
        raise NotAutomorphismActionError("action is not by automorphisms of the kernel")
    size = n.order * q.order
    table = [[0] * size for _ in range(size)]
    for a in range(n.order):
        for b in range(q.order):
            for c in range(n.order):
                for d in range(q.order):
                    table[a * q.order + b][c * q.order + d] = \
                        n.table[a][act.apply(b, c)] * q.order + q.table[b][d]
    return FiniteGroup(table, name=f"{n.name}:{q.name}")


# -- characters of abelian groups --------------------------------------------

class GroupCharacter:
    """A homomorphism from an abelian group to roots of unity."""

    def __init__(self, decomp: AbelianDecomposition, exponents: tuple[int, ...]):
        self.decomp = decomp
        self.exponents = tuple(e % m for e, m in zip(exponents, decomp.orders))

    def __call__(self, g: int) -> CycNumber:
        value = CycNumber.one()
        for e, m, x in zip(self.exponents, self.decomp.orders,
                           self.decomp.coords[g]):
            if e and x:
                value = value * CycNumber.root_of_unity(m, e * x)
        return value

    def __mul__(self, other: "GroupCharacter") -> "GroupCharacter":
        assert self.decomp is other.decomp
        return GroupCharacter(self.decomp,
                              tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def inverse(self) -> "GroupCharacter":
        return GroupCharacter(self.decomp, tuple(-e for e in self.exponents))

    def order(self) -> int:
        result = 1
        for e, m in zip(self.exponents, self.decomp.orders):
            if e:
                result = math.lcm(result, m // math.gcd(m, e))
        return result

    def __eq__(self, other):
        return (isinstance(other, GroupCharacter)
                and self.decomp is other.decomp
                and self.exponents == other.exponents)

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"GroupCharacter{self.exponents}"


def character_group(a: FiniteGroup) -> list[GroupCharacter]:
    """All |A| characters of an abelian group, in lexicographic order."""
    decomp = abelian_decomposition(a)
    return [GroupCharacter(decomp, exps)
            for exps in itertools.product(*[range(m) for m in decomp.orders])]


def hom_lambda2_order(structure: AbelianStructure) -> int:
    """Number of alternating bicharacters on the group: prod gcd(m_i, m_j)."""
    fs = structure.invariant_factors
    return math.prod(math.gcd(fs[i], fs[j])
                     for i in range(len(fs)) for j in range(i + 1, len(fs)))


# -- alternating bicharacters -------------------------------------------------

@dataclass(frozen=True)
class AltBicharacter:
    """An alternating bicharacter on an abelian group with a chosen basis.

    ``values[i][j]`` is the value on the (i, j) basis pair; diagonal 1,
    values[i][j] * values[j][i] = 1, and each value is a root of unity of
    order dividing gcd(orders[i], orders[j]).  Evaluation on arbitrary
    elements extends bimultiplicatively.
    """
    orders: tuple[int, ...]
    values: tuple[tuple[CycNumber, ...], ...]

    def __post_init__(self):
        k = len(self.orders)
        one = CycNumber.one()
        if len(self.values) != k or any(len(r) != k for r in self.values):
            raise GroupError("bicharacter matrix has wrong shape")
        for i in range(k):
            if self.values[i][i] != one:
                raise GroupError("bicharacter is not alternating on the diagonal")
            for j in range(k):
                if self.values[i][j] * self.values[j][i] != one:
                    raise GroupError("bicharacter is not antisymmetric")
                g = math.gcd(self.orders[i], self.orders[j])
                if self.values[i][j] ** g != one:
                    raise GroupError("bicharacter value has wrong order")

    @staticmethod
    def trivial(orders) -> "AltBicharacter":
        one = CycNumber.one()
        k = len(orders)
        return AltBicharacter(tuple(orders),
                              tuple(tuple(one for _ in range(k)) for _ in range(k)))

    @staticmethod
    def nondegenerate_rank2(m: int) -> "AltBicharacter":
        """The standard symplectic bicharacter on Z_m x Z_m."""
        one = CycNumber.one()
        z = CycNumber.root_of_unity(m, 1)
        return AltBicharacter((m, m), ((one, z), (z.inv(), one)))

    def evaluate(self, x, y) -> CycNumber:
        value = CycNumber.one()
        k = len(self.orders)
        for i in range(k):
            if not x[i]:
                continue
            for j in range(k):
                if y[j] and self.values[i][j] != CycNumber.one():
                    value = value * self.values[i][j] ** (x[i] * y[j])
        return value

    def is_trivial(self) -> bool:
        one = CycNumber.one()
        return all(v == one for row in self.values for v in row)

    def value_order(self) -> int:
        """lcm of the multiplicative orders of the defining values."""
        result = 1
        one = CycNumber.one()
        for i, row in enumerate(self.values):
            for j, v in enumerate(row):
                if v == one:
                    continue
                g = math.gcd(self.orders[i], self.orders[j])
                for d in range(1, g + 1):
                    if v ** d == one:
                        result = math.lcm(result, d)
                        break
        return result


def precompose_character_exponents(decomp: AbelianDecomposition,
                                   perm) -> "dict[tuple, tuple]":
    """The map x -> x o pi on character exponent tuples, for an automorphism
    pi of the group given as an element permutation.

    (x o pi)(gen_j) = x(pi(gen_j)) = prod_l zeta_{m_l}^{t_l c_l} with
    c = coords(pi(gen_j)); the exponent on gen_j is the matching power of
    zeta_{m_j}, which is integral exactly because x o pi is a character.
    """
    orders = decomp.orders
    k = len(orders)
    images = [decomp.coords[perm[e]] for e in decomp.generators]
    out = {}
    for t in itertools.product(*[range(m) for m in orders]):
        new = []
        for j in range(k):
            frac = Fraction(0)
            for l in range(k):
                if t[l] and images[j][l]:
                    frac += Fraction(t[l] * images[j][l], orders[l])
            y = frac * orders[j]
            if y.denominator != 1:
                raise GroupError("permutation is not an automorphism")
            new.append(int(y) % orders[j])
        out[t] = tuple(new)
    return out


def dual_action(decomp: AbelianDecomposition, act: GroupAction) -> GroupAction:
    """Transport an action on A to the contragredient action on its characters.

    Characters are indexed lexicographically by exponent tuple, matching
    ``character_group``; the actor element g sends x to x o g^{-1}.
    """
    if not act.is_by_automorphisms(decomp.group):
        raise NotAutomorphismActionError("action is not by automorphisms")
    orders = decomp.orders
    exp_tuples = list(itertools.product(*[range(m) for m in orders]))
    index = {t: i for i, t in enumerate(exp_tuples)}
    rows = []
    for g in range(act.actor.order):
        ginv = act.actor.inv(g)
        perm = [act.apply(ginv, a) for a in range(decomp.group.order)]
        mapping = precompose_character_exponents(decomp, perm)
        rows.append(tuple(index[mapping[t]] for t in exp_tuples))
    return GroupAction(act.actor, len(exp_tuples), tuple(rows))


def bichar_action_scalar(b: AltBicharacter, act: GroupAction,
                         g: int) -> int | None:
    """Exponent class t with B(g.x, g.y) = B(x, y)^t on all basis pairs.

    The action must be the contragredient action on the character group,
    indexed as in ``dual_action``.  Returns the smallest t in 1..order of
    the bicharacter's values, or None when no single exponent works.
    The class is invariant exactly when t = 1 modulo that order.
    """
    orders = b.orders
    exp_tuples = list(itertools.product(*[range(m) for m in orders]))
    index = {t: i for i, t in enumerate(exp_tuples)}
    k = len(orders)

    def basis_tuple(i):
        t = [0] * k
        t[i] = 1
        return tuple(t)

    moved = []
    for i in range(k):
        img_idx = act.apply(g, index[basis_tuple(i)])
        moved.append(exp_tuples[img_idx])
    order = b.value_order()
    for t in range(1, order + 1):
        ok = True
        for i in range(k):
            for j in range(i + 1, k):
                if b.evaluate(moved[i], moved[j]) != b.values[i][j] ** t:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return t
    return None


# -- built-in registry --------------------------------------------------------

def _build_g12() -> FiniteGroup:
    """Order-12 semidirect product of Z_3 by the Klein group, both reflections
    acting by inversion."""
    f = build_cyclic(3)
    gamma = build_product(build_cyclic(2), build_cyclic(2))
    inversion = [0, 2, 1]
    act = action_from_generator_images(
        gamma, f, {1: inversion, 2: inversion})
    g = build_semidirect(f, gamma, act)
    g.name = "G12"
    return g


def _build_g18() -> FiniteGroup:
    """Order-18 semidirect product of Z_3 x Z_3 by Z_2, inverting the first
    factor and fixing the second."""
    gamma = build_product(build_cyclic(3), build_cyclic(3))
    f = build_cyclic(2)
    # gamma index = 3*s + t; the actor inverts s and fixes t.
    perm = [3 * ((3 - s) % 3) + t for s in range(3) for t in range(3)]
    act = action_from_generator_images(f, gamma, {1: perm})
    g = build_semidirect(gamma, f, act)
    g.name = "G18"
    return g


BUILTIN_GROUPS = {
    "Z2": lambda: build_cyclic(2),
    "Z3": lambda: build_cyclic(3),
    "Z4": lambda: build_cyclic(4),
    "Z2xZ2": lambda: build_product(build_cyclic(2), build_cyclic(2)),
    "S3": lambda: build_symmetric(3),
    "D4": lambda: build_dihedral(4),
    "Q8": build_quaternion,
    "D3xD3": lambda: build_product(build_dihedral(3), build_dihedral(3)),
    "G12": _build_g12,
    "G18": _build_g18,
}


def builtin_group(name: str) -> FiniteGroup:
    try:
        g = BUILTIN_GROUPS[name]()
    except KeyError:
        raise GroupError(f"unknown group name {name!r}; "
                         f"known: {', '.join(sorted(BUILTIN_GROUPS))}") from None
    g.name = name
    return g


def group_from_json(spec) -> FiniteGroup:
    """Recursive group spec: {"construct": ..., args...} or a builtin name."""
    if isinstance(spec, str):
        return builtin_group(spec)
    kind = spec["construct"]
    if kind == "cyclic":
        return build_cyclic(int(spec["n"]))
    if kind == "dihedral":
        return build_dihedral(int(spec["n"]))
    if kind == "quaternion":
        return build_quaternion()
    if kind == "symmetric":
        return build_symmetric(int(spec["n"]))
    if kind == "product":
        return build_product(group_from_json(spec["left"]),
                             group_from_json(spec["right"]))
    if kind == "semidirect":
        n = group_from_json(spec["kernel"])
        q = group_from_json(spec["quotient"])
        act = GroupAction(q, n.order, tuple(tuple(r) for r in spec["action"]))
        return build_semidirect(n, q, act)
    raise GroupError(f"unknown construct {kind!r}")
