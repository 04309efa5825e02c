"""Structure-constant Hopf algebras over exact cyclotomic scalars.

A HopfData stores the five structure tensors (multiplication, unit,
comultiplication, counit, antipode) densely over CycNumber, with sparse
comultiplication dictionaries for speed.  Everything here is exact; the
axiom verifier reports per-axiom pass/fail with the first violating
basis triple.

The module covers: group algebras and duals, the 8-dimensional
Kac-Paljutkin algebra, multiplicative characters and group-like
elements, the regular hit actions, one-dimensional Yetter-Drinfeld
pairs, Drinfeld-double types of finite groups, and comultiplication
twists by 2-cocycles lifted from abelian subgroups.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from hopfcensus.cyclotomic import MAX_CONDUCTOR, CycNumber, divisors
from hopfcensus.fusion import AlgebraTypeSignature
from hopfcensus.groups import (AltBicharacter, FiniteGroup, GroupError,
                               abelian_decomposition,
                               precompose_character_exponents)

ZERO = CycNumber.zero()
ONE = CycNumber.one()

MAX_TWIST_DIM = 40


class HopfError(ValueError):
    pass


class GeneratorsDoNotSpanError(HopfError):
    pass


class CandidateOutsideFieldError(HopfError):
    """A minimal-polynomial root falls outside the supported conductors."""


class NotAbelianSubgroupError(HopfError):
    pass


class NotNormalError(HopfError):
    pass


class TwistInvalidError(HopfError):
    pass


# -- small exact linear algebra ------------------------------------------------

def vec_scale(c, u):
    return tuple(c * a for a in u)


class LinearBasis:
    """Row-echelon span tracker over the cyclotomic field."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[tuple] = []
        self.pivots: list[int] = []

    def _reduce(self, vec):
        vec = list(vec)
        for row, p in zip(self.rows, self.pivots):
            if vec[p]:
                c = vec[p]
                for t in range(self.dim):
                    if row[t]:
                        vec[t] = vec[t] - c * row[t]
        return vec

    def contains(self, vec) -> bool:
        return all(not c for c in self._reduce(vec))

    def add(self, vec) -> bool:
        """Insert the vector; True if it enlarged the span."""
        red = self._reduce(vec)
        pivot = next((t for t in range(self.dim) if red[t]), None)
        if pivot is None:
            return False
        inv = red[pivot].inv()
        red = [c * inv for c in red]
        self.rows.append(tuple(red))
        self.pivots.append(pivot)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def solve_linear_multi(columns, rhs_list):
    """Solve sum_j x_j columns[j] = rhs for several rhs with one elimination.

    Returns a list of solutions (None entries for inconsistent systems).
    """
    m = len(columns[0]) if columns else len(rhs_list[0])
    k = len(columns)
    aug = [[columns[j][i] for j in range(k)] +
           [rhs[i] for rhs in rhs_list] for i in range(m)]
    pivots = []
    r = 0
    for c in range(k):
        pr = next((i for i in range(r, m) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = aug[r][c].inv()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                row_r = aug[r]
                aug[i] = [x if not row_r[t] else x - f * row_r[t]
                          for t, x in enumerate(aug[i])]
        pivots.append((r, c))
        r += 1
    pivot_rows = {pr for pr, _ in pivots}
    out = []
    for t in range(len(rhs_list)):
        col = k + t
        if any(aug[i][col] for i in range(m) if i not in pivot_rows):
            out.append(None)
            continue
        sol = [ZERO] * k
        for pr, c in pivots:
            sol[c] = aug[pr][col]
        out.append(tuple(sol))
    return out


def solve_linear(columns, rhs):
    """Solve sum_j x_j columns[j] = rhs exactly; None when inconsistent."""
    return solve_linear_multi(columns, [rhs])[0]


# -- HopfData -------------------------------------------------------------------

class HopfData:
    """A finite-dimensional Hopf algebra by structure constants."""

    def __init__(self, labels, mult, unit, comult, counit, antipode):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.mult = tuple(tuple(tuple(row) for row in plane) for plane in mult)
        self.unit = tuple(unit)
        self.comult = tuple(dict(d) for d in comult)
        self.counit = tuple(counit)
        self.antipode = tuple(tuple(row) for row in antipode)

    @cached_property
    def mult_sparse(self):
        return tuple(tuple(tuple((k, c) for k, c in enumerate(row) if c)
                           for row in plane) for plane in self.mult)

    # -- vector-level operations

    def basis_vector(self, i: int):
        return tuple(ONE if t == i else ZERO for t in range(self.dim))

    def vec_mul(self, u, v):
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in self.mult_sparse[i][j]:
                    out[k] = out[k] + ab * c
        return tuple(out)

    def vec_pow(self, u, n: int):
        out = self.unit
        for _ in range(n):
            out = self.vec_mul(out, u)
        return out

    def counit_of(self, u) -> CycNumber:
        total = ZERO
        for a, e in zip(u, self.counit):
            if a and e:
                total = total + a * e
        return total

    def antipode_of(self, u):
        out = [ZERO] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for k, c in enumerate(self.antipode[i]):
                if c:
                    out[k] = out[k] + a * c
        return tuple(out)

    def comult_of(self, u) -> dict:
        out: dict = {}
        for i, a in enumerate(u):
            if not a:
                continue
            for key, c in self.comult[i].items():
                acc = out.get(key, ZERO) + a * c
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return out

    # -- tensor helpers (elements of H (x) H as sparse {(i,j): scalar})

    def tensor_mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        ms = self.mult_sparse
        for (i, j), c in a.items():
            for (k, l), d in b.items():
                cd = c * d
                for p, x in ms[i][k]:
                    cx = cd * x
                    for q, y in ms[j][l]:
                        key = (p, q)
                        acc = out.get(key, ZERO) + cx * y
                        if acc:
                            out[key] = acc
                        elif key in out:
                            del out[key]
        return out

    def tensor3_mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        ms = self.mult_sparse
        for (i1, i2, i3), c in a.items():
            for (j1, j2, j3), d in b.items():
                cd = c * d
                for p, x in ms[i1][j1]:
                    for q, y in ms[i2][j2]:
                        xy = x * y
                        for s, z in ms[i3][j3]:
                            key = (p, q, s)
                            acc = out.get(key, ZERO) + cd * xy * z
                            if acc:
                                out[key] = acc
                            elif key in out:
                                del out[key]
        return out

    def unit_tensor(self) -> dict:
        out: dict = {}
        for i, a in enumerate(self.unit):
            if not a:
                continue
            for j, b in enumerate(self.unit):
                if b:
                    out[(i, j)] = a * b
        return out

    # -- serialization

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "mult": [[i, j, k, c.to_json()]
                     for i in range(self.dim) for j in range(self.dim)
                     for k, c in enumerate(self.mult[i][j]) if c],
            "comult": [[i, j, k, c.to_json()]
                       for i in range(self.dim)
                       for (j, k), c in sorted(self.comult[i].items())],
            "unit": [c.to_json() for c in self.unit],
            "counit": [c.to_json() for c in self.counit],
            "antipode": [[i, k, c.to_json()]
                         for i in range(self.dim)
                         for k, c in enumerate(self.antipode[i]) if c],
        }

    @staticmethod
    def from_json(data: dict) -> "HopfData":
        dim = int(data["dim"])
        mult = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for i, j, k, c in data["mult"]:
            mult[i][j][k] = CycNumber.from_json(c)
        comult = [dict() for _ in range(dim)]
        for i, j, k, c in data["comult"]:
            comult[i][(j, k)] = CycNumber.from_json(c)
        antipode = [[ZERO] * dim for _ in range(dim)]
        for i, k, c in data["antipode"]:
            antipode[i][k] = CycNumber.from_json(c)
        return HopfData(data["labels"], mult,
                        [CycNumber.from_json(c) for c in data["unit"]],
                        comult,
                        [CycNumber.from_json(c) for c in data["counit"]],
                        antipode)


# -- axiom verification -----------------------------------------------------------

@dataclass(frozen=True)
class HopfAxiomCheck:
    axiom: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class HopfReport:
    checks: tuple[HopfAxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"axiom": c.axiom, "passed": c.passed,
                            "detail": c.detail} for c in self.checks]}


def verify_hopf_axioms(h: HopfData) -> HopfReport:
    checks: list[HopfAxiomCheck] = []
    m = h.dim

    def add(axiom, bad, detail=""):
        checks.append(HopfAxiomCheck(axiom, bad is None,
                                     detail if bad is None else f"{detail}{bad}"))

    bad = None
    for i in range(m):
        ei = h.basis_vector(i)
        for j in range(m):
            prod = h.mult[i][j]
            for k in range(m):
                lhs = h.vec_mul(prod, h.basis_vector(k))
                rhs = h.vec_mul(ei, h.mult[j][k])
                if lhs != rhs:
                    bad = (i, j, k)
                    break
            if bad:
                break
        if bad:
            break
    add("associativity", bad, "first failure at ")

    bad = next((i for i in range(m)
                if h.vec_mul(h.unit, h.basis_vector(i)) != h.basis_vector(i)
                or h.vec_mul(h.basis_vector(i), h.unit) != h.basis_vector(i)),
               None)
    add("unit", bad, "unit law fails at basis element ")

    bad = None
    for i in range(m):
        left: dict = {}
        right: dict = {}
        for (j, k), c in h.comult[i].items():
            for (p, q), d in h.comult[j].items():
                key = (p, q, k)
                acc = left.get(key, ZERO) + c * d
                left[key] = acc
            for (p, q), d in h.comult[k].items():
                key = (j, p, q)
                acc = right.get(key, ZERO) + c * d
                right[key] = acc
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            bad = i
            break
    add("coassociativity", bad, "fails on basis element ")

    bad = None
    for i in range(m):
        lvec = [ZERO] * m
        rvec = [ZERO] * m
        for (j, k), c in h.comult[i].items():
            lvec[k] = lvec[k] + c * h.counit[j]
            rvec[j] = rvec[j] + c * h.counit[k]
        if tuple(lvec) != h.basis_vector(i) or tuple(rvec) != h.basis_vector(i):
            bad = i
            break
    add("counit", bad, "counit law fails at basis element ")

    bad = None
    if h.comult_of(h.unit) != {k: v for k, v in h.unit_tensor().items() if v}:
        bad = "unit"
    if bad is None and h.counit_of(h.unit) != ONE:
        bad = "counit(1)"
    if bad is None:
        for i in range(m):
            for j in range(m):
                if h.counit_of(h.mult[i][j]) != h.counit[i] * h.counit[j]:
                    bad = (i, j)
                    break
            if bad:
                break
    if bad is None:
        di = [h.comult[i] for i in range(m)]
        for i in range(m):
            for j in range(m):
                lhs = h.comult_of(h.mult[i][j])
                rhs = h.tensor_mul(di[i], di[j])
                if lhs != {k: v for k, v in rhs.items() if v}:
                    bad = (i, j)
                    break
            if bad:
                break
    add("bialgebra-compatibility", bad, "fails at ")

    bad = None
    for i in range(m):
        left = [ZERO] * m
        right = [ZERO] * m
        for (j, k), c in h.comult[i].items():
            sj = h.antipode[j]
            for t, x in enumerate(sj):
                if x:
                    cx = c * x
                    for p, y in h.mult_sparse[t][k]:
                        left[p] = left[p] + cx * y
            sk = h.antipode[k]
            for t, x in enumerate(sk):
                if x:
                    cx = c * x
                    for p, y in h.mult_sparse[j][t]:
                        right[p] = right[p] + cx * y
        expected = vec_scale(h.counit[i], h.unit)
        if tuple(left) != expected or tuple(right) != expected:
            bad = i
            break
    add("antipode", bad, "antipode axiom fails at basis element ")

    bad = next((i for i in range(m)
                if h.antipode_of(h.antipode[i]) != h.basis_vector(i)), None)
    add("antipode-squared-identity", bad, "S^2 differs from id at ")

    return HopfReport(tuple(checks))


# -- constructions -----------------------------------------------------------------

def from_group(g: FiniteGroup) -> HopfData:
    m = g.order
    mult = [[[ONE if k == g.table[i][j] else ZERO for k in range(m)]
             for j in range(m)] for i in range(m)]
    unit = [ONE if i == g.identity else ZERO for i in range(m)]
    comult = [{(i, i): ONE} for i in range(m)]
    counit = [ONE] * m
    antipode = [[ONE if k == g.inv(i) else ZERO for k in range(m)]
                for i in range(m)]
    labels = [f"g{i}" for i in range(m)]
    return HopfData(labels, mult, unit, comult, counit, antipode)


def dual(h: HopfData) -> HopfData:
    """The dual Hopf algebra: all five tensors transposed."""
    m = h.dim
    mult = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    for i in range(m):
        for (j, k), c in h.comult[i].items():
            mult[j][k][i] = c
    unit = list(h.counit)
    comult: list[dict] = [dict() for _ in range(m)]
    for i in range(m):
        for j in range(m):
            for k, c in h.mult_sparse[i][j]:
                comult[k][(i, j)] = comult[k].get((i, j), ZERO) + c
    counit = list(h.unit)
    antipode = [[h.antipode[k][i] for k in range(m)] for i in range(m)]
    labels = [f"{name}*" for name in h.labels]
    return HopfData(labels, mult, unit, comult, counit, antipode)


def build_h8() -> HopfData:
    """The nontrivial 8-dimensional semisimple Hopf algebra.

    Generators x, y, z with x^2 = y^2 = 1, xy = yx, zx = yz, zy = xz and
    z^2 = (1 + x + y - xy)/2; the comultiplication of z is
    ((1+y) (x) 1 + (1-y) (x) x)(z (x) z)/2.  Basis order is fixed as
    1, x, y, xy, z, xz, yz, xyz; all report values refer to it.
    """
    labels = ("1", "x", "y", "xy", "z", "xz", "yz", "xyz")
    half = CycNumber.from_rational(Fraction(1, 2))

    # Klein part: w = (a, b) encodes x^a y^b, index a + 2b ... use explicit map
    klein = [(0, 0), (1, 0), (0, 1), (1, 1)]
    kidx = {w: i for i, w in enumerate(klein)}

    def kmul(u, v):
        return ((u[0] + v[0]) % 2, (u[1] + v[1]) % 2)

    def sigma(w):  # conjugation by z swaps x and y
        return (w[1], w[0])

    m = 8
    mult = [[[ZERO] * m for _ in range(m)] for _ in range(m)]
    zsq = {(0, 0): half, (1, 0): half, (0, 1): half, (1, 1): -half}

    def index(w, d):
        return kidx[w] + 4 * d

    for w1 in klein:
        for d1 in (0, 1):
            for w2 in klein:
                for d2 in (0, 1):
                    i, j = index(w1, d1), index(w2, d2)
                    if d1 == 0:
                        mult[i][j][index(kmul(w1, w2), d2)] = ONE
                    elif d2 == 0:
                        mult[i][j][index(kmul(w1, sigma(w2)), 1)] = ONE
                    else:
                        base = kmul(w1, sigma(w2))
                        for w, c in zsq.items():
                            k = index(kmul(base, w), 0)
                            mult[i][j][k] = mult[i][j][k] + c
    unit = [ONE] + [ZERO] * 7
    counit = [ONE] * 8

    comult: list[dict] = [dict() for _ in range(m)]
    for w in klein:
        comult[index(w, 0)][(index(w, 0), index(w, 0))] = ONE
    # Delta(z) = (z (x) z + yz (x) z + z (x) xz - yz (x) xz)/2, then
    # Delta(wz) = (w (x) w) Delta(z).
    zz = {((0, 0), (0, 0)): half, ((0, 1), (0, 0)): half,
          ((0, 0), (1, 0)): half, ((0, 1), (1, 0)): -half}
    for w in klein:
        entry = {}
        for (u, v), c in zz.items():
            entry[(index(kmul(w, u), 1), index(kmul(w, v), 1))] = c
        comult[index(w, 1)] = entry

    # The antipode of a bialgebra is unique; with this multiplication and
    # comultiplication the antipode axiom forces S(z) = z, hence
    # S(w z) = S(z) S(w) = z w, which permutes the basis by w z -> sigma(w) z.
    antipode = [[ZERO] * m for _ in range(m)]
    for w in klein:
        antipode[index(w, 0)][index(w, 0)] = ONE  # involutions are self-inverse
        antipode[index(w, 1)][index(sigma(w), 1)] = ONE
    return HopfData(labels, mult, unit, comult, counit, antipode)


# -- characters and group-likes ------------------------------------------------------

class CharacterFunctional:
    """A multiplicative functional on a HopfData, by values on the basis."""

    def __init__(self, values):
        self.values = tuple(values)

    def __call__(self, u) -> CycNumber:
        if isinstance(u, int):
            return self.values[u]
        total = ZERO
        for a, v in zip(u, self.values):
            if a and v:
                total = total + a * v
        return total

    def __eq__(self, other):
        return isinstance(other, CharacterFunctional) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def sort_key(self):
        return tuple(v.sort_key() for v in self.values)

    def __repr__(self):
        return f"CharacterFunctional({list(self.values)})"


_ROOT_CANDIDATES: list[CycNumber] | None = None


def _root_candidates() -> list[CycNumber]:
    """0 together with every root of unity the scalar field supports."""
    global _ROOT_CANDIDATES
    if _ROOT_CANDIDATES is None:
        out = {ZERO}
        for d in range(1, 2 * MAX_CONDUCTOR + 1):
            canonical = d // 2 if d % 4 == 2 else d
            if canonical > MAX_CONDUCTOR:
                continue
            for j in range(d):
                out.add(CycNumber.root_of_unity(d, j))
        _ROOT_CANDIDATES = sorted(out, key=CycNumber.sort_key)
    return _ROOT_CANDIDATES


def minimal_polynomial(h: HopfData, vec) -> list[CycNumber]:
    """Monic minimal polynomial of an algebra element, ascending coefficients."""
    powers = [h.unit]
    basis = LinearBasis(h.dim)
    basis.add(h.unit)
    current = h.unit
    while True:
        current = h.vec_mul(current, vec)
        if not basis.add(current):
            powers.append(current)
            break
        powers.append(current)
    k = len(powers) - 1
    sol = solve_linear([powers[i] for i in range(k)], powers[k])
    assert sol is not None
    return [-c for c in sol] + [ONE]


def _poly_eval(coeffs, point: CycNumber) -> CycNumber:
    value = ZERO
    for c in reversed(coeffs):
        value = value * point + c
    return value


def _rational_root_candidates(coeffs) -> list[CycNumber]:
    """Rational-root-theorem candidates, for all-rational coefficients."""
    if not all(c.is_rational() for c in coeffs):
        return []
    fracs = [c.rational_value() for c in coeffs]
    scale = 1
    for f in fracs:
        scale = math.lcm(scale, f.denominator)
    ints = [int(f * scale) for f in fracs]
    lead, const = ints[-1], ints[0]
    if const == 0:
        return [ZERO]
    out = []
    for p in divisors(abs(const)):
        for q in divisors(abs(lead)):
            out.append(CycNumber.from_rational(Fraction(p, q)))
            out.append(CycNumber.from_rational(Fraction(-p, q)))
    return out


def _poly_roots_in_field(coeffs) -> list[CycNumber]:
    """All roots of a monic polynomial that lie in the supported fields.

    Candidates are zero, the supported roots of unity, rational-root-theorem
    candidates when the coefficients are rational, and (for a linear factor)
    the exact field root.  Raises when the polynomial does not fully split.
    """
    remaining = list(coeffs)
    roots: list[CycNumber] = []
    progress = True
    while len(remaining) > 1 and progress:
        if len(remaining) == 2:
            roots.append(-(remaining[0] * remaining[1].inv()))
            remaining = [ONE]
            break
        progress = False
        for cand in itertools.chain(_root_candidates(),
                                    _rational_root_candidates(remaining)):
            if not _poly_eval(remaining, cand):
                remaining = _synthetic_div(remaining, cand)
                roots.append(cand)
                progress = True
                break
    if len(remaining) > 1:
        raise CandidateOutsideFieldError(
            "minimal polynomial does not split over the supported fields")
    return roots


def _synthetic_div(coeffs, root):
    """coeffs / (t - root) assuming exact divisibility; ascending order."""
    n = len(coeffs) - 1
    out = [ZERO] * n
    acc = coeffs[n]
    for idx in range(n - 1, -1, -1):
        out[idx] = acc
        acc = coeffs[idx] + acc * root
    assert not acc
    return out


def minimal_generating_indices(h: HopfData) -> list[int]:
    """A small basis-index set generating the algebra, found greedily."""
    chosen: list[int] = []
    span = _algebra_closure(h, chosen)
    for i in range(h.dim):
        if span.rank == h.dim:
            break
        if not span.contains(h.basis_vector(i)):
            chosen.append(i)
            span = _algebra_closure(h, chosen)
    if span.rank != h.dim:
        raise GeneratorsDoNotSpanError("no generating set found")
    return chosen


def _algebra_closure(h: HopfData, indices) -> LinearBasis:
    basis = LinearBasis(h.dim)
    basis.add(h.unit)
    vectors = [h.unit] + [h.basis_vector(i) for i in indices]
    for v in vectors:
        basis.add(v)
    changed = True
    current = list(vectors)
    while changed and basis.rank < h.dim:
        changed = False
        products = []
        for u in current:
            for g in indices:
                p = h.vec_mul(u, h.basis_vector(g))
                if basis.add(p):
                    products.append(p)
                    changed = True
        current += products
    return basis


def algebra_characters(h: HopfData, generators=None) -> list[CharacterFunctional]:
    """All multiplicative functionals, from minimal-polynomial root candidates.

    Candidate values per generator are the roots of its minimal polynomial
    lying in the supported cyclotomic fields; assignments extend
    multiplicatively along a spanning word basis and survive only if
    multiplicative on every basis pair.
    """
    if generators is None:
        generators = minimal_generating_indices(h)
    generators = list(generators)

    span = _algebra_closure(h, generators)
    if span.rank != h.dim:
        raise GeneratorsDoNotSpanError(
            f"indices {generators} generate a subalgebra of rank {span.rank}")

    # spanning word basis: products of generators, recorded as letter lists
    words: list[tuple[tuple[int, ...], tuple]] = [((), h.unit)]
    basis = LinearBasis(h.dim)
    basis.add(h.unit)
    frontier = [((), h.unit)]
    while basis.rank < h.dim:
        nxt = []
        for letters, vec in frontier:
            for gpos, g in enumerate(generators):
                w = h.vec_mul(vec, h.basis_vector(g))
                if basis.add(w):
                    entry = (letters + (gpos,), w)
                    words.append(entry)
                    nxt.append(entry)
        if not nxt:
            raise GeneratorsDoNotSpanError("word closure stalled before full rank")
        frontier = nxt

    root_sets = []
    for g in generators:
        poly = minimal_polynomial(h, h.basis_vector(g))
        roots = sorted(set(_poly_roots_in_field(poly)), key=CycNumber.sort_key)
        root_sets.append(roots)

    # pairwise products of generators expanded in the word basis give early
    # consistency constraints: value(e_a e_b) must equal value(a)*value(b).
    word_columns = [vec for _, vec in words]
    pair_keys = [(a, b) for a in range(len(generators))
                 for b in range(len(generators))]
    pair_rhs = [h.vec_mul(h.basis_vector(generators[a]),
                          h.basis_vector(generators[b])) for a, b in pair_keys]
    pair_expansions = dict(zip(pair_keys,
                               solve_linear_multi(word_columns, pair_rhs)))

    results = []
    assignment: list[CycNumber] = []

    def word_value(letters) -> CycNumber:
        total = ONE
        for gpos in letters:
            total = total * assignment[gpos]
        return total

    def consistent_so_far() -> bool:
        k = len(assignment)
        for (a, b), combo in pair_expansions.items():
            if a >= k or b >= k:
                continue
            expected = assignment[a] * assignment[b]
            total = ZERO
            usable = True
            for (letters, _), c in zip(words, combo):
                if not c:
                    continue
                if any(g >= k for g in letters):
                    usable = False
                    break
                total = total + c * word_value(letters)
            if usable and total != expected:
                return False
        return True

    def descend():
        if len(assignment) == len(generators):
            # solve sum_i eta_i word_w[i] = value_w for eta on the basis
            values = [word_value(letters) for letters, _ in words]
            eta = solve_linear(
                [tuple(word_columns[w][i] for w in range(len(words)))
                 for i in range(h.dim)], tuple(values))
            if eta is None:
                return
            func = CharacterFunctional(eta)
            if _is_multiplicative(h, func):
                results.append(func)
            return
        for root in root_sets[len(assignment)]:
            assignment.append(root)
            if consistent_so_far():
                descend()
            assignment.pop()

    descend()
    results.sort(key=CharacterFunctional.sort_key)
    return results


def _is_multiplicative(h: HopfData, func: CharacterFunctional) -> bool:
    if func(h.unit) != ONE:
        return False
    for i in range(h.dim):
        vi = func.values[i]
        for j in range(h.dim):
            if func(h.mult[i][j]) != vi * func.values[j]:
                return False
    return True


def character_convolution(h: HopfData, a: CharacterFunctional,
                          b: CharacterFunctional) -> CharacterFunctional:
    """Product in the dual algebra: (a*b)(e_i) = sum a(e_i(1)) b(e_i(2))."""
    values = []
    for i in range(h.dim):
        total = ZERO
        for (j, k), c in h.comult[i].items():
            if a.values[j] and b.values[k]:
                total = total + c * a.values[j] * b.values[k]
        values.append(total)
    return CharacterFunctional(values)


def group_like_elements(h: HopfData) -> list[tuple]:
    """Vectors v with Delta v = v (x) v and counit 1, via dual characters."""
    chars = algebra_characters(dual(h))
    out = []
    for eta in chars:
        v = eta.values
        expected = {}
        for i, a in enumerate(v):
            if not a:
                continue
            for j, b in enumerate(v):
                if b:
                    expected[(i, j)] = a * b
        if h.comult_of(v) != expected or h.counit_of(v) != ONE:
            continue
        out.append(v)
    out.sort(key=lambda v: tuple(c.sort_key() for c in v))
    return out


# -- hit actions and Yetter-Drinfeld pairs --------------------------------------------

def hit_left(eta: CharacterFunctional, u, h: HopfData):
    """eta harpoon u = sum <eta, u_(2)> u_(1)."""
    out = [ZERO] * h.dim
    for i, a in enumerate(u):
        if not a:
            continue
        for (j, k), c in h.comult[i].items():
            if eta.values[k]:
                out[j] = out[j] + a * c * eta.values[k]
    return tuple(out)


def hit_right(u, eta: CharacterFunctional, h: HopfData):
    """u harpoon eta = sum <eta, u_(1)> u_(2)."""
    out = [ZERO] * h.dim
    for i, a in enumerate(u):
        if not a:
            continue
        for (j, k), c in h.comult[i].items():
            if eta.values[j]:
                out[k] = out[k] + a * c * eta.values[j]
    return tuple(out)


@dataclass(frozen=True)
class YDPairReport:
    pairs: tuple[tuple[tuple, CharacterFunctional], ...]
    group: FiniteGroup
    invariant_factors: tuple[int, ...] | None


def yd_one_dim_pairs(h: HopfData) -> YDPairReport:
    """Pairs (g, eta) with (eta -> v) g = g (v <- eta) on every basis element.

    These index the one-dimensional Yetter-Drinfeld modules; the report
    carries the group they form under componentwise product.
    """
    glikes = group_like_elements(h)
    chars = algebra_characters(h)
    pairs = []
    for g in glikes:
        for eta in chars:
            ok = True
            for i in range(h.dim):
                v = h.basis_vector(i)
                left = h.vec_mul(hit_left(eta, v, h), g)
                right = h.vec_mul(g, hit_right(v, eta, h))
                if left != right:
                    ok = False
                    break
            if ok:
                pairs.append((g, eta))
    index = {pair: t for t, pair in enumerate(pairs)}
    table = []
    for g, eta in pairs:
        row = []
        for g2, eta2 in pairs:
            prod = (h.vec_mul(g, g2), character_convolution(h, eta, eta2))
            row.append(index[prod])
        table.append(row)
    group = FiniteGroup(table, name="YDpairs")
    factors: tuple[int, ...] | None
    try:
        factors = abelian_decomposition(group).orders
    except GroupError:
        factors = None
    return YDPairReport(tuple(pairs), group, factors)


def central_group_likes(h: HopfData) -> list[tuple]:
    """Group-like elements commuting with every basis element."""
    out = []
    for g in group_like_elements(h):
        if all(h.vec_mul(g, h.basis_vector(i)) == h.vec_mul(h.basis_vector(i), g)
               for i in range(h.dim)):
            out.append(g)
    return out


def is_cocommutative(h: HopfData) -> bool:
    for entry in h.comult:
        for (j, k), c in entry.items():
            if entry.get((k, j), ZERO) != c:
                return False
    return True


# -- Drinfeld double types --------------------------------------------------------

def drinfeld_double_group_type(g: FiniteGroup) -> AlgebraTypeSignature:
    """Algebra type of the double of a group algebra.

    Irreducibles are indexed by (conjugacy class, centralizer irreducible)
    with dimension class size times centralizer degree.
    """
    counts: dict[int, int] = {}
    for cls in g.conjugacy_classes:
        rep = cls[0]
        size = len(cls)
        centralizer, _ = g.subgroup_as_group(g.centralizer(rep))
        for d in centralizer.irreducible_degrees:
            dim = size * d
            counts[dim] = counts.get(dim, 0) + 1
    n = counts.pop(1, 0)
    return AlgebraTypeSignature(n, tuple(sorted(counts.items())))


# -- cocycle twists -----------------------------------------------------------------

@dataclass(frozen=True)
class TwistElement:
    """An invertible normalized 2-cocycle in H (x) H, stored sparsely."""
    dim: int
    value: tuple[tuple[int, int, CycNumber], ...]
    inverse: tuple[tuple[int, int, CycNumber], ...]

    def value_dict(self) -> dict:
        return {(i, j): c for i, j, c in self.value}

    def inverse_dict(self) -> dict:
        return {(i, j): c for i, j, c in self.inverse}


def build_lifted_twist(g: FiniteGroup, subgroup,
                       bichar: AltBicharacter) -> TwistElement:
    """The 2-cocycle sum omega(x, y) delta_x (x) delta_y in kA (x) kA.

    A is an abelian subgroup of G; omega is rebuilt from the alternating
    bicharacter by the upper-triangular splitting on coordinates of the
    character group of A.  Different splittings give cohomologous cocycles
    and gauge-equivalent twists, so the canonical one is used.
    """
    sub = tuple(sorted(subgroup))
    if not g.is_subgroup(sub):
        raise NotAbelianSubgroupError("subset is not a subgroup")
    a_group, to_parent = g.subgroup_as_group(sub)
    if not a_group.is_abelian:
        raise NotAbelianSubgroupError("subgroup is not abelian")
    decomp = abelian_decomposition(a_group)
    if tuple(bichar.orders) != tuple(decomp.orders):
        raise NotAbelianSubgroupError(
            f"bicharacter orders {bichar.orders} do not match the subgroup "
            f"invariants {decomp.orders}")
    tuples = list(itertools.product(*[range(m) for m in decomp.orders]))
    k = len(decomp.orders)

    def omega(x, y) -> CycNumber:
        total = ONE
        for i in range(k):
            if not x[i]:
                continue
            for j in range(i + 1, k):
                if y[j]:
                    total = total * bichar.values[i][j] ** (x[i] * y[j])
        return total

    inv_order = CycNumber.from_rational(Fraction(1, a_group.order))

    # delta_x = (1/|A|) sum x(a) a, with x(a) from the coordinate pairing
    delta: dict[tuple, dict[int, CycNumber]] = {}
    for x in tuples:
        entry = {}
        for a in range(a_group.order):
            coeff = ONE
            for xi, m, ai in zip(x, decomp.orders, decomp.coords[a]):
                if xi and ai:
                    coeff = coeff * CycNumber.root_of_unity(m, xi * ai)
            entry[to_parent[a]] = coeff * inv_order
        delta[x] = entry

    value: dict[tuple[int, int], CycNumber] = {}
    inverse: dict[tuple[int, int], CycNumber] = {}
    for x in tuples:
        for y in tuples:
            w = omega(x, y)
            winv = w.inv()
            for a, ca in delta[x].items():
                for b, cb in delta[y].items():
                    key = (a, b)
                    c = ca * cb
                    value[key] = value.get(key, ZERO) + w * c
                    inverse[key] = inverse.get(key, ZERO) + winv * c
    value = {key: c for key, c in value.items() if c}
    inverse = {key: c for key, c in inverse.items() if c}
    return TwistElement(g.order,
                        tuple((i, j, c) for (i, j), c in sorted(value.items(),
                                                                key=lambda t: t[0])),
                        tuple((i, j, c) for (i, j), c in sorted(inverse.items(),
                                                                key=lambda t: t[0])))


def verify_twist(h: HopfData, twist: TwistElement) -> HopfReport:
    """Counit normalization, invertibility and the 2-cocycle identity."""
    checks = []
    phi = twist.value_dict()
    phi_inv = twist.inverse_dict()

    lvec = [ZERO] * h.dim
    rvec = [ZERO] * h.dim
    for (i, j), c in phi.items():
        lvec[j] = lvec[j] + c * h.counit[i]
        rvec[i] = rvec[i] + c * h.counit[j]
    ok = tuple(lvec) == h.unit and tuple(rvec) == h.unit
    checks.append(HopfAxiomCheck("counit-normalization", ok,
                                 "" if ok else "(eps (x) id) phi is not 1"))

    prod = h.tensor_mul(phi, phi_inv)
    prod2 = h.tensor_mul(phi_inv, phi)
    unit_t = {k: v for k, v in h.unit_tensor().items() if v}
    ok = prod == unit_t and prod2 == unit_t
    checks.append(HopfAxiomCheck("invertibility", ok,
                                 "" if ok else "phi * phi^{-1} differs from 1 (x) 1"))

    left: dict = {}
    right: dict = {}
    for (i, j), c in phi.items():
        for (p, q), d in h.comult[i].items():
            key = (p, q, j)
            left[key] = left.get(key, ZERO) + c * d
        for (p, q), d in h.comult[j].items():
            key = (i, p, q)
            right[key] = right.get(key, ZERO) + c * d
    phi1 = {}
    phi3 = {}
    for (i, j), c in phi.items():
        for k, u in enumerate(h.unit):
            if u:
                phi1[(i, j, k)] = c * u
                phi3[(k, i, j)] = c * u
    lhs = h.tensor3_mul(phi1, {k: v for k, v in left.items() if v})
    rhs = h.tensor3_mul(phi3, {k: v for k, v in right.items() if v})
    ok = {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}
    checks.append(HopfAxiomCheck("cocycle-identity", ok,
                                 "" if ok else "the two cocycle sides differ"))
    return HopfReport(tuple(checks))


def twist_hopf(h: HopfData, twist: TwistElement, verify: bool = True) -> HopfData:
    """Twist the comultiplication: Delta_phi = phi Delta(.) phi^{-1}.

    The antipode becomes U S(.) U^{-1} with U = sum phi^(1) S(phi^(2));
    multiplication, unit and counit are unchanged.  With ``verify`` the
    full Hopf axiom suite runs on the result and failures raise.
    """
    if h.dim > MAX_TWIST_DIM:
        raise TwistInvalidError(f"twisting capped at dimension {MAX_TWIST_DIM}")
    report = verify_twist(h, twist)
    if not report.passed:
        raise TwistInvalidError(
            "twist verification failed: " +
            "; ".join(c.axiom for c in report.failures()))
    phi = twist.value_dict()
    phi_inv = twist.inverse_dict()
    comult = []
    for i in range(h.dim):
        middle = h.comult[i]
        new = h.tensor_mul(h.tensor_mul(phi, middle), phi_inv)
        comult.append({k: v for k, v in new.items() if v})

    uvec = [ZERO] * h.dim
    for (i, j), c in phi.items():
        s = h.antipode[j]
        for t, x in enumerate(s):
            if x:
                cx = c * x
                for p, y in h.mult_sparse[i][t]:
                    uvec[p] = uvec[p] + cx * y
    uvec = tuple(uvec)
    uinv = _algebra_inverse(h, uvec)
    antipode = []
    for i in range(h.dim):
        antipode.append(list(h.vec_mul(h.vec_mul(uvec, h.antipode[i]), uinv)))

    twisted = HopfData(h.labels, h.mult, h.unit, comult, h.counit, antipode)
    if verify:
        rep = verify_hopf_axioms(twisted)
        if not rep.passed:
            raise TwistInvalidError(
                "twisted algebra fails axioms: " +
                "; ".join(c.axiom for c in rep.failures()))
    return twisted


def _algebra_inverse(h: HopfData, u):
    # columns[j] = u * e_j, so a solution of sum_j x_j (u e_j) = 1 is a right
    # inverse; finite dimension makes it two-sided.
    columns = [h.vec_mul(u, h.basis_vector(j)) for j in range(h.dim)]
    sol = solve_linear(columns, h.unit)
    if sol is None:
        raise TwistInvalidError("twist antipode corrector is not invertible")
    return tuple(sol)


def surviving_group_likes(g: FiniteGroup, twist: TwistElement) -> tuple[int, ...]:
    """Group elements with (g (x) g) phi = phi (g (x) g): the twisted group-likes
    supported on the group basis."""
    phi = twist.value_dict()
    out = []
    for x in range(g.order):
        left = {(g.table[x][i], g.table[x][j]): c for (i, j), c in phi.items()}
        right = {(g.table[i][x], g.table[j][x]): c for (i, j), c in phi.items()}
        if left == right:
            out.append(x)
    return tuple(out)


def cocommutativity_criterion(g: FiniteGroup, subgroup,
                              bichar: AltBicharacter) -> bool:
    """Invariance of the bicharacter under the conjugation action on the dual.

    For a normal abelian subgroup A, the twist lifted from A yields a
    cocommutative algebra exactly when B(g.x, g.y) = B(x, y) for every
    group element g and every basis pair of characters, the action on
    characters being contragredient to conjugation on A.
    """
    sub = tuple(sorted(subgroup))
    if not g.is_normal(sub):
        raise NotNormalError("subgroup is not normal")
    a_group, to_parent = g.subgroup_as_group(sub)
    if not a_group.is_abelian:
        raise NotAbelianSubgroupError("subgroup is not abelian")
    decomp = abelian_decomposition(a_group)
    if tuple(bichar.orders) != tuple(decomp.orders):
        raise NotAbelianSubgroupError("bicharacter does not match the subgroup")
    to_child = {p: c for c, p in to_parent.items()}
    k = len(decomp.orders)

    def basis_tuple(i):
        t = [0] * k
        t[i] = 1
        return tuple(t)

    for gi in range(g.order):
        # (g.x)(a) = x(g^{-1} a g): precompose each character with the inner
        # automorphism of A induced by g^{-1}.
        perm = [to_child[g.conjugate(g.inv(gi), to_parent[c])]
                for c in range(a_group.order)]
        mapping = precompose_character_exponents(decomp, perm)
        images = [mapping[basis_tuple(i)] for i in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                if bichar.evaluate(images[i], images[j]) != bichar.values[i][j]:
                    return False
    return True
