"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one PASS/FAIL line; golden sets are frozen literals.
Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import io
import json
import time
from contextlib import contextmanager

import pytest

from hopfcensus.census import complete_type, enumerate_types, tensor_type
from hopfcensus.cli import run as cli_run
from hopfcensus.cyclotomic import CycNumber
from hopfcensus.fusion import (AlgebraTypeSignature, from_group_characters,
                               search_fusion, verify_fusion_datum)
from hopfcensus.groups import (AltBicharacter, action_from_generator_images,
                               build_cyclic, build_dihedral, build_product,
                               build_quaternion, build_semidirect,
                               build_symmetric, builtin_group)
from hopfcensus.hopfcore import (ONE, ZERO, algebra_characters, build_h8,
                                 build_lifted_twist, cocommutativity_criterion,
                                 drinfeld_double_group_type, from_group,
                                 group_like_elements, hit_left,
                                 is_cocommutative, surviving_group_likes,
                                 twist_hopf, verify_hopf_axioms, verify_twist,
                                 yd_one_dim_pairs)

P = AlgebraTypeSignature.parse


@contextmanager
def criterion(number, name):
    try:
        yield
    except Exception:
        print(f"ACCEPTANCE {number} ({name}): FAIL")
        raise
    print(f"ACCEPTANCE {number} ({name}): PASS")


GOLDEN = {
    (60, 1): {"1,1;3,2;4,1;5,1", "1,1;2,4;3,2;5,1", "1,1;2,4;3,3;4,1"},
    24: {"1,2;2,1;3,2", "1,3;2,3;3,1", "1,4;2,5", "1,4;2,1;4,1",
         "1,6;3,2", "1,8;2,4", "1,8;4,1", "1,12;2,3"},
    30: {"1,2;2,7", "1,3;3,3", "1,5;5,1", "1,6;2,6", "1,10;2,5"},
    42: {"1,2;2,1;6,1", "1,2;2,1;3,4", "1,2;2,10", "1,6;6,1", "1,6;2,9",
         "1,6;3,4", "1,14;2,7"},
    40: {"1,4;2,9", "1,4;2,5;4,1", "1,4;2,1;4,2", "1,8;2,8", "1,8;2,4;4,1",
         "1,8;4,2", "1,20;2,5"},
    56: {"1,4;2,13", "1,4;2,9;4,1", "1,4;2,5;4,2", "1,4;2,1;4,3", "1,7;7,1",
         "1,8;4,3", "1,8;2,4;4,2", "1,8;2,8;4,1", "1,8;2,12", "1,28;2,7"},
    54: {"1,2;2,4;6,1", "1,2;2,4;3,4", "1,2;2,13", "1,6;2,3;6,1", "1,6;2,12",
         "1,6;2,3;3,4", "1,9;3,1;6,1", "1,9;3,5", "1,18;2,9", "1,18;3,4",
         "1,18;6,1", "1,27;3,3"},
    36: {"1,2;2,4;3,2", "1,3;2,6;3,1", "1,4;2,8", "1,4;2,4;4,1", "1,4;4,2",
         "1,6;2,3;3,2", "1,9;3,3", "1,12;2,6", "1,18;3,2"},
    48: {"1,2;2,3;3,2;4,1", "1,3;3,1;6,1", "1,3;2,9;3,1", "1,3;3,5",
         "1,4;2,2;3,4", "1,4;2,3;4,2", "1,4;2,7;4,1", "1,4;2,11",
         "1,4;2,2;6,1", "1,6;2,6;3,2", "1,8;2,2;4,2", "1,8;2,10",
         "1,8;2,6;4,1", "1,12;2,9", "1,12;3,4", "1,12;6,1", "1,16;2,8",
         "1,16;4,2", "1,24;2,6"},
}

STRETCH_48 = {"1,2;2,7;3,2", "1,16;2,4;4,1"}


def timed_census(**kwargs):
    start = time.perf_counter()
    result = enumerate_types(**kwargs)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"census run took {elapsed:.2f}s"
    return result


def names(sigs):
    return {str(s) for s in sigs}


def test_criterion_1_census_golden_lists():
    with criterion(1, "census golden lists"):
        r = timed_census(dimension=60, rules="R1,R4,R5", n_filter=1)
        assert names(r.survivors) == GOLDEN[(60, 1)]

        r = timed_census(dimension=24, rules="R1-R5")
        assert names(r.survivors) == GOLDEN[24]

        r = timed_census(dimension=30, rules="R1-R8")
        assert names(r.survivors) == GOLDEN[30]
        r = timed_census(dimension=42, rules="R1-R8")
        assert names(r.survivors) == GOLDEN[42]

        r = timed_census(dimension=40, rules="all")
        assert names(r.survivors) == GOLDEN[40]

        r = timed_census(dimension=56, rules="all",
                         oracle_types=["1,4;3,4;4,1", "1,4;4,1;6,1"])
        assert names(r.survivors) == GOLDEN[56] | {"1,4;3,4;4,1", "1,4;4,1;6,1"}
        assert all(out.status == "infeasible" for _, out in r.oracle)
        assert names(r.final_survivors()) == GOLDEN[56]

        r = timed_census(dimension=54, rules="all",
                         oracle_types=["1,2;2,1;4,3", "1,2;3,4;4,1",
                                       "1,2;4,1;6,1"])
        assert all(out.status == "infeasible" for _, out in r.oracle)
        assert names(r.final_survivors()) == GOLDEN[54]

        r = timed_census(dimension=36, rules="all",
                         oracle_types=["1,2;3,2;4,1"])
        assert all(out.status == "infeasible" for _, out in r.oracle)
        assert names(r.final_survivors()) == GOLDEN[36]

        r = timed_census(dimension=48, rules="all")
        assert GOLDEN[48] <= names(r.survivors)
        assert names(r.survivors) - GOLDEN[48] == STRETCH_48


def test_criterion_1_stretch_dim48_residuals_are_reported():
    # The two residual dimension-48 candidates are stretch oracle targets:
    # an honest Inconclusive report is acceptable, silence is not.
    with criterion("1s", "dim-48 stretch residual reporting"):
        r = enumerate_types(48, "all", oracle_types=sorted(STRETCH_48),
                            oracle_budget=20000)
        assert {str(sig) for sig, _ in r.oracle} == STRETCH_48
        for sig, out in r.oracle:
            assert out.status in ("infeasible", "inconclusive")
            print(f"  dim-48 residual {sig}: {out.status} "
                  f"({out.nodes} nodes; {out.trace or 'refuted'})")


def test_criterion_2_fusion_oracle():
    with criterion(2, "fusion oracle"):
        for m in (1, 2, 3):
            start = time.perf_counter()
            out = search_fusion(P(f"1,2;2,1;4,{m}"), "hopf", 10 ** 6)
            elapsed = time.perf_counter() - start
            assert out.status == "infeasible"
            assert out.nodes <= 10 ** 6
            assert elapsed < 60.0
        out = search_fusion(P("1,2;2,1"), "hopf", 10 ** 6)
        assert out.status == "feasible"
        s3 = from_group_characters(build_symmetric(3))
        # basis roles are forced (unit, the unique degree-1, the unique
        # degree-2), so equality up to relabeling is plain equality here
        assert out.witness.constants == s3.constants
        assert out.witness.degrees == s3.degrees


def all_abelian_groups_up_to_16():
    def chains(n, lower=2):
        if n == 1:
            return [()]
        out = []
        for d in range(max(lower, 2), n + 1):
            if n % d == 0 and d % lower == 0:
                for rest in chains(n // d, d):
                    out.append((d,) + rest)
        return out

    groups = []
    for n in range(1, 17):
        for chain in chains(n):
            g = build_cyclic(chain[0]) if chain else build_cyclic(1)
            for m in chain[1:]:
                g = build_product(g, build_cyclic(m))
            groups.append(g)
    return groups


def test_criterion_3_fusion_axiom_suite():
    with criterion(3, "fusion axioms on shipped data"):
        data = [from_group_characters(g) for g in all_abelian_groups_up_to_16()]
        data += [from_group_characters(build_symmetric(3)),
                 from_group_characters(build_dihedral(4)),
                 from_group_characters(build_quaternion())]
        for datum in data:
            assert verify_fusion_datum(datum, "hopf").passed
            r = datum.size
            for i in range(r):
                assert datum.dual[datum.dual[i]] == i
                assert datum.degrees[datum.dual[i]] == datum.degrees[i]
                assert datum.multiply(i, datum.dual[i])[datum.unit] == 1
                stab = datum.left_stabilizer(i)
                assert (datum.degrees[i] ** 2) % len(stab) == 0
                for j in range(r):
                    for k in range(r):
                        assert datum.n(i, j, k) == \
                            datum.n(j, datum.dual[k], datum.dual[i])
                        assert datum.n(i, j, k) == \
                            datum.n(k, datum.dual[j], i)


def test_criterion_4_h8_suite():
    with criterion(4, "dimension-8 algebra suite"):
        start = time.perf_counter()
        h8 = build_h8()
        report = verify_hopf_axioms(h8)
        assert report.passed
        assert all(c.passed for c in report.checks
                   if c.axiom == "antipode-squared-identity")

        def vec_key(v):
            return tuple(c.sort_key() for c in v)

        glikes = group_like_elements(h8)
        expected = [tuple(ONE if t == i else ZERO for t in range(8))
                    for i in range(4)]
        assert sorted(glikes, key=vec_key) == sorted(expected, key=vec_key)

        chars = algebra_characters(h8, generators=[1, 2, 4])
        assert len(chars) == 4
        assert all(c(1) == c(2) for c in chars)

        yd = yd_one_dim_pairs(h8)
        assert len(yd.pairs) == 8
        assert all(yd.group.element_order(t) <= 2
                   for t in range(yd.group.order))
        assert yd.invariant_factors == (2, 2, 2)
        # generator structure: central group-likes {1, xy} pair with the
        # central characters, x and y with the noncentral ones
        for g, eta in yd.pairs:
            gi = next(i for i, c in enumerate(g) if c)
            assert (gi in (0, 3)) == (eta.values[1] == ONE)

        half = CycNumber.from_rational(1) / 2
        for eta in chars:
            got = hit_left(eta, h8.basis_vector(4), h8)
            cz = half * (ONE + eta.values[1]) * eta.values[4]
            cyz = half * (ONE - eta.values[1]) * eta.values[4]
            expected_hit = tuple(cz if i == 4 else (cyz if i == 6 else ZERO)
                                 for i in range(8))
            assert got == expected_hit

        elapsed = time.perf_counter() - start
        assert elapsed < 1.0, f"suite took {elapsed:.2f}s"


def independent_s3_double_oracle():
    """Brute force over explicit permutations, implemented before comparing."""
    import itertools
    perms = list(itertools.permutations(range(3)))
    compose = lambda p, q: tuple(p[q[i]] for i in range(3))
    inv = lambda p: tuple(sorted(range(3), key=lambda i: p[i]))
    classes, seen = [], set()
    for p in perms:
        if p not in seen:
            orbit = {compose(compose(g, p), inv(g)) for g in perms}
            seen |= orbit
            classes.append(sorted(orbit))
    dims = []
    for cls in classes:
        rep = cls[0]
        cent = [g for g in perms if compose(g, rep) == compose(rep, g)]
        degrees = [1, 1, 2] if len(cent) == 6 else [1] * len(cent)
        dims += [len(cls) * d for d in degrees]
    counts = {}
    for d in dims:
        counts[d] = counts.get(d, 0) + 1
    n = counts.pop(1, 0)
    return AlgebraTypeSignature(n, tuple(sorted(counts.items())))


def test_criterion_5_double_types():
    with criterion(5, "Drinfeld-double types"):
        assert str(drinfeld_double_group_type(build_dihedral(4))) == "1,8;2,14"
        assert str(drinfeld_double_group_type(build_quaternion())) == "1,8;2,14"
        oracle = independent_s3_double_oracle()
        assert str(oracle) == "1,2;2,4;3,2"
        assert drinfeld_double_group_type(build_symmetric(3)) == oracle
        assert str(tensor_type(P("1,4;2,1"), P("1,4;2,1"))) == "1,16;2,8;4,1"
        assert str(complete_type(64, 8, {2})) == "1,8;2,14"


def test_criterion_6_twist_suite():
    with criterion(6, "twist suite"):
        nd2 = AltBicharacter.nondegenerate_rank2(2)
        nd3 = AltBicharacter.nondegenerate_rank2(3)

        g12 = builtin_group("G12")
        gamma12 = (0, 1, 2, 3)
        tw = build_lifted_twist(g12, gamma12, nd2)
        assert verify_twist(from_group(g12), tw).passed
        twisted = twist_hopf(from_group(g12), tw)  # re-verifies all axioms
        assert is_cocommutative(twisted) is False
        assert len(surviving_group_likes(g12, tw)) == 4
        tw0 = build_lifted_twist(g12, gamma12, AltBicharacter.trivial((2, 2)))
        assert is_cocommutative(twist_hopf(from_group(g12), tw0)) is True

        g18 = builtin_group("G18")
        gamma18 = tuple(2 * i for i in range(9))
        assert cocommutativity_criterion(g18, gamma18, nd3) is False
        tw18 = build_lifted_twist(g18, gamma18, nd3)
        direct = is_cocommutative(twist_hopf(from_group(g18), tw18,
                                             verify=False))
        assert direct is False

        start = time.perf_counter()
        d3d3 = builtin_group("D3xD3")
        a = (0, 3, 18, 21)
        tw36 = build_lifted_twist(d3d3, a, nd2)
        assert verify_twist(from_group(d3d3), tw36).passed
        twisted36 = twist_hopf(from_group(d3d3), tw36)  # full re-verification
        assert is_cocommutative(twisted36) is False
        assert len(surviving_group_likes(d3d3, tw36)) == 4
        elapsed = time.perf_counter() - start
        assert elapsed < 120.0, f"dimension-36 twist took {elapsed:.1f}s"


def test_criterion_7_cross_validation():
    with criterion(7, "criterion vs direct cocommutativity"):
        nd2 = AltBicharacter.nondegenerate_rank2(2)
        nd3 = AltBicharacter.nondegenerate_rank2(3)
        k4 = build_product(build_cyclic(2), build_cyclic(2))
        act = action_from_generator_images(build_cyclic(3), k4,
                                           {1: [0, 3, 1, 2]})
        a4 = build_semidirect(k4, build_cyclic(3), act)
        triples = [
            (builtin_group("Z2xZ2"), (0, 1, 2, 3), nd2),
            (build_dihedral(4), (0, 2, 4, 6), nd2),
            (build_dihedral(4), (0, 2, 4, 6), AltBicharacter.trivial((2, 2))),
            (a4, tuple(sorted(i * 3 for i in range(4))), nd2),
            (build_product(build_cyclic(3), build_cyclic(3)),
             tuple(range(9)), nd3),
            (builtin_group("G18"), tuple(2 * i for i in range(9)), nd3),
            (builtin_group("G18"), tuple(2 * i for i in range(9)),
             AltBicharacter.trivial((3, 3))),
        ]
        orders = set()
        outcomes = set()
        for g, subgroup, bichar in triples:
            assert g.is_normal(subgroup)
            predicted = cocommutativity_criterion(g, subgroup, bichar)
            tw = build_lifted_twist(g, subgroup, bichar)
            direct = is_cocommutative(twist_hopf(from_group(g), tw,
                                                 verify=False))
            assert predicted == direct
            orders.add(g.order)
            outcomes.add(predicted)
        assert len(triples) >= 6
        assert min(orders) == 4 and max(orders) == 18
        assert outcomes == {True, False}


DETERMINISM_COMMANDS = [
    ["census", "--dim", "54", "--rules", "all", "--oracle", "1,2;2,1;4,3"],
    ["fusion-search", "--type", "1,2;2,1;4,1"],
    ["fusion-verify", "--group", "Q8"],
    ["double", "--group", "D4"],
    ["h8-report"],
    ["twist", "--group", "G12", "--subgroup", "auto",
     "--bicharacter", "nondegenerate", "--check-cocommutative", "--group-likes"],
]


def test_criterion_8_cli_determinism():
    with criterion(8, "CLI determinism"):
        for argv in DETERMINISM_COMMANDS:
            outputs = []
            for threads in ("1", "4"):
                buf = io.StringIO()
                cli_run(["--threads", threads] + argv, buf)
                outputs.append(buf.getvalue())
            assert outputs[0] == outputs[1], argv
            json.loads(outputs[0])  # and the payload is well-formed JSON
