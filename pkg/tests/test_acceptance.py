"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest -s`` to see them) and enforcing its
runtime limit."""

import random
import time
from contextlib import contextmanager

from groupmm import (
    Cover,
    IndexingTriple,
    PartialPatternInstance,
    SimpleGraph,
    brute_force_alpha,
    brute_force_max_f,
    build_sets,
    check_tpp,
    classify_aliasing,
    cu_multiply,
    degrees_for,
    enumerate_aliasing,
    exact_max_f,
    f_value,
    formula_f,
    heuristic_cover,
    identity_column_cover,
    is_cover,
    predicted_output,
    random_matrix,
    realize_cover,
    reduce_independent_set,
    solve_omega,
    CyclicPowerDescriptor,
    WreathS2Descriptor,
)

from _support import (
    D12_ALIASING_SUBSETS,
    D12_EXPECTED_ALIASING,
    D12_TPP_SUBSETS,
    exhaustive_min_vertex_cover,
    load_fixture,
    random_instance,
    random_subsets,
    small_groups,
)


@contextmanager
def criterion(number: int, description: str, limit_seconds: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"criterion {number}: FAIL - {description}")
        raise
    elapsed = time.perf_counter() - start
    status = "PASS" if elapsed < limit_seconds else "FAIL (over time limit)"
    print(f"criterion {number}: {status} ({elapsed:.2f}s < {limit_seconds:.0f}s) - {description}")
    assert elapsed < limit_seconds, f"criterion {number} took {elapsed:.2f}s"


def test_criterion_1_tpp_fixture():
    with criterion(1, "TPP fixture passes the check with empty aliasing", 1.0):
        triple = IndexingTriple.from_json(load_fixture(D12_TPP_SUBSETS))
        assert check_tpp(triple) is True
        assert len(enumerate_aliasing(triple)) == 0


def test_criterion_2_aliasing_fixture():
    with criterion(2, "aliasing fixture yields exactly the four known triples", 1.0):
        triple = IndexingTriple.from_json(load_fixture(D12_ALIASING_SUBSETS))
        aliasing = enumerate_aliasing(triple)
        got = {(t.left, t.right, t.product) for t in aliasing}
        assert got == D12_EXPECTED_ALIASING


def test_criterion_3_cover_solvers():
    with criterion(3, "exact solver, oracle, and heuristic agree on the fixture", 30.0):
        triple = IndexingTriple.from_json(load_fixture(D12_ALIASING_SUBSETS))
        inst = PartialPatternInstance.from_aliasing(enumerate_aliasing(triple))
        exact = exact_max_f(inst)
        assert exact.exact and exact.f_value == 12
        assert brute_force_max_f(inst).f_value == 12
        heuristic = heuristic_cover(inst)
        assert heuristic.cover.size == 2
        assert heuristic.f_value == 12


def test_criterion_4_embedding_identities():
    with criterion(4, "embedding output matches prediction and partial products", 10.0):
        triple = IndexingTriple.from_json(load_fixture(D12_ALIASING_SUBSETS))
        aliasing = enumerate_aliasing(triple)
        rng = random.Random(0)
        for _ in range(200):
            M = random_matrix(2, 4, rng)
            N = random_matrix(4, 2, rng)
            assert cu_multiply(M, N, triple) == predicted_output(M, N, triple, aliasing)
        patterns = [
            Cover(frozenset({(1, 4), (2, 4)}), frozenset()),
            Cover(frozenset(), frozenset({(3, 1), (3, 2)})),
        ]
        for cover in patterns:
            for _ in range(100):
                M, N = realize_cover(
                    random_matrix(2, 4, rng), random_matrix(4, 2, rng), cover
                )
                assert cu_multiply(M, N, triple) == M.matmul(N)


def test_criterion_5_wreath_constructions():
    with criterion(5, "wreath constructions verify at n = 2 and 3", 30.0):
        for n in (2, 3):
            original = build_sets(n)
            assert len(original.triple.S) == 2 * n * (n - 1)
            assert check_tpp(original.triple) is True
            relaxed = build_sets(n, relaxed=True)
            aliasing = enumerate_aliasing(relaxed.triple)
            assert len(aliasing) > 0
            taxonomy = classify_aliasing(relaxed)
            parts = [set(taxonomy.bottom), set(taxonomy.top_easy), set(taxonomy.top_hard)]
            assert parts[0] | parts[1] | parts[2] == set(aliasing)
            assert sum(len(p) for p in parts) == len(aliasing)
            cover = identity_column_cover(relaxed)
            assert len(cover.I) <= (n - 1) ** 2
            assert len(cover.J) == 2 * n * (n - 1) + 1
            inst = PartialPatternInstance.from_aliasing(aliasing)
            assert is_cover(inst, cover)
            assert f_value(inst, cover) >= formula_f(n, relaxed=True)
        assert formula_f(2, relaxed=True) == 96
        n2 = PartialPatternInstance.from_aliasing(
            enumerate_aliasing(build_sets(2, relaxed=True).triple)
        )
        assert exact_max_f(n2).f_value >= 96


def test_criterion_6_omega_bounds():
    with criterion(6, "wreath spectrum at n = 17 reproduces both exponent bounds", 1.0):
        spectrum = degrees_for(WreathS2Descriptor(CyclicPowerDescriptor((17, 17, 17))))
        original = solve_omega(spectrum, 160_989_184)
        relaxed = solve_omega(spectrum, 161_442_336)
        assert abs(original.omega_bound - 2.9088) <= 5e-4
        assert abs(relaxed.omega_bound - 2.9084) <= 5e-4
        assert relaxed.omega_bound < original.omega_bound


def test_criterion_7_hardness_cross_check():
    with criterion(7, "reduction preserves the independence number", 30.0):
        fixed = [
            SimpleGraph(3, ((1, 2), (1, 3), (2, 3))),
            SimpleGraph(3, ((1, 2), (2, 3))),
            SimpleGraph(4, ((1, 2), (2, 3), (3, 4))),
            SimpleGraph(5, ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5))),
            SimpleGraph(6, tuple((a, b) for a in (1, 2, 3) for b in (4, 5, 6))),
        ]
        rng = random.Random(0)
        graphs = list(fixed)
        while len(graphs) < len(fixed) + 50:
            n = rng.randint(1, 7)
            edges = tuple(
                (a, b)
                for a in range(1, n + 1)
                for b in range(a + 1, n + 1)
                if rng.random() < 0.4
            )
            graphs.append(SimpleGraph(n, edges))
        for g in graphs:
            assert exact_max_f(reduce_independent_set(g)).f_value == brute_force_alpha(g)


def test_criterion_8_property_suites():
    with criterion(8, "randomized property suites hold at seed 0", 60.0):
        rng = random.Random(0)

        # sampled group axioms across every family
        for group in small_groups():
            elems = group.elements()
            e = group.identity()
            for _ in range(200):
                a, b, c = (rng.choice(elems) for _ in range(3))
                assert (a * b) * c == a * (b * c)
                assert a * a.inv() == e == a.inv() * a

        # the TPP check and aliasing enumeration always agree
        groups = small_groups()
        for _ in range(100):
            t = random_subsets(rng, rng.choice(groups))
            assert check_tpp(t) == (len(enumerate_aliasing(t)) == 0)

        # growing a cover never increases f
        for _ in range(50):
            inst = random_instance(rng)
            all_left = [(i, j) for i in range(1, inst.m + 1) for j in range(1, inst.n + 1)]
            all_right = [(j, k) for j in range(1, inst.n + 1) for k in range(1, inst.p + 1)]
            I = frozenset(rng.sample(all_left, rng.randint(0, len(all_left))))
            J = frozenset(rng.sample(all_right, rng.randint(0, len(all_right))))
            extra_I = I | frozenset(rng.sample(all_left, rng.randint(0, len(all_left))))
            extra_J = J | frozenset(rng.sample(all_right, rng.randint(0, len(all_right))))
            assert f_value(inst, Cover(extra_I, extra_J)) <= f_value(inst, Cover(I, J))

        # the exact solver agrees with the subset-exhaustion oracle, and the
        # heuristic returns valid covers of minimum total size
        for _ in range(50):
            inst = random_instance(rng)
            report = exact_max_f(inst)
            assert report.f_value == brute_force_max_f(inst).f_value
            heuristic = heuristic_cover(inst)
            assert is_cover(inst, heuristic.cover)
            assert heuristic.f_value <= report.f_value
            assert heuristic.cover.size == exhaustive_min_vertex_cover(inst.pairs)
