"""Acceptance suite: eight exit criteria, one test per criterion.

Each test prints a PASS line with its elapsed time; tolerances are fixed
here, not configurable.  Criteria 1-2 replay published leaderboard rows
through the scoring arithmetic; 3-8 are property-based checks of the
construction, the generators, the verifier, and the runner.
"""

import itertools
import random
import time

import pytest

from catbench.fincat import (
    Cone,
    DirectedMultigraph,
    Edge,
    FunctorRep,
    Morphism,
    SetMap,
    check_functor_laws,
    colimit,
    cospan,
    free_category,
    identity,
    identity_functor,
    limit,
    lub_thin,
    pullback,
    verify_universal_property,
)
from catbench.harness import (
    FabricatorAgent,
    OracleAgent,
    SycophantAgent,
    TruncatingAgent,
    run_task,
    selfcheck,
)
from catbench.scoring import diagnostic_scores, grade, total_average
from catbench.taskgen import certify_uniqueness, gen_task
from catbench.verifier import ChainDecl, Claim, ReportStep, Retrieval, Trace, verify
from catbench.world import WorldConfig, generate_world

from util import (
    equivalence_classes_oracle,
    limit_tuples_oracle,
    random_finset_diagram,
)

# Published evaluation rows used as frozen arithmetic fixtures:
# (model, per-task accuracies for kinds 1..15, (S, R), four axis averages, total)
REFERENCE_ROWS = [
    ("Qwen3 w/Reasoning",
     [0, 0, 5.0, 0, 0, 10.0, 10.0, 0, 0, 0, 0, 0, 0, 95.7, 10.0],
     (3.5, 12.8), (1.5, 2.0, 0.0, 46.9), 12.60),
    ("GPT-5 w/Reasoning",
     [0, 0, 0, 2.2, 0, 0, 20.0, 0, 0, 0, 0, 0, 0, 60.9, 0],
     (2.3, 8.0), (0.0, 2.9, 0.0, 28.6), 7.88),
    ("Claude-4.5-Sonnet w/Reasoning",
     [4.0, 0, 0, 2.2, 0, 0, 0, 0, 5.0, 0, 0, 0, 0, 47.8, 0],
     (1.9, 5.5), (1.5, 1.0, 1.3, 22.4), 6.55),
    ("Doubao w/Reasoning",
     [4.0, 0, 0, 0, 8.3, 0, 0, 0, 15.0, 0, 0, 0, 0, 34.8, 0],
     (2.8, 5.2), (1.5, 1.0, 3.8, 16.3), 5.65),
    ("Gemini-3-Pro w/Reasoning",
     [0, 0, 0, 0, 8.3, 0, 0, 12.0, 0, 0, 0, 0, 0, 30.4, 0],
     (1.6, 4.8), (0.0, 3.9, 0.0, 14.3), 4.55),
    ("Doubao w/Search",
     [0, 5.0, 0, 0, 8.3, 0, 0, 0, 15.0, 0, 25.0, 0, 0, 4.3, 40.0],
     (4.4, 8.1), (1.5, 1.0, 16.3, 10.2), 7.25),
    ("Qwen3 w/Search",
     [0, 0, 0, 0, 0, 0, 20.0, 0, 5.0, 0, 0, 0, 0, 52.2, 10.0],
     (2.8, 8.2), (0.0, 2.0, 1.3, 26.5), 7.45),
    ("Perplexity-Sonar-Pro w/Search",
     [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 52.2, 10.0],
     (1.1, 6.5), (0.0, 0.0, 0.0, 26.5), 6.63),
    ("Doubao Deep Research",
     [8.0, 0, 0, 0, 0, 0, 0, 0, 5.0, 0, 10.0, 0, 0, 21.7, 20.0],
     (2.8, 5.5), (3.1, 0.0, 6.3, 14.3), 5.93),
    ("Qwen Deep Research",
     [0, 0, 0, 0, 8.3, 0, 0, 0, 0, 0, 0, 0, 0, 8.7, 0],
     (0.5, 1.6), (0.0, 1.0, 0.0, 4.1), 1.28),
    # This row's published diagnostic pair is not reproducible from its own
    # per-task row under the weighted-mean aggregation; asserted below.
    ("Grok Deep Research",
     [4.0, 0, 0, 0, 8.3, 0, 4.0, 0, 5.0, 0, 25.0, 10.0, 0, 82.6, 40.0],
     (11.8, 21.6), (1.5, 4.9, 26.3, 46.9), 19.90),
]

INCONSISTENT_ROW = "Grok Deep Research"


@pytest.fixture(scope="module")
def world():
    return generate_world(WorldConfig(seed=0))


def test_criterion_1_diagnostic_pairs_reproduce_within_a_tenth():
    started = time.perf_counter()
    reproduced = 0
    for name, accs, (s_exp, r_exp), _, _ in REFERENCE_ROWS:
        acc = {k: accs[k - 1] for k in range(1, 16)}
        s, r = diagnostic_scores(acc)
        if name == INCONSISTENT_ROW:
            assert abs(s - s_exp) > 0.1 and abs(r - r_exp) > 0.1
            # what the aggregation actually yields for that row
            assert abs(s - 5.5) <= 0.1 and abs(r - 16.9) <= 0.1
        else:
            assert abs(s - s_exp) <= 0.1, (name, s, s_exp)
            assert abs(r - r_exp) <= 0.1, (name, r, r_exp)
            reproduced += 1
    elapsed = time.perf_counter() - started
    assert reproduced == 10 and elapsed < 1.0
    print(f"\nPASS criterion 1: S/R pairs reproduced for 10/11 rows, "
          f"inconsistent row asserted ({elapsed:.3f}s)")


def test_criterion_2_total_averages_reproduce_within_a_hundredth():
    started = time.perf_counter()
    for name, _, _, axes, total_exp in REFERENCE_ROWS:
        axis_avgs = dict(zip(("I", "II", "III", "IV"), axes))
        assert abs(total_average(axis_avgs) - total_exp) <= 0.01, name
    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    print(f"\nPASS criterion 2: all 11 total averages within 0.01 ({elapsed:.3f}s)")


def test_criterion_3_universal_property_and_oracle_agreement():
    started = time.perf_counter()
    rng = random.Random(2024)
    diagrams = pullbacks = 0
    for i in range(1000):
        d = random_finset_diagram(rng)
        cone = limit(d)
        assert set(cone.apex) == limit_tuples_oracle(d)
        assert verify_universal_property(cone, d) is True
        cc = colimit(d)
        assert len(cc.apex) == len(equivalence_classes_oracle(d))
        assert verify_universal_property(cc, d) is True
        diagrams += 1
        if i % 2 == 0:
            zs = tuple(f"z{j}" for j in range(rng.randrange(1, 4)))
            f = SetMap.from_dict(
                "X", "Z",
                {f"x{j}": zs[rng.randrange(len(zs))] for j in range(rng.randrange(0, 5))},
            )
            g = SetMap.from_dict(
                "Y", "Z",
                {f"y{j}": zs[rng.randrange(len(zs))] for j in range(rng.randrange(0, 5))},
            )
            elems, p1, p2 = pullback(f, g)
            fm, gm = f.as_dict(), g.as_dict()
            brute = sorted(
                (x, y) for x in fm for y in gm if fm[x] == gm[y]
            )
            assert list(elems) == brute
            pb_diagram = cospan(f, g, zs)
            legs = {
                "X": {e: e[0] for e in elems},
                "Y": {e: e[1] for e in elems},
                "Z": {e: fm[e[0]] for e in elems},
            }
            assert verify_universal_property(Cone(elems, legs), pb_diagram) is True
            pullbacks += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    print(f"\nPASS criterion 3: {diagrams} diagrams + {pullbacks} pullbacks, "
          f"100% oracle agreement ({elapsed:.1f}s)")


def _random_category(rng):
    n = rng.randrange(2, 7)
    objects = tuple(f"o{j}" for j in range(n))
    edges = tuple(
        Edge(f"e{j}", objects[rng.randrange(n)], objects[rng.randrange(n)])
        for j in range(rng.randrange(1, 21))
    )
    return free_category(DirectedMultigraph(objects, edges))


def test_criterion_4_functor_mutation_recall():
    started = time.perf_counter()
    rng = random.Random(77)
    mutations = clean = 0
    for _ in range(200):
        cat = _random_category(rng)
        base = identity_functor(cat)
        assert check_functor_laws(base).ok  # zero false positives
        clean += 1
        edges = list(cat.graph.edges)

        # endpoint corruption on a seeded edge
        victim = edges[rng.randrange(len(edges))]
        bad_gen = dict(base.gen_map)
        target = next(o for o in cat.objects if (o, o) != (victim.src, victim.dst))
        bad_gen[victim.edge_id] = identity(target)
        report = check_functor_laws(FunctorRep(cat, cat, base.obj_map, bad_gen))
        assert report.endpoint_violations
        mutations += 1

        # identity corruption on a seeded object
        loop_edge = edges[rng.randrange(len(edges))]
        warp_obj = loop_edge.src

        def warp(m, _e=loop_edge, _o=warp_obj, _b=base):
            if m == identity(_o):
                return Morphism(_e.src, _e.dst, (_e.edge_id,))
            return _b.map_morphism(m)

        report = check_functor_laws(FunctorRep(cat, cat, base.obj_map, None, warp))
        assert warp_obj in report.identity_violations
        mutations += 1

        # composite truncation on an edge with a composable partner
        partnered = [
            e for e in edges
            if any(x.src == e.dst or x.dst == e.src for x in edges if x is not e)
        ]
        if partnered:
            drop = partnered[rng.randrange(len(partnered))].edge_id

            def truncate(m, _d=drop, _b=base):
                if len(m.path) >= 2 and _d in m.path:
                    kept = tuple(p for p in m.path if p != _d)
                    return Morphism(m.src, m.dst, kept)
                return _b.map_morphism(m)

            report = check_functor_laws(
                FunctorRep(cat, cat, base.obj_map, None, truncate),
                sample_budget=10_000,
            )
            assert report.composition_violations
            mutations += 1
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    print(f"\nPASS criterion 4: {clean} clean functors, {mutations} mutations "
          f"all detected ({elapsed:.1f}s)")


def test_criterion_5_taskgen_uniqueness_at_scale(world):
    started = time.perf_counter()
    certified = 0
    for kind in range(1, 16):
        for seed in range(50):
            task = gen_task(world, kind, seed=seed)
            cert = certify_uniqueness(world, task)
            assert cert.satisfying == 1
            certified += 1
    elapsed = time.perf_counter() - started
    assert certified == 750 and elapsed < 300.0
    print(f"\nPASS criterion 5: 750/750 tasks certified unique ({elapsed:.1f}s)")


def test_criterion_6_reference_agent_separation(world):
    started = time.perf_counter()
    tasks = [gen_task(world, kind, seed=s) for kind in range(1, 16) for s in (0, 1)]
    for task in tasks:
        oracle = run_task(OracleAgent(), task, world)
        assert grade(task, oracle.answer) == 1, task.task_id
        assert verify(oracle.trace, task, world).all_pass, task.task_id

        fabricator = run_task(FabricatorAgent(), task, world)
        verdict = verify(fabricator.trace, task, world)
        assert len(verdict.hallucinations) >= 1, task.task_id

        truncating = run_task(TruncatingAgent(), task, world)
        verdict = verify(truncating.trace, task, world)
        assert truncating.trace.chains, task.task_id
        assert len(verdict.compositionality) == len(truncating.trace.chains)

        if task.axis == "IV":
            sycophant = run_task(SycophantAgent(), task, world)
            assert grade(task, sycophant.answer) == 0, task.task_id
    elapsed = time.perf_counter() - started
    assert elapsed < 300.0
    print(f"\nPASS criterion 6: oracle 30/30 clean, fabricator/truncating/"
          f"sycophant separated ({elapsed:.1f}s)")


def _corrupt(trace: Trace, aspect: str, rng: random.Random) -> Trace:
    if aspect == "monotonicity":
        src, dst = trace.edges[0]
        page = sorted(trace.view(src))[rng.randrange(len(trace.view(src)))]
        retrievals = tuple(
            Retrieval(r.node, tuple(p for p in r.pages if p != page))
            if r.node == dst else r
            for r in trace.retrievals
        )
        return Trace(trace.nodes, trace.edges, retrievals, trace.chains,
                     trace.claims, trace.report, trace.answer)
    if aspect == "composition":
        chain = trace.chains[0]
        union = sorted(set().union(*(trace.view(n) for n in chain.nodes)))
        page = union[rng.randrange(len(union))]
        chains = (ChainDecl(chain.nodes,
                            tuple(p for p in chain.composite_pages if p != page)),)
        return Trace(trace.nodes, trace.edges, trace.retrievals, chains,
                     trace.claims, trace.report, trace.answer)
    if aspect == "citation":
        cited = [c for c in trace.claims if c.cited_path]
        victim = cited[rng.randrange(len(cited))]
        page = victim.cited_path[0]
        claims = tuple(
            Claim(c.claim_id, c.conclusion, c.premises, (page, page), c.composite_of)
            if c.claim_id == victim.claim_id else c
            for c in trace.claims
        )
        return Trace(trace.nodes, trace.edges, trace.retrievals, trace.chains,
                     claims, trace.report, trace.answer)
    if aspect == "conclusion":
        composites = [c for c in trace.claims if c.composite_of]
        victim = composites[rng.randrange(len(composites))]
        corrupted = (victim.conclusion[0], victim.conclusion[1], "CORRUPTED")
        claims = tuple(
            Claim(c.claim_id, corrupted, c.premises, c.cited_path, c.composite_of)
            if c.claim_id == victim.claim_id else c
            for c in trace.claims
        )
        return Trace(trace.nodes, trace.edges, trace.retrievals, trace.chains,
                     claims, trace.report, trace.answer)
    if aspect == "report":
        report = ReportStep(("CORRUPTED", "proposition", "x"),
                            trace.report.contributing)
        return Trace(trace.nodes, trace.edges, trace.retrievals, trace.chains,
                     trace.claims, report, trace.answer)
    raise ValueError(aspect)


ASPECT_FIELD = {
    "monotonicity": "monotonicity",
    "composition": "compositionality",
    "citation": "hallucinations",
    "conclusion": "transitivity",
    "report": "report",
}


def test_criterion_7_verifier_mutation_matrix(world):
    started = time.perf_counter()
    aspects = list(ASPECT_FIELD)
    for aspect in aspects:
        for i in range(20):
            kind = (i % 15) + 1
            task = gen_task(world, kind, seed=100 + i)
            record = run_task(OracleAgent(), task, world)
            assert verify(record.trace, task, world).all_pass
            rng = random.Random(f"mutate:{aspect}:{i}")
            corrupted = _corrupt(record.trace, aspect, rng)
            verdict = verify(corrupted, task, world)
            for name, fieldname in ASPECT_FIELD.items():
                witnesses = getattr(verdict, fieldname)
                if name == aspect:
                    assert witnesses, (aspect, task.task_id, verdict)
                else:
                    assert not witnesses, (aspect, name, task.task_id, verdict)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    print(f"\nPASS criterion 7: 5 aspects x 20 traces, independence exact "
          f"({elapsed:.1f}s)")


def test_criterion_8_selfcheck_determinism(tmp_path):
    started = time.perf_counter()
    result = selfcheck(tmp_path, seed=0)
    assert result["checks"]["byte_identical_reruns"], result["mismatched"]
    assert result["checks"]["oracle_all_kinds_correct"]
    assert result["checks"]["fabricator_type4_zero"]
    assert result["checks"]["sycophant_type4_zero"]
    elapsed = time.perf_counter() - started
    print(f"\nPASS criterion 8: consecutive runs byte-identical across world/"
          f"tasks/traces/scorecard ({elapsed:.1f}s)")
