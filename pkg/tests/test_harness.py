"""Routing, generation, and benchmark plumbing."""

import json

import numpy as np
import pytest

from subiso.errors import ClassViolation
from subiso.graphs import Graph, disjoint_union, verify_embedding
from subiso.harness import (
    ALGORITHMS,
    SolveResult,
    bench,
    bench_text,
    check_class,
    dispatch,
    generate,
    load_corpus,
    run_algorithm,
    write_corpus_instance,
)
from subiso.recognizers import find_p4_hitting_set, find_vi_set, twin_partition
from subiso.solvers import solve_backtracking

from .util import path, star


def test_solve_result_json_shape():
    res = SolveResult(answer="yes", embedding=None, algorithm="p4free", seed=7)
    d = res.to_json_dict()
    assert set(d) == {
        "answer",
        "embedding",
        "algorithm",
        "parameters",
        "seed",
        "elapsedMillis",
        "guessesExplored",
        "note",
    }
    assert d["elapsedMillis"] is None
    assert d["seed"] == 7
    timed = SolveResult(answer="no", elapsed_millis=3.5).to_json_dict(with_timing=True)
    assert timed["elapsedMillis"] == 3.5


def test_run_algorithm_yes_and_no():
    host = star(4)
    res = run_algorithm("p4free", host, star(2))
    assert res.answer == "yes"
    assert res.embedding is not None
    assert verify_embedding(star(2), host, res.embedding)
    assert res.algorithm == "p4free"
    assert res.elapsed_millis is not None and res.elapsed_millis >= 0.0

    res = run_algorithm("p4free", host, Graph(3, [(0, 1), (1, 2), (0, 2)]))
    assert res.answer == "no" and res.embedding is None


def test_run_algorithm_argument_errors():
    with pytest.raises(ValueError):
        run_algorithm("does-not-exist", star(2), star(1))
    for name in ("p4kp3", "vi", "hitting"):
        with pytest.raises(ValueError):
            run_algorithm(name, star(2), star(1))


def test_run_algorithm_class_violation_propagates():
    with pytest.raises(ClassViolation):
        run_algorithm("p4free", path(5), star(1))


def test_run_algorithm_randomized_no_note():
    res = run_algorithm("hitting", star(3), path(3), param=1, repeats=6)
    assert res.answer == "no"
    assert "2^-6" in res.note
    assert res.parameters == {"k": 1, "repeats": 6}


def test_run_algorithm_budget_becomes_unknown():
    res = run_algorithm("oracle", path(10), path(9), budget=1)
    assert res.answer == "unknown"
    assert res.embedding is None
    assert "budget" in res.note
    assert res.guesses_explored >= 1


def test_dispatch_rejects_bad_descriptors():
    for bad in ([], [0], [4, -1]):
        with pytest.raises(ValueError):
            dispatch(star(2), star(1), bad)


def test_dispatch_p4free_route():
    host = disjoint_union([star(3), Graph(3, [(0, 1), (1, 2), (0, 2)])])
    res = dispatch(host, star(2), [4])
    assert res.algorithm == "p4free"
    assert res.answer == "yes"
    # pattern with a 4-path is settled without touching a solver
    res = dispatch(host, path(4), [4])
    assert res.answer == "no"
    assert res.algorithm == "p4free"
    assert "4-vertex path" in res.note
    assert res.guesses_explored == 0


def test_dispatch_p4_plus_p3_route():
    res = dispatch(path(7), path(5), [4, 3, 3])
    assert res.algorithm == "p4kp3"
    assert res.parameters == {"k": 2}
    assert res.answer == "yes"
    res = dispatch(path(7), path(8), [4, 3])
    assert res.parameters == {"k": 1}
    assert res.answer == "no"


def test_dispatch_hitting_route():
    # two excluded 4-paths cannot ride the integrity route
    res = dispatch(star(5), path(3), [4, 4])
    assert res.algorithm == "hitting"
    assert res.parameters["k"] == 4
    assert res.answer == "yes"


def test_dispatch_np_hard_descriptors_fall_back():
    res = dispatch(star(3), star(2), [6])
    assert res.algorithm == "oracle"
    assert "exhaustive search" in res.note
    res = dispatch(star(3), star(2), [5, 5, 5])
    assert res.algorithm == "oracle"
    assert "exhaustive search" in res.note


def test_dispatch_single_p5_dichotomy():
    # host rich in 4-paths: the open case, unless the oracle is allowed
    res = dispatch(path(25), path(25), [5])
    assert res.answer == "unknown"
    assert "open case" in res.note
    res = dispatch(path(25), path(25), [5], oracle_fallback=True)
    assert res.answer == "yes"
    assert res.algorithm == "oracle"

    # host short on 4-paths: routed to the hitting solver with a wide k
    res = dispatch(path(7), path(4), [5])
    assert res.algorithm == "hitting"
    assert res.parameters["k"] == 16
    assert res.answer == "yes"

    # pattern packs the 4-paths the host lacks: settled directly
    rich = disjoint_union([path(4)] * 5)
    res = dispatch(star(9), rich, [5])
    assert res.answer == "no"
    assert "disjoint 4-paths" in res.note


def test_generate_postconditions():
    rng = np.random.default_rng(0)
    host, pattern, expect = generate("p4free", 30, rng)
    assert expect is True
    assert check_class(host, "p4free")
    got = solve_backtracking(host, pattern)
    assert got is not None and verify_embedding(pattern, host, got)

    host, _, _ = generate("vi", 20, rng, param=3)
    assert find_vi_set(host, 3) is not None

    host, _, _ = generate("hitting", 16, rng, param=2)
    assert find_p4_hitting_set(host, 2) is not None

    host, pattern, expect = generate("nd", 25, rng, planted=False, param=4)
    assert expect is None
    assert twin_partition(host).width <= 4
    assert twin_partition(pattern).width <= 4
    assert pattern.n == 12


def test_generate_planted_patterns_embed():
    rng = np.random.default_rng(5)
    for kind in ("p4free", "vi", "hitting", "nd"):
        for _ in range(5):
            host, pattern, expect = generate(kind, 12, rng, param=2)
            assert expect is True
            got = solve_backtracking(host, pattern)
            assert got is not None, (kind, host.edges, pattern.edges)


def test_generate_argument_errors():
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError):
        generate("bogus", 5, rng)
    with pytest.raises(ValueError):
        generate("p4free", 0, rng)


def test_check_class_by_kind():
    assert check_class(star(4), "p4free")
    assert not check_class(path(4), "p4free")
    assert check_class(path(6), "vi", 3)
    assert not check_class(path(9), "vi", 2)
    assert check_class(path(8), "hitting", 2)
    assert check_class(Graph(6, [(u, v) for u in range(6) for v in range(u + 1, 6)]), "nd", 1)
    with pytest.raises(ValueError):
        check_class(star(2), "bogus")


def test_corpus_round_trip(tmp_path):
    d = str(tmp_path / "corpus")
    write_corpus_instance(d, "a-0001", star(3), star(2), {"param": 2, "cls": "p4free"})
    write_corpus_instance(d, "b-0002", path(4), path(3))
    items = load_corpus(d)
    assert [name for name, _, _, _ in items] == ["a-0001", "b-0002"]
    name, host, pattern, meta = items[0]
    assert (host.n, sorted(host.edges)) == (4, sorted(star(3).edges))
    assert (pattern.n, sorted(pattern.edges)) == (3, sorted(star(2).edges))
    assert meta == {"param": 2, "cls": "p4free"}
    assert items[1][3] == {}


def test_bench_empty_corpus(tmp_path):
    d = str(tmp_path / "empty")
    import os

    os.makedirs(d)
    report = bench(d, ["p4free", "oracle"])
    assert report["rows"] == []
    assert report["corpus"] == []
    assert bench_text(report).startswith("instance")


def test_bench_agreement_and_determinism(tmp_path):
    d = str(tmp_path / "corpus")
    rng = np.random.default_rng(9)
    for i in range(6):
        host, pattern, _ = generate("p4free", 14, rng)
        write_corpus_instance(d, f"p4free-14-9-{i:04d}", host, pattern)
    report = bench(d, ["p4free", "oracle"], seed=9)
    agg = report["aggregates"]
    assert agg["agreement"]["p4free|oracle"] == {"compared": 6, "agreed": 6}
    assert agg["answers"]["p4free"] == {"yes": 6}
    assert all(row["elapsedMillis"] is None for row in report["rows"])

    again = bench(d, ["p4free", "oracle"], seed=9)
    assert json.dumps(report, sort_keys=True) == json.dumps(again, sort_keys=True)

    text = bench_text(report)
    assert "agreement p4free|oracle: 6/6" in text
    assert "answers p4free: yes=6" in text


def test_bench_class_violation_is_a_row_not_a_crash(tmp_path):
    d = str(tmp_path / "corpus")
    write_corpus_instance(d, "ok-0001", star(3), star(2))
    write_corpus_instance(d, "bad-0001", path(5), star(1))
    report = bench(d, ["p4free", "oracle"])
    by_key = {(r["instance"], r["algorithm"]): r for r in report["rows"]}
    bad = by_key[("bad-0001", "p4free")]
    assert bad["answer"] == "class-violation"
    assert bad["note"]
    # the violating row is excluded from agreement counts
    assert report["aggregates"]["agreement"]["p4free|oracle"] == {
        "compared": 1,
        "agreed": 1,
    }


def test_bench_param_sources(tmp_path):
    d = str(tmp_path / "corpus")
    write_corpus_instance(d, "vi-0001", path(6), path(4), {"param": 3})
    report = bench(d, ["vi", "vi:4"])
    by_key = {(r["instance"], r["algorithm"]): r for r in report["rows"]}
    assert by_key[("vi-0001", "vi")]["parameters"] == {"k": 3}
    assert by_key[("vi-0001", "vi:4")]["parameters"] == {"k": 4}
    assert by_key[("vi-0001", "vi")]["answer"] == "yes"


def test_algorithm_listing_is_stable():
    assert ALGORITHMS == ("p4free", "p4kp3", "vi", "hitting", "nd", "oracle")
