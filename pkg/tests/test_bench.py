"""Benchmark harness: process isolation, censoring, aggregation, CSV."""

import random

import pytest

from adtpareto.bench import (
    BenchRecord,
    aggregate_medians,
    run_suite,
    write_medians_csv,
    write_records_csv,
)
from adtpareto.gen import GenConfig, SplitMix64, random_aadt


def test_suite_shape_inference_and_cardinality():
    records = run_suite(sizes=[12, 16], per_size=2, seed=5,
                        timeout_seconds=30.0, algorithms=["bu", "bdd"])
    assert len(records) == 8
    assert all(r.shape == "tree" for r in records)
    assert sorted({r.nodes for r in records}) == [12, 16]
    assert {r.algo for r in records} == {"bu", "bdd"}
    for r in records:
        assert not r.timed_out
        assert r.front_size >= 1
        assert r.seconds >= 0.0
        if r.algo == "bdd":
            assert r.bdd_nodes >= 1
        else:
            assert r.bdd_nodes is None


def test_suite_is_deterministic_modulo_timing():
    kwargs = dict(sizes=[10], per_size=2, seed=9, timeout_seconds=30.0,
                  algorithms=["bdd"])
    key = lambda rs: [(r.instance, r.nodes, r.shape, r.algo, r.front_size,
                       r.bdd_nodes, r.timed_out) for r in rs]
    assert key(run_suite(**kwargs)) == key(run_suite(**kwargs))


def test_dag_shape_inferred_without_bu():
    records = run_suite(sizes=[10], per_size=1, seed=2,
                        timeout_seconds=30.0, algorithms=["bdd"])
    assert all(r.shape == "dag" for r in records)
    assert all("gen-dag-" in r.instance for r in records)


def test_tree_cross_check_runs_clean():
    # naive and bu both finish on small trees; a front mismatch would
    # raise instead of returning records.
    records = run_suite(sizes=[8], per_size=2, seed=3,
                        timeout_seconds=60.0, algorithms=["bu", "naive"])
    assert len(records) == 4
    by_instance = {}
    for r in records:
        by_instance.setdefault(r.instance, set()).add(r.front_size)
    for sizes in by_instance.values():
        assert len(sizes) == 1


def test_timeout_censors_enumeration():
    # The generated 120-node tree has far too many basic steps for the
    # brute-force pass to finish in half a second.
    seeder = SplitMix64(11)
    inst = random_aadt(GenConfig(node_count=120, seed=seeder.next_u64(),
                                 shape="tree"))
    defense, attack = inst.adt.basic_steps()
    assert len(defense) + len(attack) >= 40
    records = run_suite(sizes=[120], per_size=1, seed=11,
                        timeout_seconds=0.5, algorithms=["naive"],
                        shape="tree")
    (r,) = records
    assert r.instance == inst.name
    assert r.timed_out
    assert r.seconds == 0.5
    assert r.front_size is None
    assert r.bdd_nodes is None


def test_suite_argument_validation():
    with pytest.raises(ValueError):
        run_suite(sizes=[10], per_size=1, seed=1, timeout_seconds=1.0,
                  algorithms=[])
    with pytest.raises(ValueError):
        run_suite(sizes=[10], per_size=1, seed=1, timeout_seconds=1.0,
                  algorithms=["quantum"])
    with pytest.raises(ValueError):
        run_suite(sizes=[10], per_size=1, seed=1, timeout_seconds=1.0,
                  algorithms=["bu"], shape="dag")


def _rec(nodes, algo, seconds):
    return BenchRecord(instance=f"i{nodes}", nodes=nodes, shape="tree",
                       algo=algo, seconds=seconds, front_size=1,
                       bdd_nodes=None, timed_out=False)


def test_aggregate_medians_odd_and_even():
    rows = aggregate_medians([_rec(5, "bu", 1.0), _rec(10, "bu", 3.0),
                              _rec(20, "bu", 100.0)])
    assert rows == [(1, 20, "bu", 3.0)]
    rows = aggregate_medians([_rec(5, "bu", 1.0), _rec(10, "bu", 3.0)])
    assert rows == [(1, 20, "bu", 2.0)]


def test_aggregate_medians_buckets():
    rows = aggregate_medians([_rec(20, "bu", 1.0), _rec(21, "bu", 2.0),
                              _rec(1, "naive", 5.0)])
    assert rows == [
        (1, 20, "bu", 1.0),
        (1, 20, "naive", 5.0),
        (21, 40, "bu", 2.0),
    ]
    # Custom interval relocates the boundaries.
    rows = aggregate_medians([_rec(10, "bu", 1.0), _rec(11, "bu", 2.0)],
                             interval=10)
    assert rows == [(1, 10, "bu", 1.0), (11, 20, "bu", 2.0)]


def test_aggregate_medians_permutation_invariant():
    records = [_rec(n, a, float(n + len(a)))
               for n in (3, 17, 22, 39, 41) for a in ("bu", "naive", "bdd")]
    shuffled = records[:]
    random.Random(4).shuffle(shuffled)
    assert aggregate_medians(records) == aggregate_medians(shuffled)


def test_aggregate_medians_empty():
    assert aggregate_medians([]) == []


def test_records_csv(tmp_path):
    recs = [
        BenchRecord("gen-tree-n5-s1", 5, "tree", "bu", 0.25, 3, None, False),
        BenchRecord("gen-dag-n9-s2", 9, "dag", "bdd", 1.5, 2, 14, False),
        BenchRecord("gen-dag-n9-s2", 9, "dag", "naive", 60.0, None, None, True),
    ]
    path = tmp_path / "records.csv"
    write_records_csv(recs, path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == [
        "instance,nodes,shape,algo,seconds,front_size,bdd_nodes,timed_out",
        "gen-tree-n5-s1,5,tree,bu,0.25,3,,false",
        "gen-dag-n9-s2,9,dag,bdd,1.5,2,14,false",
        "gen-dag-n9-s2,9,dag,naive,60.0,,,true",
    ]


def test_medians_csv(tmp_path):
    path = tmp_path / "medians.csv"
    write_medians_csv([(1, 20, "bu", 0.5), (21, 40, "bdd", 2.0)], path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines == [
        "bucket_lo,bucket_hi,algo,median_seconds",
        "1,20,bu,0.5",
        "21,40,bdd,2.0",
    ]
