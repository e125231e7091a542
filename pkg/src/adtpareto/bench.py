"""Runtime comparison harness.

Each measured run executes in a forked child process so a hard timeout
can kill it mid-enumeration; a timed-out run is a record, not an error,
and enters aggregation right-censored at the timeout value.  One
warm-up run per (instance, algorithm) is discarded before measuring.
"""

from __future__ import annotations

import csv
import multiprocessing
import statistics
import time
import traceback
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bdd import bdd_bu, compile_adt
from .bu import bu_pareto
from .gen import GenConfig, SplitMix64, random_aadt
from .model import Aadt
from .naive import naive_pareto

ALGORITHMS = ("naive", "bu", "bdd")


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    nodes: int
    shape: str
    algo: str
    seconds: float
    front_size: int | None
    bdd_nodes: int | None
    timed_out: bool


def _run_algo(aadt: Aadt, algo: str):
    """One analysis; returns (front, bdd node count or None)."""
    if algo == "naive":
        return naive_pareto(aadt, force=True), None
    if algo == "bu":
        return bu_pareto(aadt), None
    if algo == "bdd":
        mgr, ref = compile_adt(aadt.adt)
        return bdd_bu(aadt, mgr, ref), mgr.node_count(ref)
    raise ValueError(f"unknown algorithm {algo!r}")


def _child(conn, aadt: Aadt, algo: str) -> None:
    try:
        t0 = time.perf_counter()
        front, extra = _run_algo(aadt, algo)
        dt = time.perf_counter() - t0
        conn.send(("ok", dt, tuple(front), extra))
    except Exception:
        conn.send(("error", traceback.format_exc()))
    finally:
        conn.close()


def _measure_once(aadt: Aadt, algo: str, timeout_seconds: float):
    """(seconds, front, bdd_nodes, timed_out) for one isolated run."""
    ctx = multiprocessing.get_context("fork")
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_child, args=(child, aadt, algo))
    proc.start()
    child.close()
    # Allow a little slack for process startup; censoring below keeps
    # the recorded time within the timeout.
    if parent.poll(timeout_seconds + 0.5):
        msg = parent.recv()
        proc.join()
        parent.close()
        if msg[0] == "error":
            raise RuntimeError(f"{algo} failed on {aadt.name}:\n{msg[1]}")
        _, dt, front, extra = msg
        if dt > timeout_seconds:
            return float(timeout_seconds), None, None, True
        return dt, front, extra, False
    proc.terminate()
    proc.join()
    parent.close()
    return float(timeout_seconds), None, None, True


def run_suite(
    sizes: Sequence[int],
    per_size: int,
    seed: int,
    timeout_seconds: float,
    algorithms: Sequence[str],
    shape: str | None = None,
) -> list[BenchRecord]:
    """Benchmark generated instances; one record per (instance, algorithm).

    The instance set is a pure function of (sizes, per_size, seed,
    shape).  Shape defaults to tree when the tree-only bottom-up
    algorithm is requested and dag otherwise.  On tree instances the
    fronts of all algorithms that finished are cross-checked for
    equality.
    """
    if not algorithms:
        raise ValueError("no algorithms requested")
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}")
    if shape is None:
        shape = "tree" if "bu" in algorithms else "dag"
    if "bu" in algorithms and shape != "tree":
        raise ValueError("the bottom-up algorithm only runs on tree-shaped instances")

    seeder = SplitMix64(seed)
    records: list[BenchRecord] = []
    for size in sizes:
        for _ in range(per_size):
            inst_seed = seeder.next_u64()
            aadt = random_aadt(GenConfig(node_count=size, seed=inst_seed, shape=shape))
            fronts: dict[str, tuple] = {}
            for algo in algorithms:
                # Discarded warm-up; when even the warm-up exceeds the
                # timeout the measured run would too (the algorithms are
                # deterministic), so record the censored value directly.
                _, _, _, warm_timed_out = _measure_once(aadt, algo, timeout_seconds)
                if warm_timed_out:
                    seconds, front, extra, timed_out = float(timeout_seconds), None, None, True
                else:
                    seconds, front, extra, timed_out = _measure_once(
                        aadt, algo, timeout_seconds
                    )
                records.append(
                    BenchRecord(
                        instance=aadt.name,
                        nodes=size,
                        shape=shape,
                        algo=algo,
                        seconds=seconds,
                        front_size=None if front is None else len(front),
                        bdd_nodes=extra,
                        timed_out=timed_out,
                    )
                )
                if front is not None:
                    fronts[algo] = tuple(map(tuple, front))
            if shape == "tree" and len(fronts) > 1:
                vals = list(fronts.values())
                if any(v != vals[0] for v in vals[1:]):
                    raise RuntimeError(
                        f"algorithms disagree on {aadt.name}: "
                        + ", ".join(f"{a}={len(f)} points" for a, f in fronts.items())
                    )
    return records


def aggregate_medians(
    records: Iterable[BenchRecord], interval: int = 20
) -> list[tuple[int, int, str, float]]:
    """Median seconds per (node-count bucket, algorithm).

    Buckets are [1..interval], [interval+1..2*interval], ...  Timed-out
    records already carry the timeout value, so censoring is inherited.
    Even-sized buckets use the mean of the two middle values.
    """
    groups: dict[tuple[int, str], list[float]] = {}
    for r in records:
        bucket = (r.nodes - 1) // interval
        groups.setdefault((bucket, r.algo), []).append(r.seconds)
    rows = []
    for (bucket, algo), secs in sorted(groups.items()):
        lo, hi = bucket * interval + 1, (bucket + 1) * interval
        rows.append((lo, hi, algo, statistics.median(secs)))
    return rows


def write_records_csv(records: Iterable[BenchRecord], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(
            ["instance", "nodes", "shape", "algo", "seconds", "front_size", "bdd_nodes", "timed_out"]
        )
        for r in records:
            w.writerow(
                [
                    r.instance,
                    r.nodes,
                    r.shape,
                    r.algo,
                    r.seconds,
                    "" if r.front_size is None else r.front_size,
                    "" if r.bdd_nodes is None else r.bdd_nodes,
                    "true" if r.timed_out else "false",
                ]
            )


def write_medians_csv(rows: Iterable[tuple[int, int, str, float]], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["bucket_lo", "bucket_hi", "algo", "median_seconds"])
        for lo, hi, algo, med in rows:
            w.writerow([lo, hi, algo, med])
