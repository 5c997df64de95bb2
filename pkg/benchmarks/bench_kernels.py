"""Compare the jitted and interpreted canonical-labelling kernel.

The selection between numba and plain CPython happens at import time via
the ``GCWB_NO_NUMBA`` environment variable, so the two paths cannot share
a process: this script re-executes itself as a worker subprocess once per
mode, times the same seeded workloads in each, and prints a small table
with the speedups.

Usage::

    python3 benchmarks/bench_kernels.py [--canon-terms N]
"""

import argparse
import json
import os
import subprocess
import sys
from time import perf_counter


# ----------------------------------------------------------------- #
#  workloads (run inside the worker process)
# ----------------------------------------------------------------- #


def _random_terms(count, seed=0):
    """Distinct-ish labelled seven-vertex graphs, nine edges each."""
    import numpy as np

    from gcworkbench.graphs import ONE, graph

    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(1, 8) for j in range(i + 1, 8)]
    terms = []
    for _ in range(count):
        picks = rng.choice(len(pairs), size=9, replace=False)
        edges = []
        for p in picks:
            u, v = pairs[p]
            edges.append((v, u) if rng.random() < 0.5 else (u, v))
        terms.append(graph(ONE, 0, 7, tuple(edges)))
    return terms


def worker(canon_terms):
    from gcworkbench._kernels import HAVE_NUMBA
    from gcworkbench.graphs import BI_ORD, ONE, canonicalize, enumerate_classes

    # pay any jit-compilation cost before the clock starts
    for t in _random_terms(3, seed=99):
        canonicalize(t)

    times = {}

    t0 = perf_counter()
    n_one = len(enumerate_classes(ONE, 0, 6, 8))
    times["enumerate one-colour (0,6,8)"] = perf_counter() - t0

    t0 = perf_counter()
    n_two = len(enumerate_classes(BI_ORD, 2, 4, 6))
    times["enumerate two-coloured (2,4,6)"] = perf_counter() - t0

    terms = _random_terms(canon_terms)
    t0 = perf_counter()
    for t in terms:
        canonicalize(t)
    times["canonicalize %d random terms" % canon_terms] = perf_counter() - t0

    print(json.dumps({"numba": HAVE_NUMBA, "times": times,
                      "classes": [n_one, n_two]}))


# ----------------------------------------------------------------- #
#  driver
# ----------------------------------------------------------------- #


def run_mode(no_numba, canon_terms):
    env = dict(os.environ)
    env["GCWB_NO_NUMBA"] = "1" if no_numba else "0"
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--canon-terms", str(canon_terms)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--canon-terms", type=int, default=4000,
                    help="random labelled graphs for the canonicalize pass")
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)

    if args.worker:
        worker(args.canon_terms)
        return 0

    jit = run_mode(False, args.canon_terms)
    plain = run_mode(True, args.canon_terms)
    if not jit["numba"]:
        print("note: numba unavailable; both columns are the interpreted path")
    if jit["classes"] != plain["classes"]:
        raise SystemExit("paths disagree on class counts: %r vs %r"
                         % (jit["classes"], plain["classes"]))

    width = max(len(k) for k in jit["times"])
    print("%-*s  %10s  %10s  %s"
          % (width, "workload", "jit [s]", "plain [s]", "speedup"))
    for key in jit["times"]:
        a, b = jit["times"][key], plain["times"][key]
        print("%-*s  %10.3f  %10.3f  %6.2fx" % (width, key, a, b, b / a))
    return 0


if __name__ == "__main__":
    sys.exit(main())
