"""Time the compiled kernels against the plain-Python fallback.

Each mode runs in a fresh interpreter because QFACE_DISABLE_JIT is read at
import time.  Compilation happens in a warm-up call outside the timings.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from qface import _kernels as K
from qface.faces import face_lattice
from qface.families import double_cycle, random_quiver

repeat = int(sys.argv[1])
cases = {
    "scan_facets D(C_6)": lambda: K.scan_facets(*double_cycle(6).kernel_args(), double_cycle(6).full_mask),
    "scan_ranked_faces random 9/12": lambda: K.scan_ranked_faces(*RANKED.kernel_args(), RANKED.full_mask),
    "face_lattice D(C_7)": lambda: face_lattice(double_cycle(7)),
}
for seed in range(1000):
    RANKED = random_quiver(9, 12, seed)
    if K.has_rank_function(*RANKED.kernel_args(), RANKED.full_mask):
        break
out = {"jit": K.JIT_ENABLED}
for name, run in cases.items():
    run()
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        run()
        best = min(best, time.perf_counter() - start)
    out[name] = best
print(json.dumps(out))
"""


def measure(disable_jit: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("QFACE_DISABLE_JIT", None)
    if disable_jit:
        env["QFACE_DISABLE_JIT"] = "1"
    proc = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="timed runs per case; the best is reported")
    args = parser.parse_args(argv)
    jit = measure(False, args.repeat)
    pure = measure(True, args.repeat)
    if not jit.pop("jit"):
        print("numba unavailable: both columns use the fallback")
    pure.pop("jit")
    print(f"{'case':34} {'numba':>10} {'python':>10} {'speedup':>8}")
    for name in jit:
        a, b = jit[name], pure[name]
        print(f"{name:34} {a:10.4f} {b:10.4f} {b / a:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
