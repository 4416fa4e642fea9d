"""Compare the compiled and pure-Python kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.
"""
import argparse
import timeit

import numpy as np

from kwayneg import _backend, build_report
from kwayneg.linalg import MAX_SWEEPS


def _cases(rng):
    z = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    herm = (z + z.conj().T) / 2
    sel = (rng.random(16) < 0.5).astype(np.uint8)
    psi = rng.normal(size=16) + 1j * rng.normal(size=16)
    return herm, sel, psi / np.linalg.norm(psi)


def bench(repeat):
    herm, sel, psi = _cases(np.random.default_rng(0))
    rows = []
    for name in _backend.available():
        k = _backend.get(name)
        tasks = {
            "jacobi_eigh 16x16": lambda: k.jacobi_eigh(herm, 1e-12, MAX_SWEEPS),
            "selective_transpose 16x16": lambda: k.selective_transpose(herm, 0b1000, sel),
        }
        for task, fn in tasks.items():
            n = max(1, repeat // (100 if name == "python" and "jacobi" in task else 1))
            best = min(timeit.repeat(fn, number=n, repeat=5)) / n
            rows.append((task, name, best))
    # full single-qubit report on the active backend
    n = max(1, repeat // 10)
    best = min(timeit.repeat(lambda: build_report(psi, "A"), number=n, repeat=5)) / n
    rows.append(("build_report", _backend.BACKEND, best))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=1000)
    args = parser.parse_args(argv)
    rows = bench(args.repeat)
    print(f"{'kernel':<28}{'backend':<10}{'time/call':>14}")
    for task, name, t in rows:
        print(f"{task:<28}{name:<10}{t * 1e6:>11.1f} us")
    by = {(task, name): t for task, name, t in rows}
    for task in ("jacobi_eigh 16x16", "selective_transpose 16x16"):
        if (task, "cython") in by:
            print(f"speedup {task}: {by[task, 'python'] / by[task, 'cython']:.1f}x")


if __name__ == "__main__":
    main()
