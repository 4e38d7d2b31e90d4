"""Compare the compiled term-map kernel against the pure-Python twin.

Run from the repository root:

    python3 benchmarks/bench_kernel.py [--repeat N]

Each workload is executed under both backends with identical inputs; the
outputs are compared for equality before any number is reported, so a
speedup is never quoted for code that disagrees.
"""

import argparse
import time

from robyclif import kernel
from robyclif.freealg import char_poly, monogenic_algebra, split_algebra
from robyclif.matrix import PolyMatrix
from robyclif.poly import Poly, parse_poly


def dense_product():
    f = parse_poly("x + 2*y + 3*z + 1") ** 6
    g = parse_poly("x - y + z - 2") ** 6
    return f * g


def matrix_power():
    rows = [
        ["x", "y", "0", "1"],
        ["1", "x - y", "y^2", "0"],
        ["0", "1", "x + 1", "y"],
        ["y", "0", "1", "x"],
    ]
    m = PolyMatrix.from_rows([[parse_poly(e) for e in row] for row in rows])
    return m.pow(5)

def split_charpoly():
    return char_poly(split_algebra(6)).poly


def cover_charpoly():
    algebra = monogenic_algebra(parse_poly("z^4 - x^4 - y^4 - z2^4"), "z")
    return char_poly(algebra).poly


WORKLOADS = [
    ("dense poly product", dense_product),
    ("4x4 matrix power", matrix_power),
    ("split charpoly d=6", split_charpoly),
    ("quartic cover charpoly", cover_charpoly),
]


def run(workload, backend, repeat):
    kernel.set_backend(backend)
    best = None
    value = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = workload()
        dt = time.perf_counter() - t0
        if best is None or dt < best:
            best = dt
    return best, value


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3, help="runs per workload")
    args = parser.parse_args()

    backends = kernel.available_backends()
    if "cython" not in backends:
        print("compiled kernel not built; timing the Python backend only")

    rows = [("workload", "python", "cython", "speedup")]
    try:
        for name, fn in WORKLOADS:
            t_py, v_py = run(fn, "python", args.repeat)
            if "cython" in backends:
                t_cy, v_cy = run(fn, "cython", args.repeat)
                assert v_cy == v_py, f"backends disagree on {name}"
                rows.append(
                    (name, f"{t_py * 1e3:.1f} ms", f"{t_cy * 1e3:.1f} ms",
                     f"{t_py / t_cy:.2f}x")
                )
            else:
                rows.append((name, f"{t_py * 1e3:.1f} ms", "-", "-"))
    finally:
        kernel.set_backend("auto")

    widths = [max(len(r[c]) for r in rows) for c in range(4)]
    for row in rows:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


if __name__ == "__main__":
    main()
