#!/usr/bin/env python3
"""Benchmark the compiled contraction kernel against the numpy fallback.

Runs the hot gather-multiply-sum loop on representative workloads (the
quartic ((4,4,2)) evaluation plus smaller shapes) and prints a table.
"""

import time

import numpy as np

from qinv import _contract_py
from qinv.codes import fixture_442, projector
from qinv.invariants import _col_cache, _digit_cache
from qinv.permtuple import PermTuple, parse_tuple
from qinv.qspace import Operator, SystemShape

try:
    from qinv import _contract
except ImportError:
    _contract = None


def workload(name: str, tuple_str: str, k: int, shape: SystemShape, rng):
    t = parse_tuple(tuple_str, k)
    d = shape.dim
    mats = rng.normal(size=(t.k, d, d)) + 1j * rng.normal(size=(t.k, d, d))
    mats = np.ascontiguousarray(mats)
    _digits, rows = _digit_cache(shape.alpha, t.n, t.k)
    cols = _col_cache(t, shape.alpha)
    return name, mats, rows, cols


def time_kernel(fn, mats, rows, cols, repeats: int):
    fn(mats, rows, cols)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        value = fn(mats, rows, cols)
    return (time.perf_counter() - t0) / repeats, value


def main():
    rng = np.random.default_rng(0)
    p = projector(fixture_442())
    g = "(1,2,3,4)"
    cases = [
        workload("quartic n=4 a=2 (2^16)", ";".join([g] * 4), 4, p.shape, rng),
        workload("cubic   n=4 a=2 (2^12)", ";".join(["(1,2,3)"] * 4), 3, p.shape, rng),
        workload("cubic   n=3 a=3 (3^9)", ";".join(["(1,2,3)"] * 3), 3, SystemShape(3, 3), rng),
        workload("quad    n=4 a=2 (2^8)", ";".join(["(1,2)"] * 4), 2, p.shape, rng),
    ]
    kernels = [("python", _contract_py.contract_blocks)]
    if _contract is not None:
        kernels.insert(0, ("compiled", _contract.contract_blocks))
    else:
        print("compiled kernel unavailable; benchmarking the fallback only")

    header = f"{'workload':28s}" + "".join(f"{name:>14s}" for name, _fn in kernels)
    if len(kernels) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for name, mats, rows, cols in cases:
        repeats = max(3, int(2e6 / rows.shape[0]))
        times = []
        value = None
        for _kname, fn in kernels:
            dt, v = time_kernel(fn, mats, rows, cols, repeats)
            if value is not None:
                assert abs(v - value) < 1e-9 * max(1.0, abs(value)), "kernels disagree"
            value = v
            times.append(dt)
        line = f"{name:28s}" + "".join(f"{dt * 1e3:11.3f} ms" for dt in times)
        if len(times) == 2:
            line += f"{times[1] / times[0]:9.2f}x"
        print(line)


if __name__ == "__main__":
    main()
