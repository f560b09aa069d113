"""Benchmark the identity-sweep kernels: numpy fallback vs compiled.

Runs every kernel on odd dihedral groups of increasing order and prints a
timing table.  Both backends produce identical results (asserted here, and
tested properly in the suite); the point of this script is the speed gap.

Usage: python benchmarks/bench_kernels.py [--max-m 6] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from dwcat._kernels import _pure

try:
    from dwcat._kernels import _speedups
except ImportError:
    _speedups = None

from dwcat.cohomology import dihedral_omega

SWEEPS = [
    "tau_associativity_defects",
    "gamma_multiplicativity_defects",
    "gamma_tau_defects",
    "braiding_compatibility_defects",
    "inverse_braiding_compatibility_defects",
    "ribbon_defects",
]


def time_backend(backend, omega, repeat: int) -> dict[str, float]:
    G = omega.group
    w, M = omega.values, omega.modulus
    args_g = (w, G.table, G.inv, G.conj, M)
    out = {}

    def best(fn, *args):
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn(*args)
            times.append(time.perf_counter() - t0)
        return min(times)

    out["cocycle_defects"] = best(backend.cocycle_defects, w, G.table, M)
    tau = backend.tau_table(*args_g)
    gamma = backend.gamma_table(*args_g)
    for name in SWEEPS:
        out[name] = best(getattr(backend, name), tau, gamma, w, G.table, G.inv, G.conj, M)
    return out


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-m", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _speedups is None:
        print("compiled backend not built; showing fallback only")

    for m in range(1, args.max_m + 1):
        omega = dihedral_omega(m, 1)
        n = omega.group.n
        pure = time_backend(_pure, omega, args.repeat)
        fast = time_backend(_speedups, omega, args.repeat) if _speedups else None
        print(f"\nD_{2 * m + 1}  (order {n}, {n ** 4} quadruples per arity-4 sweep)")
        header = f"  {'kernel':40s} {'numpy':>10s}"
        if fast:
            header += f" {'compiled':>10s} {'speedup':>8s}"
        print(header)
        for name in ["cocycle_defects"] + SWEEPS:
            row = f"  {name:40s} {pure[name] * 1e3:9.2f}ms"
            if fast:
                ratio = pure[name] / fast[name] if fast[name] > 0 else float("inf")
                row += f" {fast[name] * 1e3:9.2f}ms {ratio:7.1f}x"
            print(row)


if __name__ == "__main__":
    main()
