"""Time the pure-Python and compiled kernel backends on identical inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import timeit

from eigenbound.kernels import available_backends


def _workloads(mod):
    xs = [0.1 + 0.37 * i for i in range(200)]
    return {
        "bessel_j": lambda: [mod.bessel_j(nu, x) for nu in (0.0, 1.5, 7.0) for x in xs],
        "bessel_i_scaled": lambda: [mod.bessel_i_scaled(nu, x) for nu in (0.0, 2.5) for x in xs],
        "lgamma": lambda: [mod.lgamma(x) for x in xs],
        "cap_shoot": lambda: [mod.cap_shoot(3, l, 12.0 + l, math.pi / 2) for l in range(4)],
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = available_backends()
    names = list(backends)
    print(f"{'kernel':<16}" + "".join(f"{n + ' [ms]':>16}" for n in names) + f"{'speedup':>10}")
    for kernel in _workloads(backends["python"]):
        times = []
        for n in names:
            fn = _workloads(backends[n])[kernel]
            times.append(1e3 * min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else f"{'-':>10}"
        print(f"{kernel:<16}" + "".join(f"{t:>16.3f}" for t in times) + speed)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
