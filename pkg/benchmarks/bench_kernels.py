"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 600] [--repeat 5]
"""

import argparse
import random
import timeit
from fractions import Fraction

from modvals import kernels


def workloads(n):
    rng = random.Random(0)
    ints = [1] + [rng.randint(-10**6, 10**6) for _ in range(n - 1)]
    fracs = [Fraction(1)] + [Fraction(rng.randint(-99, 99), rng.randint(1, 9)) for _ in range(n - 1)]
    # divisor sums of an eta quotient, the usual input to euler_product
    s = [0] * n
    for k in range(1, n):
        s[k] = sum(d * r for d, r in ((1, 2), (11, 2), (3, -1)) if k % d == 0)
    return {
        "conv int": lambda m: m.conv(ints, ints, n),
        "conv_int": lambda m: m.conv_int(ints, ints, n),
        "conv Fraction": lambda m: m.conv(fracs[: n // 3], fracs[: n // 3], n // 3),
        "recip int": lambda m: m.recip(ints, n),
        "euler_product": lambda m: m.euler_product(s, n),
        "log_derivative": lambda m: m.log_derivative(ints, n),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=600)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled kernels unavailable; only the Python backend will be timed")
    names = sorted(impls)
    print(f"n = {args.n}, best of {args.repeat}, seconds")
    print(f"{'kernel':<16}" + "".join(f"{b:>12}" for b in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in workloads(args.n).items():
        results = [fn(impls[b]) for b in names]
        if any(r != results[0] for r in results):
            raise SystemExit(f"backends disagree on {label}")
        times = [min(timeit.repeat(lambda b=b: fn(impls[b]), number=1, repeat=args.repeat)) for b in names]
        row = f"{label:<16}" + "".join(f"{t:>12.4f}" for t in times)
        if len(names) > 1:
            row += f"{times[names.index('python')] / times[names.index('cython')]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
