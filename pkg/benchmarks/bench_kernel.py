"""Compare the compiled and pure-Python polynomial kernels.

Times the two hot paths of operator application, the accumulated product
``addmul`` and the binomial division ``div_binomial``, on data taken from a
real n = 3 operator, then the end-to-end application itself.

    python benchmarks/bench_kernel.py [--repeat 3]
"""

import argparse
import time

from koornwinder import kernel
from koornwinder.combinatorics import monomial, partitions_up_to
from koornwinder.operators import build_H
from koornwinder.params import ModelParams


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def workload():
    params = ModelParams(3, "1/3", "1/2", "1/2", "2/3", "1/5", "3/7")
    op = build_H("bc", 3, params)
    plan, D = op._build_plan()
    f = monomial((2, 1, 0))
    pairs = [(c, f.shift(shift, params.q)._c) for c, _, shift in plan]
    return params, op, pairs, D


def bench_impl(impl, pairs, D, repeat):
    def products():
        acc = {}
        for c, g in pairs:
            impl.addmul(acc, c, g)
        return impl.prune(acc)

    t_mul = best_of(products, repeat)
    num = products()
    binomials = [F for F, _ in D if len(F._c) == 2]

    def divisions():
        acc = num
        for F in binomials:
            (ka, ua), (kb, vb) = sorted(F._c.items())
            acc = impl.div_binomial(impl.mul_binomial(acc, ua, ka, vb, kb), ua, ka, vb, kb)
        return acc

    t_div = best_of(divisions, repeat)
    return t_mul, t_div


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    params, op, pairs, D = workload()
    impls = kernel.implementations()
    print(f"active kernel: {kernel.IMPLEMENTATION}; available: {', '.join(impls)}")
    rows = {}
    for name, impl in impls.items():
        rows[name] = bench_impl(impl, pairs, D, args.repeat)
        print(f"{name:>8}: addmul {rows[name][0]:.3f}s  mul+div_binomial {rows[name][1]:.3f}s")
    if len(rows) > 1:
        base = rows["python"]
        for name, (m, d) in rows.items():
            if name != "python":
                print(f"speedup {name}: addmul x{base[0] / m:.2f}, division x{base[1] / d:.2f}")
    lams = partitions_up_to(3, 3)
    t = best_of(lambda: [op.apply(monomial(lam)) for lam in lams], args.repeat)
    print(f"end to end ({kernel.IMPLEMENTATION}): H_3 on {len(lams)} monomials, n = 3: {t:.3f}s")


if __name__ == "__main__":
    main()
