"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from hopfian import kernels
from hopfian.constructions import build_tower, shift_map
from hopfian.rewriting import RewriteSystem


def cases():
    s1 = build_tower("S1", 20)  # 65 elements
    tab = s1.table
    t1 = build_tower("T1", 20)
    f = np.array(shift_map(20), dtype=np.int64)
    rs = RewriteSystem.parse("ba", [("ababbab", "b"), ("ababbb", "babbab")])
    word = bytes(rs.alphabet.word("ababbb" * 60))
    return {
        "assoc_witness S1(20)": lambda k: k.assoc_witness(tab),
        "light_witness S1(20)": lambda k: k.light_witness(tab, np.arange(s1.n, dtype=np.int64)),
        "hom_failures shift T1(20)": lambda k: k.hom_failures(t1.table, t1.table, f),
        "closure S1(20)": lambda k: k.closure(tab, np.array([0], dtype=np.int64)),
        "normal_form (ababbb)^60": lambda k: k.normal_form(word, rs._lhs, rs._rhs, 10_000),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    names = sorted(kernels.BACKENDS)
    print(f"{'case':30}" + "".join(f"{n:>12}" for n in names) + f"{'speedup':>10}")
    for label, fn in cases().items():
        times = {}
        for n in names:
            impl = kernels.BACKENDS[n]
            fn(impl)  # warm up
            times[n] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        speed = ""
        if "cython" in times and "python" in times:
            speed = f"{times['python'] / times['cython']:9.1f}x"
        print(f"{label:30}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names) + speed)


if __name__ == "__main__":
    main()
