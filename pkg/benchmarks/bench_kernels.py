"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import sys
import timeit

from ualg import _pykernels
from ualg.algebra import product_algebra
from ualg.zoo import cyclic_group, random_algebra, random_signature

try:
    from ualg import _ckernels
except ImportError:
    _ckernels = None


def workloads():
    rng = random.Random(0)
    Z6 = cyclic_group(6)
    Z2 = cyclic_group(2)
    Z3 = cyclic_group(3)
    P = product_algebra([Z2, Z3, Z2]).algebra  # 12 elements
    sig = random_signature(rng, 2, 2, allow_constants=False)
    R = random_algebra(rng, sig, 7)
    dense = [rng.randrange(P.size) for _ in range(P.size)]

    def hom_args(A, B):
        return A.size, B.size, A.signature.arities, A.tables, B.tables

    return [
        ("search_homs Z6 -> Z2xZ3xZ2", lambda k: k.search_homs(*hom_args(Z6, P))),
        ("search_homs Z2xZ3xZ2 -> itself", lambda k: k.search_homs(*hom_args(P, P))),
        ("search_homs random 7 -> itself", lambda k: k.search_homs(*hom_args(R, R))),
        ("closure from {1} in Z2xZ3xZ2",
         lambda k: k.closure(P.size, P.signature.arities, P.tables, [1])),
        ("hom_violation on 12 elements",
         lambda k: k.hom_violation(*hom_args(P, P), dense)),
        ("closure_violation full carrier",
         lambda k: k.closure_violation(P.size, P.signature.arities, P.tables, range(P.size))),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled extension not built; timing the fallback only", file=sys.stderr)

    header = f"{'workload':36s}" + "".join(f"{name:>12s}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for label, fn in workloads():
        times = []
        for _, mod in backends:
            number = 1
            while timeit.timeit(lambda: fn(mod), number=number) < 0.05:
                number *= 4
            best = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
            times.append(best)
        row = f"{label:36s}" + "".join(f"{t * 1e3:10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
