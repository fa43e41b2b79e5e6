"""Count clonoids between small cyclic modules at a fixed arity, next to the subset oracle when it fits."""

import argparse
import time

from clonoid_lab.clonoid import brute_force_clonoid_count, enumerate_clonoids
from clonoid_lab.errors import SizeLimitExceeded
from clonoid_lab.specs import parse_module

parser = argparse.ArgumentParser()
parser.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4])
parser.add_argument("--n", type=int, default=1)
args = parser.parse_args()

print(f"{'A':>4} {'B':>4} {'count':>6} {'oracle':>7} {'status':>15} {'sec':>6}")
for a in args.sizes:
    for b in args.sizes:
        A, B = parse_module(f"z{a}"), parse_module(f"z{b}")
        t = time.perf_counter()
        try:
            census = enumerate_clonoids(A, B, args.n)
        except SizeLimitExceeded:
            print(f"{a:>4} {b:>4} {'-':>6} {'-':>7} {'too large':>15}")
            continue
        try:
            oracle = str(brute_force_clonoid_count(A, B, args.n))
        except SizeLimitExceeded:
            oracle = "-"
        print(f"{a:>4} {b:>4} {census.count:>6} {oracle:>7} {census.status:>15} {time.perf_counter() - t:>6.2f}")
