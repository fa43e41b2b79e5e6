"""Which rank bounds admit interpolation coefficients?  Linear solver over Z_m, arity k, exponent E."""

import argparse
import math

from clonoid_lab.errors import SizeLimitExceeded
from clonoid_lab.interpolation import solve_coeffs_linear
from clonoid_lab.rank import rank_bounded_codes
from clonoid_lab.rings import jacobson_radical, nilpotence_degree
from clonoid_lab.specs import parse_module

parser = argparse.ArgumentParser()
parser.add_argument("--moduli", type=int, nargs="+", default=[2, 3, 4, 5, 6, 8, 9])
parser.add_argument("--max-k", type=int, default=2)
parser.add_argument("--budget", type=float, default=1e6, help="skip systems with more matrices x equations")
args = parser.parse_args()

print(f"{'m':>3} {'E':>3} {'k':>2} {'nil':>4} " + " ".join(f"n={n}" for n in range(1, args.max_k + 1)))
for m in args.moduli:
    A = parse_module(f"z{m}")
    E = next(e for e in (3, 5, 7, 11) if math.gcd(m, e) == 1)
    nil = nilpotence_degree(A.ring, jacobson_radical(A.ring))
    for k in range(1, args.max_k + 1):
        cells = []
        for n in range(1, k + 1):
            try:
                if len(rank_bounded_codes(A.ring, k, n)) * A.size ** (2 * k) > args.budget:
                    cells.append("   -")
                    continue
                sol = solve_coeffs_linear(A, k, n, E, verify=False)
                cells.append(" yes" if sol else "  no")
            except SizeLimitExceeded:
                cells.append("   -")
        print(f"{m:>3} {E:>3} {k:>2} {nil:>4} " + " ".join(cells))
