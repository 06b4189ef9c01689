"""The char-2 Z-flow example: F = (x+y+z, y+z, z) has order 4.

Builds the flow of F (with variables reversed into triangular order),
prints it, and checks every specialization against direct iteration.
"""

import itertools

from triperm import oracle
from triperm.trigroup import TriangularPermutation, apply, power, zeta, zeta_inv
from triperm.zflow import build_flow, specialize, w_membership


def main() -> None:
    # x_1 = z, x_2 = y, x_3 = x
    sigma = TriangularPermutation.from_terms(2, [{}, {(1,): 1}, {(1, 0): 1, (0, 1): 1}])
    flow = build_flow(sigma)
    print("flow:", flow.pretty())
    print("rename x1 -> z, x2 -> y, x3 -> x to read it as F_T")
    print("W membership:", w_membership(flow).to_dict())

    table = oracle.to_table(sigma)
    print("order:", oracle.order(table))
    for m in range(8):
        spec = specialize(flow, m)
        same = all(
            apply(spec, v) == apply(power(sigma, m), v) for v in itertools.product(range(2), repeat=3)
        )
        print(f"m={m}: {spec}  matches sigma^{m}: {same}")
    # F is linear and fixes 0; follow the point z = 1 instead
    start = zeta_inv((1, 0, 0), 2)
    orbit = [zeta(oracle.naive_orbit_power(table, m, start), 2, 3) for m in range(5)]
    print("orbit of (x1, x2, x3) = (1, 0, 0):", orbit)


if __name__ == "__main__":
    main()
