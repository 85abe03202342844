"""Reproduce both resolution-decay experiments as console tables.

Chain family: measured resolution collapses like (lam/(1-lam))^n and sits
between the guaranteed floor (r/2)(lam_min/3)^n and the family ceiling.
Nested family: the morph midpoint between the two prescribed drawings
decays like 2^(-c n) even though both endpoints stay near 1/n^2.

Equivalent CLI runs:
    barymorph decay --family eg --n-range 7:25
    barymorph decay --family nested --n-range 6:30:3
"""

import math

import numpy as np

from barymorph import (
    eades_garvan,
    eg_chain_oracle,
    f_drawing,
    interpolate,
    log_resolution_floor,
    nested_triangles,
    recover_coefficients,
    separated_object_extremes,
    triangle_resolution,
)


def chain_sweep():
    lam, r = 0.25, math.sqrt(3.0) / 2.0
    print(f"chain family, lam={lam} r={r:.4f}")
    print(f"{'n':>3} {'log floor':>10} {'log measured':>13} {'log ceiling':>12} "
          f"{'oracle rel err':>14}")
    for n in range(7, 26):
        inst = eades_garvan(n, lam, r)
        d = f_drawing(inst.graph, inst.matrix, inst.outer, validate=False)
        rep = separated_object_extremes(d)
        floor = log_resolution_floor(n, inst.matrix.min_lambda(), r)
        ceiling = math.log(r) + (n - 4) * math.log(lam / (1.0 - lam))
        xs = d.coords[list(inst.chain), 0]
        oracle = eg_chain_oracle(n, lam, r)
        rel = float(np.max(np.abs(xs - oracle) / np.abs(oracle)))
        print(f"{n:>3} {floor:>10.3f} {math.log(rep.resolution):>13.3f} "
              f"{ceiling:>12.3f} {rel:>14.2e}")


def nested_sweep():
    print("\nnested family, morph midpoint between the two drawings")
    print(f"{'n':>3} {'res(G0)*n^2':>12} {'res(mid)':>12} {'log2 res(mid)':>14}")
    ns, logs = [], []
    for n in range(6, 31, 3):
        inst = nested_triangles(n)
        m0, _ = recover_coefficients(inst.gamma0)
        m1, _ = recover_coefficients(inst.gamma1)
        mid = f_drawing(inst.graph, interpolate(m0, m1, 0.5), inst.outer,
                        validate=False)
        r0 = separated_object_extremes(inst.gamma0).resolution
        rm = separated_object_extremes(mid).resolution
        print(f"{n:>3} {r0 * n * n:>12.4f} {rm:>12.4e} {math.log2(rm):>14.3f}")
        ns.append(n)
        logs.append(math.log2(rm))
    slope = float(np.polyfit(ns, logs, 1)[0])
    print(f"fitted slope: {slope:.4f} bits per vertex "
          f"(endpoints polynomial, midpoint exponential)")
    assert slope < 0.0


def main():
    chain_sweep()
    nested_sweep()


if __name__ == "__main__":
    main()
