"""Solve and render a few drawings: K4, a random stacked triangulation,
and a chain instance, with resolution reports for each.

Writes SVGs into demo_out/ (override with --out-dir).
"""

import argparse
import math
import pathlib

import numpy as np

from barymorph import (
    Triangle,
    build_maximal_plane_graph,
    eades_garvan,
    emit_svg,
    f_drawing,
    min_distance_internal_face_witness,
    random_stacked_triangulation,
    separated_object_extremes,
    t_drawing,
    uniform_coefficients,
    verify_planar_straight_line,
)


def report(name, d, out_dir):
    ok, violations = verify_planar_straight_line(d)
    rep = separated_object_extremes(d)
    w = min_distance_internal_face_witness(d)
    print(f"{name}: planar={ok} resolution={rep.resolution:.6g} "
          f"min_dist={rep.min_dist:.6g} witness=vertex {w.vertex} vs edge {w.edge}")
    if violations:
        print(f"  violations: {violations[:3]}")
    path = out_dir / f"{name}.svg"
    emit_svg(d, str(path))
    print(f"  wrote {path}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="demo_out")
    ap.add_argument("--seed", type=int, default=20, help="stacked-triangulation seed")
    args = ap.parse_args()
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    equilateral = Triangle(np.array([[0.0, 0.0], [1.0, 0.0],
                                     [0.5, math.sqrt(3.0) / 2.0]]))

    k4 = build_maximal_plane_graph([(0, 1, 3), (1, 2, 3), (0, 3, 2)], (0, 1, 2))
    report("k4", t_drawing(k4, equilateral), out_dir)

    g = random_stacked_triangulation(40, seed=args.seed)
    report("stacked40", f_drawing(g, uniform_coefficients(g), equilateral), out_dir)

    inst = eades_garvan(10, 0.25, math.sqrt(3.0) / 2.0)
    d = f_drawing(inst.graph, inst.matrix, inst.outer)
    report("chain10", d, out_dir)
    xs = d.coords[list(inst.chain), 0]
    print("  chain abscissas:", " ".join(f"{x:.3e}" for x in xs))
    print("  consecutive ratios:", " ".join(f"{b / a:.4f}"
                                            for a, b in zip(xs, xs[1:])))


if __name__ == "__main__":
    main()
