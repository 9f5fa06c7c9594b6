#!/usr/bin/env python3
"""Tabulate post-conversion efficiencies: closed forms next to the exact
protocol simulation over the transformed channels, for both conversion modes.

Any disagreement between the two routes would show up in the gap columns.
"""

import argparse

import numpy as np

from telecloning import (
    post_global_efficiencies,
    post_local_efficiencies,
    simulated_post_global_efficiencies,
    simulated_post_local_efficiencies,
    transition_threshold,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=11)
    args = parser.parse_args()

    for mode, closed, simulated in (
        ("local", post_local_efficiencies, simulated_post_local_efficiencies),
        ("global", post_global_efficiencies, simulated_post_global_efficiencies),
    ):
        threshold = transition_threshold(mode)
        print(f"\n{mode} conversion (copy-1 optimum crossed at nC2 = {threshold:.6f})")
        print(f"{'nC2':>6} {'cpro1':>10} {'cpro2':>10} {'sim1':>10} {'sim2':>10} "
              f"{'gap1':>9} {'gap2':>9}")
        for t in np.linspace(0.0, 1.0, args.steps):
            c1, c2 = closed(float(t))
            s1, s2 = simulated(float(t))
            print(f"{t:6.2f} {c1:10.6f} {c2:10.6f} {s1:10.6f} {s2:10.6f} "
                  f"{abs(s1 - c1):9.1e} {abs(s2 - c2):9.1e}")


if __name__ == "__main__":
    main()
