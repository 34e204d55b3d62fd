#!/usr/bin/env python3
"""Sweep the twist angle of the two-concentric-squares graph and tabulate
the measured spoke length against the length the fully symmetric
configuration would force. The growing gap is what rules out an
edge-length-preserving symmetric re-embedding."""

import argparse

from edgesym.verify import twisted_squares_check


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outer", type=float, default=4.0)
    parser.add_argument("--inner", type=float, default=2.0)
    parser.add_argument("--max-angle", type=float, default=15.0)
    parser.add_argument("--steps", type=int, default=15)
    args = parser.parse_args()

    print(f"squares {args.outer} / {args.inner}")
    print(f"{'alpha':>7}  {'spoke':>10}  {'forced':>10}  {'gap':>10}  refuted")
    for k in range(args.steps + 1):
        alpha = args.max_angle * k / args.steps
        rep = twisted_squares_check(args.outer, args.inner, alpha)
        gap = rep.len_twisted - rep.len_forced
        print(f"{alpha:7.2f}  {rep.len_twisted:10.6f}  {rep.len_forced:10.6f}  "
              f"{gap:10.6f}  {rep.refuted}")


if __name__ == "__main__":
    main()
