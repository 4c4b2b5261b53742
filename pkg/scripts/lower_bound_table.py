"""Minimum decision depth for {x < 2^(n-1)} over [0, 2^n), equality atoms vs threshold atoms."""

import argparse

from thicket.decision import lower_bound_experiment


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmin", type=int, default=1)
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("--depth-cap", type=int, default=20)
    ap.add_argument("--budget", type=int, default=500_000)
    args = ap.parse_args()

    ns = range(args.nmin, args.nmax + 1)
    eq = lower_bound_experiment("equality", ns, args.depth_cap, args.budget)
    order = lower_bound_experiment("order", ns, args.depth_cap, args.budget)
    print(f"{'n':>3} {'|Y|':>5} {'equality':>9} {'order':>6}")
    for a, b in zip(eq, order):
        show = lambda r: str(r.depth) if r.depth is not None else r.status
        print(f"{a.n:>3} {1 << a.n:>5} {show(a):>9} {show(b):>6}")


if __name__ == "__main__":
    main()
