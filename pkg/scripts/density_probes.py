"""Log-log slope of rho along each generator family. Slopes are estimates only."""

import argparse

from thicket.complexity import density_probe

DEFAULTS = {
    "threshold": [4, 8, 16, 32],
    "half-graph": [2, 4, 8, 16],
    "residue": [4, 6, 8, 10],
    "powerset": [1, 2, 3, 4],
    "singleton": [2, 4, 8],
    "empty": [2, 4, 8],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("generators", nargs="*", default=sorted(DEFAULTS))
    args = ap.parse_args()
    for gen in args.generators:
        p = density_probe(gen, DEFAULTS.get(gen, [2, 4, 8]))
        slope = "n/a" if p.slope_estimate is None else f"{p.slope_estimate:.3f}"
        print(f"{gen:<11} sizes={p.sizes} rho={p.rho_values} slope={slope} exact={p.exact}")


if __name__ == "__main__":
    main()
