"""Sweep the component census over both stock families.

Prints one line per (model, n) with the histogram and the component
estimate; optionally dumps everything as JSON for later plotting.
"""

import argparse
import json
import time

from osculant import component_census
from osculant.curves import build_model


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", type=str, default=None,
                    help="write the full sweep to this path")
    args = ap.parse_args()

    results = []
    for model in ("trig_convex", "rational_normal"):
        for n in range(2, args.n_max + 1):
            c = build_model(model, n)
            t0 = time.time()
            out = component_census(c, samples=args.samples, seed=args.seed)
            dt = time.time() - t0
            out["model"] = model
            out["seconds"] = round(dt, 2)
            results.append(out)
            hist = " ".join(f"{k}:{v}" for k, v in out["histogram"].items())
            print(f"{model:16s} n={n}  components={out['components']}  "
                  f"[{hist}]  {dt:.1f}s")

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2, sort_keys=True)
        print("wrote", args.json)


if __name__ == "__main__":
    main()
