"""Print the minimisers r_n of the Faddeev remainder constant next to the tabulated values."""
import json
from importlib import resources

from resurgent import faddeev


def main():
    with resources.files("resurgent").joinpath("data/faddeev_roots.json").open() as fh:
        table = {int(k): v for k, v in json.load(fh)["roots"].items()}
    print(f"{'n':>3} {'r_n':>20} {'table':>20} {'diff':>10}  c'_n")
    for n, ref in sorted(table.items()):
        r = faddeev.rn_root(n)
        print(f"{n:3d} {r:20.15f} {ref:20.15f} {r - ref:10.1e}  {faddeev.b_n(r, n):.6e}")


if __name__ == "__main__":
    main()
