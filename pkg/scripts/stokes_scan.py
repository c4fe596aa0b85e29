"""Stokes jump of the Faddeev Borel sum across the imaginary axis, at several |gamma|.

Compares the residue-sum jump 2 pi i sum Res with the difference of the two
lateral Laplace transforms.
"""
import argparse
import math

from resurgent import borel, faddeev


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--w", type=float, default=1.0)
    ap.add_argument("--moduli", type=float, nargs="+", default=[0.3, 0.5, 1.0])
    args = ap.parse_args()
    B = faddeev.borel_function(args.w)
    print(f"{'|gamma|':>8} {'Re jump':>14} {'Im jump':>14} {'|jump - lateral|':>18}")
    for r in args.moduli:
        sd = borel.stokes_jump(B, math.pi / 2, 1j * r, tol=1e-12)
        print(f"{r:8.3f} {sd.jump.real:14.6e} {sd.jump.imag:14.6e} {sd.lateral_error:18.3e}")


if __name__ == "__main__":
    main()
