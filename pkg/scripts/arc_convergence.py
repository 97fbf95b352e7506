"""Partition sums of a circular arc against R*theta.

Prints S(N) for N = 2, 3, 5, 9, ... marks (chords doubled each row), the gap
to R*theta, the analytic bound R*theta^3/(24 n^2) and whether S grew.

    python3 scripts/arc_convergence.py --radius 2 --rows 11
"""
import argparse
from fractions import Fraction

from opgeo.angles import Arc, chord_error_bound, partition_length
from opgeo.compass import DistanceValue
from opgeo.model import Frame
from opgeo.scalar import Ordering, compare
from opgeo.vectors import VectorClass


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--radius", type=Fraction, default=Fraction(2))
    ap.add_argument("--end", nargs=2, type=Fraction, default=(Fraction(0), Fraction(1)),
                    metavar=("X", "Y"), help="direction of the arc end (start is the x axis)")
    ap.add_argument("--rows", type=int, default=11)
    args = ap.parse_args()

    f = Frame(2)
    arc = Arc(f.base, DistanceValue.of(args.radius), VectorClass.of(f, (1, 0)), VectorClass.of(f, args.end))
    target = arc.radius.magnitude * arc.sweep()
    print(f"R*theta = {target.decimal(15)}")
    print(f"{'chords':>7} {'S':>20} {'R*theta - S':>13} {'bound':>10}  grew")
    prev = None
    chords = 1
    for _ in range(args.rows):
        s = partition_length(arc, chords + 1).magnitude
        grew = "" if prev is None else ("yes" if compare(prev, s) is Ordering.LESS else "NO")
        gap = float(target - s)
        print(f"{chords:>7} {s.decimal(15):>20} {gap:>13.3e} {float(chord_error_bound(arc, chords)):>10.3e}  {grew}")
        prev = s
        chords *= 2


if __name__ == "__main__":
    main()
