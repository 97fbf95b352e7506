"""Angles read with a tape: how the reading l/R tracks the exact opening.

For a few arcs and tape resolutions, prints the quantized reading next to the
exact value.  Rounding both lengths to the tape marks bounds the error by
about res/R * (1 + theta).

    python3 scripts/tape_measure.py
"""
import argparse
from fractions import Fraction

from opgeo.angles import Arc, format_angle, measured_angle_report, tape_measure_angle
from opgeo.compass import DistanceValue
from opgeo.model import Frame
from opgeo.vectors import VectorClass

ARCS = [  # (radius, end direction)
    (Fraction(97, 10), (1, Fraction(5, 3))),
    (Fraction(1), (-1, 0)),
    (Fraction(5, 2), (0, 1)),
    (Fraction(12), (1, 1)),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--resolutions", nargs="+", type=Fraction,
                    default=[Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000)])
    args = ap.parse_args()

    print("classroom example, l = 10 and R = 9.7 at 0.1:",
          format_angle(tape_measure_angle(10, Fraction(97, 10), Fraction(1, 10)), 2))
    f = Frame(2)
    for radius, end in ARCS:
        arc = Arc(f.base, DistanceValue.of(radius), VectorClass.of(f, (1, 0)), VectorClass.of(f, end))
        exact = arc.sweep()
        row = [f"R={float(radius):<5g} theta={exact.decimal(6):<9}"]
        for res in args.resolutions:
            reading = measured_angle_report(arc, res)
            err = abs(float(reading.value - exact))
            row.append(f"res {float(res):g}: {format_angle(reading, 4)} (err {err:.1e})")
        print("  ".join(row))


if __name__ == "__main__":
    main()
