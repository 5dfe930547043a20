"""Typed decomposition of the strip spectrum for three longitudinal wells.

The essential spectrum of the strip operator is a union of half-lines,
one per transversal mode.  Each half-line inherits the sign type of its
mode, and where oppositely-typed half-lines overlap the type is lost.
This demo prints the sign-definite and indefinite layers for a free
guide, a constant background, and an attractive square well whose bound
state shifts every threshold down.
"""
import math

from kreinspec import (Constant, SquareWell, Zero, longitudinal_spectrum,
                       waveguide_m_sets)

A = math.pi / 2


def show(tag, dec):
    print(f"== {tag}")
    print("   thresholds mu:", [round(m, 6) for m in dec.mu[:4]])
    print("   sigma_++ :", dec.sigma_pp)
    print("   sigma_-- :", dec.sigma_mm)
    print("   sigma_00 :", dec.sigma_00)
    print()


def main():
    for tag, spec in (
        ("free guide, V = 0", Zero()),
        ("constant background, V = 3", Constant(3.0)),
        ("square well, depth 1, width 2", SquareWell(1.0, 2.0)),
    ):
        long = longitudinal_spectrum(spec)
        dec = waveguide_m_sets(A, 0.5, long, window_max=12.0)
        show(tag, dec)

    print("== exceptional coupling wipes out the definite layer")
    long = longitudinal_spectrum(Zero())
    dec = waveguide_m_sets(A, 1.0, long, window_max=12.0)
    print("   degenerate mu indices:", sorted(dec.exceptional))
    print("   sigma_++ :", dec.sigma_pp)
    print("   sigma_00 :", dec.sigma_00)
    print("   with the two lowest modes fused, no window below the second")
    print("   threshold is sign-definite any more")


if __name__ == "__main__":
    main()
