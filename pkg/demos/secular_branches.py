"""How a real Robin offset splits a double eigenvalue into a complex pair.

At coupling i (half-width pi/2) the two lowest transversal eigenvalues
collide at lambda = 1.  Adding a real offset beta0 < 0 to the coupling
splits the double root of the secular function into a conjugate pair;
the argument principle certifies exactly two roots in a rectangle off
the real axis, and their distance to the collision point shrinks like
sqrt(|beta0| / pi).  A third root stays real the whole way.
"""
import math

import numpy as np

from kreinspec import branch_curves, secular_roots, secular_value

A = math.pi / 2


def main():
    print("== certified roots at beta0 = -0.05")
    region = (0.7, 1.3, -0.4, 0.4)
    roots = secular_roots(A, 1.0, -0.05, region)
    for r in roots:
        print(f"   k = {r:.12f}   |F(k)| = {abs(secular_value(r, A, 1.0, -0.05)):.2e}")
    print("   winding count over the rectangle:", len(roots))
    print()

    print("== approach to the collision point k = 1")
    print(f"   {'beta0':>8} {'|k - 1|':>12} {'sqrt(|beta0|/pi)':>18}")
    for beta0 in (-0.1, -0.05, -0.01, -0.001):
        top = [r for r in secular_roots(A, 1.0, beta0, region) if r.imag > 0][0]
        print(f"   {beta0:>8} {abs(top - 1.0):>12.6f} "
              f"{math.sqrt(abs(beta0) / math.pi):>18.6f}")
    print()

    print("== three tracked branches, beta0 from -0.1 to -0.001")
    samples = np.linspace(-0.1, -0.001, 9)
    seeds = list(secular_roots(A, 1.0, -0.1, region))
    seeds += list(secular_roots(A, 1.0, -0.1, (1.7, 2.3, -0.2, 0.2)))
    for i, table in enumerate(branch_curves(A, 1.0, samples, seeds), start=1):
        start, end = table[0].k, table[-1].k
        flavor = "real" if max(abs(p.k.imag) for p in table) < 1e-10 \
            else "complex"
        print(f"   branch {i} ({flavor}): {start:.6f} -> {end:.6f}")
    print()
    print("   pushing beta0 to 0 makes the conjugate pair collide;")
    print("   the continuation refuses to cross the collision and fails loudly")


if __name__ == "__main__":
    main()
