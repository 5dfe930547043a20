"""Transversal modes of the leaky strip: closed forms, types, degeneracy.

Walks the closed-form eigenvalues of the Robin cross-section operator at
purely imaginary coupling, shows the alternating type pattern, then hits
an exceptional coupling where two eigenvalues collide and the pair stops
being definite.  A finite-difference discretization reproduces the same
numbers and the same type calls.
"""
import math

import numpy as np

from kreinspec import classify_point, exceptional_set, robin_fd, transversal_modes

A = math.pi / 2


def show(modes):
    print(f"  {'mu':>3} {'label':>5} {'lambda':>12} {'indicator':>12} type")
    for m in modes:
        print(f"  {m.mu_index:>3} {m.n:>5} {m.lam:>12.6f} "
              f"{m.indicator:>12.6f} {m.type.value}")


def main():
    print("== generic coupling: alpha = 0.5 i, half-width pi/2")
    modes = transversal_modes(A, 0.5, 5)
    show(modes)
    print("  lambda_0 = alpha0^2 =", modes[0].lam)
    print("  types alternate +, -, +, ... in mu order\n")

    print("== large coupling: alpha = 2.5 i  (label-0 mode slots in late)")
    show(transversal_modes(A, 2.5, 5))
    print()

    print("== exceptional coupling: alpha = 2 i")
    exc = exceptional_set(A, 2.0)
    print("  degenerate mu indices:", sorted(exc))
    show(transversal_modes(A, 2.0, 5))
    print("  the colliding pair is not definite: its sign is undecidable\n")

    print("== finite differences agree, including the type calls")
    for alpha0 in (0.5, 2.5):
        T, J = robin_fd(A, 1j * alpha0, 401)
        eigvals = np.linalg.eigvals(T)
        agree = 0
        modes = transversal_modes(A, alpha0, 5)
        for m in modes:
            lam_hat = eigvals[np.argmin(np.abs(eigvals - m.lam))]
            entry = classify_point(T, J, lam_hat, eigvals=eigvals)
            agree += entry.type is m.type
            if m.n == 0:
                print(f"  alpha0 = {alpha0}: fd lambda_0 = {lam_hat.real:.8f}"
                      f" vs exact {m.lam:.8f}")
        print(f"  alpha0 = {alpha0}: classifier agrees on "
              f"{agree}/{len(modes)} modes")


if __name__ == "__main__":
    main()
