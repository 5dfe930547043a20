"""Finite-difference model of the 2D Robin strip and its pseudospectra.

The operator is -Laplace + V on a truncated strip [-Lx, Lx] x [-a, a]
with the complex Robin coupling alpha(x) on the top wall and its
conjugate on the bottom wall.  The y direction uses the same weighted
ghost-node closure as the 1D transversal operator, which makes the
discrete matrix J-self-adjoint to the last bit (J = y-flip) whenever the
sampled data has the wall-conjugation symmetry V(x, y) = conj(V(x, -y)).
On top of the assembled matrix the module provides shift-invert
eigenvalue extraction, sigma_min maps (dense SVD or sparse inverse
iteration), the log-log fit of |Im lambda| against sigma_min, and a
realness report for eigenvalues in a spectral window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np
import scipy.sparse
import scipy.sparse.linalg
from scipy.linalg import svdvals
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence

from .errors import NumericalError, ValidationError
from .krein import Involution, validate_involution
from .transversal import robin_fd

__all__ = [
    "XBoundary",
    "GridSpec",
    "WaveguideOperator",
    "PseudospectrumMap",
    "ImagBoundFit",
    "RealnessReport",
    "assemble_waveguide",
    "eigs_near",
    "pseudospectrum_map",
    "imag_bound_fit",
    "realness_report",
]

DIM_CAP = 400_000


class XBoundary(str, Enum):
    DIRICHLET = "dirichlet"
    PERIODIC = "periodic"


@dataclass(frozen=True)
class GridSpec:
    """Truncated-strip grid; the y nodes are exactly flip-symmetric."""

    a: float
    Lx: float
    nx: int
    ny: int
    x_boundary: XBoundary = XBoundary.DIRICHLET

    def validate(self) -> None:
        if self.a <= 0 or not math.isfinite(self.a):
            raise ValidationError(f"half-width a must be positive, got {self.a}")
        if self.Lx <= 0 or not math.isfinite(self.Lx):
            raise ValidationError(f"half-length Lx must be positive, got {self.Lx}")
        if self.nx < 8 or self.ny < 8:
            raise ValidationError(
                f"need nx, ny >= 8, got nx = {self.nx}, ny = {self.ny}")
        XBoundary(self.x_boundary)
        if self.nx * self.ny > DIM_CAP:
            raise ValidationError(
                f"grid has {self.nx * self.ny} nodes, over the cap {DIM_CAP}")

    @property
    def hy(self) -> float:
        return 2.0 * self.a / (self.ny - 1)

    @property
    def hx(self) -> float:
        if XBoundary(self.x_boundary) is XBoundary.DIRICHLET:
            return 2.0 * self.Lx / (self.nx + 1)
        return 2.0 * self.Lx / self.nx

    def y_nodes(self) -> np.ndarray:
        # (j - (ny-1)/2) * hy negates exactly under j -> ny-1-j
        return (np.arange(self.ny) - (self.ny - 1) / 2.0) * self.hy

    def x_nodes(self) -> np.ndarray:
        if XBoundary(self.x_boundary) is XBoundary.DIRICHLET:
            return -self.Lx + self.hx * np.arange(1, self.nx + 1)
        return -self.Lx + self.hx * np.arange(self.nx)


@dataclass(frozen=True, eq=False)
class WaveguideOperator:
    """Assembled strip operator, x-major (y-fast) node ordering."""

    grid: GridSpec
    H: scipy.sparse.spmatrix
    J: Involution
    alpha_samples: np.ndarray
    V_samples: np.ndarray

    @property
    def dim(self) -> int:
        return self.H.shape[0]


def _x_second_difference(grid: GridSpec) -> scipy.sparse.spmatrix:
    nx, hx = grid.nx, grid.hx
    main = np.full(nx, 2.0) / hx**2
    off = np.full(nx - 1, -1.0) / hx**2
    D = scipy.sparse.diags([off, main, off], [-1, 0, 1], format="lil")
    if XBoundary(grid.x_boundary) is XBoundary.PERIODIC:
        D[0, nx - 1] = -1.0 / hx**2
        D[nx - 1, 0] = -1.0 / hx**2
    return D.tocsr()


def assemble_waveguide(grid: GridSpec, alpha: Callable[[float], complex],
                       V: Callable[[float, float], complex]) -> WaveguideOperator:
    """Assemble H = -Laplace + V with Robin walls at y = +-a.

    The top wall carries alpha(x), the bottom wall conj(alpha(x)); both
    enter through the ghost-node closure of the 1D transversal stencil,
    so for wall-conjugation-symmetric V the assembled matrix satisfies
    J H* J = H exactly (J the y-reversal permutation).
    """
    grid.validate()
    x, y = grid.x_nodes(), grid.y_nodes()
    alpha_samples = np.array([complex(alpha(float(xi))) for xi in x])
    V_samples = np.array([[complex(V(float(xi), float(yj))) for yj in y]
                          for xi in x])
    if not np.all(np.isfinite(alpha_samples.view(float))):
        raise ValidationError("alpha(x) must be bounded on the grid")
    if not np.all(np.isfinite(V_samples.view(float))):
        raise ValidationError("V(x, y) must be bounded on the grid")

    Dx = _x_second_difference(grid)
    blocks = [robin_fd(grid.a, al, grid.ny, sparse=True)[0]
              for al in alpha_samples]
    H = (scipy.sparse.kron(Dx, scipy.sparse.identity(grid.ny), format="csr")
         + scipy.sparse.block_diag(blocks, format="csr")
         + scipy.sparse.diags(V_samples.ravel()))

    flip = scipy.sparse.csr_matrix(
        (np.ones(grid.ny), (np.arange(grid.ny), np.arange(grid.ny)[::-1])),
        shape=(grid.ny, grid.ny))
    Jm = scipy.sparse.kron(scipy.sparse.identity(grid.nx), flip, format="csr")
    return WaveguideOperator(grid=grid, H=H.tocsr(), J=validate_involution(Jm),
                             alpha_samples=alpha_samples, V_samples=V_samples)


# ---------------------------------------------------------------------------
# Eigenvalues near a target
# ---------------------------------------------------------------------------

def _operator_scale(H) -> float:
    absH = abs(H)
    one = absH.sum(axis=0).max()
    inf = absH.sum(axis=1).max()
    return float(math.sqrt(float(one) * float(inf)))


def _residuals(H, scale, vals, vecs):
    out = []
    for lam, v in zip(vals, vecs.T):
        r = np.linalg.norm(H @ v - lam * v) / (scale * np.linalg.norm(v))
        out.append((complex(lam), float(r)))
    return out


def eigs_near(op: WaveguideOperator, target: complex, k: int,
              tol: float = 1e-8, dense_cutoff: int = 600) -> list:
    """The k eigenpairs nearest ``target`` as (eigenvalue, relative residual).

    Shift-invert Arnoldi with perturbed-shift retries (the target may sit
    on an eigenvalue), falling back to dense solves for small problems;
    every returned pair has relative residual <= tol or the call raises.
    """
    if k < 1:
        raise ValidationError(f"need k >= 1 eigenvalues, got {k}")
    H = op.H.tocsc()
    n = H.shape[0]
    scale = _operator_scale(H)
    target = complex(target)

    pairs = None
    if k < n - 1 and n > dense_cutoff:
        shift = target
        for attempt in range(4):
            try:
                vals, vecs = scipy.sparse.linalg.eigs(
                    H, k=k, sigma=shift, which="LM", tol=1e-12,
                    maxiter=5000, v0=np.ones(n) / math.sqrt(n))
                pairs = _residuals(H, scale, vals, vecs)
                if all(r <= tol for _, r in pairs):
                    break
                pairs = None
            except (RuntimeError, ArpackError, ArpackNoConvergence):
                pass
            shift = target + (attempt + 1) * (1e-6 + 1e-6j) * max(scale, 1.0)
    if pairs is None:
        if n > 4000:
            raise NumericalError(
                f"shift-invert did not converge near {target} and the "
                f"problem (n = {n}) is too large for a dense fallback")
        vals, vecs = np.linalg.eig(H.toarray())
        order = np.argsort(np.abs(vals - target))[:k]
        pairs = _residuals(H, scale, vals[order], vecs[:, order])

    pairs.sort(key=lambda p: abs(p[0] - target))
    bad = [r for _, r in pairs if r > tol]
    if bad:
        raise NumericalError(
            f"eigenpair residuals up to {max(bad):.2e} exceed {tol}")
    return pairs


# ---------------------------------------------------------------------------
# Pseudospectrum maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PseudospectrumMap:
    """sigma_min(H - lambda) sampled on a rectangle grid.

    ``lambdas``, ``sigmas`` and ``flagged`` are (my, mx) arrays; flagged
    nodes hit an exactly singular factorization (lambda is a converged
    eigenvalue) and carry sigma_min = 0.
    """

    rect: tuple
    lambdas: np.ndarray
    sigmas: np.ndarray
    flagged: np.ndarray


def _sigma_min_sparse(lu, n: int, maxiter: int = 300,
                      rtol: float = 1e-10) -> float:
    # power iteration on inv(M) inv(M)^H; rho -> 1/sigma_min^2
    rng = np.random.default_rng(1234)
    v = np.ones(n, dtype=complex) + 1e-3 * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    rho_old = 0.0
    for _ in range(maxiter):
        w = lu.solve(v, trans="H")
        u = lu.solve(w)
        rho = np.linalg.norm(u)
        if rho == 0.0:
            return math.inf
        v = u / rho
        if abs(rho - rho_old) <= rtol * rho:
            break
        rho_old = rho
    return 1.0 / math.sqrt(rho)


def pseudospectrum_map(op: WaveguideOperator, rect: Sequence[float],
                       mx: int, my: int,
                       dense_cutoff: int = 400) -> PseudospectrumMap:
    """Sample sigma_min(H - lambda) on an mx-by-my grid over ``rect``.

    Dense SVD per node up to ``dense_cutoff`` unknowns, sparse LU inverse
    iteration beyond; a node whose factorization is exactly singular is
    flagged (sigma_min = 0) rather than fatal.
    """
    re0, re1, im0, im1 = (float(t) for t in rect)
    if not all(map(math.isfinite, (re0, re1, im0, im1))):
        raise ValidationError(f"rectangle must be finite, got {rect}")
    if re0 > re1 or im0 > im1:
        raise ValidationError(f"rectangle {rect} is empty")
    if mx < 1 or my < 1:
        raise ValidationError("need at least one sample per axis")
    res = np.linspace(re0, re1, mx) if mx > 1 else np.array([0.5 * (re0 + re1)])
    ims = np.linspace(im0, im1, my) if my > 1 else np.array([0.5 * (im0 + im1)])
    lambdas = res[None, :] + 1j * ims[:, None]

    n = op.dim
    sigmas = np.zeros((my, mx))
    flagged = np.zeros((my, mx), dtype=bool)
    dense = n <= dense_cutoff
    Hd = op.H.toarray() if dense else None
    Hc = None if dense else op.H.tocsc()
    eye = scipy.sparse.identity(n, dtype=complex, format="csc")
    for iy in range(my):
        for ix in range(mx):
            lam = lambdas[iy, ix]
            if dense:
                sigmas[iy, ix] = svdvals(Hd - lam * np.eye(n))[-1]
                continue
            try:
                lu = scipy.sparse.linalg.splu(Hc - lam * eye)
                sigmas[iy, ix] = _sigma_min_sparse(lu, n)
            except RuntimeError:
                sigmas[iy, ix] = 0.0
                flagged[iy, ix] = True
    return PseudospectrumMap(rect=(re0, re1, im0, im1), lambdas=lambdas,
                             sigmas=sigmas, flagged=flagged)


# ---------------------------------------------------------------------------
# Fits and reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ImagBoundFit:
    """Least-squares law |Im lambda| = M * sigma_min^(1/m)."""

    M: float
    m: float
    exponent: float
    n_samples: int
    rms_residual: float
    window: tuple
    im_band: tuple

    def to_json_obj(self) -> dict:
        return {
            "schema": "kreinspec/imag-bound-fit-v1",
            "M": self.M, "m": self.m, "exponent": self.exponent,
            "n_samples": self.n_samples, "rms_residual": self.rms_residual,
            "window": list(self.window), "im_band": list(self.im_band),
        }


def imag_bound_fit(pmap: PseudospectrumMap, window: Sequence[float],
                   im_band: Sequence[float] = (1e-3, 0.5),
                   min_samples: int = 8) -> ImagBoundFit:
    """Fit log|Im lambda| = log M + (1/m) log sigma_min over a window.

    Samples are the map nodes with Re lambda in ``window``, |Im lambda|
    inside ``im_band``, and a positive unflagged sigma_min.
    """
    lo, hi = (float(t) for t in window)
    blo, bhi = (float(t) for t in im_band)
    if not (lo < hi and 0 < blo < bhi):
        raise ValidationError("window and band must be nondegenerate")
    lam = pmap.lambdas
    sel = ((lam.real >= lo) & (lam.real <= hi)
           & (np.abs(lam.imag) >= blo) & (np.abs(lam.imag) <= bhi)
           & (~pmap.flagged) & (pmap.sigmas > 0))
    if int(sel.sum()) < min_samples:
        raise ValidationError(
            f"only {int(sel.sum())} usable samples in the window/band, "
            f"need {min_samples}")
    X = np.log(pmap.sigmas[sel])
    Y = np.log(np.abs(lam.imag[sel]))
    A = np.stack([np.ones_like(X), X], axis=1)
    coef, *_ = np.linalg.lstsq(A, Y, rcond=None)
    c0, c1 = float(coef[0]), float(coef[1])
    rms = float(np.sqrt(np.mean((A @ coef - Y) ** 2)))
    m = math.inf if c1 == 0 else 1.0 / c1
    return ImagBoundFit(M=math.exp(c0), m=m, exponent=c1,
                        n_samples=int(sel.sum()), rms_residual=rms,
                        window=(lo, hi), im_band=(blo, bhi))


@dataclass(frozen=True)
class RealnessReport:
    """Eigenvalues inside a real window, with non-real members flagged."""

    window: tuple
    tol: float
    eigenvalues: tuple
    flagged: tuple
    real_count: int

    def to_json_obj(self) -> dict:
        return {
            "schema": "kreinspec/realness-report-v1",
            "window": list(self.window), "tol": self.tol,
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "flagged": [[z.real, z.imag] for z in self.flagged],
            "real_count": self.real_count,
        }


def realness_report(eigs: Sequence, window: Sequence[float],
                    tol: float) -> RealnessReport:
    """Flag non-real eigenvalues among those with Re in ``window``.

    ``eigs`` holds (eigenvalue, relative residual) pairs as produced by
    eigs_near; residuals above 1e-8 void the report and are rejected.
    """
    lo, hi = (float(t) for t in window)
    if not lo <= hi:
        raise ValidationError(f"empty window {window}")
    if tol < 0:
        raise ValidationError("tolerance must be nonnegative")
    vals = []
    for item in eigs:
        lam, res = item
        if res > 1e-8:
            raise ValidationError(
                f"eigenvalue {lam} carries residual {res:.2e} > 1e-08")
        vals.append(complex(lam))
    inside = tuple(z for z in vals if lo <= z.real <= hi)
    flagged = tuple(z for z in inside if abs(z.imag) > tol)
    return RealnessReport(window=(lo, hi), tol=float(tol),
                          eigenvalues=inside, flagged=flagged,
                          real_count=len(inside) - len(flagged))
