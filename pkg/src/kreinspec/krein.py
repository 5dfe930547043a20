"""Spectral-type classification for J-self-adjoint matrices.

A bounded symmetric involution J (J = J*, J^2 = I) turns the standard
inner product into the indefinite product [f, g] = (Jf, g).  A matrix T
with T = J T* J is J-self-adjoint; each of its eigenvalue clusters is
classified as positive type, negative type, or not definite by the sign
pattern of the indefinite Gram matrix on the root subspace, computed
from a Riesz contour projection.

Classification runs on the root subspace, not just the eigenspace, so a
Jordan block at a real eigenvalue is reported as not definite even
though every individual eigenvector may be non-neutral.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import ContourError, NumericalError, ValidationError

__all__ = [
    "SpectralType",
    "Involution",
    "SpectrumEntry",
    "ClassifiedSpectrum",
    "ThetaCertificate",
    "DefinitenessCertificate",
    "validate_involution",
    "j_self_adjoint_defect",
    "riesz_projection",
    "classify_point",
    "classify_spectrum",
    "theta_operator",
    "definiteness_constants",
]

MAX_CONTOUR_NODES = 4096


class SpectralType(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NOT_DEFINITE = "not-definite"


def _as_matrix(J) -> np.ndarray | scipy.sparse.spmatrix:
    return J.matrix if isinstance(J, Involution) else J


def _norm2(A) -> float:
    """Spectral norm for dense input, Frobenius bound for sparse input."""
    if scipy.sparse.issparse(A):
        return float(scipy.sparse.linalg.norm(A, "fro"))
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


@dataclass(frozen=True, eq=False)
class Involution:
    """A validated symmetric involution; build via ``validate_involution``."""

    matrix: np.ndarray
    tol: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def validate_involution(J, tol: float = 1e-10) -> Involution:
    """Check ||J - J*|| <= tol and ||J^2 - I|| <= tol, returning the wrapper.

    Dense matrices are checked in spectral norm; sparse ones in Frobenius
    norm, which dominates the spectral norm and is therefore conservative.
    """
    J = _as_matrix(J)
    if J.ndim != 2 or J.shape[0] != J.shape[1]:
        raise ValidationError(f"involution must be square, got shape {J.shape}")
    if scipy.sparse.issparse(J):
        sym = _norm2(J - J.conj().T)
        invol = _norm2((J @ J - scipy.sparse.identity(J.shape[0], format="csr",
                                                      dtype=J.dtype)).tocsr())
    else:
        J = np.asarray(J, dtype=complex)
        sym = _norm2(J - J.conj().T)
        invol = _norm2(J @ J - np.eye(J.shape[0]))
    if sym > tol:
        raise ValidationError(f"matrix is not symmetric: ||J - J*|| = {sym:.3e} > {tol:.1e}")
    if invol > tol:
        raise ValidationError(f"matrix is not an involution: ||J^2 - I|| = {invol:.3e} > {tol:.1e}")
    return Involution(J, tol)


def j_self_adjoint_defect(T, J) -> float:
    """||T - J T* J|| in spectral norm (Frobenius bound when sparse)."""
    Jm = _as_matrix(J)
    if scipy.sparse.issparse(T) or scipy.sparse.issparse(Jm):
        return _norm2(T - Jm @ T.conj().T @ Jm)
    T = np.asarray(T, dtype=complex)
    Jm = np.asarray(Jm, dtype=complex)
    if T.shape != Jm.shape:
        raise ValidationError(f"shape mismatch: T {T.shape} vs J {Jm.shape}")
    return _norm2(T - Jm @ T.conj().T @ Jm)


@dataclass(frozen=True, eq=False)
class SpectrumEntry:
    """One classified eigenvalue cluster."""

    lam: complex
    alg_mult: int
    geo_mult: int
    type: SpectralType
    gram_eigs: np.ndarray


@dataclass(frozen=True, eq=False)
class ClassifiedSpectrum:
    entries: tuple[SpectrumEntry, ...]

    def points_of_type(self, t: SpectralType) -> np.ndarray:
        return np.array([e.lam for e in self.entries if e.type is t], dtype=complex)

    @property
    def all_points(self) -> np.ndarray:
        return np.array([e.lam for e in self.entries], dtype=complex)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


# ---------------------------------------------------------------------------
# Riesz projections
# ---------------------------------------------------------------------------

def riesz_projection(T: np.ndarray, center: complex, radius: float,
                     nodes: int = 64, margin: float | None = None,
                     eigvals: np.ndarray | None = None) -> np.ndarray:
    """Spectral projection onto eigenvalues inside the given circle.

    Trapezoidal quadrature of the resolvent integral on the circle; the
    rule converges geometrically in the node count with rate set by the
    distance from the contour to the nearest eigenvalue.  If ``eigvals``
    is supplied, the contour is rejected when an eigenvalue comes within
    ``margin`` (default radius/100) of it.
    """
    T = np.asarray(T, dtype=complex)
    n = T.shape[0]
    if T.ndim != 2 or T.shape[1] != n:
        raise ValidationError(f"matrix must be square, got shape {T.shape}")
    if not (radius > 0 and math.isfinite(radius)):
        raise ValidationError(f"contour radius must be positive and finite, got {radius}")
    if nodes < 16:
        raise ValidationError(f"need at least 16 quadrature nodes, got {nodes}")
    if margin is None:
        margin = radius / 100.0
    if eigvals is not None:
        gap = np.abs(np.abs(np.asarray(eigvals) - center) - radius)
        if gap.size and gap.min() < margin:
            raise ContourError(
                f"eigenvalue within {gap.min():.3e} of the contour (margin {margin:.3e})")

    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    ring = np.exp(1j * theta)
    eye = np.eye(n, dtype=complex)
    P = np.zeros((n, n), dtype=complex)
    # chunked so the stacked solve never materializes more than ~32 resolvents
    for start in range(0, nodes, 32):
        w = ring[start:start + 32]
        zs = center + radius * w
        A = zs[:, None, None] * eye - T
        try:
            R = np.linalg.solve(A, np.broadcast_to(eye, A.shape))
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"resolvent solve failed on the contour: {exc}") from exc
        P += np.einsum("j,jkl->kl", w, R)
    return P * (radius / nodes)


def _adaptive_projection(T, center, radius, nodes, proj_tol, eigvals):
    """Double the node count until P is idempotent with near-integer trace."""
    nds = max(16, nodes)
    last_err = None
    while nds <= MAX_CONTOUR_NODES:
        P = riesz_projection(T, center, radius, nodes=nds, eigvals=eigvals)
        idem = _norm2(P @ P - P)
        tr = np.trace(P)
        trace_err = abs(tr - round(tr.real))
        if idem <= proj_tol * max(1.0, _norm2(P)) and trace_err <= 1e-6:
            return P, int(round(tr.real)), idem
        last_err = (idem, trace_err)
        nds *= 2
    raise NumericalError(
        f"contour quadrature under-resolved at {MAX_CONTOUR_NODES} nodes: "
        f"||P^2-P|| = {last_err[0]:.3e}, trace defect = {last_err[1]:.3e}")


# ---------------------------------------------------------------------------
# Cluster classification
# ---------------------------------------------------------------------------

def _cluster_eigenvalues(eigvals: np.ndarray, gap: float) -> list[np.ndarray]:
    """Partition eigenvalues into transitive proximity clusters (indices)."""
    m = len(eigvals)
    parent = list(range(m))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(m):
        for j in range(i + 1, m):
            if abs(eigvals[i] - eigvals[j]) <= gap:
                pi, pj = find(i), find(j)
                if pi != pj:
                    parent[pi] = pj
    groups: dict[int, list[int]] = {}
    for i in range(m):
        groups.setdefault(find(i), []).append(i)
    return [np.array(g) for g in groups.values()]


def _classify_cluster(T, Jm, members, others, scale, tol, nodes):
    center = complex(np.mean(members))
    d_in = float(np.max(np.abs(members - center)))
    d_out = float(np.min(np.abs(others - center))) if len(others) else math.inf
    if d_out - d_in <= max(1e-12 * scale, 4.0 * d_in * 1e-10):
        raise ContourError(
            f"cannot isolate cluster at {center:.6g}: extent {d_in:.3e} "
            f"vs nearest outside eigenvalue {d_out:.3e}")
    if math.isinf(d_out):
        radius = 2.0 * d_in + max(1.0, 0.1 * scale)
    else:
        radius = 0.5 * (d_in + d_out)
        if max(radius / d_out, d_in / radius if radius > 0 else 1.0) > 0.97:
            raise ContourError(
                f"contour ratios too close to 1 for cluster at {center:.6g}")

    all_eigs = np.concatenate([members, others]) if len(others) else members
    P, alg_mult, _ = _adaptive_projection(T, center, radius,
                                          nodes=nodes, proj_tol=1e-8,
                                          eigvals=all_eigs)
    if alg_mult != len(members):
        raise NumericalError(
            f"projection rank {alg_mult} disagrees with cluster size {len(members)}")

    U, s, _ = np.linalg.svd(P)
    if s[alg_mult - 1] < 0.5 or (alg_mult < len(s) and s[alg_mult] > 0.5):
        raise NumericalError("projection range extraction is ambiguous")
    B = U[:, :alg_mult]

    G = B.conj().T @ Jm @ B
    G = 0.5 * (G + G.conj().T)
    gram_eigs = scipy.linalg.eigh(G, eigvals_only=True)
    if np.all(gram_eigs > tol):
        t = SpectralType.POSITIVE
    elif np.all(gram_eigs < -tol):
        t = SpectralType.NEGATIVE
    else:
        t = SpectralType.NOT_DEFINITE

    spread = 2.0 * d_in
    geo_tol = max(tol * max(1.0, scale), 4.0 * spread)
    sv = np.linalg.svd(T - center * np.eye(T.shape[0]), compute_uv=False)
    geo_mult = int(np.count_nonzero(sv <= geo_tol))
    geo_mult = min(max(geo_mult, 1), alg_mult)

    return SpectrumEntry(lam=center, alg_mult=alg_mult, geo_mult=geo_mult,
                         type=t, gram_eigs=gram_eigs)


def classify_point(T, J, lam: complex, tol: float = 1e-8,
                   cluster_gap: float | None = None, nodes: int = 32,
                   eigvals: np.ndarray | None = None) -> SpectrumEntry:
    """Classify the eigenvalue cluster of T containing ``lam``.

    The root subspace is extracted through an adaptive Riesz projection;
    eigenvalues closer than ``cluster_gap`` (default 1e-8 * max(1, ||T||))
    are treated as one cluster.  The spectral type is decided by the sign
    pattern of the indefinite Gram matrix B* J B of an orthonormal root
    basis B: all eigenvalues above +tol gives positive type, all below
    -tol negative type, anything else (including a Jordan structure or a
    genuinely mixed cluster) not definite.
    """
    T = np.asarray(T, dtype=complex)
    Jm = np.asarray(_as_matrix(J), dtype=complex)
    if T.shape != Jm.shape or T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise ValidationError(f"incompatible shapes T {T.shape}, J {Jm.shape}")
    scale = _norm2(T)
    if cluster_gap is None:
        cluster_gap = 1e-8 * max(1.0, scale)
    if eigvals is None:
        eigvals = np.linalg.eigvals(T)

    smin = np.linalg.svd(T - lam * np.eye(T.shape[0]), compute_uv=False)[-1]
    # accept anything within the clustering resolution: a cluster mean of a
    # numerically split multiple eigenvalue is a legitimate query point
    if smin > max(tol * max(1.0, scale), cluster_gap):
        raise ValidationError(
            f"{lam} is not within tolerance of the spectrum: "
            f"sigma_min(T - lambda I) = {smin:.3e}")

    clusters = _cluster_eigenvalues(eigvals, cluster_gap)
    dists = [np.min(np.abs(eigvals[c] - lam)) for c in clusters]
    idx = clusters[int(np.argmin(dists))]
    members = eigvals[idx]
    mask = np.ones(len(eigvals), dtype=bool)
    mask[idx] = False
    return _classify_cluster(T, Jm, members, eigvals[mask], scale, tol, nodes)


def classify_spectrum(T, J, tol: float = 1e-8,
                      cluster_gap: float | None = None, nodes: int = 32,
                      points: Sequence[complex] | None = None,
                      eigvals: np.ndarray | None = None) -> ClassifiedSpectrum:
    """Classify every eigenvalue cluster of T (or just those near ``points``).

    Entries are sorted by (Re, Im) of the cluster representative.
    """
    T = np.asarray(T, dtype=complex)
    Jm = np.asarray(_as_matrix(J), dtype=complex)
    scale = _norm2(T)
    if cluster_gap is None:
        cluster_gap = 1e-8 * max(1.0, scale)
    if eigvals is None:
        eigvals = np.linalg.eigvals(T)
    clusters = _cluster_eigenvalues(eigvals, cluster_gap)

    if points is not None:
        wanted = []
        for p in points:
            dists = [np.min(np.abs(eigvals[c] - p)) for c in clusters]
            wanted.append(int(np.argmin(dists)))
        clusters = [clusters[i] for i in sorted(set(wanted))]

    entries = []
    for idx in clusters:
        mask = np.ones(len(eigvals), dtype=bool)
        mask[idx] = False
        entries.append(_classify_cluster(T, Jm, eigvals[idx], eigvals[mask],
                                         scale, tol, nodes))
    # rounding is monotone, so this never inverts true order; it only keeps
    # noise below 1e-9 from flipping nearly tied real parts
    entries.sort(key=lambda e: (round(e.lam.real, 9), round(e.lam.imag, 9)))
    return ClassifiedSpectrum(tuple(entries))


# ---------------------------------------------------------------------------
# Theta operator for oblique resolutions of identity
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ThetaCertificate:
    n_projections: int
    min_eig: float
    commutation_residual: float
    lower_bound: float
    bound_satisfied: bool


def theta_operator(projections: Iterable[np.ndarray],
                   tol: float = 1e-10) -> tuple[np.ndarray, ThetaCertificate]:
    """Theta = sum_k P_k* P_k for a resolution of identity by projections.

    Validates that the family is mutually annihilating and complete, then
    returns Theta with a certificate: Theta is Hermitian positive definite
    with smallest eigenvalue at least 1/n (Cauchy-Schwarz on the splitting
    f = sum_k P_k f), and Theta P_j = P_j* Theta for every member.
    """
    Ps = [np.asarray(P, dtype=complex) for P in projections]
    if not Ps:
        raise ValidationError("projection family is empty")
    n_dim = Ps[0].shape[0]
    for P in Ps:
        if P.shape != (n_dim, n_dim):
            raise ValidationError("projections must share one square shape")
    norms = [max(1.0, _norm2(P)) for P in Ps]
    for i, Pi in enumerate(Ps):
        for j, Pj in enumerate(Ps):
            prod = Pi @ Pj
            want = Pi if i == j else 0.0
            if _norm2(prod - want) > tol * norms[i] * norms[j]:
                raise ValidationError(
                    f"family fails P_{i} P_{j} = {'P_' + str(i) if i == j else '0'}")
    if _norm2(sum(Ps) - np.eye(n_dim)) > tol * max(norms) * len(Ps):
        raise ValidationError("projections do not sum to the identity")

    theta = sum(P.conj().T @ P for P in Ps)
    theta = 0.5 * (theta + theta.conj().T)
    min_eig = float(scipy.linalg.eigh(theta, eigvals_only=True)[0])
    comm = max(_norm2(theta @ P - P.conj().T @ theta) for P in Ps)
    n = len(Ps)
    cert = ThetaCertificate(n_projections=n, min_eig=min_eig,
                            commutation_residual=comm,
                            lower_bound=1.0 / n,
                            bound_satisfied=min_eig >= 1.0 / n - tol)
    return theta, cert


# ---------------------------------------------------------------------------
# Uniform definiteness constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DefinitenessCertificate:
    """Best constants in the uniform definiteness and cross-coupling bounds.

    kappa_plus  = min of (Jf, f)/||f||^2 over the plus subspace,
    kappa_minus = min of -(Jf, f)/||f||^2 over the minus subspace,
    kappa_cross = smallest c with |(Jf, g)| <= c ||f|| ||g|| across them.
    Empty subspaces give vacuous constants (+inf / 0).
    """

    kappa_plus: float
    kappa_minus: float
    kappa_cross: float
    cross_condition_met: bool
    dim_plus: int
    dim_minus: int


def _pencil_min(A: np.ndarray, M: np.ndarray) -> float:
    A = 0.5 * (A + A.conj().T)
    M = 0.5 * (M + M.conj().T)
    return float(scipy.linalg.eigh(A, M, eigvals_only=True)[0])


def definiteness_constants(J, basis_plus: np.ndarray, basis_minus: np.ndarray,
                           tol: float = 1e-10,
                           require_definite: bool = True) -> DefinitenessCertificate:
    """Compute the uniform definiteness constants for two spanning bases.

    Bases need not be orthonormal; the constants come from generalized
    Hermitian pencils against the plain Gram matrices, so they are exact
    subspace quantities, not per-column ones.
    """
    Jm = np.asarray(_as_matrix(J), dtype=complex)
    n = Jm.shape[0]

    def prep(B, name):
        B = np.asarray(B, dtype=complex)
        if B.size == 0:
            return np.zeros((n, 0), dtype=complex)
        if B.ndim != 2 or B.shape[0] != n:
            raise ValidationError(f"{name} must have shape ({n}, k), got {B.shape}")
        sv = np.linalg.svd(B, compute_uv=False)
        if sv[-1] <= tol * max(1.0, sv[0]):
            raise ValidationError(f"{name} is rank deficient")
        return B

    Bp = prep(basis_plus, "basis_plus")
    Bm = prep(basis_minus, "basis_minus")

    kp = _pencil_min(Bp.conj().T @ Jm @ Bp, Bp.conj().T @ Bp) if Bp.shape[1] else math.inf
    km = _pencil_min(-(Bm.conj().T @ Jm @ Bm), Bm.conj().T @ Bm) if Bm.shape[1] else math.inf
    if require_definite:
        if Bp.shape[1] and kp <= tol:
            raise ValidationError(f"plus subspace is not uniformly positive (kappa = {kp:.3e})")
        if Bm.shape[1] and km <= tol:
            raise ValidationError(f"minus subspace is not uniformly negative (kappa = {-km:.3e})")

    if Bp.shape[1] and Bm.shape[1]:
        Qp = np.linalg.qr(Bp)[0]
        Qm = np.linalg.qr(Bm)[0]
        kc = float(np.linalg.norm(Qp.conj().T @ Jm @ Qm, 2))
    else:
        kc = 0.0

    met = kc * kc < kp * km
    return DefinitenessCertificate(kappa_plus=kp, kappa_minus=km, kappa_cross=kc,
                                   cross_condition_met=met,
                                   dim_plus=Bp.shape[1], dim_minus=Bm.shape[1])
