"""Kronecker sums of J-self-adjoint factors and spectral-type prediction.

Given factors (T1, J1) and (T2, J2), the sum S = T1 (x) I + I (x) T2 is
self-adjoint for J = J1 (x) J2 and its spectrum is the set of pairwise
eigenvalue sums.  The typed parts of the factor spectra predict, point by
point, constraints on the type each sum can have:

* membership sets M+/M-/M0 built from sums of same-sign, mixed-sign, and
  remaining parts exclude types outright, and
* when both factors carry uniformly definite invariant subspaces, block
  spectra of the four definite Kronecker blocks promote the exclusions to
  exact type statements for points well separated from the other blocks.

``oracle_classify_and_compare`` closes the loop by classifying the sum
directly and checking every prediction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np
import scipy.linalg

from .errors import ContourError, NumericalError, ValidationError
from .krein import (ClassifiedSpectrum, DefinitenessCertificate, Involution,
                    SpectralType, SpectrumEntry, _cluster_eigenvalues, _norm2,
                    classify_point, classify_spectrum, definiteness_constants,
                    j_self_adjoint_defect, riesz_projection,
                    validate_involution)
from .realsets import RealLineSet, minkowski_add_points

__all__ = [
    "TypeConstraint",
    "FactorSpec",
    "MSets",
    "PredictionReport",
    "Violation",
    "CampaignResult",
    "constraint_satisfied",
    "make_factor_spec",
    "kron_sum",
    "predict_m_sets",
    "predict_types",
    "oracle_classify_and_compare",
    "build_phi",
    "random_involution",
    "random_jsa_factor",
    "run_campaign",
]

DIM_CAP = 4096


class TypeConstraint(str, Enum):
    MUST_BE_PLUS = "must-be-positive"
    MUST_BE_MINUS = "must-be-negative"
    MUST_BE_NOT_DEFINITE = "must-be-not-definite"
    NOT_MINUS = "not-negative"
    NOT_PLUS = "not-positive"
    UNCONSTRAINED = "unconstrained"


_P, _M, _0 = SpectralType.POSITIVE, SpectralType.NEGATIVE, SpectralType.NOT_DEFINITE

_ALLOWED = {
    TypeConstraint.MUST_BE_PLUS: frozenset({_P}),
    TypeConstraint.MUST_BE_MINUS: frozenset({_M}),
    TypeConstraint.MUST_BE_NOT_DEFINITE: frozenset({_0}),
    TypeConstraint.NOT_MINUS: frozenset({_P, _0}),
    TypeConstraint.NOT_PLUS: frozenset({_M, _0}),
    TypeConstraint.UNCONSTRAINED: frozenset({_P, _M, _0}),
}

_FROM_ALLOWED = {v: k for k, v in _ALLOWED.items()}


def constraint_satisfied(constraint: TypeConstraint, t: SpectralType) -> bool:
    return t in _ALLOWED[constraint]


def _merge_constraints(constraints) -> TypeConstraint:
    allowed = frozenset({_P, _M, _0})
    for c in constraints:
        allowed &= _ALLOWED[c]
    if not allowed:
        raise NumericalError("prediction rules yielded contradictory constraints")
    return _FROM_ALLOWED[allowed]


# ---------------------------------------------------------------------------
# Factor specifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FactorSpec:
    """A classified J-self-adjoint factor for Kronecker-sum experiments.

    ``basis_plus``/``basis_minus`` are column bases of invariant subspaces
    on which the indefinite product is uniformly positive resp. negative
    (the definite root subspaces, in the default construction); either can
    be empty.  ``certificate`` carries their definiteness constants, or is
    None when no block-level predictions are wanted.
    """

    t: np.ndarray
    j: Involution
    classification: ClassifiedSpectrum
    basis_plus: np.ndarray
    basis_minus: np.ndarray
    certificate: DefinitenessCertificate | None = None

    @property
    def n(self) -> int:
        return self.t.shape[0]


def _typed_points(c: ClassifiedSpectrum, t: SpectralType) -> list[complex]:
    return [complex(e.lam) for e in c.entries if e.type is t]


def _invariance_residual(T, B) -> float:
    if B.shape[1] == 0:
        return 0.0
    Q = np.linalg.qr(B)[0]
    pi = Q @ Q.conj().T
    return _norm2((np.eye(T.shape[0]) - pi) @ T @ pi)


def _definite_bases(T, Jm, classification, nodes=32):
    """Orthonormal bases of the positive and negative root subspaces."""
    eigvals = np.array([e.lam for e in classification.entries for _ in range(e.alg_mult)])
    cols_p, cols_m = [], []
    for e in classification.entries:
        if e.type is SpectralType.NOT_DEFINITE:
            continue
        others = eigvals[np.abs(eigvals - e.lam) > 1e-12 * max(1.0, _norm2(T))]
        d_out = np.min(np.abs(others - e.lam)) if len(others) else 1.0
        P = riesz_projection(T, e.lam, 0.4 * float(d_out), nodes=max(nodes, 32))
        B = np.linalg.svd(P)[0][:, :e.alg_mult]
        (cols_p if e.type is SpectralType.POSITIVE else cols_m).append(B)
    n = T.shape[0]
    Bp = np.hstack(cols_p) if cols_p else np.zeros((n, 0), dtype=complex)
    Bm = np.hstack(cols_m) if cols_m else np.zeros((n, 0), dtype=complex)
    return Bp, Bm


def make_factor_spec(T, J, classification: ClassifiedSpectrum | None = None,
                     basis_plus: np.ndarray | None = None,
                     basis_minus: np.ndarray | None = None,
                     with_certificate: bool = True, tol: float = 1e-8,
                     cluster_gap: float | None = None) -> FactorSpec:
    """Validate and assemble a FactorSpec, filling missing pieces.

    Without an explicit classification the spectrum is classified here;
    missing bases default to the definite root subspaces extracted by
    contour projection.
    """
    T = np.asarray(T, dtype=complex)
    invol = J if isinstance(J, Involution) else validate_involution(J)
    scale = max(1.0, _norm2(T))
    defect = j_self_adjoint_defect(T, invol)
    if defect > tol * scale:
        raise ValidationError(
            f"factor is not J-self-adjoint: defect {defect:.3e} > {tol * scale:.1e}")
    if classification is None:
        classification = classify_spectrum(T, invol, tol=tol, cluster_gap=cluster_gap)
    if basis_plus is None or basis_minus is None:
        Bp, Bm = _definite_bases(T, invol.matrix, classification)
        basis_plus = Bp if basis_plus is None else basis_plus
        basis_minus = Bm if basis_minus is None else basis_minus
    basis_plus = np.asarray(basis_plus, dtype=complex).reshape(T.shape[0], -1)
    basis_minus = np.asarray(basis_minus, dtype=complex).reshape(T.shape[0], -1)
    for name, B in (("basis_plus", basis_plus), ("basis_minus", basis_minus)):
        res = _invariance_residual(T, B)
        if res > math.sqrt(tol) * scale:
            raise ValidationError(f"{name} does not span an invariant subspace "
                                  f"(residual {res:.3e})")
    certificate = None
    if with_certificate:
        certificate = definiteness_constants(invol.matrix, basis_plus, basis_minus)
    return FactorSpec(t=T, j=invol, classification=classification,
                      basis_plus=basis_plus, basis_minus=basis_minus,
                      certificate=certificate)


# ---------------------------------------------------------------------------
# Kronecker sum
# ---------------------------------------------------------------------------

def kron_sum(f1: FactorSpec, f2: FactorSpec,
             dim_cap: int = DIM_CAP) -> tuple[np.ndarray, Involution]:
    """S = T1 (x) I + I (x) T2 with the product involution J1 (x) J2."""
    n1, n2 = f1.n, f2.n
    if n1 * n2 > dim_cap:
        raise ValidationError(
            f"product dimension {n1 * n2} exceeds the cap {dim_cap}")
    S = np.kron(f1.t, np.eye(n2)) + np.kron(np.eye(n1), f2.t)
    Jm = np.kron(np.asarray(f1.j.matrix), np.asarray(f2.j.matrix))
    J = validate_involution(Jm, tol=max(f1.j.tol, f2.j.tol) * 4)
    return S, J


# ---------------------------------------------------------------------------
# M-set and type prediction
# ---------------------------------------------------------------------------

class MSets(NamedTuple):
    m_plus: object
    m_minus: object
    m_zero: object


def _tag(t1: SpectralType, t2: SpectralType) -> str:
    if t1 is _0 or t2 is _0:
        return "r"
    a = "p" if t1 is _P else "m"
    b = "p" if t2 is _P else "m"
    return a + b


@dataclass(frozen=True)
class _SumGroup:
    rep: complex
    flags: frozenset


def _check_typed(c: ClassifiedSpectrum):
    for e in c.entries:
        if not isinstance(e.type, SpectralType):
            raise ValidationError(f"eigenvalue {e.lam} carries no spectral type")


def _tagged_sums(c1: ClassifiedSpectrum, c2: ClassifiedSpectrum,
                 coalesce_tol: float) -> list[_SumGroup]:
    """All pairwise eigenvalue sums, coalesced, with type-pair flags unioned."""
    _check_typed(c1)
    _check_typed(c2)
    sums, tags = [], []
    for e1 in c1.entries:
        for e2 in c2.entries:
            sums.append(complex(e1.lam) + complex(e2.lam))
            tags.append(_tag(e1.type, e2.type))
    pts = np.array(sums, dtype=complex)
    groups = []
    for idx in _cluster_eigenvalues(pts, coalesce_tol):
        rep = complex(np.mean(pts[idx]))
        groups.append(_SumGroup(rep=rep, flags=frozenset(tags[i] for i in idx)))
    groups.sort(key=lambda g: (g.rep.real, g.rep.imag))
    return groups


def predict_m_sets(c1, c2: ClassifiedSpectrum, coalesce_tol: float = 1e-7) -> MSets:
    """Membership sets for the sum spectrum from the typed factor spectra.

    Finite route: M+ collects sums of two positive or two negative points,
    M- the mixed-sign sums, and M0 is everything left over (all of whose
    decompositions pass through a not-definite factor point).  Symbolic
    route: ``c1`` may be a RealLineSet standing for a spectrum of uniformly
    positive type (a self-adjoint factor with J = I); then each set is the
    Minkowski sum of the matching typed points of ``c2`` with that set.
    """
    if isinstance(c1, RealLineSet):
        _check_typed(c2)
        nonreal = [e.lam for e in c2.entries if abs(complex(e.lam).imag) > 0]
        if nonreal:
            raise ValidationError(
                f"symbolic route needs a real factor-2 spectrum, got {nonreal[0]}")
        parts = []
        for t in (_P, _M, _0):
            pts = [complex(e.lam).real for e in c2.entries if e.type is t]
            parts.append(minkowski_add_points(pts, c1))
        return MSets(*parts)

    groups = _tagged_sums(c1, c2, coalesce_tol)
    plus = tuple(g.rep for g in groups if g.flags & {"pp", "mm"})
    minus = tuple(g.rep for g in groups if g.flags & {"pm", "mp"})
    zero = tuple(g.rep for g in groups
                 if not (g.flags & {"pp", "mm", "pm", "mp"}))
    return MSets(plus, minus, zero)


def _block_sums(c1, c2):
    """Point arrays of the four definite block spectra and the remainder."""
    p1, m1, r1 = (_typed_points(c1, t) for t in (_P, _M, _0))
    p2, m2, r2 = (_typed_points(c2, t) for t in (_P, _M, _0))
    all1 = p1 + m1 + r1
    all2 = p2 + m2 + r2

    def cross(a, b):
        return np.array([x + y for x in a for y in b], dtype=complex)

    return {
        "pp": cross(p1, p2),
        "mm": cross(m1, m2),
        "pm": cross(p1, m2),
        "mp": cross(m1, p2),
        "r": np.concatenate([cross(r1, all2), cross(all1, r2)])
        if (r1 or r2) else np.array([], dtype=complex),
    }


def _dist(z: complex, pts: np.ndarray) -> float:
    return float(np.min(np.abs(pts - z))) if len(pts) else math.inf


def predict_types(f1: FactorSpec, f2: FactorSpec,
                  separation_radius: float | None = None,
                  coalesce_tol: float = 1e-7,
                  use_block_rules: bool | None = None) -> dict:
    """Predicted type constraint for every point of the sum spectrum.

    Exclusion rules always apply: points of M0, and of the overlap of M+
    with M-, must be not definite; membership in M+ alone rules out
    negative type, in M- alone positive type.  When both factors carry
    definiteness certificates, block rules upgrade well-separated points
    of the definite block spectra to exact type statements; a point
    qualifies only if its distance to every other block spectrum exceeds
    ``separation_radius`` (default 1e-4 times the sum's norm bound).
    """
    if use_block_rules is None:
        use_block_rules = (f1.certificate is not None
                           and f2.certificate is not None)
    if use_block_rules and (f1.certificate is None or f2.certificate is None):
        raise ValidationError("block rules need definiteness certificates "
                              "on both factors")
    scale = _norm2(f1.t) + _norm2(f2.t)
    if separation_radius is None:
        separation_radius = 1e-4 * max(1.0, scale)

    groups = _tagged_sums(f1.classification, f2.classification, coalesce_tol)
    blocks = _block_sums(f1.classification, f2.classification)

    gate = False
    if use_block_rules:
        c1, c2 = f1.certificate, f2.certificate
        lhs = (c1.kappa_cross * c2.kappa_cross) ** 2
        rhs = c1.kappa_plus * c2.kappa_plus * c1.kappa_minus * c2.kappa_minus
        gate = (not math.isnan(rhs)) and lhs < rhs

    predicted = {}
    for g in groups:
        rules = []
        in_p = bool(g.flags & {"pp", "mm"})
        in_m = bool(g.flags & {"pm", "mp"})
        if (in_p and in_m) or not (in_p or in_m):
            rules.append(TypeConstraint.MUST_BE_NOT_DEFINITE)
        elif in_p:
            rules.append(TypeConstraint.NOT_MINUS)
        else:
            rules.append(TypeConstraint.NOT_PLUS)

        if use_block_rules:
            far = {k: _dist(g.rep, v) > separation_radius
                   for k, v in blocks.items()}
            near = {k: k in g.flags for k in ("pp", "mm", "pm", "mp")}
            # same-sign blocks, each isolated from everything else
            if near["pp"] and far["mm"] and far["pm"] and far["mp"] and far["r"]:
                rules.append(TypeConstraint.MUST_BE_PLUS)
            if near["mm"] and far["pp"] and far["pm"] and far["mp"] and far["r"]:
                rules.append(TypeConstraint.MUST_BE_PLUS)
            if near["pm"] and far["pp"] and far["mm"] and far["mp"] and far["r"]:
                rules.append(TypeConstraint.MUST_BE_MINUS)
            if near["mp"] and far["pp"] and far["mm"] and far["pm"] and far["r"]:
                rules.append(TypeConstraint.MUST_BE_MINUS)
            if gate:
                # product condition met: the two same-sign blocks (resp.
                # mixed blocks) may overlap each other
                if (near["pp"] or near["mm"]) and far["pm"] and far["mp"] and far["r"]:
                    rules.append(TypeConstraint.MUST_BE_PLUS)
                if (near["pm"] or near["mp"]) and far["pp"] and far["mm"] and far["r"]:
                    rules.append(TypeConstraint.MUST_BE_MINUS)

        predicted[g.rep] = _merge_constraints(rules)
    return predicted


# ---------------------------------------------------------------------------
# Oracle comparison
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    point: complex
    constraint: TypeConstraint
    oracle_type: SpectralType


@dataclass(frozen=True, eq=False)
class PredictionReport:
    m_plus: tuple
    m_minus: tuple
    m_zero: tuple
    predicted: dict
    oracle: ClassifiedSpectrum
    violations: tuple
    oracle_failures: int
    unmatched: int

    @property
    def ok(self) -> bool:
        return not self.violations


def oracle_classify_and_compare(f1: FactorSpec, f2: FactorSpec,
                                tol: float = 1e-8,
                                cluster_gap: float | None = None,
                                separation_radius: float | None = None,
                                coalesce_tol: float = 1e-7,
                                nodes: int = 32,
                                use_block_rules: bool | None = None,
                                dim_cap: int = DIM_CAP) -> PredictionReport:
    """Classify the Kronecker sum directly and check every prediction.

    The default cluster gap is coarser than the classifier's (1e-6 times
    the norm) so that multiple eigenvalues split by Kronecker-level
    rounding are folded back into one cluster.  Clusters the classifier
    cannot certify are skipped and counted in ``oracle_failures``.
    """
    S, J = kron_sum(f1, f2, dim_cap=dim_cap)
    scale = max(1.0, _norm2(S))
    if cluster_gap is None:
        cluster_gap = 1e-6 * scale

    eigvals = np.linalg.eigvals(S)
    clusters = _cluster_eigenvalues(eigvals, cluster_gap)
    entries, failures = [], 0
    for idx in clusters:
        rep = complex(np.mean(eigvals[idx]))
        try:
            entries.append(classify_point(S, J, rep, tol=tol,
                                          cluster_gap=cluster_gap,
                                          nodes=nodes, eigvals=eigvals))
        except (ContourError, NumericalError):
            failures += 1
    entries.sort(key=lambda e: (round(e.lam.real, 9), round(e.lam.imag, 9)))
    oracle = ClassifiedSpectrum(tuple(entries))

    predicted = predict_types(f1, f2, separation_radius=separation_radius,
                              coalesce_tol=coalesce_tol,
                              use_block_rules=use_block_rules)
    msets = predict_m_sets(f1.classification, f2.classification, coalesce_tol)

    match_tol = 5.0 * cluster_gap
    lams = oracle.all_points
    per_entry: dict[int, list[TypeConstraint]] = {}
    unmatched = 0
    for point, constraint in predicted.items():
        if len(lams) == 0:
            unmatched += 1
            continue
        k = int(np.argmin(np.abs(lams - point)))
        if abs(lams[k] - point) > match_tol:
            unmatched += 1
            continue
        per_entry.setdefault(k, []).append(constraint)

    violations = []
    for k, constraints in per_entry.items():
        merged = _merge_constraints(constraints)
        if not constraint_satisfied(merged, oracle.entries[k].type):
            violations.append(Violation(point=complex(oracle.entries[k].lam),
                                        constraint=merged,
                                        oracle_type=oracle.entries[k].type))

    return PredictionReport(m_plus=msets.m_plus, m_minus=msets.m_minus,
                            m_zero=msets.m_zero, predicted=predicted,
                            oracle=oracle, violations=tuple(violations),
                            oracle_failures=failures, unmatched=unmatched)


# ---------------------------------------------------------------------------
# Phi operator
# ---------------------------------------------------------------------------

def build_phi(theta1: np.ndarray, theta2: np.ndarray,
              tol: float = 1e-10) -> np.ndarray:
    """Phi = Theta1 (x) Theta2 for uniformly positive Theta factors."""
    phi_parts = []
    for name, th in (("theta1", theta1), ("theta2", theta2)):
        th = np.asarray(th, dtype=complex)
        scale = max(1.0, _norm2(th))
        if _norm2(th - th.conj().T) > tol * scale:
            raise ValidationError(f"{name} is not Hermitian")
        if float(scipy.linalg.eigh(th, eigvals_only=True)[0]) <= tol * scale:
            raise ValidationError(f"{name} is not uniformly positive")
        phi_parts.append(th)
    return np.kron(phi_parts[0], phi_parts[1])


# ---------------------------------------------------------------------------
# Randomized instance generation
# ---------------------------------------------------------------------------

def random_involution(rng: np.random.Generator, n: int,
                      kind: str = "signature") -> np.ndarray:
    """Random symmetric involution: a sign pattern, a pairing permutation,
    or a unitarily conjugated sign pattern."""
    if kind == "signature":
        return np.diag(rng.choice([-1.0, 1.0], size=n))
    if kind == "flip":
        J = np.zeros((n, n))
        order = rng.permutation(n)
        i = 0
        while i + 1 < n:
            a, b = order[i], order[i + 1]
            J[a, b] = J[b, a] = 1.0
            i += 2
        if n % 2:
            J[order[-1], order[-1]] = rng.choice([-1.0, 1.0])
        return J
    if kind == "conjugated":
        W = np.linalg.qr(rng.standard_normal((n, n))
                         + 1j * rng.standard_normal((n, n)))[0]
        return W @ np.diag(rng.choice([-1.0, 1.0], size=n)) @ W.conj().T
    raise ValidationError(f"unknown involution kind {kind!r}")


def _sample_distinct(rng, count, gap=0.3, low=-5.0, high=5.0, existing=()):
    vals = list(existing)
    for _ in range(count):
        for _ in range(200):
            x = float(rng.uniform(low, high))
            if all(abs(x - v) >= gap for v in vals):
                vals.append(x)
                break
        else:
            raise NumericalError("could not sample well-separated eigenvalues")
    return vals[len(existing):]


def _embed(n, idx, block):
    M = np.eye(n, dtype=complex)
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            M[i, j] = block[a, b]
    return M


def random_jsa_factor(rng: np.random.Generator,
                      plus_eigs: Sequence[float] | None = None,
                      minus_eigs: Sequence[float] | None = None,
                      jordan_eigs: Sequence[float] | None = None,
                      pair_eigs: Sequence[complex] | None = None,
                      n_plus: int = 1, n_minus: int = 1,
                      n_jordan: int = 0, n_pairs: int = 0,
                      mixing_strength: float = 0.4,
                      conjugate: bool = False,
                      tol: float = 1e-8) -> FactorSpec:
    """Build a factor with prescribed spectral types, mixed but certified.

    Starts in canonical coordinates (sign pattern J, each eigenvalue on a
    coordinate of its own sign; Jordan blocks and non-real conjugate pairs
    on a (+,-) coordinate pair), applies J-unitary mixing (hyperbolic
    rotations across signs, unitary rotations within a sign) and optional
    global unitary conjugation, and symmetrizes T := (T + J T* J)/2 so the
    result is J-self-adjoint to machine precision.  The returned
    classification is the constructed ground truth, not a re-measurement.
    """
    if plus_eigs is None or minus_eigs is None or jordan_eigs is None \
            or pair_eigs is None:
        reals = _sample_distinct(
            rng, (n_plus if plus_eigs is None else 0)
            + (n_minus if minus_eigs is None else 0)
            + (n_jordan if jordan_eigs is None else 0)
            + (n_pairs if pair_eigs is None else 0),
            existing=[x for s in (plus_eigs, minus_eigs, jordan_eigs) if s
                      for x in s]
            + [complex(z).real for z in (pair_eigs or [])])
        k = 0
        if plus_eigs is None:
            plus_eigs, k = reals[k:k + n_plus], k + n_plus
        if minus_eigs is None:
            minus_eigs, k = reals[k:k + n_minus], k + n_minus
        if jordan_eigs is None:
            jordan_eigs, k = reals[k:k + n_jordan], k + n_jordan
        if pair_eigs is None:
            pair_eigs = [r + 1j * rng.uniform(0.4, 1.5) for r in reals[k:]]
    plus_eigs = [float(x) for x in plus_eigs]
    minus_eigs = [float(x) for x in minus_eigs]
    jordan_eigs = [float(x) for x in jordan_eigs]
    pair_eigs = [complex(z) for z in pair_eigs]

    blocks, jdiag, truth = [], [], []
    plus_cols, minus_cols = [], []
    pos = 0
    for lam in plus_eigs:
        blocks.append(np.array([[lam]], dtype=complex))
        jdiag.append(1.0)
        plus_cols.append(pos)
        truth.append((lam, 1, 1, _P, [1.0]))
        pos += 1
    for lam in minus_eigs:
        blocks.append(np.array([[lam]], dtype=complex))
        jdiag.append(-1.0)
        minus_cols.append(pos)
        truth.append((lam, 1, 1, _M, [-1.0]))
        pos += 1
    for lam in jordan_eigs:
        t = float(rng.uniform(0.5, 1.5))
        blocks.append(np.array([[lam + t, t], [-t, lam - t]], dtype=complex))
        jdiag.extend([1.0, -1.0])
        truth.append((lam, 2, 1, _0, [-1.0, 1.0]))
        pos += 2
    for z in pair_eigs:
        w = abs(z.imag)
        blocks.append(np.array([[z.real, w], [-w, z.real]], dtype=complex))
        jdiag.extend([1.0, -1.0])
        truth.append((complex(z.real, w), 1, 1, _0, [0.0]))
        truth.append((complex(z.real, -w), 1, 1, _0, [0.0]))
        pos += 2

    n = pos
    T = scipy.linalg.block_diag(*blocks) if blocks else np.zeros((0, 0))
    Jm = np.diag(jdiag)
    sig_plus = [i for i, s in enumerate(jdiag) if s > 0]
    sig_minus = [i for i, s in enumerate(jdiag) if s < 0]

    G = np.eye(n, dtype=complex)
    Ginv = np.eye(n, dtype=complex)
    budget = mixing_strength
    while budget > 0.1 and sig_plus and sig_minus:
        t = float(rng.uniform(0.1, min(0.5, budget)))
        budget -= t
        i = int(rng.choice(sig_plus))
        j = int(rng.choice(sig_minus))
        c, s = math.cosh(t), math.sinh(t)
        H = _embed(n, [i, j], np.array([[c, s], [s, c]]))
        Hinv = _embed(n, [i, j], np.array([[c, -s], [-s, c]]))
        G, Ginv = G @ H, Hinv @ Ginv
    for idx in (sig_plus, sig_minus):
        if len(idx) >= 2:
            i, j = rng.choice(idx, size=2, replace=False)
            th = float(rng.uniform(0, 2 * math.pi))
            ph = np.exp(1j * float(rng.uniform(0, 2 * math.pi)))
            U2 = np.array([[math.cos(th), -math.sin(th) * ph],
                           [math.sin(th) * np.conj(ph), math.cos(th)]])
            G = G @ _embed(n, [int(i), int(j)], U2)
            Ginv = _embed(n, [int(i), int(j)], U2.conj().T) @ Ginv

    T = G @ T @ Ginv
    Bp = G[:, plus_cols] if plus_cols else np.zeros((n, 0), dtype=complex)
    Bm = G[:, minus_cols] if minus_cols else np.zeros((n, 0), dtype=complex)

    if conjugate:
        W = np.linalg.qr(rng.standard_normal((n, n))
                         + 1j * rng.standard_normal((n, n)))[0]
        T = W @ T @ W.conj().T
        Jm = W @ Jm @ W.conj().T
        Bp, Bm = W @ Bp, W @ Bm

    invol = validate_involution(Jm)
    T = 0.5 * (T + Jm @ T.conj().T @ Jm)

    entries = [SpectrumEntry(lam=complex(lam), alg_mult=a, geo_mult=g,
                             type=t, gram_eigs=np.array(ge))
               for lam, a, g, t, ge in truth]
    entries.sort(key=lambda e: (round(e.lam.real, 9), round(e.lam.imag, 9)))
    classification = ClassifiedSpectrum(tuple(entries))
    certificate = definiteness_constants(Jm, Bp, Bm)
    spec = FactorSpec(t=T, j=invol, classification=classification,
                      basis_plus=Bp, basis_minus=Bm, certificate=certificate)
    defect = j_self_adjoint_defect(T, invol)
    if defect > tol * max(1.0, _norm2(T)):
        raise NumericalError(f"generator produced defect {defect:.3e}")
    return spec


def _sums_separated(f1: FactorSpec, f2: FactorSpec, gap: float) -> bool:
    s = [complex(e1.lam) + complex(e2.lam)
         for e1 in f1.classification.entries
         for e2 in f2.classification.entries]
    s = np.array(s)
    for i in range(len(s)):
        d = np.abs(s[i + 1:] - s[i])
        if len(d) and d.min() < gap:
            return False
    return True


def _campaign_instance(rng: np.random.Generator, kind: str):
    """One generator draw for the verification campaign."""
    for _ in range(60):
        conj = bool(rng.integers(0, 2))
        if kind == "definite":
            f1 = random_jsa_factor(rng, n_plus=int(rng.integers(1, 3)),
                                   n_minus=int(rng.integers(1, 3)),
                                   conjugate=conj)
            f2 = random_jsa_factor(rng, n_plus=int(rng.integers(1, 3)),
                                   n_minus=int(rng.integers(1, 3)))
        elif kind == "jordan":
            f1 = random_jsa_factor(rng, n_plus=1, n_minus=1, n_jordan=1,
                                   conjugate=conj)
            f2 = random_jsa_factor(rng, n_plus=int(rng.integers(1, 3)),
                                   n_minus=int(rng.integers(0, 2)))
        elif kind == "pair":
            f1 = random_jsa_factor(rng, n_plus=1, n_minus=1, n_pairs=1)
            f2 = random_jsa_factor(rng, n_plus=1, n_minus=1,
                                   n_pairs=int(rng.integers(0, 2)),
                                   conjugate=conj)
        elif kind == "overlap":
            d = float(rng.uniform(0.5, 2.0))
            x = float(rng.uniform(-3.0, 3.0))
            y = float(rng.uniform(-3.0, 3.0))
            f1 = random_jsa_factor(rng, plus_eigs=[x, x + d], minus_eigs=[],
                                   jordan_eigs=[], pair_eigs=[])
            f2 = random_jsa_factor(rng, plus_eigs=[y], minus_eigs=[y + d],
                                   jordan_eigs=[], pair_eigs=[])
            return f1, f2
        elif kind == "hermitian":
            f1 = random_jsa_factor(rng, n_plus=int(rng.integers(2, 4)),
                                   n_minus=0)
            f2 = random_jsa_factor(rng, n_plus=int(rng.integers(2, 4)),
                                   n_minus=0, conjugate=conj)
        elif kind == "big":
            # eigenvalues on a two-scale lattice so all pairwise sums stay
            # separated: factor-2 spacing exceeds the factor-1 span
            k = int(rng.integers(0, 4))
            n1, n2 = [(6, 10), (8, 8), (10, 10), (12, 12)][k]
            e1 = 0.5 * np.arange(n1) + rng.uniform(0.0, 0.15, size=n1)
            span1 = float(e1.max() - e1.min())
            e2 = (span1 + 0.5) * np.arange(n2) + rng.uniform(0.0, 0.15, size=n2)
            e1, e2 = e1 - e1.mean(), e2 - e2.mean()
            p1 = rng.permutation(n1)
            p2 = rng.permutation(n2)
            f1 = random_jsa_factor(rng, plus_eigs=e1[p1[:n1 // 2]],
                                   minus_eigs=e1[p1[n1 // 2:]],
                                   jordan_eigs=[], pair_eigs=[],
                                   mixing_strength=0.3)
            f2 = random_jsa_factor(rng, plus_eigs=e2[p2[:n2 // 2]],
                                   minus_eigs=e2[p2[n2 // 2:]],
                                   jordan_eigs=[], pair_eigs=[],
                                   mixing_strength=0.3)
            return f1, f2
        else:
            raise ValidationError(f"unknown campaign kind {kind!r}")
        if _sums_separated(f1, f2, gap=0.05):
            return f1, f2
    raise NumericalError(f"could not draw a separated instance of kind {kind!r}")


_CAMPAIGN_CYCLE = ("definite", "definite", "jordan", "overlap", "pair",
                   "definite", "jordan", "overlap", "hermitian", "big")


@dataclass(frozen=True)
class CampaignResult:
    instances: tuple
    total_violations: int
    total_failures: int
    total_unmatched: int
    kind_counts: dict


def run_campaign(seed: int, n_instances: int = 200,
                 tol: float = 1e-8, dim_cap: int = DIM_CAP) -> CampaignResult:
    """Randomized prediction-vs-oracle campaign over all generator branches.

    Deterministic for a fixed seed.  Each record carries the instance kind,
    the product dimension, and the violation/failure counts.
    """
    rng = np.random.default_rng(seed)
    records = []
    kind_counts: dict[str, int] = {}
    for k in range(n_instances):
        kind = _CAMPAIGN_CYCLE[k % len(_CAMPAIGN_CYCLE)]
        f1, f2 = _campaign_instance(rng, kind)
        report = oracle_classify_and_compare(f1, f2, tol=tol, dim_cap=dim_cap)
        kind_counts[kind] = kind_counts.get(kind, 0) + 1
        records.append({
            "index": k,
            "kind": kind,
            "dim": f1.n * f2.n,
            "violations": len(report.violations),
            "oracle_failures": report.oracle_failures,
            "unmatched": report.unmatched,
        })
    return CampaignResult(
        instances=tuple(records),
        total_violations=sum(r["violations"] for r in records),
        total_failures=sum(r["oracle_failures"] for r in records),
        total_unmatched=sum(r["unmatched"] for r in records),
        kind_counts=kind_counts,
    )
