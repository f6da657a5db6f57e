"""Operator inequalities: spectral pencils, hyponormality, range factorization.

The workhorse here is the whitened-pencil pair ``pencil_sup`` / ``pencil_inf``
for PSD operands X, Y:

* ``pencil_sup(X, Y)`` finds the least ``lam`` with ``X <= lam * Y`` in the
  quadratic-form order.  Y is eigen-decomposed, eigenvalues below the rank
  cutoff are discarded, and X is whitened on the kept range; if X carries
  energy on the discarded kernel the answer is infinity, certified by an
  obstruction vector.

* ``pencil_inf(X, Y)`` finds the greatest ``alpha`` with ``alpha * Y <= X``
  for *all* vectors.  On the kernel of Y the inequality is automatic, but
  mixed vectors couple through X's off-diagonal blocks, so the kept-range
  block of X is reduced by the generalized Schur complement against the
  kernel block before whitening.  The witness includes the minimizing kernel
  component, so its generalized Rayleigh quotient attains the optimum.

Everything downstream (window-frame bounds, relative hyponormality, the
factorization equivalences) is phrased through these two primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotSquare
from .numerics import (
    DEFAULT_TOL,
    Tolerance,
    adjoint,
    as_operator,
    hermitize,
    is_psd,
    op_norm,
    pinv,
    range_inclusion,
)


@dataclass(frozen=True)
class PencilBound:
    """Optimum of a two-operator inequality, with certifying vectors.

    ``witness`` attains the optimum as a generalized Rayleigh quotient;
    ``obstruction`` (sup case only) is a unit vector in ker(Y) carrying
    X-energy, certifying value = inf.  ``degenerate`` marks a rank-zero
    reference operator, where the inequality is vacuous.
    """

    value: float
    witness: np.ndarray | None = None
    obstruction: np.ndarray | None = None
    degenerate: bool = False


def _normalize(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    return v if norm == 0 else v / norm


def _psd_split(y: np.ndarray, tol: Tolerance) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split a PSD matrix into kept range (basis, eigenvalues) and discarded kernel basis."""
    vals, vecs = np.linalg.eigh(hermitize(y))
    top = float(vals[-1]) if vals.size else 0.0
    cutoff = tol.rank_rel * max(top, 0.0)
    keep = vals > cutoff
    return vecs[:, keep], vals[keep], vecs[:, ~keep]


def _herm_norm(x: np.ndarray) -> float:
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(np.linalg.eigvalsh(hermitize(x)))))


def pencil_sup(x, y, tol: Tolerance = DEFAULT_TOL) -> PencilBound:
    """Least ``lam >= 0`` with ``x <= lam * y`` (PSD operands, quadratic-form order)."""
    x = as_operator(x)
    y = as_operator(y)
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise DimensionMismatch(f"pencil operands must be square and equal: {x.shape} vs {y.shape}")
    basis_r, vals_r, basis_k = _psd_split(y, tol)
    floor = tol.psd_floor * max(1.0, _herm_norm(x))
    if basis_k.shape[1] > 0:
        kernel_block = hermitize(basis_k.conj().T @ x @ basis_k)
        kvals, kvecs = np.linalg.eigh(kernel_block)
        if float(kvals[-1]) > floor:
            obstruction = _normalize(basis_k @ kvecs[:, -1])
            return PencilBound(value=math.inf, obstruction=obstruction)
    if basis_r.shape[1] == 0:
        return PencilBound(value=0.0, degenerate=True)
    whitener = basis_r / np.sqrt(vals_r)
    core = hermitize(whitener.conj().T @ x @ whitener)
    cvals, cvecs = np.linalg.eigh(core)
    witness = _normalize(whitener @ cvecs[:, -1])
    return PencilBound(value=float(cvals[-1]), witness=witness)


def pencil_inf(x, y, tol: Tolerance = DEFAULT_TOL) -> PencilBound:
    """Greatest ``alpha >= 0`` with ``alpha * y <= x`` for all vectors (PSD operands).

    Equals the least eigenvalue of the whitened pencil on range(y) after the
    kernel coupling of x has been eliminated by a Schur complement.  For a
    rank-zero y the constraint is vacuous and the value is ``inf``.
    """
    x = as_operator(x)
    y = as_operator(y)
    if x.shape != y.shape or x.shape[0] != x.shape[1]:
        raise DimensionMismatch(f"pencil operands must be square and equal: {x.shape} vs {y.shape}")
    basis_r, vals_r, basis_k = _psd_split(y, tol)
    if basis_r.shape[1] == 0:
        return PencilBound(value=math.inf, degenerate=True)
    whitener = basis_r / np.sqrt(vals_r)
    core = hermitize(whitener.conj().T @ x @ whitener)
    kernel_lift = None
    if basis_k.shape[1] > 0:
        cross = whitener.conj().T @ x @ basis_k
        kernel_block = hermitize(basis_k.conj().T @ x @ basis_k)
        kernel_pinv = pinv(kernel_block, tol)
        core = hermitize(core - cross @ kernel_pinv @ cross.conj().T)
        kernel_lift = -basis_k @ kernel_pinv @ cross.conj().T
    cvals, cvecs = np.linalg.eigh(core)
    w = cvecs[:, 0]
    witness = whitener @ w
    if kernel_lift is not None:
        witness = witness + kernel_lift @ w
    return PencilBound(value=float(cvals[0]), witness=_normalize(witness))


# ---------------------------------------------------------------------------
# Hyponormality.


@dataclass(frozen=True)
class HyponormalityReport:
    """Self-commutator positivity verdicts.

    ``commutator_min_eig`` is the least eigenvalue of T*T - TT*;
    ``global_verdict`` compares it against the positivity floor scaled by
    max(1, ||T||^2).  When a test subspace is supplied, ``margin_verdict``
    reports positivity of the compressed commutator (and ``margin_min_eig``
    its least eigenvalue); both are None otherwise.
    """

    commutator_min_eig: float
    global_verdict: bool
    margin_verdict: bool | None
    margin_min_eig: float | None
    operator_norm: float


def _check_subspace(p: np.ndarray, n: int) -> np.ndarray:
    p = as_operator(p)
    if p.shape[0] != n:
        raise DimensionMismatch(f"subspace basis has {p.shape[0]} rows, operator has {n}")
    gram = p.conj().T @ p
    if op_norm(gram - np.eye(p.shape[1])) > 1e-10:
        raise ValueError("test subspace columns must be orthonormal")
    return p


def hyponormality(
    t, tol: Tolerance = DEFAULT_TOL, test_subspace=None
) -> HyponormalityReport:
    """Is ``||T* f|| <= ||T f||`` for all f (equivalently T*T - TT* >= 0)?

    On C^n the self-commutator has zero trace, so the global verdict can only
    pass for (numerically) normal operators; genuinely one-sided behavior is
    captured by compressing the commutator to a margin subspace.
    """
    t = as_operator(t)
    if t.shape[0] != t.shape[1]:
        raise NotSquare(f"hyponormality needs a square operator, got {t.shape}")
    commutator = hermitize(t.conj().T @ t - t @ t.conj().T)
    vals = np.linalg.eigvalsh(commutator)
    min_eig = float(vals[0]) if vals.size else 0.0
    norm = op_norm(t)
    floor = tol.psd_floor * max(1.0, norm**2)
    margin_verdict = None
    margin_min = None
    if test_subspace is not None:
        p = _check_subspace(test_subspace, t.shape[0])
        compressed = hermitize(p.conj().T @ commutator @ p)
        mvals = np.linalg.eigvalsh(compressed)
        margin_min = float(mvals[0]) if mvals.size else 0.0
        margin_verdict = margin_min >= -floor
    return HyponormalityReport(
        commutator_min_eig=min_eig,
        global_verdict=bool(min_eig >= -floor),
        margin_verdict=margin_verdict,
        margin_min_eig=margin_min,
        operator_norm=norm,
    )


@dataclass(frozen=True)
class RelativeHyponormalityReport:
    """Outcome of the paired inequality ``lam * T1*T1 >= T2 T2*``.

    ``lambda_opt`` is the least admissible constant (inf when none exists).
    ``degenerate`` marks the T2 = 0 case, where lambda = 0 already works and
    the strict-positivity reading of the definition is moot.
    """

    holds: bool
    lambda_opt: float
    degenerate: bool
    witness: np.ndarray | None
    obstruction: np.ndarray | None


def relative_hyponormality(
    t1, t2, tol: Tolerance = DEFAULT_TOL
) -> RelativeHyponormalityReport:
    """Least ``lam`` with ``lam * T1*T1 >= T2 T2*``, or inf if no constant works."""
    t1 = as_operator(t1)
    t2 = as_operator(t2)
    if t1.shape[1] != t2.shape[0]:
        raise DimensionMismatch(
            f"T1*T1 is {t1.shape[1]}x{t1.shape[1]} but T2 T2* is {t2.shape[0]}x{t2.shape[0]}"
        )
    x = hermitize(t2 @ t2.conj().T)
    y = hermitize(t1.conj().T @ t1)
    bound = pencil_sup(x, y, tol)
    holds = math.isfinite(bound.value)
    degenerate = holds and bound.value <= tol.psd_floor
    return RelativeHyponormalityReport(
        holds=holds,
        lambda_opt=bound.value,
        degenerate=degenerate,
        witness=bound.witness,
        obstruction=bound.obstruction,
    )


# ---------------------------------------------------------------------------
# Range factorization (majorization / inclusion / factor equivalence).


@dataclass(frozen=True)
class DouglasReport:
    """Three-way equivalence record for R(T1) vs R(T2).

    ``range_included``: rank test on [T2 | T1].
    ``lambda_min``: least lam with T1 T1* <= lam^2 T2 T2* (inf when blocked).
    ``factor``: S with T2 S = T1 when the residual test accepts it, else None.
    ``consistent``: all three verdicts agree.
    """

    range_included: bool
    lambda_min: float
    factor: np.ndarray | None
    factor_residual: float
    consistent: bool


def douglas_check(t1, t2, tol: Tolerance = DEFAULT_TOL) -> DouglasReport:
    """Test R(T1) subset R(T2) three equivalent ways and cross-check the verdicts."""
    t1 = as_operator(t1)
    t2 = as_operator(t2)
    if t1.shape[0] != t2.shape[0]:
        raise DimensionMismatch(
            f"operators must share a codomain: {t1.shape[0]} vs {t2.shape[0]} rows"
        )
    included = range_inclusion(t1, t2, tol)
    majorize = pencil_sup(hermitize(t1 @ t1.conj().T), hermitize(t2 @ t2.conj().T), tol)
    lambda_min = math.sqrt(majorize.value) if math.isfinite(majorize.value) else math.inf
    candidate = pinv(t2, tol) @ t1
    residual = op_norm(t2 @ candidate - t1)
    factor_ok = residual <= tol.verdict_rel * op_norm(t1)
    consistent = included == math.isfinite(lambda_min) == factor_ok
    return DouglasReport(
        range_included=bool(included),
        lambda_min=float(lambda_min),
        factor=candidate if factor_ok else None,
        factor_residual=float(residual),
        consistent=bool(consistent),
    )


def djordjevic_hyponormal(a, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Hyponormality via the pseudoinverse inequality.

    Tests positivity of ``AA* - 2 AA* (AA* + A*A)^+ AA*`` and returns the
    verdict with the least eigenvalue as witness.  Agrees with the
    self-commutator verdict of :func:`hyponormality`.
    """
    a = as_operator(a)
    if a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square operator, got {a.shape}")
    left = hermitize(a @ a.conj().T)
    total = hermitize(left + a.conj().T @ a)
    core = hermitize(left - 2.0 * left @ pinv(total, tol) @ left)
    return is_psd(core, tol)


__all__ = [
    "PencilBound",
    "pencil_sup",
    "pencil_inf",
    "HyponormalityReport",
    "hyponormality",
    "RelativeHyponormalityReport",
    "relative_hyponormality",
    "DouglasReport",
    "douglas_check",
    "djordjevic_hyponormal",
    "adjoint",
]
