"""Minimum-norm analysis and synthesis problems, and the projection series.

Coefficient vectors live in the m-dimensional complex coefficient space
(one slot per frame vector) and are plain 1-D arrays. Signals live in the
n-dimensional ambient space. Inner products are linear in the first
argument: <x, y> = sum_j x_j * conj(y_j).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpanError, NumericalError
from .frame_ops import FrameSequence, OperatorBundle, build_bundle
from .matrix_core import DEFAULT_TOLERANCE, Tolerance, adjoint, as_vector, max_abs

__all__ = [
    "MinNormSolution",
    "min_norm_coefficients",
    "min_norm_preimage",
    "project_signal",
    "project_coefficients",
]


@dataclass(frozen=True, eq=False)
class MinNormSolution:
    """Solution of a minimum-norm problem plus its orthogonal bookkeeping.

    solution       the minimizer (coefficient vector or signal)
    residual_norm  distance from the input to the subspace where the problem
                   is solvable exactly: |f - Pf| for signals, |c - Qc| for
                   coefficient input
    norm_split     squared norms of the input's component inside that
                   subspace and of the leftover; the two sum to the input's
                   squared norm
    """

    solution: np.ndarray
    residual_norm: float
    norm_split: tuple

    def __post_init__(self) -> None:
        a, b = self.norm_split
        if a < 0.0 or b < 0.0:
            raise ValueError("norm_split components must be nonnegative")


def _require(condition_dev: float, limit: float, what: str) -> None:
    if condition_dev > limit:
        raise NumericalError(
            f"reconstruction self-check '{what}' deviates by {condition_dev:.3e}, "
            f"beyond {limit:.3e}"
        )


def _input_scale(v: np.ndarray) -> float:
    return max(1.0, float(np.linalg.norm(v)))


def _nondegenerate_bundle(frame: FrameSequence, tol: Tolerance) -> OperatorBundle:
    bundle = build_bundle(frame, tol)
    if bundle.span_dim == 0:
        raise DegenerateSpanError(
            "all vectors are numerically zero; reconstruction against a degenerate "
            "sequence is undefined"
        )
    return bundle


def min_norm_coefficients(frame: FrameSequence, signal,
                          tol: Tolerance | None = None) -> MinNormSolution:
    """Smallest-norm coefficients reproducing the signal's component in the span.

    The solution c0 has entries <f, S+ f_k>; it satisfies T c0 = P f, lies in
    the range of the analysis operator (Q c0 = c0), and among all coefficient
    vectors with the same synthesis it has strictly minimal norm. For f in
    the span, T c0 = f exactly and the residual is zero.
    """
    tol = tol or DEFAULT_TOLERANCE
    bundle = _nondegenerate_bundle(frame, tol)
    f = as_vector(signal, frame.ambient_dim, name="signal")
    # column k of dual_cols is S+ f_k, the k-th canonical dual vector
    dual_cols = bundle.frame_operator_pinv @ bundle.synthesis
    c0 = adjoint(dual_cols) @ f
    projected = bundle.span_projector @ f
    limit = tol.identity_abs * _input_scale(f)
    _require(max_abs(bundle.synthesis @ c0 - projected), limit, "T c0 = P f")
    _require(max_abs(bundle.coefficient_projector @ c0 - c0), limit, "Q c0 = c0")
    residual = f - projected
    return MinNormSolution(
        solution=c0,
        residual_norm=float(np.linalg.norm(residual)),
        norm_split=(
            float(np.linalg.norm(projected) ** 2),
            float(np.linalg.norm(residual) ** 2),
        ),
    )


def min_norm_preimage(frame: FrameSequence, coefficients,
                      tol: Tolerance | None = None) -> MinNormSolution:
    """Smallest-norm signal whose analysis matches the coefficients' Q-part.

    The solution f0 = S+ T c analyzes to U f0 = Q c, and every signal f with
    U f = Q c splits as |f|^2 = |f0|^2 + |f - f0|^2, so f0 is the unique
    minimizer. The residual reports |c - Q c|, the part of the input no
    signal can reach.
    """
    tol = tol or DEFAULT_TOLERANCE
    bundle = _nondegenerate_bundle(frame, tol)
    c = as_vector(coefficients, frame.size, name="coefficients")
    f0 = bundle.frame_operator_pinv @ (bundle.synthesis @ c)
    q_part = bundle.coefficient_projector @ c
    limit = tol.identity_abs * _input_scale(c)
    _require(max_abs(bundle.analysis @ f0 - q_part), limit, "U f0 = Q c")
    leftover = c - q_part
    return MinNormSolution(
        solution=f0,
        residual_norm=float(np.linalg.norm(leftover)),
        norm_split=(
            float(np.linalg.norm(q_part) ** 2),
            float(np.linalg.norm(leftover) ** 2),
        ),
    )


def project_signal(frame: FrameSequence, signal,
                   tol: Tolerance | None = None) -> np.ndarray:
    """Project a signal onto the span via the dual-coefficient series.

    Evaluates sum_k <f, S+ f_k> f_k by direct summation in index order and
    checks the result against the projector matrix P applied to f; the two
    routes must agree within tol.identity_abs (scaled by the signal's norm).
    """
    tol = tol or DEFAULT_TOLERANCE
    bundle = _nondegenerate_bundle(frame, tol)
    f = as_vector(signal, frame.ambient_dim, name="signal")
    dual_cols = bundle.frame_operator_pinv @ bundle.synthesis
    series = np.zeros(frame.ambient_dim, dtype=np.complex128)
    for k in range(frame.size):
        # <f, S+ f_k>: vdot conjugates its first argument
        series = series + np.vdot(dual_cols[:, k], f) * bundle.synthesis[:, k]
    direct = bundle.span_projector @ f
    _require(max_abs(series - direct),
             tol.identity_abs * _input_scale(f),
             "series equals P f")
    return series


def project_coefficients(frame: FrameSequence, coefficients,
                         tol: Tolerance | None = None) -> np.ndarray:
    """Project coefficients onto the analysis range via the gram series.

    Evaluates sum_k <c, G+ U f_k> e_k (e_k the k-th standard basis vector of
    the coefficient space) in index order and checks it against Q applied
    to c.
    """
    tol = tol or DEFAULT_TOLERANCE
    bundle = _nondegenerate_bundle(frame, tol)
    c = as_vector(coefficients, frame.size, name="coefficients")
    weights = bundle.gram_pinv @ bundle.gram  # column k is G+ U f_k
    series = np.zeros(frame.size, dtype=np.complex128)
    for k in range(frame.size):
        series[k] = np.vdot(weights[:, k], c)
    direct = bundle.coefficient_projector @ c
    _require(max_abs(series - direct),
             tol.identity_abs * _input_scale(c),
             "series equals Q c")
    return series
