"""Operators attached to a finite frame sequence and their derived objects.

A sequence of m vectors in an n-dimensional complex space induces

    synthesis  T : coefficient space -> signal space, column k holds vector k
    analysis   U = T*                (inner products against the vectors)
    frame op   S = T U               (n x n, Hermitian positive semidefinite)
    gram       G = U T               (m x m)

together with the orthogonal projectors P onto the span of the vectors
(range of T) and Q onto the range of U (orthogonal complement of ker T).
The pseudoinverses of T, S and G tie these together; the bundle constructor
verifies the resulting identities on independent computation routes and
refuses to hand back an incoherent set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpanError, NumericalError
from .matrix_core import (
    DEFAULT_TOLERANCE,
    SvdFactors,
    Tolerance,
    adjoint,
    as_vector,
    max_abs,
    pinv,
    pinv_from_factors,
    svd,
)

__all__ = [
    "FrameSequence",
    "OperatorBundle",
    "FrameBounds",
    "FrameClassification",
    "RestrictedOperators",
    "build_bundle",
    "frame_bounds",
    "classify",
    "canonical_dual",
    "restricted",
    "pseudo_frame_operator",
    "pseudo_gram",
    "scaled_deviation",
]


@dataclass(frozen=True, eq=False)
class FrameSequence:
    """A finite sequence of vectors in an n-dimensional complex space.

    The sequence may be linearly dependent, contain repeats, or even consist
    of zero vectors (a degenerate sequence with span dimension 0). It must
    contain at least one vector, and every vector must have exactly
    ambient_dim finite entries.
    """

    ambient_dim: int
    vectors: tuple

    def __post_init__(self) -> None:
        if isinstance(self.ambient_dim, bool) or not isinstance(self.ambient_dim, int):
            raise ValueError("ambient_dim must be an integer")
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be at least 1")
        if len(self.vectors) < 1:
            raise ValueError("a frame sequence needs at least one vector")
        converted = tuple(
            as_vector(v, self.ambient_dim, name=f"vector {k}")
            for k, v in enumerate(self.vectors)
        )
        object.__setattr__(self, "vectors", converted)

    @property
    def size(self) -> int:
        """Number of vectors m."""
        return len(self.vectors)

    def synthesis_matrix(self) -> np.ndarray:
        """Fresh (ambient_dim, m) matrix whose k-th column is vector k."""
        return np.stack(self.vectors, axis=1)

    @classmethod
    def from_vectors(cls, vectors, ambient_dim: int | None = None) -> "FrameSequence":
        vectors = tuple(vectors)
        if not vectors:
            raise ValueError("a frame sequence needs at least one vector")
        if ambient_dim is None:
            first = np.atleast_1d(np.asarray(vectors[0]))
            ambient_dim = int(first.shape[0])
        return cls(ambient_dim=ambient_dim, vectors=vectors)

    @classmethod
    def truncated(cls, vectors, ambient_dim: int | None = None,
                  tail_energy: float = 0.0) -> tuple["FrameSequence", float]:
        """Finite prefix of a longer family, plus the caller-supplied tail energy.

        The library only models finite sequences. Callers holding an infinite
        family truncate it themselves and may pass the discarded energy
        sum(|f_k|^2) over the dropped tail here; it is validated and echoed
        for reporting. No convergence claims are made on the caller's behalf.
        """
        if not (isinstance(tail_energy, (int, float)) and math.isfinite(tail_energy)):
            raise ValueError("tail_energy must be a finite number")
        if tail_energy < 0.0:
            raise ValueError("tail_energy cannot be negative")
        return cls.from_vectors(vectors, ambient_dim), float(tail_energy)


@dataclass(frozen=True, eq=False)
class OperatorBundle:
    """All operators induced by one frame sequence, mutually consistent.

    synthesis            T, (n, m)
    analysis             U = T*, (m, n)
    frame_operator       S = T U, (n, n)
    gram                 G = U T, (m, m)
    span_projector       P, orthogonal projector onto range(T)
    coefficient_projector Q, orthogonal projector onto range(U)
    synthesis_pinv       T+, (m, n)
    frame_operator_pinv  S+, (n, n)
    gram_pinv            G+, (m, m)
    span_dim             numerical rank r of T
    tol                  thresholds the bundle was built and verified under
    """

    synthesis: np.ndarray
    analysis: np.ndarray
    frame_operator: np.ndarray
    gram: np.ndarray
    span_projector: np.ndarray
    coefficient_projector: np.ndarray
    synthesis_pinv: np.ndarray
    frame_operator_pinv: np.ndarray
    gram_pinv: np.ndarray
    span_dim: int
    tol: Tolerance

    @property
    def ambient_dim(self) -> int:
        return self.synthesis.shape[0]

    @property
    def size(self) -> int:
        return self.synthesis.shape[1]


@dataclass(frozen=True)
class FrameBounds:
    """Optimal (largest lower, smallest upper) bounds on the sequence's span.

    lower = smallest kept squared singular value of T = 1 / |T+|^2
    upper = largest squared singular value of T = |T|^2
    """

    lower: float
    upper: float
    tight: bool
    parseval: bool

    def __post_init__(self) -> None:
        if not 0.0 < self.lower <= self.upper:
            raise ValueError("bounds must satisfy 0 < lower <= upper")


@dataclass(frozen=True)
class FrameClassification:
    """Structured verdict on one sequence.

    is_frame_for_space  spans the whole ambient space (rank of T equals n)
    is_riesz_basis      linearly independent (rank of T equals m, Q = I)
    is_tight            both optimal bounds agree within tightness_rel
    is_parseval         tight with common bound 1
    span_dim            numerical rank r of T
    redundancy          m / r, or inf when the sequence is degenerate
    """

    is_frame_for_space: bool
    is_riesz_basis: bool
    is_tight: bool
    is_parseval: bool
    span_dim: int
    redundancy: float

    @property
    def is_degenerate(self) -> bool:
        return self.span_dim == 0


@dataclass(frozen=True, eq=False)
class RestrictedOperators:
    """The same operators viewed on the span V of the sequence.

    basis                W, (n, r), orthonormal columns spanning V
    synthesis_res        W* T, (r, m)
    analysis_res         adjoint of synthesis_res, (m, r)
    frame_operator_res   W* S W, (r, r), Hermitian positive definite
    frame_operator_res_inv  its inverse; on V the frame operator is invertible
    """

    basis: np.ndarray
    synthesis_res: np.ndarray
    analysis_res: np.ndarray
    frame_operator_res: np.ndarray
    frame_operator_res_inv: np.ndarray


def scaled_deviation(lhs, rhs, factors=()) -> float:
    """Max-abs residual of an identity, normalized by the factor norms.

    A floating-point product carries absolute error on the order of
    eps * prod(|factor|), so the residual is divided by max(1, that product)
    to stay comparable with identity_abs across well and badly scaled inputs.
    """
    scale = 1.0
    for f in factors:
        scale *= float(np.linalg.norm(f))
    return max_abs(np.asarray(lhs) - np.asarray(rhs)) / max(1.0, scale)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _hermitize(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2.0


def build_bundle(frame: FrameSequence, tol: Tolerance | None = None) -> OperatorBundle:
    """Construct every induced operator and verify their mutual consistency.

    The pseudoinverses of S and G are computed from their own factorizations,
    independently of T's, and the projectors come from T's and U's singular
    vectors. Rank decisions that disagree between these routes, or identity
    residuals above tol.identity_abs, raise NumericalError: such a bundle
    would silently violate the relations everything downstream relies on.
    A rank-threshold disagreement usually means the sequence is conditioned
    beyond what rank_rel resolves; tighten rank_rel to keep the routes aligned.
    """
    tol = tol or DEFAULT_TOLERANCE
    t = frame.synthesis_matrix()
    u = adjoint(t)
    s = t @ u
    g = u @ t

    f_t = svd(t, tol)
    f_u = svd(u, tol)
    f_s = svd(s, tol)
    f_g = svd(g, tol)

    p = _hermitize(f_t.left_vectors @ f_t.left_vectors.conj().T)
    q = _hermitize(f_u.left_vectors @ f_u.left_vectors.conj().T)
    t_pinv = pinv_from_factors(f_t)
    s_pinv = pinv_from_factors(f_s)
    g_pinv = pinv_from_factors(f_g)

    ranks = {
        "synthesis": f_t.rank,
        "analysis": f_u.rank,
        "frame operator": f_s.rank,
        "gram": f_g.rank,
    }
    if len(set(ranks.values())) != 1:
        detail = ", ".join(f"{name} rank {r}" for name, r in ranks.items())
        raise NumericalError(
            "rank thresholds disagree between operator routes "
            f"({detail}); tighten rank_rel for sequences conditioned this badly"
        )

    checks = (
        ("S S+ = P", scaled_deviation(s @ s_pinv, p, (s, s_pinv))),
        ("S+ S = P", scaled_deviation(s_pinv @ s, p, (s_pinv, s))),
        ("G G+ = Q", scaled_deviation(g @ g_pinv, q, (g, g_pinv))),
        ("G+ G = Q", scaled_deviation(g_pinv @ g, q, (g_pinv, g))),
        ("T+ = T* S+", scaled_deviation(t_pinv, u @ s_pinv, (u, s_pinv))),
        ("P T = T", scaled_deviation(p @ t, t, (p, t))),
    )
    for name, dev in checks:
        if dev > tol.identity_abs:
            raise NumericalError(
                f"operator bundle failed self-check '{name}': "
                f"deviation {dev:.3e} exceeds {tol.identity_abs:.3e}"
            )

    return OperatorBundle(
        synthesis=_frozen(t),
        analysis=_frozen(u),
        frame_operator=_frozen(s),
        gram=_frozen(g),
        span_projector=_frozen(p),
        coefficient_projector=_frozen(q),
        synthesis_pinv=_frozen(t_pinv),
        frame_operator_pinv=_frozen(s_pinv),
        gram_pinv=_frozen(g_pinv),
        span_dim=f_t.rank,
        tol=tol,
    )


def _bounds_from_factors(f_t: SvdFactors, tol: Tolerance) -> FrameBounds:
    upper = float(f_t.singular_values[0] ** 2)
    lower = float(f_t.singular_values[f_t.rank - 1] ** 2)
    tight = upper / lower - 1.0 <= tol.tightness_rel
    parseval = tight and abs(lower - 1.0) <= tol.tightness_rel
    return FrameBounds(lower=lower, upper=upper, tight=tight, parseval=parseval)


def frame_bounds(frame: FrameSequence, tol: Tolerance | None = None) -> FrameBounds:
    """Optimal bounds A = 1/|T+|^2 and B = |T|^2 on the sequence's span.

    Every f in the span satisfies A |f|^2 <= sum |<f, f_k>|^2 <= B |f|^2,
    and no wider A or narrower B does. Raises DegenerateSpanError when the
    span is the zero subspace (no bounds exist).
    """
    tol = tol or DEFAULT_TOLERANCE
    f_t = svd(frame.synthesis_matrix(), tol)
    if f_t.rank == 0:
        raise DegenerateSpanError("all vectors are numerically zero; bounds are undefined")
    return _bounds_from_factors(f_t, tol)


def classify(frame: FrameSequence, tol: Tolerance | None = None) -> FrameClassification:
    """Classify the sequence; degenerate input is reported via flags, not errors."""
    tol = tol or DEFAULT_TOLERANCE
    f_t = svd(frame.synthesis_matrix(), tol)
    r = f_t.rank
    m = frame.size
    n = frame.ambient_dim
    if r > 0:
        bounds = _bounds_from_factors(f_t, tol)
        tight, parseval = bounds.tight, bounds.parseval
        redundancy = m / r
    else:
        tight = parseval = False
        redundancy = math.inf
    return FrameClassification(
        is_frame_for_space=(r == n),
        is_riesz_basis=(r == m),
        is_tight=tight,
        is_parseval=parseval,
        span_dim=r,
        redundancy=float(redundancy),
    )


def canonical_dual(frame: FrameSequence, tol: Tolerance | None = None) -> FrameSequence:
    """Canonical dual sequence: vector k maps to S+ applied to vector k.

    The dual spans the same subspace, its optimal bounds are the reciprocals
    (1/upper, 1/lower) of the original's, and its own canonical dual is the
    original sequence again.
    """
    tol = tol or DEFAULT_TOLERANCE
    t = frame.synthesis_matrix()
    f_t = svd(t, tol)
    if f_t.rank == 0:
        raise DegenerateSpanError("a degenerate sequence has no canonical dual")
    s = t @ adjoint(t)
    f_s = svd(s, tol)
    if f_s.rank != f_t.rank:
        raise NumericalError(
            f"rank thresholds disagree (synthesis rank {f_t.rank}, frame operator "
            f"rank {f_s.rank}); tighten rank_rel for sequences conditioned this badly"
        )
    s_pinv = pinv_from_factors(f_s)
    dual_matrix = s_pinv @ t
    return FrameSequence(
        ambient_dim=frame.ambient_dim,
        vectors=tuple(dual_matrix[:, k] for k in range(frame.size)),
    )


def restricted(frame: FrameSequence, tol: Tolerance | None = None) -> RestrictedOperators:
    """View the operators on the span V, where the frame operator is invertible.

    W's columns are the kept left singular vectors of T, an orthonormal basis
    of V. The restricted frame operator W* S W is Hermitian positive definite
    with condition number upper/lower; its inverse realizes S's inversion on V.
    """
    tol = tol or DEFAULT_TOLERANCE
    t = frame.synthesis_matrix()
    f_t = svd(t, tol)
    if f_t.rank == 0:
        raise DegenerateSpanError("a degenerate sequence has no restriction to its span")
    w = f_t.left_vectors
    t_res = w.conj().T @ t
    u_res = adjoint(t_res)
    s_res = _hermitize(t_res @ u_res)
    try:
        s_res_inv = np.linalg.inv(s_res)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"restricted frame operator is numerically singular: {exc}") from exc
    return RestrictedOperators(
        basis=_frozen(w.copy()),
        synthesis_res=_frozen(t_res),
        analysis_res=_frozen(u_res),
        frame_operator_res=_frozen(s_res),
        frame_operator_res_inv=_frozen(s_res_inv),
    )


def pseudo_frame_operator(frame: FrameSequence, tol: Tolerance | None = None) -> np.ndarray:
    """Pseudoinverse of the frame operator, with a fast path for tight frames.

    For a tight sequence with common bound A the pseudoinverse is P / A, a
    rescaled projector; otherwise it is computed from S's own factorization.
    Both routes agree within tol.identity_abs on tight input. A degenerate
    sequence yields the zero matrix (the pseudoinverse of the zero operator).
    """
    tol = tol or DEFAULT_TOLERANCE
    t = frame.synthesis_matrix()
    f_t = svd(t, tol)
    if f_t.rank > 0 and _bounds_from_factors(f_t, tol).tight:
        a = float(f_t.singular_values[f_t.rank - 1] ** 2)
        p = _hermitize(f_t.left_vectors @ f_t.left_vectors.conj().T)
        return p / a
    return pinv(t @ adjoint(t), tol)


def pseudo_gram(frame: FrameSequence, tol: Tolerance | None = None) -> np.ndarray:
    """Pseudoinverse of the gram matrix, with the same tight fast path.

    Tight sequences give Q / A; everything else goes through G's own
    factorization. A degenerate sequence yields the zero matrix.
    """
    tol = tol or DEFAULT_TOLERANCE
    t = frame.synthesis_matrix()
    f_t = svd(t, tol)
    if f_t.rank > 0 and _bounds_from_factors(f_t, tol).tight:
        a = float(f_t.singular_values[f_t.rank - 1] ** 2)
        q = _hermitize(f_t.right_vectors @ f_t.right_vectors.conj().T)
        return q / a
    return pinv(adjoint(t) @ t, tol)
