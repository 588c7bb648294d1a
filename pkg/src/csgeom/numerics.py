"""Small dense complex linear algebra shared by the analytic modules."""

from __future__ import annotations

import enum
from typing import Iterable, Sequence

import numpy as np

ARCCOS_SLACK = 1e-12
RANK_EPS = 1e-8
ORTHONORMAL_TOL = 1e-10


class Signature(enum.Enum):
    DEFINITE = "definite"
    LORENTZ = "lorentz"


def as_complex_vector(u) -> np.ndarray:
    v = np.asarray(u, dtype=complex).reshape(-1)
    if v.size == 0:
        raise ValueError("vector must have dimension >= 1")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def hermitian_inner(u, v, sig: Signature = Signature.DEFINITE) -> complex:
    """Hermitian form, conjugate-linear in the first slot.

    The Lorentz form has signature (1, N-1): ``conj(u0) v0 - sum conj(ui) vi``.
    """
    u = as_complex_vector(u)
    v = as_complex_vector(v)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.size} vs {v.size}")
    if sig is Signature.DEFINITE:
        return complex(np.vdot(u, v))
    if u.size < 2:
        raise ValueError("Lorentz signature needs dimension >= 2")
    return complex(np.conj(u[0]) * v[0] - np.vdot(u[1:], v[1:]))


def numerical_rank(vs: Sequence, eps: float = RANK_EPS) -> int:
    """Number of singular values above ``eps * sigma_max`` of the stacked vectors."""
    if len(vs) == 0:
        raise ValueError("need at least one vector")
    if eps <= 0:
        raise ValueError("eps must be positive")
    mat = np.vstack([as_complex_vector(v) for v in vs])
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.count_nonzero(sv > eps * sv[0]))


def clamped_arccos(x: float) -> float:
    x = float(x)
    if abs(x) > 1.0 + ARCCOS_SLACK:
        raise ValueError(f"arccos argument {x!r} outside [-1, 1]; inputs not normalized")
    return float(np.arccos(min(1.0, max(-1.0, x))))


def check_orthonormal(frame: np.ndarray, tol: float = ORTHONORMAL_TOL) -> None:
    gram = frame.conj().T @ frame
    err = np.max(np.abs(gram - np.eye(gram.shape[0]))) if gram.size else 0.0
    if err > tol:
        raise ValueError(f"frame columns not orthonormal (deviation {err:.3g})")


def principal_angles(A, B) -> np.ndarray:
    """Principal angles between the column spans of two orthonormal frames.

    Returned in nondecreasing order (cosines nonincreasing). Cosines come from
    the singular values of ``A^H B`` and sines from the residual ``B - A A^H B``;
    pairing them through ``arctan2`` keeps small angles accurate.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.ndim != 2 or A.shape != B.shape:
        raise ValueError("frames must be n x k matrices of equal shape")
    check_orthonormal(A)
    check_orthonormal(B)
    M = A.conj().T @ B
    cos = np.linalg.svd(M, compute_uv=False)
    sin = np.linalg.svd(B - A @ M, compute_uv=False)
    k = A.shape[1]
    cos = np.sort(cos)[::-1][:k]
    # residual has at most k nonzero singular values; smallest sines go with largest cosines
    sin = np.sort(np.concatenate([sin, np.zeros(max(0, k - sin.size))]))[:k]
    return np.arctan2(sin, np.clip(cos, 0.0, None))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def complex_gaussian(shape, rng: np.random.Generator) -> np.ndarray:
    """Standard complex Gaussian entries, E|z|^2 = 1."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial of a seeded campaign."""
    return np.random.default_rng([int(seed), int(trial)])


def unit(v: Iterable) -> np.ndarray:
    v = as_complex_vector(v)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise ValueError("zero vector has no ray")
    return v / norm
