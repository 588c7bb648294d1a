"""Embeddings of catalog models by global sections, and distances between rays."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from .models import Disc, Grassmann, Model, ProjSpace, UnsupportedModelError, overlap, potential
from .numerics import (
    Signature,
    as_complex_vector,
    hermitian_inner,
    numerical_rank,
)

FD_STEP = 1e-6
JACOBIAN_RANK_EPS = 1e-7
ORTHOGONAL_TOL = 1e-12


class PolarPairError(ValueError):
    """The pair lies on the polar divisor, where the diastasis diverges."""


@dataclass(frozen=True, eq=False)
class EmbeddedVector:
    vec: np.ndarray
    sig: Signature = Signature.DEFINITE

    def __post_init__(self):
        v = as_complex_vector(self.vec)
        object.__setattr__(self, "vec", v)
        if not np.any(v):
            raise ValueError("embedded vector vanishes (base point)")
        if self.sig is Signature.LORENTZ and hermitian_inner(v, v, self.sig).real <= 0:
            raise ValueError("Lorentz embedded vector must be timelike")

    def __len__(self):
        return self.vec.size


def _vec(w) -> np.ndarray:
    if isinstance(w, EmbeddedVector):
        if w.sig is not Signature.DEFINITE:
            raise ValueError("ray distances need the definite signature")
        return w.vec
    v = as_complex_vector(w)
    if not np.any(v):
        raise ValueError("zero vector has no ray")
    return v


@lru_cache(maxsize=None)
def _monomials(n: int, m: int) -> Tuple[Tuple[int, ...], ...]:
    """Exponents of Z-monomials of degree <= m, graded then lexicographic (z1 first)."""
    out = []
    for deg in range(m + 1):
        block = [a for a in itertools.product(range(deg + 1), repeat=n) if sum(a) == deg]
        out.extend(sorted(block, reverse=True))
    return tuple(out)


def section_labels(model: Model) -> List[tuple]:
    """Index set of the section basis: monomial exponents or Pluecker row subsets."""
    if isinstance(model, ProjSpace):
        return list(_monomials(model.n, model.m))
    if isinstance(model, Grassmann):
        return list(itertools.combinations(range(model.n), model.k))
    raise UnsupportedModelError("the disc has no finite section basis")


def section_count(model: Model) -> int:
    return len(section_labels(model))


@lru_cache(maxsize=None)
def _multinomial_weights(n: int, m: int) -> np.ndarray:
    w = []
    for a in _monomials(n, m):
        full = (m - sum(a),) + a
        c = math.factorial(m)
        for e in full:
            c //= math.factorial(e)
        w.append(math.sqrt(c))
    return np.array(w)


def iota_homogeneous(model: Model, X) -> np.ndarray:
    """Section values at a point given in homogeneous form.

    ``ProjSpace``: ``X`` is a vector in C^(n+1) (``X[0]`` pairs with the
    constant monomial). ``Grassmann``: ``X`` is an ``n x k`` frame. Points at
    chart infinity are allowed here.
    """
    X = np.asarray(X, dtype=complex)
    if isinstance(model, ProjSpace):
        X = X.reshape(-1)
        if X.size != model.n + 1:
            raise ValueError(f"expected {model.n + 1} homogeneous coordinates")
        expo = np.array(_monomials(model.n, model.m))
        full = np.column_stack([model.m - expo.sum(axis=1), expo])
        vals = np.prod(X[None, :] ** full, axis=1)
        return _multinomial_weights(model.n, model.m) * vals
    if isinstance(model, Grassmann):
        if X.shape != (model.n, model.k):
            raise ValueError(f"expected an {model.n} x {model.k} frame")
        rows = np.array(section_labels(model))
        return np.linalg.det(X[rows])
    raise UnsupportedModelError("use iota_lorentz for the disc")


def iota(model: Model, Z) -> EmbeddedVector:
    """Embedding of a chart point by the section basis; ``<iota Z1, iota Z2> = K(Z1, Z2)``."""
    if isinstance(model, ProjSpace):
        X = np.concatenate([[1.0 + 0j], model.point(Z)])
    elif isinstance(model, Grassmann):
        X = model.frame(Z)
    else:
        raise UnsupportedModelError("use iota_lorentz for the disc")
    return EmbeddedVector(iota_homogeneous(model, X), Signature.DEFINITE)


def iota_lorentz(model: Disc, z) -> EmbeddedVector:
    if not isinstance(model, Disc):
        raise UnsupportedModelError("Lorentz embedding is defined for the disc")
    if model.twok != 1:
        raise UnsupportedModelError("explicit Lorentz embedding only for twok = 1")
    z = model.point(z)
    return EmbeddedVector(np.array([1.0, z], dtype=complex), Signature.LORENTZ)


def lorentz_ratio(w1: EmbeddedVector, w2: EmbeddedVector) -> float:
    """``|<w1,w2>| / sqrt(<w1,w1><w2,w2>)`` in the Lorentz form (>= 1 for timelike pairs)."""
    s = Signature.LORENTZ
    num = abs(hermitian_inner(w1.vec, w2.vec, s))
    return num / math.sqrt(hermitian_inner(w1.vec, w1.vec, s).real * hermitian_inner(w2.vec, w2.vec, s).real)


def ray_cosine(w1, w2) -> float:
    u, v = _vec(w1), _vec(w2)
    return abs(np.vdot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))


def cayley_distance(w1, w2) -> float:
    """``arccos`` of the normalized overlap modulus, evaluated as ``atan2(sin, cos)``.

    The sine comes from the component of ``w2`` orthogonal to ``w1``, which
    keeps coincident and nearby rays accurate where ``arccos`` loses half the digits.
    """
    u, v = _vec(w1), _vec(w2)
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    c = np.vdot(u, v)
    return math.atan2(float(np.linalg.norm(v - c * u)), abs(c))


def study_distance(w1, w2) -> float:
    return 2.0 * cayley_distance(w1, w2)


wick_distance = study_distance


def bargmann_distance(w1, w2) -> float:
    # 2 sin(d/2) == sqrt(2 (1 - cos d)) without cancellation at small d
    return 2.0 * math.sin(0.5 * cayley_distance(w1, w2))


def diastasis(model: Model, Z1, Z2) -> float:
    """Calabi diastasis from the potential: ``log K11 + log K22 - 2 log |K12|``."""
    k12 = abs(model.kernel(Z1, Z2))
    if k12 == 0.0:
        raise PolarPairError("kernel vanishes: pair on the polar divisor")
    return potential(model, Z1) + potential(model, Z2) - 2.0 * math.log(k12)


def pseudo_distance(model: Disc, z1, z2) -> float:
    if not isinstance(model, Disc):
        raise UnsupportedModelError("pseudo-hyperbolic distance is for the disc")
    ov = abs(overlap(model, z1, z2))
    return math.acosh(max(1.0, 1.0 / ov))


def jacobian(model: Model, Z, step: float = FD_STEP) -> np.ndarray:
    """Complex Jacobian of ``iota`` at ``Z`` by central differences; one column per coordinate."""
    Z = np.asarray(model.point(Z), dtype=complex)
    flat = Z.reshape(-1)
    cols = []
    for j in range(flat.size):
        e = np.zeros_like(flat)
        e[j] = step
        plus = iota(model, (flat + e).reshape(Z.shape)).vec
        minus = iota(model, (flat - e).reshape(Z.shape)).vec
        cols.append((plus - minus) / (2 * step))
    return np.column_stack(cols)


def differential_rank(model: Model, Z) -> int:
    if not model.compact:
        raise UnsupportedModelError("differential rank is checked on compact models")
    J = jacobian(model, Z)
    return numerical_rank(list(J.T), eps=JACOBIAN_RANK_EPS)


def ray_geodesic_point(w1, w2, t: float) -> EmbeddedVector:
    """Point at fraction ``t`` of the Fubini-Study geodesic from ray ``w1`` to ray ``w2``."""
    u = _vec(w1) / np.linalg.norm(_vec(w1))
    v = _vec(w2) / np.linalg.norm(_vec(w2))
    c = np.vdot(u, v)
    if abs(c) <= ORTHOGONAL_TOL:
        raise ValueError("orthogonal rays: the connecting geodesic is not unique")
    v = v * (np.conj(c) / abs(c))
    theta = cayley_distance(u, v)
    if theta == 0.0:
        return EmbeddedVector(u)
    g = (math.sin((1.0 - t) * theta) * u + math.sin(t * theta) * v) / math.sin(theta)
    return EmbeddedVector(g / np.linalg.norm(g))
