"""Catalog of coherent-state manifolds with closed-form reproducing kernels.

Chart points are plain numpy values:

* ``ProjSpace(n, m)``: complex vector of length ``n``;
* ``Grassmann(k, n)``: complex ``(n-k, k)`` matrix, the subspace spanned by
  the columns of ``[I_k; Z]``;
* ``Disc(twok)``: complex scalar with ``|z| < 1``.

Kernels are unnormalized, ``K(Z1, Z2) = <Z1|Z2>``, antilinear in ``Z1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from .numerics import clamped_arccos, complex_gaussian, principal_angles

DISC_MAX_RADIUS = 0.95


class UnsupportedModelError(ValueError):
    """Operation is not defined for this catalog model."""


@dataclass(frozen=True)
class ProjSpace:
    """Complex projective space CP^n with the level-``m`` hyperplane bundle."""

    n: int
    m: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("ProjSpace needs n >= 1")
        if self.m < 1:
            raise ValueError("ProjSpace needs level m >= 1")

    compact = True

    @property
    def chart_dim(self) -> int:
        return self.n

    @property
    def spec(self) -> str:
        return f"cp:n={self.n},m={self.m}"

    def point(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex).reshape(-1)
        if z.shape != (self.n,):
            raise ValueError(f"expected {self.n} chart coordinates, got {z.size}")
        if not np.all(np.isfinite(z)):
            raise ValueError("chart point has non-finite entries")
        return z

    def kernel(self, z1, z2) -> complex:
        z1, z2 = self.point(z1), self.point(z2)
        return complex((1.0 + np.vdot(z1, z2)) ** self.m)

    def intrinsic_distance(self, z1, z2) -> float:
        z1, z2 = self.point(z1), self.point(z2)
        ratio = abs(1.0 + np.vdot(z1, z2)) / math.sqrt(
            (1.0 + np.vdot(z1, z1).real) * (1.0 + np.vdot(z2, z2).real)
        )
        return math.sqrt(self.m) * clamped_arccos(ratio)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return complex_gaussian(self.n, rng)


@dataclass(frozen=True)
class Grassmann:
    """Grassmannian of ``k``-planes in C^n with its Pluecker line bundle."""

    k: int
    n: int

    def __post_init__(self):
        if not 0 < self.k < self.n:
            raise ValueError(f"Grassmann needs 0 < k < n, got k={self.k}, n={self.n}")

    compact = True
    m = 1

    @property
    def chart_dim(self) -> int:
        return self.k * (self.n - self.k)

    @property
    def spec(self) -> str:
        return f"gr:k={self.k},n={self.n}"

    def point(self, Z) -> np.ndarray:
        Z = np.asarray(Z, dtype=complex)
        shape = (self.n - self.k, self.k)
        if Z.ndim < 2 and Z.size == shape[0] * shape[1]:
            Z = Z.reshape(shape)
        if Z.shape != shape:
            raise ValueError(f"expected chart matrix of shape {shape}, got {Z.shape}")
        if not np.all(np.isfinite(Z)):
            raise ValueError("chart point has non-finite entries")
        return Z

    def frame(self, Z) -> np.ndarray:
        """The ``n x k`` matrix ``[I_k; Z]`` whose columns span the point."""
        return np.vstack([np.eye(self.k, dtype=complex), self.point(Z)])

    def kernel(self, Z1, Z2) -> complex:
        Z1, Z2 = self.point(Z1), self.point(Z2)
        return complex(np.linalg.det(np.eye(self.k) + Z1.conj().T @ Z2))

    def intrinsic_distance(self, Z1, Z2) -> float:
        A, _ = np.linalg.qr(self.frame(Z1))
        B, _ = np.linalg.qr(self.frame(Z2))
        return float(np.sqrt(np.sum(principal_angles(A, B) ** 2)))

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        return complex_gaussian((self.n - self.k, self.k), rng)


@dataclass(frozen=True)
class Disc:
    """Unit disc with the weight ``twok/2`` discrete-series kernel."""

    twok: int

    def __post_init__(self):
        if self.twok < 1:
            raise ValueError("Disc needs twok >= 1")

    compact = False
    chart_dim = 1

    @property
    def spec(self) -> str:
        return f"disc:twok={self.twok}"

    def point(self, z) -> complex:
        z = complex(np.asarray(z, dtype=complex).reshape(-1)[0]) if np.ndim(z) else complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError("chart point has non-finite entries")
        if abs(z) >= 1.0:
            raise ValueError(f"disc point {z} not inside the unit disc")
        return z

    def kernel(self, z1, z2) -> complex:
        z1, z2 = self.point(z1), self.point(z2)
        base = 1.0 - z1.conjugate() * z2
        assert base != 0, "1 - conj(z1) z2 vanished inside the disc"
        return base ** (-self.twok)

    def intrinsic_distance(self, z1, z2) -> float:
        # hyperbolic distance scaled so it agrees with the overlap angle to first order
        z1, z2 = self.point(z1), self.point(z2)
        arg = 1.0 + 2.0 * abs(z1 - z2) ** 2 / ((1.0 - abs(z1) ** 2) * (1.0 - abs(z2) ** 2))
        return math.sqrt(self.twok) * 0.5 * math.acosh(arg)

    def sample(self, rng: np.random.Generator) -> complex:
        phase = rng.uniform(0.0, 2.0 * math.pi)
        radius = rng.uniform(0.0, DISC_MAX_RADIUS)
        return complex(radius * np.exp(1j * phase))


Model = Union[ProjSpace, Grassmann, Disc]


def kernel(model: Model, z1, z2) -> complex:
    return model.kernel(z1, z2)


def overlap(model: Model, z1, z2) -> complex:
    """Normalized coherent-state overlap ``<Z1|Z2>``."""
    k11 = model.kernel(z1, z1).real
    k22 = model.kernel(z2, z2).real
    return model.kernel(z1, z2) / math.sqrt(k11 * k22)


def potential(model: Model, z) -> float:
    """Kaehler potential ``log K(Z, Z)``."""
    return math.log(model.kernel(z, z).real)


def is_polar(model: Model, z1, z2, tol: float = 1e-12) -> bool:
    if not model.compact:
        raise UnsupportedModelError("the disc kernel never vanishes; no polar divisor")
    k12 = abs(model.kernel(z1, z2))
    return k12 <= tol * math.sqrt(model.kernel(z1, z1).real * model.kernel(z2, z2).real)


def intrinsic_distance(model: Model, z1, z2) -> float:
    return model.intrinsic_distance(z1, z2)


def sample_point(model: Model, rng: np.random.Generator):
    return model.sample(rng)


def construct_subspace_pair(model: Grassmann, angles) -> Tuple[np.ndarray, np.ndarray]:
    """Two chart points of ``model`` with prescribed principal angles.

    The first point is the origin; the second carries ``tan(angle)`` on the
    diagonal of its chart matrix.
    """
    if not isinstance(model, Grassmann):
        raise UnsupportedModelError("subspace pairs are built on Grassmann models")
    angles = [float(a) for a in angles]
    if len(angles) != model.k:
        raise ValueError(f"need {model.k} angles, got {len(angles)}")
    if model.n - model.k < model.k:
        raise ValueError("construction needs n - k >= k")
    if any(not 0.0 <= a < math.pi / 2 for a in angles):
        raise ValueError("angles must lie in [0, pi/2); pi/2 leaves the chart")
    Z1 = np.zeros((model.n - model.k, model.k), dtype=complex)
    Z2 = Z1.copy()
    for i, a in enumerate(angles):
        Z2[i, i] = math.tan(a)
    return Z1, Z2


def fixed_points(model: Model) -> List:
    """Torus-fixed points as unit vectors in the embedding space."""
    from .embed import EmbeddedVector, section_labels
    from .numerics import Signature

    if not model.compact:
        raise UnsupportedModelError("fixed points are listed for compact models only")
    labels = section_labels(model)
    dim = len(labels)
    if isinstance(model, ProjSpace):
        # x_j^m for each homogeneous coordinate j; j = 0 is the constant monomial
        targets = [(0,) * model.n] + [
            tuple(model.m if i == j else 0 for i in range(model.n)) for j in range(model.n)
        ]
    else:
        targets = labels
    out = []
    for t in targets:
        v = np.zeros(dim, dtype=complex)
        v[labels.index(t)] = 1.0
        out.append(EmbeddedVector(v, Signature.DEFINITE))
    return out


def parse_model(spec: str) -> Model:
    """Parse ``cp:n=<int>,m=<int>``, ``gr:k=<int>,n=<int>`` or ``disc:twok=<int>``."""
    grammar = {"cp": ("n", "m"), "gr": ("k", "n"), "disc": ("twok",)}
    family, sep, rest = spec.strip().partition(":")
    if not sep or family not in grammar:
        raise SpecSyntaxError(f"unknown model family in {spec!r} (token {family!r})")
    params = {}
    for token in rest.split(","):
        key, eq, value = token.partition("=")
        key = key.strip()
        if not eq or key not in grammar[family] or key in params:
            raise SpecSyntaxError(f"bad token {token!r} in model spec {spec!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise SpecSyntaxError(f"non-integer value in token {token!r}") from None
    missing = [k for k in grammar[family] if k not in params]
    if missing:
        raise SpecSyntaxError(f"model spec {spec!r} missing {', '.join(missing)}")
    if family == "cp":
        return ProjSpace(params["n"], params["m"])
    if family == "gr":
        return Grassmann(params["k"], params["n"])
    return Disc(params["twok"])


class SpecSyntaxError(ValueError):
    """Malformed model specification string."""
