"""Seeded trial campaigns and exact computations behind each identity check."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from . import liecore
from .embed import (
    EmbeddedVector,
    PolarPairError,
    bargmann_distance,
    cayley_distance,
    diastasis,
    differential_rank,
    iota,
    iota_homogeneous,
    iota_lorentz,
    lorentz_ratio,
    pseudo_distance,
    ray_cosine,
    ray_geodesic_point,
    section_count,
    section_labels,
    study_distance,
    wick_distance,
)
from .liecore import FlagSpec
from .models import (
    Disc,
    Grassmann,
    Model,
    ProjSpace,
    UnsupportedModelError,
    construct_subspace_pair,
    fixed_points,
    overlap,
)
from .numerics import (
    clamped_arccos,
    complex_gaussian,
    numerical_rank,
    random_unitary,
    trial_rng,
)

MAX_WITNESSES = 10
T_GRID = tuple(round(0.1 * i, 1) for i in range(1, 10))


@dataclass
class CheckReport:
    check_name: str
    model: str
    trials: int
    seed: int
    max_abs_error: float
    tolerance: float
    passed: bool
    witnesses: List[dict] = field(default_factory=list)
    skipped: int = 0


@dataclass
class SevenNumbersReport:
    model: str
    flag: str
    n1_max_orthogonal: int
    n2_sections: int
    n3_bwb_dim: int
    n4_minimal_N: int
    n5_morse_count: int
    n6_euler_char: int
    n7_cell_count: int
    n1_lower_bound: bool = True
    morse_discarded: int = 0
    methods: Dict[str, str] = field(default_factory=dict)

    @property
    def numbers(self) -> tuple:
        return (
            self.n1_max_orthogonal,
            self.n2_sections,
            self.n3_bwb_dim,
            self.n4_minimal_N,
            self.n5_morse_count,
            self.n6_euler_char,
            self.n7_cell_count,
        )

    @property
    def all_equal(self) -> bool:
        return len(set(self.numbers)) == 1


def _run_trials(fn: Callable[[int], object], trials: int, threads: int = 1) -> list:
    """Evaluate ``fn(i)`` for every trial index; results come back in index order."""
    if threads <= 1:
        return [fn(i) for i in range(trials)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(trials)))


def _report(name, model, trials, seed, errors, tol, witness_of, skipped=0) -> CheckReport:
    errors = np.asarray(errors, dtype=float)
    max_err = float(errors.max()) if errors.size else 0.0
    bad = [i for i, e in enumerate(errors) if not e <= tol]
    witnesses = [witness_of(i) for i in bad[:MAX_WITNESSES]]
    return CheckReport(name, model, trials, seed, max_err, tol, not bad, witnesses, skipped)


def _fmt_point(z) -> list:
    z = np.asarray(z, dtype=complex).reshape(-1)
    return [[float(c.real), float(c.imag)] for c in z]


def _require_compact(model: Model) -> None:
    if not model.compact:
        raise UnsupportedModelError(f"{model.spec} is not compact")


def check_cauchy(model: Model, trials: int = 1000, seed: int = 0, tol: float = 1e-10,
                 pairs: Optional[Sequence] = None, threads: int = 1) -> CheckReport:
    """Kernel overlap versus normalized inner product of embedded vectors, plus the angle identity."""
    _require_compact(model)

    def pair(i):
        if pairs is not None:
            return pairs[i]
        rng = trial_rng(seed, i)
        return model.sample(rng), model.sample(rng)

    def one(i):
        z1, z2 = pair(i)
        ov = overlap(model, z1, z2)
        w1, w2 = iota(model, z1), iota(model, z2)
        emb = np.vdot(w1.vec, w2.vec) / (np.linalg.norm(w1.vec) * np.linalg.norm(w2.vec))
        angle_err = abs(clamped_arccos(abs(ov)) - cayley_distance(w1, w2))
        return max(abs(ov - emb), angle_err)

    n = len(pairs) if pairs is not None else trials
    errors = _run_trials(one, n, threads)
    return _report("cauchy", model.spec, n, seed, errors, tol,
                   lambda i: {"trial": i, "error": float(errors[i])})


def check_noncompact_relation(model: Disc, trials: int = 1000, seed: int = 0, tol: float = 1e-9,
                              threads: int = 1) -> CheckReport:
    """``exp(-D/2) cosh(delta) = 1`` on the disc; at twok = 1 also the Lorentz-ratio route."""

    def one(i):
        rng = trial_rng(seed, i)
        z1, z2 = model.sample(rng), model.sample(rng)
        delta = pseudo_distance(model, z1, z2)
        err = abs(math.exp(-0.5 * diastasis(model, z1, z2)) * math.cosh(delta) - 1.0)
        if model.twok == 1:
            ratio = lorentz_ratio(iota_lorentz(model, z1), iota_lorentz(model, z2))
            err = max(err, abs(math.acosh(max(1.0, ratio)) - delta))
        return err

    errors = _run_trials(one, trials, threads)
    return _report("diastasis", model.spec, trials, seed, errors, tol,
                   lambda i: {"trial": i, "error": float(errors[i])})


def check_diastasis(model: Model, trials: int = 1000, seed: int = 0, tol: float = 1e-9,
                    threads: int = 1) -> CheckReport:
    """Diastasis from the potential against ``-2 log cos`` of the embedded angle."""
    if isinstance(model, Disc):
        return check_noncompact_relation(model, trials, seed, tol, threads)

    def one(i):
        rng = trial_rng(seed, i)
        z1, z2 = model.sample(rng), model.sample(rng)
        try:
            D = diastasis(model, z1, z2)
        except PolarPairError:
            return math.inf
        theta = cayley_distance(iota(model, z1), iota(model, z2))
        return abs(D + 2.0 * math.log(math.cos(theta)))

    errors = _run_trials(one, trials, threads)
    return _report("diastasis", model.spec, trials, seed, errors, tol,
                   lambda i: {"trial": i, "error": float(errors[i])})


def _detrended_spread(dist: np.ndarray, values: np.ndarray, width: float) -> tuple:
    """Largest within-bin spread of ``values`` after removing a linear trend in ``dist``.

    A smooth function of ``dist`` still moves by O(width) across one bin; the
    linear fit absorbs that so only the O(width^2) curvature term remains.
    """
    bins = np.floor(dist / width).astype(np.int64)
    order = np.argsort(bins, kind="stable")
    worst, worst_bin = 0.0, None
    for b in np.unique(bins):
        idx = order[bins[order] == b]
        if idx.size < 3:
            continue
        x, y = dist[idx], values[idx]
        A = np.column_stack([np.ones_like(x), x - x.mean()])
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        resid = y - A @ coef
        spread = float(resid.max() - resid.min())
        if spread > worst:
            worst, worst_bin = spread, int(b)
    return worst, worst_bin


def check_two_point_homogeneity(model: Model, trials: int = 10000, seed: int = 0,
                                bin_width: float = 1e-3, tol: float = 1e-6,
                                probe_angle: float = 0.8) -> CheckReport:
    """Does ``|overlap|`` depend on the intrinsic distance alone?

    Passes when the detrended within-bin spread stays below ``tol``. On
    Grassmannians of rank >= 2 a constructed pair with equal distance and
    different overlap is recorded as a witness.
    """
    _require_compact(model)
    dist = np.empty(trials)
    mod = np.empty(trials)
    for i in range(trials):
        rng = trial_rng(seed, i)
        z1, z2 = model.sample(rng), model.sample(rng)
        dist[i] = model.intrinsic_distance(z1, z2)
        mod[i] = abs(overlap(model, z1, z2))
    spread, worst_bin = _detrended_spread(dist, mod, bin_width)
    witnesses = []
    if spread > tol:
        witnesses.append({"kind": "bin", "bin_start": worst_bin * bin_width,
                          "bin_width": bin_width, "spread": spread})
    if isinstance(model, Grassmann) and min(model.k, model.n - model.k) >= 2:
        a = probe_angle
        split = [a / math.sqrt(2), a / math.sqrt(2)] + [0.0] * (model.k - 2)
        single = [a] + [0.0] * (model.k - 1)
        p1 = construct_subspace_pair(model, single)
        p2 = construct_subspace_pair(model, split)
        d1, d2 = model.intrinsic_distance(*p1), model.intrinsic_distance(*p2)
        o1, o2 = abs(overlap(model, *p1)), abs(overlap(model, *p2))
        witnesses.append({"kind": "constructed", "angles_a": single, "angles_b": split,
                          "distance_a": d1, "distance_b": d2,
                          "overlap_a": o1, "overlap_b": o2, "overlap_gap": abs(o1 - o2)})
        spread = max(spread, abs(o1 - o2)) if abs(d1 - d2) <= 1e-12 else spread
    return CheckReport("homogeneity", model.spec, trials, seed, spread, tol,
                       spread <= tol, witnesses if spread > tol else [])


def _random_ray_pair(dim: int, rng: np.random.Generator):
    u = complex_gaussian(dim, rng)
    v = complex_gaussian(dim, rng)
    return u / np.linalg.norm(u), v / np.linalg.norm(v)


def check_geodesic_additivity(dim: int = 4, trials: int = 100, seed: int = 0, tol: float = 1e-9,
                              pairs: Optional[Sequence] = None, threads: int = 1) -> CheckReport:
    """``rho(a,b) = rho(a,g) + rho(g,b)`` for points ``g`` on the connecting geodesic."""
    if dim < 2:
        raise ValueError("ray space needs dim >= 2")

    def one(i):
        u, v = pairs[i] if pairs is not None else _random_ray_pair(dim, trial_rng(seed, i))
        rho = wick_distance(u, v)
        worst = 0.0
        for t in T_GRID:
            try:
                g = ray_geodesic_point(u, v, t)
            except ValueError:
                return None
            worst = max(worst, abs(wick_distance(u, g) + wick_distance(g, v) - rho))
        return worst

    n = len(pairs) if pairs is not None else trials
    results = _run_trials(one, n, threads)
    kept = [(i, e) for i, e in enumerate(results) if e is not None]
    errors = [e for _, e in kept]
    rep = _report("geodesic", f"C^{dim}", n, seed, errors, tol,
                  lambda j: {"trial": kept[j][0], "error": float(kept[j][1])},
                  skipped=n - len(kept))
    return rep


def check_anandan_aharonov(dim: int = 4, trials: int = 10000, seed: int = 0,
                           tol: float = 1e-12) -> CheckReport:
    """``|<psi|phi>|^2 = cos^2(d/2)`` with ``d`` the doubled ray angle."""
    errors = []
    for i in range(trials):
        u, v = _random_ray_pair(dim, trial_rng(seed, i))
        errors.append(abs(abs(np.vdot(u, v)) ** 2 - math.cos(0.5 * study_distance(u, v)) ** 2))
    return _report("anandan", f"C^{dim}", trials, seed, errors, tol,
                   lambda i: {"trial": i, "error": float(errors[i])})


def check_bargmann_bounds(dim: int = 4, trials: int = 10000, seed: int = 0,
                          tol: float = 1e-12) -> CheckReport:
    """Chordal distance squeezed between ``(2 sqrt2 / pi) d_c`` and ``d_c``."""
    c = 2.0 * math.sqrt(2.0) / math.pi
    errors = []
    for i in range(trials):
        u, v = _random_ray_pair(dim, trial_rng(seed, i))
        dc, db = cayley_distance(u, v), bargmann_distance(u, v)
        errors.append(max(0.0, c * dc - db, db - dc))
    return _report("bargmann", f"C^{dim}", trials, seed, errors, tol,
                   lambda i: {"trial": i, "violation": float(errors[i])})


def check_injectivity(model: Model, trials: int = 500, seed: int = 0,
                      threads: int = 1) -> CheckReport:
    """Sampled one-to-one and immersion conditions of the embedding.

    Error per trial counts violations: a collapsed pair (images closer than
    1e-8 while chart points differ by more than 1e-4) and a rank deficit of
    the differential.
    """
    _require_compact(model)

    def one(i):
        rng = trial_rng(seed, i)
        z1 = model.sample(rng)
        z2 = model.sample(rng)
        while np.linalg.norm(np.asarray(z1) - np.asarray(z2)) <= 1e-4:
            z2 = model.sample(rng)
        bad = 0
        if cayley_distance(iota(model, z1), iota(model, z2)) <= 1e-8:
            bad += 1
        bad += model.chart_dim - differential_rank(model, z1)
        return bad

    errors = _run_trials(one, trials, threads)
    return _report("injectivity", model.spec, trials, seed, errors, 0.0,
                   lambda i: {"trial": i, "violations": int(errors[i])})


# --- energy function and its critical points -------------------------------------------

@dataclass(frozen=True, eq=False)
class EnergyFunction:
    """``f_H = <x|H|x>/<x|x>`` for a diagonal Cartan element acting on the level-1 space."""

    model: Model
    h: np.ndarray

    def __post_init__(self):
        _require_compact(self.model)
        h = np.asarray(self.h, dtype=float).reshape(-1)
        object.__setattr__(self, "h", h)
        if h.size != base_dim(self.model):
            raise ValueError(f"H needs {base_dim(self.model)} diagonal entries")
        if np.any(np.diff(h) <= 0):
            raise ValueError("H entries must be strictly increasing")

    @classmethod
    def default(cls, model: Model) -> "EnergyFunction":
        return cls(model, np.arange(1.0, base_dim(model) + 1.0))

    def embedded_weights(self) -> np.ndarray:
        """Diagonal of ``H`` in the section basis (the induced torus action)."""
        labels = section_labels(self.model)
        if isinstance(self.model, ProjSpace):
            m = self.model.m
            return np.array([(m - sum(a)) * self.h[0] + np.dot(a, self.h[1:]) for a in labels])
        return np.array([self.h[list(S)].sum() for S in labels])

    def __call__(self, w: EmbeddedVector) -> float:
        v = w.vec if isinstance(w, EmbeddedVector) else np.asarray(w)
        p = np.abs(v) ** 2
        return float(np.dot(self.embedded_weights(), p) / p.sum())


def base_dim(model: Model) -> int:
    if isinstance(model, ProjSpace):
        return model.n + 1
    if isinstance(model, Grassmann):
        return model.n
    raise UnsupportedModelError("energy functions live on compact models")


@dataclass
class MorseSearch:
    count: int
    discarded: int
    critical_points: List[np.ndarray]
    values: List[float]


def _base_point(model: Model, z) -> np.ndarray:
    if isinstance(model, ProjSpace):
        x = np.concatenate([[1.0 + 0j], z])
        return x / np.linalg.norm(x)
    q, _ = np.linalg.qr(model.frame(z))
    return q


def _fixed_base_points(model: Model) -> List[np.ndarray]:
    N = base_dim(model)
    if isinstance(model, ProjSpace):
        return [np.eye(N, dtype=complex)[j] for j in range(N)]
    return [np.eye(N, dtype=complex)[:, list(S)] for S in section_labels(model)]


def _descend(h: np.ndarray, X: np.ndarray, grassmann: bool, max_iter: int, gtol: float):
    """Projected gradient descent on ``|grad f_H|^2`` for a batch of base points.

    Zeros of the squared Riemannian gradient are exactly the critical points of
    ``f_H``, so saddles and maxima are reachable, not just the minimum.
    Returns final points and a convergence mask.
    """
    hs = (h - h.mean()) / (h.max() - h.min())
    eta = 0.5
    done = np.zeros(X.shape[0], dtype=bool)
    for _ in range(max_iter):
        if grassmann:
            HV = hs[None, :, None] * X
            A = X.conj().transpose(0, 2, 1) @ HV
            R = HV - X @ A
            gnorm = np.linalg.norm(R, axis=(1, 2))
            G = hs[None, :, None] * HV - 2.0 * HV @ A
            G = G - X @ (X.conj().transpose(0, 2, 1) @ G)
        else:
            Hx = hs * X
            f = np.einsum("si,si->s", X.conj(), Hx).real
            R = Hx - f[:, None] * X
            gnorm = np.linalg.norm(R, axis=1)
            G = hs * Hx - 2.0 * f[:, None] * Hx
            G = G - np.einsum("si,si->s", X.conj(), G)[:, None] * X
        done = gnorm < gtol
        if done.all():
            break
        step = np.where(done, 0.0, eta)
        if grassmann:
            X, _ = np.linalg.qr(X - step[:, None, None] * G)
        else:
            X = X - step[:, None] * G
            X = X / np.linalg.norm(X, axis=1, keepdims=True)
    return X, done


def morse_search(ef: EnergyFunction, starts: Optional[int] = None, seed: int = 0,
                 max_iter: int = 10_000, gtol: float = 1e-9, dedup: float = 1e-6) -> MorseSearch:
    """Multistart search for the critical points of ``f_H`` on the embedded manifold.

    Each random chart point is recentered by a Haar unitary before descent, so
    starts also land outside the chart; the torus-fixed points are always
    included as extra seeds. Results are deduplicated by the Cayley distance of
    their embedded images.
    """
    model = ef.model
    if starts is None:
        starts = 20 * section_count(model)
    N = base_dim(model)
    grassmann = isinstance(model, Grassmann)
    seeds = []
    for i in range(starts):
        rng = trial_rng(seed, i)
        x = _base_point(model, model.sample(rng))
        U = random_unitary(N, rng)
        seeds.append(U.conj().T @ x)
    seeds.extend(_fixed_base_points(model))
    X, ok = _descend(ef.h, np.stack(seeds), grassmann, max_iter, gtol)

    found: List[np.ndarray] = []
    values: List[float] = []
    for x in X[ok]:
        w = iota_homogeneous(model, x)
        w = w / np.linalg.norm(w)
        if all(clamped_arccos(abs(np.vdot(w, u))) > dedup for u in found):
            found.append(w)
            values.append(ef(w))
    order = np.argsort(values, kind="stable")
    return MorseSearch(len(found), int((~ok).sum()), [found[i] for i in order],
                       [values[i] for i in order])


def morse_count(ef: EnergyFunction, starts: Optional[int] = None, seed: int = 0) -> int:
    return morse_search(ef, starts, seed).count


# --- orthogonal coherent vectors -------------------------------------------------------

def max_clique(adj: Dict[int, set]) -> set:
    """Maximum clique by Bron-Kerbosch with pivoting."""
    best: set = set()

    def expand(R: set, P: set, X: set):
        nonlocal best
        if not P and not X:
            if len(R) > len(best):
                best = set(R)
            return
        if len(R) + len(P) <= len(best):
            return
        pivot = max(P | X, key=lambda u: len(adj[u] & P))
        for v in list(P - adj[pivot]):
            expand(R | {v}, P & adj[v], X & adj[v])
            P = P - {v}
            X = X | {v}

    expand(set(), set(adj), set())
    return best


def _chart_from_real(model: Model, x: np.ndarray):
    half = x.size // 2
    z = x[:half] + 1j * x[half:]
    if isinstance(model, Grassmann):
        return z.reshape(model.n - model.k, model.k)
    return z


def max_orthogonal_set(model: Model, augment_trials: int = 20, seed: int = 0,
                       orth_tol: float = 1e-9) -> int:
    """Size of the largest mutually orthogonal family of coherent vectors found.

    Exact maximum clique over the torus-fixed points, then randomized attempts
    to append coherent vectors orthogonal to the whole clique. A lower bound.
    """
    _require_compact(model)
    vecs = [p.vec for p in fixed_points(model)]
    adj = {i: set() for i in range(len(vecs))}
    for i in range(len(vecs)):
        for j in range(i + 1, len(vecs)):
            if ray_cosine(vecs[i], vecs[j]) < orth_tol:
                adj[i].add(j)
                adj[j].add(i)
    clique = [vecs[i] for i in sorted(max_clique(adj))]

    for t in range(augment_trials):
        rng = trial_rng(seed, t)
        members = np.array(clique)

        def objective(x):
            w = iota(model, _chart_from_real(model, x)).vec
            return float(np.sum(np.abs(members.conj() @ w) ** 2) / np.vdot(w, w).real)

        z0 = np.asarray(model.sample(rng)).reshape(-1)
        x0 = np.concatenate([z0.real, z0.imag])
        res = minimize(objective, x0, method="BFGS", options={"gtol": 1e-12, "maxiter": 2000})
        w = iota(model, _chart_from_real(model, res.x)).vec
        if max(ray_cosine(c, w) for c in clique) < orth_tol:
            clique.append(w / np.linalg.norm(w))
    return len(clique)


def minimal_N(model: Model, samples: Optional[int] = None, seed: int = 0,
              eps: float = 1e-8) -> int:
    """Dimension of the linear span of the embedded image, from random samples."""
    _require_compact(model)
    dim = section_count(model)
    if samples is None:
        samples = 3 * dim
    if samples < 3 * dim:
        raise ValueError(f"need at least {3 * dim} samples")
    rng = trial_rng(seed, 0)
    return numerical_rank([iota(model, model.sample(rng)).vec for _ in range(samples)], eps)


# --- the seven numbers -----------------------------------------------------------------

def matching_flag(model: Model) -> FlagSpec:
    if isinstance(model, ProjSpace):
        return FlagSpec.single("A", model.n, 1, model.m)
    if isinstance(model, Grassmann):
        return FlagSpec.single("A", model.n - 1, model.k, 1)
    raise UnsupportedModelError("only compact catalog models have a flag description")


def _flag_str(flag: FlagSpec) -> str:
    return f"{flag.lie_type}{flag.rank};crossed={sorted(flag.parabolic)};weight={list(flag.weight)}"


def seven_numbers(model: Model, flag: Optional[FlagSpec] = None, seed: int = 0,
                  augment_trials: int = 20, starts: Optional[int] = None) -> SevenNumbersReport:
    expected = matching_flag(model)
    if flag is None:
        flag = expected
    elif flag != expected:
        raise ValueError(f"flag {_flag_str(flag)} does not match {model.spec} ({_flag_str(expected)})")
    n2 = section_count(model)
    search = morse_search(EnergyFunction.default(model), starts, seed)
    return SevenNumbersReport(
        model=model.spec,
        flag=_flag_str(flag),
        n1_max_orthogonal=max_orthogonal_set(model, augment_trials, seed),
        n2_sections=n2,
        n3_bwb_dim=liecore.weyl_dimension(flag),
        n4_minimal_N=minimal_N(model, seed=seed),
        n5_morse_count=search.count,
        n6_euler_char=liecore.euler_characteristic(flag),
        n7_cell_count=liecore.schubert_cell_count(flag),
        morse_discarded=search.discarded,
        methods={
            "n1": "max clique of torus-fixed points plus randomized extension (lower bound)",
            "n2": "enumeration of the monomial / Pluecker-minor section basis",
            "n3": "Weyl dimension formula, exact rationals",
            "n4": "numerical rank of sampled embedded vectors",
            "n5": "multistart descent on squared gradient of the energy function",
            "n6": "|W| / |W_Levi| by group generation",
            "n7": "minimal coset representatives by explicit coset partition",
        },
    )


CHECKS = {
    "cauchy": (check_cauchy, "overlap equals normalized inner product of embedded vectors"),
    "diastasis": (check_diastasis, "diastasis equals -2 log cos of the embedded angle; disc: exp(-D/2) cosh = 1"),
    "homogeneity": (check_two_point_homogeneity, "overlap modulus is a function of intrinsic distance (rank one)"),
    "geodesic": (check_geodesic_additivity, "ray distance is additive along the connecting geodesic"),
    "anandan": (check_anandan_aharonov, "squared overlap equals cos^2 of half the doubled ray angle"),
    "bargmann": (check_bargmann_bounds, "chordal distance bounded by (2 sqrt2/pi) d_c and d_c"),
    "injectivity": (check_injectivity, "embedding is one-one and immersive on samples"),
}
