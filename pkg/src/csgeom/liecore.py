"""Exact Weyl group combinatorics for classical root systems.

Everything is done with :class:`fractions.Fraction` in the standard orthogonal
realization, and group elements are stored as permutations of the full root
set, so no floating point ever enters an integer answer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache
from typing import Dict, FrozenSet, List, Tuple

Vector = Tuple[Q, ...]
Perm = Tuple[int, ...]

MAX_RANK = {"A": 6, "B": 3, "C": 3, "D": 3}
MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2}


def dot(x: Vector, y: Vector) -> Q:
    return sum((a * b for a, b in zip(x, y)), Q(0))


def _unit(dim: int, i: int, scale: Q = Q(1)) -> List[Q]:
    v = [Q(0)] * dim
    v[i] = scale
    return v


def _vec(coeffs) -> Vector:
    return tuple(Q(c) for c in coeffs)


def _add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def _scale(c, x: Vector) -> Vector:
    return tuple(Q(c) * a for a in x)


def reflect(v: Vector, alpha: Vector) -> Vector:
    c = 2 * dot(v, alpha) / dot(alpha, alpha)
    return tuple(a - c * b for a, b in zip(v, alpha))


@dataclass(frozen=True)
class RootDatum:
    lie_type: str
    rank: int
    simple_roots: Tuple[Vector, ...]
    positive_roots: Tuple[Vector, ...]
    fundamental_weights: Tuple[Vector, ...]
    rho: Vector = field(init=False)

    def __post_init__(self):
        dim = len(self.simple_roots[0])
        half = tuple(Q(0) for _ in range(dim))
        for a in self.positive_roots:
            half = _add(half, a)
        object.__setattr__(self, "rho", _scale(Q(1, 2), half))

    @property
    def roots(self) -> Tuple[Vector, ...]:
        """Positive roots followed by their negatives, in matching order."""
        return self.positive_roots + tuple(_scale(-1, a) for a in self.positive_roots)

    def weight(self, coeffs) -> Vector:
        if len(coeffs) != self.rank:
            raise ValueError(f"expected {self.rank} weight coefficients, got {len(coeffs)}")
        lam = tuple(Q(0) for _ in self.rho)
        for c, w in zip(coeffs, self.fundamental_weights):
            lam = _add(lam, _scale(c, w))
        return lam


def _check_type(lie_type: str, rank: int) -> None:
    if lie_type not in MAX_RANK:
        raise ValueError(f"unsupported Lie type {lie_type!r}")
    if not MIN_RANK[lie_type] <= rank <= MAX_RANK[lie_type]:
        raise ValueError(
            f"rank {rank} unsupported for type {lie_type} "
            f"(allowed {MIN_RANK[lie_type]}..{MAX_RANK[lie_type]})"
        )


@lru_cache(maxsize=None)
def root_datum(lie_type: str, rank: int) -> RootDatum:
    _check_type(lie_type, rank)
    n = rank
    if lie_type == "A":
        dim = n + 1
        simple = [_add(_vec(_unit(dim, i)), _vec(_unit(dim, i + 1, Q(-1)))) for i in range(n)]
        pos = [
            _add(_vec(_unit(dim, i)), _vec(_unit(dim, j, Q(-1))))
            for i in range(dim)
            for j in range(i + 1, dim)
        ]
        fund = []
        for k in range(1, n + 1):
            fund.append(tuple(Q(1 if i < k else 0) - Q(k, dim) for i in range(dim)))
        return RootDatum("A", n, tuple(simple), tuple(pos), tuple(fund))

    dim = n
    e = [_vec(_unit(dim, i)) for i in range(dim)]
    short_diffs = [_add(e[i], _scale(-1, e[i + 1])) for i in range(n - 1)]
    pairs = []
    for i in range(dim):
        for j in range(i + 1, dim):
            pairs.append(_add(e[i], _scale(-1, e[j])))
            pairs.append(_add(e[i], e[j]))
    partial = [tuple(Q(1 if i < k else 0) for i in range(dim)) for k in range(1, n + 1)]

    if lie_type == "B":
        simple = short_diffs + [e[n - 1]]
        pos = pairs + e
        fund = partial[:-1] + [_scale(Q(1, 2), partial[-1])]
    elif lie_type == "C":
        simple = short_diffs + [_scale(2, e[n - 1])]
        pos = pairs + [_scale(2, v) for v in e]
        fund = partial
    else:  # D
        simple = short_diffs + [_add(e[n - 2], e[n - 1])]
        pos = pairs
        spin_minus = _scale(Q(1, 2), _add(partial[n - 2], _scale(-1, e[n - 1])))
        spin_plus = _scale(Q(1, 2), partial[n - 1])
        fund = partial[: n - 2] + [spin_minus, spin_plus]
    return RootDatum(lie_type, n, tuple(simple), tuple(pos), tuple(fund))


@dataclass(frozen=True)
class FlagSpec:
    """A flag manifold G/P with a line-bundle weight.

    ``parabolic`` lists the crossed (removed) simple-root indices, 1-based.
    ``weight`` holds coefficients on the fundamental weights.
    """

    lie_type: str
    rank: int
    parabolic: FrozenSet[int]
    weight: Tuple[int, ...]

    def __post_init__(self):
        _check_type(self.lie_type, self.rank)
        object.__setattr__(self, "parabolic", frozenset(self.parabolic))
        object.__setattr__(self, "weight", tuple(int(c) for c in self.weight))
        if not self.parabolic:
            raise ValueError("parabolic must cross at least one node")
        bad = [i for i in self.parabolic if not 1 <= i <= self.rank]
        if bad:
            raise ValueError(f"crossed node(s) {sorted(bad)} out of range 1..{self.rank}")
        if len(self.weight) != self.rank:
            raise ValueError(f"weight needs {self.rank} coefficients")
        if any(c < 0 for c in self.weight):
            raise ValueError("weight coefficients must be nonnegative")

    @classmethod
    def single(cls, lie_type: str, rank: int, node: int, level: int = 1) -> "FlagSpec":
        weight = tuple(level if i == node else 0 for i in range(1, rank + 1))
        return cls(lie_type, rank, frozenset({node}), weight)

    @property
    def levi_nodes(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.rank + 1) if i not in self.parabolic)

    def is_projectively_induced(self) -> bool:
        """Weight vanishes exactly on the uncrossed nodes."""
        return all((c > 0) == (i in self.parabolic) for i, c in enumerate(self.weight, start=1))


class _RootPerms:
    """Simple reflections as permutations of the root list of one datum."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.roots = rd.roots
        self.npos = len(rd.positive_roots)
        index: Dict[Vector, int] = {r: i for i, r in enumerate(self.roots)}
        self.gens: List[Perm] = []
        for alpha in rd.simple_roots:
            self.gens.append(tuple(index[reflect(r, alpha)] for r in self.roots))
        self.identity: Perm = tuple(range(len(self.roots)))
        self.simple_index = [index[a] for a in rd.simple_roots]

    def generate(self, nodes) -> FrozenSet[Perm]:
        """Breadth-first closure of the subgroup generated by the given simple reflections."""
        gens = [self.gens[i - 1] for i in nodes]
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            for s in gens:
                ws = compose(w, s)
                if ws not in seen:
                    seen.add(ws)
                    queue.append(ws)
        return frozenset(seen)

    def length(self, w: Perm) -> int:
        return sum(1 for i in range(self.npos) if w[i] >= self.npos)


def compose(w: Perm, u: Perm) -> Perm:
    """``w o u``: apply ``u`` first."""
    return tuple(w[i] for i in u)


@lru_cache(maxsize=None)
def _perms(lie_type: str, rank: int) -> _RootPerms:
    return _RootPerms(root_datum(lie_type, rank))


@lru_cache(maxsize=None)
def _weyl_group(lie_type: str, rank: int) -> FrozenSet[Perm]:
    return _perms(lie_type, rank).generate(range(1, rank + 1))


def weyl_order(lie_type: str, rank: int) -> int:
    return len(_weyl_group(lie_type, rank))


def levi_weyl_order(spec: FlagSpec) -> int:
    return len(_perms(spec.lie_type, spec.rank).generate(spec.levi_nodes))


def euler_characteristic(spec: FlagSpec) -> int:
    total = weyl_order(spec.lie_type, spec.rank)
    levi = levi_weyl_order(spec)
    if total % levi:
        raise ArithmeticError(f"|W|={total} not divisible by |W_L|={levi}")
    return total // levi


def schubert_cell_count(spec: FlagSpec) -> int:
    """Number of minimal-length representatives of the cosets ``w W_L``.

    The group is partitioned into cosets explicitly; each coset must contain a
    unique shortest element. The count is cross-checked against the descent
    characterization (``w`` keeps every uncrossed simple root positive).
    """
    rp = _perms(spec.lie_type, spec.rank)
    W = _weyl_group(spec.lie_type, spec.rank)
    W_L = rp.generate(spec.levi_nodes)
    remaining = set(W)
    reps = []
    while remaining:
        w = min(remaining)
        coset = {compose(w, u) for u in W_L}
        remaining -= coset
        lengths = sorted((rp.length(x), x) for x in coset)
        if len(lengths) > 1 and lengths[0][0] == lengths[1][0]:
            raise ArithmeticError("coset without a unique minimal element")
        reps.append(lengths[0][1])

    levi_simple = [rp.simple_index[i - 1] for i in spec.levi_nodes]
    by_descent = sum(1 for w in W if all(w[j] < rp.npos for j in levi_simple))
    if by_descent != len(reps):
        raise ArithmeticError(f"coset count {len(reps)} != descent count {by_descent}")
    return len(reps)


def weyl_dimension(spec: FlagSpec) -> int:
    """Dimension of the irreducible module with highest weight ``spec.weight``."""
    rd = root_datum(spec.lie_type, spec.rank)
    lam_rho = _add(rd.weight(spec.weight), rd.rho)
    prod = Q(1)
    for alpha in rd.positive_roots:
        prod *= dot(lam_rho, alpha) / dot(rd.rho, alpha)
    if prod.denominator != 1:
        raise ArithmeticError(f"Weyl product {prod} is not an integer")
    return int(prod)
