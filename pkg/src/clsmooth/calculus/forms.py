"""Symmetric multilinear forms, polarization and sampled ball norms."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from clsmooth.calculus.multiindex import multi_indices
from clsmooth.calculus.polynomial import PolynomialMap
from clsmooth.exceptions import PreconditionError

if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from clsmooth.calculus.seminorm import SeminormSpec

__all__ = ["SymmetricForm", "form_norm", "polarize", "sample_ball"]

_SYMMETRY_TOL = 1e-12
_MAX_VERTEX_TUPLES = 1 << 14


@dataclass(frozen=True, eq=False)
class SymmetricForm:
    """A symmetric j-linear map β: (R^d)^j → R^m.

    ``tensor`` has shape (d,)*j + (m,) and is invariant under every
    permutation of its first j axes.
    """

    __array_ufunc__ = None

    tensor: NDArray[np.float64]

    def __post_init__(self) -> None:
        t = np.array(self.tensor, dtype=float)
        if t.ndim < 2:
            raise PreconditionError("a form needs arity >= 1 and a value axis")
        j = t.ndim - 1
        if len(set(t.shape[:j])) != 1:
            raise PreconditionError(f"non-square form tensor of shape {t.shape}")
        scale = float(np.max(np.abs(t))) if t.size else 0.0
        for perm in itertools.permutations(range(j)):
            if np.max(np.abs(t - np.transpose(t, (*perm, j)))) > _SYMMETRY_TOL * (1.0 + scale):
                raise PreconditionError("form tensor is not symmetric")
        t.setflags(write=False)
        object.__setattr__(self, "tensor", t)

    @classmethod
    def symmetrize(cls, tensor: ArrayLike) -> SymmetricForm:
        """Average a (d,)*j + (m,) tensor over all permutations of its arguments."""
        t = np.asarray(tensor, dtype=float)
        j = t.ndim - 1
        perms = list(itertools.permutations(range(j)))
        total = sum(np.transpose(t, (*p, j)) for p in perms)
        return cls(np.asarray(total) / len(perms))

    @property
    def arity(self) -> int:
        return int(self.tensor.ndim - 1)

    @property
    def dimension(self) -> int:
        return int(self.tensor.shape[0])

    @property
    def target_dim(self) -> int:
        return int(self.tensor.shape[-1])

    def __call__(self, *vectors: ArrayLike) -> NDArray[np.float64]:
        if len(vectors) != self.arity:
            raise PreconditionError(f"form of arity {self.arity} got {len(vectors)} arguments")
        result: NDArray[np.float64] = self.tensor
        for v in vectors:
            result = np.tensordot(np.asarray(v, dtype=float), result, axes=([0], [0]))
        return result

    def evaluate_many(self, *batches: ArrayLike) -> NDArray[np.float64]:
        """β at N argument tuples; each batch is an (N, d) array."""
        arrays = [np.atleast_2d(np.asarray(b, dtype=float)) for b in batches]
        result = np.tensordot(arrays[0], self.tensor, axes=([1], [0]))
        for arr in arrays[1:]:
            result = np.einsum("nk,nk...->n...", arr, result)
        return result

    def diagonal(self) -> PolynomialMap:
        """β̄(y) = β(y, …, y), homogeneous of degree j: c_α = (j!/α!) β(e_α)."""
        j, d = self.arity, self.dimension
        coefficients = np.zeros((j + 1,) * d + (self.target_dim,))
        for alpha in multi_indices(d, j, exact=True):
            index = tuple(i for i, a in enumerate(alpha.entries) for _ in range(a))
            coefficients[alpha.entries] = (
                math.factorial(j) / alpha.factorial() * self.tensor[index]
            )
        return PolynomialMap(j, coefficients)


def polarize(p: PolynomialMap, arity: int | None = None) -> SymmetricForm:
    """Recover the symmetric form β with β̄ = p from a homogeneous polynomial.

    Uses the signed sum β(y_1..y_j) = 1/(2^j j!) Σ_ε ε_1⋯ε_j p(Σ ε_i y_i)
    over ε ∈ {±1}^j, evaluated on basis vectors.

    Raises:
        PreconditionError: If p is not homogeneous of degree ``arity`` >= 1.
    """
    j = p.degree if arity is None else arity
    if j < 1:
        raise PreconditionError(f"polarization needs degree >= 1, got {j}")
    if not p.is_homogeneous(j):
        raise PreconditionError(f"polynomial is not homogeneous of degree {j}")
    d, m = p.dimension, p.target_dim
    signs = np.array(list(itertools.product((1.0, -1.0), repeat=j)))
    sign_products = np.prod(signs, axis=1)
    norm = 2.0**j * math.factorial(j)
    tensor = np.zeros((d,) * j + (m,))
    for index in itertools.combinations_with_replacement(range(d), j):
        basis = np.zeros((j, d))
        basis[np.arange(j), index] = 1.0
        values = p.evaluate_many(signs @ basis)
        entry = sign_products @ values / norm
        for perm in set(itertools.permutations(index)):
            tensor[perm] = entry
    return SymmetricForm(tensor)


def sample_ball(dimension: int, samples: int, seed: int) -> NDArray[np.float64]:
    """Vertices of [-1,1]^d followed by ``samples`` seeded uniform points."""
    if samples < 1:
        raise PreconditionError(f"samples must be >= 1, got {samples}")
    vertices = np.array(list(itertools.product((-1.0, 1.0), repeat=dimension)))
    rng = np.random.default_rng(seed)
    return np.vstack([vertices, rng.uniform(-1.0, 1.0, size=(samples, dimension))])


def form_norm(
    obj: SymmetricForm | PolynomialMap,
    q: SeminormSpec,
    *,
    samples: int = 256,
    seed: int = 20240917,
) -> float:
    """Sampled sup of q∘p or q∘β over the closed unit max-norm ball of R^d.

    Polynomials are sampled at the cube vertices plus ``samples`` seeded
    uniform points. Forms are evaluated on the diagonal of that same set
    and on tuples of cube vertices (all of them when there are at most
    2^14, otherwise a seeded subset); q∘β is convex in each argument, so
    the vertex tuples carry its exact supremum.
    """
    if isinstance(obj, PolynomialMap):
        points = sample_ball(obj.dimension, samples, seed)
        return float(np.max(q.apply(obj.evaluate_many(points))))

    d, j = obj.dimension, obj.arity
    points = sample_ball(d, samples, seed)
    diagonal = float(np.max(q.apply(obj.diagonal().evaluate_many(points))))
    vertices = points[: 2**d]
    count = len(vertices) ** j
    if count <= _MAX_VERTEX_TUPLES:
        tuples = np.array(list(itertools.product(range(len(vertices)), repeat=j)))
    else:
        rng = np.random.default_rng(seed + 1)
        tuples = rng.integers(0, len(vertices), size=(_MAX_VERTEX_TUPLES, j))
    values = obj.evaluate_many(*(vertices[tuples[:, i]] for i in range(j)))
    return max(diagonal, float(np.max(q.apply(values))))
