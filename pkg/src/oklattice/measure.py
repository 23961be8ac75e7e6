"""Finite strictly-positive measure fibers and vectors over their atoms.

A fiber is a finite set of atoms with strictly positive weights.  Vectors,
idempotents (0/1 indicator sets), integration, the symmetric-difference
metric on idempotents, and the bounded metric on vectors all live here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Fiber",
    "FiberVector",
    "FiberIdempotent",
    "integrate",
    "idempotent_metric",
    "rho_metric",
    "linf_norm",
    "lp_norm",
]


@dataclass(frozen=True, eq=False)
class Fiber:
    """A finite measure space: atoms indexed 0..n-1 with weights > 0."""

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("fiber weights must be a nonempty 1-d array")
        if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
            raise ValueError("fiber weights must be finite and strictly positive")
        w = w.copy()
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def atom_count(self) -> int:
        return int(self.weights.size)

    @property
    def total_mass(self) -> float:
        return float(self.weights.sum())

    def same_space(self, other: "Fiber") -> bool:
        return other is self or np.array_equal(self.weights, other.weights)


@dataclass(frozen=True, eq=False)
class FiberVector:
    """A real function on the atoms of one fiber."""

    fiber: Fiber
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.fiber.atom_count,):
            raise ValueError(
                f"vector of length {v.size} not bound to fiber with "
                f"{self.fiber.atom_count} atoms"
            )
        if not np.all(np.isfinite(v)):
            raise ValueError("fiber vector values must be finite")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)


@dataclass(frozen=True, eq=False)
class FiberIdempotent:
    """A subset of the atoms of one fiber, stored as a boolean mask."""

    fiber: Fiber
    mask: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mask)
        if m.dtype != np.bool_:
            if not np.all((m == 0) | (m == 1)):
                raise ValueError("idempotent mask must be 0/1 valued")
            m = m.astype(bool)
        if m.shape != (self.fiber.atom_count,):
            raise ValueError("idempotent mask length does not match fiber")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "mask", m)

    @classmethod
    def from_indices(cls, fiber: Fiber, indices) -> "FiberIdempotent":
        mask = np.zeros(fiber.atom_count, dtype=bool)
        mask[list(indices)] = True
        return cls(fiber, mask)

    @classmethod
    def top(cls, fiber: Fiber) -> "FiberIdempotent":
        return cls(fiber, np.ones(fiber.atom_count, dtype=bool))

    @classmethod
    def bottom(cls, fiber: Fiber) -> "FiberIdempotent":
        return cls(fiber, np.zeros(fiber.atom_count, dtype=bool))

    def __or__(self, other: "FiberIdempotent") -> "FiberIdempotent":
        _check_bound(self.fiber, other)
        return FiberIdempotent(self.fiber, self.mask | other.mask)

    def __and__(self, other: "FiberIdempotent") -> "FiberIdempotent":
        _check_bound(self.fiber, other)
        return FiberIdempotent(self.fiber, self.mask & other.mask)

    def __xor__(self, other: "FiberIdempotent") -> "FiberIdempotent":
        _check_bound(self.fiber, other)
        return FiberIdempotent(self.fiber, self.mask ^ other.mask)

    def complement(self) -> "FiberIdempotent":
        return FiberIdempotent(self.fiber, ~self.mask)

    def as_vector(self) -> FiberVector:
        return FiberVector(self.fiber, self.mask.astype(float))


def _check_bound(fiber: Fiber, x) -> None:
    if not fiber.same_space(x.fiber):
        raise ValueError("argument is not bound to the given fiber")


def integrate(fiber: Fiber, x: FiberVector) -> float:
    """Weighted sum over atoms: sum_i mu_i x_i."""
    _check_bound(fiber, x)
    return float(np.dot(fiber.weights, x.values))


def idempotent_metric(fiber: Fiber, e: FiberIdempotent, g: FiberIdempotent) -> float:
    """Measure of the symmetric difference of two idempotents."""
    _check_bound(fiber, e)
    _check_bound(fiber, g)
    return float(fiber.weights[e.mask ^ g.mask].sum())


def rho_metric(fiber: Fiber, f: FiberVector, g: FiberVector) -> float:
    """Bounded metric: integral of |f-g| / (1 + |f-g|).

    Symmetric, zero iff f == g (weights are strictly positive), and never
    larger than the total mass of the fiber.
    """
    _check_bound(fiber, f)
    _check_bound(fiber, g)
    d = np.abs(f.values - g.values)
    return float(np.dot(fiber.weights, d / (1.0 + d)))


def linf_norm(fiber: Fiber, x: FiberVector) -> float:
    """Max absolute value over atoms."""
    _check_bound(fiber, x)
    return float(np.abs(x.values).max())


def lp_norm(fiber: Fiber, x: FiberVector, p: float) -> float:
    """Weighted p-norm (sum_i mu_i |x_i|^p)^(1/p) for p >= 1."""
    if p < 1.0:
        raise ValueError(f"p must be >= 1, got {p}")
    _check_bound(fiber, x)
    return float(np.dot(fiber.weights, np.abs(x.values) ** p) ** (1.0 / p))
