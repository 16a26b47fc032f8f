"""Products and dualities on the doubled phase space.

Lifted products act on tensor sums; the crossed and kernel products act
on doubled fields with all index arithmetic wrapped modulo N per axis,
so their algebraic identities are exact finite-group statements.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grid import GridMismatch, PhaseGrid, SymbolField
from .laws import CompositionLaw

MAX_DOUBLE_ENTRIES = 1 << 21


@dataclass(frozen=True, eq=False)
class DoubleField:
    """Function on pairs of phase-space points, stored as the S x S
    matrix over flattened point indices, S = N^(2n)."""

    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        side = self.grid.N ** (2 * self.grid.n)
        if side * side > MAX_DOUBLE_ENTRIES:
            raise ValueError(
                f"doubled field would hold {side * side} entries; "
                f"limit is {MAX_DOUBLE_ENTRIES}"
            )
        v = np.asarray(self.values, dtype=np.complex128)
        if v.size != side * side:
            raise ValueError(f"expected {side * side} entries, got {v.size}")
        v = v.reshape(side, side).copy()
        if not np.isfinite(v).all():
            raise ValueError("doubled field entries must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class TensorSum:
    """Finite sum of elementary tensors left_i (x) right_i."""

    terms: tuple[tuple[SymbolField, SymbolField], ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise ValueError("tensor sum needs at least one term")
        grid = self.terms[0][0].grid
        for left, right in self.terms:
            if left.grid != grid or right.grid != grid:
                raise GridMismatch("tensor sum terms on mixed grids")
        object.__setattr__(self, "terms", tuple(self.terms))

    @property
    def grid(self) -> PhaseGrid:
        return self.terms[0][0].grid


@lru_cache(maxsize=8)
def _index_tables(grid: PhaseGrid) -> tuple[np.ndarray, np.ndarray]:
    """(SUB, NEG): flat index of the point difference X_a - X_b and of
    the negation -X_a, both under the torus group law."""
    N, n = grid.N, grid.n
    shape = grid.shape
    idx = np.stack(
        np.unravel_index(np.arange(N ** (2 * n)), shape), axis=-1
    )
    diff = (idx[:, None, :] - idx[None, :, :] + N // 2) % N
    sub = np.ravel_multi_index(tuple(diff[..., k] for k in range(2 * n)), shape)
    neg = np.ravel_multi_index(tuple((-idx[:, k]) % N for k in range(2 * n)), shape)
    return sub.astype(np.int32), neg.astype(np.int32)


def _same_grid(F: DoubleField, G: DoubleField) -> PhaseGrid:
    if F.grid != G.grid:
        raise GridMismatch(f"{F.grid} vs {G.grid}")
    return F.grid


def materialize(T: TensorSum) -> DoubleField:
    """Evaluate the tensor sum on index pairs: Σ_i left_i(X) right_i(Y)."""
    grid = T.grid
    side = grid.N ** (2 * grid.n)
    out = np.zeros((side, side), dtype=np.complex128)
    for left, right in T.terms:
        out += np.outer(left.values.ravel(), right.values.ravel())
    return DoubleField(grid, out)


def box_compose(law: CompositionLaw, T1: TensorSum, T2: TensorSum) -> TensorSum:
    """Lifted product on tensor sums; the second slot composes in
    reversed order."""
    if T1.grid != T2.grid:
        raise GridMismatch(f"{T1.grid} vs {T2.grid}")
    terms = []
    for f, h in T1.terms:
        for g, k in T2.terms:
            terms.append((law.compose(f, g), law.compose(k, h)))
    return TensorSum(tuple(terms))


def box_involution(F: DoubleField) -> DoubleField:
    """Entrywise conjugation."""
    return DoubleField(F.grid, np.conj(F.values))


def _diamond_guard(grid: PhaseGrid) -> None:
    if not (grid.n == 1 and grid.N <= 32):
        raise ValueError(
            f"crossed product limited to n=1, N<=32, got n={grid.n} N={grid.N}"
        )


def diamond_compose(F: DoubleField, G: DoubleField) -> DoubleField:
    """(F <> G)(X, Y) = pw * Σ_Z F(X, Z) G(X-Z, Y-Z)."""
    grid = _same_grid(F, G)
    _diamond_guard(grid)
    sub, _ = _index_tables(grid)
    side = F.values.shape[0]
    out = np.zeros((side, side), dtype=np.complex128)
    for zb in range(side):
        dz = sub[:, zb]
        out += F.values[:, zb : zb + 1] * G.values[np.ix_(dz, dz)]
    return DoubleField(grid, grid.pairing_weight * out)


def diamond_involution(F: DoubleField) -> DoubleField:
    """F^<>(X, Y) = conj F(X-Y, -Y)."""
    sub, neg = _index_tables(F.grid)
    return DoubleField(F.grid, np.conj(F.values[sub, neg[None, :]]))


def kernel_compose(K: DoubleField, L: DoubleField) -> DoubleField:
    """(K ~<> L)(X, Y) = pw * Σ_Z K(X, Z) L(Z, Y)."""
    grid = _same_grid(K, L)
    return DoubleField(grid, grid.pairing_weight * (K.values @ L.values))


def kernel_involution(K: DoubleField) -> DoubleField:
    """K^~<>(X, Y) = conj K(Y, X)."""
    return DoubleField(K.grid, np.conj(K.values.T))


def crossed_remap(F: DoubleField) -> DoubleField:
    """Self-inverse change of variables (X, Y) -> (X, X-Y); conjugates
    the kernel product into the crossed product."""
    sub, _ = _index_tables(F.grid)
    side = F.values.shape[0]
    return DoubleField(F.grid, F.values[np.arange(side)[:, None], sub])


def unit_crossed(grid: PhaseGrid) -> DoubleField:
    """Left unit for the crossed product: mass 1/pw on the Z=origin slice."""
    side = grid.N ** (2 * grid.n)
    origin = int(np.ravel_multi_index(grid.origin.grid_index, grid.shape))
    vals = np.zeros((side, side), dtype=np.complex128)
    vals[:, origin] = 1.0 / grid.pairing_weight
    return DoubleField(grid, vals)


def unit_kernel(grid: PhaseGrid) -> DoubleField:
    """Two-sided unit for the kernel product: (1/pw) on the diagonal."""
    side = grid.N ** (2 * grid.n)
    return DoubleField(grid, np.eye(side, dtype=np.complex128) / grid.pairing_weight)


def double_pair(F: DoubleField, G: DoubleField) -> complex:
    """pw^2 * Σ_{X,Y} F(X, Y) G(X, Y)."""
    grid = _same_grid(F, G)
    return complex(grid.pairing_weight**2 * np.sum(F.values * G.values))


def twisted_pair(F: DoubleField, G: DoubleField) -> complex:
    """pw^2 * Σ_{X,Y} F(X, X-Y) G(Y, Y-X); the primed duality."""
    grid = _same_grid(F, G)
    sub, _ = _index_tables(grid)
    side = F.values.shape[0]
    rows = np.arange(side)[:, None]
    F1 = F.values[rows, sub]
    G1 = G.values[rows, sub].T
    return complex(grid.pairing_weight**2 * np.sum(F1 * G1))


def change_vars_C(F: DoubleField) -> DoubleField:
    """(CF)(X, Y) = F(-X, X-Y)."""
    sub, neg = _index_tables(F.grid)
    return DoubleField(F.grid, F.values[neg[:, None], sub])
