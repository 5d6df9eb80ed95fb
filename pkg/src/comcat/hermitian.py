"""Real coordinatization of Hermitian matrices.

The fixed orthonormal basis (trace inner product) for d x d Hermitians is:
diagonal units E_ii, then (E_ij + E_ji)/sqrt(2) for i < j, then
(-i E_ij + i E_ji)/sqrt(2) for i < j, both families in lexicographic
(i, j) order.  With this basis the trace pairing Tr(XY) is the standard
dot product of coordinate vectors, so linear adjoints are plain
transposes.

Composite systems use the tensor-product basis of the factor bases
(left factor major), so the coordinates of X (x) Y are the row-major
tensor of the factor coordinates.  A basis is therefore named by the
tuple of factor Hilbert dimensions, e.g. (2,) for one qubit and (2, 2)
for the spatial two-qubit composite.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod, sqrt

import numpy as np


@lru_cache(maxsize=None)
def basis(dims: tuple[int, ...]) -> tuple[np.ndarray, ...]:
    """Orthonormal Hermitian basis for the given factor dimensions."""
    if len(dims) == 0:
        raise ValueError("at least one factor dimension required")
    if len(dims) == 1:
        return _single_basis(dims[0])
    left = basis(dims[:1])
    right = basis(dims[1:])
    return tuple(np.kron(a, b) for a in left for b in right)


def _single_basis(d: int) -> tuple[np.ndarray, ...]:
    if d < 1:
        raise ValueError("Hilbert dimension must be positive")
    mats = []
    for i in range(d):
        m = np.zeros((d, d), dtype=complex)
        m[i, i] = 1.0
        mats.append(m)
    s = 1.0 / sqrt(2.0)
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[i, j] = s
            m[j, i] = s
            mats.append(m)
    for i in range(d):
        for j in range(i + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[i, j] = -1j * s
            m[j, i] = 1j * s
            mats.append(m)
    return tuple(mats)


def ambient_dim(dims: tuple[int, ...]) -> int:
    return prod(d * d for d in dims)


def coords(M: np.ndarray, dims: tuple[int, ...]) -> tuple[float, ...]:
    """Coordinates of a Hermitian matrix in the named basis."""
    out = []
    for B in basis(dims):
        v = np.trace(B @ M)
        out.append(float(v.real))
    return tuple(out)


def matrix(x, dims: tuple[int, ...]) -> np.ndarray:
    """Hermitian matrix with the given coordinates."""
    B = basis(dims)
    if len(x) != len(B):
        raise ValueError(f"expected {len(B)} coordinates, got {len(x)}")
    d = prod(dims)
    M = np.zeros((d, d), dtype=complex)
    for c, b in zip(x, B):
        if c != 0:
            M = M + float(c) * b
    return M


def eigenvalues(x, dims: tuple[int, ...]) -> np.ndarray:
    return np.linalg.eigvalsh(matrix(x, dims))


def min_eigenvalue(x, dims: tuple[int, ...]) -> float:
    return float(eigenvalues(x, dims)[0])


def unit_coords(dims: tuple[int, ...]) -> tuple[float, ...]:
    """Coordinates of the identity, i.e. the trace functional."""
    return coords(np.eye(prod(dims), dtype=complex), dims)
