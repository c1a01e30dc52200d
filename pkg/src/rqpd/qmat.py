"""Fixed-size complex linear algebra for the two-qubit game engine.

Everything here works on 2x2 / 4x4 complex matrices and length-4 state
vectors in the frozen basis order (CC, CD, DC, DD).  Index i of a state
vector is the amplitude of ``BASIS_LABELS[i]``; no other module may
re-derive or reorder this basis.

Arrays returned by constructors and operations are marked read-only, so
they can be shared freely across threads.  Nothing is renormalized
silently; norm and unitarity defects are surfaced through
:func:`unitarity_defect` and :func:`norm`.
"""

from __future__ import annotations

import numpy as np

#: Frozen two-qubit basis order used throughout the package.
BASIS_LABELS = ("CC", "CD", "DC", "DD")

#: Absolute tolerance for equality and unitarity checks.
ATOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _require_finite(arr: np.ndarray, name: str) -> None:
    if not np.isfinite(arr).all():
        raise ValueError(f"{name} contains non-finite entries")


def _as_matrix(entries, dim: int, name: str) -> np.ndarray:
    m = np.array(entries, dtype=complex)
    if m.shape != (dim, dim):
        raise ValueError(f"{name} must be {dim}x{dim}, got shape {m.shape}")
    _require_finite(m, name)
    return _frozen(m)


def mat2(entries) -> np.ndarray:
    """Validated 2x2 complex matrix (row-major)."""
    return _as_matrix(entries, 2, "mat2")


def mat4(entries) -> np.ndarray:
    """Validated 4x4 complex matrix in the frozen basis order."""
    return _as_matrix(entries, 4, "mat4")


def state4(amplitudes) -> np.ndarray:
    """Validated 4-component state vector in the frozen basis order."""
    v = np.array(amplitudes, dtype=complex)
    if v.shape != (4,):
        raise ValueError(f"state4 must have 4 amplitudes, got shape {v.shape}")
    _require_finite(v, "state4")
    return _frozen(v)


def basis_state(index: int) -> np.ndarray:
    """Computational basis vector for ``BASIS_LABELS[index]``."""
    if index not in (0, 1, 2, 3):
        raise ValueError(f"basis index must be 0..3, got {index}")
    v = np.zeros(4, dtype=complex)
    v[index] = 1.0
    return _frozen(v)


def identity(dim: int) -> np.ndarray:
    """Complex identity matrix of size 2 or 4."""
    if dim not in (2, 4):
        raise ValueError(f"identity supports dim 2 or 4, got {dim}")
    return _frozen(np.eye(dim, dtype=complex))


def tensor2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices in the frozen basis order.

    Satisfies the mixed-product property ``(a (x) b)(x (x) y) = ax (x) by``.
    """
    a = _as_matrix(a, 2, "tensor2 left factor")
    b = _as_matrix(b, 2, "tensor2 right factor")
    return _frozen(np.kron(a, b))


def apply(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Matrix-vector product of a 4x4 matrix with a 4-state."""
    m = _as_matrix(m, 4, "apply matrix")
    v = state4(v)
    return _frozen(m @ v)


def adjoint(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose of a 2x2 or 4x4 matrix."""
    m = np.array(m, dtype=complex)
    if m.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"adjoint expects a 2x2 or 4x4 matrix, got {m.shape}")
    _require_finite(m, "adjoint input")
    return _frozen(m.conj().T)


def unitarity_defect(m: np.ndarray) -> float:
    """Max-abs entry of ``adjoint(m) @ m - I``; 0 for exactly unitary input."""
    m = np.array(m, dtype=complex)
    if m.shape not in ((2, 2), (4, 4)):
        raise ValueError(f"unitarity_defect expects 2x2 or 4x4, got {m.shape}")
    _require_finite(m, "unitarity_defect input")
    eye = np.eye(m.shape[0], dtype=complex)
    return float(np.abs(m.conj().T @ m - eye).max())


def norm(v: np.ndarray) -> float:
    """Euclidean norm of a state vector."""
    v = state4(v)
    return float(np.linalg.norm(v))
