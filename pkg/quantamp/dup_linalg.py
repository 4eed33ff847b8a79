"""
Doubled-up matrix algebra.

Linear quantum systems act on annihilation and creation operators together,
so every coefficient matrix has the block form

    Δ(X1, X2) = [[X1,  X2 ],
                 [X2#, X1#]]

where # is the elementwise conjugate. This module stores such matrices by
their top block row, provides the J metric and the checks built on it, and
encodes matrices for the JSON artifacts written by the CLI.
"""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from quantamp.errors import ArtifactParseError, ContractError, DimensionError

# Frobenius norm is used for every residual in the package
DEFAULT_TOL = 1e-10


def _as_complex_2d(value: Any, name: str) -> np.ndarray:
    array = np.array(value, dtype=complex)
    if array.ndim == 0:
        array = array.reshape(1, 1)
    if array.ndim != 2:
        raise DimensionError(f"{name} must be a 2-D matrix, got {array.ndim} dimensions")
    if array.shape[0] < 1 or array.shape[1] < 1:
        raise DimensionError(f"{name} must not be empty")
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class DoubledUpMatrix:
    """Δ(block1, block2); only the top block row is stored"""

    block1: np.ndarray
    block2: np.ndarray

    def __post_init__(self):
        block1 = _as_complex_2d(self.block1, "block1")
        block2 = _as_complex_2d(self.block2, "block2")
        if block1.shape != block2.shape:
            raise DimensionError(
                f"blocks must share a shape, got {block1.shape} and {block2.shape}"
            )
        object.__setattr__(self, "block1", block1)
        object.__setattr__(self, "block2", block2)

    @property
    def shape(self):
        """Block shape (n, m); the full matrix is 2n x 2m"""
        return self.block1.shape

    @property
    def full_shape(self):
        n, m = self.shape
        return 2 * n, 2 * m

    def expand(self) -> np.ndarray:
        return delta_expand(self)

    def dagger(self) -> "DoubledUpMatrix":
        # Δ(X1, X2)† = Δ(X1†, X2ᵀ)
        return DoubledUpMatrix(self.block1.conj().T, self.block2.T)

    def __matmul__(self, other: "DoubledUpMatrix") -> "DoubledUpMatrix":
        return delta_product(self, other)

    @classmethod
    def identity(cls, n: int) -> "DoubledUpMatrix":
        return cls(np.eye(n), np.zeros((n, n)))

    @classmethod
    def zeros(cls, n: int, m: int) -> "DoubledUpMatrix":
        return cls(np.zeros((n, m)), np.zeros((n, m)))

    @classmethod
    def passive(cls, S: Any) -> "DoubledUpMatrix":
        """Δ(S, 0), the doubled-up form of a passive (number preserving) map"""
        S = _as_complex_2d(S, "S")
        return cls(S, np.zeros_like(S))


def delta_expand(d: DoubledUpMatrix) -> np.ndarray:
    """Full 2n x 2m matrix of a doubled-up matrix"""
    return np.block([
        [d.block1, d.block2],
        [d.block2.conj(), d.block1.conj()],
    ])


def delta_extract(full: Any, tol: float = DEFAULT_TOL) -> DoubledUpMatrix:
    """Recover the Δ blocks of a full matrix, checking its conjugate structure"""
    full = np.asarray(full, dtype=complex)
    if full.ndim != 2:
        raise DimensionError("doubled-up matrix must be 2-D")
    rows, cols = full.shape
    if rows % 2 or cols % 2:
        raise DimensionError(f"doubled-up matrix needs even dimensions, got {full.shape}")
    n, m = rows // 2, cols // 2
    # a Δ-form matrix is fixed by X -> Σ conj(X) Σ; each block mismatch appears twice
    mismatch = np.linalg.norm(full - swap_matrix(n) @ full.conj() @ swap_matrix(m)) / np.sqrt(2)
    scale = max(1.0, np.linalg.norm(full))
    if mismatch > tol * scale:
        raise ContractError(f"matrix is not of doubled-up form (structure residual {mismatch:.3e})")
    return DoubledUpMatrix(full[:n, :m], full[:n, m:])


def delta_product(a: DoubledUpMatrix, b: DoubledUpMatrix) -> DoubledUpMatrix:
    """Product of two doubled-up matrices, computed on the blocks"""
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply blocks of shape {a.shape} and {b.shape}")
    return DoubledUpMatrix(
        a.block1 @ b.block1 + a.block2 @ b.block2.conj(),
        a.block1 @ b.block2 + a.block2 @ b.block1.conj(),
    )


def j_matrix(n: int) -> np.ndarray:
    """J = diag(I_n, -I_n)"""
    if n < 1:
        raise DimensionError("J needs a positive half-dimension")
    return np.diag(np.concatenate([np.ones(n), -np.ones(n)])).astype(complex)


def swap_matrix(n: int) -> np.ndarray:
    """[[0, I_n], [I_n, 0]], exchanging the plain and conjugate halves"""
    eye, zero = np.eye(n), np.zeros((n, n))
    return np.block([[zero, eye], [eye, zero]]).astype(complex)


def bogoliubov_residual(Gbar: Any) -> float:
    """Frobenius norm of Gbar† J Gbar - J; zero exactly when Gbar is symplectic"""
    Gbar = np.asarray(Gbar, dtype=complex)
    if Gbar.ndim != 2 or Gbar.shape[0] != Gbar.shape[1]:
        raise DimensionError(f"symplectic check needs a square matrix, got {Gbar.shape}")
    if Gbar.shape[0] % 2:
        raise DimensionError(f"symplectic check needs an even dimension, got {Gbar.shape[0]}")
    J = j_matrix(Gbar.shape[0] // 2)
    return float(np.linalg.norm(Gbar.conj().T @ J @ Gbar - J))


def channel_permutation(m: int) -> np.ndarray:
    """
    Permutation from grouped ordering (c1..cm, c1*..cm*) to per-channel
    ordering ((c1, c1*), ..., (cm, cm*)).

    Orthogonal for every m; for m <= 2 it is also its own inverse.
    """
    if m < 1:
        raise DimensionError("channel permutation needs m >= 1")
    P = np.zeros((2 * m, 2 * m), dtype=complex)
    for k in range(m):
        P[2 * k, k] = 1.0
        P[2 * k + 1, m + k] = 1.0
    return P


def is_unitary(S: Any, tol: float = DEFAULT_TOL) -> bool:
    S = np.asarray(S, dtype=complex)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        return False
    return bool(np.linalg.norm(S.conj().T @ S - np.eye(S.shape[0])) <= tol)


def is_hermitian(X: Any, tol: float = DEFAULT_TOL) -> bool:
    X = np.asarray(X, dtype=complex)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        return False
    return bool(np.linalg.norm(X - X.conj().T) <= tol * max(1.0, np.linalg.norm(X)))


def matrix_to_json(X: Any) -> Dict[str, Any]:
    """Encode a complex matrix as {rows, cols, re, im}"""
    X = np.atleast_2d(np.asarray(X, dtype=complex))
    return {
        "rows": int(X.shape[0]),
        "cols": int(X.shape[1]),
        "re": X.real.tolist(),
        "im": X.imag.tolist(),
    }


def matrix_from_json(data: Any, field: str = "matrix") -> np.ndarray:
    """Decode a {rows, cols, re, im} object, naming the offending field on failure"""
    if not isinstance(data, dict):
        raise ArtifactParseError(field, "expected an object with rows, cols, re, im")
    for key in ("rows", "cols", "re", "im"):
        if key not in data:
            raise ArtifactParseError(f"{field}.{key}", "missing")
    try:
        rows, cols = int(data["rows"]), int(data["cols"])
        re = np.array(data["re"], dtype=float)
        im = np.array(data["im"], dtype=float)
    except (TypeError, ValueError) as e:
        raise ArtifactParseError(field, f"non-numeric entries ({e})")
    for key, part in (("re", re), ("im", im)):
        if part.shape != (rows, cols):
            raise ArtifactParseError(
                f"{field}.{key}", f"expected shape ({rows}, {cols}), got {part.shape}"
            )
        if not np.all(np.isfinite(part)):
            raise ArtifactParseError(f"{field}.{key}", "non-finite entries")
    return re + 1j * im


def number_from_json(data: Any, key: Any, field: str = "", positive: bool = False) -> float:
    """data[key] as a finite float; failures name field.key"""
    name = f"{field}.{key}" if field else key
    try:
        value = float(data[key])
    except KeyError:
        raise ArtifactParseError(name, "missing")
    except (TypeError, ValueError):
        raise ArtifactParseError(name, "not a number")
    if not np.isfinite(value):
        raise ArtifactParseError(name, "not finite")
    if positive and value <= 0:
        raise ArtifactParseError(name, f"must be positive, got {value}")
    return value
