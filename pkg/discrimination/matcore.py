"""Dense complex-matrix kernel for the small operators of this project.

Operators (density matrices, POVM elements, unitaries) are complex ``numpy``
arrays of dimension at most ``MAX_DIM``; state vectors are 1-d complex arrays.
Tensor products use a-major index order: for ``u`` on port a and ``v`` on
port b, entry ``(i, j)`` of the product sits at index ``i * dim(v) + j``.
"""
from django.core.exceptions import ValidationError
import numpy as np

from .lookups import DEFAULT_TOL, MAX_DIM, ERROR_CONTRACT, ERROR_DIMENSION

IDENTITY_2 = np.eye(2, dtype=complex)


def frozen(array):
    """Return a read-only complex copy of ``array``."""
    out = np.array(array, dtype=complex)
    out.flags.writeable = False
    return out


def as_cmat(A):
    """Coerce to a square complex matrix no larger than MAX_DIM."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"Expected a square matrix, got shape {A.shape}", code=ERROR_CONTRACT)
    if A.shape[0] > MAX_DIM:
        raise ValidationError(f"Matrix dimension {A.shape[0]} exceeds the maximum of {MAX_DIM}", code=ERROR_DIMENSION)
    return A


def as_cvec(v):
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValidationError(f"Expected a vector, got shape {v.shape}", code=ERROR_CONTRACT)
    if v.shape[0] > MAX_DIM:
        raise ValidationError(f"Vector dimension {v.shape[0]} exceeds the maximum of {MAX_DIM}", code=ERROR_DIMENSION)
    return v


def adjoint(A):
    return np.conj(np.asarray(A)).T


def trace(A):
    return complex(np.trace(A))


def max_norm(A):
    """Largest absolute entry."""
    A = np.asarray(A)
    return float(np.max(np.abs(A))) if A.size else 0.0


def is_hermitian(A, tol=DEFAULT_TOL):
    A = as_cmat(A)
    return max_norm(A - adjoint(A)) <= tol


def projector(v):
    """Return ``|v><v|`` (not normalised, so ``λ|a><a|`` is ``projector(sqrt(λ) a)``)."""
    v = as_cvec(v)
    return np.outer(v, np.conj(v))


def tensor(u, v):
    """Tensor product of two vectors in a-major order."""
    return np.kron(as_cvec(u), as_cvec(v))


def tensor_op(A, B):
    """Tensor product of two operators in a-major order."""
    out = np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))
    return as_cmat(out)


def real_rotation(angle):
    """2x2 rotation turning the real direction (cos t, sin t) into (cos(t+angle), sin(t+angle)),
    i.e. exp(-i angle sigma_y).
    """
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def real_direction(angle):
    return np.array([np.cos(angle), np.sin(angle)], dtype=complex)


def hermitian_eigen(A, tol=DEFAULT_TOL):
    """Full spectral decomposition of a hermitian matrix.

    Returns a list of ``(eigenvalue, eigenvector)`` pairs ordered by descending
    eigenvalue; the eigenvectors are orthonormal columns of a unitary.
    """
    A = as_cmat(A)
    if not is_hermitian(A, tol):
        raise ValidationError(
            f"Matrix is not hermitian within {tol} (max deviation {max_norm(A - adjoint(A)):.3g})",
            code=ERROR_CONTRACT,
        )
    # Symmetrise so rounding noise below tol does not leak into eigh.
    values, vectors = np.linalg.eigh((A + adjoint(A)) / 2)
    order = np.argsort(values)[::-1]
    return [(float(values[i]), vectors[:, i].copy()) for i in order]


def min_eigenvalue(A, tol=DEFAULT_TOL):
    return hermitian_eigen(A, tol)[-1][0]


def is_psd(A, tol=DEFAULT_TOL):
    """True iff the hermitian matrix has no eigenvalue below -tol."""
    return min_eigenvalue(A, tol) >= -tol


def reconstruct(eigenpairs):
    """Inverse of ``hermitian_eigen``."""
    dim = len(eigenpairs[0][1])
    out = np.zeros((dim, dim), dtype=complex)
    for value, vector in eigenpairs:
        out += value * projector(vector)
    return out
