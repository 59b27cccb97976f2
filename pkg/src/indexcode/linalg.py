"""Linear algebra over prime fields GF(p).

Vectors are plain tuples of ints in [0, p).  Everything here is exact
integer arithmetic; matrices never exceed a handful of rows and columns,
so dense Gaussian elimination in pure Python is both simple and fast
enough.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

Vector = tuple[int, ...]

#: Default modulus for randomized constructions.  Large enough that the
#: failure probability of any single random draw is negligible, small
#: enough that intermediates stay comfortably inside machine words.
DEFAULT_PRIME = 2**31 - 1


class LinalgError(ValueError):
    pass


def is_prime(p: int) -> bool:
    """Trial-division primality check; fine for the moduli used here."""
    if p < 2:
        return False
    for d in range(2, int(math.isqrt(p)) + 1):
        if p % d == 0:
            return False
    return True


def _check_lengths(vectors: list[Vector] | tuple[Vector, ...]) -> None:
    lengths = {len(v) for v in vectors}
    if len(lengths) > 1:
        raise LinalgError(f"vectors have mixed lengths: {sorted(lengths)}")


def rref(rows: list[Vector] | list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of ``rows`` over GF(p).

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped from
    the output, so ``len(reduced_rows) == len(pivot_columns) == rank``.
    """
    if not rows:
        return [], []
    _check_lengths(list(rows))
    mat = [[x % p for x in row] for row in rows]
    ncols = len(mat[0])
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(row, len(mat)) if mat[r][col]), None)
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        inv = pow(mat[row][col], -1, p)
        mat[row] = [(x * inv) % p for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                factor = mat[r][col]
                mat[r] = [(a - factor * b) % p for a, b in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat[: len(pivots)], pivots


def rank(vectors: list[Vector] | tuple[Vector, ...], p: int) -> int:
    """Rank of the span of ``vectors`` over GF(p); the empty list has rank 0."""
    return len(rref(list(vectors), p)[1])


def reduce_against(v: Vector, reduced_rows: list[list[int]], pivots: list[int], p: int) -> list[int]:
    """Residue of ``v`` after elimination against an RREF basis."""
    res = [x % p for x in v]
    for row, col in zip(reduced_rows, pivots):
        if res[col]:
            factor = res[col]
            res = [(a - factor * b) % p for a, b in zip(res, row)]
    return res


def in_span(v: Vector, vectors: list[Vector] | tuple[Vector, ...], p: int) -> bool:
    """True iff ``v`` lies in the span of ``vectors`` over GF(p).

    The span of the empty list is the zero space, so the zero vector is in
    every span and nothing else is in the empty one.
    """
    vs = list(vectors)
    if vs:
        _check_lengths(vs + [v])
    reduced, pivots = rref(vs, p)
    return not any(reduce_against(v, reduced, pivots, p))


def nullspace(rows: list[Vector] | tuple[Vector, ...], length: int, p: int) -> list[Vector]:
    """Basis of ``{u : row . u = 0 for every row}`` over GF(p)."""
    reduced, pivots = rref(list(rows), p)
    free_cols = [c for c in range(length) if c not in pivots]
    basis: list[Vector] = []
    for free in free_cols:
        u = [0] * length
        u[free] = 1
        for row, col in zip(reduced, pivots):
            u[col] = (-row[free]) % p
        basis.append(tuple(u))
    return basis


def invert_matrix(rows: list[Vector] | list[list[int]], p: int) -> list[list[int]]:
    """Inverse of a square matrix over GF(p) via Gauss-Jordan."""
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise LinalgError("matrix is not square")
    aug = [[x % p for x in row] + [int(i == j) for j in range(m)] for i, row in enumerate(rows)]
    reduced, pivots = rref(aug, p)
    if pivots != list(range(m)):
        raise LinalgError("matrix is singular")
    return [row[m:] for row in reduced]


def mat_vec(rows: list[Vector] | list[list[int]], v: Vector, p: int) -> Vector:
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in rows)


def extend_to_basis(vectors: list[Vector], length: int, p: int) -> list[Vector]:
    """Extend ``vectors`` to a full basis of GF(p)^length with unit vectors."""
    basis = list(vectors)
    for i in range(length):
        if len(basis) == length:
            break
        unit = tuple(int(j == i) for j in range(length))
        if not in_span(unit, basis, p):
            basis.append(unit)
    if rank(basis, p) != length:
        raise LinalgError("could not extend to a full basis")
    return basis


@dataclass(frozen=True)
class SubspaceBasis:
    """A set of linearly independent vectors spanning a subspace."""

    basis: tuple[Vector, ...]
    dim: int


def random_vector(length: int, p: int, rng: random.Random) -> Vector:
    """Uniform vector from GF(p)^length.

    Determinism contract: entries are drawn left to right with
    ``rng.randrange(p)``, so a seeded ``random.Random`` reproduces draws
    bit for bit.
    """
    return tuple(rng.randrange(p) for _ in range(length))


def random_nonzero_vector(length: int, p: int, rng: random.Random, max_attempts: int = 64) -> Vector:
    for _ in range(max_attempts):
        v = random_vector(length, p, rng)
        if any(v):
            return v
    raise LinalgError(f"no nonzero vector after {max_attempts} draws (p={p})")


def random_subspace_basis(
    length: int, dim: int, p: int, rng: random.Random, max_attempts: int = 64
) -> SubspaceBasis:
    """Draw ``dim`` random vectors, retrying until they are independent.

    At any reasonable modulus a single retry is already unlikely; the cap
    exists so a caller passing a tiny field gets an error instead of a
    spin.
    """
    if not 1 <= dim <= length:
        raise LinalgError(f"need 1 <= dim <= length, got dim={dim}, length={length}")
    for _ in range(max_attempts):
        candidate = [random_vector(length, p, rng) for _ in range(dim)]
        if rank(candidate, p) == dim:
            return SubspaceBasis(tuple(candidate), dim)
    raise LinalgError(f"no rank-{dim} basis after {max_attempts} draws (p={p})")


def random_vector_in_span(
    basis: SubspaceBasis, p: int, rng: random.Random, nonzero: bool = True, max_attempts: int = 64
) -> Vector:
    """Random combination of the basis vectors; optionally retried until nonzero."""
    length = len(basis.basis[0])
    for _ in range(max_attempts):
        coeffs = [rng.randrange(p) for _ in basis.basis]
        v = tuple(
            sum(c * b[i] for c, b in zip(coeffs, basis.basis)) % p for i in range(length)
        )
        if not nonzero or any(v):
            return v
    raise LinalgError(f"no nonzero span vector after {max_attempts} draws (p={p})")
