"""Dense GF(2) linear algebra on numpy uint8 arrays.

Vectors are 1-D and matrices 2-D uint8 arrays with entries in {0, 1};
addition is XOR.  Gaussian elimination runs on bit-packed rows, so the
largest generator matrices in this package (2510 x 4096) reduce in well
under a second.  Matrix products go through float64 BLAS, which is exact
for the inner dimensions used here (sums stay far below 2**52).

Bit packing convention, fixed for all serialized forms: row-major, each
row padded to a whole number of bytes, MSB-first within a byte (bit j of
a row lives in byte j//8 at mask 128 >> (j % 8)).
"""

from __future__ import annotations

import numpy as np


class SingularError(ValueError):
    """Matrix has no inverse over GF(2)."""


class RankError(ValueError):
    """Requested pivot columns are linearly dependent."""


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.uint8)


def weight(v: np.ndarray) -> int:
    """Hamming weight (number of set positions)."""
    return int(np.count_nonzero(v))


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """GF(2) matrix product a @ b."""
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch for GF(2) product: {a.shape} x {b.shape}")
    prod = a.astype(np.float64) @ b.astype(np.float64)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


def mat_vec(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """GF(2) matrix-vector product a @ v for a 1-D vector."""
    a = np.asarray(a, dtype=np.uint8)
    v = np.asarray(v, dtype=np.uint8)
    if a.ndim != 2 or v.ndim != 1 or a.shape[1] != v.shape[0]:
        raise ValueError(f"shape mismatch for GF(2) product: {a.shape} x {v.shape}")
    prod = a.astype(np.float64) @ v.astype(np.float64)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


def rref(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2).

    Args:
        a: binary matrix, any shape.

    Returns:
        (R, pivot_cols): R is the fully reduced matrix (same shape),
        pivot_cols the ascending pivot column indices (len = rank).
    """
    a = np.ascontiguousarray(a, dtype=np.uint8)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return a.copy(), []
    packed = np.packbits(a, axis=1)
    pivots: list[int] = []
    rr = 0
    for col in range(cols):
        byte, mask = col >> 3, np.uint8(128 >> (col & 7))
        below = np.nonzero(packed[rr:, byte] & mask)[0]
        if below.size == 0:
            continue
        src = rr + int(below[0])
        if src != rr:
            packed[[rr, src]] = packed[[src, rr]]
        # Clear this column in every other row (full reduction).
        hit = np.nonzero(packed[:, byte] & mask)[0]
        hit = hit[hit != rr]
        if hit.size:
            packed[hit] ^= packed[rr]
        pivots.append(col)
        rr += 1
        if rr == rows:
            break
    out = np.unpackbits(packed, axis=1)[:, :cols]
    return out, pivots


def rank(a: np.ndarray) -> int:
    return len(rref(a)[1])


def invert(a: np.ndarray) -> np.ndarray:
    """Inverse of a square GF(2) matrix.

    Raises:
        SingularError: if a has no inverse.
    """
    a = np.asarray(a, dtype=np.uint8)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix is not square: {a.shape}")
    n = a.shape[0]
    aug = np.concatenate([a, identity(n)], axis=1)
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularError(f"{n}x{n} matrix is singular over GF(2)")
    return np.ascontiguousarray(red[:, n:])


def systematize(g: np.ndarray, info_set) -> tuple[np.ndarray, np.ndarray]:
    """Put a full-row-rank generator into systematic form [I_k | P].

    Columns listed in info_set are moved to the front (in the given
    order), all remaining columns follow in ascending index order, and
    the result is row reduced.

    Args:
        g: k x n binary matrix of full row rank k.
        info_set: k column indices to use as the information set.

    Returns:
        (sys, perm): sys = [I_k | P]; perm maps new column position to
        old column index (new column j is old column perm[j]).

    Raises:
        RankError: if the info_set columns are dependent (or g itself
        is rank deficient).
    """
    g = np.asarray(g, dtype=np.uint8)
    k, n = g.shape
    info = np.asarray(list(info_set), dtype=np.int64)
    if info.size != k:
        raise ValueError(f"info_set has {info.size} columns, need k={k}")
    mask = np.zeros(n, dtype=bool)
    mask[info] = True
    rest = np.nonzero(~mask)[0]
    perm = np.concatenate([info, rest])
    red, pivots = rref(g[:, perm])
    if pivots != list(range(k)):
        raise RankError("information set columns are linearly dependent")
    return red, perm


def random_bits(shape, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, 2, size=shape, dtype=np.uint8)


def random_invertible(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random invertible n x n matrix, deterministic per rng state.

    Built as a product of random unit lower- and upper-triangular
    factors, so no rejection loop is needed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lo = np.tril(random_bits((n, n), rng), -1) | identity(n)
    up = np.triu(random_bits((n, n), rng), 1) | identity(n)
    return mat_mul(lo, up)


def perm_matrix(sigma: np.ndarray) -> np.ndarray:
    """Permutation matrix Q with Q[i, sigma[i]] = 1, so (Q v)[i] = v[sigma[i]]."""
    sigma = np.asarray(sigma, dtype=np.int64)
    n = sigma.shape[0]
    q = np.zeros((n, n), dtype=np.uint8)
    q[np.arange(n), sigma] = 1
    return q


def random_permutation(n: int, rng: np.random.Generator) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be >= 1")
    return perm_matrix(rng.permutation(n))


def pack_bits(a: np.ndarray) -> bytes:
    """Pack a vector or matrix row-major, each row byte-padded, MSB first."""
    a = np.atleast_2d(np.asarray(a, dtype=np.uint8))
    return np.packbits(a, axis=1).tobytes()


def unpack_matrix(buf: bytes, rows: int, cols: int) -> np.ndarray:
    row_bytes = (cols + 7) // 8
    if len(buf) != rows * row_bytes:
        raise ValueError(f"expected {rows * row_bytes} packed bytes, got {len(buf)}")
    flat = np.frombuffer(buf, dtype=np.uint8).reshape(rows, row_bytes)
    return np.unpackbits(flat, axis=1)[:, :cols].copy()


def unpack_word(buf: bytes, n: int) -> np.ndarray:
    return unpack_matrix(buf, 1, n)[0]


def packed_size(rows: int, cols: int) -> int:
    return rows * ((cols + 7) // 8)
