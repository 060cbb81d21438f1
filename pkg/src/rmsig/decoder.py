"""Recursive closest-coset decoding of RM codes, with erasure support.

Soft values are int8 in {-1, 0, +1}: +1 means bit 0, -1 means bit 1,
and 0 marks an erasure.  Decoding works on the raw evaluation ordering
of the code; the syndrome entry points below translate from a code's
systematic column order.

The recursion follows the (u | u+v) split over the last variable.  The
v half is decoded first from the componentwise product of the two
halves (sign = XOR estimate, zero propagates erasure), then the u half
from the componentwise sum of the first half and the v-corrected second
half, clipped back to sign (a zero sum becomes an erasure).  Base
cases: order 0 decodes by majority vote over non-erased positions,
order m by componentwise hard decision, and order 1 by exact maximum
likelihood using a fast Hadamard transform of the soft values.

Every tie breaks deterministically: majority ties and zero Hadamard
peaks go to the zero codeword, equal Hadamard magnitudes go to the
smallest coefficient index, and erasures harden to bit 0.

All routines run on whole batches (rows = independent words); every
step is componentwise per row, so batched and one-at-a-time decoding
give identical answers.
"""

from __future__ import annotations

import numpy as np

from . import gf2
from .modcode import ModifiedCode
from .rmcode import RmCode


def to_soft(bits: np.ndarray) -> np.ndarray:
    """Map hard bits to soft values (+1 for 0, -1 for 1)."""
    return (1 - 2 * np.asarray(bits, dtype=np.int8)).astype(np.int8)


def to_hard(soft: np.ndarray) -> np.ndarray:
    """Hard decision; erasures become bit 0."""
    return (np.asarray(soft) < 0).astype(np.uint8)


def _hadamard_rows(soft: np.ndarray) -> np.ndarray:
    y = soft.astype(np.int32)
    rows, n = y.shape
    h = 1
    while h < n:
        y = y.reshape(rows, -1, 2 * h)
        left = y[:, :, :h].copy()
        right = y[:, :, h:]
        y[:, :, :h] = left + right
        y[:, :, h:] = left - right
        y = y.reshape(rows, n)
        h *= 2
    return y


def _decode_order1(m: int, soft: np.ndarray) -> np.ndarray:
    # ML for RM(1, m): correlate against every affine form via Hadamard.
    spectrum = _hadamard_rows(soft)
    peak_at = np.argmax(np.abs(spectrum), axis=1)
    peak = spectrum[np.arange(soft.shape[0]), peak_at]
    points = np.arange(1 << m, dtype=np.uint32)
    words = (np.bitwise_count(points[None, :] & peak_at[:, None].astype(np.uint32)) & 1)
    return (words ^ (peak < 0)[:, None]).astype(np.uint8)


def _decode(m: int, r: int, soft: np.ndarray) -> np.ndarray:
    if r == 0:
        totals = soft.sum(axis=1, dtype=np.int64)
        bits = (totals < 0).astype(np.uint8)
        return np.repeat(bits[:, None], 1 << m, axis=1)
    if r == m:
        return to_hard(soft)
    if r == 1:
        return _decode_order1(m, soft)
    half = 1 << (m - 1)
    y1, y2 = soft[:, :half], soft[:, half:]
    v = _decode(m - 1, r - 1, y1 * y2)
    flip = (1 - 2 * v).astype(np.int8)
    u = _decode(m - 1, r, np.sign(y1 + y2 * flip).astype(np.int8))
    return np.concatenate([u, u ^ v], axis=1)


def decode_closest(m: int, r: int, soft: np.ndarray) -> np.ndarray:
    """Closest-coset decode soft word(s) against RM(r, m).

    Accepts one word or a batch (rows).  Returns codeword(s) in
    evaluation order, for any input (including all-erased).  Exact ML
    whenever r <= 1 or r == m.
    """
    soft = np.asarray(soft, dtype=np.int8)
    single = soft.ndim == 1
    if single:
        soft = soft[None, :]
    if soft.ndim != 2 or soft.shape[1] != 1 << m:
        raise ValueError(f"soft word length {soft.shape[-1]} != 2**{m}")
    out = _decode(m, r, soft)
    return out[0] if single else out


def coset_leaders(code: RmCode, syndromes: np.ndarray) -> np.ndarray:
    """Batch form of syndrome_to_coset_leader: one syndrome per row."""
    syndromes = np.atleast_2d(np.asarray(syndromes, dtype=np.uint8))
    if syndromes.shape[1] != code.n - code.k:
        raise ValueError(
            f"syndrome length {syndromes.shape[1]} != n-k = {code.n - code.k}"
        )
    v = np.zeros((syndromes.shape[0], code.n), dtype=np.uint8)
    v[:, code.k :] = syndromes
    soft_eval = np.empty((syndromes.shape[0], code.n), dtype=np.int8)
    soft_eval[:, code.info_perm] = to_soft(v)
    cw = _decode(code.m, code.r, soft_eval)[:, code.info_perm]
    return v ^ cw


def syndrome_to_coset_leader(code: RmCode, s: np.ndarray) -> np.ndarray:
    """Minimum-weight error for syndrome s, as found by the decoder.

    Starts from v = [0_k | s], which satisfies H v = s in systematic
    form, decodes v against the code and returns e = v + c.  The result
    always satisfies H e = s; the weight is exactly minimal whenever
    the decoder is ML for the code.
    """
    s = np.asarray(s, dtype=np.uint8)
    if s.ndim != 1:
        raise ValueError("expected a single syndrome; use coset_leaders for batches")
    return coset_leaders(code, s[None, :])[0]


def punctured_coset_leaders(mod: ModifiedCode, s_tops: np.ndarray) -> np.ndarray:
    """Batch form of punctured_syndrome_decode: one syndrome per row."""
    base = mod.base
    s_tops = np.atleast_2d(np.asarray(s_tops, dtype=np.uint8))
    top = base.n - base.k - mod.p
    if s_tops.shape[1] != top:
        raise ValueError(f"syndrome length {s_tops.shape[1]} != n-k-p = {top}")
    rows = s_tops.shape[0]
    v = np.zeros((rows, base.n), dtype=np.uint8)
    v[:, mod.kept_cols] = s_tops
    soft = to_soft(v)
    soft[:, mod.deleted] = 0
    soft_eval = np.empty((rows, base.n), dtype=np.int8)
    soft_eval[:, base.info_perm] = soft
    cw = _decode(base.m, base.r, soft_eval)[:, base.info_perm]
    unp = mod.unpunctured_cols
    err = v[:, unp] ^ cw[:, unp]
    check = gf2.mat_mul(err[:, : base.k], mod.P_kept) ^ err[:, base.k :]
    if not np.array_equal(check, s_tops):
        raise AssertionError("punctured decode violated H_p e = s_top")
    return err


def punctured_syndrome_decode(mod: ModifiedCode, s_top: np.ndarray) -> np.ndarray:
    """Decode the punctured code through its parent with erasures.

    s_top is the syndrome of the punctured parity check [P'^T | I].
    The deleted positions enter the parent decode as erasures; the
    returned error covers the n-p unpunctured positions and satisfies
    H_p e = s_top exactly (checked).
    """
    s_top = np.asarray(s_top, dtype=np.uint8)
    if s_top.ndim != 1:
        raise ValueError("expected a single syndrome; use punctured_coset_leaders")
    return punctured_coset_leaders(mod, s_top[None, :])[0]
