"""Puncturing plan and parity-check modification with random insertion.

The plan picks a minimum-weight codeword x, a minimum-weight word y of
the code projected onto supp(x), a puncture count p between wt(y) and
2*wt(y), and a deletion set of p columns containing supp(y) (extras
drawn from supp(x)).  After re-aligning the information set so every
deleted column sits in the parity part, the modified pair is

    H_m = [ P'^T  I_{n-k-p}  0   ]      G_m = [ I_k | P'' ]
          [ R               I_p ]

where P' is P minus the deleted columns, R is a uniform random p x
(n-p) block, and the p inserted columns of P'' are derived from R so
that G_m @ H_m.T = 0 holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import gf2
from .rmcode import (
    RmCode,
    _assemble,
    min_weight_codeword,
    min_weight_in_rowspace,
    proj,
    supp,
)


class PuncturePlan(NamedTuple):
    x: np.ndarray  # minimum-weight codeword, systematic order
    y: np.ndarray  # projected minimum-weight word written back into parent coordinates
    p: int
    deleted: np.ndarray  # sorted column indices, |deleted| = p, supp(y) included


@dataclass(frozen=True)
class ModifiedCode:
    """Punctured-plus-inserted code built over an aligned parent.

    Column order: k information positions, then the n-k-p kept parity
    positions of the parent, then the p inserted positions.
    """

    base: RmCode
    p: int
    deleted: np.ndarray  # parent parity columns removed, sorted, all >= k
    P_kept: np.ndarray  # parent P minus deleted columns, k x (n-k-p)
    R: np.ndarray  # random inserted rows' left block, p x (n-p)
    H: np.ndarray  # modified parity check, (n-k) x n
    G: np.ndarray  # modified generator [I_k | P''], k x n

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def kept_cols(self) -> np.ndarray:
        """Parent systematic columns that survive the puncturing (parity part)."""
        keep = np.ones(self.n, dtype=bool)
        keep[self.deleted] = False
        return np.nonzero(keep[self.base.k :])[0] + self.base.k

    @property
    def unpunctured_cols(self) -> np.ndarray:
        return np.concatenate([np.arange(self.base.k), self.kept_cols])

    @property
    def H_top(self) -> np.ndarray:
        """Parity check [P'^T | I] of the plain punctured code."""
        return self.H[: self.n - self.k - self.p, : self.n - self.p]


def puncture_plan(
    code: RmCode, rng: np.random.Generator, search_budget: int = 48
) -> PuncturePlan:
    """Choose the deletion set for a code of order r >= 1."""
    if code.r < 1:
        raise ValueError("puncturing needs r >= 1")
    x = min_weight_codeword(code, rng)
    sx = supp(x)
    y_proj = min_weight_in_rowspace(proj(code, sx), rng, budget=search_budget)
    y = np.zeros(code.n, dtype=np.uint8)
    y[sx[supp(y_proj)]] = 1
    wy = gf2.weight(y)
    p = int(rng.integers(wy, 2 * wy + 1))
    pool = np.setdiff1d(sx, supp(y))
    extra = p - wy
    if extra > pool.size:
        # Only reachable when the randomized search returned a word of
        # weight above d/2; top up from the remaining columns.
        outside = np.setdiff1d(np.arange(code.n), np.union1d(sx, supp(y)))
        pool = np.concatenate([pool, rng.permutation(outside)])
    chosen = rng.choice(pool, size=extra, replace=False) if extra else pool[:0]
    deleted = np.sort(np.concatenate([supp(y), chosen.astype(np.int64)]))
    return PuncturePlan(x=x, y=y, p=p, deleted=deleted)


def align_information_set(code: RmCode, deleted) -> tuple[RmCode, np.ndarray]:
    """Re-systematize so every deleted column lands in the parity part.

    Keeps the current column order wherever possible: the information
    set is chosen greedily from the non-deleted columns in ascending
    order, so a deletion set already inside the parity part leaves the
    code unchanged.  Returns the aligned code and the deletion set
    re-expressed in its column order.
    """
    deleted = np.asarray(sorted(deleted), dtype=np.int64)
    if code.n - deleted.size < code.k:
        raise gf2.RankError("too many deleted columns to keep a full information set")
    if deleted.size == 0 or deleted.min() >= code.k:
        return code, deleted
    allowed = np.setdiff1d(np.arange(code.n), deleted)
    _, piv = gf2.rref(code.G[:, allowed])
    if len(piv) < code.k:
        raise gf2.RankError("non-deleted columns do not contain an information set")
    info = allowed[piv]
    g_new, order = gf2.systematize(code.G, info)
    # Positions of the old columns inside the new order.
    inv = np.empty(code.n, dtype=np.int64)
    inv[order] = np.arange(code.n)
    new_code = _assemble(code.m, code.r, g_new, code.info_perm[order])
    return new_code, np.sort(inv[deleted])


def build_modified(code: RmCode, deleted, rng: np.random.Generator) -> ModifiedCode:
    """Assemble the modified pair for an aligned code and deletion set."""
    deleted = np.asarray(sorted(deleted), dtype=np.int64)
    n, k = code.n, code.k
    p = deleted.size
    if p and deleted.min() < k:
        raise ValueError("deletion set must lie in the parity part; align first")
    parity_keep = np.setdiff1d(np.arange(n - k), deleted - k)
    p_kept = code.P[:, parity_keep].copy()
    r_block = gf2.random_bits((p, n - p), rng)

    h_mod = np.zeros((n - k, n), dtype=np.uint8)
    h_mod[: n - k - p, :k] = p_kept.T
    h_mod[: n - k - p, k : n - p] = gf2.identity(n - k - p)
    h_mod[n - k - p :, : n - p] = r_block
    h_mod[n - k - p :, n - p :] = gf2.identity(p)

    # Inserted generator columns are forced by orthogonality with the R rows.
    inserted = r_block[:, :k].T ^ gf2.mat_mul(p_kept, r_block[:, k:].T)
    g_mod = np.concatenate([gf2.identity(k), p_kept, inserted], axis=1)

    for arr in (deleted, p_kept, r_block, h_mod, g_mod):
        arr.flags.writeable = False
    return ModifiedCode(
        base=code, p=int(p), deleted=deleted, P_kept=p_kept, R=r_block, H=h_mod, G=g_mod
    )
