"""Calibration of (w, N) and security estimation for the signature scheme.

Calibration decodes a stream of uniform random syndromes and records the
coset-leader weights; the resulting histogram feeds the closed form
P(success) = 1 - P(X > w)^N used to pick signing parameters.  The
forgery estimator evaluates sum_{i<=w} C(n-k, i) / 2^(n-k) in exact
integer arithmetic, since the interesting values live far below double
precision underflow.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Union

import numpy as np

from . import gf2
from .decoder import coset_leaders, punctured_coset_leaders
from .modcode import ModifiedCode
from .rmcode import RmCode
from .scheme import PublicKey, Signature, SigningParams, hash_to_syndrome, verify

_CHUNK = 1024


class NoFeasibleParams(ValueError):
    """No (w, N) candidate reaches the target success probability."""


@dataclass(frozen=True)
class WeightDistribution:
    """Histogram of decoded error weights for one code."""

    code_id: str
    samples: int
    histogram: dict[int, int]
    t: int

    @property
    def min_weight(self) -> int:
        return min(self.histogram)

    def prob_gt(self, w: int) -> float:
        tail = sum(c for wt, c in self.histogram.items() if wt > w)
        return tail / self.samples

    def to_csv(self) -> str:
        lines = ["weight,count"]
        lines += [f"{wt},{self.histogram[wt]}" for wt in sorted(self.histogram)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SecurityEstimate:
    """Exact forgery probability sum_{i<=w} C(n-k, i) / 2^(n-k)."""

    n: int
    k: int
    w: int
    prob: Fraction
    log2_prob: float


def _decode_weights(code: Union[RmCode, ModifiedCode], syndromes: np.ndarray) -> np.ndarray:
    """Decoded error weight per syndrome row, via the full signing path
    for a modified code and the plain coset-leader path otherwise."""
    if isinstance(code, ModifiedCode):
        top = code.n - code.k - code.p
        e_nps = punctured_coset_leaders(code, syndromes[:, :top])
        e_ps = syndromes[:, top:] ^ gf2.mat_mul(e_nps, code.R.T)
        return e_nps.sum(axis=1, dtype=np.int64) + e_ps.sum(axis=1, dtype=np.int64)
    return coset_leaders(code, syndromes).sum(axis=1, dtype=np.int64)


def _calibrate_chunk(code, seed: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    n_k = code.n - code.k
    return _decode_weights(code, rng.integers(0, 2, size=(count, n_k), dtype=np.uint8))


def _code_id(code: Union[RmCode, ModifiedCode]) -> str:
    if isinstance(code, ModifiedCode):
        base = code.base
        return f"RM(m={base.m},r={base.r})/p={code.p}"
    return f"RM(m={code.m},r={code.r})"


def calibrate(
    code: Union[RmCode, ModifiedCode],
    samples: int,
    rng: np.random.Generator,
    exhaustive: bool = False,
    workers: int = 1,
) -> WeightDistribution:
    """Decode random (or, exhaustively, all) syndromes and tally weights.

    A plain code goes through syndrome_to_coset_leader; a modified code
    goes through the full signing path including the inserted block.
    Chunk seeds are drawn once from rng, so the histogram is identical
    for any worker count.
    """
    base = code.base if isinstance(code, ModifiedCode) else code
    if exhaustive:
        n_k = code.n - code.k
        if n_k > 24:
            raise ValueError("exhaustive calibration is limited to n-k <= 24")
        shifts = np.arange(n_k, dtype=np.uint32)
        all_synd = ((np.arange(1 << n_k, dtype=np.uint32)[:, None] >> shifts) & 1).astype(
            np.uint8
        )
        hist_arr = np.bincount(_decode_weights(code, all_synd))
        samples = 1 << n_k
    else:
        if samples < 1:
            raise ValueError("samples must be >= 1")
        counts = [
            min(_CHUNK, samples - start) for start in range(0, samples, _CHUNK)
        ]
        seeds = rng.integers(0, 2**63, size=len(counts))
        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(
                    pool.map(_calibrate_chunk, [code] * len(counts), seeds, counts)
                )
        else:
            parts = [_calibrate_chunk(code, s, c) for s, c in zip(seeds, counts)]
        hist_arr = np.bincount(np.concatenate(parts))
    histogram = {int(w): int(c) for w, c in enumerate(hist_arr) if c}
    return WeightDistribution(
        code_id=_code_id(code), samples=samples, histogram=histogram, t=base.t
    )


def success_probability(dist: WeightDistribution, w: int, n_trials: int) -> float:
    """Closed-form P(min of N i.i.d. draws <= w) = 1 - q^N."""
    if n_trials < 1:
        raise ValueError("N must be >= 1")
    return 1.0 - dist.prob_gt(w) ** n_trials


def choose_params(dist: WeightDistribution, target_success: float, candidates):
    """Smallest w (then smallest N) whose success probability meets target."""
    grid = sorted(set((int(w), int(n)) for w, n in candidates))
    if not grid:
        raise NoFeasibleParams("empty candidate grid")
    for w, n in grid:
        if success_probability(dist, w, n) >= target_success:
            return SigningParams(w=w, N=n, t=dist.t)
    raise NoFeasibleParams(
        f"no (w, N) in grid reaches success probability {target_success}"
    )


def _exact_log2(numer: int, denom_bits: int) -> float:
    # log2 of numer / 2^denom_bits without ever forming a float overflow.
    bits = numer.bit_length()
    top = numer >> max(bits - 64, 0) if bits > 64 else numer
    frac = np.log2(float(top)) + max(bits - 64, 0)
    return float(frac - denom_bits)


def forgery_probability(n: int, k: int, w: int) -> SecurityEstimate:
    """Exact probability that a uniform syndrome has weight <= w."""
    n_k = n - k
    if not 0 <= w <= n_k:
        raise ValueError(f"need 0 <= w <= n-k, got w={w}, n-k={n_k}")
    total = sum(comb(n_k, i) for i in range(w + 1))
    return SecurityEstimate(
        n=n,
        k=k,
        w=w,
        prob=Fraction(total, 1 << n_k),
        log2_prob=_exact_log2(total, n_k),
    )


def systematic_attack_transform(h_pub: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduce H' so an identity block sits on a chosen column set.

    Prefers the rightmost n-k columns (the natural [H0 | I] shape) and
    falls back to earlier columns wherever that block is rank deficient.
    Returns (T, cols) with (T @ H')[:, cols] = I, cols in pivot order.
    """
    n_k, n = h_pub.shape
    aug = np.concatenate([h_pub, gf2.identity(n_k)], axis=1)
    # Scan parity-block columns first, then the rest, then the augmented part.
    order = list(range(n - n_k, n)) + list(range(n - n_k)) + list(range(n, n + n_k))
    red, piv = gf2.rref(aug[:, order])
    if len(piv) < n_k or piv[n_k - 1] >= n:
        raise gf2.RankError("public check matrix is rank deficient")
    cols = np.asarray(order, dtype=np.int64)[piv[:n_k]]
    # Row ops applied to the identity block accumulate the transform.
    return red[:, n:].copy(), cols


def naive_forgery_attack(
    pub: PublicKey,
    message: bytes,
    trials: int,
    rng: np.random.Generator,
) -> float:
    """Empirical success rate of the zero-information-part forgery.

    Each trial hashes a random counter, writes the reduced syndrome
    into the identity columns and succeeds when the weight bound holds.
    Every success is cross-checked through verify().
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    transform, cols = systematic_attack_transform(pub.H)
    assert np.array_equal(gf2.mat_mul(transform, pub.H[:, cols]), gf2.identity(len(cols)))
    successes = 0
    n_k = pub.H.shape[0]
    for _ in range(trials):
        i = int(rng.integers(1, 2**62))
        s = hash_to_syndrome(message, i, n_k)
        z_red = gf2.mat_vec(transform, s)
        if gf2.weight(z_red) <= pub.params.w:
            z = np.zeros(pub.n, dtype=np.uint8)
            z[cols] = z_red
            if not verify(pub, message, Signature(e=z, i=i)):
                raise AssertionError("forged signature failed verification")
            successes += 1
    return successes / trials
