"""Key generation, signing and verification over the modified code.

The private side holds a scrambling matrix S, a permutation (stored as
an index vector sigma, meaning row i of the matrix form has its 1 in
column sigma[i]) and the modified code.  The public check matrix is
H' = S @ H_m @ Q.

Hashing a message to a syndrome is fixed bit-exactly: the syndrome is
the first n-k bits of SHAKE256(SHAKE256(M, 32 bytes) || i as 8-byte
big-endian), bits taken MSB-first within each byte.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterator, Union

import numpy as np

from . import gf2
from .decoder import punctured_coset_leaders, punctured_syndrome_decode
from .modcode import ModifiedCode, align_information_set, build_modified, puncture_plan
from .rmcode import build

_XOFS = {"shake256": hashlib.shake_256, "shake128": hashlib.shake_128}
_INNER_DIGEST_BYTES = 32
KEYGEN_PLAN_RETRIES = 32


@dataclass(frozen=True)
class SigningParams:
    """Error weight bound w, trial limit N and correctability t."""

    w: int
    N: int
    t: int

    def __post_init__(self) -> None:
        if self.w < self.t:
            raise ValueError(f"w={self.w} below error correctability t={self.t}")
        if self.N < 1:
            raise ValueError("N must be >= 1")

    @property
    def delta(self) -> int:
        return self.w - self.t


@dataclass(frozen=True)
class PublicKey:
    m: int
    r: int
    H: np.ndarray  # public check matrix, (n-k) x n
    params: SigningParams

    @property
    def n(self) -> int:
        return self.H.shape[1]


@dataclass(frozen=True)
class PrivateKey:
    S: np.ndarray  # (n-k) x (n-k) invertible scrambler
    sigma: np.ndarray  # permutation indices; Q[i, sigma[i]] = 1
    mod: ModifiedCode
    params: SigningParams
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def S_inv(self) -> np.ndarray:
        if "S_inv" not in self._cache:
            self._cache["S_inv"] = gf2.invert(self.S)
        return self._cache["S_inv"]

    @property
    def Q(self) -> np.ndarray:
        return gf2.perm_matrix(self.sigma)


@dataclass(frozen=True)
class KeyPair:
    public: PublicKey
    private: PrivateKey


@dataclass(frozen=True)
class Signature:
    e: np.ndarray
    i: int


@dataclass(frozen=True)
class SigningExhausted:
    """All N trials exceeded the weight bound; raise N or w and retry."""

    trials: int
    best_weight: int


def hash_to_syndrome(
    message: bytes, i: int, out_bits: int, xof: str = "shake256"
) -> np.ndarray:
    """Map (message, counter) to a syndrome of exactly out_bits bits."""
    if i < 1:
        raise ValueError("counter must be >= 1")
    inner = _XOFS[xof](message).digest(_INNER_DIGEST_BYTES)
    return _syndrome_from_digest(inner, i, out_bits, xof)


def _syndrome_from_digest(inner: bytes, i: int, out_bits: int, xof: str) -> np.ndarray:
    stream = _XOFS[xof](inner + i.to_bytes(8, "big")).digest((out_bits + 7) // 8)
    bits = np.unpackbits(np.frombuffer(stream, dtype=np.uint8))
    return bits[:out_bits].copy()


def keygen(
    m: int, r: int, params: SigningParams, rng: np.random.Generator
) -> KeyPair:
    """Generate a key pair for RM(r, m), deterministic per rng state."""
    code = build(m, r)
    if params.t != code.t:
        raise ValueError(f"params.t={params.t} != code correctability {code.t}")
    last_err: Exception | None = None
    for _ in range(KEYGEN_PLAN_RETRIES):
        plan = puncture_plan(code, rng)
        try:
            aligned, deleted = align_information_set(code, plan.deleted)
        except gf2.RankError as err:  # re-sample the plan
            last_err = err
            continue
        break
    else:
        raise gf2.RankError(f"no alignable puncture plan found: {last_err}")
    mod = build_modified(aligned, deleted, rng)

    n, k = mod.n, mod.k
    scramble = gf2.random_invertible(n - k, rng)
    sigma = rng.permutation(n)
    sigma_inv = np.argsort(sigma)
    h_pub = np.ascontiguousarray(gf2.mat_mul(scramble, mod.H)[:, sigma_inv])
    for arr in (scramble, sigma, h_pub):
        arr.flags.writeable = False

    public = PublicKey(m=m, r=r, H=h_pub, params=params)
    private = PrivateKey(S=scramble, sigma=sigma, mod=mod, params=params)
    return KeyPair(public=public, private=private)


def signing_trials(
    priv: PrivateKey, message: bytes, limit: int | None = None, xof: str = "shake256"
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield (i, s_prime, e_prime) for successive counters.

    Each e_prime satisfies H_m @ e_prime = s_prime regardless of its
    weight; sign() keeps the first one within the weight bound.  This
    is the one-counter-at-a-time reference; sign() evaluates the same
    trials in batches.
    """
    mod = priv.mod
    n, k, p = mod.n, mod.k, mod.p
    top = n - k - p
    inner = _XOFS[xof](message).digest(_INNER_DIGEST_BYTES)
    s_inv = priv.S_inv
    limit = priv.params.N if limit is None else limit
    for i in range(1, limit + 1):
        s = _syndrome_from_digest(inner, i, n - k, xof)
        s_prime = gf2.mat_vec(s_inv, s)
        e_np = punctured_syndrome_decode(mod, s_prime[:top])
        e_p = s_prime[top:] ^ gf2.mat_vec(mod.R, e_np)
        yield i, s_prime, np.concatenate([e_np, e_p])


SIGN_BATCH = 64


def _trial_weights_batch(
    priv: PrivateKey, inner: bytes, first: int, count: int, xof: str
) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate counters first..first+count-1; return (e_primes, weights)."""
    mod = priv.mod
    n, k, p = mod.n, mod.k, mod.p
    top = n - k - p
    synd = np.stack(
        [_syndrome_from_digest(inner, i, n - k, xof) for i in range(first, first + count)]
    )
    s_primes = gf2.mat_mul(synd, priv.S_inv.T)
    e_nps = punctured_coset_leaders(mod, s_primes[:, :top])
    e_ps = s_primes[:, top:] ^ gf2.mat_mul(e_nps, mod.R.T)
    e_primes = np.concatenate([e_nps, e_ps], axis=1)
    return e_primes, e_primes.sum(axis=1, dtype=np.int64)


def sign(
    priv: PrivateKey, message: bytes, xof: str = "shake256"
) -> Union[Signature, SigningExhausted]:
    """Sign a message, returning the smallest successful counter.

    Returns SigningExhausted when none of the N trials stays within the
    weight bound.
    """
    inner = _XOFS[xof](message).digest(_INNER_DIGEST_BYTES)
    limit = priv.params.N
    best = priv.mod.n + 1
    for first in range(1, limit + 1, SIGN_BATCH):
        count = min(SIGN_BATCH, limit + 1 - first)
        e_primes, weights = _trial_weights_batch(priv, inner, first, count, xof)
        hits = np.nonzero(weights <= priv.params.w)[0]
        if hits.size:
            e_prime = e_primes[hits[0]]
            e = np.empty_like(e_prime)
            e[priv.sigma] = e_prime
            return Signature(e=e, i=first + int(hits[0]))
        best = min(best, int(weights.min()))
    return SigningExhausted(trials=limit, best_weight=best)


def verify(pub: PublicKey, message: bytes, sig: Signature, xof: str = "shake256") -> bool:
    """ACCEPT iff wt(e) <= w and H' e = h(h(M)|i).  Never raises on bad shapes."""
    e = np.asarray(sig.e, dtype=np.uint8)
    if e.ndim != 1 or e.shape[0] != pub.n or sig.i < 1:
        return False
    if gf2.weight(e) > pub.params.w:
        return False
    expected = hash_to_syndrome(message, sig.i, pub.H.shape[0], xof)
    return bool(np.array_equal(gf2.mat_vec(pub.H, e), expected))
