"""Binary file formats for keys and signatures.

Key file ("RMSG"):
    magic      4s   "RMSG"
    version    u16  format version, currently 1
    role       u8   0 = public, 1 = private
    m, r       u16, u16
    p          u32  punctured column count
    w          u32  error weight bound
    N          u32  maximum signing trials
    n_deleted  u32  followed by n_deleted * u32 deleted column indices
                    (private files only; public files store 0 entries)
    body       role specific, see below
    crc32      u32  zlib CRC of every preceding byte

Public body:  packed H', (n-k) rows of ceil(n/8) bytes.
Private body: packed S, sigma as n * u32, packed R, packed P',
              info_perm as n * u32, then a 32-byte SHA-256 digest of the
              packed reassembled H_m (integrity check of the assembly).

All header integers are little-endian.  The signature file ("RMSS")
stores the counter big-endian, mirroring its role as hash input:
    magic "RMSS", version u16, n u32, i u64 BIG-endian, packed e, crc32.

A matrix packs row-major, each row padded to whole bytes, MSB first.
"""

from __future__ import annotations

import hashlib
import struct
import zlib
from math import comb

import numpy as np

from . import gf2
from .modcode import ModifiedCode
from .rmcode import build_with_perm
from .scheme import KeyPair, PrivateKey, PublicKey, Signature, SigningParams

KEY_MAGIC = b"RMSG"
SIG_MAGIC = b"RMSS"
VERSION = 1
ROLE_PUBLIC = 0
ROLE_PRIVATE = 1

_HEADER = struct.Struct("<4sHBHHIII")


class FormatError(ValueError):
    """Malformed, truncated or corrupted file content."""


def _with_crc(body: bytes) -> bytes:
    return body + struct.pack("<I", zlib.crc32(body))


def _check_crc(raw: bytes, kind: str) -> bytes:
    if len(raw) < 4:
        raise FormatError(f"{kind} file is truncated")
    body, (crc,) = raw[:-4], struct.unpack("<I", raw[-4:])
    if zlib.crc32(body) != crc:
        raise FormatError(f"{kind} file failed its CRC check")
    return body


class _Reader:
    def __init__(self, buf: bytes, kind: str):
        self.buf = buf
        self.pos = 0
        self.kind = kind

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.buf):
            raise FormatError(f"{self.kind} file is truncated")
        out = self.buf[self.pos : self.pos + size]
        self.pos += size
        return out

    def done(self) -> None:
        if self.pos != len(self.buf):
            raise FormatError(f"{self.kind} file has trailing bytes")


def _header(role: int, m: int, r: int, p: int, params: SigningParams) -> bytes:
    return _HEADER.pack(KEY_MAGIC, VERSION, role, m, r, p, params.w, params.N)


def _u32_list(values: np.ndarray) -> bytes:
    return np.asarray(values, dtype="<u4").tobytes()


def save_public_key(pub: PublicKey) -> bytes:
    body = _header(ROLE_PUBLIC, pub.m, pub.r, 0, pub.params)
    body += struct.pack("<I", 0)
    body += gf2.pack_bits(pub.H)
    return _with_crc(body)


def save_private_key(priv: PrivateKey) -> bytes:
    mod = priv.mod
    base = mod.base
    body = _header(ROLE_PRIVATE, base.m, base.r, mod.p, priv.params)
    body += struct.pack("<I", mod.p) + _u32_list(mod.deleted)
    body += gf2.pack_bits(priv.S)
    body += _u32_list(priv.sigma)
    body += gf2.pack_bits(mod.R) if mod.p else b""
    body += gf2.pack_bits(mod.P_kept)
    body += _u32_list(base.info_perm)
    body += hashlib.sha256(gf2.pack_bits(mod.H)).digest()
    return _with_crc(body)


def _parse_header(rd: _Reader, expect_role: int):
    magic, version, role, m, r, p, w, n_trials = _HEADER.unpack(rd.take(_HEADER.size))
    if magic != KEY_MAGIC:
        raise FormatError("not a key file (bad magic)")
    if version != VERSION:
        raise FormatError(f"unsupported key file version {version}")
    if role != expect_role:
        raise FormatError("key file has the wrong role for this operation")
    (count,) = struct.unpack("<I", rd.take(4))
    deleted = np.frombuffer(rd.take(4 * count), dtype="<u4").astype(np.int64)
    return m, r, p, w, n_trials, deleted


def _code_dims(m: int, r: int) -> tuple[int, int]:
    n = 1 << m
    k = sum(comb(m, i) for i in range(r + 1))
    return n, k


def load_public_key(raw: bytes) -> PublicKey:
    rd = _Reader(_check_crc(raw, "public key"), "public key")
    m, r, _p, w, n_trials, _deleted = _parse_header(rd, ROLE_PUBLIC)
    n, k = _code_dims(m, r)
    h_pub = gf2.unpack_matrix(rd.take(gf2.packed_size(n - k, n)), n - k, n)
    rd.done()
    params = SigningParams(w=w, N=n_trials, t=((1 << (m - r)) - 1) // 2)
    h_pub.flags.writeable = False
    return PublicKey(m=m, r=r, H=h_pub, params=params)


def load_private_key(raw: bytes) -> PrivateKey:
    rd = _Reader(_check_crc(raw, "private key"), "private key")
    m, r, p, w, n_trials, deleted = _parse_header(rd, ROLE_PRIVATE)
    n, k = _code_dims(m, r)
    if deleted.size != p:
        raise FormatError("deleted column list does not match p")
    scramble = gf2.unpack_matrix(rd.take(gf2.packed_size(n - k, n - k)), n - k, n - k)
    sigma = np.frombuffer(rd.take(4 * n), dtype="<u4").astype(np.int64)
    r_block = (
        gf2.unpack_matrix(rd.take(gf2.packed_size(p, n - p)), p, n - p)
        if p
        else np.zeros((0, n), dtype=np.uint8)
    )
    p_kept = gf2.unpack_matrix(
        rd.take(gf2.packed_size(k, n - k - p)), k, n - k - p
    )
    info_perm = np.frombuffer(rd.take(4 * n), dtype="<u4").astype(np.int64)
    stored_digest = rd.take(32)
    rd.done()

    base = build_with_perm(m, r, info_perm)
    if not np.array_equal(base.P[:, np.setdiff1d(np.arange(n - k), deleted - k)], p_kept):
        raise FormatError("stored P' disagrees with the reconstructed code")

    h_mod = np.zeros((n - k, n), dtype=np.uint8)
    h_mod[: n - k - p, :k] = p_kept.T
    h_mod[: n - k - p, k : n - p] = gf2.identity(n - k - p)
    h_mod[n - k - p :, : n - p] = r_block
    h_mod[n - k - p :, n - p :] = gf2.identity(p)
    if hashlib.sha256(gf2.pack_bits(h_mod)).digest() != stored_digest:
        raise FormatError("reassembled H_m digest mismatch")

    inserted = r_block[:, :k].T ^ gf2.mat_mul(p_kept, r_block[:, k:].T)
    g_mod = np.concatenate([gf2.identity(k), p_kept, inserted], axis=1)
    for arr in (deleted, p_kept, r_block, h_mod, g_mod, scramble, sigma):
        arr.flags.writeable = False
    mod = ModifiedCode(
        base=base, p=p, deleted=deleted, P_kept=p_kept, R=r_block, H=h_mod, G=g_mod
    )
    params = SigningParams(w=w, N=n_trials, t=base.t)
    return PrivateKey(S=scramble, sigma=sigma, mod=mod, params=params)


def save_keypair(kp: KeyPair, out_prefix: str) -> tuple[str, str]:
    pub_path, sec_path = out_prefix + ".pub", out_prefix + ".sec"
    with open(pub_path, "wb") as fh:
        fh.write(save_public_key(kp.public))
    with open(sec_path, "wb") as fh:
        fh.write(save_private_key(kp.private))
    return pub_path, sec_path


def save_signature(sig: Signature, n: int) -> bytes:
    if sig.e.shape != (n,):
        raise ValueError(f"signature vector length {sig.e.size} != n = {n}")
    body = SIG_MAGIC + struct.pack("<HI", VERSION, n)
    body += struct.pack(">Q", sig.i)
    body += gf2.pack_bits(sig.e)
    return _with_crc(body)


def load_signature(raw: bytes) -> Signature:
    rd = _Reader(_check_crc(raw, "signature"), "signature")
    magic = rd.take(4)
    if magic != SIG_MAGIC:
        raise FormatError("not a signature file (bad magic)")
    version, n = struct.unpack("<HI", rd.take(6))
    if version != VERSION:
        raise FormatError(f"unsupported signature file version {version}")
    (counter,) = struct.unpack(">Q", rd.take(8))
    e = gf2.unpack_word(rd.take(gf2.packed_size(1, n)), n)
    rd.done()
    e.flags.writeable = False
    return Signature(e=e, i=counter)
