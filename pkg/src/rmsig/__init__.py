"""Signatures from punctured Reed-Muller codes with random insertion."""

from .gf2 import RankError, SingularError
from .rmcode import RmCode, build
from .decoder import decode_closest, punctured_syndrome_decode, syndrome_to_coset_leader
from .modcode import ModifiedCode, align_information_set, build_modified, puncture_plan
from .scheme import (
    KeyPair,
    PrivateKey,
    PublicKey,
    Signature,
    SigningExhausted,
    SigningParams,
    hash_to_syndrome,
    keygen,
    sign,
    verify,
)
from .analysis import (
    NoFeasibleParams,
    SecurityEstimate,
    WeightDistribution,
    calibrate,
    choose_params,
    forgery_probability,
    naive_forgery_attack,
    success_probability,
)

__all__ = [
    "RankError",
    "SingularError",
    "RmCode",
    "build",
    "decode_closest",
    "syndrome_to_coset_leader",
    "punctured_syndrome_decode",
    "ModifiedCode",
    "puncture_plan",
    "align_information_set",
    "build_modified",
    "SigningParams",
    "KeyPair",
    "PublicKey",
    "PrivateKey",
    "Signature",
    "SigningExhausted",
    "hash_to_syndrome",
    "keygen",
    "sign",
    "verify",
    "WeightDistribution",
    "SecurityEstimate",
    "NoFeasibleParams",
    "calibrate",
    "success_probability",
    "choose_params",
    "forgery_probability",
    "naive_forgery_attack",
]

__version__ = "0.1.0"
