"""Probabilistic public-key encryption over the skew dihedral group ring.

Gen:  sk = (a1, gamma1), pk = a1 h gamma1.
Enc:  c1 = a2 h gamma2, c2 = m + a2 pk adjunct(gamma2), with the randomness
      r2 = (a2, gamma2) passed in explicitly (the KEM re-encryption check
      needs Enc to be a deterministic function of (m, pk, r2)).
Dec:  m = c2 - a1 c1 adjunct(gamma1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .kex import SecretPair, public_value, sample_secret_pair
from .params import Params
from .skewring import RingElement


@dataclass(frozen=True)
class PkeKeypair:
    pk: RingElement
    sk: SecretPair


@dataclass(frozen=True)
class Ciphertext:
    c1: RingElement
    c2: RingElement


def pke_gen(params: Params, rng) -> PkeKeypair:
    sk = sample_secret_pair(params, rng)
    return PkeKeypair(pk=public_value(params, sk), sk=sk)


def pke_enc(m: RingElement, pk: RingElement, r2: SecretPair, params: Params) -> Ciphertext:
    ring = params.ring
    if m.ring is not ring or pk.ring is not ring:
        raise ValueError("message/public key belong to a different ring")
    a2, gamma2 = r2.a, r2.gamma
    c1 = a2 * params.h * gamma2
    c2 = m + a2 * pk * gamma2.adjunct()
    return Ciphertext(c1=c1, c2=c2)


def pke_dec(c: Ciphertext, sk: SecretPair) -> RingElement:
    if c.c1.ring is not sk.a.ring:
        raise ValueError("ciphertext belongs to a different ring")
    k = sk.a * c.c1 * sk.gamma.adjunct()
    return c.c2 - k


def sample_message(params: Params, rng) -> RingElement:
    """Uniform message; the message space is the whole ring."""
    return params.ring.sample_ring(rng)


def sample_randomness(params: Params, rng) -> SecretPair:
    return sample_secret_pair(params, rng)
