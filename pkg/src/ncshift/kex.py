"""The honest key-exchange protocol and its transcripts.

Parties share a public platform, a public endomorphism phi and a public
element g.  Each side picks a private exponent and sends the group
component of (phi, g)^k; both then arrive at the orbit element with index
m + n.  The masked variant (inner automorphism, singular H*g) additionally
adds private annihilator matrices R and S to the sent values, which cancel
out of both parties' key computations.

Orbit indexing starts at 1 (orbit_element(g, phi, 1) == g) so that the
recurrence a_{k+1} = phi(a_k) * g and the splitting identity
a_{i+j} = phi^j(a_i) * a_j hold uniformly for all indices >= 1.

Sessions are pure functions of (parameters, seed); transcript and secrets
files are single JSON objects with fixed key order, newline-terminated, and
round-trip byte-exactly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .endo import (
    EndoDescriptor,
    INNER,
    decode_endo,
    encode_endo,
    endo_apply,
    endo_mul,
    endo_power,
)
from .field import SpecMismatchError
from .platform import (
    PlatformElement,
    PlatformSpec,
    decode_platform_spec,
    encode_platform_spec,
    left_annihilator,
    mat_mul,
    mat_rank,
    scalar_mul,
)


@dataclass(frozen=True)
class SemidirectElement:
    """A pair (phi^exponent, part) in the semidirect product G_phi."""

    exponent: int
    part: PlatformElement


def sd_mul(x: SemidirectElement, y: SemidirectElement, phi: EndoDescriptor) -> SemidirectElement:
    """Product (phi^r, f)(phi^s, h) = (phi^{r+s}, phi^s(f) h)."""
    if x.part.spec != y.part.spec:
        raise SpecMismatchError("platform mismatch in semidirect product")
    shifted = endo_apply(endo_power(phi, y.exponent), x.part)
    return SemidirectElement(x.exponent + y.exponent, mat_mul(shifted, y.part))


def orbit_element(g: PlatformElement, phi: EndoDescriptor, k: int) -> PlatformElement:
    """The group component of (phi, g)^k, for k >= 1, in O(log k) products.

    Square-and-multiply runs over triples (exponent, part, materialized
    phi^exponent) so no iterate is ever recomputed from scratch; the result
    satisfies orbit_element(g, phi, 1) == g and
    orbit_element(g, phi, k+1) == endo_apply(phi, a_k) * g.
    """
    if k < 1:
        raise ValueError("orbit index must be >= 1")
    base = (1, g, phi)
    result = None
    while k:
        if k & 1:
            result = base if result is None else _triple_mul(result, base)
        k >>= 1
        if k:
            base = _triple_mul(base, base)
    return result[1]


def _triple_mul(t1, t2):
    e1, f1, d1 = t1
    e2, f2, d2 = t2
    return (e1 + e2, mat_mul(endo_apply(d2, f1), f2), endo_mul(d1, d2))


@dataclass
class Transcript:
    """Public data of one protocol session; never contains key material."""

    platform: PlatformSpec
    phi: EndoDescriptor
    g: PlatformElement
    sent_by_alice: PlatformElement
    sent_by_bob: PlatformElement
    masked: bool


@dataclass
class SessionSecrets:
    """Private session data kept only for verification."""

    m: int
    n: int
    R: PlatformElement | None
    S: PlatformElement | None
    true_key: PlatformElement


class ProtocolError(AssertionError):
    """The two parties disagreed on the key; indicates a workbench bug."""


def _random_annihilator_element(basis, scalar, rng):
    # uniform nonzero combination of the annihilator basis
    while True:
        coeffs = [scalar.random_raw(rng) for _ in basis]
        if any(c != scalar.zero_raw for c in coeffs):
            break
    acc = None
    for c, B in zip(coeffs, basis):
        if c == scalar.zero_raw:
            continue
        term = scalar_mul(c, B, scalar)
        acc = term if acc is None else acc + term
    return acc


def run_session(
    spec: PlatformSpec,
    phi: EndoDescriptor,
    g: PlatformElement,
    m: int,
    n: int,
    masked: bool,
    seed: int,
):
    """Execute one honest exchange; returns (Transcript, SessionSecrets).

    Masked sessions require phi to be inner with H*g singular and nonzero;
    R and S are uniform nonzero elements of the left annihilator of H*g,
    resampled if a zero combination is drawn.
    """
    if m < 1 or n < 1:
        raise ValueError("exponents must be >= 1")
    a_m = orbit_element(g, phi, m)
    a_n = orbit_element(g, phi, n)
    R = S = None
    if masked:
        if phi.variant != INNER:
            raise ValueError("masked sessions need an inner automorphism")
        HM = mat_mul(phi.H, g)
        if not HM:
            raise ValueError("H*g is zero; masked session impossible")
        if mat_rank(HM) == spec.n:
            raise ValueError("H*g is invertible; masked session impossible")
        ann = left_annihilator(HM)
        rng = random.Random(seed)
        scalar = spec.base
        R = _random_annihilator_element(ann, scalar, rng)
        S = _random_annihilator_element(ann, scalar, rng)
        sent_a = a_m + R
        sent_b = a_n + S
    else:
        sent_a, sent_b = a_m, a_n
    k_alice = mat_mul(endo_apply(endo_power(phi, m), sent_b), a_m)
    k_bob = mat_mul(endo_apply(endo_power(phi, n), sent_a), a_n)
    true_key = orbit_element(g, phi, m + n)
    if k_alice != k_bob or k_alice != true_key:
        raise ProtocolError("key agreement violated")
    transcript = Transcript(spec, phi, g, sent_a, sent_b, masked)
    secrets = SessionSecrets(m, n, R, S, true_key)
    return transcript, secrets


# --------------------------------------------------------------------------
# file formats


def transcript_to_json(t: Transcript) -> str:
    obj = {
        "platform": encode_platform_spec(t.platform),
        "phi": encode_endo(t.phi),
        "g": t.platform.encode(t.g),
        "alice": t.platform.encode(t.sent_by_alice),
        "bob": t.platform.encode(t.sent_by_bob),
        "masked": t.masked,
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"

def transcript_from_json(s: str) -> Transcript:
    try:
        obj = json.loads(s)
        spec = decode_platform_spec(obj["platform"])
        phi = decode_endo(spec, obj["phi"])
        g = spec.decode(obj["g"])
        alice = spec.decode(obj["alice"])
        bob = spec.decode(obj["bob"])
        masked = bool(obj["masked"])
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise ValueError(f"malformed transcript: {e}") from None
    return Transcript(spec, phi, g, alice, bob, masked)


def secrets_to_json(spec: PlatformSpec, s: SessionSecrets) -> str:
    obj = {"m": s.m, "n": s.n, "true_key": spec.encode(s.true_key)}
    return json.dumps(obj, separators=(",", ":")) + "\n"


def secrets_from_json(s: str):
    """Parse a secrets file; the key is returned in encoded form so callers
    without the platform spec can still compare byte-exactly."""
    try:
        obj = json.loads(s)
        return int(obj["m"]), int(obj["n"]), obj["true_key"]
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise ValueError(f"malformed secrets file: {e}") from None
