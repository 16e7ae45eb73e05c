"""Symbolic platform endomorphisms with fast high iterates.

Four kinds are supported: the identity; conjugation x -> Hinv * x * H by an
invertible H; the entry-power map x -> x^e entrywise for e a power of the
field characteristic (a ring endomorphism by the Frobenius identity); and
the composition entry-power-then-conjugation.

``endo_power`` materializes the k-th iterate as a descriptor of the same
shape so that applying it costs one application: conjugator matrices are
raised by square-and-multiply, entry exponents are reduced modulo the
multiplicative order p^d - 1 with representative in [1, p^d - 1] (correct
on zero entries because the representative stays positive, and on nonzero
entries because their order divides p^d - 1).  For the composed kind the
iterate is computed by square-and-multiply over (exponent, conjugator)
pairs with the twisted product

    (e1, H1) * (e2, H2) = (e1*e2, entrypow(H1, e2) * H2)

which mirrors how the two layers interleave when composites are chained;
tests pin it against the apply-k-times oracle.

Descriptors are immutable and application is pure.
"""

from __future__ import annotations

from .field import FieldElement, FieldSpec, SpecMismatchError
from .platform import (
    PlatformElement,
    PlatformSpec,
    base_scalar_field,
    invert_matrix,
    mat_mul,
    mat_pow,
)

IDENTITY = "identity"
INNER = "inner"
ENTRY_POWER = "entry_power"
COMPOSE = "compose"


class EndoDescriptor:
    """One endomorphism of a platform, applicable in a single pass."""

    __slots__ = ("variant", "platform", "H", "H_inv", "e")

    def __init__(self, variant, platform, H=None, H_inv=None, e=None):
        self.variant = variant
        self.platform = platform
        self.H = H
        self.H_inv = H_inv
        self.e = e

    def __eq__(self, other):
        if not isinstance(other, EndoDescriptor):
            return NotImplemented
        return (
            self.variant == other.variant
            and self.platform == other.platform
            and self.H == other.H
            and self.e == other.e
        )

    def __repr__(self):
        if self.variant == IDENTITY:
            return "Endo(identity)"
        if self.variant == INNER:
            return "Endo(inner)"
        if self.variant == ENTRY_POWER:
            return f"Endo(entry_power^{self.e})"
        return f"Endo(entry_power^{self.e} then inner)"


def identity_endo(platform: PlatformSpec) -> EndoDescriptor:
    return EndoDescriptor(IDENTITY, platform)


def inner_endo(platform: PlatformSpec, H: PlatformElement, H_inv=None) -> EndoDescriptor:
    """Conjugation x -> H_inv * x * H.  H_inv is derived when not supplied."""
    if H.spec != platform:
        raise SpecMismatchError("conjugator from wrong platform")
    if H_inv is None:
        H_inv = invert_matrix(H)
    if mat_mul(H, H_inv) != platform.identity:
        raise ValueError("H_inv is not the inverse of H")
    return EndoDescriptor(INNER, platform, H, H_inv)


def _check_entry_exponent(platform: PlatformSpec, e: int):
    if not platform.is_field_base:
        raise ValueError("entry-power maps need a field base ring")
    p = platform.base.p
    if e < 1:
        raise ValueError("entry exponent must be positive")
    m = e
    while m % p == 0:
        m //= p
    if m != 1:
        raise ValueError(f"entry exponent {e} is not a power of the characteristic {p}")


def entry_power_endo(platform: PlatformSpec, e: int) -> EndoDescriptor:
    _check_entry_exponent(platform, e)
    return EndoDescriptor(ENTRY_POWER, platform, e=e)


def compose_endo(platform: PlatformSpec, e: int, H: PlatformElement, H_inv=None) -> EndoDescriptor:
    """Entry-power first, then conjugation by H."""
    _check_entry_exponent(platform, e)
    inner = inner_endo(platform, H, H_inv)
    return EndoDescriptor(COMPOSE, platform, inner.H, inner.H_inv, e)


def _entrywise_pow(x: PlatformElement, e: int) -> PlatformElement:
    F = x.spec.base
    return PlatformElement(
        x.spec,
        tuple(tuple(FieldElement(F, F.pow_(v.raw, e)) for v in row) for row in x.entries),
    )


def endo_apply(phi: EndoDescriptor, x: PlatformElement) -> PlatformElement:
    if x.spec != phi.platform:
        raise SpecMismatchError("element from wrong platform")
    v = phi.variant
    if v == IDENTITY:
        return x
    if v == INNER:
        return mat_mul(mat_mul(phi.H_inv, x), phi.H)
    if v == ENTRY_POWER:
        return _entrywise_pow(x, phi.e)
    return mat_mul(mat_mul(phi.H_inv, _entrywise_pow(x, phi.e)), phi.H)


def _exp_mod_order(e: int, F: FieldSpec) -> int:
    # representative of e mod (p^d - 1) in [1, p^d - 1]
    m = F.order - 1
    if m == 0:
        raise ValueError("trivial multiplicative group")
    r = e % m
    return r if r else m


def endo_mul(a: EndoDescriptor, b: EndoDescriptor) -> EndoDescriptor:
    """The endomorphism 'a then b', for descriptors of compatible kinds."""
    if a.platform != b.platform:
        raise SpecMismatchError("descriptors from different platforms")
    if a.variant == IDENTITY:
        return b
    if b.variant == IDENTITY:
        return a
    if a.variant != b.variant:
        raise ValueError("cannot mix endomorphism kinds")
    platform = a.platform
    if a.variant == INNER:
        return EndoDescriptor(
            INNER, platform, mat_mul(a.H, b.H), mat_mul(b.H_inv, a.H_inv)
        )
    if a.variant == ENTRY_POWER:
        F = platform.base
        return EndoDescriptor(ENTRY_POWER, platform, e=_exp_mod_order(a.e * b.e, F))
    # composite twisted product
    F = platform.base
    e = _exp_mod_order(a.e * b.e, F)
    H = mat_mul(_entrywise_pow(a.H, b.e), b.H)
    H_inv = mat_mul(b.H_inv, _entrywise_pow(a.H_inv, b.e))
    return EndoDescriptor(COMPOSE, platform, H, H_inv, e)


def endo_power(phi: EndoDescriptor, k: int) -> EndoDescriptor:
    """Descriptor computing the k-th iterate of phi in one application."""
    if k < 0:
        raise ValueError("iterate count must be nonnegative")
    if k == 0 or phi.variant == IDENTITY:
        return identity_endo(phi.platform)
    if phi.variant == INNER:
        # powers of one conjugator commute, so plain matrix powering works
        return EndoDescriptor(
            INNER, phi.platform, mat_pow(phi.H, k), mat_pow(phi.H_inv, k)
        )
    if phi.variant == ENTRY_POWER:
        F = phi.platform.base
        return EndoDescriptor(
            ENTRY_POWER, phi.platform, e=_exp_mod_order(pow(phi.e, k, F.order - 1), F)
        )
    result = None
    base = phi
    while k:
        if k & 1:
            result = base if result is None else endo_mul(result, base)
        k >>= 1
        if k:
            base = endo_mul(base, base)
    return result


def endo_scalar_field(phi: EndoDescriptor) -> FieldSpec:
    """Largest scalar field over which applying phi is linear.

    Conjugation and the identity are linear over the full base field;
    entry-power maps move base-field scalars (they are only semilinear), so
    their linear scalars are the prime subfield.
    """
    bf = base_scalar_field(phi.platform.base)
    if phi.variant in (IDENTITY, INNER):
        return bf
    return bf.prime_subfield()


# --------------------------------------------------------------------------
# text codec


def encode_endo(phi: EndoDescriptor):
    if phi.variant == IDENTITY:
        return {"type": "identity"}
    if phi.variant == INNER:
        return {"type": "inner", "H": phi.platform.encode(phi.H)}
    if phi.variant == ENTRY_POWER:
        return {"type": "entry_power", "e": phi.e}
    return {"type": "compose", "e": phi.e, "H": phi.platform.encode(phi.H)}


def decode_endo(platform: PlatformSpec, data) -> EndoDescriptor:
    try:
        kind = data["type"]
    except (KeyError, TypeError):
        raise ValueError("bad endomorphism encoding") from None
    if kind == "identity":
        return identity_endo(platform)
    if kind == "inner":
        return inner_endo(platform, platform.decode(data["H"]))
    if kind == "entry_power":
        return entry_power_endo(platform, int(data["e"]))
    if kind == "compose":
        return compose_endo(platform, int(data["e"]), platform.decode(data["H"]))
    raise ValueError(f"unknown endomorphism type {kind!r}")
