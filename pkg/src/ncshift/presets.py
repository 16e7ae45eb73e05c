"""Named platform configurations used by the CLI, benchmarks and tests."""

from __future__ import annotations

from .endo import compose_endo, inner_endo
from .field import field_spec
from .platform import GroupAlgebraSpec, PlatformSpec, build_a5, sample_instance_ex

# entry exponent of the composite endomorphism on the 2x2 binary-field platform
COMPOSITE_ENTRY_EXPONENT = 4

PLATFORM_NAMES = ("kls2x2", "kls2x2-power4", "hkks3x3")


def gf2_127():
    return field_spec(2, 127)  # default modulus x^127 + x + 1


def make_platform(name: str) -> tuple[PlatformSpec, str]:
    """Resolve a platform name to (PlatformSpec, endomorphism kind).

    Supported names: kls2x2, kls2x2-power4, hkks3x3, and toy:p,d,n for an
    inner-automorphism platform M_n(GF(p^d)).
    """
    if name == "kls2x2":
        return PlatformSpec(gf2_127(), 2), "inner"
    if name == "kls2x2-power4":
        return PlatformSpec(gf2_127(), 2, field_spec(2)), "composite"
    if name == "hkks3x3":
        ga = GroupAlgebraSpec(field_spec(7), build_a5())
        return PlatformSpec(ga, 3), "inner"
    if name.startswith("toy:"):
        try:
            p, d, n = (int(x) for x in name[4:].split(","))
        except ValueError:
            raise ValueError(f"bad toy platform {name!r}; expected toy:p,d,n") from None
        return PlatformSpec(field_spec(p, d), n), "inner"
    raise ValueError(f"unknown platform {name!r}")


def make_instance(name: str, masked: bool, seed: int):
    """Sample (spec, phi, g) for one named platform and variant."""
    spec, kind = make_platform(name)
    if masked and kind != "inner":
        raise ValueError("masked sessions require an inner automorphism")
    if masked and not spec.is_field_base:
        raise ValueError("masked sessions need a field base ring")
    variant = "masked" if masked else kind
    H, Hinv, M = sample_instance_ex(spec, variant, seed)
    if kind == "composite":
        phi = compose_endo(spec, COMPOSITE_ENTRY_EXPONENT, H, Hinv)
    else:
        phi = inner_endo(spec, H, Hinv)
    return spec, phi, M
