import json
import random

import pytest

from ncshift.field import SpecMismatchError, field_spec
from ncshift.endo import (
    compose_endo,
    decode_endo,
    encode_endo,
    endo_apply,
    endo_power,
    endo_scalar_field,
    entry_power_endo,
    identity_endo,
    inner_endo,
)
from ncshift.platform import PlatformSpec, mat_mul, mat_pow, sample_instance_ex

from _props import check_endo_homomorphism

GF2 = field_spec(2)
GF7 = field_spec(7)
GF4 = field_spec(2, 2, (1, 1, 1))
GF49 = field_spec(7, 2)
GF2_127 = field_spec(2, 127)

P7 = PlatformSpec(GF7, 2)
P4 = PlatformSpec(GF4, 2, GF2)
P49 = PlatformSpec(GF49, 2, GF7)
PK = PlatformSpec(GF2_127, 2)
PK4 = PlatformSpec(GF2_127, 2, GF2)


def _toy_variants():
    rng = random.Random(0)
    H7, H7i, _ = sample_instance_ex(P7, "inner", 1)
    H4, H4i, _ = sample_instance_ex(P4, "inner", 2)
    H49, H49i, _ = sample_instance_ex(P49, "inner", 3)
    return [
        identity_endo(P7),
        inner_endo(P7, H7, H7i),
        entry_power_endo(P4, 2),
        entry_power_endo(P49, 7),
        compose_endo(P4, 4, H4, H4i),
        compose_endo(P49, 7, H49, H49i),
    ]


def test_apply_identity():
    rng = random.Random(1)
    x = P7.random(rng)
    assert endo_apply(identity_endo(P7), x) == x
    assert endo_apply(inner_endo(P7, P7.identity), x) == x


def test_entry_power_frobenius_orbit():
    X = P4.matrix([[GF4.elem([0, 1]), 0], [0, 0]])
    assert endo_apply(entry_power_endo(P4, 4), X) == X  # x^4 = x in GF(4)


def test_entry_power_requires_char_power():
    with pytest.raises(ValueError):
        entry_power_endo(P7, 4)
    with pytest.raises(ValueError):
        entry_power_endo(P4, 3)
    with pytest.raises(ValueError):
        entry_power_endo(PlatformSpec(field_spec(7), 2), 0)


def test_inner_checks_inverse():
    H, Hinv, _ = sample_instance_ex(P7, "inner", 7)
    with pytest.raises(ValueError):
        inner_endo(P7, H, P7.zero)


def test_platform_mismatch():
    with pytest.raises(SpecMismatchError):
        endo_apply(identity_endo(P7), P4.identity)


def test_power_zero_is_identity():
    for phi in _toy_variants():
        assert endo_power(phi, 0).variant == "identity"


def test_inner_power_is_conjugation_by_power():
    rng = random.Random(3)
    H, Hinv, _ = sample_instance_ex(P7, "inner", 11)
    phi = inner_endo(P7, H, Hinv)
    x = P7.random(rng)
    got = endo_apply(endo_power(phi, 2), x)
    want = mat_mul(mat_mul(mat_pow(Hinv, 2), x), mat_pow(H, 2))
    assert got == want


def test_power_matches_iterated_application():
    rng = random.Random(4)
    for phi in _toy_variants():
        spec = phi.platform
        for k in range(9):
            x = spec.random(rng)
            want = x
            for _ in range(k):
                want = endo_apply(phi, want)
            assert endo_apply(endo_power(phi, k), x) == want, (phi, k)


def test_power_addition_law():
    rng = random.Random(5)
    for phi in _toy_variants():
        spec = phi.platform
        for _ in range(5):
            a, b = rng.randrange(0, 12), rng.randrange(0, 12)
            x = spec.random(rng)
            lhs = endo_apply(endo_power(phi, a + b), x)
            rhs = endo_apply(endo_power(phi, a), endo_apply(endo_power(phi, b), x))
            assert lhs == rhs


def test_power_huge_exponent_consistency():
    # phi^(2^64), then one more application, equals phi^(2^64 + 1)
    rng = random.Random(6)
    H, Hinv, _ = sample_instance_ex(PK4, "composite", 13)
    phi = compose_endo(PK4, 4, H, Hinv)
    x = PK4.random(rng)
    k = 2**64
    big = endo_power(phi, k)
    bigger = endo_power(phi, k + 1)
    assert endo_apply(phi, endo_apply(big, x)) == endo_apply(bigger, x)


def test_scalar_field_answers():
    H, Hinv, _ = sample_instance_ex(PK, "inner", 17)
    H4, H4inv, _ = sample_instance_ex(PK4, "composite", 17)
    assert endo_scalar_field(inner_endo(PK, H, Hinv)) == GF2_127
    assert endo_scalar_field(identity_endo(PK)) == GF2_127
    assert endo_scalar_field(compose_endo(PK4, 4, H4, H4inv)) == GF2
    assert endo_scalar_field(entry_power_endo(PK4, 4)) == GF2
    assert endo_scalar_field(identity_endo(P_HKKS())) == GF7


def P_HKKS():
    from ncshift.platform import GroupAlgebraSpec, build_a5

    return PlatformSpec(GroupAlgebraSpec(GF7, build_a5()), 3)


@pytest.mark.parametrize("idx", range(6))
def test_homomorphism_properties(idx):
    phi = _toy_variants()[idx]
    check_endo_homomorphism(phi, 40)


def test_homomorphism_properties_kls():
    H, Hinv, _ = sample_instance_ex(PK4, "composite", 19)
    check_endo_homomorphism(compose_endo(PK4, 4, H, Hinv), 15)
    H2, H2inv, _ = sample_instance_ex(PK, "inner", 23)
    check_endo_homomorphism(inner_endo(PK, H2, H2inv), 15)


def test_endo_codec_roundtrip():
    H, Hinv, _ = sample_instance_ex(PK, "inner", 29)
    H4, H4inv, _ = sample_instance_ex(PK4, "composite", 31)
    variants = [
        identity_endo(PK),
        inner_endo(PK, H, Hinv),
        entry_power_endo(PK4, 4),
        compose_endo(PK4, 4, H4, H4inv),
    ]
    for phi in variants:
        spec = phi.platform
        enc = json.loads(json.dumps(encode_endo(phi)))
        back = decode_endo(spec, enc)
        assert back == phi
        if phi.H_inv is not None:
            assert back.H_inv == phi.H_inv  # decode re-derives the inverse


def test_endo_codec_rejects_garbage():
    with pytest.raises(ValueError):
        decode_endo(PK, {"type": "warp"})
    with pytest.raises(ValueError):
        decode_endo(PK, [])
