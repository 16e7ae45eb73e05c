"""Noncommutative-shift key exchange workbench and its decomposition attacks."""

from .field import FieldElement, FieldSpec, field_spec, poly_irreducible
from .platform import (
    GroupAlgebraElement,
    GroupAlgebraSpec,
    GroupTable,
    PlatformElement,
    PlatformSpec,
    build_a5,
)
from .endo import (
    EndoDescriptor,
    compose_endo,
    endo_apply,
    endo_power,
    endo_scalar_field,
    entry_power_endo,
    identity_endo,
    inner_endo,
)
from .kex import SemidirectElement, SessionSecrets, Transcript, orbit_element, run_session, sd_mul
from .attack import (
    AttackReport,
    attack_commutant,
    attack_conjugation,
    attack_general,
    attack_masked,
    monomial_closure,
    orbit_prefix_basis,
)

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldSpec",
    "field_spec",
    "poly_irreducible",
    "GroupTable",
    "GroupAlgebraSpec",
    "GroupAlgebraElement",
    "PlatformSpec",
    "PlatformElement",
    "build_a5",
    "EndoDescriptor",
    "identity_endo",
    "inner_endo",
    "entry_power_endo",
    "compose_endo",
    "endo_apply",
    "endo_power",
    "endo_scalar_field",
    "SemidirectElement",
    "sd_mul",
    "orbit_element",
    "run_session",
    "Transcript",
    "SessionSecrets",
    "AttackReport",
    "orbit_prefix_basis",
    "monomial_closure",
    "attack_general",
    "attack_conjugation",
    "attack_masked",
    "attack_commutant",
    "__version__",
]
