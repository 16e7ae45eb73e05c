"""Eavesdropper-side key recovery from public transcripts.

Four procedures, all consuming nothing but a Transcript:

* ``attack_general`` - build the maximal independent prefix a_1, a_2, ...
  of the orbit sequence (once an element depends on the earlier ones, every
  later element does too), express the intercepted a_n in it, and reassemble
  the key as sum_i eta_i phi^i(a_m) a_i.  Works for every endomorphism kind;
  the working scalar field is the largest one the endomorphism is linear
  over, so entry-power maps drop to the prime subfield.
* ``attack_conjugation`` - for inner automorphisms: precompute a basis of
  the span of the monomials Hinv^k (HM)^l by orbit closure, express a_n,
  and reassemble sum_i eta_i Hinv^{k_i} a_m (HM)^{l_i}.
* ``attack_masked`` - for the masked variant: span the diagonal monomials
  Hinv^k (HM)^k (k >= 1) plus the left annihilator of HM; the annihilator
  coefficients of the intercepted value are irrelevant because every
  monomial with k >= 1 kills the masking matrices on both sides.
* ``attack_commutant`` - the baseline linear-algebra method: find an
  invertible Y' commuting with HM such that a_m Y' commutes with H, then
  the key is (a_m Y') a_n Y'^{-1}.  Invertibility is not guaranteed, so
  this can honestly fail; it is also inapplicable to masked transcripts.

Attack reports serialize as
{"method":..., "success":..., "key":..., "basis_dim":..., "elapsed_ms":...}.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
import time
from dataclasses import dataclass, field as dfield

from .endo import INNER, EndoDescriptor, endo_apply, endo_scalar_field
from .kex import Transcript, transcript_to_json
from .linalg import SpanBasis, solve_linear
from .platform import (
    PlatformElement,
    base_scalar_field,
    flatten,
    invert_matrix,
    left_annihilator,
    mat_inverse,
    mat_mul,
    mat_rank,
    scalar_mul,
    unflatten,
)

GENERAL = "general"
CONJUGATION = "conjugation"
MASKED = "masked"
COMMUTANT = "commutant"

METHODS = (GENERAL, CONJUGATION, MASKED, COMMUTANT)


@dataclass
class OrbitBasis:
    """Maximal linearly independent orbit prefix a_1 .. a_k."""

    basis: SpanBasis
    originals: list  # (index i >= 1, a_i)
    k: int


@dataclass
class MonomialBasis:
    """Echelon basis of the monomial span, tagged with exponent pairs.

    ``originals`` lists the independent monomials ((k_i, l_i), element) in
    insertion order; for the masked procedure ``annihilator_part`` then
    lists the annihilator basis elements that extended the span, so express
    coefficients split positionally into (eta, nu).
    """

    basis: SpanBasis
    originals: list
    annihilator_part: list = dfield(default_factory=list)


@dataclass
class AttackReport:
    method: str
    recovered_key: PlatformElement | None
    basis_dimension: int
    elapsed: float  # seconds
    phases: dict = dfield(default_factory=dict, repr=False, compare=False)

    @property
    def success(self) -> bool:
        return self.recovered_key is not None


def report_to_json(spec, r: AttackReport) -> str:
    obj = {
        "method": r.method,
        "success": r.success,
        "key": spec.encode(r.recovered_key) if r.success else None,
        "basis_dim": r.basis_dimension,
        "elapsed_ms": r.elapsed * 1000.0,
    }
    return json.dumps(obj, separators=(",", ":")) + "\n"


def report_from_json(s: str) -> dict:
    try:
        obj = json.loads(s)
        return {
            "method": obj["method"],
            "success": bool(obj["success"]),
            "key": obj["key"],
            "basis_dim": int(obj["basis_dim"]),
            "elapsed_ms": float(obj["elapsed_ms"]),
        }
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as e:
        raise ValueError(f"malformed attack report: {e}") from None


# --------------------------------------------------------------------------
# orbit prefix


def orbit_prefix_basis(g: PlatformElement, phi: EndoDescriptor, max_dim=None) -> OrbitBasis:
    """Insert flatten(a_1), flatten(a_2), ... until the first dependence.

    The prefix property guarantees every later orbit element stays in the
    span, so construction stops at the first dependent element.  max_dim
    defaults to the flat dimension over the working scalar field; running
    past it without a dependence is impossible and raises RuntimeError.
    """
    spec = g.spec
    scalar = endo_scalar_field(phi)
    dim = flatten_len(spec, scalar)
    if max_dim is None:
        max_dim = dim
    sb = SpanBasis(scalar, dim)
    originals = []
    a = g
    i = 1
    while True:
        if i > max_dim + 1:
            raise RuntimeError("orbit prefix exceeded max_dim without dependence")
        added, _ = sb.insert(flatten(a, scalar), i)
        if not added:
            break
        originals.append((i, a))
        a = mat_mul(endo_apply(phi, a), g)
        i += 1
    return OrbitBasis(sb, originals, len(originals))


def flatten_len(spec, scalar):
    from .platform import _base_dim_over

    return spec.n * spec.n * _base_dim_over(spec.base, scalar)


def attack_general(t: Transcript) -> AttackReport:
    """Linear decomposition attack for an arbitrary public endomorphism."""
    if t.masked:
        raise ValueError("attack_general requires an unmasked transcript")
    start = time.perf_counter()
    phi = t.phi
    scalar = endo_scalar_field(phi)
    t0 = time.perf_counter()
    ob = orbit_prefix_basis(t.g, phi)
    t_basis = time.perf_counter() - t0
    t0 = time.perf_counter()
    coeffs = ob.basis.express(flatten(t.sent_by_bob, scalar))
    t_express = time.perf_counter() - t0
    phases = {"basis": t_basis, "express": t_express}
    if coeffs is None:
        # impossible by the prefix property; report rather than assert
        return AttackReport(GENERAL, None, ob.k, time.perf_counter() - start, phases)
    t0 = time.perf_counter()
    zero_raw = scalar.zero_raw
    key = t.g.spec.zero
    u = t.sent_by_alice
    for (i, a_i), eta in zip(ob.originals, coeffs):
        u = endo_apply(phi, u)  # u is now phi^i(a_m)
        if eta != zero_raw:
            key = key + scalar_mul(eta, mat_mul(u, a_i), scalar)
    phases["assemble"] = time.perf_counter() - t0
    return AttackReport(GENERAL, key, ob.k, time.perf_counter() - start, phases)


# --------------------------------------------------------------------------
# monomial closure


def monomial_closure(
    H: PlatformElement,
    M: PlatformElement,
    include_l_zero: bool = True,
    diagonal_only: bool = False,
) -> MonomialBasis:
    """Echelon basis of the span of the monomials Hinv^k (HM)^l.

    Seeds with (k, l) = (0, 0) (the identity) in full mode, or with
    (1, 1) = Hinv*HM in diagonal mode, then repeatedly extends by the
    successor maps E -> Hinv*E and E -> E*(HM) (or their diagonal
    composition).  The successor maps are linear, so once no successor of a
    basis element extends the span, the span of all monomials is reached;
    termination is bounded by the flat dimension.
    """
    if include_l_zero == diagonal_only:
        raise ValueError("exactly one of full mode / diagonal mode applies")
    spec = H.spec
    scalar = base_scalar_field(spec.base)
    Hinv = invert_matrix(H)
    HM = mat_mul(H, M)
    dim = flatten_len(spec, scalar)
    sb = SpanBasis(scalar, dim)
    originals = []
    if diagonal_only:
        queue = [(1, 1, mat_mul(Hinv, HM))]
    else:
        queue = [(0, 0, spec.identity)]
    while queue:
        k, l, E = queue.pop(0)
        added, _ = sb.insert(flatten(E, scalar), (k, l))
        if not added:
            continue
        originals.append(((k, l), E))
        if diagonal_only:
            queue.append((k + 1, l + 1, mat_mul(Hinv, mat_mul(E, HM))))
        else:
            queue.append((k + 1, l, mat_mul(Hinv, E)))
            queue.append((k, l + 1, mat_mul(E, HM)))
    return MonomialBasis(sb, originals)


def _monomial_assemble(spec, scalar, Hinv, HM, mid, originals, coeffs):
    """sum_i eta_i Hinv^{k_i} * mid * (HM)^{l_i} with power caching."""
    max_k = max((kl[0] for kl, _ in originals), default=0)
    max_l = max((kl[1] for kl, _ in originals), default=0)
    left = [spec.identity]
    for _ in range(max_k):
        left.append(mat_mul(left[-1], Hinv))
    right = [spec.identity]
    for _ in range(max_l):
        right.append(mat_mul(right[-1], HM))
    zero_raw = scalar.zero_raw
    key = spec.zero
    for ((k, l), _), eta in zip(originals, coeffs):
        if eta != zero_raw:
            term = mat_mul(left[k], mat_mul(mid, right[l]))
            key = key + scalar_mul(eta, term, scalar)
    return key


def attack_conjugation(t: Transcript) -> AttackReport:
    """Decomposition attack specialized to inner automorphisms."""
    if t.phi.variant != INNER:
        raise ValueError("attack_conjugation requires an inner automorphism")
    if t.masked:
        raise ValueError("attack_conjugation requires an unmasked transcript")
    start = time.perf_counter()
    spec = t.platform
    scalar = base_scalar_field(spec.base)
    t0 = time.perf_counter()
    mb = monomial_closure(t.phi.H, t.g, include_l_zero=True, diagonal_only=False)
    t_basis = time.perf_counter() - t0
    t0 = time.perf_counter()
    coeffs = mb.basis.express(flatten(t.sent_by_bob, scalar))
    t_express = time.perf_counter() - t0
    phases = {"basis": t_basis, "express": t_express}
    dim = len(mb.originals)
    if coeffs is None:
        return AttackReport(CONJUGATION, None, dim, time.perf_counter() - start, phases)
    t0 = time.perf_counter()
    key = _monomial_assemble(
        spec, scalar, t.phi.H_inv, mat_mul(t.phi.H, t.g), t.sent_by_alice, mb.originals, coeffs
    )
    phases["assemble"] = time.perf_counter() - t0
    return AttackReport(CONJUGATION, key, dim, time.perf_counter() - start, phases)


def attack_masked(t: Transcript) -> AttackReport:
    """Decomposition attack on the masked variant.

    The intercepted values are a_m + R and a_n + S with R, S annihilating
    HM.  Expressing Bob's value over diagonal monomials plus the
    annihilator and keeping only the monomial part reassembles the key:
    factors (HM)^{k_i} with k_i >= 1 absorb R, and the leftover annihilator
    mismatch is killed by (HM)^m.
    """
    if t.phi.variant != INNER:
        raise ValueError("attack_masked requires an inner automorphism")
    if not t.masked:
        raise ValueError("attack_masked requires a masked transcript")
    start = time.perf_counter()
    spec = t.platform
    scalar = base_scalar_field(spec.base)
    HM = mat_mul(t.phi.H, t.g)
    if mat_rank(HM) == spec.n:
        raise ValueError("masked transcript with invertible H*g")
    t0 = time.perf_counter()
    mb = monomial_closure(t.phi.H, t.g, include_l_zero=False, diagonal_only=True)
    for j, f in enumerate(left_annihilator(HM)):
        added, _ = mb.basis.insert(flatten(f, scalar), ("ann", j))
        if added:
            mb.annihilator_part.append(f)
    t_basis = time.perf_counter() - t0
    t0 = time.perf_counter()
    coeffs = mb.basis.express(flatten(t.sent_by_bob, scalar))
    t_express = time.perf_counter() - t0
    phases = {"basis": t_basis, "express": t_express}
    n_mono = len(mb.originals)
    if coeffs is None:
        return AttackReport(MASKED, None, n_mono, time.perf_counter() - start, phases)
    eta = coeffs[:n_mono]
    t0 = time.perf_counter()
    key = _monomial_assemble(
        spec, scalar, t.phi.H_inv, HM, t.sent_by_alice, mb.originals, eta
    )
    # consistency: the unexplained part of Bob's value must annihilate HM
    residual = t.sent_by_bob
    for ((k, l), e_mono), c in zip(mb.originals, eta):
        if c != scalar.zero_raw:
            residual = residual - scalar_mul(c, e_mono, scalar)
    if mat_mul(residual, HM):
        return AttackReport(MASKED, None, n_mono, time.perf_counter() - start, phases)
    phases["assemble"] = time.perf_counter() - t0
    return AttackReport(MASKED, key, n_mono, time.perf_counter() - start, phases)


# --------------------------------------------------------------------------
# commutant baseline


def _commutant_solution_space(t: Transcript):
    """Nullspace basis for Y' with Y'(HM) = (HM)Y' and (a_m Y')H = H(a_m Y')."""
    spec = t.platform
    F = spec.base
    n = spec.n
    H = t.phi.H
    HM = mat_mul(H, t.g)
    a_m = t.sent_by_alice
    unit_mats = []
    for a in range(n):
        for b in range(n):
            E = unflatten(spec, [F.one_raw if (r, c) == (a, b) else F.zero_raw
                                 for r in range(n) for c in range(n)], F)
            unit_mats.append(E)
    cols = []
    for E in unit_mats:
        c1 = mat_mul(E, HM) - mat_mul(HM, E)
        XE = mat_mul(a_m, E)
        c2 = mat_mul(XE, H) - mat_mul(H, XE)
        cols.append(flatten(c1, F) + flatten(c2, F))
    neq = 2 * n * n
    rows = [[cols[u][r] for u in range(n * n)] for r in range(neq)]
    solved = solve_linear(F, rows, [F.zero_raw] * neq)
    _, null = solved
    return null


def attack_commutant(t: Transcript) -> AttackReport:
    """Baseline commutant attack; honestly fails when it cannot apply.

    Masked transcripts defeat this method by design, so they produce an
    immediate failure report.  Otherwise the solution space is searched for
    an invertible Y': exhaustively when it has at most 2^12 elements, else
    by 64 random combinations seeded from the transcript bytes.
    """
    if t.phi.variant != INNER:
        raise ValueError("attack_commutant requires an inner automorphism")
    if not t.platform.is_field_base:
        raise ValueError("attack_commutant is implemented for field base rings")
    start = time.perf_counter()
    if t.masked:
        return AttackReport(COMMUTANT, None, 0, time.perf_counter() - start)
    spec = t.platform
    F = spec.base
    # unlike the decomposition attacks nothing here is precomputable offline:
    # the whole solve depends on the session values
    t0 = time.perf_counter()
    null = _commutant_solution_space(t)
    s = len(null)
    yprime = None
    if s:
        if F.order**s <= 4096:
            candidates = itertools.product(*[_field_values(F)] * s)
        else:
            seed = int.from_bytes(
                hashlib.sha256(transcript_to_json(t).encode()).digest()[:8], "big"
            )
            rng = random.Random(seed)
            candidates = ([F.random_raw(rng) for _ in range(s)] for _ in range(64))
        for combo in candidates:
            if all(c == F.zero_raw for c in combo):
                continue
            vec = [F.zero_raw] * (spec.n * spec.n)
            for c, bv in zip(combo, null):
                if c == F.zero_raw:
                    continue
                vec = [F.add(x, F.mul(c, y)) for x, y in zip(vec, bv)]
            cand = unflatten(spec, vec, F)
            if mat_rank(cand) == spec.n:
                yprime = cand
                break
    t_express = time.perf_counter() - t0
    phases = {"basis": 0.0, "express": t_express}
    if yprime is None:
        return AttackReport(COMMUTANT, None, s, time.perf_counter() - start, phases)
    t0 = time.perf_counter()
    X = mat_mul(t.sent_by_alice, yprime)
    Y = mat_inverse(yprime)
    key = mat_mul(mat_mul(X, t.sent_by_bob), Y)
    phases["assemble"] = time.perf_counter() - t0
    return AttackReport(COMMUTANT, key, s, time.perf_counter() - start, phases)


def _field_values(F):
    # deterministic enumeration of all raw values of a small field
    if F.d == 1:
        return list(range(F.p))
    if F.p == 2:
        return list(range(F.order))
    out = []
    def rec(prefix):
        if len(prefix) == F.d:
            out.append(tuple(prefix))
            return
        for c in range(F.p):
            rec(prefix + [c])
    rec([])
    return out


def run_attack(method: str, t: Transcript) -> AttackReport:
    if method == GENERAL:
        return attack_general(t)
    if method == CONJUGATION:
        return attack_conjugation(t)
    if method == MASKED:
        return attack_masked(t)
    if method == COMMUTANT:
        return attack_commutant(t)
    raise ValueError(f"unknown attack method {method!r}")
