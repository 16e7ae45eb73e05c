"""Exact arithmetic in prime fields GF(p) and extension fields GF(p^d).

Raw element representation is chosen per field for speed:

* d = 1 (any p): an int in [0, p).
* p = 2, d > 1: a bit-packed int whose bit i is the coefficient of x^i;
  the modulus polynomial is packed the same way (degree-d bit set).
* odd p, d > 1: a length-d tuple of ints in [0, p), coefficient of x^i
  at position i.

``FieldSpec`` owns the raw operations (add/mul/inv/pow on raw values) and
the text codec; ``FieldElement`` is a thin immutable wrapper with operator
overloads used at API boundaries and in tests.  Specs and elements are
immutable after construction, so everything here is safe to share between
threads.

The text encoding is: for p = 2, a lowercase hex string of ceil(d/8) bytes
with bit i of byte i//8 (LSB first) equal to the coefficient of x^i; for
odd p, the list of coefficients [c0, c1, ...].
"""

from __future__ import annotations

import functools


class SpecMismatchError(ValueError):
    """Operands belong to different field/ring/platform specs."""


def is_probable_prime(n: int) -> bool:
    """Trial-division primality check; fine for desk-scale characteristics."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# bit-spread table: byte b -> b with a zero interleaved after every bit,
# i.e. the carry-less square of b
_SPREAD = []
for _b in range(256):
    _s = 0
    for _i in range(8):
        if (_b >> _i) & 1:
            _s |= 1 << (2 * _i)
    _SPREAD.append(_s)
del _b, _s, _i


def _clmul(a: int, b: int) -> int:
    """Carry-less product of bit-packed polynomials, 4-bit windowed."""
    if a == 0 or b == 0:
        return 0
    # 16-entry table of nibble multiples of b
    t0 = 0
    t1 = b
    t2 = b << 1
    t3 = t2 ^ b
    t4 = b << 2
    t5 = t4 ^ b
    t6 = t3 << 1
    t7 = t6 ^ b
    t8 = b << 3
    t9 = t8 ^ b
    t10 = t5 << 1
    t11 = t10 ^ b
    t12 = t6 << 1
    t13 = t12 ^ b
    t14 = t7 << 1
    t15 = t14 ^ b
    tab = (t0, t1, t2, t3, t4, t5, t6, t7, t8, t9, t10, t11, t12, t13, t14, t15)
    r = tab[a & 0xF]
    sh = 4
    a >>= 4
    while a:
        r ^= tab[a & 0xF] << sh
        a >>= 4
        sh += 4
    return r


def _gf2_sqr_raw(a: int) -> int:
    r = 0
    sh = 0
    while a:
        r ^= _SPREAD[a & 0xFF] << sh
        a >>= 8
        sh += 16
    return r


def _gf2_poly_divmod(a: int, b: int) -> tuple[int, int]:
    """Quotient and remainder of bit-packed GF(2)[x] division."""
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length() - 1
    q = 0
    while True:
        da = a.bit_length() - 1
        if da < db or a == 0:
            return q, a
        sh = da - db
        q |= 1 << sh
        a ^= b << sh


def _gf2_poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_poly_divmod(a, b)[1]
    return a


class FieldSpec:
    """A finite field GF(p^d) with a fixed monic irreducible modulus.

    Use the cached :func:`field_spec` factory rather than constructing
    directly so that equal fields share one object.
    """

    __slots__ = ("p", "d", "modulus", "order", "_mask", "_red_low", "_red_low_deg")

    def __init__(self, p: int, d: int = 1, modulus=None, _validate_modulus: bool = True):
        if not is_probable_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.d = d
        self.order = p**d
        if d == 1:
            if modulus not in (None, ()):
                raise ValueError("degree-1 fields take no modulus")
            self.modulus = None
            self._mask = None
            self._red_low = None
            self._red_low_deg = None
            return
        if modulus is None:
            modulus = _default_modulus(p, d)
        if p == 2:
            if isinstance(modulus, (tuple, list)):
                modulus = _pack_bits(modulus)
            if modulus.bit_length() - 1 != d:
                raise ValueError("modulus degree does not match d")
            self.modulus = int(modulus)
            self._mask = (1 << d) - 1
            self._red_low = self.modulus ^ (1 << d)
            self._red_low_deg = self._red_low.bit_length() - 1
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != d + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree d")
            self.modulus = modulus
            self._mask = None
            self._red_low = None
            self._red_low_deg = None
        if _validate_modulus and not poly_irreducible(p, self.modulus_coeffs()):
            raise ValueError("modulus polynomial is reducible")

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.p, self.d, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.d})"

    def modulus_coeffs(self):
        """Modulus as a coefficient list c0..cd (d >= 2 only)."""
        if self.d == 1:
            return None
        if self.p == 2:
            return [(self.modulus >> i) & 1 for i in range(self.d + 1)]
        return list(self.modulus)

    def prime_subfield(self) -> "FieldSpec":
        return field_spec(self.p)

    # -- raw arithmetic ----------------------------------------------------

    @property
    def zero_raw(self):
        return 0 if (self.d == 1 or self.p == 2) else (0,) * self.d

    @property
    def one_raw(self):
        if self.d == 1 or self.p == 2:
            return 1
        return (1,) + (0,) * (self.d - 1)

    def add(self, a, b):
        if self.d == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.d == 1:
            return (a - b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.d == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        p = self.p
        return tuple((-x) % p for x in a)

    def _reduce2(self, r: int) -> int:
        # fold the high part through x^d = red_low; converges fast when the
        # low part of the modulus has small degree, else fall back bitwise
        d = self.d
        if self._red_low_deg * 2 <= d:
            mask = self._mask
            low = self._red_low
            while r >> d:
                hi = r >> d
                folded = 0
                b = low
                sh = 0
                while b:
                    if b & 1:
                        folded ^= hi << sh
                    b >>= 1
                    sh += 1
                r = (r & mask) ^ folded
            return r
        m = self.modulus
        while True:
            bl = r.bit_length()
            if bl <= d:
                return r
            r ^= m << (bl - 1 - d)

    def mul(self, a, b):
        if self.d == 1:
            return (a * b) % self.p
        if self.p == 2:
            return self._reduce2(_clmul(a, b))
        return self._mul_tuple(a, b)

    def _mul_tuple(self, a, b):
        p, d = self.p, self.d
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        modlow = self.modulus[:-1]
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i] % p
            if c:
                base = i - d
                for j, mj in enumerate(modlow):
                    prod[base + j] -= c * mj
            prod[i] = 0
        return tuple(c % p for c in prod[:d])

    def sqr(self, a):
        if self.p == 2 and self.d > 1:
            return self._reduce2(_gf2_sqr_raw(a))
        return self.mul(a, a)

    def inv(self, a):
        if a == self.zero_raw:
            raise ZeroDivisionError("inverse of zero field element")
        if self.d == 1:
            return pow(a, -1, self.p)
        if self.p == 2:
            return self._inv2(a)
        return self._inv_tuple(a)

    def _inv2(self, a: int) -> int:
        # extended Euclid on bit-packed polynomials
        r0, r1 = self.modulus, a
        t0, t1 = 0, 1
        while r1:
            q, rem = _gf2_poly_divmod(r0, r1)
            r0, r1 = r1, rem
            t0, t1 = t1, t0 ^ _clmul(q, t1)
        # r0 == gcd == 1 because the modulus is irreducible and a != 0
        return self._reduce2(t0)

    def _inv_tuple(self, a):
        p = self.p
        r0 = list(self.modulus)
        r1 = list(a)
        t0, t1 = [0], [1]

        def deg(f):
            for i in range(len(f) - 1, -1, -1):
                if f[i] % p:
                    return i
            return -1

        def polsub_scaled(f, g, c, shift):
            need = len(g) + shift
            if len(f) < need:
                f = f + [0] * (need - len(f))
            for i, gi in enumerate(g):
                f[shift + i] = (f[shift + i] - c * gi) % p
            return f

        while deg(r1) >= 0:
            d0, d1 = deg(r0), deg(r1)
            if d0 < d1:
                r0, r1 = r1, r0
                t0, t1 = t1, t0
                continue
            c = (r0[d0] * pow(r1[d1], -1, p)) % p
            r0 = polsub_scaled(r0, r1, c, d0 - d1)
            t0 = polsub_scaled(t0, t1, c, d0 - d1)
        g = deg(r0)
        if g != 0:
            raise ZeroDivisionError("inverse of zero field element")
        scale = pow(r0[0] % p, -1, p)
        out = [(c * scale) % p for c in t0[: self.d]]
        out += [0] * (self.d - len(out))
        return tuple(out)

    def pow_(self, a, e):
        """a**e by square and multiply; e is any nonnegative int, 0**0 = 1."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        if self.d == 1:
            return pow(a, e, self.p)
        result = self.one_raw
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.sqr(base)
        return result

    # -- conversions -------------------------------------------------------

    def coeffs(self, a) -> list[int]:
        """Canonical coefficient vector of length d (coefficient of x^i at i)."""
        if self.d == 1:
            return [a]
        if self.p == 2:
            return [(a >> i) & 1 for i in range(self.d)]
        return list(a)

    def from_coeffs(self, v):
        v = list(v)
        if len(v) != self.d:
            raise ValueError(f"need exactly {self.d} coefficients")
        if any(not (0 <= int(c) < self.p) for c in v):
            raise ValueError("coefficient out of range")
        if self.d == 1:
            return int(v[0])
        if self.p == 2:
            return _pack_bits(v)
        return tuple(int(c) for c in v)

    def from_int(self, n: int):
        """Embed a plain integer via the prime subfield (n mod p)."""
        c = n % self.p
        if self.d == 1:
            return c
        if self.p == 2:
            return c
        return (c,) + (0,) * (self.d - 1)

    def random_raw(self, rng):
        if self.d == 1:
            return rng.randrange(self.p)
        if self.p == 2:
            return rng.getrandbits(self.d)
        return tuple(rng.randrange(self.p) for _ in range(self.d))

    # -- text codec --------------------------------------------------------

    def encode(self, a):
        """JSON-embeddable form: hex string for p = 2, coefficient list else."""
        if self.p == 2:
            nbytes = (self.d + 7) // 8
            return a.to_bytes(nbytes, "little").hex()
        return self.coeffs(a)

    def decode(self, s):
        if self.p == 2:
            if not isinstance(s, str):
                raise ValueError("expected hex string for characteristic-2 element")
            nbytes = (self.d + 7) // 8
            raw = bytes.fromhex(s)
            if len(raw) != nbytes:
                raise ValueError("element encoding has wrong byte length")
            a = int.from_bytes(raw, "little")
            if a >> self.d:
                raise ValueError("element encoding exceeds field degree")
            return a
        if not isinstance(s, (list, tuple)):
            raise ValueError("expected coefficient list for odd-characteristic element")
        return self.from_coeffs(s)

    def elem(self, value) -> "FieldElement":
        """Wrap a raw value / int / coefficient list as a FieldElement."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise SpecMismatchError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if self.d == 1:
                return FieldElement(self, value % self.p)
            if self.p == 2:
                if value >> self.d:
                    raise ValueError("packed value exceeds field degree")
                return FieldElement(self, value)
            return FieldElement(self, self.from_int(value))
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_coeffs(value))
        raise TypeError(f"cannot build field element from {type(value).__name__}")

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, self.zero_raw)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.one_raw)


def _pack_bits(v) -> int:
    a = 0
    for i, c in enumerate(v):
        c = int(c)
        if c not in (0, 1):
            raise ValueError("GF(2) coefficients must be bits")
        if c:
            a |= 1 << i
    return a


def _default_modulus(p: int, d: int):
    """Deterministic smallest monic irreducible of degree d over GF(p)."""
    if p == 2:
        c = 1
        while True:
            cand = (1 << d) | c
            if poly_irreducible(2, [(cand >> i) & 1 for i in range(d + 1)]):
                return cand
            c += 2  # constant term must stay 1, else x divides
    n = 1
    while True:
        low = []
        m = n
        for _ in range(d):
            low.append(m % p)
            m //= p
        cand = low + [1]
        if cand[0] != 0 and poly_irreducible(p, cand):
            return tuple(cand)
        n += 1


@functools.lru_cache(maxsize=None)
def field_spec(p: int, d: int = 1, modulus=None) -> FieldSpec:
    """Cached FieldSpec factory; equal parameters return the same object."""
    return FieldSpec(p, d, modulus)


class FieldElement:
    """Immutable element of a FieldSpec with operator overloads."""

    __slots__ = ("spec", "raw")

    def __init__(self, spec: FieldSpec, raw):
        self.spec = spec
        self.raw = raw

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise SpecMismatchError(
                    f"field mismatch: {self.spec!r} vs {other.spec!r}"
                )
            return other
        if isinstance(other, int):
            return FieldElement(self.spec, self.spec.from_int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add(self.raw, o.raw))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(self.raw, o.raw))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub(o.raw, self.raw))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.raw, o.raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul(self.raw, self.spec.inv(o.raw)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.raw))

    def __pow__(self, e):
        return FieldElement(self.spec, self.spec.pow_(self.raw, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.raw == other.raw
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.raw))

    def __bool__(self):
        return self.raw != self.spec.zero_raw

    def __repr__(self):
        return f"FieldElement({self.spec!r}, {self.spec.coeffs(self.raw)})"

    @property
    def coeffs(self) -> list[int]:
        return self.spec.coeffs(self.raw)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.raw))


# -- public operation names ------------------------------------------------


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def ff_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def ff_pow(a: FieldElement, e: int) -> FieldElement:
    return a**e


# -- irreducibility ----------------------------------------------------------


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def poly_irreducible(p: int, f) -> bool:
    """Rabin irreducibility test for a monic polynomial f over GF(p).

    f is a coefficient sequence c0..cn (cn = 1).  Checks that
    x^(p^n) == x mod f and that gcd(x^(p^(n/q)) - x, f) = 1 for every prime
    divisor q of n.

    Raises ValueError if f is not monic of degree >= 1.
    """
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    coeffs = [int(c) % p for c in f]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        raise ValueError("polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    if n == 1:
        return True
    if p == 2:
        return _rabin_gf2(_pack_bits(coeffs))
    return _rabin_odd(p, coeffs)


def _rabin_gf2(f: int) -> bool:
    n = f.bit_length() - 1
    if f & 1 == 0:
        return False  # x divides

    def sqr_mod(a):
        return _gf2_poly_divmod(_gf2_sqr_raw(a), f)[1]

    # frob[k] = x^(2^k) mod f, built by repeated squaring
    a = 2  # the polynomial x
    reached = {0: a}
    for k in range(1, n + 1):
        a = sqr_mod(a)
        reached[k] = a
    if reached[n] != 2:
        return False
    for q in _prime_factors(n):
        g = _gf2_poly_gcd(reached[n // q] ^ 2, f)
        if g != 1:
            return False
    return True


def _rabin_odd(p: int, coeffs: list[int]) -> bool:
    n = len(coeffs) - 1
    modlow = coeffs[:-1]

    def mulmod(a, b):
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        for i in range(len(prod) - 1, n - 1, -1):
            c = prod[i] % p
            if c:
                base = i - n
                for j, mj in enumerate(modlow):
                    prod[base + j] -= c * mj
            prod[i] = 0
        out = [c % p for c in prod[:n]]
        while len(out) < n:
            out.append(0)
        return out

    def powp(a):
        # a^p by square and multiply
        result = [1] + [0] * (n - 1)
        base = a
        e = p
        while e:
            if e & 1:
                result = mulmod(result, base)
            e >>= 1
            if e:
                base = mulmod(base, base)
        return result

    def poly_gcd(a, b):
        a = a[:]
        b = b[:]

        def deg(f):
            for i in range(len(f) - 1, -1, -1):
                if f[i] % p:
                    return i
            return -1

        while deg(b) >= 0:
            da, db = deg(a), deg(b)
            if da < db:
                a, b = b, a
                continue
            c = (a[da] * pow(b[db], -1, p)) % p
            for j in range(db + 1):
                a[da - db + j] = (a[da - db + j] - c * b[j]) % p
        return a

    x = [0, 1] + [0] * (n - 2) if n >= 2 else [0, 1]
    frob = {0: x[:n] + [0] * max(0, n - len(x))}
    a = frob[0]
    for k in range(1, n + 1):
        a = powp(a)
        frob[k] = a
    xv = frob[0]
    if frob[n] != xv:
        return False
    full = coeffs[:]
    for q in _prime_factors(n):
        diff = [(u - v) % p for u, v in zip(frob[n // q], xv)]
        g = poly_gcd(full, diff)
        nz = [c for c in g if c % p]
        dg = -1
        for i in range(len(g) - 1, -1, -1):
            if g[i] % p:
                dg = i
                break
        if dg != 0 or not nz:
            return False
    return True
