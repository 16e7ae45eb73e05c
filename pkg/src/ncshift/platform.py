"""Matrix platforms: M_n over a finite field or over a group algebra.

A platform is described by a ``PlatformSpec`` (base ring, matrix size n,
and the scalar field over which flattening to coordinate vectors is
linear).  Supported base rings are any ``FieldSpec`` and a group algebra
``GroupAlgebraSpec`` over a prime field.  Matrices are ``PlatformElement``
values holding immutable entry objects; flattening lists matrix entries
row-major, group-algebra coefficients by group-element index, and (when the
scalar field is the prime subfield of an extension base field) field
coordinates by polynomial degree.

Everything here is a pure value: tables are built once and shared
read-only, elements never mutate.
"""

from __future__ import annotations

import functools
import itertools
import random

import numpy as np

from . import _kernels
from .field import FieldElement, FieldSpec, SpecMismatchError, field_spec


class SingularMatrixError(ValueError):
    """Matrix inversion was requested for a non-invertible matrix."""


# --------------------------------------------------------------------------
# permutation groups


def _compose_perm(u, v):
    # apply v first, then u
    return tuple(u[v[i]] for i in range(len(u)))


def _perm_parity(perm):
    seen = [False] * len(perm)
    parity = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


class GroupTable:
    """A finite permutation group with precomputed Cayley table.

    ``cayley[i, j]`` is the index of ``perms[i] o perms[j]`` (right factor
    applied first); ``inverse[i]`` the index of the inverse; ``identity``
    the index of the identity permutation.
    """

    __slots__ = ("name", "perms", "order", "cayley", "inverse", "identity")

    def __init__(self, name: str, perms):
        perms = tuple(tuple(p) for p in perms)
        index = {p: i for i, p in enumerate(perms)}
        if len(index) != len(perms):
            raise ValueError("duplicate permutations")
        n = len(perms)
        cayley = np.zeros((n, n), dtype=np.int64)
        for i, u in enumerate(perms):
            for j, v in enumerate(perms):
                w = _compose_perm(u, v)
                if w not in index:
                    raise ValueError("permutation set is not closed under composition")
                cayley[i, j] = index[w]
        ident = tuple(range(len(perms[0])))
        if ident not in index:
            raise ValueError("identity permutation missing")
        inverse = np.zeros(n, dtype=np.int64)
        for i, u in enumerate(perms):
            inv = tuple(u.index(k) for k in range(len(u)))
            inverse[i] = index[inv]
        cayley.flags.writeable = False
        inverse.flags.writeable = False
        self.name = name
        self.perms = perms
        self.order = n
        self.cayley = cayley
        self.inverse = inverse
        self.identity = index[ident]

    def __eq__(self, other):
        return (
            isinstance(other, GroupTable)
            and self.name == other.name
            and self.perms == other.perms
        )

    def __hash__(self):
        return hash((self.name, self.perms))

    def __repr__(self):
        return f"GroupTable({self.name!r}, order={self.order})"


@functools.lru_cache(maxsize=None)
def build_a5() -> GroupTable:
    """The 60 even permutations of {0..4} in lexicographic one-line order."""
    perms = [p for p in itertools.permutations(range(5)) if _perm_parity(p) == 0]
    perms.sort()
    return GroupTable("A5", perms)


_GROUP_REGISTRY = {"A5": build_a5}


def group_by_name(name: str) -> GroupTable:
    try:
        return _GROUP_REGISTRY[name]()
    except KeyError:
        raise ValueError(f"unknown group table {name!r}") from None


# --------------------------------------------------------------------------
# group algebra


class GroupAlgebraSpec:
    """Group algebra F_p[G] for a prime field and a GroupTable."""

    __slots__ = ("field", "table")

    def __init__(self, field: FieldSpec, table: GroupTable):
        if field.d != 1:
            raise ValueError("group algebras are supported over prime fields only")
        self.field = field
        self.table = table

    def __eq__(self, other):
        return (
            isinstance(other, GroupAlgebraSpec)
            and self.field == other.field
            and self.table == other.table
        )

    def __hash__(self):
        return hash((self.field, self.table))

    def __repr__(self):
        return f"F_{self.field.p}[{self.table.name}]"

    @property
    def dim(self) -> int:
        return self.table.order

    def elem(self, coeffs) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self, coeffs)

    @property
    def zero(self) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self, np.zeros(self.dim, dtype=np.int64))

    @property
    def one(self) -> "GroupAlgebraElement":
        c = np.zeros(self.dim, dtype=np.int64)
        c[self.table.identity] = 1
        return GroupAlgebraElement(self, c)

    def basis(self, i: int) -> "GroupAlgebraElement":
        c = np.zeros(self.dim, dtype=np.int64)
        c[i] = 1
        return GroupAlgebraElement(self, c)

    def random(self, rng) -> "GroupAlgebraElement":
        return GroupAlgebraElement(
            self, np.array([rng.randrange(self.field.p) for _ in range(self.dim)], dtype=np.int64)
        )

    def encode(self, x: "GroupAlgebraElement"):
        # sparse [group-element-index, field-element-encoding] pairs
        return [[int(i), self.field.encode(int(x.coeffs[i]))] for i in np.nonzero(x.coeffs)[0]]

    def decode(self, pairs) -> "GroupAlgebraElement":
        c = np.zeros(self.dim, dtype=np.int64)
        for i, enc in pairs:
            i = int(i)
            if not 0 <= i < self.dim:
                raise ValueError("group element index out of range")
            c[i] = self.field.decode(enc)
        return GroupAlgebraElement(self, c)


class GroupAlgebraElement:
    """Element of F_p[G]: coefficient of group element i at position i."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: GroupAlgebraSpec, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.int64) % spec.field.p
        if coeffs.shape != (spec.dim,):
            raise ValueError("coefficient vector length must equal the group order")
        coeffs.flags.writeable = False
        self.spec = spec
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, GroupAlgebraElement) or other.spec != self.spec:
            raise SpecMismatchError("group algebra mismatch")

    def __add__(self, other):
        self._check(other)
        return GroupAlgebraElement(self.spec, (self.coeffs + other.coeffs) % self.spec.field.p)

    def __sub__(self, other):
        self._check(other)
        return GroupAlgebraElement(self.spec, (self.coeffs - other.coeffs) % self.spec.field.p)

    def __neg__(self):
        return GroupAlgebraElement(self.spec, (-self.coeffs) % self.spec.field.p)

    def __mul__(self, other):
        self._check(other)
        out = _kernels.conv_mod(
            self.coeffs, other.coeffs, self.spec.table.cayley, self.spec.field.p
        )
        return GroupAlgebraElement(self.spec, out)

    def scale(self, c: int) -> "GroupAlgebraElement":
        return GroupAlgebraElement(self.spec, (self.coeffs * (c % self.spec.field.p)) % self.spec.field.p)

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.spec, self.coeffs.tobytes()))

    def __bool__(self):
        return bool(np.any(self.coeffs))

    def __repr__(self):
        return f"GA({self.spec!r}, {self.coeffs.tolist()})"


def ga_mul(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Convolution product in the group algebra."""
    return a * b


def _ga_mul_basis(x: GroupAlgebraElement, gidx: int) -> GroupAlgebraElement:
    # right-multiply by a single group basis element: a coordinate permutation
    cay = x.spec.table.cayley
    out = np.zeros(x.spec.dim, dtype=np.int64)
    out[cay[:, gidx]] = x.coeffs
    return GroupAlgebraElement(x.spec, out)


# --------------------------------------------------------------------------
# platform spec / elements


def base_scalar_field(base) -> FieldSpec:
    """The field a base ring is an algebra over (the field itself, or the
    coefficient field of a group algebra)."""
    if isinstance(base, FieldSpec):
        return base
    if isinstance(base, GroupAlgebraSpec):
        return base.field
    raise TypeError(f"unsupported base ring {base!r}")


def _base_dim_over(base, scalar: FieldSpec) -> int:
    bf = base_scalar_field(base)
    if scalar == bf:
        return base.dim if isinstance(base, GroupAlgebraSpec) else 1
    if scalar == bf.prime_subfield() and isinstance(base, FieldSpec):
        return base.d
    raise ValueError(f"scalar field {scalar!r} is not valid for base {base!r}")


class PlatformSpec:
    """Matrix algebra M_n(base) with a declared flattening scalar field."""

    __slots__ = ("base", "n", "scalar_field", "flat_dim")

    def __init__(self, base, n: int, scalar_field: FieldSpec | None = None):
        if n < 1:
            raise ValueError("matrix size must be >= 1")
        if scalar_field is None:
            scalar_field = base_scalar_field(base)
        self.base = base
        self.n = n
        self.scalar_field = scalar_field
        self.flat_dim = n * n * _base_dim_over(base, scalar_field)

    def __eq__(self, other):
        return (
            isinstance(other, PlatformSpec)
            and self.base == other.base
            and self.n == other.n
            and self.scalar_field == other.scalar_field
        )

    def __hash__(self):
        return hash((self.base, self.n, self.scalar_field))

    def __repr__(self):
        return f"M_{self.n}({self.base!r})"

    @property
    def is_field_base(self) -> bool:
        return isinstance(self.base, FieldSpec)

    def _entry_zero(self):
        return self.base.zero

    def _entry_one(self):
        return self.base.one

    def _coerce_entry(self, v):
        if isinstance(self.base, FieldSpec):
            return self.base.elem(v)
        if isinstance(v, GroupAlgebraElement):
            if v.spec != self.base:
                raise SpecMismatchError("entry from wrong group algebra")
            return v
        return self.base.elem(v)

    def matrix(self, rows) -> "PlatformElement":
        rows = tuple(tuple(self._coerce_entry(v) for v in r) for r in rows)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ValueError(f"need {self.n}x{self.n} entries")
        return PlatformElement(self, rows)

    @property
    def zero(self) -> "PlatformElement":
        z = self._entry_zero()
        return PlatformElement(self, tuple((z,) * self.n for _ in range(self.n)))

    @property
    def identity(self) -> "PlatformElement":
        z, o = self._entry_zero(), self._entry_one()
        return PlatformElement(
            self, tuple(tuple(o if i == j else z for j in range(self.n)) for i in range(self.n))
        )

    def random(self, rng) -> "PlatformElement":
        if self.is_field_base:
            return PlatformElement(
                self,
                tuple(
                    tuple(FieldElement(self.base, self.base.random_raw(rng)) for _ in range(self.n))
                    for _ in range(self.n)
                ),
            )
        return PlatformElement(
            self, tuple(tuple(self.base.random(rng) for _ in range(self.n)) for _ in range(self.n))
        )

    def encode(self, A: "PlatformElement"):
        # row-major list of base-ring entry encodings
        if self.is_field_base:
            return [self.base.encode(e.raw) for row in A.entries for e in row]
        return [self.base.encode(e) for row in A.entries for e in row]

    def decode(self, data) -> "PlatformElement":
        if not isinstance(data, list) or len(data) != self.n * self.n:
            raise ValueError("matrix encoding has wrong length")
        if self.is_field_base:
            vals = [FieldElement(self.base, self.base.decode(e)) for e in data]
        else:
            vals = [self.base.decode(e) for e in data]
        rows = tuple(tuple(vals[i * self.n + j] for j in range(self.n)) for i in range(self.n))
        return PlatformElement(self, rows)


class PlatformElement:
    """Immutable n x n matrix over the platform's base ring."""

    __slots__ = ("spec", "entries")

    def __init__(self, spec: PlatformSpec, entries):
        self.spec = spec
        self.entries = entries

    def _check(self, other):
        if not isinstance(other, PlatformElement) or other.spec != self.spec:
            raise SpecMismatchError("platform mismatch")

    def __add__(self, other):
        self._check(other)
        return PlatformElement(
            self.spec,
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other):
        self._check(other)
        return PlatformElement(
            self.spec,
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __mul__(self, other):
        return mat_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, PlatformElement):
            return NotImplemented
        return self.spec == other.spec and self.entries == other.entries

    def __hash__(self):
        return hash((self.spec, self.entries))

    def __bool__(self):
        return any(bool(e) for row in self.entries for e in row)

    def __repr__(self):
        return f"PlatformElement({self.spec!r}, {self.entries!r})"


def mat_mul(A: PlatformElement, B: PlatformElement) -> PlatformElement:
    """Matrix product over the base ring."""
    A._check(B)
    n = A.spec.n
    a, b = A.entries, B.entries
    rows = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(n):
            acc = ai[0] * b[0][j]
            for k in range(1, n):
                acc = acc + ai[k] * b[k][j]
            row.append(acc)
        rows.append(tuple(row))
    return PlatformElement(A.spec, tuple(rows))


def mat_add(A: PlatformElement, B: PlatformElement) -> PlatformElement:
    return A + B


def mat_pow(A: PlatformElement, k: int) -> PlatformElement:
    if k < 0:
        raise ValueError("use mat_inverse for negative powers")
    result = A.spec.identity
    base = A
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def scalar_mul(c, A: PlatformElement, scalar: FieldSpec | None = None) -> PlatformElement:
    """Multiply a matrix by a scalar from the flattening scalar field.

    c may be a raw scalar value (with scalar given) or a FieldElement of
    either the base field or its prime subfield.
    """
    spec = A.spec
    if isinstance(c, FieldElement):
        scalar, c = c.spec, c.raw
    if scalar is None:
        scalar = spec.scalar_field
    if spec.is_field_base:
        base = spec.base
        if scalar == base:
            craw = c
        elif scalar == base.prime_subfield():
            craw = base.from_int(c if isinstance(c, int) else c[0])
        else:
            raise SpecMismatchError("scalar does not act on this platform")
        ce = FieldElement(base, craw)
        return PlatformElement(
            spec, tuple(tuple(e * ce for e in row) for row in A.entries)
        )
    if scalar != spec.base.field:
        raise SpecMismatchError("scalar does not act on this platform")
    ci = c if isinstance(c, int) else c[0]
    return PlatformElement(
        spec, tuple(tuple(e.scale(ci) for e in row) for row in A.entries)
    )


def _field_rows_raw(A: PlatformElement):
    return [[e.raw for e in row] for row in A.entries]


def mat_inverse(A: PlatformElement) -> PlatformElement:
    """Inverse of a matrix over a field base, by Gauss-Jordan elimination.

    Raises SingularMatrixError when no inverse exists.
    """
    spec = A.spec
    if not spec.is_field_base:
        raise TypeError("mat_inverse requires a field base ring; see invert_matrix")
    F = spec.base
    n = spec.n
    zero, one = F.zero_raw, F.one_raw
    m = [row[:] + [one if i == j else zero for j in range(n)] for i, row in enumerate(_field_rows_raw(A))]
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if m[i][c] != zero), None)
        if pr is None:
            raise SingularMatrixError("matrix is singular")
        m[r], m[pr] = m[pr], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(n):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
    rows = tuple(
        tuple(FieldElement(F, m[i][n + j]) for j in range(n)) for i in range(n)
    )
    return PlatformElement(spec, rows)


def mat_rank(A: PlatformElement) -> int:
    """Rank of a matrix over a field base (Gauss elimination)."""
    spec = A.spec
    if not spec.is_field_base:
        raise TypeError("rank is defined here for field base rings only")
    F = spec.base
    n = spec.n
    zero = F.zero_raw
    m = _field_rows_raw(A)
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if m[i][c] != zero), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(r + 1, n):
            if m[i][c] != zero:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        r += 1
    return r


def invert_matrix(A: PlatformElement) -> PlatformElement:
    """Inverse over any supported base ring.

    Field bases go through mat_inverse.  For a group-algebra base the
    left-multiplication operator by A is a scalar-field-linear map on the
    flattened space, so A^{-1} is recovered by solving L_A X = I as a dense
    linear system over the prime field; in a finite-dimensional algebra a
    left inverse is automatically two-sided.
    """
    spec = A.spec
    if spec.is_field_base:
        return mat_inverse(A)
    scalar = spec.base.field
    D = spec.n * spec.n * spec.base.dim
    p = scalar.p
    n = spec.n
    gdim = spec.base.dim
    # columns of L_A: A times each unit matrix E (single group basis element
    # at entry (r, c)); only column c of the product is nonzero
    L = np.zeros((D, D), dtype=np.int64)
    for r in range(n):
        for c in range(n):
            for g in range(gdim):
                jcol = (r * n + c) * gdim + g
                for i in range(n):
                    prod = _ga_mul_basis(A.entries[i][r], g)
                    L[(i * n + c) * gdim : (i * n + c + 1) * gdim, jcol] = prod.coeffs
    rhs = np.array(flatten(spec.identity, scalar), dtype=np.int64)
    aug = np.concatenate([L, rhs[:, None]], axis=1)
    piv = _kernels.rref_mod(aug, p)
    if len(piv) < D or int(piv[-1]) >= D:
        raise SingularMatrixError("matrix is singular over the group algebra")
    x = np.zeros(D, dtype=np.int64)
    for rr, pc in enumerate(piv):
        x[int(pc)] = aug[rr, D]
    X = unflatten(spec, [int(v) for v in x], scalar)
    if mat_mul(A, X) != spec.identity or mat_mul(X, A) != spec.identity:
        raise SingularMatrixError("inverse verification failed")
    return X


# --------------------------------------------------------------------------
# flattening


def flatten(A: PlatformElement, scalar: FieldSpec | None = None) -> list:
    """Coordinate vector of A over the scalar field.

    Ordering: entries row-major; within a group-algebra entry, coefficients
    by group element index; within a field entry under restriction to the
    prime subfield, coefficients by polynomial degree.  The map is linear
    over the scalar field and a bijection onto vectors of length flat_dim.
    """
    spec = A.spec
    if scalar is None:
        scalar = spec.scalar_field
    out = []
    if spec.is_field_base:
        base = spec.base
        if scalar == base:
            for row in A.entries:
                for e in row:
                    out.append(e.raw)
        elif scalar == base.prime_subfield():
            for row in A.entries:
                for e in row:
                    out.extend(base.coeffs(e.raw))
        else:
            raise ValueError("scalar field does not act on this platform")
        return out
    if scalar != spec.base.field:
        raise ValueError("scalar field does not act on this platform")
    for row in A.entries:
        for e in row:
            out.extend(int(v) for v in e.coeffs)
    return out


def unflatten(spec: PlatformSpec, vec, scalar: FieldSpec | None = None) -> PlatformElement:
    if scalar is None:
        scalar = spec.scalar_field
    n = spec.n
    per = _base_dim_over(spec.base, scalar)
    if len(vec) != n * n * per:
        raise ValueError("flat vector has wrong length")
    rows = []
    pos = 0
    for i in range(n):
        row = []
        for j in range(n):
            chunk = vec[pos : pos + per]
            pos += per
            if spec.is_field_base:
                base = spec.base
                if scalar == base:
                    row.append(FieldElement(base, chunk[0]))
                else:
                    row.append(FieldElement(base, base.from_coeffs([int(c) % base.p for c in chunk])))
            else:
                row.append(spec.base.elem(chunk))
        rows.append(tuple(row))
    return PlatformElement(spec, tuple(rows))


# --------------------------------------------------------------------------
# annihilators


def left_annihilator(A: PlatformElement) -> list[PlatformElement]:
    """Basis of the space of matrices X with X*A = 0 (field base only).

    Each row of X independently satisfies row*A = 0, so the basis consists
    of the nullspace vectors of A^T placed in each row position; its size is
    n*(n - rank(A)).
    """
    from .linalg import solve_linear

    spec = A.spec
    if not spec.is_field_base:
        raise TypeError("left_annihilator requires a field base ring")
    F = spec.base
    n = spec.n
    at = [[A.entries[j][i].raw for j in range(n)] for i in range(n)]
    solved = solve_linear(F, at, [F.zero_raw] * n)
    _, null = solved
    zero = F.zero
    out = []
    for i in range(n):
        for vec in null:
            rows = tuple(
                tuple(FieldElement(F, vec[j]) if r == i else zero for j in range(n))
                for r in range(n)
            )
            out.append(PlatformElement(spec, rows))
    return out


# --------------------------------------------------------------------------
# instance sampling


def sample_instance(spec: PlatformSpec, variant: str, seed: int):
    """Deterministic (H, M) pair for a protocol instance.

    variant: "inner" or "composite" give an invertible H and unconstrained
    M; "masked" additionally makes M singular and nonzero (so HM is
    singular and nonzero).  Group-algebra platforms build H as a product of
    elementary/monomial factors so its inverse is known by construction.
    """
    H, _, M = sample_instance_ex(spec, variant, seed)
    return H, M


def sample_instance_ex(spec: PlatformSpec, variant: str, seed: int):
    """Like sample_instance but also returns the known H inverse."""
    if variant not in ("inner", "composite", "masked"):
        raise ValueError(f"unknown variant {variant!r}")
    rng = random.Random(seed)
    if spec.is_field_base:
        while True:
            H = spec.random(rng)
            if mat_rank(H) == spec.n:
                break
        Hinv = mat_inverse(H)
        if variant == "masked":
            if spec.n < 2:
                raise ValueError("masked instances need n >= 2 (singular nonzero M)")
            F = spec.base
            n = spec.n
            while True:
                col = [F.random_raw(rng) for _ in range(n)]
                rowv = [F.random_raw(rng) for _ in range(n)]
                if any(c != F.zero_raw for c in col) and any(c != F.zero_raw for c in rowv):
                    break
            rows = tuple(
                tuple(FieldElement(F, F.mul(col[i], rowv[j])) for j in range(n))
                for i in range(n)
            )
            M = PlatformElement(spec, rows)  # rank 1: singular and nonzero
        else:
            M = spec.random(rng)
        return H, Hinv, M
    if variant != "inner":
        raise ValueError("group-algebra platforms support the inner variant only")
    H, Hinv = _ga_random_invertible(spec, rng)
    M = spec.random(rng)
    return H, Hinv, M


def _ga_random_invertible(spec: PlatformSpec, rng):
    ga = spec.base
    n = spec.n
    H = spec.identity
    Hinv = spec.identity
    for _ in range(2 * n + 2):
        kind = rng.randrange(3)
        if kind == 0 and n > 1:
            # I + c*E_ij with i != j; inverse is I - c*E_ij
            i = rng.randrange(n)
            j = rng.randrange(n - 1)
            if j >= i:
                j += 1
            c = ga.random(rng)
            F_ = _elementary(spec, i, j, c)
            Finv = _elementary(spec, i, j, -c)
        elif kind == 1:
            # diagonal of units lambda*g
            lams = [rng.randrange(1, ga.field.p) for _ in range(n)]
            gs = [rng.randrange(ga.table.order) for _ in range(n)]
            F_ = _diag_units(spec, lams, gs)
            inv_lams = [pow(l, -1, ga.field.p) for l in lams]
            inv_gs = [int(ga.table.inverse[g]) for g in gs]
            Finv = _diag_units(spec, inv_lams, inv_gs)
        else:
            perm = list(range(n))
            rng.shuffle(perm)
            F_ = _perm_matrix(spec, perm)
            inv_perm = [perm.index(k) for k in range(n)]
            Finv = _perm_matrix(spec, inv_perm)
        H = mat_mul(H, F_)
        Hinv = mat_mul(Finv, Hinv)
    return H, Hinv


def _elementary(spec, i, j, c):
    rows = [list(r) for r in spec.identity.entries]
    rows[i][j] = rows[i][j] + c
    return PlatformElement(spec, tuple(tuple(r) for r in rows))


def _diag_units(spec, lams, gs):
    ga = spec.base
    z = ga.zero
    rows = []
    for i in range(spec.n):
        c = np.zeros(ga.dim, dtype=np.int64)
        c[gs[i]] = lams[i]
        rows.append(tuple(ga.elem(c) if j == i else z for j in range(spec.n)))
    return PlatformElement(spec, tuple(rows))


def _perm_matrix(spec, perm):
    z, o = spec.base.zero, spec.base.one
    rows = tuple(
        tuple(o if j == perm[i] else z for j in range(spec.n)) for i in range(spec.n)
    )
    return PlatformElement(spec, rows)


# --------------------------------------------------------------------------
# spec codec (used by transcripts)


def encode_field_spec(F: FieldSpec):
    return {"p": F.p, "d": F.d, "modulus": F.modulus_coeffs()}


def decode_field_spec(data) -> FieldSpec:
    try:
        p, d, mod = int(data["p"]), int(data["d"]), data["modulus"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"bad field spec encoding: {e}") from None
    return field_spec(p, d, tuple(int(c) for c in mod) if mod is not None else None)


def encode_platform_spec(spec: PlatformSpec):
    if spec.is_field_base:
        base = {"kind": "field", "field": encode_field_spec(spec.base)}
    else:
        base = {
            "kind": "group_algebra",
            "field": encode_field_spec(spec.base.field),
            "group": spec.base.table.name,
        }
    return {"base": base, "n": spec.n, "scalar": encode_field_spec(spec.scalar_field)}


def decode_platform_spec(data) -> PlatformSpec:
    try:
        base = data["base"]
        kind = base["kind"]
        n = int(data["n"])
        scalar = decode_field_spec(data["scalar"])
    except (KeyError, TypeError) as e:
        raise ValueError(f"bad platform spec encoding: {e}") from None
    if kind == "field":
        return PlatformSpec(decode_field_spec(base["field"]), n, scalar)
    if kind == "group_algebra":
        ga = GroupAlgebraSpec(decode_field_spec(base["field"]), group_by_name(base["group"]))
        return PlatformSpec(ga, n, scalar)
    raise ValueError(f"unknown base ring kind {kind!r}")
