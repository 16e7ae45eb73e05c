"""Incremental Gauss elimination over a scalar field.

``SpanBasis`` maintains a row-echelon basis of a growing subspace, records
for every stored row the combination of inserted original vectors that
produced it, and can express any in-span vector in terms of those originals.
Coefficient vectors are deterministic: pivots are chosen as the first
nonzero position in column order and rows are kept in insertion order.

Three storage backends share one interface, picked by the scalar field:

* GF(2): vectors bit-packed into Python ints (echelon part and transform
  part live in one int, so a row operation is a single XOR);
* GF(p), p odd prime: numpy int64 rows, reduced through the numba/numpy
  kernel lane;
* any other GF(p^d): plain lists of raw field values.

All arithmetic is exact, so independence is exact and there are no
tolerances anywhere.  A SpanBasis is a single-writer accumulator while
being built; ``express`` does not mutate and may be called concurrently
once construction is done.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .field import FieldSpec


class SpanBasis:
    """Factory front-end; returns a backend matching the scalar field."""

    def __new__(cls, scalar: FieldSpec, dim_ambient: int):
        if cls is not SpanBasis:
            return super().__new__(cls)
        if scalar.p == 2 and scalar.d == 1:
            return super().__new__(_SpanBasisGF2)
        if scalar.d == 1:
            return super().__new__(_SpanBasisModP)
        return super().__new__(_SpanBasisGeneric)

    def __init__(self, scalar: FieldSpec, dim_ambient: int):
        if dim_ambient < 1:
            raise ValueError("ambient dimension must be positive")
        self.scalar = scalar
        self.dim_ambient = dim_ambient
        self.tags = []        # tags of inserted originals that were added
        self.originals = []   # raw coordinate lists of added originals
        self.pivot_columns = []

    @property
    def dim(self) -> int:
        return len(self.pivot_columns)

    def _check_len(self, v):
        if len(v) != self.dim_ambient:
            raise ValueError(
                f"vector length {len(v)} != ambient dimension {self.dim_ambient}"
            )

    def insert(self, v, tag):
        """Insert vector v (sequence of raw scalar values) with an opaque tag.

        Returns (added, coeffs): added is True and coeffs is None when v
        extends the span; otherwise coeffs lists the combination of the
        previously added originals (in insertion order) that equals v.
        """
        raise NotImplementedError

    def express(self, v):
        """Coefficients of v over the added originals, or None if outside.

        Does not mutate the basis.
        """
        raise NotImplementedError

    def echelon_vector(self, i) -> list:
        """Stored echelon row i as a raw coordinate list."""
        raise NotImplementedError

    def transform_coeffs(self, i) -> list:
        """Combination of originals equal to echelon row i."""
        raise NotImplementedError


class _SpanBasisGF2(SpanBasis):
    def __init__(self, scalar, dim_ambient):
        super().__init__(scalar, dim_ambient)
        self._rows = []  # augmented ints: low dim_ambient bits echelon, rest transform
        self._mask = (1 << dim_ambient) - 1

    def _pack(self, v):
        self._check_len(v)
        a = 0
        for i, c in enumerate(v):
            if c:
                a |= 1 << i
        return a

    def _reduce(self, aug):
        mask = self._mask
        for pc, row in zip(self.pivot_columns, self._rows):
            if (aug >> pc) & 1:
                aug ^= row
        return aug

    def insert(self, v, tag):
        aug = self._reduce(self._pack(v))
        low = aug & self._mask
        if low == 0:
            return False, self._coeff_bits(aug >> self.dim_ambient)
        t = len(self.tags)
        aug ^= 1 << (self.dim_ambient + t)
        pc = (low & -low).bit_length() - 1
        pos = 0
        while pos < len(self.pivot_columns) and self.pivot_columns[pos] < pc:
            pos += 1
        self.pivot_columns.insert(pos, pc)
        self._rows.insert(pos, aug)
        self.tags.append(tag)
        self.originals.append(list(v))
        return True, None

    def express(self, v):
        aug = self._reduce(self._pack(v))
        if aug & self._mask:
            return None
        return self._coeff_bits(aug >> self.dim_ambient)

    def _coeff_bits(self, t):
        # over GF(2) negation is the identity
        return [(t >> i) & 1 for i in range(len(self.tags))]

    def echelon_vector(self, i):
        row = self._rows[i] & self._mask
        return [(row >> j) & 1 for j in range(self.dim_ambient)]

    def transform_coeffs(self, i):
        t = self._rows[i] >> self.dim_ambient
        return [(t >> j) & 1 for j in range(len(self.tags))]


class _SpanBasisModP(SpanBasis):
    def __init__(self, scalar, dim_ambient):
        super().__init__(scalar, dim_ambient)
        self._p = scalar.p
        self._cap = dim_ambient
        self._width = 2 * dim_ambient
        self._rows = np.zeros((dim_ambient, self._width), dtype=np.int64)
        self._pivarr = np.zeros(dim_ambient, dtype=np.int64)

    def _augment(self, v):
        self._check_len(v)
        aug = np.zeros(self._width, dtype=np.int64)
        aug[: self.dim_ambient] = [c % self._p for c in v]
        return aug

    def _reduce(self, aug):
        n = len(self.pivot_columns)
        if n:
            _kernels.eliminate_rows_mod(self._rows, self._pivarr, n, aug, self._p)
        return aug

    def insert(self, v, tag):
        aug = self._reduce(self._augment(v))
        low = aug[: self.dim_ambient]
        hits = np.nonzero(low)[0]
        if hits.shape[0] == 0:
            return False, self._coeff_list(aug)
        t = len(self.tags)
        # transform part of the reduction holds -sum(alpha_j T_j); the stored
        # combination must be (e_t - sum alpha_j T_j) / pivot
        aug[self.dim_ambient + t] = 1
        pc = int(hits[0])
        inv = pow(int(low[pc]), -1, self._p)
        aug = (aug * inv) % self._p
        n = len(self.pivot_columns)
        pos = 0
        while pos < n and self.pivot_columns[pos] < pc:
            pos += 1
        if pos < n:
            self._rows[pos + 1 : n + 1] = self._rows[pos:n].copy()
            self._pivarr[pos + 1 : n + 1] = self._pivarr[pos:n].copy()
        self._rows[pos] = aug
        self._pivarr[pos] = pc
        self.pivot_columns.insert(pos, pc)
        self.tags.append(tag)
        self.originals.append([int(c) % self._p for c in v])
        return True, None

    def express(self, v):
        aug = self._reduce(self._augment(v))
        if np.any(aug[: self.dim_ambient]):
            return None
        return self._coeff_list(aug)

    def _coeff_list(self, aug):
        n = len(self.tags)
        t = aug[self.dim_ambient : self.dim_ambient + n]
        return [int((-c) % self._p) for c in t]

    def echelon_vector(self, i):
        return [int(c) for c in self._rows[i, : self.dim_ambient]]

    def transform_coeffs(self, i):
        return [int(c) for c in self._rows[i, self.dim_ambient : self.dim_ambient + len(self.tags)]]


class _SpanBasisGeneric(SpanBasis):
    def __init__(self, scalar, dim_ambient):
        super().__init__(scalar, dim_ambient)
        self._rows = []   # (echelon list, transform list padded to cap)
        self._cap = dim_ambient

    def _reduce(self, vec, tr):
        F = self.scalar
        zero = F.zero_raw
        for pc, (row, rtr) in zip(self.pivot_columns, self._rows):
            c = vec[pc]
            if c != zero:
                for j in range(self.dim_ambient):
                    if row[j] != zero:
                        vec[j] = F.sub(vec[j], F.mul(c, row[j]))
                for j in range(self._cap):
                    if rtr[j] != zero:
                        tr[j] = F.sub(tr[j], F.mul(c, rtr[j]))
        return vec, tr

    def insert(self, v, tag):
        self._check_len(v)
        F = self.scalar
        zero = F.zero_raw
        vec, tr = self._reduce(list(v), [zero] * self._cap)
        pc = next((j for j in range(self.dim_ambient) if vec[j] != zero), None)
        if pc is None:
            return False, [F.neg(c) for c in tr[: len(self.tags)]]
        t = len(self.tags)
        tr[t] = F.add(tr[t], F.one_raw)
        inv = F.inv(vec[pc])
        vec = [F.mul(inv, c) for c in vec]
        tr = [F.mul(inv, c) for c in tr]
        pos = 0
        while pos < len(self.pivot_columns) and self.pivot_columns[pos] < pc:
            pos += 1
        self.pivot_columns.insert(pos, pc)
        self._rows.insert(pos, (vec, tr))
        self.tags.append(tag)
        self.originals.append(list(v))
        return True, None

    def express(self, v):
        self._check_len(v)
        F = self.scalar
        zero = F.zero_raw
        vec, tr = self._reduce(list(v), [zero] * self._cap)
        if any(c != zero for c in vec):
            return None
        return [F.neg(c) for c in tr[: len(self.tags)]]

    def echelon_vector(self, i):
        return list(self._rows[i][0])

    def transform_coeffs(self, i):
        return list(self._rows[i][1][: len(self.tags)])


def solve_linear(scalar: FieldSpec, rows, rhs):
    """Full solution set of a linear system over a field.

    rows is a list of equations (each a list of raw scalar coefficients),
    rhs the corresponding raw right-hand sides.  Returns
    (particular_solution, nullspace_basis) with raw-value vectors, or None
    when the system is inconsistent.  Pivots are chosen as the first
    nonzero entry in column order, so results are reproducible.
    """
    F = scalar
    zero, one = F.zero_raw, F.one_raw
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    nrows = len(m)
    ncols = len(rows[0]) if nrows else 0
    for r in m:
        if len(r) != ncols + 1:
            raise ValueError("ragged system")
    pivots = []  # (row, col)
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != zero), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(inv, x) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != zero:
            return None
    particular = [zero] * ncols
    pivot_cols = set()
    for pr, pc in pivots:
        particular[pc] = m[pr][ncols]
        pivot_cols.add(pc)
    nullspace = []
    for fc in range(ncols):
        if fc in pivot_cols:
            continue
        vec = [zero] * ncols
        vec[fc] = one
        for pr, pc in pivots:
            vec[pc] = F.neg(m[pr][fc])
        nullspace.append(vec)
    return particular, nullspace
