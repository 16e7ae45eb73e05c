import random

import pytest

from ncshift.field import field_spec
from ncshift.linalg import SpanBasis, solve_linear

GF2 = field_spec(2)
GF7 = field_spec(7)
GF4 = field_spec(2, 2, (1, 1, 1))
GF49 = field_spec(7, 2)
GF2_127 = field_spec(2, 127)

BACKEND_FIELDS = [GF2, GF7, GF4, GF49, GF2_127]


def test_insert_empty_basis_nonzero():
    sb = SpanBasis(GF7, 3)
    added, coeffs = sb.insert([1, 2, 3], "a")
    assert added and coeffs is None
    assert sb.dim == 1


def test_insert_scalar_multiple():
    sb = SpanBasis(GF7, 2)
    sb.insert([1, 0], "a")
    assert sb.insert([3, 0], "b") == (False, [3])


def test_insert_coordinates():
    sb = SpanBasis(GF7, 2)
    sb.insert([1, 0], 0)
    sb.insert([0, 1], 1)
    assert sb.insert([2, 5], 2) == (False, [2, 5])


def test_express_unit_and_outside():
    sb = SpanBasis(GF7, 3)
    sb.insert([1, 1, 0], "a")
    sb.insert([0, 1, 0], "b")
    assert sb.express([1, 1, 0]) == [1, 0]
    assert sb.express([0, 0, 1]) is None


def test_express_derived_example():
    sb = SpanBasis(GF7, 2)
    sb.insert([1, 1], "a")
    sb.insert([0, 1], "b")
    # 2*(1,1) + 3*(0,1) = (2,5), verified by recombination
    assert sb.express([2, 5]) == [2, 3]


def test_zero_vector_is_dependent_with_empty_coeffs():
    sb = SpanBasis(GF7, 2)
    added, coeffs = sb.insert([0, 0], "z")
    assert not added and coeffs == []


def test_dimension_mismatch():
    sb = SpanBasis(GF7, 3)
    with pytest.raises(ValueError):
        sb.insert([1, 2], "a")
    with pytest.raises(ValueError):
        sb.express([1, 2, 3, 4])


@pytest.mark.parametrize("F", BACKEND_FIELDS, ids=repr)
def test_express_returns_exact_combination(F):
    rng = random.Random(13)
    D = 6
    for _ in range(20):
        sb = SpanBasis(F, D)
        originals = []
        while sb.dim < 3:
            v = [F.random_raw(rng) for _ in range(D)]
            added, _ = sb.insert(v, len(originals))
            if added:
                originals.append(v)
        cs = [F.random_raw(rng) for _ in originals]
        target = [F.zero_raw] * D
        for c, v in zip(cs, originals):
            target = [F.add(t, F.mul(c, x)) for t, x in zip(target, v)]
        assert sb.express(target) == cs


def _naive_rank(F, vectors):
    # text-book elimination, written independently of SpanBasis
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][c] != F.zero_raw:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = F.inv(rows[rank][c])
        rows[rank] = [F.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != F.zero_raw:
                f = rows[i][c]
                rows[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("F", BACKEND_FIELDS, ids=repr)
def test_membership_agrees_with_naive_rank(F):
    rng = random.Random(17)
    for D in (2, 4, 8):
        for _ in range(15):
            sb = SpanBasis(F, D)
            inserted = []
            for step in range(D + 3):
                if rng.random() < 0.4 and inserted:
                    # force a dependent vector: random combination
                    v = [F.zero_raw] * D
                    for w in inserted:
                        c = F.random_raw(rng)
                        v = [F.add(x, F.mul(c, y)) for x, y in zip(v, w)]
                else:
                    v = [F.random_raw(rng) for _ in range(D)]
                before = _naive_rank(F, inserted) if inserted else 0
                after = _naive_rank(F, inserted + [v])
                added, coeffs = sb.insert(v, step)
                assert added == (after > before)
                if added:
                    inserted.append(v)
                else:
                    # recombine the reported coefficients and compare
                    got = [F.zero_raw] * D
                    for c, w in zip(coeffs, inserted):
                        got = [F.add(x, F.mul(c, y)) for x, y in zip(got, w)]
                    assert got == list(v), (got, v)


@pytest.mark.parametrize("F", BACKEND_FIELDS, ids=repr)
def test_echelon_rows_match_transform(F):
    rng = random.Random(23)
    D = 5
    sb = SpanBasis(F, D)
    while sb.dim < 4:
        sb.insert([F.random_raw(rng) for _ in range(D)], sb.dim)
    assert sb.pivot_columns == sorted(sb.pivot_columns)
    for i in range(sb.dim):
        row = sb.echelon_vector(i)
        combo = sb.transform_coeffs(i)
        rebuilt = [F.zero_raw] * D
        for c, orig in zip(combo, sb.originals):
            rebuilt = [F.add(x, F.mul(c, y)) for x, y in zip(rebuilt, orig)]
        assert rebuilt == row


def test_rows_bounded_by_dim():
    rng = random.Random(29)
    sb = SpanBasis(GF7, 3)
    for i in range(20):
        sb.insert([rng.randrange(7) for _ in range(3)], i)
    assert sb.dim <= 3


def test_express_does_not_mutate():
    sb = SpanBasis(GF7, 2)
    sb.insert([1, 0], "a")
    before = (sb.dim, list(sb.pivot_columns), list(sb.tags))
    sb.express([5, 0])
    sb.express([0, 1])
    assert (sb.dim, list(sb.pivot_columns), list(sb.tags)) == before


# -- solve_linear -------------------------------------------------------------


def test_solve_identity():
    part, null = solve_linear(GF7, [[1, 0], [0, 1]], [4, 6])
    assert part == [4, 6] and null == []


def test_solve_inconsistent():
    assert solve_linear(GF7, [[0, 0]], [3]) is None


def test_solve_nullspace_example():
    part, null = solve_linear(GF7, [[1, 2]], [0])
    assert part == [0, 0]
    assert null == [[5, 1]]  # x = -2y, free y = 1


@pytest.mark.parametrize("F", [GF7, GF4, GF2_127], ids=repr)
def test_solve_properties(F):
    rng = random.Random(31)
    for _ in range(25):
        nr, nc = rng.randrange(1, 5), rng.randrange(1, 5)
        A = [[F.random_raw(rng) for _ in range(nc)] for _ in range(nr)]
        x = [F.random_raw(rng) for _ in range(nc)]
        rhs = [
            _dot(F, row, x)
            for row in A
        ]
        out = solve_linear(F, A, rhs)
        assert out is not None  # consistent by construction
        part, null = out
        assert [_dot(F, row, part) for row in A] == rhs
        for nv in null:
            assert all(_dot(F, row, nv) == F.zero_raw for row in A)
        assert len(null) == nc - _naive_rank(F, A + [[F.zero_raw] * nc])
        # solutions stay solutions under adding nullspace vectors
        if null:
            shifted = [F.add(a, b) for a, b in zip(part, null[0])]
            assert [_dot(F, row, shifted) for row in A] == rhs


def _dot(F, row, x):
    acc = F.zero_raw
    for a, b in zip(row, x):
        acc = F.add(acc, F.mul(a, b))
    return acc
