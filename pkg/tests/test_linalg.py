import random
from fractions import Fraction
from itertools import product

import pytest

from tropmatroid import (
    QQ,
    DimensionMismatch,
    PreconditionViolated,
    PrimeField,
    dot,
    extend_to_hyperplane,
    rank,
    solve_with_unit,
    span,
)

from families import F2, q, qrow


def test_span_examples():
    zero = span(QQ, 2, [])
    assert zero.dim == 0
    full = span(QQ, 2, [qrow([1, 0]), qrow([0, 1])])
    assert full.dim == 2
    line = span(QQ, 2, [qrow([1, 2]), qrow([2, 4])])
    assert line.dim == 1
    assert line.basis == ((q(1), q(2)),)


def test_span_canonical():
    a = span(QQ, 3, [qrow([1, 2, 3]), qrow([0, 1, 1])])
    b = span(QQ, 3, [qrow([2, 4, 6]), qrow([1, 3, 4]), qrow([3, 7, 10])])
    assert a == b
    assert hash(a) == hash(b)


def test_contains_examples():
    zero = span(QQ, 2, [])
    assert zero.contains(qrow([0, 0]))
    line = span(QQ, 2, [qrow([1, 0])])
    assert not line.contains(qrow([1, 5]))
    plane = span(QQ, 2, [qrow([1, 2]), qrow([0, 1])])
    assert plane.contains(qrow([3, 7]))
    with pytest.raises(DimensionMismatch):
        line.contains(qrow([1, 0, 0]))


def test_solve_with_unit_examples():
    lam = solve_with_unit(QQ, [qrow([1, 0])], qrow([0, 1]))
    assert lam == (q(0), q(1))
    assert solve_with_unit(QQ, [qrow([1, 0]), qrow([0, 1])], qrow([1, 1])) is None
    lam = solve_with_unit(QQ, [qrow([1, 1])], qrow([1, 0]))
    assert lam == (q(1), q(-1))
    assert dot(QQ, lam, qrow([1, 1])) == 0
    assert dot(QQ, lam, qrow([1, 0])) == 1


def test_solve_with_unit_absence_oracle():
    # no solution exactly when the unit vector lies in the span of the zeros
    rng = random.Random(11)
    for _ in range(200):
        s = rng.randint(1, 4)
        zeros = [
            qrow([rng.randint(-2, 2) for _ in range(s)])
            for _ in range(rng.randint(0, s + 1))
        ]
        unit = qrow([rng.randint(-2, 2) for _ in range(s)])
        lam = solve_with_unit(QQ, zeros, unit)
        inside = span(QQ, s, zeros).contains(unit)
        assert (lam is None) == inside
        if lam is not None:
            assert all(dot(QQ, lam, z) == 0 for z in zeros)
            assert dot(QQ, lam, unit) == 1


def _cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * rows[0][j] * _cofactor_det(minor)
    return total


def test_rank_against_determinant():
    rng = random.Random(5)
    for _ in range(120):
        s = rng.randint(1, 4)
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(s)] for _ in range(s)]
        assert (rank(QQ, rows) == s) == (_cofactor_det(rows) != 0)


def test_contains_equivalent_to_rank():
    rng = random.Random(6)
    for _ in range(150):
        s = rng.randint(1, 4)
        vecs = [
            qrow([rng.randint(-2, 2) for _ in range(s)])
            for _ in range(rng.randint(0, s + 1))
        ]
        v = qrow([rng.randint(-2, 2) for _ in range(s)])
        inside = span(QQ, s, vecs).contains(v)
        assert inside == (rank(QQ, vecs + [v]) == rank(QQ, vecs))


def test_extend_to_hyperplane_rational():
    zero = span(QQ, 2, [])
    avoid = [qrow([1, 0]), qrow([0, 1]), qrow([1, 1])]
    h = extend_to_hyperplane(QQ, zero, avoid)
    assert h is not None and h.dim == 1
    assert all(not h.contains(v) for v in avoid)


def test_extend_to_hyperplane_already_hyperplane():
    line = span(F2, 2, [[1, 0]])
    # avoid vectors lie outside the line, so the line itself qualifies
    h = extend_to_hyperplane(F2, line, [[0, 1], [1, 1]])
    assert h == line


def test_extend_to_hyperplane_none_over_f2():
    zero = span(F2, 2, [])
    # every line of F_2^2 contains one of the three nonzero vectors
    assert extend_to_hyperplane(F2, zero, [[1, 0], [0, 1], [1, 1]]) is None


def test_extend_to_hyperplane_precondition():
    line = span(QQ, 2, [qrow([1, 0])])
    with pytest.raises(PreconditionViolated):
        extend_to_hyperplane(QQ, line, [qrow([2, 0])])


def _all_hyperplanes_containing(field, L):
    """Brute force: every dim s-1 subspace above L, via all normal vectors."""
    s = L.ambient_dim
    out = set()
    for lam in product(range(field.p), repeat=s):
        if all(x == 0 for x in lam):
            continue
        if any(dot(field, lam, b) != 0 for b in L.basis):
            continue
        from tropmatroid.linalg import nullspace_basis

        out.add(span(field, s, nullspace_basis(field, [lam], s)))
    return out


def test_extend_to_hyperplane_exhaustive_oracle():
    rng = random.Random(9)
    for p in (2, 3, 5):
        field = PrimeField(p)
        for _ in range(40):
            s = rng.randint(2, 4)
            d = rng.randint(0, s - 2)
            L = span(
                field, s, [[rng.randrange(p) for _ in range(s)] for _ in range(d)]
            )
            n_avoid = rng.randint(0, 4)
            avoid = []
            while len(avoid) < n_avoid:
                v = [rng.randrange(p) for _ in range(s)]
                if not L.contains(v):
                    avoid.append(v)
            got = extend_to_hyperplane(field, L, avoid)
            witnesses = [
                h
                for h in _all_hyperplanes_containing(field, L)
                if all(not h.contains(v) for v in avoid)
            ]
            if got is None:
                assert not witnesses
            else:
                assert got.dim == s - 1
                assert all(got.contains(b) for b in L.basis)
                assert all(not got.contains(v) for v in avoid)
                assert got in witnesses


def test_guaranteed_existence_when_avoid_small():
    # existence holds whenever len(avoid) < successor cardinality of the field
    rng = random.Random(21)
    for p in (3, 5):
        field = PrimeField(p)
        for _ in range(30):
            s = rng.randint(2, 3)
            L = span(field, s, [])
            avoid = []
            while len(avoid) < p:  # p < p + 1 = successor cardinality
                v = [rng.randrange(p) for _ in range(s)]
                if any(x != 0 for x in v) and v not in avoid:
                    avoid.append(v)
            assert extend_to_hyperplane(field, L, avoid) is not None
