import random
from fractions import Fraction
from math import factorial

import pytest

from tropmatroid import (
    QQ,
    CharNotZero,
    DiffMonomial,
    DiffPolynomial,
    GroundWindow,
    MixedFields,
    MultiSeries,
    PrecisionExhausted,
    PrimeField,
    RankCollapse,
    WindowMismatch,
    linear_ode,
    merge_tuple_support,
    ode_solution_basis,
    single_block,
    solution_family,
)

from families import even_odd_series, q


def series1(values, bound=None, precision=None):
    bound = bound if bound is not None else len(values)
    return MultiSeries.from_coeff_list(QQ, (bound,), [q(v) for v in values], precision)


def exp_series(order):
    return series1([Fraction(1, factorial(k)) for k in range(order + 1)], order + 1)


# -- MultiSeries basics -------------------------------------------------------


def test_normalization_drops_zeros_and_untrusted():
    f = MultiSeries(QQ, (6,), {(0,): q(0), (1,): q(2), (5,): q(7)}, precision=3)
    assert f.coeffs == {(1,): q(2)}
    assert f.precision == 3


def test_out_of_bounds_rejected():
    with pytest.raises(WindowMismatch):
        MultiSeries(QQ, (3,), {(3,): q(1)})


def test_add_mul_precision():
    a = series1([1, 1, 1, 1], precision=3)
    b = series1([1, 2, 0, 0], 4, precision=2)
    assert (a + b).precision == 2
    prod = a * b
    assert prod.precision == 2
    # (1 + t + t^2 + ...)(1 + 2t) = 1 + 3t + 3t^2 + ... within trust
    assert prod.coeff((0,)) == 1
    assert prod.coeff((1,)) == 3
    assert prod.coeff((2,)) == 3
    assert prod.coeff((3,)) == 0  # beyond trusted degree: dropped


def test_mixed_windows_rejected():
    with pytest.raises(WindowMismatch):
        series1([1, 2]) + series1([1, 2, 3])
    f5 = PrimeField(5)
    a = MultiSeries(f5, (3,), {(0,): 1})
    with pytest.raises(MixedFields):
        series1([1, 0, 0]) + a


# -- theta --------------------------------------------------------------------


def test_theta_examples():
    f = series1([0, 0, 1], 4)  # t^2
    assert f.theta((0,)) == f
    d = f.theta((1,))
    assert d.coeffs == {(1,): q(2)}
    assert d.precision == f.precision - 1

    g = MultiSeries(QQ, (3, 4), {(1, 2): q(1)})  # t1 * t2^2
    d2 = g.theta((1, 1))
    assert d2.coeffs == {(0, 1): q(2)}


def test_theta_composition():
    rng = random.Random(4)
    for _ in range(30):
        coeffs = {
            (rng.randint(0, 4), rng.randint(0, 4)): q(rng.randint(-3, 3))
            for _ in range(5)
        }
        f = MultiSeries(QQ, (5, 5), {k: v for k, v in coeffs.items() if v})
        j1 = (rng.randint(0, 2), rng.randint(0, 2))
        j2 = (rng.randint(0, 2), rng.randint(0, 2))
        lhs = f.theta(j1).theta(j2)
        rhs = f.theta(tuple(a + b for a, b in zip(j1, j2)))
        assert lhs == rhs


def test_theta_char_not_zero():
    f5 = PrimeField(5)
    f = MultiSeries(f5, (4,), {(2,): 1})
    with pytest.raises(CharNotZero):
        f.theta((1,))


# -- differential polynomials -------------------------------------------------


def test_identity_polynomial():
    phi = series1([3, 1, 4, 1, 5])
    p = DiffPolynomial(
        QQ,
        (5,),
        1,
        [(MultiSeries.constant(QQ, (5,), 1), DiffMonomial.variable(0, (0,)))],
    )
    assert p.evaluate((phi,)) == phi


def test_harmonic_on_exponential():
    # y'' + y applied to exp(t) truncated at order 8 gives 2 exp(t) at order 6
    e8 = exp_series(8)
    bounds = e8.bounds
    p = linear_ode(
        [
            MultiSeries.constant(QQ, bounds, 1),
            MultiSeries.zero(QQ, bounds),
        ]
    )
    got = p.evaluate((e8,))
    expected = MultiSeries(
        QQ,
        bounds,
        {(k,): Fraction(2, factorial(k)) for k in range(7)},
        precision=6,
    )
    assert got == expected


def test_is_solution_examples():
    bounds = (8,)
    zero = MultiSeries.zero(QQ, bounds)
    p = linear_ode([MultiSeries.constant(QQ, bounds, 1)])  # y' + y
    assert p.is_solution((zero,), 6)
    # y' - y at the constant 1 has residual -1 at degree 0
    p2 = DiffPolynomial(
        QQ,
        bounds,
        1,
        [
            (MultiSeries.constant(QQ, bounds, 1), DiffMonomial.variable(0, (1,))),
            (MultiSeries.constant(QQ, bounds, -1), DiffMonomial.variable(0, (0,))),
        ],
    )
    one = MultiSeries.constant(QQ, bounds, 1)
    assert not p2.is_solution((one,), 5)
    with pytest.raises(PrecisionExhausted):
        p2.is_solution((one,), 8)  # derivative trims trust below 8


def test_evaluate_linear_in_solutions():
    rng = random.Random(8)
    bounds = (9,)
    for _ in range(25):
        alphas = [
            series1([rng.randint(-2, 2) for _ in range(9)], 9) for _ in range(2)
        ]
        p = linear_ode(alphas)
        phi = series1([rng.randint(-3, 3) for _ in range(9)], 9)
        psi = series1([rng.randint(-3, 3) for _ in range(9)], 9)
        a, b = q(rng.randint(-3, 3)), q(rng.randint(-3, 3))
        combo = phi.scale(a) + psi.scale(b)
        lhs = p.evaluate((combo,))
        rhs = p.evaluate((phi,)).scale(a) + p.evaluate((psi,)).scale(b)
        assert lhs == rhs


def test_general_monomial_evaluation():
    # P = y * y'  at  y = 1 + t:  (1 + t) * 1 = 1 + t
    bounds = (5,)
    p = DiffPolynomial(
        QQ,
        bounds,
        1,
        [
            (
                MultiSeries.constant(QQ, bounds, 1),
                DiffMonomial([(0, (0,), 1), (0, (1,), 1)]),
            )
        ],
    )
    y = series1([1, 1, 0, 0, 0])
    got = p.evaluate((y,))
    assert got.coeff((0,)) == 1 and got.coeff((1,)) == 1
    assert not p.is_linear_homogeneous


def test_two_variable_polynomial_evaluation():
    # P = x0' - x1 vanishes on pairs (phi, phi')
    bounds = (8,)
    one = MultiSeries.constant(QQ, bounds, 1)
    p = DiffPolynomial(
        QQ,
        bounds,
        2,
        [
            (one, DiffMonomial.variable(0, (1,))),
            (one.scale(-1), DiffMonomial.variable(1, (0,))),
        ],
    )
    phi = series1([1, 2, 3, 4, 0, 0, 0, 0])
    assert p.is_solution((phi, phi.theta((1,))), 5)
    assert not p.is_solution((phi, phi), 5)


def test_theta_commutes_with_evaluation():
    rng = random.Random(12)
    bounds = (10,)
    for _ in range(20):
        alphas = [
            series1([rng.randint(-2, 2) for _ in range(10)], 10) for _ in range(2)
        ]
        p = linear_ode(alphas)
        phi = series1([rng.randint(-2, 2) for _ in range(10)], 10)
        lhs = p.theta((1,)).evaluate((phi,))
        rhs = p.evaluate((phi,)).theta((1,))
        # both are d/dt P(phi); precisions agree up to the min rule
        common = min(lhs.precision, rhs.precision)
        for k in range(common + 1):
            assert lhs.coeff((k,)) == rhs.coeff((k,))


def test_theta_poly_order_two_structure():
    # d/dt (y'' + g y' + b y) = y''' + g y'' + (g' + b) y' + b' y
    bounds = (8,)
    gamma = series1([1, 2, 3, 4, 0, 0, 0, 0])
    beta = series1([5, 6, 7, 8, 0, 0, 0, 0])
    p = linear_ode([beta, gamma]).theta((1,))
    by_mono = {mono.factors: coeff for coeff, mono in p.terms}
    third = by_mono[((0, (3,), 1),)]
    assert third.coeff((0,)) == 1
    second = by_mono[((0, (2,), 1),)]
    assert second.coeff((1,)) == 2  # gamma itself
    first = by_mono[((0, (1,), 1),)]
    assert first.coeff((0,)) == gamma.coeff((1,)) + beta.coeff((0,))
    zeroth = by_mono[((0, (0,), 1),)]
    assert zeroth.coeff((0,)) == beta.coeff((1,))


# -- ODE solving ----------------------------------------------------------------


def test_ode_basis_exponential():
    alpha0 = MultiSeries.constant(QQ, (7,), -1)
    (sol,) = ode_solution_basis([alpha0], 6)
    assert sol == exp_series(6)


def test_ode_basis_harmonic():
    bounds = (7,)
    alphas = [MultiSeries.constant(QQ, bounds, 1), MultiSeries.zero(QQ, bounds)]
    cos_t, sin_t = ode_solution_basis(alphas, 6)
    assert cos_t.coeffs == {
        (0,): q(1),
        (2,): Fraction(-1, 2),
        (4,): Fraction(1, 24),
        (6,): Fraction(-1, 720),
    }
    assert sin_t.coeffs == {
        (1,): q(1),
        (3,): Fraction(-1, 6),
        (5,): Fraction(1, 120),
    }


def test_ode_basis_properties():
    rng = random.Random(3)
    for _ in range(15):
        r = rng.randint(1, 3)
        n = 14
        alphas = [
            series1([rng.randint(-2, 2) for _ in range(n + 1)], n + 1)
            for _ in range(r)
        ]
        basis = ode_solution_basis(alphas, n)
        p = linear_ode(alphas)
        for k, sol in enumerate(basis):
            assert p.is_solution((sol,), n - r)
            # initial conditions: y^(j)(0) = delta_{jk}
            for j in range(r):
                assert sol.coeff((j,)) * factorial(j) == (1 if j == k else 0)
        from tropmatroid import rank

        rows = [[sol.coeff((i,)) for i in range(n + 1)] for sol in basis]
        assert rank(QQ, rows) == r


def test_ode_basis_precision_guard():
    alpha0 = MultiSeries.constant(QQ, (3,), -1)  # trusted through degree 2
    with pytest.raises(PrecisionExhausted):
        ode_solution_basis([alpha0], 6)


# -- merge and family ----------------------------------------------------------


def test_merge_tuple_support_examples():
    w = GroundWindow([[4], [4]])
    assert merge_tuple_support(w, [[], []]).members == frozenset()
    got = merge_tuple_support(w, [[(0,)], [(1,)]])
    assert got.labels() == [(0, (0,)), (1, (1,))]
    with pytest.raises(WindowMismatch):
        merge_tuple_support(w, [[(0,)]])


def test_merge_monotone():
    w = GroundWindow([[3], [3]])
    a = merge_tuple_support(w, [[(0,)], [(1,)]])
    b = merge_tuple_support(w, [[(0,), (1,)], [(1,), (2,)]])
    assert a.members <= b.members


def test_solution_family_even_odd():
    phi1, phi2 = even_odd_series(12)
    fam = solution_family(single_block(12), [phi1, phi2])
    evens = [i for i in range(12) if i % 2 == 0]
    odds = [i for i in range(12) if i % 2 == 1]
    assert [sorted(c.members) for c in fam.circuits()] == [evens, odds]


def test_solution_family_two_blocks():
    # two-component solutions merge into a two-block window
    w = GroundWindow([[3], [3]])
    s1 = (series1([1, 0, 0], 3), series1([0, 1, 0], 3))
    s2 = (series1([0, 1, 0], 3), series1([1, 0, 0], 3))
    fam = solution_family(w, [s1, s2])
    assert fam.s == 2 and fam.window.size == 6
    sup = fam.support([q(1), q(0)])
    assert sup.labels() == [(0, (0,)), (1, (1,))]


def test_solution_family_rank_collapse():
    phi = series1([1, 2, 3, 0], 4)
    with pytest.raises(RankCollapse):
        solution_family(single_block(4), [phi, phi.scale(2)])


def test_solution_family_needs_full_trust():
    phi = series1([1, 2, 3, 0], 4, precision=2)
    with pytest.raises(PrecisionExhausted):
        solution_family(single_block(4), [phi])


def test_single_solution_family():
    phi = series1([1, 0, 2, 0], 4)
    fam = solution_family(single_block(4), [phi])
    assert [sorted(c.members) for c in fam.circuits()] == [[0, 2]]


def test_solution_family_cofinite_circuits():
    # 1 + t^2 + t^3 + ...  and  t + 2t^2 + 3t^3 + ...: every circuit is the
    # window with a single point removed
    size = 10
    phi1 = series1([1, 0] + [1] * (size - 2), size)
    phi2 = series1(list(range(size)), size)
    fam = solution_family(single_block(size), [phi1, phi2])
    expected = sorted(sorted(set(range(size)) - {n}) for n in range(size))
    assert [sorted(c.members) for c in fam.circuits()] == expected


def test_support_commutes_with_merge():
    # the support of a merged tuple equals the merge of componentwise supports
    rng = random.Random(44)
    w = GroundWindow([[5], [5]])
    for _ in range(20):
        parts = []
        for _k in range(2):
            values = [rng.randint(-2, 2) for _ in range(5)]
            parts.append(series1(values, 5))
        merged_row = [parts[0].coeff((i,)) for i in range(5)] + [
            parts[1].coeff((i,)) for i in range(5)
        ]
        direct = frozenset(i for i, v in enumerate(merged_row) if v != 0)
        via_map = merge_tuple_support(
            w, [p.support_members() for p in parts]
        ).members
        assert direct == via_map
