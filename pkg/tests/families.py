"""Shared instance builders for the test suite."""

from fractions import Fraction

from tropmatroid import (
    QQ,
    GeneratorFamily,
    MultiSeries,
    PrimeField,
    field_enumerate,
    single_block,
)

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)

FIELDS = (F2, F3, F5, QQ)


def q(*args):
    return Fraction(*args)


def qrow(values):
    return [Fraction(v) for v in values]


def intro_family():
    """The three-point family over F_2 spanned by (0,1,1) and (1,0,1)."""
    return GeneratorFamily(F2, single_block(3), [[0, 1, 1], [1, 0, 1]])


def geometric_family(size):
    """Rows 1 + t^2 + t^3 + ... and t + 2t^2 + 3t^3 + ... on a window."""
    row1 = qrow([1, 0] + [1] * (size - 2))
    row2 = qrow(range(size))
    return GeneratorFamily(QQ, single_block(size), [row1, row2])


def even_odd_family(size):
    row1 = qrow([1 if i % 2 == 0 else 0 for i in range(size)])
    row2 = qrow([0 if i % 2 == 0 else 1 for i in range(size)])
    return GeneratorFamily(QQ, single_block(size), [row1, row2])


def even_odd_series(size):
    phi1 = MultiSeries.from_coeff_list(
        QQ, (size,), [1 if i % 2 == 0 else 0 for i in range(size)]
    )
    phi2 = MultiSeries.from_coeff_list(
        QQ, (size,), [0 if i % 2 == 0 else 1 for i in range(size)]
    )
    return phi1, phi2


def sharpness_family(p):
    """The tight example over F_p on p+1 points: the full window is a scrawl
    but not a support.

    Row 1 is the all-ones vector with a single zero; row 2 enumerates the
    whole field over the other positions, with a 1 at the zero position.
    """
    field = PrimeField(p)
    size = p + 1
    row1 = [0] + [1] * p
    row2 = [1] + field_enumerate(field, p)
    return GeneratorFamily(field, single_block(size), [row1, row2])


def random_family(rng, field, s, n_cols, max_tries=200):
    """A random rank-s family; retries until truncation keeps full rank."""
    for _ in range(max_tries):
        if field.kind == "Fp":
            rows = [
                [rng.randrange(field.p) for _ in range(n_cols)] for _ in range(s)
            ]
        else:
            rows = [
                [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n_cols)]
                for _ in range(s)
            ]
        try:
            return GeneratorFamily(field, single_block(n_cols), rows)
        except Exception:
            continue
    raise AssertionError("could not draw a full-rank family")
