"""Exact field arithmetic over the rationals and prime fields.

Scalars are plain values: ``fractions.Fraction`` for the rationals (always in
lowest terms with positive denominator) and ``int`` residues in ``[0, p)`` for
a prime field.  The field object carries the operations, so vectors and
matrices stay cheap tuples.

The rationals come with a fixed enumeration a_0, a_1, a_2, ... used by the
order-two counterexample instance: a_0 = 0, a_1 = 1, and the tail (a_i)_{i>=2}
runs through all of Q \\ {0}, interleaving +q, -q with the positive rationals
in Calkin-Wilf breadth-first order.  The value 1 therefore occurs twice, at
index 1 and again at index 2; ``rational_index`` always reports the tail
occurrence (index >= 2 for nonzero arguments).
"""

from fractions import Fraction

from .errors import CountExceedsField, MixedFields


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Rationals:
    """The field Q, scalars represented as ``Fraction``."""

    kind = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    # None encodes an infinite successor cardinality.
    successor_cardinality = None

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        return a * self.inv(b)

    def is_zero(self, a):
        return a == 0

    def coerce(self, x):
        """Build a scalar from an int, Fraction, or {"num","den"} object."""
        if isinstance(x, bool):
            raise MixedFields(f"not a rational scalar: {x!r}")
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, dict) and set(x) == {"num", "den"}:
            return Fraction(x["num"], x["den"])
        raise MixedFields(f"not a rational scalar: {x!r}")

    def check(self, x):
        if not isinstance(x, Fraction):
            raise MixedFields(f"expected a Fraction over Q, got {x!r}")
        return x

    def enumerate_prefix(self, count):
        return [rational_enumerate(i) for i in range(count)]

    def scalar_to_json(self, a):
        return {"num": a.numerator, "den": a.denominator}

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField:
    """The field F_p for a machine-word prime p, scalars as residues."""

    kind = "Fp"
    successor_cardinality_is_finite = True

    def __init__(self, p):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"modulus must be a prime integer, got {p!r}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p
        self.successor_cardinality = p + 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def coerce(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise MixedFields(f"not an F_{self.p} scalar: {x!r}")
        return x % self.p

    def check(self, x):
        if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < self.p:
            raise MixedFields(f"expected a residue in [0,{self.p}), got {x!r}")
        return x

    def enumerate_prefix(self, count):
        if count > self.p:
            raise CountExceedsField(
                f"asked for {count} distinct elements of F_{self.p}"
            )
        return list(range(count))

    def scalar_to_json(self, a):
        return a

    def to_json(self):
        return {"Fp": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = Rationals()


def field_from_json(obj):
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        return PrimeField(obj["Fp"])
    raise ValueError(f"unrecognized field spec: {obj!r}")


def field_enumerate(field, count):
    """First ``count`` pairwise-distinct elements of the field.

    For F_p these are the residues 0..count-1 (CountExceedsField beyond p);
    for Q the prefix of the fixed rational enumeration.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    return field.enumerate_prefix(count)


def calkin_wilf(n):
    """The n-th positive rational in Calkin-Wilf breadth-first order, n >= 1.

    Position 1 is 1/1; position 2n is num/(num+den) and 2n+1 is (num+den)/den,
    so the binary digits of n below its leading bit trace the path from the
    root (0 = left, 1 = right).
    """
    if n < 1:
        raise ValueError("Calkin-Wilf positions start at 1")
    num, den = 1, 1
    for bit in bin(n)[3:]:
        if bit == "1":
            num += den
        else:
            den += num
    return Fraction(num, den)


def calkin_wilf_index(q):
    """Inverse of :func:`calkin_wilf` for a positive rational.

    Walks the tree back to the root; runs of identical steps are batched by
    division, so the cost is the length of the continued fraction of q.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("Calkin-Wilf enumerates positive rationals only")
    num, den = q.numerator, q.denominator
    bits = []
    while (num, den) != (1, 1):
        if num > den:
            k = (num - 1) // den
            bits.append("1" * k)
            num -= k * den
        else:
            k = (den - 1) // num
            bits.append("0" * k)
            den -= k * num
    return int("1" + "".join(reversed(bits)), 2)


def rational_enumerate(i):
    """The i-th element of the fixed enumeration of Q (see module docstring)."""
    if i < 0:
        raise ValueError("enumeration index must be nonnegative")
    if i == 0:
        return Fraction(0)
    if i == 1:
        return Fraction(1)
    k = i - 2
    q = calkin_wilf(k // 2 + 1)
    return q if k % 2 == 0 else -q


def rational_index(q):
    """Position of q in the enumeration: 0 for q = 0, else the unique i >= 2.

    Total and exact; the inverse of ``rational_enumerate`` restricted to
    {0} and the i >= 2 tail.
    """
    q = Fraction(q)
    if q == 0:
        return 0
    n = calkin_wilf_index(abs(q))
    k = 2 * (n - 1) + (0 if q > 0 else 1)
    return k + 2
