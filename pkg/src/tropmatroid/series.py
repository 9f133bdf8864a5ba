"""Truncated multivariate formal power series and differential polynomials.

A :class:`MultiSeries` stores the window part of a series: coefficients at
exponent tuples inside per-variable bounds, together with a ``precision`` —
the largest total degree at which the stored window coefficients are exact.
Operations propagate precision pessimistically (min of the operands, reduced
by the order of any derivative), and normalization drops coefficients above
the precision so the stored data never overstates what is trusted.

Differential polynomials evaluate tuples of series through the operators
theta(J) = d^|J| / dt_1^{j_1} ... dt_m^{j_m}; derivations carry their true
factorial-bearing coefficients, so the scalar field must have characteristic
zero.
"""

from itertools import product

from .errors import (
    CharNotZero,
    DimensionMismatch,
    MixedFields,
    PrecisionExhausted,
    RankCollapse,
    WindowMismatch,
)
from .fields import QQ
from .windows import SupportSet


def _total(exps):
    return sum(exps)


class MultiSeries:
    __slots__ = ("field", "bounds", "coeffs", "precision")

    def __init__(self, field, bounds, coeffs, precision=None):
        bounds = tuple(int(b) for b in bounds)
        if not bounds or any(b < 1 for b in bounds):
            raise WindowMismatch(f"bad series bounds {bounds}")
        cap = sum(b - 1 for b in bounds)
        precision = cap if precision is None else min(int(precision), cap)
        clean = {}
        for exps, value in coeffs.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(bounds) or any(
                e < 0 or e >= b for e, b in zip(exps, bounds)
            ):
                raise WindowMismatch(f"exponent {exps} outside bounds {bounds}")
            value = field.check(value)
            if field.is_zero(value) or _total(exps) > precision:
                continue
            clean[exps] = value
        self.field = field
        self.bounds = bounds
        self.coeffs = clean
        self.precision = precision

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, field, bounds, precision=None):
        return cls(field, bounds, {}, precision)

    @classmethod
    def constant(cls, field, bounds, value, precision=None):
        m = len(bounds)
        return cls(field, bounds, {(0,) * m: field.coerce(value)}, precision)

    @classmethod
    def from_coeff_list(cls, field, bounds, values, precision=None):
        """One-variable convenience: values[i] is the coefficient of t^i."""
        if len(bounds) != 1:
            raise WindowMismatch("coefficient lists describe one-variable series")
        coeffs = {(i,): field.coerce(v) for i, v in enumerate(values)}
        return cls(field, bounds, coeffs, precision)

    # -- ring operations ------------------------------------------------------

    @property
    def m(self):
        return len(self.bounds)

    @property
    def cap(self):
        return sum(b - 1 for b in self.bounds)

    def coeff(self, exps):
        return self.coeffs.get(tuple(exps), self.field.zero)

    def _compatible(self, other):
        if self.field != other.field:
            raise MixedFields("series over different fields")
        if self.bounds != other.bounds:
            raise WindowMismatch("series on different windows")

    def __add__(self, other):
        self._compatible(other)
        f = self.field
        out = dict(self.coeffs)
        for e, v in other.coeffs.items():
            out[e] = f.add(out.get(e, f.zero), v)
        return MultiSeries(f, self.bounds, out, min(self.precision, other.precision))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        f = self.field
        return MultiSeries(
            f,
            self.bounds,
            {e: f.neg(v) for e, v in self.coeffs.items()},
            self.precision,
        )

    def scale(self, c):
        f = self.field
        c = f.coerce(c)
        return MultiSeries(
            f,
            self.bounds,
            {e: f.mul(c, v) for e, v in self.coeffs.items()},
            self.precision,
        )

    def __mul__(self, other):
        self._compatible(other)
        f = self.field
        prec = min(self.precision, other.precision)
        out = {}
        for e1, v1 in self.coeffs.items():
            for e2, v2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if any(x >= b for x, b in zip(e, self.bounds)) or _total(e) > prec:
                    continue
                out[e] = f.add(out.get(e, f.zero), f.mul(v1, v2))
        return MultiSeries(f, self.bounds, out, prec)

    def theta(self, J):
        """Apply d^|J|/dt^J with true factorial coefficients (char 0 only)."""
        if self.field.characteristic != 0:
            raise CharNotZero("derivations need characteristic zero")
        J = tuple(int(j) for j in J)
        if len(J) != self.m or any(j < 0 for j in J):
            raise DimensionMismatch(f"bad derivative multi-index {J}")
        f = self.field
        out = {}
        for K, v in self.coeffs.items():
            if any(k < j for k, j in zip(K, J)):
                continue
            factor = 1
            for k, j in zip(K, J):
                for step in range(j):
                    factor *= k - step
            e = tuple(k - j for k, j in zip(K, J))
            out[e] = f.mul(v, f.coerce(factor))
        return MultiSeries(f, self.bounds, out, self.precision - sum(J))

    def support_members(self):
        return frozenset(self.coeffs)

    def support_set(self, window):
        """Support as a subset of a one-block window with matching bounds."""
        if window.n_blocks != 1 or window.blocks[0] != self.bounds:
            raise WindowMismatch("window does not match the series bounds")
        return SupportSet(window, (window.index(0, e) for e in self.coeffs))

    def is_zero_through(self, order):
        if order > self.precision:
            raise PrecisionExhausted(
                f"asked about degree {order}, trusted only through {self.precision}"
            )
        return all(_total(e) > order for e in self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, MultiSeries)
            and self.field == other.field
            and self.bounds == other.bounds
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(
            (self.field, self.bounds, self.precision, frozenset(self.coeffs.items()))
        )

    def __repr__(self):
        terms = ", ".join(
            f"{e}:{v}" for e, v in sorted(self.coeffs.items())[:6]
        )
        extra = "..." if len(self.coeffs) > 6 else ""
        return f"MultiSeries[{terms}{extra}; prec={self.precision}]"


class DiffMonomial:
    """A product of powers of derivative variables x_{i,J}."""

    __slots__ = ("factors",)

    def __init__(self, factors):
        merged = {}
        for i, J, power in factors:
            i, J, power = int(i), tuple(int(j) for j in J), int(power)
            if power < 1:
                raise DimensionMismatch("monomial powers must be >= 1")
            if i < 0 or any(j < 0 for j in J):
                raise DimensionMismatch(f"bad monomial factor ({i}, {J})")
            key = (i, J)
            merged[key] = merged.get(key, 0) + power
        self.factors = tuple(
            (i, J, p) for (i, J), p in sorted(merged.items())
        )

    @classmethod
    def variable(cls, i, J):
        return cls([(i, J, 1)])

    @property
    def order(self):
        return max((sum(J) for _, J, _ in self.factors), default=0)

    @property
    def is_constant(self):
        return not self.factors

    @property
    def is_linear(self):
        return len(self.factors) == 1 and self.factors[0][2] == 1

    def __eq__(self, other):
        return isinstance(other, DiffMonomial) and other.factors == self.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        if not self.factors:
            return "1"
        return "*".join(
            f"x[{i},{J}]" + (f"^{p}" if p > 1 else "")
            for i, J, p in self.factors
        )


class DiffPolynomial:
    """A differential polynomial with series coefficients."""

    __slots__ = ("field", "bounds", "n", "terms")

    def __init__(self, field, bounds, n, terms):
        bounds = tuple(int(b) for b in bounds)
        n = int(n)
        combined = {}
        for coeff, mono in terms:
            if coeff.field != field:
                raise MixedFields("coefficient over a different field")
            if coeff.bounds != bounds:
                raise WindowMismatch("coefficient on a different window")
            if not isinstance(mono, DiffMonomial):
                mono = DiffMonomial(mono)
            for i, J, _ in mono.factors:
                if i >= n:
                    raise DimensionMismatch(
                        f"variable x_{i} in a polynomial with n={n}"
                    )
                if len(J) != len(bounds):
                    raise DimensionMismatch(
                        f"derivative index {J} has the wrong arity"
                    )
            if mono in combined:
                combined[mono] = combined[mono] + coeff
            else:
                combined[mono] = coeff
        self.field = field
        self.bounds = bounds
        self.n = n
        self.terms = tuple(
            (coeff, mono)
            for mono, coeff in sorted(combined.items(), key=lambda kv: kv[0].factors)
            if coeff.coeffs or coeff.precision < coeff.cap
        )

    @property
    def order(self):
        return max((mono.order for _, mono in self.terms), default=0)

    @property
    def is_linear_homogeneous(self):
        return all(mono.is_linear for _, mono in self.terms)

    def evaluate(self, phis):
        """P(phi_1, ..., phi_n), truncated to the trusted precision."""
        phis = self._check_tuple(phis)
        acc = MultiSeries.zero(self.field, self.bounds)
        for coeff, mono in self.terms:
            term = coeff
            for i, J, power in mono.factors:
                d = phis[i].theta(J)
                for _ in range(power):
                    term = term * d
            acc = acc + term
        if acc.precision < 0:
            raise PrecisionExhausted("no trusted coefficients survive evaluation")
        return acc

    def is_solution(self, phis, through_order):
        """Whether P(phi) vanishes in every total degree <= through_order."""
        value = self.evaluate(phis)
        return value.is_zero_through(through_order)

    def theta(self, J):
        """The derivative Theta(J) P, by the product rule on every term."""
        if self.field.characteristic != 0:
            raise CharNotZero("derivations need characteristic zero")
        out = self
        for var, count in enumerate(J):
            for _ in range(count):
                out = out._theta_one(var)
        return out

    def _theta_one(self, var):
        ek = tuple(1 if k == var else 0 for k in range(len(self.bounds)))
        new_terms = []
        for coeff, mono in self.terms:
            new_terms.append((coeff.theta(ek), mono))
            for idx, (i, J, power) in enumerate(mono.factors):
                rest = list(mono.factors)
                bumped = [(i, tuple(a + b for a, b in zip(J, ek)), 1)]
                if power > 1:
                    rest[idx] = (i, J, power - 1)
                else:
                    del rest[idx]
                new_terms.append(
                    (coeff.scale(power), DiffMonomial(rest + bumped))
                )
        return DiffPolynomial(self.field, self.bounds, self.n, new_terms)

    def _check_tuple(self, phis):
        phis = tuple(phis)
        if len(phis) != self.n:
            raise DimensionMismatch(f"expected {self.n} series, got {len(phis)}")
        for phi in phis:
            if phi.field != self.field:
                raise MixedFields("solution candidate over a different field")
            if phi.bounds != self.bounds:
                raise WindowMismatch("solution candidate on a different window")
        return phis

    def __repr__(self):
        parts = " + ".join(f"({c!r})*{m!r}" for c, m in self.terms) or "0"
        return f"DiffPolynomial[{parts}]"


def linear_ode(alphas):
    """The polynomial y^(r) + alpha_{r-1} y^(r-1) + ... + alpha_0 y (m = 1).

    ``alphas`` lists the coefficients of y, y', ..., y^(r-1); the leading
    coefficient is 1.
    """
    if not alphas:
        raise DimensionMismatch("an ODE needs at least one coefficient")
    field = alphas[0].field
    bounds = alphas[0].bounds
    r = len(alphas)
    terms = [
        (MultiSeries.constant(field, bounds, field.one), DiffMonomial.variable(0, (r,)))
    ]
    for k, alpha in enumerate(alphas):
        terms.append((alpha, DiffMonomial.variable(0, (k,))))
    return DiffPolynomial(field, bounds, 1, terms)


def ode_solution_basis(alphas, order):
    """Power-series basis of y^(r) + alpha_{r-1} y^(r-1) + ... + alpha_0 y = 0.

    Solution k is normalized by y^(j)(0) = delta_{jk}; coefficients are
    produced through total degree ``order`` by the standard recurrence, which
    needs the alphas trusted through degree order - r.
    """
    r = len(alphas)
    if r < 1:
        raise DimensionMismatch("an ODE needs at least one coefficient")
    field = alphas[0].field
    if field.characteristic != 0:
        raise CharNotZero("series solving needs characteristic zero")
    for alpha in alphas:
        if alpha.m != 1:
            raise DimensionMismatch("ODE solving is one-variable only")
        if alpha.field != field:
            raise MixedFields("ODE coefficients over different fields")
        if alpha.precision < order - r:
            raise PrecisionExhausted(
                f"coefficients trusted through {alpha.precision}, "
                f"need {order - r}"
            )
    if order < r:
        raise PrecisionExhausted("order must be at least the ODE order")

    def falling(e, l):
        prod = 1
        for step in range(l):
            prod *= e + l - step
        return prod  # (e+1)(e+2)...(e+l)

    basis = []
    for k in range(r):
        y = [field.zero] * (order + 1)
        y[k] = field.inv(field.coerce(_factorial(k)))
        for d in range(order - r + 1):
            total = field.zero
            for l, alpha in enumerate(alphas):
                for j in range(d + 1):
                    a = alpha.coeff((j,))
                    if field.is_zero(a):
                        continue
                    contrib = field.mul(
                        a, field.mul(field.coerce(falling(d - j, l)), y[d - j + l])
                    )
                    total = field.add(total, contrib)
            lead = field.coerce(falling(d, r))
            y[d + r] = field.neg(field.div(total, lead))
        basis.append(
            MultiSeries(
                field,
                (order + 1,),
                {(i,): v for i, v in enumerate(y)},
                order,
            )
        )
    return basis


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def merge_tuple_support(window, parts):
    """Embed an n-tuple of component supports into the n-block window.

    ``parts[k]`` is an iterable of exponent tuples (or a single-block
    SupportSet with matching bounds) for block k.  The image of the tuple is
    the disjoint union, which is injective and turns the product order into
    plain inclusion.
    """
    if len(parts) != window.n_blocks:
        raise WindowMismatch(
            f"{len(parts)} components for a window with {window.n_blocks} blocks"
        )
    members = []
    for k, part in enumerate(parts):
        if isinstance(part, SupportSet):
            if part.window.n_blocks != 1 or part.window.blocks[0] != window.blocks[k]:
                raise WindowMismatch(f"component {k} lives on incompatible bounds")
            exps = [e for _, e in part.labels()]
        else:
            exps = [tuple(e) for e in part]
        for e in exps:
            members.append(window.index(k, e))
    return SupportSet(window, members)


def solution_family(window, solutions, field=QQ):
    """Generator family whose rows are merged coefficient vectors of solutions.

    Each solution is an n-tuple of series (one per window block, bounds
    matching, fully trusted on its block).  Raises RankCollapse when the
    truncated rows are dependent.
    """
    from .matroid import GeneratorFamily

    rows = []
    for sol in solutions:
        if isinstance(sol, MultiSeries):
            sol = (sol,)
        sol = tuple(sol)
        if len(sol) != window.n_blocks:
            raise WindowMismatch(
                f"solution tuple of length {len(sol)} for {window.n_blocks} blocks"
            )
        row = []
        for k, phi in enumerate(sol):
            if phi.field != field:
                raise MixedFields("solution over a different field")
            if phi.bounds != window.blocks[k]:
                raise WindowMismatch(f"component {k} bounds do not match the window")
            if phi.precision < phi.cap:
                raise PrecisionExhausted(
                    "solution components must be trusted on the whole block"
                )
            for exps in product(*(range(b) for b in phi.bounds)):
                row.append(phi.coeff(exps))
        rows.append(row)
    try:
        return GeneratorFamily(field, window, rows)
    except RankCollapse:
        raise RankCollapse(
            "truncation collapses the solutions to a dependent family"
        ) from None
