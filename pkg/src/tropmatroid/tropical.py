"""Boolean power series, Newton-polyhedron vertices, and tropical vanishing.

A Boolean series is the support of a series: a finite set of exponent tuples
inside a window, with the same precision bookkeeping as
:class:`tropmatroid.series.MultiSeries`.  Addition is union, multiplication
is the Minkowski sum, and the derivative shifts exponents down — together an
idempotent differential semiring.

Vertex polynomials are equivalence classes under equal Newton polyhedra
conv(A + N^m); they are represented by the polyhedron's vertex antichain,
computed exactly (integer arithmetic only) for m <= 2.  A sum of vertex
polynomials vanishes tropically when omitting any single summand leaves the
sum unchanged; the conventions for fewer than two summands are: an all-empty
sum vanishes (it is the zero of the semiring), and a single nonempty summand
never vanishes.
"""

from dataclasses import dataclass

from .errors import (
    DimensionMismatch,
    MixedFields,
    PrecisionExhausted,
    PreconditionViolated,
    UnsupportedArity,
    WindowMismatch,
)
from .reports import Report
from .series import DiffMonomial, DiffPolynomial


def _total(exps):
    return sum(exps)


class BooleanSeries:
    __slots__ = ("bounds", "members", "precision")

    def __init__(self, bounds, members, precision=None):
        bounds = tuple(int(b) for b in bounds)
        if not bounds or any(b < 1 for b in bounds):
            raise WindowMismatch(f"bad series bounds {bounds}")
        cap = sum(b - 1 for b in bounds)
        precision = cap if precision is None else min(int(precision), cap)
        clean = set()
        for exps in members:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(bounds) or any(
                e < 0 or e >= b for e, b in zip(exps, bounds)
            ):
                raise WindowMismatch(f"exponent {exps} outside bounds {bounds}")
            if _total(exps) <= precision:
                clean.add(exps)
        self.bounds = bounds
        self.members = frozenset(clean)
        self.precision = precision

    @classmethod
    def zero(cls, bounds, precision=None):
        return cls(bounds, (), precision)

    @classmethod
    def one(cls, bounds, precision=None):
        return cls(bounds, [(0,) * len(bounds)], precision)

    @classmethod
    def full(cls, bounds, precision=None):
        from itertools import product

        return cls(bounds, product(*(range(b) for b in bounds)), precision)

    @classmethod
    def from_multiseries(cls, f):
        return cls(f.bounds, f.support_members(), f.precision)

    @property
    def m(self):
        return len(self.bounds)

    @property
    def cap(self):
        return sum(b - 1 for b in self.bounds)

    def _compatible(self, other):
        if not isinstance(other, BooleanSeries) or other.m != self.m:
            raise DimensionMismatch("boolean series with different arities")
        if other.bounds != self.bounds:
            raise WindowMismatch("boolean series on different windows")

    def __add__(self, other):
        self._compatible(other)
        return BooleanSeries(
            self.bounds,
            self.members | other.members,
            min(self.precision, other.precision),
        )

    def __mul__(self, other):
        self._compatible(other)
        prec = min(self.precision, other.precision)
        out = set()
        for e1 in self.members:
            for e2 in other.members:
                e = tuple(a + b for a, b in zip(e1, e2))
                if all(x < b for x, b in zip(e, self.bounds)) and _total(e) <= prec:
                    out.add(e)
        return BooleanSeries(self.bounds, out, prec)

    def derivative(self, var):
        """Shift exponents down in coordinate ``var``; constants disappear."""
        out = set()
        for e in self.members:
            if e[var] > 0:
                out.add(tuple(x - 1 if k == var else x for k, x in enumerate(e)))
        return BooleanSeries(self.bounds, out, self.precision - 1)

    def theta(self, J):
        out = self
        for var, count in enumerate(J):
            for _ in range(count):
                out = out.derivative(var)
        return out

    def power(self, k):
        if k < 1:
            raise PreconditionViolated("powers of boolean series start at 1")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def sorted_members(self):
        return sorted(self.members)

    def __eq__(self, other):
        return (
            isinstance(other, BooleanSeries)
            and other.bounds == self.bounds
            and other.members == self.members
            and other.precision == self.precision
        )

    def __hash__(self):
        return hash((self.bounds, self.members, self.precision))

    def __repr__(self):
        return f"BooleanSeries({self.sorted_members()}; prec={self.precision})"


@dataclass(frozen=True)
class VertexPoly:
    """Vertex set of conv(A + N^m): an antichain in convex position."""

    m: int
    vertices: tuple

    @property
    def is_empty(self):
        return not self.vertices

    def __repr__(self):
        return f"VertexPoly({list(self.vertices)})"


def _minimal_points(points):
    pts = set(points)
    return [
        p
        for p in pts
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)
    ]


def _hull_vertices(m, points):
    """Vertices of conv(points + N^m), exact integer arithmetic, m <= 2."""
    if m > 2:
        raise UnsupportedArity("Newton vertices are computed for m <= 2 only")
    if not points:
        return ()
    if m == 1:
        return (min(points),)
    chain = sorted(_minimal_points(points))  # x ascending, hence y descending
    stack = []
    for p in chain:
        while len(stack) > 1:
            a, b = stack[-2], stack[-1]
            cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
            if cross <= 0:  # b is on or above the segment a-p: not a vertex
                stack.pop()
            else:
                break
        stack.append(p)
    return tuple(stack)


def newton_vertices(a):
    """Vertex polynomial of a boolean series (m <= 2)."""
    return VertexPoly(a.m, _hull_vertices(a.m, a.members))


def vertex_sum(polys):
    """Sum in the vertex-polynomial semiring: hull of the union of vertices."""
    polys = list(polys)
    if not polys:
        raise PreconditionViolated("vertex_sum needs the arity of its summands")
    m = polys[0].m
    points = set()
    for p in polys:
        if p.m != m:
            raise DimensionMismatch("vertex polynomials with different arities")
        points.update(p.vertices)
    return VertexPoly(m, _hull_vertices(m, points))


def tropically_vanishes(summands):
    """Whether omitting any single summand leaves the sum unchanged.

    The empty sum (or all-empty summands) vanishes; a single nonempty summand
    does not.
    """
    summands = list(summands)
    if not summands:
        return True
    total = vertex_sum(summands)
    for i in range(len(summands)):
        rest = summands[:i] + summands[i + 1 :]
        if rest:
            omitted = vertex_sum(rest)
        else:
            omitted = VertexPoly(summands[0].m, ())
        if omitted != total:
            return False
    return True


class TropDiffPolynomial:
    """A differential polynomial with boolean-series coefficients."""

    __slots__ = ("bounds", "n", "terms")

    def __init__(self, bounds, n, terms):
        bounds = tuple(int(b) for b in bounds)
        n = int(n)
        combined = {}
        for coeff, mono in terms:
            if not isinstance(coeff, BooleanSeries) or coeff.bounds != bounds:
                raise WindowMismatch("coefficient on a different window")
            if not isinstance(mono, DiffMonomial):
                mono = DiffMonomial(mono)
            for i, J, _ in mono.factors:
                if i >= n:
                    raise DimensionMismatch(f"variable x_{i} with n={n}")
                if len(J) != len(bounds):
                    raise DimensionMismatch("derivative index of the wrong arity")
            if mono in combined:
                combined[mono] = combined[mono] + coeff
            else:
                combined[mono] = coeff
        self.bounds = bounds
        self.n = n
        self.terms = tuple(
            (coeff, mono)
            for mono, coeff in sorted(combined.items(), key=lambda kv: kv[0].factors)
            if coeff.members or coeff.precision < coeff.cap
        )

    @property
    def order(self):
        return max((mono.order for _, mono in self.terms), default=0)

    @property
    def is_linear_homogeneous(self):
        return all(mono.is_linear for _, mono in self.terms)

    def summand_values(self, psis):
        psis = self._check_tuple(psis)
        values = []
        for coeff, mono in self.terms:
            term = coeff
            for i, J, power in mono.factors:
                term = term * psis[i].theta(J).power(power)
            values.append(term)
        return values

    def _check_tuple(self, psis):
        if isinstance(psis, BooleanSeries):
            psis = (psis,)
        psis = tuple(psis)
        if len(psis) != self.n:
            raise DimensionMismatch(f"expected {self.n} series, got {len(psis)}")
        for psi in psis:
            if psi.bounds != self.bounds:
                raise WindowMismatch("candidate on a different window")
        return psis

    def __repr__(self):
        parts = " + ".join(f"({c!r})*{m!r}" for c, m in self.terms) or "0"
        return f"TropDiffPolynomial[{parts}]"


def tropicalize(P):
    """Coefficientwise support of a classical differential polynomial."""
    if not isinstance(P, DiffPolynomial):
        raise MixedFields("tropicalize expects an exact differential polynomial")
    return TropDiffPolynomial(
        P.bounds,
        P.n,
        [(BooleanSeries.from_multiseries(c), m) for c, m in P.terms],
    )


def is_trop_solution(p, psis):
    """Tropical-vanishing test of p at a tuple of boolean series.

    Requires every candidate component trusted at least one degree beyond the
    order of p; the verdict is about the window-restricted supports.
    """
    psis = p._check_tuple(psis)
    need = p.order + 1
    for psi in psis:
        if psi.precision < need:
            raise PrecisionExhausted(
                f"candidate trusted through {psi.precision}, need {need}"
            )
    values = p.summand_values(psis)
    if any(v.precision < 0 for v in values):
        raise PrecisionExhausted("a summand lost all trusted degrees")
    return tropically_vanishes([newton_vertices(v) for v in values])


def semigroup_check(p_list, solutions):
    """Verify that pairwise unions of tropical solutions remain solutions.

    Every given tuple must already solve every polynomial (precondition); a
    reported violation would falsify the implementation, not the statement.
    """
    solutions = [
        (sol,) if isinstance(sol, BooleanSeries) else tuple(sol) for sol in solutions
    ]
    for k, sol in enumerate(solutions):
        for p in p_list:
            if not is_trop_solution(p, sol):
                raise PreconditionViolated(
                    f"input {k} is not a solution of every polynomial"
                )
    report = Report("tropical solution semigroup")
    violations = []
    for i in range(len(solutions)):
        for j in range(i, len(solutions)):
            union = tuple(a + b for a, b in zip(solutions[i], solutions[j]))
            for p_idx, p in enumerate(p_list):
                if not is_trop_solution(p, union):
                    violations.append(f"union of #{i} and #{j} fails p[{p_idx}]")
    report.add(
        f"all {len(solutions) * (len(solutions) + 1) // 2} pairwise unions solve "
        f"all {len(p_list)} polynomials",
        not violations,
        "; ".join(violations),
    )
    return report
