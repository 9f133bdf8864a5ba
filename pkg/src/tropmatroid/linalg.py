"""Exact linear algebra over a field object from :mod:`tropmatroid.fields`.

Vectors are tuples of scalars; a matrix is any sequence of such rows.  All
results are exact (no tolerances anywhere).  Subspaces are kept in reduced
row-echelon form, so equality of subspaces is equality of representations.
"""

from itertools import product

from .errors import DimensionMismatch, PreconditionViolated


def rref(field, rows):
    """Reduced row echelon form.

    Returns ``(basis, pivots)`` where ``basis`` is the tuple of nonzero rows
    (each scaled to a leading 1, zeros above and below every pivot) and
    ``pivots`` the strictly increasing tuple of their pivot columns.
    """
    work = [list(r) for r in rows]
    if not work:
        return (), ()
    ncols = len(work[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if not field.is_zero(work[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = field.inv(work[r][c])
        work[r] = [field.mul(inv, x) for x in work[r]]
        for i in range(len(work)):
            if i != r and not field.is_zero(work[i][c]):
                f = work[i][c]
                work[i] = [
                    field.sub(a, field.mul(f, b)) for a, b in zip(work[i], work[r])
                ]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    basis = tuple(tuple(row) for row in work[:r])
    return basis, tuple(pivots)


def rank(field, rows):
    return len(rref(field, rows)[0])


class Subspace:
    """A subspace of K^s in canonical reduced-echelon representation."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = pivots

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(v)} in ambient dimension {self.ambient_dim}"
            )
        field = self.field
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if not field.is_zero(f):
                v = [field.sub(a, field.mul(f, b)) for a, b in zip(v, row)]
        return all(field.is_zero(x) for x in v)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def span(field, ambient_dim, vectors):
    """Canonical span of the given vectors; the empty list spans {0}."""
    vecs = []
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(v)}, expected {ambient_dim}"
            )
        vecs.append(tuple(field.check(x) for x in v))
    basis, pivots = rref(field, vecs)
    return Subspace(field, ambient_dim, basis, pivots)


def solve_with_unit(field, zeros, unit):
    """A vector lam with lam . z = 0 for all z in ``zeros`` and lam . unit = 1.

    Returns the echelon-canonical solution (free coordinates 0), or None when
    the system is inconsistent.
    """
    s = len(unit)
    for z in zeros:
        if len(z) != s:
            raise DimensionMismatch("zeros and unit must share a length")
    rows = [tuple(z) + (field.zero,) for z in zeros]
    rows.append(tuple(unit) + (field.one,))
    basis, pivots = rref(field, rows)
    if s in pivots:
        return None  # row (0 ... 0 | 1): inconsistent
    lam = [field.zero] * s
    for row, p in zip(basis, pivots):
        lam[p] = row[s]
    return tuple(lam)


def nullspace_basis(field, rows, ambient_dim):
    """Basis of {x : r . x = 0 for every row r}, echelon-canonical."""
    basis, pivots = rref(field, rows)
    free = [c for c in range(ambient_dim) if c not in pivots]
    out = []
    for f in free:
        v = [field.zero] * ambient_dim
        v[f] = field.one
        for row, p in zip(basis, pivots):
            v[p] = field.neg(row[f])
        out.append(tuple(v))
    return out


def _normal_vector_candidates(field, perp_basis):
    """Yield nonzero vectors of span(perp_basis), one per projective point.

    Over F_p the enumeration is exhaustive (first nonzero coefficient
    normalized to 1).  Over Q it runs through integer coefficient tuples by
    increasing height max|x_i|, lexicographic within a height, first nonzero
    coefficient positive; this hits every rational direction eventually.
    """
    r = len(perp_basis)
    s = len(perp_basis[0])

    def combine(coeffs):
        v = [field.zero] * s
        for x, b in zip(coeffs, perp_basis):
            if field.is_zero(x):
                continue
            v = [field.add(a, field.mul(x, c)) for a, c in zip(v, b)]
        return tuple(v)

    if field.kind == "Fp":
        for coeffs in product(range(field.p), repeat=r):
            lead = next((x for x in coeffs if x != 0), None)
            if lead != 1:
                continue
            yield combine(coeffs)
        return

    height = 0
    while True:
        height += 1
        for raw in product(range(-height, height + 1), repeat=r):
            if max(abs(x) for x in raw) != height:
                continue
            lead = next((x for x in raw if x != 0), None)
            if lead is None or lead < 0:
                continue
            yield combine(tuple(field.coerce(x) for x in raw))


def extend_to_hyperplane(field, L, avoid):
    """A hyperplane H >= L with H meeting none of ``avoid``, or None.

    ``avoid`` must be disjoint from L and dim(L) <= s-1.  Existence is
    guaranteed whenever len(avoid) < successor cardinality of the field, so
    the search over Q always terminates; over F_p the projective quotient is
    searched exhaustively and None signals a genuinely too-small field.
    """
    s = L.ambient_dim
    if L.dim > s - 1:
        raise PreconditionViolated("L must be a proper subspace")
    avoid = [tuple(field.check(x) for x in v) for v in avoid]
    for v in avoid:
        if len(v) != s:
            raise DimensionMismatch("avoid vectors must live in the ambient space")
        if L.contains(v):
            raise PreconditionViolated("avoid vectors must lie outside L")
    if L.dim == s - 1:
        return L
    perp = nullspace_basis(field, L.basis, s)
    for lam in _normal_vector_candidates(field, perp):
        if all(not field.is_zero(_dot(field, lam, a)) for a in avoid):
            return span(field, s, nullspace_basis(field, [lam], s))
    return None


def _dot(field, u, v):
    acc = field.zero
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(a, b))
    return acc


def dot(field, u, v):
    if len(u) != len(v):
        raise DimensionMismatch("dot product of unequal lengths")
    return _dot(field, u, v)
