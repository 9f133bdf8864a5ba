"""The matroid of supports of a truncated family of generators.

A :class:`GeneratorFamily` holds s linearly independent coefficient rows over
a ground window E.  Column j of the s x |E| row matrix is written u(j); the
support of a coefficient vector lam is then {j : lam . u(j) != 0}.  Minimal
nonempty supports are the circuits of a matroid on E; this module computes
circuits, cocircuits, independence, scrawls and the correspondence between
supports and column-spanned proper subspaces, together with brute-force
oracles and exhaustive axiom verifiers for desk-scale ground sets.

Truncation semantics: everything is computed for the truncated family.  The
constructor rejects windows that collapse the rank of the generators, which
is the declared sufficient condition for the truncated results to agree with
their untruncated counterparts on the window.
"""

from itertools import combinations

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    EmptySet,
    GroundTooLarge,
    PreconditionViolated,
    RankCollapse,
    StrategyUnavailable,
)
from .linalg import Subspace, dot, rank, span
from .reports import Report
from .windows import SupportSet

PSI_TEST = "psi"
BRUTE_FORCE = "brute"

AXIOM_GROUND_CAP = 12
DEFAULT_BRUTE_BUDGET = 10**6


class GeneratorFamily:
    def __init__(self, field, window, rows):
        rows = [tuple(field.check(x) for x in row) for row in rows]
        if not rows:
            raise PreconditionViolated("a family needs at least one generator")
        for row in rows:
            if len(row) != window.size:
                raise DimensionMismatch(
                    f"row of length {len(row)} on a window of size {window.size}"
                )
        if rank(field, rows) != len(rows):
            raise RankCollapse(
                "generators are linearly dependent after truncation to the window"
            )
        self.field = field
        self.window = window
        self.rows = tuple(rows)
        self.s = len(rows)
        self.columns = tuple(
            tuple(row[j] for row in rows) for j in range(window.size)
        )
        self._circuits = None

    # -- basic maps ---------------------------------------------------------

    def support_set(self, members):
        return SupportSet(self.window, members)

    def full_support(self):
        return SupportSet(self.window, range(self.window.size))

    def support(self, lam):
        """Support of the combination lam . rows: {j : lam . u(j) != 0}."""
        lam = self._check_lam(lam)
        f = self.field
        members = [
            j for j, u in enumerate(self.columns) if not f.is_zero(dot(f, lam, u))
        ]
        return SupportSet(self.window, members)

    def psi(self, L):
        """Indices whose column lies outside the subspace L of K^s."""
        if not isinstance(L, Subspace) or L.ambient_dim != self.s:
            raise DimensionMismatch(f"psi needs a subspace of K^{self.s}")
        members = [j for j, u in enumerate(self.columns) if not L.contains(u)]
        return SupportSet(self.window, members)

    def outside_span(self, S):
        """Span of the columns indexed outside S."""
        S = self._check_support(S)
        vecs = [u for j, u in enumerate(self.columns) if j not in S.members]
        return span(self.field, self.s, vecs)

    # -- circuits -----------------------------------------------------------

    def is_circuit(self, C):
        C = self._check_support(C)
        if not C.members:
            raise EmptySet("the empty set is never a circuit")
        L = self.outside_span(C)
        if L.dim != self.s - 1:
            return False
        return all(not L.contains(self.columns[j]) for j in C.members)

    def _circuit_masks(self):
        """All circuits as frozensets, canonically sorted; cached.

        Circuits correspond one to one with the codimension-one subspaces
        spanned by columns; every such subspace is spanned by s-1 independent
        columns, so enumerating those suffices.
        """
        if self._circuits is not None:
            return self._circuits
        f, s = self.field, self.s
        hyperplanes = set()
        for T in combinations(range(self.window.size), s - 1):
            vecs = [self.columns[j] for j in T]
            L = span(f, s, vecs)
            if L.dim == s - 1:
                hyperplanes.add(L)
        found = set()
        for L in hyperplanes:
            found.add(
                frozenset(
                    j for j, u in enumerate(self.columns) if not L.contains(u)
                )
            )
        self._circuits = sorted(found, key=sorted)
        return self._circuits

    def circuits(self):
        return [SupportSet(self.window, c) for c in self._circuit_masks()]

    def minimal_support_through(self, lam, z):
        """A circuit C with z in C, C inside support(lam), built constructively.

        Extends the span of the columns outside the support by further support
        columns (never the one at z) up to dimension s-1, then solves for the
        unique-up-to-scale vector vanishing on that hyperplane and taking the
        value 1 on u(z).
        """
        lam = self._check_lam(lam)
        supp = self.support(lam)
        if z not in supp.members:
            raise PreconditionViolated(f"index {z} is not in the support")
        f, s = self.field, self.s
        L = self.outside_span(supp)
        if L.dim == s - 1:
            return supp
        u_z = self.columns[z]
        grown = span(f, s, list(L.basis) + [u_z])
        picked = []
        for j in sorted(supp.members):
            if j == z:
                continue
            if grown.dim == s:
                break
            u = self.columns[j]
            if not grown.contains(u):
                picked.append(u)
                grown = span(f, s, list(grown.basis) + [u])
        hyper = span(f, s, list(L.basis) + picked)
        lam2 = self._solve_on_hyperplane(hyper, u_z)
        return self.support(lam2)

    def _solve_on_hyperplane(self, hyper, unit):
        from .linalg import solve_with_unit

        lam = solve_with_unit(self.field, list(hyper.basis), unit)
        if lam is None:
            raise PreconditionViolated("unit vector lies inside the hyperplane")
        return lam

    # -- independence, duals ------------------------------------------------

    def is_independent(self, S):
        S = self._check_support(S)
        return self.outside_span(S).dim == self.s

    def cocircuits(self):
        """Minimal linearly dependent sets of columns; each has <= s+1 members."""
        f = self.field
        n = self.window.size
        found = []
        for k in range(1, self.s + 2):
            for T in combinations(range(n), k):
                tset = frozenset(T)
                if any(c <= tset for c in found):
                    continue
                if rank(f, [self.columns[j] for j in T]) < k:
                    found.append(tset)
        return [SupportSet(self.window, c) for c in sorted(found, key=sorted)]

    # -- scrawls and supports -----------------------------------------------

    def scrawl_closure(self, S):
        """Union of all circuits contained in S (the largest scrawl inside S)."""
        S = self._check_support(S)
        out = set()
        for c in self._circuit_masks():
            if c <= S.members:
                out |= c
        return SupportSet(self.window, out)

    def is_scrawl(self, S):
        S = self._check_support(S)
        return self.scrawl_closure(S).members == S.members

    def all_scrawls(self):
        """Every union of circuits (including the empty union).

        Exponential in the number of circuits in the worst case; meant for
        desk-scale windows.
        """
        closure = {frozenset()}
        for c in self._circuit_masks():
            closure |= {u | c for u in closure}
        return [SupportSet(self.window, u) for u in sorted(closure, key=sorted)]

    def cardinality_condition(self):
        """|E| < successor cardinality of the field (always true over Q)."""
        succ = self.field.successor_cardinality
        return succ is None or self.window.size < succ

    def is_support(self, S, strategy):
        """Whether some lam has support(lam) = S.

        ``psi`` checks psi(outside_span(S)) == S, valid under the cardinality
        condition; ``brute`` enumerates every lam over a finite field.
        """
        S = self._check_support(S)
        if strategy == PSI_TEST:
            if not self.cardinality_condition():
                raise StrategyUnavailable(
                    "psi test needs |E| below the field's successor cardinality"
                )
            return self.psi(self.outside_span(S)).members == S.members
        if strategy == BRUTE_FORCE:
            if self.field.kind != "Fp":
                raise StrategyUnavailable("brute force needs a finite field")
            for lam in self._all_vectors():
                if self._support_members(lam) == S.members:
                    return True
            return False
        raise ValueError(f"unknown strategy {strategy!r}")

    def supports_enumerate(self, budget=DEFAULT_BRUTE_BUDGET):
        """The exact set of supports over a finite field, by brute force."""
        if self.field.kind != "Fp":
            raise StrategyUnavailable("brute-force enumeration needs a finite field")
        if self.field.p**self.s > budget:
            raise BudgetExceeded(
                f"{self.field.p}^{self.s} vectors exceed the budget {budget}"
            )
        seen = {frozenset(self._support_members(lam)) for lam in self._all_vectors()}
        return [SupportSet(self.window, m) for m in sorted(seen, key=sorted)]

    def supports_via_psi(self):
        """The supports predicted by the subspace correspondence.

        Image of every proper column-spanned subspace under psi, plus the
        empty support of lam = 0.  Equals the true support set whenever the
        cardinality condition holds.
        """
        if not self.cardinality_condition():
            raise StrategyUnavailable(
                "psi enumeration needs |E| below the field's successor cardinality"
            )
        subspaces = set()
        for k in range(self.s):
            for T in combinations(range(self.window.size), k):
                subspaces.add(span(self.field, self.s, [self.columns[j] for j in T]))
        sets = {frozenset()}
        for L in subspaces:
            sets.add(self.psi(L).members)
        return [SupportSet(self.window, m) for m in sorted(sets, key=sorted)]

    # -- internals ----------------------------------------------------------

    def _support_members(self, lam):
        f = self.field
        return frozenset(
            j for j, u in enumerate(self.columns) if not f.is_zero(dot(f, lam, u))
        )

    def _all_vectors(self):
        from itertools import product

        return product(range(self.field.p), repeat=self.s)

    def _check_lam(self, lam):
        if len(lam) != self.s:
            raise DimensionMismatch(f"coefficient vector must have length {self.s}")
        return tuple(self.field.check(x) for x in lam)

    def _check_support(self, S):
        if not isinstance(S, SupportSet):
            S = SupportSet(self.window, S)
        elif S.window != self.window:
            raise DimensionMismatch("support set lives on a different window")
        return S

    def __repr__(self):
        return (
            f"GeneratorFamily(field={self.field!r}, s={self.s}, "
            f"window_size={self.window.size})"
        )


def dual_check(fam):
    """Verify that complement-duality of bases reproduces the cocircuits.

    Bases of the support matroid are the complements of the s-subsets of
    columns spanning K^s; dualizing by complementation and extracting minimal
    non-independent sets combinatorially must reproduce the cocircuits found
    by exact linear algebra.
    """
    n = fam.window.size
    if n > AXIOM_GROUND_CAP:
        raise GroundTooLarge(f"dual check capped at |E| <= {AXIOM_GROUND_CAP}")
    report = Report("complement duality")
    full = frozenset(range(n))
    col_bases = [
        frozenset(T)
        for T in combinations(range(n), fam.s)
        if rank(fam.field, [fam.columns[j] for j in T]) == fam.s
    ]
    report.add("spanning column s-subsets exist", bool(col_bases))
    bases_m = [full - b for b in col_bases]
    bases_dual = [full - b for b in bases_m]

    def independent_in_dual(T):
        return any(T <= b for b in bases_dual)

    dual_circuits = []
    for k in range(1, n + 1):
        for T in combinations(range(n), k):
            tset = frozenset(T)
            if any(c <= tset for c in dual_circuits):
                continue
            if not independent_in_dual(tset):
                dual_circuits.append(tset)
    dual_circuits = sorted(dual_circuits, key=sorted)
    cocircuits = [c.members for c in fam.cocircuits()]
    ok = dual_circuits == cocircuits
    detail = ""
    if not ok:
        only_dual = [sorted(c) for c in dual_circuits if c not in cocircuits]
        only_cocirc = [sorted(c) for c in cocircuits if c not in dual_circuits]
        detail = f"dual-only={only_dual} cocircuit-only={only_cocirc}"
    report.add("dual circuits equal cocircuits", ok, detail)
    return report


# -- exhaustive axiom verifiers on small explicit families -------------------


def _to_masks(ground_size, family):
    if ground_size > AXIOM_GROUND_CAP:
        raise GroundTooLarge(
            f"exhaustive axiom checks capped at ground size {AXIOM_GROUND_CAP}"
        )
    masks = set()
    for member in family:
        m = 0
        for i in member:
            i = int(i)
            if not 0 <= i < ground_size:
                raise PreconditionViolated(
                    f"index {i} outside ground set of size {ground_size}"
                )
            m |= 1 << i
        masks.add(m)
    return sorted(masks)


def _mask_str(m):
    return "{" + ",".join(str(i) for i in range(m.bit_length()) if m >> i & 1) + "}"


def _check_axiom3(ground_size, masks):
    """Circuit elimination on every (C, X, family, z), via backtracking.

    Families {C_x : x in X} with x in C_y iff x = y are enumerated as choices
    per element of X; distinct choices with the same running union are merged.
    """
    by_element = {i: [m for m in masks if m >> i & 1] for i in range(ground_size)}
    for c in masks:
        x_bits = [i for i in range(ground_size) if c >> i & 1]
        sub = c
        while True:  # iterate X over all submasks of c, including 0 and c
            X = sub
            xs = [i for i in x_bits if X >> i & 1]
            candidates = [[m for m in by_element[x] if m & X == 1 << x] for x in xs]
            if all(candidates):
                witness = _axiom3_families(c, X, xs, candidates, masks)
                if witness is not None:
                    return False, witness
            if sub == 0:
                break
            sub = (sub - 1) & c
    return True, ""


def _axiom3_families(c, X, xs, candidates, masks):
    seen = set()
    stack = [(0, 0)]
    while stack:
        depth, union = stack.pop()
        if (depth, union) in seen:
            continue
        seen.add((depth, union))
        if depth == len(xs):
            allowed = (c | union) & ~X
            rest = c & ~union
            for z in range(rest.bit_length()):
                if not rest >> z & 1:
                    continue
                if not any(m >> z & 1 and m & ~allowed == 0 for m in masks):
                    return (
                        f"C={_mask_str(c)} X={_mask_str(X)} "
                        f"union={_mask_str(union)} z={z}"
                    )
            continue
        for m in candidates[depth]:
            stack.append((depth + 1, union | m))
    return None


def _check_axiom4(ground_size, masks):
    """Maximal-independent extension on every pair I <= X of subsets."""
    size = 1 << ground_size
    dependent = bytearray(size)
    for t in range(size):
        for m in masks:
            if m & ~t == 0:
                dependent[t] = 1
                break
    for X in range(size):
        sub = X
        while True:
            I = sub
            if not dependent[I]:
                grown = I
                rest = X & ~I
                for y in range(rest.bit_length()):
                    if rest >> y & 1 and not dependent[grown | 1 << y]:
                        grown |= 1 << y
                # grown is maximal: every one-element extension within X is
                # dependent, and dependence is closed upward.
                bad = [
                    y
                    for y in range(ground_size)
                    if X >> y & 1 and not grown >> y & 1
                    and not dependent[grown | 1 << y]
                ]
                if dependent[grown] or bad:
                    return False, (
                        f"I={_mask_str(I)} X={_mask_str(X)} "
                        f"candidate={_mask_str(grown)}"
                    )
            if sub == 0:
                break
            sub = (sub - 1) & X
    return True, ""


def verify_circuit_axioms(ground_size, circuit_family):
    """Exhaustively check the four circuit axioms on an explicit family."""
    masks = _to_masks(ground_size, circuit_family)
    report = Report(f"circuit axioms on ground size {ground_size}")

    report.add("(i) empty set excluded", 0 not in masks)

    witness = ""
    anti = True
    for a in masks:
        for b in masks:
            if a != b and a & b == a:
                anti, witness = False, f"{_mask_str(a)} inside {_mask_str(b)}"
                break
        if not anti:
            break
    report.add("(ii) no circuit inside another", anti, witness)

    ok3, w3 = _check_axiom3(ground_size, masks)
    report.add("(iii) circuit elimination", ok3, w3)

    ok4, w4 = _check_axiom4(ground_size, masks)
    report.add("(iv) maximal independent extensions", ok4, w4)
    return report


def verify_scrawl_axioms(ground_size, scrawl_family):
    """Check union-closure plus the circuit axioms of the minimal members."""
    masks = _to_masks(ground_size, scrawl_family)
    report = Report(f"scrawl axioms on ground size {ground_size}")
    maskset = set(masks)

    closed, witness = True, ""
    for a in masks:
        for b in masks:
            if a | b not in maskset:
                closed = False
                witness = f"{_mask_str(a)} union {_mask_str(b)} missing"
                break
        if not closed:
            break
    report.add("union closure", closed, witness)

    nonempty = [m for m in masks if m]
    minimal = [m for m in nonempty if not any(o != m and o & m == o for o in nonempty)]

    rebuilt, witness = True, ""
    for m in masks:
        u = 0
        for c in minimal:
            if c & m == c:
                u |= c
        if u != m:
            rebuilt, witness = False, f"{_mask_str(m)} is not a union of minimals"
            break
    report.add("members are unions of minimal members", rebuilt, witness)

    ok3, w3 = _check_axiom3(ground_size, sorted(minimal))
    report.add("(iii) on minimal members", ok3, w3)
    ok4, w4 = _check_axiom4(ground_size, sorted(minimal))
    report.add("(iv) on minimal members", ok4, w4)
    return report
