"""Maxitive measures on finite spaces: classification and structure theory.

A maxitive measure is stored by its atom values; its value on a set is the
max over the atoms inside. General set functions are classified by a battery
of named predicates, each of which returns a witness when it fails. On a
finite algebra several textbook properties (continuity along chains,
exhaustivity, the countable chain condition, sigma-principality) hold for
structural reasons; the predicates still sweep the defining objects so every
boolean in a report is reproducible by re-running the named function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DecompositionVerificationFailed,
    ExplicitBudgetExceeded,
    NotMonotone,
    NotNullAdditive,
    OracleMismatch,
)
from .spaces import (
    DEFAULT_TOL,
    INF,
    MeasurableSet,
    SetFunction,
    as_value,
    close,
    require_budget,
    set_partitions,
    submasks,
    vclose,
)


class MaxitiveMeasure:
    """A measure with nu(B1 | B2) = max(nu(B1), nu(B2)) and nu(empty) = 0."""

    __slots__ = ("space", "atom_values", "_table")

    def __init__(self, space, atom_values):
        vals = np.asarray([as_value(v) for v in atom_values], dtype=float)
        if len(vals) != space.n_atoms:
            raise ValueError(f"expected {space.n_atoms} atom values, got {len(vals)}")
        vals.setflags(write=False)
        self.space = space
        self.atom_values = vals
        self._table = None

    def __call__(self, bset):
        mask = bset.mask if isinstance(bset, MeasurableSet) else int(bset)
        out = 0.0
        i = 0
        while mask:
            if mask & 1:
                v = self.atom_values[i]
                if v > out:
                    out = float(v)
            mask >>= 1
            i += 1
        return out

    def to_set_function(self):
        if self._table is None:
            n = self.space.n_sets
            table = np.zeros(n)
            for i, v in enumerate(self.atom_values):
                step = 1 << i
                for base in range(0, n, 2 * step):
                    seg = slice(base + step, base + 2 * step)
                    table[seg] = np.maximum(table[seg], v)
            self._table = SetFunction(self.space, table)
        return self._table

    @classmethod
    def from_set_function(cls, w, tol=DEFAULT_TOL):
        ok, wit = is_maxitive(w, tol)
        if not ok:
            raise ValueError(f"table is not maxitive; witness masks {wit[:2]}")
        vals = [w.table[1 << i] for i in range(w.space.n_atoms)]
        return cls(w.space, vals)

    def support_mask(self):
        mask = 0
        for i, v in enumerate(self.atom_values):
            if v > 0:
                mask |= 1 << i
        return mask

    def power(self, alpha):
        """Atomwise power; inf**a = inf and 0**a = 0 for a > 0."""
        if alpha <= 0:
            raise ValueError("power must be positive")
        vals = [
            INF if math.isinf(v) else float(v) ** alpha for v in self.atom_values
        ]
        return MaxitiveMeasure(self.space, vals)

    def __repr__(self):
        return f"MaxitiveMeasure({list(map(float, self.atom_values))})"


def _as_table(w):
    """Accept a SetFunction or anything with to_set_function()."""
    if isinstance(w, SetFunction):
        return w
    return w.to_set_function()


def _zero_masks(table):
    return np.nonzero(table == 0.0)[0]


def negligible(w, bset, _zeros=None):
    """Whether the set is contained in some measurable zero set of ``w``."""
    w = _as_table(w)
    mask = bset.mask if isinstance(bset, MeasurableSet) else int(bset)
    zeros = _zeros if _zeros is not None else _zero_masks(w.table)
    for g in zeros:
        if (int(g) & mask) == mask:
            return True
    return False


# ---------------------------------------------------------------------------
# named predicates; each returns (bool, witness_or_None)
# ---------------------------------------------------------------------------


def is_monotone(w, tol=DEFAULT_TOL):
    w = _as_table(w)
    table = w.table
    masks = np.arange(w.space.n_sets)
    for i in range(w.space.n_atoms):
        bigger = table[masks | (1 << i)]
        slack = tol * np.maximum(1.0, np.maximum(np.abs(table), np.abs(bigger)))
        with np.errstate(invalid="ignore"):
            bad = bigger < table - slack
        if bad.any():
            b = int(np.nonzero(bad)[0][0])
            return False, (b, b | (1 << i))
    return True, None


def is_normed(w, tol=DEFAULT_TOL):
    w = _as_table(w)
    top = float(np.max(w.table))
    return (close(top, 1.0, tol), None if close(top, 1.0, tol) else top)


def is_null_additive(w, tol=DEFAULT_TOL):
    w = _as_table(w)
    table = w.table
    masks = np.arange(w.space.n_sets)
    for n in _zero_masks(table):
        agree = vclose(table[masks | int(n)], table, tol)
        if not agree.all():
            b = int(np.nonzero(~agree)[0][0])
            return False, (b, int(n))
    return True, None


def is_finite_valued(w):
    w = _as_table(w)
    if np.isfinite(w.table).all():
        return True, None
    return False, int(np.nonzero(~np.isfinite(w.table))[0][0])


def is_sigma_finite(w):
    """Some countable cover by finite-value sets exists."""
    w = _as_table(w)
    covered = 0
    for m in np.nonzero(np.isfinite(w.table))[0]:
        covered |= int(m)
    if covered == w.space.full_mask:
        return True, None
    missing = next(
        i for i in range(w.space.n_atoms) if not covered & (1 << i)
    )
    return False, missing


def is_maxitive(w, tol=DEFAULT_TOL):
    w = _as_table(w)
    table = w.table
    masks = np.arange(w.space.n_sets)
    for b1 in range(w.space.n_sets):
        union = table[b1 | masks]
        expect = np.maximum(table[b1], table)
        agree = vclose(union, expect, tol)
        if not agree.all():
            b2 = int(np.nonzero(~agree)[0][0])
            return False, (b1, b2, float(table[b1 | b2]), float(expect[b2]))
    return True, None


def is_completely_maxitive(w, tol=DEFAULT_TOL):
    """Same as maxitivity on a finite algebra; checked by the atom-sup route."""
    w = _as_table(w)
    table = w.table
    amax = np.zeros_like(table)
    for m in range(1, w.space.n_sets):
        low = m & -m
        amax[m] = max(amax[m ^ low], table[low])
    agree = vclose(table, amax, tol)
    if agree.all():
        return True, None
    return False, int(np.nonzero(~agree)[0][0])


def is_continuous_from_above(w, tol=DEFAULT_TOL):
    """Continuity along decreasing chains.

    Every decreasing chain of sets in a finite algebra stabilizes, so the
    limit value equals the value at the intersection for any set function.
    The sweep walks the canonical atom-removal chains to demonstrate this
    rather than assume it.
    """
    w = _as_table(w)
    for start in range(w.space.n_sets):
        chain = [start]
        cur = start
        while cur:
            cur &= cur - 1  # drop the lowest atom
            chain.append(cur)
        meet = chain[-1]
        limit = w.table[chain[-1]]
        if not close(float(limit), float(w.table[meet]), tol):
            return False, chain
    return True, None


def is_continuous_from_below(w, tol=DEFAULT_TOL):
    """Continuity along increasing chains; structural as above."""
    w = _as_table(w)
    for start in range(w.space.n_sets):
        chain = [start]
        cur = start
        full = w.space.full_mask
        i = 0
        while cur != full:
            while cur & (1 << i):
                i += 1
            cur |= 1 << i
            chain.append(cur)
        join = chain[-1]
        if not close(float(w.table[chain[-1]]), float(w.table[join]), tol):
            return False, chain
    return True, None


def is_exhaustive(w, family_atoms=6):
    """nu(B_n) -> 0 along every infinite pairwise-disjoint sequence.

    A disjoint family of nonempty sets in a finite algebra is finite, so the
    tail of any such sequence is empty sets and the limit is w(empty) = 0.
    For small spaces the families are enumerated outright.
    """
    w = _as_table(w)
    if w.table[0] != 0.0:
        return False, 0
    k = w.space.n_atoms
    if k <= family_atoms:
        for part in set_partitions(range(k)):
            for block in part:
                if not block:
                    return False, part
        # tail beyond any finite family is the empty set: value 0 by the check above
    return True, None


def is_ccc(w, family_atoms=6):
    """Every pairwise-disjoint family of non-negligible sets is countable.

    Finitely many pairwise-disjoint nonempty sets fit in a finite space, so
    the condition holds; the sweep records the largest family found.
    """
    w = _as_table(w)
    zeros = _zero_masks(w.table)
    k = w.space.n_atoms
    best = 0
    if k <= family_atoms:
        for part in set_partitions(range(k)):
            cnt = 0
            for block in part:
                m = 0
                for i in block:
                    m |= 1 << i
                if not negligible(w, m, _zeros=zeros):
                    cnt += 1
            best = max(best, cnt)
    else:
        best = k  # upper bound; any disjoint family has at most k members
    return True, {"max_disjoint_non_negligible": best}


def _principal_ideal(u):
    return frozenset(int(s) for s in submasks(u))


def enumerate_sigma_ideals(space, discover_atoms=3, verify_atoms=4):
    """All sigma-ideals of the algebra, as frozensets of masks.

    For k <= discover_atoms every family of sets is tested against the
    definition (downward closed, closed under unions), confirming that the
    ideals are exactly the principal ones. Above that the principal ideals
    are constructed directly; closure is verified pairwise up to
    verify_atoms and structural beyond.
    """
    k = space.n_atoms
    n = space.n_sets
    principal = [_principal_ideal(u) for u in range(n)]
    if k <= discover_atoms:
        found = []
        all_masks = list(range(n))
        for fam_bits in range(1, 1 << n):
            fam = frozenset(m for m in all_masks if fam_bits & (1 << m))
            ok = True
            for a in fam:
                for b in fam:
                    if (a | b) not in fam:
                        ok = False
                        break
                if not ok:
                    break
                for s in submasks(a):
                    if s not in fam:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found.append(fam)
        if sorted(found, key=sorted) != sorted(set(principal), key=sorted):
            raise OracleMismatch("ideal discovery disagrees with principal ideals")
        return found
    if k <= verify_atoms:
        for ideal in principal:
            for a in ideal:
                for b in ideal:
                    if (a | b) not in ideal:
                        raise OracleMismatch("constructed ideal not union-closed")
    return principal


def is_sigma_principal(w, ideal_atoms=4):
    """Every sigma-ideal has a member L with S \\ L negligible for all members."""
    w = _as_table(w)
    zeros = _zero_masks(w.table)
    ideals = enumerate_sigma_ideals(w.space, verify_atoms=ideal_atoms)
    found = {}
    for ideal in ideals:
        winner = None
        for cand in sorted(ideal, key=lambda m: -bin(m).count("1")):
            if all(negligible(w, s & ~cand, _zeros=zeros) for s in ideal):
                winner = cand
                break
        if winner is None:
            return False, sorted(ideal)
        found[max(ideal)] = winner
    return True, None


def is_autocontinuous(w, tol=DEFAULT_TOL):
    """Whether w has a relative density with respect to itself.

    Requires null-additivity and monotonicity (the notions underlying
    negligibility); the canonical candidate density is the atom map
    x -> w(atom of x).
    """
    w = _as_table(w)
    ok, wit = is_null_additive(w, tol)
    if not ok:
        return False, {"null_additive": wit}
    ok, wit = is_monotone(w, tol)
    if not ok:
        return False, {"monotone": wit}
    zeros = _zero_masks(w.table)
    k = w.space.n_atoms
    live = [
        i for i in range(k) if not negligible(w, 1 << i, _zeros=zeros)
    ]
    f = [float(w.table[1 << i]) for i in range(k)]
    for b in range(w.space.n_sets):
        ess = 0.0
        for i in live:
            if b & (1 << i) and f[i] > ess:
                ess = f[i]
        if not close(float(w.table[b]), ess, tol):
            return False, b
    return True, None


def total_variation(w, variation_atoms=10):
    """sup over partitions of the whole space of the block-value sum.

    Brute force within the partition budget; beyond it the finite-space
    equivalence "bounded variation iff finite-valued" is used and only the
    bound (not the sup) is reported.
    """
    w = _as_table(w)
    k = w.space.n_atoms
    if k > variation_atoms:
        raise ExplicitBudgetExceeded(
            f"partition enumeration needs Bell({k}); budget is {variation_atoms} atoms"
        )
    best = 0.0
    best_part = None
    for part in set_partitions(range(k)) if k else [[]]:
        total = 0.0
        for block in part:
            m = 0
            for i in block:
                m |= 1 << i
            total += float(w.table[m])
        if total > best or best_part is None:
            best = total
            best_part = part
    return best, best_part


def is_of_bounded_variation(w, variation_atoms=10):
    w = _as_table(w)
    if w.space.n_atoms <= variation_atoms:
        val, part = total_variation(w, variation_atoms)
        if math.isinf(val):
            return False, part
        return True, None
    # finitely many partitions exist, so the sup is finite iff every value is
    ok, wit = is_finite_valued(w)
    return ok, wit


def is_essential(w):
    """Some sigma-additive measure has exactly the same null structure.

    On singletons the candidate support is forced, so only one candidate
    needs checking.
    """
    w = _as_table(w)
    support = 0
    for i in range(w.space.n_atoms):
        if w.table[1 << i] > 0:
            support |= 1 << i
    for b in range(w.space.n_sets):
        if (float(w.table[b]) > 0) != bool(b & support):
            return False, b
    return True, None


@dataclass
class PropertyReport:
    """Classification booleans; every False has a witness under the same key."""

    monotone: bool
    normed: bool
    null_additive: bool
    finite: bool
    sigma_finite: bool
    maxitive: bool
    completely_maxitive: bool
    continuous_from_above: bool
    exhaustive: bool
    ccc: bool
    sigma_principal: bool
    autocontinuous: bool
    of_bounded_variation: bool
    essential: bool
    atom_values: tuple | None = None
    witnesses: dict = field(default_factory=dict)

    def flags(self):
        return {
            k: getattr(self, k)
            for k in (
                "monotone",
                "normed",
                "null_additive",
                "finite",
                "sigma_finite",
                "maxitive",
                "completely_maxitive",
                "continuous_from_above",
                "exhaustive",
                "ccc",
                "sigma_principal",
                "autocontinuous",
                "of_bounded_variation",
                "essential",
            )
        }


def classify(w, tol=DEFAULT_TOL, ideal_atoms=4, variation_atoms=10):
    """Run every named predicate on a set function and collect the report."""
    w = _as_table(w)
    wit = {}
    out = {}
    checks = {
        "monotone": lambda: is_monotone(w, tol),
        "normed": lambda: is_normed(w, tol),
        "null_additive": lambda: is_null_additive(w, tol),
        "finite": lambda: is_finite_valued(w),
        "sigma_finite": lambda: is_sigma_finite(w),
        "maxitive": lambda: is_maxitive(w, tol),
        "completely_maxitive": lambda: is_completely_maxitive(w, tol),
        "continuous_from_above": lambda: is_continuous_from_above(w, tol),
        "exhaustive": lambda: is_exhaustive(w),
        "ccc": lambda: is_ccc(w),
        "sigma_principal": lambda: is_sigma_principal(w, ideal_atoms),
        "autocontinuous": lambda: is_autocontinuous(w, tol),
        "of_bounded_variation": lambda: is_of_bounded_variation(w, variation_atoms),
        "essential": lambda: is_essential(w),
    }
    for name, fn in checks.items():
        ok, witness = fn()
        out[name] = bool(ok)
        if witness is not None and not ok:
            wit[name] = witness
    atom_values = None
    if out["maxitive"]:
        atom_values = tuple(float(w.table[1 << i]) for i in range(w.space.n_atoms))
    return PropertyReport(atom_values=atom_values, witnesses=wit, **out)


# ---------------------------------------------------------------------------
# alternation of arbitrary order
# ---------------------------------------------------------------------------


@dataclass
class AlternationReport:
    ok: bool
    order: int
    witness: tuple | None
    min_signed_value: float


def _vsub(a, b):
    """Vectorized extended subtraction: equal-signed infinities cancel."""
    with np.errstate(invalid="ignore"):
        d = a - b
    bad = np.isnan(d)
    if bad.any():
        d = np.where(bad, 0.0, d)
    return d


def choquet_alternating(w, order, tol=DEFAULT_TOL, max_cells=1 << 21):
    """Check the alternating sign of iterated successive differences.

    For each n <= order and every tuple (G, G1..Gn) of measurable sets the
    signed iterated difference (-1)^(n+1) * D_{G1} ... D_{Gn} w(G) must be
    nonnegative, where D_{G1} f(G) = f(G | G1) - f(G) and equal infinities
    cancel to zero.
    """
    w = _as_table(w)
    n = w.space.n_sets
    if order < 1:
        raise ValueError("order must be at least 1")
    cells = n ** (order + 1)
    if cells > max_cells:
        raise ExplicitBudgetExceeded(
            f"alternation of order {order} on {w.space.n_atoms} atoms needs "
            f"{cells} cells; budget is {max_cells}"
        )
    masks = np.arange(n)
    or_tab = np.bitwise_or.outer(masks, masks)
    cur = w.table.astype(float)
    ok = True
    witness = None
    min_signed = INF
    for depth in range(1, order + 1):
        cur = _vsub(cur[or_tab], cur[:, None])
        sign = 1.0 if depth % 2 == 1 else -1.0
        signed = sign * cur
        m = float(np.min(signed))
        if m < min_signed:
            min_signed = m
        if ok and m < -tol:
            flat = int(np.argmin(signed))
            idx = np.unravel_index(flat, signed.shape)
            witness = tuple(int(i) for i in idx)
            ok = False
    return AlternationReport(ok=ok, order=order, witness=witness, min_signed_value=min_signed)


# ---------------------------------------------------------------------------
# essential supremum and the two-valued measure
# ---------------------------------------------------------------------------


def _require_fuzzy(w, tol=DEFAULT_TOL):
    ok, wit = is_monotone(w, tol)
    if not ok:
        raise NotMonotone(f"witness masks {wit}")
    ok, wit = is_null_additive(w, tol)
    if not ok:
        raise NotNullAdditive(f"witness masks {wit}")


def essential_supremum(tau, f, bset=None, tol=DEFAULT_TOL):
    """inf of t > 0 such that B & {f > t} is tau-negligible.

    tau must be monotone and null-additive so that negligibility behaves.
    Swept over the distinct values of f and cross-checked against the max of
    f over the non-negligible atoms of B.
    """
    tau = _as_table(tau)
    _require_fuzzy(tau, tol)
    if bset is None:
        bset = tau.space.full()
    zeros = _zero_masks(tau.table)

    def neg(mask):
        return negligible(tau, mask, _zeros=zeros)

    candidates = [0.0] + f.distinct_values(bset)
    result = None
    for t in candidates:
        if neg(bset.mask & f.level_set(t).mask):
            result = t
            break
    if result is None:
        result = INF

    # independent route: max of f over non-negligible atoms inside B
    oracle = 0.0
    for i in range(tau.space.n_atoms):
        if bset.mask & (1 << i) and not neg(1 << i):
            oracle = max(oracle, float(f.atom_values[i]))
    if not close(result, oracle, tol):
        raise OracleMismatch(
            f"essential supremum sweep {result} vs atom oracle {oracle}"
        )
    return result


def esssup_measure(tau, f, tol=DEFAULT_TOL):
    """The maxitive measure B -> essential supremum of f over B."""
    tau = _as_table(tau)
    _require_fuzzy(tau, tol)
    zeros = _zero_masks(tau.table)
    vals = [
        0.0 if negligible(tau, 1 << i, _zeros=zeros) else float(f.atom_values[i])
        for i in range(tau.space.n_atoms)
    ]
    return MaxitiveMeasure(tau.space, vals)


def delta_measure(w, tol=DEFAULT_TOL):
    """The two-valued companion: 1 exactly on the sets of positive value."""
    if isinstance(w, MaxitiveMeasure):
        vals = [1.0 if v > 0 else 0.0 for v in w.atom_values]
        return MaxitiveMeasure(w.space, vals)
    w = _as_table(w)
    _require_fuzzy(w, tol)
    vals = [1.0 if w.table[1 << i] > 0 else 0.0 for i in range(w.space.n_atoms)]
    delta = MaxitiveMeasure(w.space, vals)
    # the two-valued companion must reproduce positivity on every set
    for b in range(w.space.n_sets):
        if (w.table[b] > 0) != (delta(b) > 0):
            raise NotNullAdditive(f"positivity not atom-determined at mask {b}")
    return delta


def counting_delta(space):
    """The set-counting companion: 1 on every nonempty set."""
    return MaxitiveMeasure(space, [1.0] * space.n_atoms)


# ---------------------------------------------------------------------------
# atoms, variation, essential witness, finiteness
# ---------------------------------------------------------------------------


@dataclass
class AtomDecomposition:
    atoms: tuple
    values: tuple
    residual_null: MeasurableSet


def atom_decomposition(nu, tol=DEFAULT_TOL):
    """Pairwise disjoint measure atoms H_n with nu(B) = max_n nu(B & H_n).

    Ordered by decreasing value, ties by atom index; the leftover union is
    null. Every claim is verified exhaustively before returning.
    """
    space = nu.space
    order = sorted(
        (i for i in range(space.n_atoms) if nu.atom_values[i] > 0),
        key=lambda i: (-float(nu.atom_values[i]), i),
    )
    hs = tuple(space.atom_block(i) for i in order)
    values = tuple(float(nu.atom_values[i]) for i in order)
    null_mask = space.full_mask
    for i in order:
        null_mask &= ~(1 << i)
    residual = MeasurableSet(space, null_mask)

    if nu(residual) != 0.0:
        raise DecompositionVerificationFailed("leftover set has positive measure")
    for h in hs:
        if nu(h) <= 0:
            raise DecompositionVerificationFailed("candidate atom is null")
        for b in range(space.n_sets):
            inside = nu(h.mask & b)
            outside = nu(h.mask & ~b)
            if inside != 0.0 and outside != 0.0:
                raise DecompositionVerificationFailed(
                    f"{h!r} splits into two non-null parts at mask {b}"
                )
    for b in range(space.n_sets):
        best = 0.0
        for h in hs:
            best = max(best, nu(b & h.mask))
        if not close(nu(b), best, tol):
            raise DecompositionVerificationFailed(
                f"max over atoms misses nu at mask {b}"
            )
    return AtomDecomposition(atoms=hs, values=values, residual_null=residual)


def disjoint_variation(nu, variation_atoms=10, tol=DEFAULT_TOL):
    """|nu| as a sup over partitions, cross-checked against the atom sum."""
    require_budget(nu.space.n_atoms, variation_atoms, "partition enumeration")
    brute, _ = total_variation(nu.to_set_function(), variation_atoms)
    dec = atom_decomposition(nu, tol)
    closed = float(sum(dec.values)) if dec.values else 0.0
    if not close(brute, closed, tol):
        raise OracleMismatch(f"partition sup {brute} vs atom sum {closed}")
    return closed


def essential_witness(nu, tol=DEFAULT_TOL):
    """A sigma-additive measure with the same null sets, from the atom masses.

    Requires finite atom values; transform infinite measures (for instance
    atomwise arctan) before asking for a witness.
    """
    from .additive import AdditiveMeasure

    if not np.isfinite(nu.atom_values).all():
        raise ValueError("essential witness needs finite values; transform first")
    dec = atom_decomposition(nu, tol)
    masses = np.zeros(nu.space.n_atoms)
    for h, v in zip(dec.atoms, dec.values):
        masses[h.atom_indices()[0]] = v
    m = AdditiveMeasure(nu.space, masses)
    for b in range(nu.space.n_sets):
        if (m(b) > 0) != (nu(b) > 0):
            raise OracleMismatch(f"null sets differ at mask {b}")
    return m


@dataclass
class FinitenessReport:
    odot_finite: bool
    sigma_odot_finite: bool
    semi_odot_finite: bool


def finiteness_suite(op, nu):
    """The three finiteness notions for nu under the operation.

    On a finite algebra the max is attained, so semi-finiteness collapses to
    plain op-finiteness; the sweep computes both independently and insists
    they agree.
    """
    space = nu.space
    odot = op.finite_element(nu(space.full_mask))
    sigma = all(op.finite_element(float(v)) for v in nu.atom_values)
    table = nu.to_set_function().table
    semi = True
    for b in range(space.n_sets):
        best = 0.0
        for a in submasks(b):
            if op.finite_element(float(table[a])):
                best = max(best, float(table[a]))
        if best != float(table[b]):
            semi = False
            break
    if semi != odot:
        raise OracleMismatch("semi-finiteness must match op-finiteness here")
    return FinitenessReport(
        odot_finite=odot, sigma_odot_finite=sigma, semi_odot_finite=semi
    )
