"""The idempotent integral: max over levels of level (op) measure-of-level-set.

Three evaluators are provided. The level sweep works for any monotone set
function; the submask maximization is an independent route that agrees with
the sweep when the measure is maxitive; the atom form is the closed formula
for maxitive measures. Tests and the crosscheck flag hold them against each
other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OracleMismatch
from .measures import MaxitiveMeasure, _as_table
from .spaces import DEFAULT_TOL, INF, MeasurableFn, MeasurableSet, close, esub


@dataclass
class IntegralResult:
    value: float
    level: float
    strict_boundary: bool


def _coerce_measure(nu):
    if isinstance(nu, MaxitiveMeasure):
        return nu
    return _as_table(nu)


def _fullset(nu, bset):
    if bset is not None:
        return bset
    return nu.space.full()


def idempotent_integral(op, f, nu, bset=None, tol=DEFAULT_TOL, crosscheck=False):
    """Integral of f over bset against nu under the operation.

    Sweeps the distinct values of f, evaluating the operation against the
    measure of both the strict and the weak level set; continuity of the
    operation in its first argument makes the max over these candidates equal
    the sup over all positive levels. With crosscheck=True the submask
    maximization is run as well (the measure must be maxitive for the two to
    agree) and disagreement raises OracleMismatch.
    """
    nu = _coerce_measure(nu)
    bset = _fullset(nu, bset)
    best = IntegralResult(value=0.0, level=0.0, strict_boundary=False)
    for v in [0.0] + f.distinct_values(bset):
        strict = nu(bset.mask & f.level_set(v).mask)
        weak = nu(bset.mask & f.level_set_ge(v).mask)
        for meas, is_strict in ((weak, False), (strict, True)):
            cand = op(v, meas)
            if cand > best.value:
                best = IntegralResult(value=cand, level=v, strict_boundary=is_strict)
    if crosscheck:
        other = gerritse_integral(op, f, nu, bset)
        if not close(best.value, other, tol):
            raise OracleMismatch(
                f"level sweep {best.value} vs submask maximization {other}"
            )
    return best


def gerritse_integral(op, f, nu, bset=None):
    """Max over nonempty subsets A of op(min of f on A, nu(A)).

    Exponential in the atom count; intended as an independent oracle.
    """
    nu = _coerce_measure(nu)
    bset = _fullset(nu, bset)
    best = 0.0
    sub = bset.mask
    while True:
        if sub:
            cand = op(f.min_on(sub), nu(sub))
            if cand > best:
                best = cand
        if sub == 0:
            break
        sub = (sub - 1) & bset.mask
    return best


def atom_integral(op, f, nu, bset=None):
    """Closed atom form for maxitive nu: max over atoms of op(f_i, nu_i)."""
    if not isinstance(nu, MaxitiveMeasure):
        raise TypeError("atom form needs a MaxitiveMeasure")
    bset = _fullset(nu, bset)
    best = 0.0
    for i in bset.atom_indices():
        cand = op(float(f.atom_values[i]), float(nu.atom_values[i]))
        if cand > best:
            best = cand
    return best


def density_measure(op, f, nu):
    """The measure B -> integral of f over B, written tau = f (op) nu.

    For a maxitive nu the result is again maxitive with atom values
    op(f_i, nu_i); for a general set function the level sweep is tabulated.
    """
    if isinstance(nu, MaxitiveMeasure):
        vals = [
            op(float(f.atom_values[i]), float(nu.atom_values[i]))
            for i in range(nu.space.n_atoms)
        ]
        return MaxitiveMeasure(nu.space, vals)
    w = _as_table(nu)
    from .spaces import SetFunction

    table = [
        idempotent_integral(op, f, w, MeasurableSet(w.space, b)).value
        for b in range(w.space.n_sets)
    ]
    return SetFunction(w.space, table)


def _abs_diff(f, g):
    """|f - g| pointwise with equal infinities treated as distance zero."""
    space = f.space
    vals = []
    for i in range(space.n_atoms):
        a, b = float(f.atom_values[i]), float(g.atom_values[i])
        vals.append(abs(esub(a, b)))
    return MeasurableFn(space, vals)


def ky_fan_distance(nu, f, g, bset=None):
    """inf of t > 0 with nu(|f - g| > t) <= t, by segment analysis.

    On each segment between consecutive distinct values of |f - g| the
    survival value phi = nu(|f - g| > left endpoint) is constant, so the
    least admissible t in the segment is the left endpoint when phi is below
    it, phi itself when phi falls inside, and nothing otherwise.
    """
    nu = _coerce_measure(nu)
    bset = _fullset(nu, bset)
    d = _abs_diff(f, g)
    vs = [0.0] + d.distinct_values(bset)
    if vs[-1] != INF:
        vs = vs + [INF]
    best = INF
    for i in range(len(vs) - 1):
        lo, hi = vs[i], vs[i + 1]
        phi = nu(bset.mask & d.level_set(lo).mask)
        if phi <= lo:
            cand = lo
        elif phi < hi:
            cand = phi
        else:
            continue
        if cand < best:
            best = cand
    # best stays infinite only when |f - g| is infinite on a set whose
    # survival measure is infinite at every level; no finite t works then
    return best


def sugeno_norm(nu, f, bset=None):
    """Distance from f to the zero function in the nu metric."""
    zero = MeasurableFn.constant(f.space, 0.0)
    return ky_fan_distance(nu, f, zero, bset)
