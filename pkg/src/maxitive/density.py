"""Density extraction for the idempotent integral.

Three routes to a density are implemented: residuation atom by atom (the
exact-operation theorem), the additive envelope built from partition sums
(whose classical density recovers the maxitive measure, through a bounded
transform when infinite values are present), and residuation of two given
densities over a common background measure. Extraction always ends with a
full verification sweep; a candidate that fails it raises NoDensity rather
than being returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .additive import AdditiveMeasure, classical_density
from .errors import (
    NegligibilityViolation,
    NoDensity,
    NonExactOperation,
    NotOdotAbsolutelyContinuous,
    OracleMismatch,
)
from .integral import atom_integral
from .measures import MaxitiveMeasure, _as_table, _zero_masks, esssup_measure, negligible
from .spaces import DEFAULT_TOL, INF, MeasurableFn, MeasurableSet, close, submasks


@dataclass
class AbsContReport:
    holds: bool
    op: str
    witness: int | None = None


def odot_abs_continuous(op, nu, tau, tol=DEFAULT_TOL):
    """nu(B) <= inf (.) tau(B) on every set; the witness is a failing mask."""
    nu_t = _as_table(nu)
    tau_t = _as_table(tau)
    if nu_t.space is not tau_t.space and nu_t.space != tau_t.space:
        raise ValueError("measures live on different spaces")
    for b in range(nu_t.space.n_sets):
        bound = op(INF, float(tau_t.table[b]))
        val = float(nu_t.table[b])
        if val > bound + tol * max(1.0, abs(bound)):
            return AbsContReport(holds=False, op=op.name, witness=b)
    return AbsContReport(holds=True, op=op.name)


def verify_density(op, f, nu, tau, tol=DEFAULT_TOL):
    """Whether integrating f against tau reproduces nu on every set."""
    for b in range(nu.space.n_sets):
        got = atom_integral(op, f, tau, MeasurableSet(tau.space, b))
        if not close(got, nu(b), tol):
            return False, b
    return True, None


def rn_density(op, nu, tau, tol=DEFAULT_TOL):
    """Density of nu with respect to tau under an exact operation.

    Candidate atoms are residuals nu_i / tau_i (zero where nu vanishes); the
    candidate is verified on every measurable set before being returned.
    Exactness of the operation is required because the residual must
    actually attain the value it dominates.
    """
    if not op.exact:
        raise NonExactOperation(
            f"{op.name} is not exact; residuals only dominate, never attain"
        )
    rep = odot_abs_continuous(op, nu, tau, tol)
    if not rep.holds:
        raise NotOdotAbsolutelyContinuous(
            f"nu is not {op.name}-absolutely continuous; witness mask {rep.witness}"
        )
    space = nu.space
    vals = []
    for i in range(space.n_atoms):
        ni = float(nu.atom_values[i])
        ti = float(tau.atom_values[i])
        vals.append(0.0 if ni == 0.0 else op.residual(ni, ti))
    c = MeasurableFn(space, vals)
    ok, wit = verify_density(op, c, nu, tau, tol)
    if not ok:
        raise NoDensity(f"residual candidate fails on mask {wit}")
    return c


def ae_equal(w, f, g, tol=DEFAULT_TOL):
    """Whether f and g agree outside a w-negligible set."""
    w = _as_table(w)
    diff = 0
    for i in range(w.space.n_atoms):
        if not close(float(f.atom_values[i]), float(g.atom_values[i]), tol):
            diff |= 1 << i
    return negligible(w, diff)


# ---------------------------------------------------------------------------
# the additive envelope
# ---------------------------------------------------------------------------


def _mul(a, b):
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


def envelope_measure(nu, m, tol=DEFAULT_TOL):
    """min over partitions of B of the sum of nu(block) * m(block).

    Computed two ways: a partition DP over submasks, and the closed atom sum
    (the all-singletons partition, which the product inequality shows is
    always optimal). Disagreement raises OracleMismatch. The result is
    additive, so it is returned as an AdditiveMeasure.
    """
    space = nu.space
    n = space.n_sets
    dp = np.zeros(n)
    nu_t = _as_table(nu).table
    m_t = _as_table(m).table
    for b in range(1, n):
        low = b & -b
        best = INF
        rest0 = b ^ low
        # blocks containing the lowest atom of b: low | (submask of the rest)
        sub = rest0
        while True:
            blk = low | sub
            cand = _mul(float(nu_t[blk]), float(m_t[blk])) + dp[b ^ blk]
            if cand < best:
                best = cand
            if sub == 0:
                break
            sub = (sub - 1) & rest0
        dp[b] = best
    closed = np.zeros(n)
    for i in range(space.n_atoms):
        unit = _mul(float(nu_t[1 << i]), float(m_t[1 << i]))
        for b in range(n):
            if b & (1 << i):
                closed[b] += unit
    for b in range(n):
        if not close(float(dp[b]), float(closed[b]), tol):
            raise OracleMismatch(
                f"partition DP {dp[b]} vs singleton sum {closed[b]} at mask {b}"
            )
    masses = [float(closed[1 << i]) for i in range(space.n_atoms)]
    return AdditiveMeasure(space, masses)


@dataclass
class EnvelopeReport:
    envelope: AdditiveMeasure
    density: MeasurableFn
    transformed: bool
    reconstruction_ok: bool


def _reconstruct(nu, m, env, tol):
    """nu(B) as the sup of envelope/m ratios over subsets of positive mass."""
    space = nu.space
    for b in range(space.n_sets):
        best = 0.0
        for sub in submasks(b):
            mb = m(sub)
            if 0.0 < mb < INF:
                ratio = env(sub) / mb if not math.isinf(env(sub)) else INF
                if ratio > best:
                    best = ratio
        if not close(nu(b), best, tol):
            return False
    return True


def envelope_density(nu, m, tol=DEFAULT_TOL, force_transform=False):
    """Density of the envelope with respect to m; equals nu atom by atom.

    Infinite nu values are routed through the arctan transform: the envelope
    is built for the bounded measure arctan(nu), its density extracted, and
    tan applied back, mapping pi/2 to infinity exactly. Reconstruction of nu
    from envelope ratios is verified when m is finite-valued.
    """
    space = nu.space
    has_inf = bool(np.isinf(nu.atom_values).any())
    transformed = has_inf or force_transform
    if transformed:
        base = MaxitiveMeasure(space, [math.atan(float(v)) for v in nu.atom_values])
    else:
        base = nu
    env1 = envelope_measure(base, m, tol)
    c1 = classical_density(env1, m, tol)
    if transformed:
        # the classical division puts the transform value a few ulp off
        # pi/2 on infinite atoms; anything that close can only be infinity
        half_pi = math.atan(INF)
        vals = [
            INF if close(float(v), half_pi, 1e-12) else math.tan(float(v))
            for v in c1.atom_values
        ]
        c = MeasurableFn(space, vals)
        env = envelope_measure(nu, m, tol)
    else:
        c = c1
        env = env1
    # the density must agree with nu on every atom m charges
    for i in range(space.n_atoms):
        if float(m.atom_masses[i]) > 0 and not close(
            float(c.atom_values[i]), float(nu.atom_values[i]), tol
        ):
            raise NoDensity(
                f"envelope density {float(c.atom_values[i])} differs from "
                f"nu {float(nu.atom_values[i])} on atom {i}"
            )
    recon = True
    if np.isfinite(m.atom_masses).all():
        recon = _reconstruct(nu, m, env, tol)
    return EnvelopeReport(
        envelope=env, density=c, transformed=transformed, reconstruction_ok=recon
    )


# ---------------------------------------------------------------------------
# densities over an associated background measure
# ---------------------------------------------------------------------------


def density_from_associated(op, mu, c1, c2, tol=DEFAULT_TOL):
    """Density of esssup(c1) with respect to esssup(c2) over the measure mu.

    The set A where c1 escapes the scalar bound inf (.) c2 must be
    mu-negligible (NegligibilityViolation otherwise); off A the candidate is
    the scalar residual c1 / c2. The candidate is verified against the two
    essential-supremum measures and NoDensity is raised on failure, which
    happens in particular when the operation is not exact at the needed
    pairs.
    """
    mu_t = _as_table(mu)
    zeros = _zero_masks(mu_t.table)
    space = mu_t.space
    nu = esssup_measure(mu_t, c1, tol)
    tau = esssup_measure(mu_t, c2, tol)
    bad = 0
    for i in range(space.n_atoms):
        bound = op(INF, float(c2.atom_values[i]))
        if float(c1.atom_values[i]) > bound + tol * max(1.0, abs(bound)):
            bad |= 1 << i
    if bad and not negligible(mu_t, bad, _zeros=zeros):
        raise NegligibilityViolation(
            f"c1 escapes the scalar bound on a non-negligible set, mask {bad}"
        )
    vals = []
    for i in range(space.n_atoms):
        if bad & (1 << i) or negligible(mu_t, 1 << i, _zeros=zeros):
            vals.append(0.0)
        else:
            r = float(c1.atom_values[i])
            vals.append(0.0 if r == 0.0 else op.residual(r, float(c2.atom_values[i])))
    c = MeasurableFn(space, vals)
    ok, wit = verify_density(op, c, nu, tau, tol)
    if not ok:
        raise NoDensity(f"associated-density candidate fails on mask {wit}")
    return c
