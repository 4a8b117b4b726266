"""
Residuated operations
=====================

The four built-in operations, their residuals, and why only two of them
qualify as pseudo-multiplications.
"""

from maxitive import verify_axioms
from maxitive.errors import NotAbsolutelyContinuous
from maxitive.semigroup import (
    MAX,
    MIN,
    PLUS,
    TIMES,
    default_grid,
    exactness_holds,
    galois_holds,
    inf_distributes,
)
from maxitive.spaces import INF

for op in (TIMES, MIN, PLUS, MAX):
    rep = verify_axioms(op)
    print(f"{op.name:>5}: pseudo-multiplication {rep.pseudo_multiplication}"
          f" (annihilator {rep.annihilator}), exact residual: {op.exact}")

# the residual (r / s) is the least t with r <= t (.) s
print("(5 / 3) under plus:", PLUS.residual(5, 3))
print("(5 / 3) under max:", MAX.residual(5, 3))
print("(2 / 4) under times:", TIMES.residual(2, 4))
print("(3 / 5) under min:", MIN.residual(3, 5))

# min only residuates when r <= s
try:
    MIN.residual(5, 3)
except NotAbsolutelyContinuous as exc:
    print("min refuses:", exc)

# exactness means the residual multiplies back to r everywhere; plus only
# dominates: at (3, 5) the residual is 0 and 0 + 5 overshoots
print("times exact at (2, 4):", exactness_holds(TIMES, 2, 4))
print("plus exact at (3, 5):", exactness_holds(PLUS, 3, 5),
      "since", PLUS.residual(3, 5), "+ 5 =", PLUS(PLUS.residual(3, 5), 5))

# the Galois equivalence r <= t (.) s  <=>  (r / s) <= t on the grid
grid = default_grid()
checked = 0
for r in grid:
    for s in grid:
        if not TIMES.residual_defined(r, s):
            continue
        for t in grid:
            assert galois_holds(TIMES, r, s, t)
            checked += 1
print("Galois triples checked under times:", checked)

# continuity makes the operation distribute over infima in its first slot
print("inf-distributivity:", inf_distributes(TIMES, [0.5, 2.0, INF], 3.0))
