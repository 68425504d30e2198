"""
A tour of the continuation bounds that drive the pruning
========================================================

Every search node asks the same question: can the candidates left at this
node still beat the incumbent?  The solvers answer with knapsack bounds of
increasing looseness (and decreasing cost), all applied to the same table
of marginal gains.  This walks through one such table.
"""

import numpy as np

from subknap.bounds import (
    exact_knapsack,
    forced_completion_values,
    fractional_knapsack,
    greedy_order,
)

# a node's candidate table: marginal gains, costs, and what budget is left
gains = np.array([4.0, 3.6, 2.5, 1.8, 0.9])
costs = np.array([2.0, 2.4, 1.0, 1.5, 0.9])
leftover = 3.4

order = greedy_order(gains, costs, np.arange(5))
g, c = gains[order], costs[order]
print("candidates by gain/cost:", order.tolist())

# 1. the exact 0/1 knapsack optimum over the gains.  Tightest, priciest.
kv = exact_knapsack(gains, costs, leftover)

# 2. the fractional relaxation: fill greedily, split the last item.
lp = fractional_knapsack(g, c, leftover)
print(f"exact knapsack bound  kv = {kv:.3f}")
frac = 0.0 if lp.fraction is None else lp.fraction
print(
    f"fractional bound     fkh = {lp.value:.3f}"
    f"  ({lp.fill_prefix_len} whole items + {frac:.2f} of the next)"
)

# 3. the same relaxation fed stale, inherited gain caps (the lazy scheme).
#    Caps only ever exceed the true gains, so the bound only loosens.
stale = gains + np.array([0.3, 0.0, 0.4, 0.1, 0.2])
so = greedy_order(stale, costs, np.arange(5))
lazy = fractional_knapsack(stale[so], costs[so], leftover).value
print(f"lazy fractional bound    = {lazy:.3f}")
assert kv <= lp.value + 1e-9 <= lazy + 1e-9

# 4. forcing one candidate into the relaxed completion.  When even the
#    forced version cannot beat the incumbent, that candidate's entire
#    branch is skippable -- this is what the reduction variants flag.
forced = forced_completion_values(g, c, leftover)
print("forced-completion values:", np.round(forced, 3).tolist())
incumbent_margin = 6.8  # pretend s* - f(S) is this much
for pos, v in enumerate(forced):
    mark = "  <- flag: branch cannot improve" if v <= incumbent_margin else ""
    print(f"  force item {order[pos]}: bound {v:.3f}{mark}")
