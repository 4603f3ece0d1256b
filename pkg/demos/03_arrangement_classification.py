#!/usr/bin/env python3
"""How the two constraint level sets are arranged, with certificates.

The solvable class consists of pairs whose zero sets are each confined to
one side of the other function (and whose feasible set never collapses
onto a strict part of a zero set).  The classifier checks five structural
assumptions in reduction order and returns, for every verdict, either a
machine-checkable certificate (a pencil multiplier, an interior point) or
a concrete counterexample point.
"""

import numpy as np

from nonalter import (
    classify_problem,
    detect_separation_by_hyperplane,
    evaluate,
    nonneg_everywhere,
)
from nonalter import corpus

print(__doc__)

for name in corpus.NAMES:
    f, g, h, meta = corpus.load(name)
    rep = classify_problem(g, h)
    print(f"\n{name}: {meta.get('description', '')}")
    print(f"  class = {rep.overall_class.value}   member = {rep.in_nonalter.value}")
    for k in range(1, 6):
        v = rep.assumption(k)
        print(f"  assumption {k}: {v.verdict.value:12s} {v.note}")

# A closer look at the split-branch instance: the vertical line cuts the
# region between the hyperbola branches into two sign-opposite parts.
f, g, h, _ = corpus.load("ex22")
cert = detect_separation_by_hyperplane(g, h)
a_minus, a_plus = cert.witnesses
print("\nex22 separation certificate:")
print("  affine pattern (c0, c1, ...):", np.round(cert.affine_pattern, 6))
print("  restriction of g to {h=0} has min eigenvalue",
      f"{cert.restriction_nonneg.min_eig:.3g} (nonnegative)")
print(f"  witnesses: h({np.round(a_minus, 3)}) = {evaluate(h, a_minus):.3g}, "
      f"h({np.round(a_plus, 3)}) = {evaluate(h, a_plus):.3g}, both inside {{g<0}}")

# And a certified inclusion: for the nested-hyperbola pair, h = -g - 40
# makes -h + (-1)*g == 40, nonnegative everywhere, so {g=0} sits in {h<=0}.
f, g, h, _ = corpus.load("ex24")
rep = classify_problem(g, h)
i1 = rep.inclusions[0]
print("\nex24 inclusion {g=0} in {h<=0}:", i1.status.value, " lambda =", round(i1.lam, 9))
combo = (-1.0) * h + i1.lam * g
print("  certified pencil nonnegative everywhere:", nonneg_everywhere(combo))
