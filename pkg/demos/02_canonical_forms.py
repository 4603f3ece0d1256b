#!/usr/bin/env python3
"""The five canonical shapes of a quadratic under affine changes.

Any nonconstant quadratic can be rescaled and re-coordinatized into one of
five shapes (negative squares first, constants normalized to -1/0/+1, a
surviving linear term rotated onto one coordinate).  The change of
variables is returned explicitly, so a second function can be expressed in
the same basis -- that companion view is what the separation and
degeneracy tests read off.
"""

import numpy as np

from nonalter import QuadForm, canonical_reduce, companion_in_basis, evaluate
from nonalter.canonical import canonical_expression_value

print(__doc__)

examples = {
    "-x^2 + y^2 + 9  (hyperbola)": QuadForm(np.diag([-1.0, 1.0]), np.zeros(2), 9.0),
    "x^2 + y^2 - 1   (circle)": QuadForm(np.eye(2), np.zeros(2), -1.0),
    "x^2 - y^2 - 1   (conjugate hyperbola)": QuadForm(np.diag([1.0, -1.0]), np.zeros(2), -1.0),
    "-x^2 + y       (parabolic)": QuadForm(np.diag([-1.0, 0.0]), [0.0, 0.5], 0.0),
    "1 - x          (affine)": QuadForm(np.zeros((2, 2)), [-0.5, 0.0], 1.0),
}

for label, g in examples.items():
    change, form = canonical_reduce(g)
    print(f"\n{label}")
    print(f"  tag={form.tag.value}  k={form.k} m={form.m} "
          f"delta={form.delta} theta={form.theta} eta={form.eta} c'={form.cprime}")
    print(f"  scale s = {change.s:.6g}")
    # The defining identity: s * g(T y + t) equals the canonical expression.
    y = np.array([0.7, -1.3])
    lhs = change.s * evaluate(g, change.apply(y))
    rhs = canonical_expression_value(form, y)
    print(f"  identity check at y = {y}:  {lhs:.12g} == {rhs:.12g}")

# Companion view: the line 1 - x in the basis that normalizes the hyperbola.
g = examples["-x^2 + y^2 + 9  (hyperbola)"]
h = examples["1 - x          (affine)"]
change, form = canonical_reduce(g)
comp = companion_in_basis(h, change)
print("\ncompanion of 1 - x in the hyperbola's basis:")
print("  quadratic part zero:", not comp.A.any())
print("  coefficients (c1, c2) =", 2 * comp.a, " constant c0 =", comp.a0)
print("  -> an affine pattern with c1 != 0: exactly what a separating")
print("     level set must look like in this basis.")
