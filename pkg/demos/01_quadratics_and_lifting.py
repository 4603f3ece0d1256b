#!/usr/bin/env python3
"""Quadratic functions, their matrix lift, and global nonnegativity.

Every function in this package is a quadratic q(x) = x'Ax + 2a'x + a0.
The central trick: stack a homogenizing 1 on top of x.  Then

    [1; x]' M(q) [1; x] = q(x),   M(q) = [[a0, a'], [a, A]],

and q is nonnegative on all of R^n exactly when M(q) is positive
semidefinite -- a single eigenvalue computation answers a question about
infinitely many points.
"""

import numpy as np

from nonalter import (
    QuadForm,
    evaluate,
    lift,
    nonneg_everywhere,
    null_basis,
    pseudo_inverse,
    psd_status,
    restrict_affine,
    unconstrained_min,
)
from nonalter.quad_core import find_negative_point

print(__doc__)

# The unit circle function x^2 + y^2 - 1.
circle = QuadForm(np.eye(2), np.zeros(2), -1.0)
print("circle(1, 0)  =", evaluate(circle, [1.0, 0.0]))
print("circle(0, 0)  =", evaluate(circle, [0.0, 0.0]))
print("lift:\n", lift(circle))

# A perfect square is nonnegative everywhere; its lift says so instantly.
square = QuadForm([[1.0, 1.0], [1.0, 1.0]], np.zeros(2), 0.0)  # (x + y)^2
print("\n(x+y)^2 nonnegative everywhere:", nonneg_everywhere(square))
print("lift verdict:", psd_status(lift(square)).verdict.value)

# An indefinite function is not, and the failing eigenvector hands us a
# concrete witness point.
saddle = QuadForm(np.diag([1.0, -1.0]), np.zeros(2), 1.0)
print("\nx^2 - y^2 + 1 nonnegative everywhere:", nonneg_everywhere(saddle))
w = find_negative_point(saddle)
print("witness:", w, "value:", evaluate(saddle, w))

# Pseudo-inverse and kernel drive every reduction in the package.
M = np.diag([2.0, 0.0])
print("\npinv(diag(2, 0)) =\n", pseudo_inverse(M))
print("kernel basis:\n", null_basis(M))

# Restricting a quadratic to an affine set is again a quadratic.  Here the
# hyperbola -x^2 + y^2 + 9 restricted to the vertical line x = 1:
hyper = QuadForm(np.diag([-1.0, 1.0]), np.zeros(2), 9.0)
restricted = restrict_affine(hyper, [1.0, 0.0], [[0.0], [1.0]])
print("\nhyperbola on the line x = 1:  y^2 +", restricted.a0)

# Unconstrained minimization in closed form, including escape directions.
um = unconstrained_min(QuadForm(np.eye(2), [-1.0, 2.0], 0.0))
print("\nmin of x^2 + y^2 - 2x + 4y:", um.value, "at", um.x)
um = unconstrained_min(QuadForm(np.diag([1.0, 0.0]), [0.0, 0.5], 0.0))
print("min of x^2 + y:", um.value, "(escapes along", um.direction, ")")
