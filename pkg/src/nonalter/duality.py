"""The two-multiplier Lagrangian/semidefinite dual and its maximization.

For multipliers lam1, lam2 >= 0 the dual function is

    psi(lam1, lam2) = inf_x [f + lam1*g + lam2*h](x),

computed in closed form: with Q = A + lam1*B + lam2*C, v = a + lam1*b +
lam2*c and s = a0 + lam1*b0 + lam2*c0, the infimum is s - v'Q^+v when Q is
positive semidefinite and v lies in its range, and -inf otherwise.  psi is
concave, so its supremum over the nonnegative quadrant is found by a coarse
grid, a derivative-free simplex refinement, and a nested golden-section
polish that follows the (possibly nonsmooth) ridge to the boundary of the
effective domain.

The equivalent semidefinite reading: psi(lam) = sup{gamma : Z(gamma, lam)
PSD} with Z = M(f) - gamma*E00 + lam1*M(g) + lam2*M(h), where E00 carries a
single 1 in the homogenizing corner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import _opt
from .quad_core import (
    DEFAULT_TOL,
    INF_PSD_RTOL,
    PSD_RTOL,
    QuadForm,
    lift,
    quad_inf_closed_form,
    sym_eigen,
)


@dataclass(frozen=True)
class DualPoint:
    """One feasible point of the semidefinite dual."""

    lambda1: float
    lambda2: float
    gamma: float
    slack_min_eig: float


@dataclass(frozen=True)
class SlackReport:
    slack_min_eig: float
    slack_norm: float
    feasible: bool


@dataclass(frozen=True)
class DualSolveResult:
    """Outcome of maximizing the dual over the nonnegative quadrant.

    ``status``: ``finite``, ``dual_infeasible_everywhere`` (every probed
    multiplier pair gave -inf) or ``numerical_failure`` (budget exhausted
    before the convergence test passed).
    """

    status: str
    value: Optional[float] = None
    best: Optional[DualPoint] = None
    evaluations: int = 0
    trace: Optional[Tuple[dict, ...]] = None


def lagrangian_dual_value(
    f: QuadForm, g: QuadForm, h: QuadForm, lam1: float, lam2: float,
    psd_tol: float = INF_PSD_RTOL,
) -> float:
    """inf_x [f + lam1*g + lam2*h](x); -inf when the combination escapes."""
    if lam1 < 0 or lam2 < 0:
        raise ValueError("multipliers must be nonnegative")
    Q = f.A + lam1 * g.A + lam2 * h.A
    v = f.a + lam1 * g.a + lam2 * h.a
    s = f.a0 + lam1 * g.a0 + lam2 * h.a0
    return quad_inf_closed_form(Q, v, s, psd_tol)


def slack_matrix(f, g, h, gamma: float, lam1: float, lam2: float) -> np.ndarray:
    """Z = M(f) - gamma*E00 + lam1*M(g) + lam2*M(h)."""
    Z = lift(f) + lam1 * lift(g) + lam2 * lift(h)
    Z = np.array(Z)
    Z[0, 0] -= gamma
    return Z


def sdp_certificate(
    f: QuadForm, g: QuadForm, h: QuadForm, point: DualPoint, tol: float = PSD_RTOL
) -> SlackReport:
    """Recompute the dual slack at a reported point; the replayable certificate."""
    Z = slack_matrix(f, g, h, point.gamma, point.lambda1, point.lambda2)
    ev = sym_eigen(Z)
    min_eig = float(ev.values[0])
    norm2 = float(np.abs(ev.values).max(initial=0.0))
    return SlackReport(
        slack_min_eig=min_eig,
        slack_norm=norm2,
        feasible=min_eig >= -tol * (1.0 + norm2),
    )


def solve_dual_2d(
    f: QuadForm,
    g: QuadForm,
    h: QuadForm,
    tol: float = DEFAULT_TOL,
    *,
    grid: int = 64,
    simplex_iters: int = 200,
    polish_probes: int = 25,
    polish_iters: int = 70,
    polish_edge_iters: int = 48,
    budget: int = 100_000,
    collect_trace: bool = False,
) -> DualSolveResult:
    """Maximize the two-multiplier dual function over lam1, lam2 >= 0.

    Multipliers are mapped through lam = u/(1-u) so the quadrant becomes the
    unit square.  Stage 1 scans a ``grid`` x ``grid`` u-grid (lowest index
    wins ties); stage 2 refines with a derivative-free simplex; stage 3 runs
    a nested golden-section maximization (exact on the concave dual, and the
    only stage able to land on a boundary ridge of the effective domain).
    """
    evals = 0
    trace = [] if collect_trace else None

    def psi(lam1: float, lam2: float) -> float:
        nonlocal evals
        evals += 1
        val = lagrangian_dual_value(f, g, h, max(lam1, 0.0), max(lam2, 0.0))
        if trace is not None and val > -np.inf:
            trace.append({"lambda1": lam1, "lambda2": lam2, "value": val})
        return val

    u_hi = 1.0 - 1.0 / 1024.0

    # Stage 1: coarse grid.
    us = np.linspace(0.0, u_hi, grid)
    best_u, best_val = None, -np.inf
    for u1 in us:
        l1 = _opt.map_ray(u1)
        for u2 in us:
            val = psi(l1, _opt.map_ray(u2))
            if val > best_val:
                best_val, best_u = val, (u1, u2)

    if best_u is None or best_val == -np.inf:
        # Extra probes along the axes and the diagonal before giving up.
        for lam in np.geomspace(1e-3, 1e8, 34):
            for pair in ((lam, 0.0), (0.0, lam), (lam, lam)):
                if psi(*pair) > -np.inf:
                    best_val = psi(*pair)
                    best_u = tuple(l / (1.0 + l) for l in pair)
                    break
            if best_u is not None:
                break
    if best_u is None:
        return DualSolveResult(
            status="dual_infeasible_everywhere",
            evaluations=evals,
            trace=tuple(trace) if trace is not None else None,
        )

    # Stage 2: simplex refinement in u-space from the best cell.
    if simplex_iters > 0:
        u_nm, val_nm, _ = _opt.nelder_mead_max(
            lambda u: psi(_opt.map_ray(u[0]), _opt.map_ray(u[1])),
            np.asarray(best_u),
            step=1.0 / max(grid, 8),
            bounds=[(0.0, u_hi), (0.0, u_hi)],
            iters=simplex_iters,
        )
        if val_nm > best_val:
            best_val, best_u = val_nm, (float(u_nm[0]), float(u_nm[1]))

    # Stage 3: nested golden-section polish.
    def inner(u1: float) -> Tuple[Optional[float], float]:
        l1 = _opt.map_ray(u1)
        return _opt.maximize_on_interval(
            lambda u2: psi(l1, _opt.map_ray(u2)), 0.0, u_hi,
            polish_probes, polish_iters, polish_edge_iters,
        )

    def outer_val(u1: float) -> float:
        return inner(u1)[1]

    def adopt(u1, val):
        nonlocal best_val, best_u
        if u1 is not None and val >= best_val:
            u2, _ = inner(u1)
            best_val = val
            best_u = (float(u1), float(u2 if u2 is not None else 0.0))

    u1_star, val_polished = _opt.maximize_on_interval(
        outer_val, 0.0, u_hi, polish_probes, polish_iters, polish_edge_iters
    )
    adopt(u1_star, val_polished)

    # Local rounds around the incumbent: rescues narrow effective domains
    # that the global probes straddle, and provides the convergence test
    # (stop once successive best values agree within tolerance).
    converged = False
    width = 2.0 / max(grid, 8)
    for _ in range(4):
        lo = max(0.0, best_u[0] - width)
        hi = min(u_hi, best_u[0] + width)
        u1_loc, val_loc = _opt.maximize_on_interval(
            outer_val, lo, hi, 7, polish_iters, polish_edge_iters
        )
        gain = val_loc - best_val
        adopt(u1_loc, val_loc)
        if gain <= tol * (1.0 + abs(best_val)):
            converged = True
            break
        width /= 8.0

    status = "finite"
    if evals > budget or not converged:
        status = "numerical_failure"

    lam1 = _opt.map_ray(best_u[0])
    lam2 = _opt.map_ray(best_u[1])
    Z = slack_matrix(f, g, h, best_val, lam1, lam2)
    slack_min = float(np.linalg.eigvalsh(Z)[0])
    point = DualPoint(lambda1=lam1, lambda2=lam2, gamma=best_val, slack_min_eig=slack_min)
    return DualSolveResult(
        status=status,
        value=best_val,
        best=point,
        evaluations=evals,
        trace=tuple(trace) if trace is not None else None,
    )
