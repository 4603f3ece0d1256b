"""End-to-end solver: classify, reduce or dual-solve, then recover a point.

The dispatch mirrors the arrangement classes: infeasibility and redundant
constraints exit through single-constraint solves; Slater failures restrict
to an affine subspace; the degenerate one-variable pattern splits into a
halfspace piece and a hyperplane piece; instances with both zero sets
one-sided get the two-multiplier dual followed by solution recovery; and
for everything outside that class the report falls back to a brute-force
estimate flagged as non-certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .canonical import AffineChange
from .classify import (
    ArrangementClass,
    ArrangementReport,
    SearchSpec,
    classify_problem,
)
from .duality import DualSolveResult, solve_dual_2d
from .oracle import GridSpec, grid_min, probe_unbounded
from .qp1qc import Qp1qcResult, solve_on_affine_subspace, solve_qp1qc
from .quad_core import (
    DEFAULT_TOL,
    QuadForm,
    evaluate,
    escape_point,
    null_basis,
    restrict_affine,
    unconstrained_min,
)


class NoSublevelPoint(RuntimeError):
    """Raised when {f < gamma} is certifiably or practically empty."""


SIDE_G_NEG_H_POS = "g_neg_h_pos"
SIDE_G_POS_H_NEG = "g_pos_h_neg"


@dataclass(frozen=True)
class ReducedProblem:
    """A constructed reduction with enough data to map solutions back."""

    kind: str  # nullspace_system | product_constraint | halfspace_union_hyperplane | subspace_restriction | single_constraint
    data: dict


@dataclass(frozen=True)
class SolveReport:
    classification: ArrangementReport
    status: str  # solved | infeasible | unbounded | dual_infeasible | undetermined | estimate_only | numerical_failure
    nu_star: Optional[float]
    certified: bool
    attained: Optional[bool] = None
    x_star: Optional[np.ndarray] = None
    side: Optional[str] = None
    residuals: Optional[Tuple[float, float, float]] = None
    dual: Optional[DualSolveResult] = None
    reduction: Optional[ReducedProblem] = None
    subsolve: Optional[Qp1qcResult] = None
    oracle_estimate: Optional[dict] = None
    pathway: Tuple[str, ...] = ()


def side_of_sublevel(f: QuadForm, gamma: float, g: QuadForm, h: QuadForm,
                     tol: float = DEFAULT_TOL) -> str:
    """Which strict side {f < gamma} lives on, probed at one sublevel point.

    The probe is the unconstrained minimizer when finite, otherwise a sample
    along an escape ray.  Raises :class:`NoSublevelPoint` when {f < gamma}
    is empty.
    """
    um = unconstrained_min(f)
    if um.status == "attained":
        if um.value >= gamma:
            raise NoSublevelPoint(f"{{f < {gamma}}} is empty: inf f = {um.value}")
        x0 = um.x
    else:
        x0 = escape_point(f, gamma - 1.0)
        if x0 is None:  # pragma: no cover - escape always succeeds
            raise NoSublevelPoint("could not sample the sublevel set")
    gv, hv = evaluate(g, x0), evaluate(h, x0)
    if gv < 0 and hv > 0:
        return SIDE_G_NEG_H_POS
    if gv > 0 and hv < 0:
        return SIDE_G_POS_H_NEG
    raise NoSublevelPoint(
        f"sublevel probe has unexpected signs g={gv:.3g}, h={hv:.3g}; "
        "the dichotomy hypothesis does not apply"
    )


def _residuals(f, g, h, x, nu):
    return (evaluate(f, x) - nu, evaluate(g, x), evaluate(h, x))


def recover_solution(
    f: QuadForm, g: QuadForm, h: QuadForm, nu_star: float, tol: float = DEFAULT_TOL
):
    """Recover an optimal point for a finite value, or None when unattained.

    Branch A (nu_star equals the unconstrained infimum): search the affine
    manifold of unconstrained minimizers for a feasible point by minimizing
    the restricted g under the restricted h.  Branch B (nu_star strictly
    above): determine the side of the sublevel set and solve the
    single-constraint problem on the blocking constraint; the minimizer must
    land on that constraint's boundary and satisfy the other one.

    Returns ``(x_star or None, side or None, notes)``.
    """
    notes = []
    um = unconstrained_min(f)
    gate = tol * (1.0 + abs(nu_star))
    if um.status == "attained" and abs(um.value - nu_star) <= gate:
        notes.append("branch A: optimum equals the unconstrained infimum")
        Z = null_basis(f.A)
        x_c = um.x
        if Z.shape[1] == 0:
            if evaluate(g, x_c) <= gate and evaluate(h, x_c) <= gate:
                return x_c, None, notes
            notes.append("unique unconstrained minimizer is infeasible")
            return None, None, notes
        gbar = restrict_affine(g, x_c, Z)
        hbar = restrict_affine(h, x_c, Z)
        sub = solve_qp1qc(gbar, hbar, tol)
        if sub.status == "attained" and sub.value <= gate and evaluate(hbar, sub.x) <= gate:
            x = x_c + Z @ sub.x
            return x, None, notes
        notes.append("no feasible point on the minimizer manifold: value unattained")
        return None, None, notes

    notes.append("branch B: optimum above the unconstrained infimum")
    try:
        side = side_of_sublevel(f, nu_star, g, h, tol)
    except NoSublevelPoint as exc:
        notes.append(str(exc))
        return None, None, notes
    # Mirror-symmetric: on side (g<0, h>0) the blocking constraint is h.
    blocking, other = (h, g) if side == SIDE_G_NEG_H_POS else (g, h)
    notes.append(f"side {side}: solving the single-constraint problem on the blocking constraint")
    sub = solve_qp1qc(f, blocking, tol)
    if sub.status != "attained":
        notes.append(f"single-constraint subproblem status: {sub.status}")
        return None, side, notes
    x = sub.x
    bscale = 1.0 + blocking.data_scale()
    if abs(sub.value - nu_star) > gate:
        notes.append(
            f"subproblem value {sub.value:.12g} does not match {nu_star:.12g}"
        )
        return None, side, notes
    if not (abs(evaluate(blocking, x)) <= tol * bscale):
        notes.append("recovered point is not on the blocking boundary")
        return None, side, notes
    if evaluate(other, x) > tol * (1.0 + other.data_scale()):
        notes.append("recovered point violates the other constraint")
        return None, side, notes
    return x, side, notes


def _build_reduction(f, g, h, hint: dict, tol: float) -> ReducedProblem:
    kind = hint["kind"]
    if kind == "single_constraint":
        which = hint["which"]
        return ReducedProblem(kind="single_constraint", data={"constraint": which})
    if kind == "subspace":
        # Intersect the flat sets {q = 0} for each constraint without a
        # negative value; on that affine set the other constraint remains.
        flats = hint["flat"]
        rows, rhs = [], []
        for name in flats:
            q = g if name == "g" else h
            rows.append(q.A)
            rhs.append(-q.a)
        Astack = np.vstack(rows)
        bstack = np.concatenate(rhs)
        x0, *_ = np.linalg.lstsq(Astack, bstack, rcond=None)
        if float(np.linalg.norm(Astack @ x0 - bstack)) > 1e-6 * (1 + np.linalg.norm(bstack)):
            return ReducedProblem(kind="infeasible_subspace", data={})
        gram = Astack.T @ Astack
        N = null_basis(gram)
        remaining = None
        if len(flats) == 1:
            remaining = "h" if flats[0] == "g" else "g"
        return ReducedProblem(
            kind="subspace_restriction",
            data={"x0": x0, "N": N, "remaining": remaining},
        )
    if kind == "product_constraint":
        b, b0, c0, t = hint["b"], hint["b0"], hint["c0"], hint["t"]
        lo, hi = -c0 / (2 * t), -b0 / 2.0  # interval for b'x
        if lo > hi + tol:
            return ReducedProblem(kind="infeasible_interval", data={"lo": lo, "hi": hi})
        A = np.outer(b, b)
        a = 0.5 * (c0 / (2 * t) + b0 / 2.0) * b
        a0 = (c0 / (2 * t)) * (b0 / 2.0)
        prod = QuadForm(A, a, a0)
        return ReducedProblem(kind="product_constraint", data={"constraint": prod})
    if kind == "halfspace_union_hyperplane":
        pat = hint["pattern"]
        change: AffineChange = pat["change"]
        n = change.n
        # Canonical coordinate xi(x) = first row of T^{-1}(x - t); the
        # degenerate feasible set is {xi <= -1} union {xi = 1}.
        Tinv = np.linalg.inv(change.T)
        row = Tinv[0]
        const = -float(row @ change.t)
        halfspace = QuadForm(np.zeros((n, n)), row / 2.0, const + 1.0)  # xi + 1 <= 0
        x_plane = change.apply(np.eye(n)[0])  # point with xi = 1
        N_plane = change.T[:, 1:] if n > 1 else None
        return ReducedProblem(
            kind="halfspace_union_hyperplane",
            data={"halfspace": halfspace, "x_plane": x_plane, "N_plane": N_plane},
        )
    raise ValueError(f"unknown reduction hint {kind!r}")  # pragma: no cover


def _report_from_qp1qc(f, g, h, classification, sub: Qp1qcResult, reduction, pathway, tol):
    if sub.status == "infeasible":
        return SolveReport(
            classification=classification, status="infeasible", nu_star=None,
            certified=True, reduction=reduction, subsolve=sub,
            pathway=pathway + ("subproblem infeasible",),
        )
    if sub.status == "unbounded_below":
        return SolveReport(
            classification=classification, status="unbounded", nu_star=None,
            certified=True, reduction=reduction, subsolve=sub,
            pathway=pathway + ("objective unbounded below on the reduction",),
        )
    if sub.status in ("attained", "unattained"):
        x = sub.x if sub.status == "attained" else None
        res = _residuals(f, g, h, x, sub.value) if x is not None else None
        return SolveReport(
            classification=classification, status="solved", nu_star=sub.value,
            certified=True, attained=sub.status == "attained", x_star=x,
            residuals=res, reduction=reduction, subsolve=sub, pathway=pathway,
        )
    return SolveReport(
        classification=classification, status="numerical_failure", nu_star=sub.value,
        certified=False, reduction=reduction, subsolve=sub, pathway=pathway,
    )


def solve_nonalter(
    f: QuadForm,
    g: QuadForm,
    h: QuadForm,
    tol: float = DEFAULT_TOL,
    *,
    spec: SearchSpec = SearchSpec(),
    classification: Optional[ArrangementReport] = None,
    oracle_fallback: bool = True,
    collect_trace: bool = False,
) -> SolveReport:
    """Solve min f over {g <= 0, h <= 0} with a fully certified report."""
    if not (f.n == g.n == h.n):
        raise ValueError("dimension mismatch between objective and constraints")
    report = classification or classify_problem(g, h, tol, spec)
    pathway = (f"class:{report.overall_class.value}",)

    # A constant objective makes every feasible point optimal.
    if f.is_constant() and report.overall_class not in (
        ArrangementClass.INFEASIBLE, ArrangementClass.UNDETERMINED
    ):
        x = report.a3.witness if report.a3.holds else None
        if x is not None:
            return SolveReport(
                classification=report, status="solved", nu_star=f.a0, certified=True,
                attained=True, x_star=np.asarray(x), residuals=_residuals(f, g, h, x, f.a0),
                pathway=pathway + ("constant objective",),
            )

    cls = report.overall_class
    if cls is ArrangementClass.INFEASIBLE:
        return SolveReport(
            classification=report, status="infeasible", nu_star=None, certified=True,
            pathway=pathway,
        )

    if cls in (ArrangementClass.REDUCES_TO_QP1QC, ArrangementClass.AFFINE_PAIR_REDUCTION):
        reduction = _build_reduction(f, g, h, report.reduction_hint, tol)
        if reduction.kind in ("infeasible_subspace", "infeasible_interval"):
            return SolveReport(
                classification=report, status="infeasible", nu_star=None,
                certified=True, reduction=reduction, pathway=pathway,
            )
        if reduction.kind == "single_constraint":
            q = g if reduction.data["constraint"] == "g" else h
            sub = solve_qp1qc(f, q, tol)
            return _report_from_qp1qc(f, g, h, report, sub, reduction, pathway, tol)
        if reduction.kind == "product_constraint":
            sub = solve_qp1qc(f, reduction.data["constraint"], tol)
            return _report_from_qp1qc(f, g, h, report, sub, reduction, pathway, tol)
        if reduction.kind == "subspace_restriction":
            x0, N = reduction.data["x0"], reduction.data["N"]
            remaining = reduction.data["remaining"]
            if N.shape[1] == 0:
                ok = evaluate(g, x0) <= tol * (1 + g.data_scale()) and evaluate(
                    h, x0
                ) <= tol * (1 + h.data_scale())
                if not ok:
                    return SolveReport(
                        classification=report, status="infeasible", nu_star=None,
                        certified=True, reduction=reduction, pathway=pathway,
                    )
                val = evaluate(f, x0)
                return SolveReport(
                    classification=report, status="solved", nu_star=val, certified=True,
                    attained=True, x_star=x0, residuals=_residuals(f, g, h, x0, val),
                    reduction=reduction, pathway=pathway + ("subspace is a single point",),
                )
            fbar = restrict_affine(f, x0, N)
            if remaining is None:
                sub = solve_on_affine_subspace(f, x0, N, tol)
            else:
                qbar = restrict_affine(g if remaining == "g" else h, x0, N)
                inner = solve_qp1qc(fbar, qbar, tol)
                x = x0 + N @ inner.x if inner.x is not None else None
                sub = Qp1qcResult(
                    status=inner.status, value=inner.value, x=x, lam=inner.lam,
                    kkt=inner.kkt, note=inner.note,
                )
            return _report_from_qp1qc(f, g, h, report, sub, reduction, pathway, tol)

    if cls is ArrangementClass.ASSUMPTION5_DEGENERATE:
        reduction = _build_reduction(f, g, h, report.reduction_hint, tol)
        half = solve_qp1qc(f, reduction.data["halfspace"], tol)
        x_plane, N_plane = reduction.data["x_plane"], reduction.data["N_plane"]
        if N_plane is not None and N_plane.shape[1]:
            plane = solve_on_affine_subspace(f, x_plane, N_plane, tol)
        else:
            v = evaluate(f, x_plane)
            plane = Qp1qcResult(status="attained", value=v, x=x_plane, lam=0.0)
        branches = [b for b in (half, plane) if b.status in ("attained", "unattained")]
        if any(b.status == "unbounded_below" for b in (half, plane)):
            return SolveReport(
                classification=report, status="unbounded", nu_star=None, certified=True,
                reduction=reduction, pathway=pathway + ("one branch unbounded below",),
            )
        if not branches:
            return SolveReport(
                classification=report, status="numerical_failure", nu_star=None,
                certified=False, reduction=reduction, pathway=pathway,
            )
        best = min(branches, key=lambda b: b.value)
        return _report_from_qp1qc(
            f, g, h, report, best, reduction,
            pathway + ("minimum over halfspace and hyperplane branches",), tol,
        )

    if cls is ArrangementClass.NON_ALTER:
        dual = solve_dual_2d(f, g, h, tol, collect_trace=collect_trace)
        if dual.status == "dual_infeasible_everywhere":
            estimate = None
            if f.n <= 3 and oracle_fallback:
                w = probe_unbounded(f, g, h, GridSpec.cube(f.n, resolution=201))
                if w is not None:
                    estimate = {
                        "unbounded_evidence_point": w,
                        "value": evaluate(f, w),
                    }
            return SolveReport(
                classification=report, status="dual_infeasible", nu_star=None,
                certified=False, dual=dual, oracle_estimate=estimate,
                pathway=pathway + ("dual infeasible everywhere",),
            )
        if dual.status == "numerical_failure":
            return SolveReport(
                classification=report, status="numerical_failure", nu_star=dual.value,
                certified=False, dual=dual, pathway=pathway,
            )
        nu = dual.value
        x, side, notes = recover_solution(f, g, h, nu, tol)
        res = _residuals(f, g, h, x, nu) if x is not None else None
        return SolveReport(
            classification=report, status="solved", nu_star=nu, certified=True,
            attained=x is not None, x_star=x, side=side, residuals=res, dual=dual,
            pathway=pathway + tuple(notes),
        )

    if cls is ArrangementClass.OUTSIDE_NON_ALTER:
        dual = solve_dual_2d(f, g, h, tol, collect_trace=collect_trace)
        estimate = None
        status = "undetermined"
        nu = None
        if f.n <= 3 and oracle_fallback:
            res = grid_min(f, g, h, GridSpec.cube(f.n, resolution=401))
            if res.feasible_count == 0:
                res = grid_min(f, g, h, GridSpec.cube(f.n, resolution=401, eps=1e-3))
            if res.min_value is not None:
                estimate = {
                    "value": res.min_value,
                    "argmin": res.argmin,
                    "feasible_count": res.feasible_count,
                }
                status, nu = "estimate_only", res.min_value
        return SolveReport(
            classification=report, status=status, nu_star=nu, certified=False,
            dual=dual, oracle_estimate=estimate,
            pathway=pathway + ("no certified method outside the class; dual value is a lower bound",),
        )

    return SolveReport(
        classification=report, status="undetermined", nu_star=None, certified=False,
        pathway=pathway,
    )
