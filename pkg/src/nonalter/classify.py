"""Arrangement classification for a pair of quadratic constraints.

Given ``g <= 0`` and ``h <= 0``, this module decides how the two level sets
``{g=0}`` and ``{h=0}`` sit relative to each other: separation of a sublevel
set by the other zero set, certified zero-set inclusions through matrix
pencils, and the five structural assumptions that gate the two-multiplier
strong-duality pathway.  Every positive verdict carries a machine-checkable
certificate (a pencil multiplier, an interior point, a witness); negative
verdicts carry concrete counterexample points.  When neither route lands,
the honest answer is "undetermined".
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from . import _opt
from .canonical import (
    AffineChange,
    FormTag,
    canonical_reduce,
    companion_in_basis,
)
from .quad_core import (
    DEFAULT_TOL,
    PSD_RTOL,
    PsdStatus,
    PsdVerdict,
    QuadForm,
    evaluate,
    evaluate_many,
    find_negative_point,
    gradient_many,
    lift,
    nonneg_everywhere,
    psd_status,
    unconstrained_min,
)


@dataclass(frozen=True)
class SearchSpec:
    """Budget and geometry of the deterministic witness searches."""

    box: float = 10.0
    grid_per_axis: int = 41
    n_samples: int = 10_000
    refine_steps: int = 100
    seed: int = 0


def _search_points(n: int, spec: SearchSpec, extra: Optional[np.ndarray] = None) -> np.ndarray:
    """Structured candidates, a grid (n <= 3), and seeded uniform samples."""
    parts = []
    if extra is not None and len(extra):
        parts.append(extra)
    if n <= 3:
        axes = [np.linspace(-spec.box, spec.box, spec.grid_per_axis)] * n
        mesh = np.meshgrid(*axes, indexing="ij")
        parts.append(np.stack([m.ravel() for m in mesh], axis=1))
    rng = np.random.default_rng(spec.seed)
    parts.append(rng.uniform(-spec.box, spec.box, size=(spec.n_samples, n)))
    return np.vstack(parts)


def _ray_candidates(g: QuadForm, h: QuadForm, spec: SearchSpec) -> np.ndarray:
    """Sign-cell probes along rays, independent of the dimension.

    Uniform sampling cannot hit thin regions once n grows, but along any
    line both constraints restrict to scalar quadratics whose roots cut the
    line into at most five sign cells.  Probing every cell midpoint (plus
    the roots themselves and points beyond the extremes) over rays through
    the stationary points of +-g and +-h, in eigenvector and seeded random
    directions, reaches every arrangement feature the checkers care about.
    """
    n = g.n
    anchors = [np.zeros(n)]
    for q in (g, h):
        for sgn in (1.0, -1.0):
            um = unconstrained_min(sgn * q)
            if um.status == "attained":
                anchors.append(um.x)
    dirs = []
    for q in (g, h):
        if q.A.any():
            dirs.extend(np.linalg.eigh(q.A)[1].T)
        if q.a.any():
            dirs.append(q.a / np.linalg.norm(q.a))
    rng = np.random.default_rng(spec.seed + 1)
    rnd = rng.normal(size=(8, n))
    dirs.extend(rnd / np.linalg.norm(rnd, axis=1, keepdims=True))

    pts = []
    for a in anchors:
        for d in dirs:
            roots = []
            for q in (g, h):
                qa = float(d @ q.A @ d)
                qb = 2.0 * float((q.A @ a + q.a) @ d)
                qc = evaluate(q, a)
                scale = 1.0 + q.data_scale()
                if abs(qa) > 1e-13 * scale:
                    disc = qb * qb - 4.0 * qa * qc
                    if disc >= 0.0:
                        s = np.sqrt(disc)
                        roots += [(-qb - s) / (2 * qa), (-qb + s) / (2 * qa)]
                elif abs(qb) > 1e-13 * scale:
                    roots.append(-qc / qb)
            roots.sort()
            if roots:
                span = max(roots[-1] - roots[0], 1.0)
                probes = [roots[0] - span, roots[-1] + span]
                probes += [0.5 * (roots[i] + roots[i + 1]) for i in range(len(roots) - 1)]
                probes += roots
            else:
                probes = [0.0]
            for t in probes:
                pts.append(a + t * d)
    return np.asarray(pts) if pts else np.zeros((0, n))


def _project_to_zero_set(q: QuadForm, pts: np.ndarray, steps: int = 30) -> np.ndarray:
    """Vectorized Newton projection of every row onto {q = 0}."""
    pts = pts.copy()
    for _ in range(steps):
        vals = evaluate_many(q, pts)
        grads = gradient_many(q, pts)
        denom = np.einsum("ij,ij->i", grads, grads) + 1e-300
        pts -= (vals / denom)[:, None] * grads
    return pts


def _zero_set_witness(
    q: QuadForm,
    objective: QuadForm,
    spec: SearchSpec,
    margin: float,
    refine: bool = True,
    extra: Optional[np.ndarray] = None,
) -> Optional[np.ndarray]:
    """A point with q(x) ~ 0 and objective(x) > margin, or None.

    Candidates come from projecting grid/sample/structured points onto
    {q = 0}; the best one is polished by projected gradient ascent on the
    objective.
    """
    pts = _project_to_zero_set(q, _search_points(q.n, spec, extra))
    qvals = np.abs(evaluate_many(q, pts))
    on_set = qvals <= 1e-7 * (1.0 + q.data_scale())
    if not on_set.any():
        return None
    pts = pts[on_set]
    vals = evaluate_many(objective, pts)
    best = int(np.argmax(vals))
    x = pts[best]
    if refine:
        x = _ascend_on_zero_set(q, objective, x, spec.refine_steps)
    return x if evaluate(objective, x) > margin else None


def _ascend_on_zero_set(q, objective, x, steps):
    """Projected gradient ascent of ``objective`` along {q = 0}."""
    x = x.copy()
    step = 0.1
    for _ in range(steps):
        grad = 2.0 * (objective.A @ x + objective.a)
        gq = 2.0 * (q.A @ x + q.a)
        norm_gq2 = float(gq @ gq) + 1e-300
        tangent = grad - (grad @ gq) / norm_gq2 * gq
        cand = x + step * tangent
        for _ in range(20):  # re-project
            cand = cand - evaluate(q, cand) / (float((2 * (q.A @ cand + q.a)) @ (2 * (q.A @ cand + q.a))) + 1e-300) * 2.0 * (q.A @ cand + q.a)
        if evaluate(objective, cand) > evaluate(objective, x) and abs(evaluate(q, cand)) <= 1e-7 * (1.0 + q.data_scale()):
            x = cand
        else:
            step *= 0.5
            if step < 1e-12:
                break
    return x


def _feasible_witness(conds, n: int, spec: SearchSpec,
                      extra: Optional[np.ndarray] = None) -> Optional[np.ndarray]:
    """First search point satisfying every (quadform, upper_bound) condition."""
    pts = _search_points(n, spec, extra)
    mask = np.ones(len(pts), dtype=bool)
    for q, ub in conds:
        mask &= evaluate_many(q, pts) <= ub
        if not mask.any():
            return None
    return pts[int(np.flatnonzero(mask)[0])]


# ---------------------------------------------------------------------------
# Slater and pencils
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoSidedSlater:
    takes_negative: bool
    takes_positive: bool
    negative_point: Optional[np.ndarray] = None
    positive_point: Optional[np.ndarray] = None


def slater_two_sided(q: QuadForm, tol: float = PSD_RTOL) -> TwoSidedSlater:
    """Does q take strictly negative / strictly positive values somewhere?"""
    neg = not nonneg_everywhere(q, tol)
    pos = not nonneg_everywhere(-q, tol)
    return TwoSidedSlater(
        takes_negative=neg,
        takes_positive=pos,
        negative_point=find_negative_point(q, tol) if neg else None,
        positive_point=find_negative_point(-q, tol) if pos else None,
    )


def _pencil_objective(Mp: np.ndarray, Mq: np.ndarray):
    def min_eig(lam: float) -> float:
        return float(np.linalg.eigvalsh(Mp + lam * Mq)[0])

    return min_eig


def _shrink_toward_zero(feasible, lam: float, iters: int = 90) -> float:
    """Smallest-|lambda| point of the feasible interval containing ``lam``.

    The set of feasible multipliers of a matrix pencil is an interval, so a
    bisection between 0 and a feasible point lands on its edge nearest zero.
    Keeps certificates small and reproducible on flat plateaus.
    """
    if feasible(0.0):
        return 0.0
    a, b = 0.0, lam
    for _ in range(iters):
        mid = 0.5 * (a + b)
        if feasible(mid):
            b = mid
        else:
            a = mid
    return b


def pencil_psd_search(p: QuadForm, q: QuadForm, tol: float = PSD_RTOL) -> Optional[float]:
    """A real lambda with lift(p) + lambda*lift(q) PSD, if one exists.

    The smallest eigenvalue of the pencil is concave in lambda, so the
    maximum is found by golden section over a mapped copy of the real line;
    the returned multiplier is then pulled back to the feasible point of
    smallest magnitude.
    """
    Mp, Mq = lift(p), lift(q)
    if not Mq.any():
        return 0.0 if psd_status(Mp, tol).verdict is not PsdVerdict.INDEFINITE else None

    def feasible(mu: float) -> bool:
        return psd_status(Mp + mu * Mq, tol).verdict is not PsdVerdict.INDEFINITE

    rho = _pencil_objective(Mp, Mq)
    lam, _ = _opt.maximize_concave_line(rho, probes=129, iters=90)
    if lam is None or not feasible(lam):
        return None
    return float(_shrink_toward_zero(feasible, float(lam)))


def pencil_psd_search_nonneg(p: QuadForm, q: QuadForm, tol: float = PSD_RTOL) -> Optional[float]:
    """Like :func:`pencil_psd_search` but restricted to lambda >= 0."""
    Mp, Mq = lift(p), lift(q)

    def feasible(mu: float) -> bool:
        return psd_status(Mp + mu * Mq, tol).verdict is not PsdVerdict.INDEFINITE

    rho = _pencil_objective(Mp, Mq)
    lam, _ = _opt.maximize_concave_ray(rho, probes=65, iters=90)
    if lam is None:
        return None
    lam = max(float(lam), 0.0)
    if not feasible(lam):
        return None
    return float(_shrink_toward_zero(feasible, lam))


# ---------------------------------------------------------------------------
# Separation by an affine pattern
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparationCertificate:
    """Certificate that {h=0} splits {g<0} into two sign-opposite parts.

    ``affine_pattern`` holds (c0, c1, ..., cm): the coefficients of the
    second function in the canonical basis of the first, with c1 != 0.
    ``witnesses`` are two points of {g < 0} on which h takes opposite signs.
    """

    change: AffineChange
    affine_pattern: np.ndarray
    restriction_nonneg: PsdStatus
    witnesses: Tuple[np.ndarray, np.ndarray]


def _restriction_on_hyperplane(coeffs: np.ndarray, delta: int, theta: int, m: int) -> QuadForm:
    """The canonical quadratic restricted to the zero set of the affine pattern.

    Variables are the canonical coordinates 2..m; substituting
    y1 = -(delta*sum(ci/c1*yi) + c0/c1) into the canonical expression gives a
    quadratic whose global nonnegativity is the separation test.
    """
    c0, c1 = coeffs[0], coeffs[1]
    kappa = c0 / c1
    d = max(m - 1, 0)
    if d == 0:
        return QuadForm(np.zeros((1, 1)), np.zeros(1), theta - kappa**2)
    rho = delta * coeffs[2 : m + 1] / c1
    A = delta * np.eye(d) - np.outer(rho, rho)
    a = -kappa * rho
    return QuadForm(A, a, theta - kappa**2)


def detect_separation_by_hyperplane(
    g: QuadForm, h: QuadForm, tol: float = PSD_RTOL
) -> Optional[SeparationCertificate]:
    """Certificate that {h=0} separates {g<0}, or None.

    Separation happens exactly when (i) ``g`` reduces to
    ``-y1^2 + delta*(y2^2+..+ym^2) + theta`` with theta in {0, 1}, (ii) ``h``
    is affine in that basis with pattern ``c1*y1 + delta*(c2*y2+..) + c0``,
    c1 != 0, and (iii) the restriction of the canonical g to {h = 0} is
    nonnegative everywhere.
    """
    if g.is_constant() or h.is_constant():
        return None
    change, form = canonical_reduce(g)
    if form.tag is not FormTag.FORM1 or form.k != 1:
        return None
    comp = companion_in_basis(h, change)
    cscale = comp.data_scale()
    if float(np.abs(comp.A).max(initial=0.0)) > tol * cscale:
        return None  # companion is not affine in this basis
    cbar = np.concatenate([[comp.a0], 2.0 * comp.a])  # (c0, c1, ..., cn)
    if abs(cbar[1]) <= tol * cscale:
        return None
    m = form.m
    tail = cbar[m + 1 :]
    if tail.size and float(np.abs(tail).max()) > tol * cscale:
        return None
    if form.delta == 0:
        mid = cbar[2 : m + 1]
        if mid.size and float(np.abs(mid).max()) > tol * cscale:
            return None
    restriction = _restriction_on_hyperplane(cbar, form.delta, form.theta, m)
    status = psd_status(lift(restriction), tol)
    if status.verdict is PsdVerdict.INDEFINITE:
        return None
    # Probe the two branches y1 = +-X with the other coordinates at zero.
    X = max(2.0, 2.0 * (1.0 + abs(cbar[0] / cbar[1])))
    n = g.n
    y_plus = np.zeros(n)
    y_plus[0] = X
    y_minus = np.zeros(n)
    y_minus[0] = -X
    a_plus = change.apply(y_plus)
    a_minus = change.apply(y_minus)
    if not (evaluate(g, a_plus) < 0 and evaluate(g, a_minus) < 0):
        return None  # pragma: no cover - the pattern guarantees both branches
    if not evaluate(h, a_plus) * evaluate(h, a_minus) < 0:
        return None  # pragma: no cover
    pattern = cbar[: m + 1].copy()
    pattern.setflags(write=False)
    return SeparationCertificate(
        change=change,
        affine_pattern=pattern,
        restriction_nonneg=status,
        witnesses=(a_minus, a_plus),
    )


# ---------------------------------------------------------------------------
# Zero-set inclusion
# ---------------------------------------------------------------------------


class InclusionStatus(Enum):
    CERTIFIED_PENCIL = "certified_pencil"
    REFUTED_WITNESS = "refuted_witness"
    VACUOUS = "vacuously_true"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class InclusionVerdict:
    """Outcome of deciding {g = 0} subset of {sign * h <= 0}."""

    status: InclusionStatus
    lam: Optional[float] = None
    witness: Optional[np.ndarray] = None
    note: str = ""

    @property
    def is_true(self) -> bool:
        return self.status in (InclusionStatus.CERTIFIED_PENCIL, InclusionStatus.VACUOUS)

    @property
    def is_false(self) -> bool:
        return self.status is InclusionStatus.REFUTED_WITNESS


def _zero_set_empty(q: QuadForm, tol: float) -> bool:
    """Exact emptiness test for {q = 0}: q strictly one-signed everywhere."""
    scale = 1.0 + q.data_scale()
    lo = unconstrained_min(q)
    if lo.status == "attained" and lo.value > tol * scale:
        return True
    hi = unconstrained_min(-q)
    return hi.status == "attained" and hi.value > tol * scale


def check_inclusion_zeroset(
    g: QuadForm,
    h: QuadForm,
    sign: int,
    tol: float = DEFAULT_TOL,
    spec: SearchSpec = SearchSpec(),
    witness_search: bool = True,
    extra: Optional[np.ndarray] = None,
) -> InclusionVerdict:
    """Decide whether {g = 0} is contained in {sign * h <= 0}.

    Routes, in order: vacuous truth when {g=0} is provably empty; a pencil
    certificate ``-sign*h + lam*g >= 0`` (sufficient unconditionally, and
    also necessary when g takes both signs and {g=0} does not separate
    {sign*h > 0}); a concrete witness on {g=0} violating the inclusion;
    otherwise undetermined, with a note recording whether the exactness
    hypotheses of the pencil route held.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if _zero_set_empty(g, tol):
        return InclusionVerdict(InclusionStatus.VACUOUS, note="{g=0} is empty")
    p = (-float(sign)) * h
    lam = pencil_psd_search(p, g)
    if lam is not None and nonneg_everywhere(p + lam * g):
        return InclusionVerdict(InclusionStatus.CERTIFIED_PENCIL, lam=lam)
    if not witness_search:
        return InclusionVerdict(
            InclusionStatus.UNDETERMINED,
            note="witness search skipped (the companion inclusion already settles the disjunct)",
        )
    margin = tol * (1.0 + h.data_scale())
    signed_h = float(sign) * h
    if extra is None:
        extra = _ray_candidates(g, h, spec)
    w = _zero_set_witness(g, signed_h, spec, margin, extra=extra)
    if w is not None:
        return InclusionVerdict(InclusionStatus.REFUTED_WITNESS, witness=w)
    ts = slater_two_sided(g)
    sep = detect_separation_by_hyperplane(signed_h, g)
    hypotheses = ts.takes_negative and ts.takes_positive and sep is None
    note = (
        "no pencil and no witness; pencil route was exact (two-sided Slater for g, "
        "no separation of {sign*h>0} by {g=0}), so the inclusion is presumed false"
        if hypotheses
        else "no pencil and no witness; pencil exactness hypotheses not verified"
    )
    return InclusionVerdict(InclusionStatus.UNDETERMINED, note=note)


# ---------------------------------------------------------------------------
# Assumption checkers
# ---------------------------------------------------------------------------


class Verdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class AssumptionVerdict:
    verdict: Verdict
    note: str = ""
    certificate: Optional[dict] = None
    witness: Optional[np.ndarray] = None

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict is Verdict.FAILS


def check_assumption4(g: QuadForm, h: QuadForm, tol: float = PSD_RTOL) -> AssumptionVerdict:
    """Two-sided Slater: each of g, -g, h, -h takes a strictly negative value."""
    tg, th = slater_two_sided(g, tol), slater_two_sided(h, tol)
    missing = []
    if not tg.takes_negative:
        missing.append("g")
    if not tg.takes_positive:
        missing.append("-g")
    if not th.takes_negative:
        missing.append("h")
    if not th.takes_positive:
        missing.append("-h")
    if missing:
        return AssumptionVerdict(
            Verdict.FAILS,
            note="functions without a Slater point: " + ", ".join(missing),
            certificate={"missing": tuple(missing)},
        )
    return AssumptionVerdict(Verdict.HOLDS, note="all of g, -g, h, -h take negative values")


def _assumption5_one_orientation(g, h, tol):
    """A5 pattern with g playing the one-variable concave role."""
    if g.is_constant():
        return None
    change, form = canonical_reduce(g)
    if form.tag is not FormTag.FORM1 or form.k != 1 or form.m != 1 or form.theta != 1:
        return None
    comp = companion_in_basis(h, change)
    cscale = comp.data_scale()
    if float(np.abs(comp.A).max(initial=0.0)) > tol * cscale:
        return None
    cbar = np.concatenate([[comp.a0], 2.0 * comp.a])
    if abs(cbar[1]) <= tol * cscale:
        return None
    if cbar[2:].size and float(np.abs(cbar[2:]).max()) > tol * cscale:
        return None
    c1, c0 = cbar[1], cbar[0]
    if c1 < 0:  # orient the basis so the affine slope is positive
        c1, c0 = -c1, -c0
    return {"change": change, "c1": float(c1), "c0": float(c0)}


def check_assumption5(
    g: QuadForm, h: QuadForm, tol: float = DEFAULT_TOL
) -> AssumptionVerdict:
    """Degenerate one-variable pattern: g ~ -y1^2+1 and h ~ c1*y1+c0, c1>0.

    Fails exactly when c0 = +-c1 (within tolerance); holds, possibly as
    "not applicable", otherwise.
    """
    pat = _assumption5_one_orientation(g, h, PSD_RTOL)
    if pat is None:
        return AssumptionVerdict(Verdict.HOLDS, note="pattern not applicable")
    c0, c1 = pat["c0"], pat["c1"]
    scale = tol * (1.0 + abs(c1))
    if abs(c0 - c1) <= scale or abs(c0 + c1) <= scale:
        side = "+1" if abs(c0 - c1) <= scale else "-1"
        return AssumptionVerdict(
            Verdict.FAILS,
            note=f"degenerate pattern with c0 = {side} * c1",
            certificate={"c0": c0, "c1": c1, "sign": 1 if side == "+1" else -1},
        )
    return AssumptionVerdict(
        Verdict.HOLDS,
        note="pattern applicable, c0 differs from both +-c1",
        certificate={"c0": c0, "c1": c1},
    )


def check_assumption2(
    g: QuadForm,
    h: QuadForm,
    tol: float = DEFAULT_TOL,
    spec: SearchSpec = SearchSpec(),
    extra: Optional[np.ndarray] = None,
):
    """Mutual one-sidedness of the zero sets.

    Returns ``(verdict, (I1, I2, I3, I4))`` for the four inclusions
    {g=0} in {h<=0}, {g=0} in {h>=0}, {h=0} in {g<=0}, {h=0} in {g>=0}.
    """
    if extra is None:
        extra = _ray_candidates(g, h, spec)
    i1 = check_inclusion_zeroset(g, h, +1, tol, spec, extra=extra)
    i2 = check_inclusion_zeroset(g, h, -1, tol, spec,
                                 witness_search=not i1.is_true, extra=extra)
    i3 = check_inclusion_zeroset(h, g, +1, tol, spec, extra=extra)
    i4 = check_inclusion_zeroset(h, g, -1, tol, spec,
                                 witness_search=not i3.is_true, extra=extra)

    def disjunct(a: InclusionVerdict, b: InclusionVerdict):
        if a.is_true or b.is_true:
            return Verdict.HOLDS
        if a.is_false and b.is_false:
            return Verdict.FAILS
        return Verdict.UNDETERMINED

    d1, d2 = disjunct(i1, i2), disjunct(i3, i4)
    if d1 is Verdict.HOLDS and d2 is Verdict.HOLDS:
        verdict = AssumptionVerdict(Verdict.HOLDS, note="both zero sets are one-sided")
    elif d1 is Verdict.FAILS or d2 is Verdict.FAILS:
        which = "{g=0}" if d1 is Verdict.FAILS else "{h=0}"
        verdict = AssumptionVerdict(
            Verdict.FAILS, note=f"{which} meets both strict sides of the other function"
        )
    else:
        verdict = AssumptionVerdict(Verdict.UNDETERMINED, note="some inclusion undetermined")
    return verdict, (i1, i2, i3, i4)


def _min_over_single_constraint(objective: QuadForm, constraint: QuadForm, tol: float):
    # Local import: qp1qc builds on this module's slater helper.
    from .qp1qc import solve_qp1qc

    return solve_qp1qc(objective, constraint, tol)


def check_assumption3(
    g: QuadForm,
    h: QuadForm,
    tol: float = DEFAULT_TOL,
    spec: SearchSpec = SearchSpec(),
    extra: Optional[np.ndarray] = None,
) -> AssumptionVerdict:
    """Non-triviality: g, h nonconstant; D nonempty; D != {g<=0}; D != {h<=0}."""
    if g.is_constant():
        if g.a0 <= tol:
            return AssumptionVerdict(
                Verdict.FAILS,
                note="g is constant and redundant, D = {h<=0}",
                certificate={"case": "redundant", "which": "h"},
            )
        return AssumptionVerdict(
            Verdict.FAILS,
            note="g is a positive constant, D is empty",
            certificate={"case": "infeasible"},
        )
    if h.is_constant():
        if h.a0 <= tol:
            return AssumptionVerdict(
                Verdict.FAILS,
                note="h is constant and redundant, D = {g<=0}",
                certificate={"case": "redundant", "which": "g"},
            )
        return AssumptionVerdict(
            Verdict.FAILS,
            note="h is a positive constant, D is empty",
            certificate={"case": "infeasible"},
        )

    gs, hs = g.data_scale(), h.data_scale()
    if extra is None:
        extra = _ray_candidates(g, h, spec)
    feas = _feasible_witness([(g, tol * (1 + gs)), (h, tol * (1 + hs))], g.n, spec, extra)
    if feas is None:
        r = _min_over_single_constraint(g, h, tol)
        if r.status == "infeasible" or (r.value is not None and r.value > tol * (1 + gs)):
            return AssumptionVerdict(
                Verdict.FAILS, note="feasible set is empty", certificate={"case": "infeasible"}
            )
        if r.status == "attained":
            feas = r.x
        else:
            return AssumptionVerdict(
                Verdict.UNDETERMINED, note="could not produce a feasible point"
            )

    # D != {g<=0}: a point with g <= 0 < h, or a certificate {g<=0} in {h<=0}.
    for first, second, label in ((g, h, "g"), (h, g, "h")):
        pts = _search_points(g.n, spec, extra)
        mask = (evaluate_many(first, pts) <= tol * (1 + first.data_scale())) & (
            evaluate_many(second, pts) > tol * (1 + second.data_scale())
        )
        if mask.any():
            continue
        w = _zero_set_witness(first, second, spec, tol * (1 + second.data_scale()),
                              extra=extra)
        if w is not None:
            continue
        lam = pencil_psd_search_nonneg(-second, first)
        if lam is not None:
            return AssumptionVerdict(
                Verdict.FAILS,
                note=f"constraint {'h' if label == 'g' else 'g'} is redundant, D = {{{label}<=0}}",
                certificate={"case": "redundant", "which": label, "lam": lam},
            )
        return AssumptionVerdict(
            Verdict.UNDETERMINED,
            note=f"could not decide whether D = {{{label}<=0}}",
        )
    return AssumptionVerdict(
        Verdict.HOLDS, note="nonempty, both constraints active somewhere", witness=feas
    )


def check_assumption1(
    g: QuadForm,
    h: QuadForm,
    tol: float = DEFAULT_TOL,
    spec: SearchSpec = SearchSpec(),
    extra: Optional[np.ndarray] = None,
) -> AssumptionVerdict:
    """If D collapses onto one zero set, it must be that whole zero set.

    Certified through, in order: a strict interior point (both premises
    false); structural redundancy (D equals one sublevel set); the exact
    subproblem min{g : h <= 0} whose zero value identifies D inside {g=0},
    followed by a witness search on {g=0} away from D.
    """
    gs, hs = 1.0 + g.data_scale(), 1.0 + h.data_scale()
    if extra is None:
        extra = _ray_candidates(g, h, spec)
    interior = _feasible_witness([(g, -tol * gs), (h, -tol * hs)], g.n, spec, extra)
    if interior is not None:
        return AssumptionVerdict(
            Verdict.HOLDS, note="strict interior point", witness=interior
        )
    if h.is_constant() and h.a0 <= 0 or g.is_constant() and g.a0 <= 0:
        return AssumptionVerdict(Verdict.HOLDS, note="one constraint is a nonpositive constant")

    for first, second, label in ((g, h, "g"), (h, g, "h")):
        r = _min_over_single_constraint(first, second, tol)
        if r.status == "infeasible":
            continue
        if r.status in ("attained", "unattained") and r.value is not None:
            if r.value > tol * (1 + first.data_scale()):
                continue  # D empty; nonemptiness is assumption 3's business
            if abs(r.value) <= tol * (1 + first.data_scale()):
                # D sits inside {first = 0}; find a zero-set point outside D.
                w = _zero_set_witness(first, second, spec, tol * (1 + second.data_scale()),
                                      extra=extra)
                if w is not None:
                    return AssumptionVerdict(
                        Verdict.FAILS,
                        note=f"D is contained in {{{label}=0}} but misses part of it",
                        witness=w,
                        certificate={"collapsed_on": label},
                    )
                incl = check_inclusion_zeroset(first, second, +1, tol, spec, extra=extra)
                if incl.is_true:
                    continue  # D = {first = 0} exactly: implication holds
                return AssumptionVerdict(
                    Verdict.UNDETERMINED,
                    note=f"D appears to be contained in {{{label}=0}}; equality undecided",
                )
            # min < 0: a feasible point with first < 0 exists, premise false.
            continue
        if r.status == "unbounded_below":
            continue
        return AssumptionVerdict(Verdict.UNDETERMINED, note="subproblem did not resolve")
    return AssumptionVerdict(Verdict.HOLDS, note="no collapse of D onto either zero set")


# ---------------------------------------------------------------------------
# Overall classification
# ---------------------------------------------------------------------------


class ArrangementClass(Enum):
    INFEASIBLE = "infeasible"
    REDUCES_TO_QP1QC = "reduces_to_qp1qc"
    AFFINE_PAIR_REDUCTION = "affine_pair_reduction"
    ASSUMPTION5_DEGENERATE = "assumption5_degenerate"
    NON_ALTER = "non_alter"
    OUTSIDE_NON_ALTER = "outside_non_alter"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class ArrangementReport:
    """Assumption verdicts, the solver pathway class, and membership.

    ``overall_class`` is the case of the dispatch ledger that fires first in
    the order 3, 4, 5, affine pair, 2, 1.  ``in_nonalter`` records class
    membership itself, which is decided by assumptions 1 and 2 alone; an
    instance can be a member while still being solved through a reduction
    (for example when one constraint is redundant).
    """

    a1: AssumptionVerdict
    a2: AssumptionVerdict
    a3: AssumptionVerdict
    a4: AssumptionVerdict
    a5: AssumptionVerdict
    inclusions: Tuple[InclusionVerdict, InclusionVerdict, InclusionVerdict, InclusionVerdict]
    overall_class: ArrangementClass
    in_nonalter: Verdict
    reduction_hint: Optional[dict] = None
    notes: Tuple[str, ...] = ()

    def assumption(self, k: int) -> AssumptionVerdict:
        return (self.a1, self.a2, self.a3, self.a4, self.a5)[k - 1]


def _affine_pair_case(g: QuadForm, h: QuadForm, tol: float):
    """Parallel affine pair reduction; None when not both affine or not parallel."""
    if not (g.is_affine() and h.is_affine()) or g.is_constant() or h.is_constant():
        return None
    b, c = g.a, h.a
    bn, cn = np.linalg.norm(b), np.linalg.norm(c)
    cross = np.outer(b, c) - np.outer(c, b)
    if float(np.abs(cross).max(initial=0.0)) > tol * max(bn * cn, 1e-300):
        return None  # not parallel: the zero hyperplanes cross
    t = float((c @ b) / (b @ b))
    if abs(t) * bn <= tol * max(cn, 1e-300):
        return None  # pragma: no cover - h constant, caught earlier
    return {"t": t, "b": b, "b0": g.a0, "c0": h.a0}


def classify_problem(
    g: QuadForm,
    h: QuadForm,
    tol: float = DEFAULT_TOL,
    spec: SearchSpec = SearchSpec(),
) -> ArrangementReport:
    """Run every assumption checker and dispatch to an arrangement class.

    Checkers run in the order 3, 4, 5, 2, 1 so that each early exit carries a
    constructive reduction; all five verdicts are always computed so that the
    report is complete.
    """
    notes = []
    extra = _ray_candidates(g, h, spec)
    a3 = check_assumption3(g, h, tol, spec, extra)
    a4 = check_assumption4(g, h)
    a5_gh = check_assumption5(g, h, tol)
    a5_hg = check_assumption5(h, g, tol)
    a5 = a5_gh if a5_gh.fails or not a5_hg.fails else a5_hg
    a2, inclusions = check_assumption2(g, h, tol, spec, extra)
    a1 = check_assumption1(g, h, tol, spec, extra)

    if a1.holds and a2.holds:
        membership = Verdict.HOLDS
    elif a1.fails or a2.fails:
        membership = Verdict.FAILS
    else:
        membership = Verdict.UNDETERMINED

    overall = None
    hint = None

    if a3.fails:
        case = (a3.certificate or {}).get("case")
        if case == "infeasible":
            overall = ArrangementClass.INFEASIBLE
        else:
            which = (a3.certificate or {}).get("which", "g")
            overall = ArrangementClass.REDUCES_TO_QP1QC
            hint = {"kind": "single_constraint", "which": which}
            notes.append(f"assumption 3 fails: solve min f subject to {which} <= 0")
    elif a3.verdict is Verdict.UNDETERMINED:
        overall = ArrangementClass.UNDETERMINED
        notes.append("assumption 3 undetermined")
    elif a4.fails:
        # Only the ">= 0 everywhere" failures survive to this point; they
        # pin the corresponding feasible set to an affine subspace.
        missing = (a4.certificate or {}).get("missing", ())
        hard = [name for name in missing if name in ("g", "h")]
        if hard:
            overall = ArrangementClass.REDUCES_TO_QP1QC
            hint = {"kind": "subspace", "flat": tuple(hard)}
            notes.append(
                "assumption 4 fails: "
                + " and ".join(hard)
                + " never negative, feasible set restricted to an affine subspace"
            )
        else:
            # -g or -h has no Slater point, so that constraint is redundant;
            # assumption 3 normally certifies this first.
            which = "h" if "-g" in missing else "g"
            overall = ArrangementClass.REDUCES_TO_QP1QC
            hint = {"kind": "single_constraint", "which": which}
            notes.append("assumption 4 fails by one-sided redundancy")
    elif a5.fails:
        sign = (a5.certificate or {}).get("sign", 1)
        role = "g" if a5 is a5_gh else "h"
        pat = _assumption5_one_orientation(
            g if role == "g" else h, h if role == "g" else g, PSD_RTOL
        )
        if sign > 0:
            overall = ArrangementClass.REDUCES_TO_QP1QC
            hint = {"kind": "single_constraint", "which": "h" if role == "g" else "g"}
            notes.append("assumption 5 fails with c0 = c1: halfspace constraint only")
        else:
            overall = ArrangementClass.ASSUMPTION5_DEGENERATE
            hint = {"kind": "halfspace_union_hyperplane", "pattern_role": role, "pattern": pat}
            notes.append(
                "assumption 5 fails with c0 = -c1: halfspace plus an isolated hyperplane"
            )
    else:
        pair = _affine_pair_case(g, h, tol)
        if pair is not None:
            overall = ArrangementClass.AFFINE_PAIR_REDUCTION
            hint = {"kind": "product_constraint", **pair}
            notes.append("both constraints affine and parallel: product-constraint reduction")
        elif a2.holds and a1.holds:
            overall = ArrangementClass.NON_ALTER
        elif a2.fails or a1.fails:
            overall = ArrangementClass.OUTSIDE_NON_ALTER
            which = "2" if a2.fails else "1"
            notes.append(f"assumption {which} refuted; no certified method applies")
        else:
            overall = ArrangementClass.UNDETERMINED
            notes.append("assumptions 1/2 undetermined")

    return ArrangementReport(
        a1=a1,
        a2=a2,
        a3=a3,
        a4=a4,
        a5=a5,
        inclusions=inclusions,
        overall_class=overall,
        in_nonalter=membership,
        reduction_hint=hint,
        notes=tuple(notes),
    )
