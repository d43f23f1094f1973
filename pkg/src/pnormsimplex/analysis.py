"""Ground-truth enumeration, q machinery, iteration bounds, trace verification.

Everything here is exact: basis enumeration and the per-iteration lemma
checks use rational arithmetic only, and the logarithmic iteration bounds
are certified ceilings computed with adaptive-precision interval arithmetic
(the enclosed value is transcendental unless the log argument is 1, so the
refinement loop always terminates).

Quantities tied to a norm parameter follow one convention: for finite p the
stored number is the exact p-th power (norms, q, and the q lower bound); for
p = inf it is the rational max-norm value itself.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from mpmath import iv

from . import kernels
from .engine import OutcomeKind, SolveTrace, ratio_test
from .errors import (
    BudgetExceeded,
    CatalogMismatch,
    DegenerateInstance,
    MissingSecondBest,
    NoFeasibleBasis,
    NoImprovingNonbasis,
    TraceNotOptimal,
    UndefinedQ,
)
from .lp import (
    Basis,
    BasicSolution,
    Dictionary,
    DualSolution,
    StandardFormLP,
    basic_solution,
    format_rational,
)
from .rules import (
    INFINITY,
    UNBOUNDED_RAY,
    PivotRule,
    RuleKind,
    column_pnorm,
    select_entering,
)

DEFAULT_ENUM_BUDGET = 200_000


# --- certified ceilings ------------------------------------------------

def _raw_to_fraction(raw) -> Fraction:
    # mantissas may be gmpy2 mpz when mpmath runs on that backend; force int
    sign, man, exp, _ = raw
    man, exp = int(man), int(exp)
    value = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -value if sign else value


def _interval_bounds(x):
    lo_raw, hi_raw = x._mpi_
    return _raw_to_fraction(lo_raw), _raw_to_fraction(hi_raw)


def certified_ln_ceil(coeff: Fraction, base: Fraction, exponent: Fraction,
                      log_arg: Fraction) -> int:
    """ceil(coeff * base**exponent * ln(log_arg)) certified by intervals.

    Inputs are exact rationals with coeff > 0, base > 0, log_arg >= 1.
    log_arg == 1 short-circuits to 0; otherwise the value is transcendental,
    so doubling the working precision eventually separates it from every
    integer.
    """
    if log_arg <= 0 or coeff <= 0 or base <= 0:
        raise ValueError("certified_ln_ceil needs positive rational inputs")
    if log_arg == 1:
        return 0

    def enclose(fr: Fraction):
        return iv.mpf(fr.numerator) / iv.mpf(fr.denominator)

    saved = iv.prec
    try:
        prec = 64
        while prec <= 1 << 16:
            iv.prec = prec
            x = enclose(coeff)
            if exponent != 0:
                x = x * iv.exp(enclose(exponent) * iv.log(enclose(base)))
            x = x * iv.log(enclose(log_arg))
            lo, hi = _interval_bounds(x)
            clo, chi = math.ceil(lo), math.ceil(hi)
            if clo == chi:
                return clo
            prec *= 2
    finally:
        iv.prec = saved
    raise RuntimeError("ceiling did not certify; value suspiciously close to an integer")


# --- exhaustive BFS catalog ---------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    basis: Basis
    solution: BasicSolution
    objective: Fraction
    dictionary: Dictionary


@dataclass(frozen=True)
class BfsCatalog:
    """Every feasible basis of an instance, with the constants derived from them.

    gamma/delta are the extreme strictly positive coordinates over all basic
    feasible solutions (absent when every BFS is the zero vector);
    gamma_D_prime/delta_D_prime are the extreme |negative reduced cost| over
    all feasible dictionaries (absent when every feasible basis is optimal).
    """

    lp: StandardFormLP
    entries: tuple
    gamma: Optional[Fraction]
    delta: Optional[Fraction]
    z_star: Fraction
    z_second: Optional[Fraction]
    gamma_D_prime: Optional[Fraction]
    delta_D_prime: Optional[Fraction]
    nondegenerate: bool
    optimal_basis: Basis

    @property
    def feasible_count(self) -> int:
        return len(self.entries)


def enumerate_bfs(lp: StandardFormLP, max_bases: int = DEFAULT_ENUM_BUDGET) -> BfsCatalog:
    """Enumerate all C(n, m) bases and catalog the feasible ones."""
    total = math.comb(lp.n, lp.m)
    if total > max_bases:
        raise BudgetExceeded(f"C({lp.n},{lp.m}) = {total} exceeds budget {max_bases}")

    entries = []
    gamma = delta = None
    gamma_d = delta_d = None
    nondeg = True
    for combo in itertools.combinations(range(1, lp.n + 1), lp.m):
        basis0 = [j - 1 for j in combo]
        values = kernels.basic_values(lp.A, lp.b, basis0)
        if values is None or any(v < 0 for v in values):
            continue
        b_bar, c_bar, a_bar, z0 = kernels.dictionary_arrays(lp.A, lp.b, lp.c, basis0)
        basis = Basis(combo)
        in_basis = set(combo)
        nonbasis = tuple(j for j in range(1, lp.n + 1) if j not in in_basis)
        dict_ = Dictionary(
            basis=basis,
            nonbasis=nonbasis,
            b_bar=tuple(b_bar),
            c_bar=tuple(c_bar),
            A_bar=tuple(tuple(row) for row in a_bar),
            z0=z0,
        )
        x = [Fraction(0)] * lp.n
        for j, v in zip(combo, values):
            x[j - 1] = v
        degenerate = any(v == 0 for v in values)
        nondeg = nondeg and not degenerate
        solution = BasicSolution(
            x=tuple(x), basis=basis, objective=z0, feasible=True,
            degenerate=degenerate)
        entries.append(CatalogEntry(
            basis=basis, solution=solution, objective=z0, dictionary=dict_))
        for v in values:
            if v > 0:
                gamma = v if gamma is None or v > gamma else gamma
                delta = v if delta is None or v < delta else delta
        for cv in c_bar:
            if cv < 0:
                mag = -cv
                gamma_d = mag if gamma_d is None or mag > gamma_d else gamma_d
                delta_d = mag if delta_d is None or mag < delta_d else delta_d

    if not entries:
        raise NoFeasibleBasis(f"{lp.name} has no feasible basis")

    z_star = min(e.objective for e in entries)
    optimal_basis = next(e.basis for e in entries if e.objective == z_star)
    above = [e.objective for e in entries if e.objective > z_star]
    z_second = min(above) if above else None
    return BfsCatalog(
        lp=lp,
        entries=tuple(entries),
        gamma=gamma,
        delta=delta,
        z_star=z_star,
        z_second=z_second,
        gamma_D_prime=gamma_d,
        delta_D_prime=delta_d,
        nondegenerate=nondeg,
        optimal_basis=optimal_basis,
    )


# --- q machinery ---------------------------------------------------------

class QRow(NamedTuple):
    basis: Basis
    s: int              # variable picked by the p-norm rule
    d: int              # variable picked by the Dantzig rule
    q_power: Fraction   # (||v_s|| / ||v_d||)^p for finite p, the ratio itself for inf


@dataclass(frozen=True)
class QReport:
    """q = min over improvable feasible bases of ||v_s||_p / ||v_d||_p."""

    p: object
    q_power: Fraction
    q_lower_power: Fraction
    per_nonbasis: tuple
    norm_bound_lo: Fraction
    norm_bound_hi: Fraction
    norm_bound_violations: tuple


def _norm_key(dict_: Dictionary, k: int, p) -> Fraction:
    norm = column_pnorm(dict_, k, p)
    return norm.value if p == INFINITY else norm.power


def compute_q(lp: StandardFormLP, catalog: BfsCatalog, p) -> QReport:
    """q over every feasible basis with an improving column, plus norm bounds.

    Also checks, exhaustively, that every improving bounded-ratio column's
    norm lies inside [1 + delta^p/gamma^p, 1 + m gamma^p/delta^p] (for p=inf:
    [1, gamma/delta]); violations are collected rather than raised.
    """
    if catalog.lp != lp:
        raise CatalogMismatch("catalog was built from a different instance")
    if not catalog.nondegenerate:
        raise DegenerateInstance(f"{lp.name} is degenerate")
    pn_rule = PivotRule.pnorm(p)   # validates p
    dz_rule = PivotRule.dantzig()
    gamma, delta = catalog.gamma, catalog.delta
    if p == INFINITY:
        lo_bound = Fraction(1)
        hi_bound = max(Fraction(1), gamma / delta)
    else:
        lo_bound = 1 + delta ** p / gamma ** p
        hi_bound = 1 + lp.m * gamma ** p / delta ** p

    rows = []
    violations = []
    for entry in catalog.entries:
        dict_ = entry.dictionary
        negatives = [k for k, cv in enumerate(dict_.c_bar, start=1) if cv < 0]
        if not negatives:
            continue
        s_col = select_entering(dict_, pn_rule)
        d_col = select_entering(dict_, dz_rule)
        q_power = _norm_key(dict_, s_col, p) / _norm_key(dict_, d_col, p)
        rows.append(QRow(
            basis=entry.basis,
            s=dict_.nonbasis[s_col - 1],
            d=dict_.nonbasis[d_col - 1],
            q_power=q_power,
        ))
        for k in negatives:
            if ratio_test(dict_, k) is UNBOUNDED_RAY:
                continue
            key = _norm_key(dict_, k, p)
            if not lo_bound <= key <= hi_bound:
                violations.append((entry.basis, dict_.nonbasis[k - 1], key))

    if not rows:
        raise NoImprovingNonbasis(f"every feasible basis of {lp.name} is optimal")

    if p == INFINITY:
        q_lower = delta / gamma
    else:
        q_lower = delta ** p / (gamma ** p * lp.m)
    return QReport(
        p=p,
        q_power=min(row.q_power for row in rows),
        q_lower_power=q_lower,
        per_nonbasis=tuple(rows),
        norm_bound_lo=lo_bound,
        norm_bound_hi=hi_bound,
        norm_bound_violations=tuple(violations),
    )


# --- iteration bounds ----------------------------------------------------

class BoundInputs(NamedTuple):
    m: int
    n: int
    p: object
    gamma: Fraction
    delta: Fraction
    q_power: Fraction
    gap0: Fraction
    gap_second: Fraction


@dataclass(frozen=True)
class BoundReport:
    """Certified iteration ceilings for one instance, start, and p.

    thm3/thm4 bound the p-norm rule through q; thm5/thm6 are their
    q-free relaxations; km1/km2/km3 are the Dantzig / best-improvement
    comparison bounds; dmdp_thm7 is filled by callers for discounted MDPs.
    """

    thm3: int
    thm4: int
    thm5: int
    thm6: int
    km1: int
    km2: int
    km3: int
    inputs: BoundInputs
    dmdp_thm7: Optional[int] = None


def evaluate_bounds(catalog: BfsCatalog, qrep: Optional[QReport], m: int, n: int,
                    p, x0_objective: Fraction) -> BoundReport:
    """Evaluate every iteration bound for a start with objective x0_objective."""
    if not catalog.nondegenerate:
        raise DegenerateInstance("bounds are only defined for nondegenerate instances")
    if qrep is None:
        raise UndefinedQ("bounds need a q report; compute_q found no improving basis")
    if qrep.p != p:
        raise ValueError(f"q report was computed for p={qrep.p}, not p={p}")
    if catalog.z_second is None:
        raise MissingSecondBest("all feasible bases share one objective value")
    if not x0_objective > catalog.z_star:
        raise ValueError("x0 must have objective strictly above the optimum")

    gamma, delta = catalog.gamma, catalog.delta
    gap0 = x0_objective - catalog.z_star
    gap2 = catalog.z_second - catalog.z_star
    gap_ratio = gap0 / gap2
    m_ratio = Fraction(m) * gamma / delta
    coeff5 = Fraction(m) * gamma ** 2 / delta ** 2

    if p == INFINITY:
        coeff3 = m_ratio / qrep.q_power
        thm3 = certified_ln_ceil(coeff3, Fraction(1), Fraction(0), gap_ratio)
        thm4 = (n - m) * certified_ln_ceil(coeff3, Fraction(1), Fraction(0), m_ratio)
        thm5 = certified_ln_ceil(coeff5, Fraction(1), Fraction(0), gap_ratio)
        thm6 = (n - m) * certified_ln_ceil(coeff5, Fraction(1), Fraction(0), m_ratio)
    else:
        inv_p = Fraction(-1, p)
        thm3 = certified_ln_ceil(m_ratio, qrep.q_power, inv_p, gap_ratio)
        thm4 = (n - m) * certified_ln_ceil(m_ratio, qrep.q_power, inv_p, m_ratio)
        thm5 = certified_ln_ceil(coeff5, Fraction(m), Fraction(1, p), gap_ratio)
        thm6 = (n - m) * certified_ln_ceil(coeff5, Fraction(m), Fraction(1, p), m_ratio)

    km1 = certified_ln_ceil(m_ratio, Fraction(1), Fraction(0), gap_ratio)
    km2 = (n - m) * certified_ln_ceil(m_ratio, Fraction(1), Fraction(0), m_ratio)
    km3 = math.ceil(
        min(m, n - m) * gamma * catalog.gamma_D_prime
        / (delta * catalog.delta_D_prime))

    return BoundReport(
        thm3=thm3, thm4=thm4, thm5=thm5, thm6=thm6,
        km1=km1, km2=km2, km3=km3,
        inputs=BoundInputs(
            m=m, n=n, p=p, gamma=gamma, delta=delta,
            q_power=qrep.q_power, gap0=gap0, gap_second=gap2),
    )


# --- trace verification ---------------------------------------------------

class CheckResult(NamedTuple):
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    instance: str
    rule: str
    p: object
    iterations: int
    checks: tuple
    bounds: Optional[BoundReport]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)


def _effective(bound: int, floor: int) -> int:
    # gap-ratio bounds legitimately evaluate to 0 when x0 is itself the
    # second-best BFS; one pivot is still needed, so the enforced ceiling
    # never drops below one "block" of the bound's structure.
    return bound if bound > 0 else floor


def verify_trace(lp: StandardFormLP, trace: SolveTrace, catalog: BfsCatalog,
                 qrep: QReport, dual_opt: DualSolution) -> VerificationReport:
    """Replay a finished trace and check every per-iteration guarantee.

    Checks: the recorded chain is internally consistent; the one-step
    optimality gap certificate (L1); the geometric gap contraction (L2); the
    witness-variable product bound and its tracking inequality (L3); the
    entering-column ratio inequality for p-norm traces; exact duality at
    every iterate; and the iteration-count ceilings for the trace's rule.
    All comparisons are exact.
    """
    if trace.outcome.kind is not OutcomeKind.OPTIMAL:
        raise TraceNotOptimal(f"trace ended with {trace.outcome.kind.value}")
    if catalog.lp != lp:
        raise CatalogMismatch("catalog was built from a different instance")
    if trace.instance != lp.name:
        raise CatalogMismatch(
            f"trace is for {trace.instance!r}, not {lp.name!r}")
    if not catalog.nondegenerate:
        raise DegenerateInstance(f"{lp.name} is degenerate")

    p = qrep.p
    records = trace.records
    T = len(records)
    chain = [r.basis_before for r in records] + [trace.outcome.basis]
    sols = [basic_solution(lp, basis) for basis in chain]
    objs = [sol.objective for sol in sols]
    z_star = catalog.z_star
    gaps = [obj - z_star for obj in objs]
    m = lp.m
    gamma = catalog.gamma
    y_star, s_star = dual_opt.y, dual_opt.s

    checks = []

    def add(name, failures):
        checks.append(CheckResult(
            name=name,
            passed=not failures,
            detail="ok" if not failures else failures[0],
        ))

    # chain consistency: swaps, objectives, and decrease identity all line up
    fails = []
    if chain[0] != trace.initial.basis:
        fails.append("initial basis differs from the first record")
    for t, r in enumerate(records):
        if r.basis_before.replace(r.leaving, r.entering) != chain[t + 1]:
            fails.append(f"t={t}: basis exchange does not produce the next basis")
            break
        if r.objective_after != objs[t + 1]:
            fails.append(f"t={t}: recorded objective differs from the recomputed one")
            break
        if objs[t] - objs[t + 1] != r.delta_s * r.step:
            fails.append(f"t={t}: objective decrease is not delta_s * step")
            break
    add("trace_consistency", fails)

    # L1: the Dantzig improvement certifies z* >= obj_t - m * gamma * delta_d
    fails = []
    for t, r in enumerate(records):
        if not z_star >= objs[t] - m * gamma * r.delta_d:
            fails.append(f"t={t}: gap certificate violated")
    add("L1", fails)

    # L2: gap_{t+1} <= (1 - q delta / (m gamma)) gap_t, compared via p-th powers
    fails = []
    delta_const = catalog.delta
    for t in range(T):
        lhs = m * gamma * (gaps[t] - gaps[t + 1])
        rhs = delta_const * gaps[t]
        # need q <= lhs / rhs with q carried as a p-th power
        if lhs < 0:
            fails.append(f"t={t}: gap increased")
            continue
        if p == INFINITY:
            ok = qrep.q_power * rhs <= lhs
        else:
            ok = qrep.q_power * rhs ** p <= lhs ** p
        if not ok:
            fails.append(f"t={t}: contraction factor violated")
    add("L2", fails)

    # L3 witness: some basic variable has x_j * s*_j >= gap / m
    fails = []
    witnesses = []
    for t in range(T):
        products = {j: sols[t].x[j - 1] * s_star[j - 1] for j in chain[t].indices}
        best_j = max(sorted(products), key=lambda j: products[j])
        witnesses.append(best_j)
        if not m * products[best_j] >= gaps[t]:
            fails.append(f"t={t}: no witness variable reaches gap/m")
    add("L3_witness", fails)

    # L3 tracking: the witness shrinks along the rest of the path
    fails = []
    for t in range(T):
        jbar = witnesses[t]
        xt = sols[t].x[jbar - 1]
        for k in range(t + 1, T + 1):
            if not sols[k].x[jbar - 1] * gaps[t] <= m * xt * gaps[k]:
                fails.append(f"t={t},k={k}: witness value above its tracking bound")
                break
    add("L3_tracking", fails)

    # entering-column ratio inequality delta_s ||v_d|| >= delta_d ||v_s||
    if trace.rule.kind is RuleKind.PNORM:
        fails = []
        for t, r in enumerate(records):
            if p == INFINITY:
                ok = r.delta_s * r.norm_d >= r.delta_d * r.norm_s
            else:
                ok = r.delta_s ** p * r.norm_d >= r.delta_d ** p * r.norm_s
            if not ok:
                fails.append(f"t={t}: selection ratio inequality violated")
        add("pnorm_selection", fails)

    # duality: gap identity at every iterate, optimum matches the dual value
    fails = []
    if any(sv < 0 for sv in s_star):
        fails.append("dual slack has a negative entry")
    b_dot_y = sum((bi * yi for bi, yi in zip(lp.b, y_star)), Fraction(0))
    for t in range(T + 1):
        x = sols[t].x
        x_dot_s = sum((xv * sv for xv, sv in zip(x, s_star)), Fraction(0))
        if objs[t] - b_dot_y != x_dot_s:
            fails.append(f"t={t}: duality gap identity broken")
    if objs[T] != b_dot_y:
        fails.append("optimal objective differs from the dual objective")
    if objs[T] != z_star:
        fails.append("trace optimum differs from the enumerated optimum")
    add("duality", fails)

    # iteration-count ceilings for this trace's rule
    bounds = None
    fails = []
    if T > 0:
        bounds = evaluate_bounds(catalog, qrep, lp.m, lp.n, p, objs[0])
        n_minus_m = lp.n - lp.m
        if trace.rule.kind is RuleKind.PNORM:
            limits = [
                ("thm3", _effective(bounds.thm3, 1)),
                ("thm4", _effective(bounds.thm4, n_minus_m)),
                ("thm5", _effective(bounds.thm5, 1)),
                ("thm6", _effective(bounds.thm6, n_minus_m)),
            ]
        else:
            limits = [
                ("km1", _effective(bounds.km1, 1)),
                ("km2", _effective(bounds.km2, n_minus_m)),
            ]
        for name, limit in limits:
            if T > limit:
                fails.append(f"{T} iterations exceed {name} = {limit}")
    add("iteration_bounds", fails)

    return VerificationReport(
        instance=lp.name,
        rule=trace.rule.designator,
        p=p,
        iterations=T,
        checks=tuple(checks),
        bounds=bounds,
    )


# --- report serialization -------------------------------------------------

def _fmt_p(p):
    return "inf" if p == INFINITY else p


def catalog_to_dict(catalog: BfsCatalog, include_entries: bool = True) -> dict:
    doc = {
        "instance": catalog.lp.name,
        "m": catalog.lp.m,
        "n": catalog.lp.n,
        "feasible_bases": catalog.feasible_count,
        "nondegenerate": catalog.nondegenerate,
        "gamma": None if catalog.gamma is None else format_rational(catalog.gamma),
        "delta": None if catalog.delta is None else format_rational(catalog.delta),
        "z_star": format_rational(catalog.z_star),
        "z_second": None if catalog.z_second is None else format_rational(catalog.z_second),
        "gamma_D_prime": None if catalog.gamma_D_prime is None
        else format_rational(catalog.gamma_D_prime),
        "delta_D_prime": None if catalog.delta_D_prime is None
        else format_rational(catalog.delta_D_prime),
        "optimal_basis": list(catalog.optimal_basis.indices),
    }
    if include_entries:
        doc["entries"] = [
            {
                "basis": list(e.basis.indices),
                "objective": format_rational(e.objective),
                "x": [format_rational(v) for v in e.solution.x],
                "degenerate": e.solution.degenerate,
            }
            for e in catalog.entries
        ]
    return doc


def qreport_to_dict(qrep: QReport) -> dict:
    return {
        "p": _fmt_p(qrep.p),
        "q_power": format_rational(qrep.q_power),
        "q_lower_power": format_rational(qrep.q_lower_power),
        "norm_bound_lo": format_rational(qrep.norm_bound_lo),
        "norm_bound_hi": format_rational(qrep.norm_bound_hi),
        "norm_bound_violations": [
            {"basis": list(basis.indices), "variable": var,
             "norm": format_rational(norm)}
            for basis, var, norm in qrep.norm_bound_violations
        ],
        "per_nonbasis": [
            {"basis": list(row.basis.indices), "s": row.s, "d": row.d,
             "q_power": format_rational(row.q_power)}
            for row in qrep.per_nonbasis
        ],
    }


def bounds_to_dict(report: BoundReport) -> dict:
    return {
        "thm3": report.thm3,
        "thm4": report.thm4,
        "thm5": report.thm5,
        "thm6": report.thm6,
        "km1": report.km1,
        "km2": report.km2,
        "km3": report.km3,
        "dmdp_thm7": report.dmdp_thm7,
        "inputs": {
            "m": report.inputs.m,
            "n": report.inputs.n,
            "p": _fmt_p(report.inputs.p),
            "gamma": format_rational(report.inputs.gamma),
            "delta": format_rational(report.inputs.delta),
            "q_power": format_rational(report.inputs.q_power),
            "gap0": format_rational(report.inputs.gap0),
            "gap_second": format_rational(report.inputs.gap_second),
        },
    }


def verification_to_dict(report: VerificationReport) -> dict:
    return {
        "instance": report.instance,
        "rule": report.rule,
        "p": _fmt_p(report.p),
        "iterations": report.iterations,
        "all_passed": report.all_passed,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
        "bounds": None if report.bounds is None else bounds_to_dict(report.bounds),
    }
