"""Primal simplex engine with per-iteration trace recording.

solve() runs one pivot rule from a feasible basis and records, for every
iteration, the entering/leaving pair, the step length, the rule's improvement
delta_s = -c_bar_s, the Dantzig improvement delta_d = -min_k c_bar_k, and the
p-norms of both the entering column and Dantzig's column, so that lemma and
bound checks can be replayed from the trace alone.  Norms are stored as exact
p-th powers for finite p and as the rational max-norm for p = inf; traces of
rules without their own p record norms at p = 2.

There is deliberately no anti-cycling: a zero-length step aborts the run with
a DegeneratePivot outcome, since every analysis downstream assumes
nondegeneracy.
"""

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import (
    IndexOutOfRange,
    Infeasible,
    InfeasibleInitialBasis,
    ParseError,
)
from .lp import (
    Basis,
    BasicSolution,
    Dictionary,
    StandardFormLP,
    basic_solution,
    dictionary,
    format_rational,
    parse_rational,
)
from .rules import INFINITY, UNBOUNDED_RAY, PivotRule, RuleKind, column_pnorm, parse_rule


class RatioStep(NamedTuple):
    row: int          # 1-based dictionary row of the leaving variable
    step: Fraction    # theta >= 0


def ratio_test(dict_: Dictionary, s: int):
    """Minimum-ratio row for entering column s, or UNBOUNDED_RAY.

    theta = min{ b_bar_i / a_bar_is : a_bar_is > 0 }; ties break toward the
    smallest leaving variable index, which is the smallest row index because
    dictionary rows follow the ascending basis order.
    """
    if not 1 <= s <= dict_.num_cols:
        raise IndexOutOfRange(f"nonbasis column {s} outside 1..{dict_.num_cols}")
    best_row = None
    best_step = None
    for i, (bi, row) in enumerate(zip(dict_.b_bar, dict_.A_bar), start=1):
        a = row[s - 1]
        if a > 0:
            theta = bi / a
            if best_step is None or theta < best_step:
                best_row, best_step = i, theta
    if best_row is None:
        return UNBOUNDED_RAY
    return RatioStep(row=best_row, step=best_step)


class OutcomeKind(Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    ITERATION_LIMIT = "iteration_limit"
    DEGENERATE_PIVOT = "degenerate_pivot"


@dataclass(frozen=True)
class Outcome:
    kind: OutcomeKind
    basis: Optional[Basis] = None       # set for OPTIMAL
    ray_column: Optional[int] = None    # entering variable for UNBOUNDED


@dataclass(frozen=True)
class IterationRecord:
    t: int
    basis_before: Basis
    entering: int
    leaving: int
    step: Fraction
    delta_s: Fraction
    delta_d: Fraction
    norm_s: Fraction
    norm_d: Fraction
    objective_after: Fraction


@dataclass(frozen=True)
class SolveTrace:
    instance: str
    rule: PivotRule
    norm_p: object
    initial: BasicSolution
    records: tuple
    outcome: Outcome

    @property
    def iterations(self) -> int:
        return len(self.records)


def default_max_iters(m: int, n: int) -> int:
    return 2 * math.comb(n, m)


def _norm_value(dict_: Dictionary, k: int, p) -> Fraction:
    norm = column_pnorm(dict_, k, p)
    return norm.value if p == INFINITY else norm.power


def solve(lp: StandardFormLP, initial: Basis, rule: PivotRule,
          max_iters: Optional[int] = None) -> SolveTrace:
    """Run the simplex method from a feasible basis under one pivot rule."""
    from .rules import select_entering

    if max_iters is None:
        max_iters = default_max_iters(lp.m, lp.n)
    norm_p = rule.p if rule.kind is RuleKind.PNORM else 2

    start = basic_solution(lp, initial)
    if not start.feasible:
        raise InfeasibleInitialBasis(
            f"basis {initial.indices} has negative basic values")

    basis = initial
    records = []
    t = 0
    while True:
        dict_ = dictionary(lp, basis)
        c_bar = dict_.c_bar
        if all(cv >= 0 for cv in c_bar):
            outcome = Outcome(OutcomeKind.OPTIMAL, basis=basis)
            break
        if t >= max_iters:
            outcome = Outcome(OutcomeKind.ITERATION_LIMIT)
            break

        d_col = min(range(1, dict_.num_cols + 1), key=lambda k: c_bar[k - 1])
        delta_d = -c_bar[d_col - 1]

        sel = select_entering(dict_, rule, ratio_test_fn=ratio_test)
        if sel is UNBOUNDED_RAY:
            ray_var = next(
                dict_.nonbasis[k - 1]
                for k, cv in enumerate(c_bar, start=1)
                if cv < 0 and ratio_test(dict_, k) is UNBOUNDED_RAY
            )
            outcome = Outcome(OutcomeKind.UNBOUNDED, ray_column=ray_var)
            break
        s_col = sel

        rt = ratio_test(dict_, s_col)
        if rt is UNBOUNDED_RAY:
            outcome = Outcome(
                OutcomeKind.UNBOUNDED, ray_column=dict_.nonbasis[s_col - 1])
            break
        if rt.step == 0:
            outcome = Outcome(OutcomeKind.DEGENERATE_PIVOT)
            break

        entering = dict_.nonbasis[s_col - 1]
        leaving = basis.indices[rt.row - 1]
        delta_s = -c_bar[s_col - 1]
        records.append(IterationRecord(
            t=t,
            basis_before=basis,
            entering=entering,
            leaving=leaving,
            step=rt.step,
            delta_s=delta_s,
            delta_d=delta_d,
            norm_s=_norm_value(dict_, s_col, norm_p),
            norm_d=_norm_value(dict_, d_col, norm_p),
            objective_after=dict_.z0 - delta_s * rt.step,
        ))
        basis = basis.replace(leaving, entering)
        t += 1

    return SolveTrace(
        instance=lp.name,
        rule=rule,
        norm_p=norm_p,
        initial=start,
        records=tuple(records),
        outcome=outcome,
    )


# --- phase one -------------------------------------------------------------

def _identity_basis(A, b, n: int, m: int) -> Optional[Basis]:
    """Distinct unit columns covering every row, if the instance embeds them."""
    chosen = []
    used = set()
    for i in range(m):
        found = None
        for j in range(n):
            if j in used:
                continue
            col_ok = A[i][j] == 1 and all(
                A[r][j] == 0 for r in range(m) if r != i)
            if col_ok:
                found = j
                break
        if found is None:
            return None
        used.add(found)
        chosen.append(found + 1)
    return Basis(tuple(chosen))


def phase_one(lp: StandardFormLP) -> Basis:
    """Find a feasible basis, or raise Infeasible.

    Flips constraint signs so b >= 0, short-circuits when the instance embeds
    an identity submatrix, and otherwise minimizes the sum of auxiliary
    artificial variables starting from the artificial basis.  The auxiliary
    optimum is typically degenerate, so this loop tolerates zero-length steps
    and switches to smallest-index entering selection after a stall to
    guarantee termination; lingering zero-level artificials are pivoted out
    at the end.
    """
    A = [list(row) for row in lp.A]
    b = list(lp.b)
    for i in range(lp.m):
        if b[i] < 0:
            b[i] = -b[i]
            A[i] = [-x for x in A[i]]

    embedded = _identity_basis(A, b, lp.n, lp.m)
    if embedded is not None:
        return embedded

    aux_rows = [
        row + [Fraction(1) if r == i else Fraction(0) for r in range(lp.m)]
        for i, row in enumerate(A)
    ]
    aux = StandardFormLP(
        m=lp.m,
        n=lp.n + lp.m,
        A=aux_rows,
        b=b,
        c=[Fraction(0)] * lp.n + [Fraction(1)] * lp.m,
        name=f"{lp.name}-aux",
    )
    basis = Basis(tuple(range(lp.n + 1, lp.n + lp.m + 1)))

    stall = 0
    stall_limit = 3 * (lp.n + lp.m)
    use_bland = False
    guard = min(10 ** 6, max(1000, 4 * math.comb(aux.n, aux.m)))
    for _ in range(guard):
        dict_ = dictionary(aux, basis)
        negatives = [k for k, cv in enumerate(dict_.c_bar, start=1) if cv < 0]
        if not negatives:
            break
        if use_bland:
            s_col = negatives[0]
        else:
            s_col = min(negatives, key=lambda k: (dict_.c_bar[k - 1], k))
        rt = ratio_test(dict_, s_col)
        if rt is UNBOUNDED_RAY:
            raise RuntimeError("auxiliary problem cannot be unbounded")
        if rt.step == 0:
            stall += 1
            if stall > stall_limit:
                use_bland = True
        else:
            stall = 0
        basis = basis.replace(
            basis.indices[rt.row - 1], dict_.nonbasis[s_col - 1])
    else:
        raise RuntimeError("phase one failed to terminate within its guard")

    dict_ = dictionary(aux, basis)
    if dict_.z0 != 0:
        raise Infeasible(f"auxiliary optimum {dict_.z0} > 0")

    # pivot lingering zero-level artificials out on any nonzero row entry
    while True:
        artificial = next((j for j in basis.indices if j > lp.n), None)
        if artificial is None:
            break
        dict_ = dictionary(aux, basis)
        row = dict_.basis.indices.index(artificial)
        swap = next(
            (var for k, var in enumerate(dict_.nonbasis)
             if var <= lp.n and dict_.A_bar[row][k] != 0),
            None,
        )
        if swap is None:
            raise RuntimeError("cannot drive out artificial from a full-rank system")
        basis = basis.replace(artificial, swap)

    return Basis(basis.indices)


# --- trace serialization -----------------------------------------------

def _norm_p_out(p):
    return "inf" if p == INFINITY else p


def _norm_p_in(v):
    if v == "inf":
        return INFINITY
    return int(v)


def trace_to_dict(trace: SolveTrace) -> dict:
    out = {
        "instance": trace.instance,
        "rule": trace.rule.designator,
        "norm_p": _norm_p_out(trace.norm_p),
        "initial": {
            "basis": list(trace.initial.basis.indices),
            "x": [format_rational(v) for v in trace.initial.x],
            "objective": format_rational(trace.initial.objective),
        },
        "records": [
            {
                "t": r.t,
                "basis_before": list(r.basis_before.indices),
                "entering": r.entering,
                "leaving": r.leaving,
                "step": format_rational(r.step),
                "delta_s": format_rational(r.delta_s),
                "delta_d": format_rational(r.delta_d),
                "norm_s": format_rational(r.norm_s),
                "norm_d": format_rational(r.norm_d),
                "objective_after": format_rational(r.objective_after),
            }
            for r in trace.records
        ],
        "outcome": {"kind": trace.outcome.kind.value},
    }
    if trace.outcome.basis is not None:
        out["outcome"]["basis"] = list(trace.outcome.basis.indices)
    if trace.outcome.ray_column is not None:
        out["outcome"]["ray_column"] = trace.outcome.ray_column
    return out


def trace_from_dict(doc: dict) -> SolveTrace:
    try:
        rule = parse_rule(doc["rule"])
        init = doc["initial"]
        basis = Basis(tuple(init["basis"]))
        x = tuple(parse_rational(v) for v in init["x"])
        basic = {j: x[j - 1] for j in basis.indices}
        initial = BasicSolution(
            x=x,
            basis=basis,
            objective=parse_rational(init["objective"]),
            feasible=all(v >= 0 for v in basic.values()),
            degenerate=any(v == 0 for v in basic.values()),
        )
        records = tuple(
            IterationRecord(
                t=int(r["t"]),
                basis_before=Basis(tuple(r["basis_before"])),
                entering=int(r["entering"]),
                leaving=int(r["leaving"]),
                step=parse_rational(r["step"]),
                delta_s=parse_rational(r["delta_s"]),
                delta_d=parse_rational(r["delta_d"]),
                norm_s=parse_rational(r["norm_s"]),
                norm_d=parse_rational(r["norm_d"]),
                objective_after=parse_rational(r["objective_after"]),
            )
            for r in doc["records"]
        )
        okind = OutcomeKind(doc["outcome"]["kind"])
        outcome = Outcome(
            kind=okind,
            basis=Basis(tuple(doc["outcome"]["basis"]))
            if "basis" in doc["outcome"] else None,
            ray_column=doc["outcome"].get("ray_column"),
        )
        return SolveTrace(
            instance=str(doc.get("instance", "lp")),
            rule=rule,
            norm_p=_norm_p_in(doc["norm_p"]),
            initial=initial,
            records=records,
            outcome=outcome,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed trace: {exc}") from exc


def save_trace(trace: SolveTrace, path) -> None:
    with open(path, "w") as fh:
        json.dump(trace_to_dict(trace), fh, indent=2)
        fh.write("\n")


def load_trace(path) -> SolveTrace:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return trace_from_dict(doc)
