"""Acceptance gate: every advertised guarantee, exercised end to end.

Each test covers one numbered criterion and prints a single PASS/FAIL line
straight to the terminal (bypassing capture) so a full run reads as a
checklist.  All comparisons are exact unless a criterion says otherwise.

The shared corpus: 110 random instances (m in 2..5, n in m+2..10, five seeds
each), Klee-Minty cubes m in 2..8, and 24 discounted MDPs.  Catalogs, traces,
and q reports are computed once at module setup and reused across criteria.
"""

import itertools
from fractions import Fraction

import pytest

from pnormsimplex import (
    INFINITY,
    OutcomeKind,
    PivotRule,
    cli,
    compute_q,
    dictionary,
    dmdp_bound,
    dmdp_generate,
    dual_solution,
    enumerate_bfs,
    evaluate_bounds,
    klee_minty,
    random_lp,
    solve,
    verify_trace,
)
from oracles import steepest_edge_pick

P_VALUES = (1, 2, 3, INFINITY)
PNORM_RULES = tuple(PivotRule.pnorm(p) for p in P_VALUES)
COMPARISON_RULES = (PivotRule.dantzig(), PivotRule.best_improvement())
SEEDS = (1, 2, 3, 4, 5)


def announce(capsys, criterion, passed, detail):
    with capsys.disabled():
        print(f"\nacceptance {criterion}: {'PASS' if passed else 'FAIL'} - {detail}")


class Case:
    """One corpus instance with everything the criteria need, computed once."""

    def __init__(self, lp, basis):
        self.lp = lp
        self.basis = basis
        self.catalog = enumerate_bfs(lp)
        self.dual = dual_solution(lp, self.catalog.optimal_basis)
        self.q = {p: compute_q(lp, self.catalog, p) for p in P_VALUES}
        self.traces = {}
        for rule in PNORM_RULES + COMPARISON_RULES:
            self.traces[rule] = solve(lp, basis, rule)
        self.reports = {}
        for rule, trace in self.traces.items():
            p = rule.p if rule.kind.value == "pnorm" else 2
            self.reports[rule] = verify_trace(
                lp, trace, self.catalog, self.q[p], self.dual)


@pytest.fixture(scope="module")
def corpus():
    cases = []
    for m in (2, 3, 4, 5):
        for n in range(m + 2, 11):
            for seed in SEEDS:
                gen = random_lp(m, n, seed)
                cases.append(Case(gen.lp, gen.initial_basis))
    assert len(cases) >= 100
    return cases


def collect_violations(corpus, predicate):
    out = []
    for case in corpus:
        out.extend(predicate(case))
    return out


def test_criterion_01_pnorm_bounds(corpus, capsys):
    """PNorm(p) iterations within thm3/thm4/thm5/thm6 on the whole corpus."""
    failures = []
    checked = 0
    for case in corpus:
        for rule in PNORM_RULES:
            report = case.reports[rule]
            check = report.check("iteration_bounds")
            checked += 1
            if not check.passed:
                failures.append(f"{case.lp.name} {rule.designator}: {check.detail}")
    announce(capsys, 1,
             not failures,
             f"{len(corpus)} instances x {len(PNORM_RULES)} p values, "
             f"{checked} bound checks, {len(failures)} violations")
    assert not failures


def test_criterion_02_lemma_suite(corpus, capsys):
    """L1, L2, and both L3 inequalities hold on every iteration of every trace."""
    failures = []
    iterations = 0
    for case in corpus:
        for rule, report in case.reports.items():
            iterations += report.iterations
            for name in ("L1", "L2", "L3_witness", "L3_tracking"):
                check = report.check(name)
                if not check.passed:
                    failures.append(
                        f"{case.lp.name} {rule.designator} {name}: {check.detail}")
    announce(capsys, 2,
             not failures,
             f"lemma checks over {iterations} total iterations, "
             f"{len(failures)} violations")
    assert not failures


def test_criterion_03_q_machinery(corpus, capsys):
    """q^p >= delta^p/(m gamma^p) and the norm-band inequality everywhere."""
    failures = []
    bases_checked = 0
    for case in corpus:
        for p in P_VALUES:
            q = case.q[p]
            bases_checked += len(q.per_nonbasis)
            if q.q_power < q.q_lower_power:
                failures.append(f"{case.lp.name} p={p}: q below its lower bound")
            if q.norm_bound_violations:
                failures.append(
                    f"{case.lp.name} p={p}: {len(q.norm_bound_violations)} "
                    f"columns outside the norm band")
    announce(capsys, 3,
             not failures,
             f"{bases_checked} basis/p combinations, {len(failures)} violations")
    assert not failures


def test_criterion_04_steepest_edge_equivalence(corpus, capsys):
    """PNorm(2) agrees with the independent steepest-edge comparator."""
    from pnormsimplex import select_entering

    mismatches = []
    dictionaries = 0
    for case in corpus:
        dicts = [entry.dictionary for entry in case.catalog.entries]
        trace = case.traces[PivotRule.pnorm(2)]
        chain = [r.basis_before for r in trace.records] + [trace.outcome.basis]
        dicts.extend(dictionary(case.lp, basis) for basis in chain)
        for d in dicts:
            dictionaries += 1
            ours = select_entering(d, PivotRule.pnorm(2))
            rows = [list(row) for row in d.A_bar]
            oracle = steepest_edge_pick(list(d.c_bar), rows)
            if ours != oracle:
                mismatches.append(
                    f"{case.lp.name} basis {d.basis.indices}: {ours} vs {oracle}")
    announce(capsys, 4,
             not mismatches,
             f"{dictionaries} dictionaries compared, {len(mismatches)} mismatches")
    assert not mismatches


def test_criterion_05_oracle_equivalence(corpus, capsys):
    """Every optimal trace ends exactly at the enumerated minimum objective."""
    failures = []
    for case in corpus:
        for rule, trace in case.traces.items():
            if trace.outcome.kind is not OutcomeKind.OPTIMAL:
                failures.append(f"{case.lp.name} {rule.designator}: not optimal")
                continue
            final = (trace.records[-1].objective_after if trace.records
                     else trace.initial.objective)
            if final != case.catalog.z_star:
                failures.append(
                    f"{case.lp.name} {rule.designator}: {final} != z*")
    announce(capsys, 5,
             not failures,
             f"{len(corpus) * len(PNORM_RULES + COMPARISON_RULES)} solves "
             f"against the enumeration oracle, {len(failures)} mismatches")
    assert not failures


def test_criterion_06_klee_minty(capsys):
    """Dantzig walks 2^m - 1 vertices; PNorm(2) stays within its bounds."""
    failures = []
    for m in range(2, 9):
        gen = klee_minty(m)
        dz = solve(gen.lp, gen.initial_basis, PivotRule.dantzig())
        if dz.iterations != 2 ** m - 1:
            failures.append(f"m={m}: Dantzig took {dz.iterations} iterations")
        catalog = enumerate_bfs(gen.lp)
        q = compute_q(gen.lp, catalog, 2)
        pn = solve(gen.lp, gen.initial_basis, PivotRule.pnorm(2))
        report = verify_trace(gen.lp, pn, catalog, q,
                              dual_solution(gen.lp, catalog.optimal_basis))
        check = report.check("iteration_bounds")
        if not check.passed:
            failures.append(f"m={m}: {check.detail}")
    announce(capsys, 6,
             not failures,
             f"m=2..8, Dantzig exactly 2^m-1 and PNorm(2) within bounds, "
             f"{len(failures)} violations")
    assert not failures


def test_criterion_07_comparison_rule_bounds(corpus, capsys):
    """Dantzig and best-improvement iteration counts within km1 and km2."""
    failures = []
    for case in corpus:
        for rule in COMPARISON_RULES:
            check = case.reports[rule].check("iteration_bounds")
            if not check.passed:
                failures.append(
                    f"{case.lp.name} {rule.designator}: {check.detail}")
    announce(capsys, 7,
             not failures,
             f"{len(corpus) * len(COMPARISON_RULES)} km-bound checks, "
             f"{len(failures)} violations")
    assert not failures


def test_criterion_08_dmdp(capsys):
    """Ye's value range on every BFS, and PNorm within the discounted bound."""
    failures = []
    instances = 0
    for m, k, theta in itertools.product(
            range(1, 7), (2, 3), (Fraction(1, 2), Fraction(9, 10))):
        inst = dmdp_generate(m, k, theta, seed=1)
        instances += 1
        hi = Fraction(m, 1) / (1 - theta)
        catalog = enumerate_bfs(inst.lp)
        for entry in catalog.entries:
            for j in entry.basis.indices:
                v = entry.solution.x[j - 1]
                if not 1 <= v <= hi:
                    failures.append(
                        f"{inst.lp.name}: basic value {v} outside [1, {hi}]")
        for p in (2, INFINITY):
            trace = solve(inst.lp, inst.initial_basis, PivotRule.pnorm(p))
            if trace.outcome.kind is not OutcomeKind.OPTIMAL:
                failures.append(f"{inst.lp.name} p={p}: not optimal")
                continue
            limit = dmdp_bound(m, inst.lp.n, theta, p)
            if trace.iterations > limit:
                failures.append(
                    f"{inst.lp.name} p={p}: {trace.iterations} > {limit}")
    announce(capsys, 8,
             not failures,
             f"{instances} discounted MDPs (m 1..6, k 2..3, theta 1/2 and 9/10), "
             f"{len(failures)} violations")
    assert not failures


def test_criterion_09_duality(corpus, capsys):
    """The duality gap identity at every iterate and equality at the optimum."""
    failures = []
    iterates = 0
    for case in corpus:
        for rule, report in case.reports.items():
            iterates += report.iterations + 1
            check = report.check("duality")
            if not check.passed:
                failures.append(
                    f"{case.lp.name} {rule.designator}: {check.detail}")
    announce(capsys, 9,
             not failures,
             f"duality identities at {iterates} iterates, {len(failures)} violations")
    assert not failures


def test_criterion_10_experiment_determinism(tmp_path, capsys):
    """Rerunning an experiment is byte-identical apart from the timestamp."""
    import json

    config = {
        "instances": [
            {"type": "kleeminty", "m": 3},
            {"type": "random", "m": 3, "n": 6, "seeds": [1, 2, 3]},
            {"type": "dmdp", "m": 2, "k": 2, "theta": "9/10", "seeds": [1]},
        ],
        "rules": ["dantzig", "best", "pnorm:1", "pnorm:2", "pnorm:3", "pnorm:inf"],
        "analysis_p": 2,
        "output": str(tmp_path / "results.csv"),
    }
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(config))

    assert cli.main(["experiment", str(cfg_path)]) == 0
    first = (tmp_path / "results.csv").read_text()
    assert cli.main(["experiment", str(cfg_path)]) == 0
    second = (tmp_path / "results.csv").read_text()

    def strip_timestamp(text):
        return [line.rsplit(",", 1)[0] for line in text.splitlines()]

    same = strip_timestamp(first) == strip_timestamp(second)
    rows = len(first.splitlines()) - 1
    announce(capsys, 10,
             same,
             f"{rows} experiment rows byte-identical modulo timestamp")
    assert same
    capsys.readouterr()