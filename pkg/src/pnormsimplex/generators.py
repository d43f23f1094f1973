"""Instance generators: Klee-Minty cubes, random nondegenerate LPs, discounted MDPs.

All generators are deterministic in their arguments (seeded random.Random,
fixed draw order) and return exact-rational instances together with a known
feasible starting basis.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .analysis import certified_ln_ceil, enumerate_bfs
from .engine import OutcomeKind, solve
from .errors import InvalidDimension, InvalidTheta, ResampleLimitExceeded
from .lp import Basis, StandardFormLP, parse_rational, validate
from .rules import INFINITY, PivotRule, _check_p


class GeneratedInstance(NamedTuple):
    lp: StandardFormLP
    initial_basis: Basis


def klee_minty(m: int) -> GeneratedInstance:
    """Klee-Minty cube in standard form: m constraints, 2m variables.

    max sum_j 2^(m-j) x_j  s.t.  2 sum_{j<i} 2^(i-j) x_j + x_i <= 5^i,
    cast as a minimization with one slack per row; the slack basis is the
    designated start, from which the Dantzig rule walks all 2^m vertices.
    """
    if m < 1:
        raise InvalidDimension(f"need m >= 1, got {m}")
    n = 2 * m
    A = []
    for i in range(1, m + 1):
        row = [Fraction(0)] * n
        for j in range(1, i):
            row[j - 1] = Fraction(2 ** (i - j + 1))
        row[i - 1] = Fraction(1)
        row[m + i - 1] = Fraction(1)
        A.append(row)
    b = [Fraction(5 ** i) for i in range(1, m + 1)]
    c = [Fraction(-(2 ** (m - j))) for j in range(1, m + 1)] + [Fraction(0)] * m
    lp = StandardFormLP(m=m, n=n, A=A, b=b, c=c, name=f"kleeminty-m{m}")
    return GeneratedInstance(lp=lp, initial_basis=Basis(tuple(range(m + 1, n + 1))))


def random_lp(m: int, n: int, seed: int, value_range=(-9, 9),
              resample_limit: int = 1000) -> GeneratedInstance:
    """Random bounded nondegenerate LP with a known feasible basis.

    Draws integer A and c entries from value_range, picks a random basis B,
    draws strictly positive integer basic values x_B, and sets b = A_B x_B so
    that B is feasible by construction.  Rejects and resamples until A has
    full row rank, A_B is nonsingular, exhaustive enumeration confirms
    nondegeneracy, and a Dantzig run confirms boundedness.
    """
    if not 1 <= m < n:
        raise InvalidDimension(f"need n > m >= 1, got m={m}, n={n}")
    lo, hi = int(value_range[0]), int(value_range[1])
    if lo >= hi:
        raise InvalidDimension(f"empty value range {value_range}")
    rng = random.Random(seed)
    name = f"random-m{m}-n{n}-s{seed}"

    for _ in range(resample_limit):
        A = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(m)]
        basis = Basis(tuple(sorted(rng.sample(range(1, n + 1), m))))
        x_b = [Fraction(rng.randint(1, max(hi, 1))) for _ in range(m)]
        b = [
            sum((A[i][j - 1] * xv for j, xv in zip(basis.indices, x_b)), Fraction(0))
            for i in range(m)
        ]
        c = [Fraction(rng.randint(lo, hi)) for _ in range(n)]
        lp = StandardFormLP(m=m, n=n, A=A, b=b, c=c, name=name)

        from .kernels import basic_values, mat_rank
        if mat_rank(A) < m:
            continue
        values = basic_values(A, b, [j - 1 for j in basis.indices])
        if values is None:
            continue
        catalog = enumerate_bfs(lp)
        if not catalog.nondegenerate:
            continue
        trace = solve(lp, basis, PivotRule.dantzig())
        if trace.outcome.kind is not OutcomeKind.OPTIMAL:
            continue
        return GeneratedInstance(lp=validate(lp), initial_basis=basis)

    raise ResampleLimitExceeded(
        f"no valid instance for m={m}, n={n}, seed={seed} "
        f"within {resample_limit} attempts")


@dataclass(frozen=True)
class DmdpInstance:
    """Discounted MDP in its LP form: min c.x s.t. (E - theta P) x = e, x >= 0.

    m states, k actions per state (n = m*k columns).  Column j of E marks the
    state that action j belongs to; column j of P is the exact next-state
    distribution of action j; c holds the immediate costs.
    """

    m: int
    k: int
    theta: Fraction
    P: tuple
    E: tuple
    costs: tuple
    lp: StandardFormLP
    initial_basis: Basis

    def to_extra(self) -> dict:
        from .lp import format_rational
        return {"dmdp": {
            "m": self.m,
            "k": self.k,
            "theta": format_rational(self.theta),
            "P": [[format_rational(x) for x in row] for row in self.P],
            "E": [[int(x) for x in row] for row in self.E],
            "costs": [format_rational(x) for x in self.costs],
        }}


def dmdp_generate(m: int, k: int, theta, seed: int) -> DmdpInstance:
    """Random discounted MDP with exact column-stochastic transitions.

    Each transition column is a normalized vector of integers drawn from
    1..9 (so probabilities are strictly positive rationals summing to one);
    immediate costs are integers in -9..9.  The basis choosing the first
    action of every state is always feasible and is shipped as the start.
    """
    if m < 1 or k < 2:
        raise InvalidDimension(f"need m >= 1 and k >= 2, got m={m}, k={k}")
    theta = parse_rational(theta)
    if not 0 <= theta < 1:
        raise InvalidTheta(f"need 0 <= theta < 1, got {theta}")
    rng = random.Random(seed)
    n = m * k

    P_cols = []
    for _ in range(n):
        weights = [rng.randint(1, 9) for _ in range(m)]
        total = sum(weights)
        P_cols.append([Fraction(w, total) for w in weights])
    costs = [Fraction(rng.randint(-9, 9)) for _ in range(n)]

    P = [[P_cols[j][i] for j in range(n)] for i in range(m)]
    E = [[Fraction(1) if (j // k) == i else Fraction(0) for j in range(n)]
         for i in range(m)]
    A = [[E[i][j] - theta * P[i][j] for j in range(n)] for i in range(m)]
    b = [Fraction(1)] * m

    name = f"dmdp-m{m}-k{k}-t{theta.numerator}d{theta.denominator}-s{seed}"
    lp = StandardFormLP(m=m, n=n, A=A, b=b, c=costs, name=name)
    return DmdpInstance(
        m=m, k=k, theta=theta,
        P=tuple(tuple(row) for row in P),
        E=tuple(tuple(row) for row in E),
        costs=tuple(costs),
        lp=lp,
        initial_basis=Basis(tuple(i * k + 1 for i in range(m))),
    )


def dmdp_bound(m: int, n: int, theta, p) -> int:
    """Iteration ceiling for the p-norm rule on a discounted MDP:

        (n - m) * ceil( m^(3 + 1/p) / (1 - theta)^2 * ln(m^2 / (1 - theta)) )

    with 1/p read as 0 for p = inf.  The ceiling is certified exactly.
    """
    theta = parse_rational(theta)
    if not 0 <= theta < 1:
        raise InvalidTheta(f"need 0 <= theta < 1, got {theta}")
    _check_p(p)
    coeff = Fraction(m) ** 3 / (1 - theta) ** 2
    log_arg = Fraction(m) ** 2 / (1 - theta)
    if p == INFINITY:
        inner = certified_ln_ceil(coeff, Fraction(1), Fraction(0), log_arg)
    else:
        inner = certified_ln_ceil(coeff, Fraction(m), Fraction(1, p), log_arg)
    return (n - m) * inner
