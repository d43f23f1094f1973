"""Entering-column selection rules.

Three rules over a dictionary's reduced costs c_bar and columns:

* Dantzig: most negative reduced cost.
* Best improvement: largest objective decrease -c_bar_k * theta_k, where
  theta_k comes from the ratio test.
* p-norm: minimize c_bar_k / ||v_k||_p where v_k stacks -A_bar column k on
  top of the k-th nonbasis unit vector.  p = 2 is classical steepest edge.

p is restricted to positive integers or infinity so that every comparison
stays rational: for two candidates with negative reduced costs,
c_j/||v_j|| <= c_k/||v_k||  iff  |c_j|^p ||v_k||^p >= |c_k|^p ||v_j||^p,
and for p = inf the max-norm itself is rational.  Ties break toward the
smallest nonbasis position, i.e. the smallest variable index.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import IndexOutOfRange, InvalidP, ParseError
from .lp import Dictionary

INFINITY = math.inf


class _UnboundedRay:
    """Marker for an improving column with no blocking row."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNBOUNDED_RAY"


UNBOUNDED_RAY = _UnboundedRay()


class RuleKind(Enum):
    DANTZIG = "dantzig"
    BEST_IMPROVEMENT = "best"
    PNORM = "pnorm"


def _check_p(p) -> None:
    if p == INFINITY:
        return
    if isinstance(p, bool) or not isinstance(p, int) or p < 1:
        raise InvalidP(f"p must be a positive integer or infinity, got {p!r}")


@dataclass(frozen=True)
class PivotRule:
    """A pivot rule designator; p is set only for the p-norm family."""

    kind: RuleKind
    p: object = None

    def __post_init__(self):
        if self.kind is RuleKind.PNORM:
            _check_p(self.p)
        elif self.p is not None:
            raise InvalidP(f"rule {self.kind.value} takes no p")

    @classmethod
    def dantzig(cls) -> "PivotRule":
        return cls(RuleKind.DANTZIG)

    @classmethod
    def best_improvement(cls) -> "PivotRule":
        return cls(RuleKind.BEST_IMPROVEMENT)

    @classmethod
    def pnorm(cls, p) -> "PivotRule":
        return cls(RuleKind.PNORM, p)

    @classmethod
    def steepest_edge(cls) -> "PivotRule":
        return cls(RuleKind.PNORM, 2)

    @property
    def designator(self) -> str:
        if self.kind is RuleKind.PNORM:
            return "pnorm:inf" if self.p == INFINITY else f"pnorm:{self.p}"
        return self.kind.value


def parse_rule(text: str) -> PivotRule:
    """Parse "dantzig" | "best" | "pnorm:<posint>" | "pnorm:inf" | "steepest"."""
    t = text.strip().lower()
    if t == "dantzig":
        return PivotRule.dantzig()
    if t == "best":
        return PivotRule.best_improvement()
    if t == "steepest":
        return PivotRule.steepest_edge()
    if t.startswith("pnorm:"):
        arg = t[len("pnorm:"):]
        if arg == "inf":
            return PivotRule.pnorm(INFINITY)
        try:
            p = int(arg)
        except ValueError:
            raise ParseError(f"bad p in rule {text!r}") from None
        try:
            return PivotRule.pnorm(p)
        except InvalidP as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown rule designator {text!r}")


def _nth_root_exact(value: Fraction, p: int) -> Optional[Fraction]:
    """Exact p-th root of a nonnegative rational, or None when irrational."""
    num, den = value.numerator, value.denominator
    rn = _int_nth_root(num, p)
    if rn is None:
        return None
    rd = _int_nth_root(den, p)
    if rd is None:
        return None
    return Fraction(rn, rd)


def _int_nth_root(x: int, p: int) -> Optional[int]:
    if x < 2:
        return x
    if p == 1:
        return x
    if p == 2:
        r = math.isqrt(x)
        return r if r * r == x else None
    # Newton iteration on integers for the floor root, then verify
    r = 1 << ((x.bit_length() + p - 1) // p)
    while True:
        nxt = ((p - 1) * r + x // r ** (p - 1)) // p
        if nxt >= r:
            break
        r = nxt
    return r if r ** p == x else None


@dataclass(frozen=True)
class ColumnNorm:
    """p-norm of a dictionary edge column.

    power holds the exact p-th power for finite p (None for p = inf); value
    holds the exact norm itself whenever it is rational (always for p = inf
    and p = 1, otherwise only when the root happens to be exact).
    """

    p: object
    power: Optional[Fraction]
    value: Optional[Fraction]

    @property
    def approx(self) -> float:
        if self.value is not None:
            return float(self.value)
        return float(self.power) ** (1.0 / self.p)


def v_column(dict_: Dictionary, k: int) -> tuple:
    """Edge column k as a stacked vector: -A_bar[:, k] over the unit e_k."""
    ell = dict_.num_cols
    if not 1 <= k <= ell:
        raise IndexOutOfRange(f"nonbasis column {k} outside 1..{ell}")
    unit = [Fraction(0)] * ell
    unit[k - 1] = Fraction(1)
    return tuple(-row[k - 1] for row in dict_.A_bar) + tuple(unit)


def column_pnorm(dict_: Dictionary, k: int, p) -> ColumnNorm:
    """p-norm data of edge column k; exact power for finite p, max for inf."""
    _check_p(p)
    ell = dict_.num_cols
    if not 1 <= k <= ell:
        raise IndexOutOfRange(f"nonbasis column {k} outside 1..{ell}")
    col = [row[k - 1] for row in dict_.A_bar]
    if p == INFINITY:
        value = max(Fraction(1), max((abs(a) for a in col), default=Fraction(0)))
        return ColumnNorm(p=p, power=None, value=value)
    power = Fraction(1) + sum((abs(a) ** p for a in col), Fraction(0))
    return ColumnNorm(p=p, power=power, value=_nth_root_exact(power, p))


def _norm_key(dict_: Dictionary, k: int, p) -> Fraction:
    """Comparison key: the p-th power for finite p, the max-norm for inf."""
    norm = column_pnorm(dict_, k, p)
    return norm.value if p == INFINITY else norm.power


def _ratio_strictly_better(cost_new, key_new, cost_old, key_old, p) -> bool:
    """Is cost_new/||v_new|| strictly below cost_old/||v_old||? (both costs < 0)"""
    if p == INFINITY:
        return (-cost_new) * key_old > (-cost_old) * key_new
    return (-cost_new) ** p * key_old > (-cost_old) ** p * key_new


def select_entering(dict_: Dictionary, rule: PivotRule, ratio_test_fn=None):
    """Entering nonbasis position (1-based) under rule, or None at optimality.

    Best improvement consults the ratio test for each candidate column and
    returns UNBOUNDED_RAY as soon as an improving column has no blocking row.
    ratio_test_fn defaults to the engine's ratio test.
    """
    c_bar = dict_.c_bar
    if all(cv >= 0 for cv in c_bar):
        return None

    if rule.kind is RuleKind.DANTZIG:
        best = None
        for k, cv in enumerate(c_bar, start=1):
            if best is None or cv < c_bar[best - 1]:
                best = k
        return best

    if rule.kind is RuleKind.BEST_IMPROVEMENT:
        if ratio_test_fn is None:
            from .engine import ratio_test as ratio_test_fn
        best = None
        best_gain = None
        for k, cv in enumerate(c_bar, start=1):
            if cv >= 0:
                continue
            step = ratio_test_fn(dict_, k)
            if step is UNBOUNDED_RAY:
                return UNBOUNDED_RAY
            gain = -cv * step.step
            if best is None or gain > best_gain:
                best, best_gain = k, gain
        return best

    # p-norm family
    p = rule.p
    best = None
    best_cost = best_key = None
    for k, cv in enumerate(c_bar, start=1):
        if cv >= 0:
            continue
        key = _norm_key(dict_, k, p)
        if best is None or _ratio_strictly_better(cv, key, best_cost, best_key, p):
            best, best_cost, best_key = k, cv, key
    return best
