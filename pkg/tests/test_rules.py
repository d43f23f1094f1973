from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pnormsimplex import (
    INFINITY,
    UNBOUNDED_RAY,
    Basis,
    Dictionary,
    InvalidP,
    ParseError,
    PivotRule,
    RuleKind,
    column_pnorm,
    dictionary,
    parse_rule,
    select_entering,
    v_column,
)
from oracles import steepest_edge_pick


def make_dict(c_bar, a_cols, b_bar=None):
    """Dictionary with basis {1..m} and the given nonbasic data.

    a_cols lists the A_bar columns; entries may be ints or Fractions.
    """
    m = len(a_cols[0])
    ell = len(c_bar)
    return Dictionary(
        basis=Basis(tuple(range(1, m + 1))),
        nonbasis=tuple(range(m + 1, m + ell + 1)),
        b_bar=tuple(Fraction(x) for x in (b_bar or [1] * m)),
        c_bar=tuple(Fraction(x) for x in c_bar),
        A_bar=tuple(tuple(Fraction(a_cols[k][i]) for k in range(ell))
                    for i in range(m)),
        z0=Fraction(0),
    )


def test_rule_constructors_and_designators():
    assert PivotRule.dantzig().designator == "dantzig"
    assert PivotRule.best_improvement().designator == "best"
    assert PivotRule.pnorm(3).designator == "pnorm:3"
    assert PivotRule.pnorm(INFINITY).designator == "pnorm:inf"
    assert PivotRule.steepest_edge() == PivotRule.pnorm(2)


@pytest.mark.parametrize("bad_p", [0, -1, Fraction(3, 2), 1.5, True])
def test_pnorm_rejects_bad_p(bad_p):
    with pytest.raises(InvalidP):
        PivotRule.pnorm(bad_p)


def test_parse_rule_grammar():
    assert parse_rule("dantzig").kind is RuleKind.DANTZIG
    assert parse_rule("best").kind is RuleKind.BEST_IMPROVEMENT
    assert parse_rule("pnorm:7") == PivotRule.pnorm(7)
    assert parse_rule("pnorm:inf") == PivotRule.pnorm(INFINITY)
    assert parse_rule("steepest") == PivotRule.pnorm(2)


@pytest.mark.parametrize("bad", ["", "pnorm", "pnorm:", "pnorm:0", "pnorm:-2",
                                 "pnorm:2.5", "pnorm:one", "newton"])
def test_parse_rule_rejects(bad):
    with pytest.raises(ParseError):
        parse_rule(bad)


def test_parse_rule_is_case_insensitive():
    assert parse_rule("PNORM:2") == PivotRule.pnorm(2)
    assert parse_rule("Dantzig").kind is RuleKind.DANTZIG


def test_column_pnorm_examples():
    d = make_dict([-1, Fraction(-9, 10)], [(3, 4), (0, 0)])
    assert column_pnorm(d, 1, 2).power == 26
    assert column_pnorm(d, 2, 2).power == 1
    assert column_pnorm(d, 2, 2).value == 1
    assert column_pnorm(d, 1, INFINITY).value == 4
    assert column_pnorm(d, 1, 1).power == 8
    assert column_pnorm(d, 1, 3).power == 92


def test_v_column_stacks_identity():
    d = make_dict([-1, -1], [(3, 4), (0, 0)])
    assert v_column(d, 1) == (-3, -4, 1, 0)
    assert v_column(d, 2) == (0, 0, 0, 1)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.fractions(min_value=-9, max_value=9, max_denominator=7),
                min_size=2, max_size=2),
       st.sampled_from([1, 2, 3, INFINITY]))
def test_column_pnorm_at_least_one(col, p):
    d = make_dict([-1], [tuple(col)])
    norm = column_pnorm(d, 1, p)
    if p == INFINITY:
        assert norm.value == max(1, *(abs(x) for x in col))
    else:
        # power of 1 exactly when the column vanishes (finite p only)
        assert norm.power >= 1
        assert (norm.power == 1) == all(x == 0 for x in col)


def test_select_dantzig_most_negative():
    d = make_dict([-1, Fraction(-9, 10)], [(3, 4), (0, 0)])
    assert select_entering(d, PivotRule.dantzig()) == 1


def test_select_pnorm2_prefers_short_column():
    # -9/10 scaled by norm 1 beats -1 scaled by sqrt(26)
    d = make_dict([-1, Fraction(-9, 10)], [(3, 4), (0, 0)])
    assert select_entering(d, PivotRule.pnorm(2)) == 2


def test_select_none_at_optimum():
    d = make_dict([1, 2], [(3, 4), (0, 0)])
    for rule in [PivotRule.dantzig(), PivotRule.pnorm(1),
                 PivotRule.pnorm(INFINITY), PivotRule.best_improvement()]:
        assert select_entering(d, rule) is None


def test_select_tie_breaks_to_smallest_index():
    d = make_dict([-1, -1], [(2, 5), (2, 5)])
    for rule in [PivotRule.dantzig(), PivotRule.pnorm(1), PivotRule.pnorm(2),
                 PivotRule.pnorm(INFINITY)]:
        assert select_entering(d, rule) == 1


def test_equal_costs_pick_smaller_norm():
    d = make_dict([-1, -1], [(3, 4), (1, 1)])
    assert select_entering(d, PivotRule.pnorm(2)) == 2
    assert select_entering(d, PivotRule.pnorm(INFINITY)) == 2


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                min_size=3, max_size=3),
       st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5),
                min_size=6, max_size=6),
       st.fractions(min_value=Fraction(1, 7), max_value=7, max_denominator=9),
       st.sampled_from([1, 2, 3, INFINITY]))
def test_pnorm_scale_invariance(costs, flat, scale, p):
    cols = [tuple(flat[0:2]), tuple(flat[2:4]), tuple(flat[4:6])]
    d1 = make_dict(costs, cols)
    d2 = make_dict([scale * c for c in costs], cols)
    rule = PivotRule.pnorm(p)
    assert select_entering(d1, rule) == select_entering(d2, rule)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                min_size=3, max_size=3),
       st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5),
                min_size=6, max_size=6))
def test_pnorm2_matches_independent_steepest_edge(costs, flat):
    cols = [tuple(flat[0:2]), tuple(flat[2:4]), tuple(flat[4:6])]
    d = make_dict(costs, cols)
    got = select_entering(d, PivotRule.pnorm(2))
    a_bar_rows = [[cols[k][i] for k in range(3)] for i in range(2)]
    want = steepest_edge_pick(list(d.c_bar), a_bar_rows)
    assert got == want


def test_best_improvement_uses_ratio_steps():
    # column 1 gains 1*1, column 2 gains (9/10)*4: best picks 2, Dantzig 1
    d = make_dict([-1, Fraction(-9, 10)], [(1, 1), (0, Fraction(1, 4))],
                  b_bar=[1, 1])
    assert select_entering(d, PivotRule.dantzig()) == 1
    assert select_entering(d, PivotRule.best_improvement()) == 2


def test_best_improvement_flags_unbounded_ray():
    d = make_dict([-1, -1], [(-1, 0), (1, 1)])
    assert select_entering(d, PivotRule.best_improvement()) is UNBOUNDED_RAY


def test_select_on_real_dictionary(square_lp, slack_basis):
    d = dictionary(square_lp, slack_basis)
    assert select_entering(d, PivotRule.dantzig()) == 1
    assert select_entering(d, PivotRule.pnorm(2)) == 1
    assert select_entering(d, PivotRule.best_improvement()) == 1
