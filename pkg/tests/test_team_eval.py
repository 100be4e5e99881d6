"""Team-semantics evaluation: pinned verdicts, laws, and the full-cover
comparison against the independent oracle in helpers.py."""
import pytest

from helpers import oracle_satisfies
from deplog.budget import Budget
from deplog.errors import BudgetExceededError, EvalError
from deplog.harness import corpus_item
from deplog.structures import (
    Structure, Team, enumerate_structures, enumerate_teams,
)
from deplog.syntax import Signature, free_vars, parse_formula
from deplog.team_eval import satisfies, sentence_truth

SIG0 = Signature({}, {}, frozenset())
SIG_PE = Signature({"P": 1, "E": 2}, {}, frozenset())


def bare(size):
    return Structure(SIG0, size, {}, {}, {})


def pe(size, P=(), E=()):
    return Structure(SIG_PE, size, {"P": frozenset(P), "E": frozenset(E)}, {}, {})


def d(text, sig=SIG0):
    return parse_formula(text, sig)


# ---------------------------------------------------------------------------
# pinned verdicts
# ---------------------------------------------------------------------------

def test_empty_team_satisfies_everything():
    m = pe(2)
    for text in ["P(x)", "~P(x)", "=(x,y)", "~=(x,y)", "false",
                 "exists z. (E(x,z) | =(y,z))"]:
        f = d(text, SIG_PE)
        team = Team.empty(tuple(sorted(free_vars(f))))
        assert satisfies(m, team, f)


def test_empty_dep_atom_universally_true():
    m = bare(2)
    for team in enumerate_teams(("x",), 2):
        assert satisfies(m, team, d("=()"))


def test_dep_atom_violation():
    # equal x, unequal y
    m = bare(2)
    team = Team.of(("x", "y"), [(0, 0), (0, 1)])
    assert not satisfies(m, team, d("=(x,y)"))


def test_negated_dep_atom_only_empty_team():
    m = bare(2)
    assert satisfies(m, Team.empty(("x",)), d("~=(x)"))
    assert not satisfies(m, Team.of(("x",), [(0,)]), d("~=(x)"))


def test_phi1_three_row_team():
    # frozen: the split {rows 1,3} / {row 2} works
    m = bare(2)
    phi1 = corpus_item("phi1").formula()
    team = Team.of(("x", "y", "u", "v"),
                   [(0, 0, 0, 0), (0, 1, 1, 1), (1, 0, 1, 0)])
    expected = True
    assert oracle_satisfies(m, team.vars, team.rows, phi1) == expected
    assert satisfies(m, team, phi1) == expected


def test_phi1_failing_team():
    # frozen: x determines neither y-branch nor u-branch under any split
    m = bare(2)
    phi1 = corpus_item("phi1").formula()
    team = Team.of(("x", "y", "u", "v"),
                   [(0, 0, 0, 0), (0, 1, 0, 1), (0, 0, 0, 1), (0, 1, 0, 0)])
    expected = False
    assert oracle_satisfies(m, team.vars, team.rows, phi1) == expected
    assert satisfies(m, team, phi1) == expected


def test_constant_choice_sentence_sizes():
    f = d("forall x. exists y. (=(y) & y = x)")
    assert sentence_truth(bare(1), f) is True
    assert sentence_truth(bare(2), f) is False


def test_henkin_variant_sentence():
    # frozen: all-zero choice functions witness x1 = x3
    f = d("forall x0. exists x1. forall x2. exists x3. (=(x2,x3) & x1 = x3)")
    assert sentence_truth(bare(2), f) is True


def test_spine_on_cycle_and_on_sink_free_graph():
    spine = corpus_item("spine").formula()
    cycle = pe(2, E=[(0, 1), (1, 0)])
    no_out = pe(2, E=[(0, 1)])  # node 1 has no outgoing edge
    assert sentence_truth(cycle, spine) is True
    assert sentence_truth(no_out, spine) is False


def test_disjunction_needs_split_not_both():
    # each row can pick a different disjunct
    m = pe(2, P=[(0,)], E=[(1, 1)])
    f = d("P(x) | E(x,x)", SIG_PE)
    team = Team.of(("x",), [(0,), (1,)])
    assert satisfies(m, team, f)
    assert not satisfies(m, team, d("P(x)", SIG_PE))
    assert not satisfies(m, team, d("E(x,x)", SIG_PE))


def test_requantification_overwrites():
    f = d("forall x. (P(x) | (exists x. P(x)))", SIG_PE)
    assert sentence_truth(pe(2, P=[(0,)]), f) is True
    assert sentence_truth(pe(2, P=[]), f) is False


# ---------------------------------------------------------------------------
# laws on a small grid
# ---------------------------------------------------------------------------

GRID_FORMULAS = [
    "=(x,y)", "~=(x)", "P(x) | E(x,y)", "=(x,y) | =(y,x)",
    "P(x) & =(x,y)", "exists z. (E(x,z) & =(z,y))",
    "forall z. (E(x,z) | =(z))", "=() | P(y)",
    "exists z. forall w. (E(z,w) | =(w,x))",
]


def grid_structures():
    return [pe(1), pe(1, P=[(0,)], E=[(0, 0)]),
            pe(2, P=[(0,)], E=[(0, 1), (1, 0)]),
            pe(2, P=[(0,), (1,)], E=[(1, 1)]),
            pe(2, E=[(0, 0), (0, 1)])]


def test_downward_closure_on_grid():
    import itertools
    for m in grid_structures():
        for text in GRID_FORMULAS:
            f = d(text, SIG_PE)
            fv = tuple(sorted(free_vars(f)))
            for team in enumerate_teams(fv, m.size, max_rows=3):
                if not satisfies(m, team, f):
                    continue
                rows = sorted(team.rows)
                for k in range(len(rows)):
                    for sub in itertools.combinations(rows, k):
                        assert satisfies(m, Team(fv, frozenset(sub)), f), \
                            (text, rows, sub)


def test_locality_on_grid():
    for m in grid_structures():
        for text in GRID_FORMULAS:
            f = d(text, SIG_PE)
            fv = tuple(sorted(free_vars(f)))
            big = tuple(sorted(set(fv) | {"x", "pad"}))
            for team in enumerate_teams(big, m.size, max_rows=3):
                assert (satisfies(m, team, f)
                        == satisfies(m, team.restrict(fv), f)), (text, team)


def test_flatness_for_dependence_free():
    flat_formulas = ["P(x) | E(x,y)", "exists z. (E(x,z) & ~P(z))",
                     "forall z. (E(x,z) | z = y)", "~x = y & P(y)"]
    for m in grid_structures():
        for text in flat_formulas:
            f = d(text, SIG_PE)
            fv = tuple(sorted(free_vars(f)))
            for team in enumerate_teams(fv, m.size, max_rows=3):
                whole = satisfies(m, team, f)
                rowwise = all(satisfies(m, Team(fv, frozenset({r})), f)
                              for r in team.rows)
                assert whole == rowwise, (text, team)


def test_full_cover_oracle_agreement():
    for m in grid_structures():
        for text in GRID_FORMULAS:
            f = d(text, SIG_PE)
            fv = tuple(sorted(free_vars(f)))
            for team in enumerate_teams(fv, m.size, max_rows=3):
                assert (satisfies(m, team, f)
                        == oracle_satisfies(m, fv, team.rows, f)), (text, team)


# ---------------------------------------------------------------------------
# errors and budget
# ---------------------------------------------------------------------------

def test_unbound_free_variable():
    with pytest.raises(EvalError):
        satisfies(bare(2), Team.of(("x",), [(0,)]), d("=(x,y)"))


def test_sentence_truth_rejects_open_formula():
    with pytest.raises(EvalError):
        sentence_truth(bare(2), d("=(x,y)"))


def test_row_outside_domain():
    from deplog.errors import ShapeError
    with pytest.raises(ShapeError):
        satisfies(bare(2), Team.of(("x",), [(7,)]), d("=(x)"))


def test_budget_exhaustion():
    f = d("forall x. forall y. forall z. (=(x,y) | =(y,z) | =(z,x))")
    with pytest.raises(BudgetExceededError) as e:
        sentence_truth(bare(3), f, Budget(50))
    assert e.value.limit == 50


def test_verdict_independent_of_budget():
    f = corpus_item("phi1_closed").formula()
    assert sentence_truth(bare(2), f) == sentence_truth(bare(2), f, Budget(10 ** 7))
