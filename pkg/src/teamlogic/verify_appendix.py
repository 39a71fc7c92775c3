"""Exhaustive equivalence check of the extended atoms against their
dependence-logic defining formulas.

For the minimal arities, every team with at most three rows over a
two-symbol universe is checked both ways: the direct atom semantics and
the quantified defining formula must agree exactly.  The defining
formulas route through the full disjunction/quantifier machinery, so this
doubles as a stress test of the evaluator's exponential paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .eval_rel import EvalBudget, eval_atom_rel, eval_rel
from .formulas import (
    NC,
    NCC,
    GenDep,
    gendep_defining_formula,
    nc_defining_formula,
    ncc_defining_formula,
)
from .teams import Team


@dataclass
class AppendixReport:
    cases: list[tuple[str, int, int]]  # label, teams checked, disagreements

    @property
    def ok(self) -> bool:
        return all(bad == 0 for _, _, bad in self.cases)

    def lines(self) -> list[str]:
        return [
            f"{label}: {teams} teams, {bad} disagreements"
            for label, teams, bad in self.cases
        ]


def _sweep(variables: tuple[str, ...], atom, formula, max_rows: int, budget: EvalBudget) -> tuple[int, int]:
    space = list(product((0, 1), repeat=len(variables)))
    teams = 0
    disagreements = 0
    for count in range(0, max_rows + 1):
        for rows in combinations(space, count):
            team = Team(variables, rows, universe=(0, 1))
            teams += 1
            if eval_atom_rel(team, atom) != eval_rel(team, formula, budget):
                disagreements += 1
    return teams, disagreements


def verify_appendix(max_rows: int = 3) -> AppendixReport:
    budget = EvalBudget()
    cases = []

    atom = GenDep(("x1",), ("x2",), ("y1",), ("y2",))
    teams, bad = _sweep(
        ("x1", "x2", "y1", "y2"), atom, gendep_defining_formula(atom), max_rows, budget
    )
    cases.append(("gendep arity (1,1) vs defining formula", teams, bad))

    atom = NC(("x1",), "y")
    teams, bad = _sweep(("x1", "y"), atom, nc_defining_formula(atom), max_rows, budget)
    cases.append(("nc k=1 vs defining formula", teams, bad))

    atom = NC(("x1", "x2"), "y")
    teams, bad = _sweep(("x1", "x2", "y"), atom, nc_defining_formula(atom), max_rows, budget)
    cases.append(("nc k=2 vs defining formula", teams, bad))

    atom = NCC(("x1", "x2"))
    teams, bad = _sweep(("x1", "x2"), atom, ncc_defining_formula(atom), max_rows, budget)
    cases.append(("ncc k=2 vs unfolded definition", teams, bad))

    return AppendixReport(cases)
