"""Bounded entailment checking and the semantics-separation witnesses.

``lhs entails rhs`` relationally means every team satisfying ``lhs``
satisfies ``rhs``.  The checker enumerates all teams up to a row bound
over a bounded universe, in a fixed canonical order, and reports the
first counterexample or "none within bounds".  A none verdict is not a
proof, with one exception the checker states explicitly: for formulas
without independence and inclusion atoms, relational and probabilistic
entailment coincide, so a relational verdict transfers.

The module also packages two verification suites: the counterexample
tables separating probabilistic from relational entailment of
conditional-independence implications, and the property entailments
between determinism, independence and locality notions (exhaustive
bounded relational sweep plus randomized probabilistic confirmation).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator

from .datasets import load_bundled
from .errors import BudgetExceededError
from .eval_prob import eval_prob
from .eval_rel import EvalBudget, eval_rel
from .formulas import Formula, classify, parse
from .models import hidden_domain
from .properties import PropertyName, property_formula
from .sampling import random_prob_team
from .teams import ProbTeam, Team

#: Conditional-independence implication that holds relationally but not
#: probabilistically, with its probabilistic counterexample team `pt1`.
PSI1 = parse("z _||_{x} w & z _||_{y} w & x _||_{w z} y")
PHI1 = parse("z _||_{x y} w")

#: Implication that holds probabilistically (by measure-theoretic
#: arguments cited from the literature, not re-proved here) but fails
#: relationally on the team `rt2`.
PSI2 = parse("x _||_{y z} y & z _||_{x} w & z _||_{y} w & x _||_ y")
PHI2 = parse("z _||_ w")


def enumerate_teams(
    columns: list[tuple[str, list]],
    max_rows: int,
    nonempty: bool = True,
) -> Iterator[Team]:
    """All teams over per-variable value columns with at most ``max_rows``
    rows, smallest first, in canonical order."""
    variables = tuple(name for name, _ in columns)
    space = sorted(product(*[values for _, values in columns]))
    universe = {v for _, values in columns for v in values}
    start = 1 if nonempty else 0
    for count in range(start, max_rows + 1):
        for rows in combinations(space, count):
            yield Team(variables, rows, universe)


def find_rel_counterexample(
    lhs: Formula,
    rhs: Formula,
    variables: tuple[str, ...],
    universe_size: int = 2,
    max_rows: int = 4,
    row_space_cap: int = 1_000_000,
    budget: EvalBudget | None = None,
) -> Team | None:
    """First team (canonical order) satisfying ``lhs`` but not ``rhs``,
    or None when no counterexample exists within the bounds."""
    if universe_size ** len(variables) > row_space_cap:
        raise BudgetExceededError(
            f"assignment space {universe_size}^{len(variables)} exceeds cap {row_space_cap}"
        )
    columns = [(v, list(range(universe_size))) for v in variables]
    for team in enumerate_teams(columns, max_rows):
        if eval_rel(team, lhs, budget) and not eval_rel(team, rhs, budget):
            return team
    return None


def entailment_transfers(lhs: Formula, rhs: Formula) -> bool:
    """True when a relational entailment verdict carries over to the
    probabilistic semantics (both formulas free of independence and
    inclusion atoms)."""
    return classify(lhs).is_fo_dep and classify(rhs).is_fo_dep


# ---------------------------------------------------------------------------
# separation suite


@dataclass
class SeparationReport:
    pt1_satisfies_psi1: bool
    pt1_satisfies_phi1: bool
    rt2_satisfies_psi2: bool
    rt2_satisfies_phi2: bool
    rel_counterexample_to_psi1_phi1: Team | None
    bounds: str

    @property
    def ok(self) -> bool:
        return (
            self.pt1_satisfies_psi1
            and not self.pt1_satisfies_phi1
            and self.rt2_satisfies_psi2
            and not self.rt2_satisfies_phi2
            and self.rel_counterexample_to_psi1_phi1 is None
        )

    def lines(self) -> list[str]:
        none_found = self.rel_counterexample_to_psi1_phi1 is None
        return [
            f"pt1 |= psi1: {self.pt1_satisfies_psi1} (expected True)",
            f"pt1 |= phi1: {self.pt1_satisfies_phi1} (expected False; psi1 does not entail phi1 probabilistically)",
            f"rt2 |= psi2: {self.rt2_satisfies_psi2} (expected True)",
            f"rt2 |= phi2: {self.rt2_satisfies_phi2} (expected False; psi2 does not entail phi2 relationally)",
            f"no relational counterexample to psi1 |= phi1 within {self.bounds}: {none_found}",
            "psi2 |= phi2 probabilistically is cited from the literature, not checked here",
        ]


def verify_separations(max_rows: int = 7, universe_size: int = 2) -> SeparationReport:
    """Check both separation witnesses and the bounded converse search."""
    pt1 = load_bundled("pt1")
    rt2 = load_bundled("rt2")
    assert isinstance(pt1, ProbTeam) and isinstance(rt2, Team)
    counterexample = find_rel_counterexample(
        PSI1, PHI1, ("x", "y", "z", "w"), universe_size, max_rows
    )
    return SeparationReport(
        pt1_satisfies_psi1=eval_prob(pt1, PSI1),
        pt1_satisfies_phi1=eval_prob(pt1, PHI1),
        rt2_satisfies_psi2=eval_rel(rt2, PSI2),
        rt2_satisfies_phi2=eval_rel(rt2, PHI2),
        rel_counterexample_to_psi1_phi1=counterexample,
        bounds=f"universe {universe_size}, <= {max_rows} rows",
    )


# ---------------------------------------------------------------------------
# property entailment suite


IMPLICATIONS: tuple[tuple[str, tuple[PropertyName, ...], tuple[PropertyName, ...]], ...] = (
    ("SingVal |= LambdaIndep", (PropertyName.SING_VAL_H,), (PropertyName.LAMBDA_INDEP_H,)),
    ("WeakDet |= OutIndep", (PropertyName.WEAK_DET_H,), (PropertyName.OUT_INDEP_H,)),
    (
        "StrongDet |= WeakDet & ParIndep",
        (PropertyName.STRONG_DET_H,),
        (PropertyName.WEAK_DET_H, PropertyName.PAR_INDEP_H),
    ),
    (
        "WeakDet & ParIndep |= StrongDet",
        (PropertyName.WEAK_DET_H, PropertyName.PAR_INDEP_H),
        (PropertyName.STRONG_DET_H,),
    ),
    (
        "LambdaIndep & ParIndep |= NoSig",
        (PropertyName.LAMBDA_INDEP_H, PropertyName.PAR_INDEP_H),
        (PropertyName.NO_SIG_E,),
    ),
)


@dataclass
class EntailmentReport:
    arity: int
    teams_checked: int
    prob_samples: int
    counterexamples: dict = field(default_factory=dict)
    non_implications: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples and all(self.non_implications.values())

    def lines(self) -> list[str]:
        out = [
            f"exhaustive relational sweep: {self.teams_checked} teams, arity {self.arity}",
        ]
        for name, *_ in IMPLICATIONS:
            bad = self.counterexamples.get(name)
            out.append(f"{name}: {'counterexample ' + repr(bad.rows) if bad else 'holds'}")
        out.append(f"randomized probabilistic confirmation: {self.prob_samples} samples, "
                   f"{'no violations' if not self.counterexamples else 'violations found'}")
        for name, found in self.non_implications.items():
            out.append(f"{name}: {'witnessed' if found else 'NOT witnessed'}")
        return out


def _formula_of(props: tuple[PropertyName, ...], arity: int) -> Formula:
    from .formulas import conjoin

    return conjoin([property_formula(p, arity) for p in props])


def verify_property_entailments(
    arity: int = 2,
    component_size: int = 2,
    max_rows: int = 4,
    prob_samples: int = 200,
    seed: int = 0,
) -> EntailmentReport:
    """Exhaustive bounded relational check of the five property
    entailments, randomized probabilistic confirmation, plus the two
    expected non-implications (dropping a conjunct breaks each)."""
    columns = [(v, [f"a{k}" for k in range(component_size)]) for v in hidden_domain(arity)[:arity]]
    columns += [(v, [f"x{k}" for k in range(component_size)]) for v in hidden_domain(arity)[arity : 2 * arity]]
    columns += [("l", [f"lam{k}" for k in range(component_size)])]
    pairs = [
        (name, _formula_of(lhs, arity), _formula_of(rhs, arity))
        for name, lhs, rhs in IMPLICATIONS
    ]
    report = EntailmentReport(arity=arity, teams_checked=0, prob_samples=prob_samples)
    for team in enumerate_teams(columns, max_rows):
        report.teams_checked += 1
        for name, lhs, rhs in pairs:
            if eval_rel(team, lhs) and not eval_rel(team, rhs):
                report.counterexamples.setdefault(name, team)

    rng = random.Random(seed)
    for _ in range(prob_samples):
        pt = random_prob_team(rng, hidden_domain(arity), universe_size=component_size, max_rows=max_rows + 2)
        for name, lhs, rhs in pairs:
            if eval_prob(pt, lhs) and not eval_prob(pt, rhs):
                report.counterexamples.setdefault(f"{name} [probabilistic]", pt.team)

    # known non-implications: witnesses must exist within small bounds
    # (both need two components; at arity 1 NoSig is a tautology)
    if arity >= 2:
        siglam = load_bundled("siglambda")
        report.non_implications["WeakDet does not entail StrongDet (siglambda witness)"] = eval_rel(
            siglam.team, _formula_of((PropertyName.WEAK_DET_H,), 2)
        ) and not eval_rel(siglam.team, _formula_of((PropertyName.STRONG_DET_H,), 2))
        dropped = find_rel_counterexample_over(
            columns,
            _formula_of((PropertyName.PAR_INDEP_H,), arity),
            _formula_of((PropertyName.NO_SIG_E,), arity),
            max_rows,
        )
        report.non_implications["ParIndep alone does not entail NoSig"] = dropped is not None
    return report


def find_rel_counterexample_over(
    columns: list[tuple[str, list]],
    lhs: Formula,
    rhs: Formula,
    max_rows: int,
    budget: EvalBudget | None = None,
) -> Team | None:
    """Counterexample search over explicit per-variable value columns."""
    for team in enumerate_teams(columns, max_rows):
        if eval_rel(team, lhs, budget) and not eval_rel(team, rhs, budget):
            return team
    return None
