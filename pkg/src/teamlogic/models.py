"""Empirical and hidden-variable models as validated team wrappers.

An empirical model of arity n is a team over the reserved variables
``m1..mn, o1..on``; a hidden-variable model additionally carries the
hidden column ``l``.  Component value sets are the active values of each
column, per the convention that every measurement, outcome and hidden
value appears in at least one row.  Wrappers are immutable; the wrapped
data is either a relational :class:`~teamlogic.teams.Team` or a
:class:`~teamlogic.teams.ProbTeam`.

The layer also provides the structural moves between the two worlds:
projecting a hidden-variable model to its induced empirical model,
possibilistic collapse of probabilistic models, exact empirical
equivalence, and the commutativity check tying all of these together.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, InvalidArgumentError
from .teams import ProbTeam, Team, value_key

LAMBDA_VAR = "l"


def empirical_domain(arity: int) -> tuple[str, ...]:
    return tuple(f"m{i}" for i in range(1, arity + 1)) + tuple(
        f"o{i}" for i in range(1, arity + 1)
    )


def hidden_domain(arity: int) -> tuple[str, ...]:
    return empirical_domain(arity) + (LAMBDA_VAR,)


class _ModelBase:
    __slots__ = ("arity", "data", "warnings")

    kind = ""

    def __init__(self, data: Team | ProbTeam, arity: int, warnings: tuple[str, ...] = ()):
        self.arity = arity
        self.data = data
        self.warnings = warnings

    @property
    def probabilistic(self) -> bool:
        return isinstance(self.data, ProbTeam)

    @property
    def team(self) -> Team:
        """The relational team: the data itself, or the support."""
        return self.data.support() if self.probabilistic else self.data

    @property
    def prob_team(self) -> ProbTeam:
        if not self.probabilistic:
            raise InvalidArgumentError("model is relational; no distribution attached")
        return self.data

    def measurement_values(self, i: int) -> tuple:
        return _column_values(self.team, f"m{i}")

    def outcome_values(self, i: int) -> tuple:
        return _column_values(self.team, f"o{i}")

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.arity == other.arity and self.data == other.data

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.arity, self.data))

    def __repr__(self) -> str:
        flavor = "probabilistic" if self.probabilistic else "relational"
        return f"{type(self).__name__}(arity={self.arity}, {flavor}, rows={len(self.team)})"


class EmpiricalModel(_ModelBase):
    """A nonempty team over ``m1..mn, o1..on`` with active-value components."""

    kind = "empirical"


class HVModel(_ModelBase):
    """A nonempty team over ``m1..mn, o1..on, l``."""

    kind = "hidden"

    def lambda_values(self) -> tuple:
        return _column_values(self.team, LAMBDA_VAR)


def _column_values(team: Team, var: str) -> tuple:
    (pos,) = team.positions((var,))
    return tuple(sorted({row[pos] for row in team.rows}, key=value_key))


def from_team(data: Team | ProbTeam, kind: str) -> EmpiricalModel | HVModel:
    """Wrap a team as a validated model.

    The domain must match the reserved convention exactly for some arity.
    Relational teams whose declared universe exceeds the active values are
    narrowed, with a warning recorded on the model: quantifier ranges of a
    model are its active values, and extensions must be made explicit with
    ``add_values``.
    """
    team = data.support() if isinstance(data, ProbTeam) else data
    if not team.rows:
        raise InvalidArgumentError("models must be nonempty")
    arity, expected = _infer_arity(team.domain, kind)
    if team.domain != expected:
        raise DomainError(
            f"domain {team.domain} does not match the reserved convention {expected}"
        )
    warnings: tuple[str, ...] = ()
    if not isinstance(data, ProbTeam):
        active = {v for row in team.rows for v in row}
        declared = set(team.universe)
        if declared != active:
            extra = sorted(declared - active, key=value_key)
            warnings = (
                f"universe narrowed to active values; dropped {extra}",
            )
            data = Team(team.domain, team.rows)
    cls = EmpiricalModel if kind == "empirical" else HVModel
    return cls(data, arity, warnings)


def _infer_arity(domain: tuple[str, ...], kind: str) -> tuple[int, tuple[str, ...]]:
    if kind == "empirical":
        if len(domain) % 2 or not domain:
            raise DomainError(f"empirical domain must have even positive length, got {domain}")
        arity = len(domain) // 2
        return arity, empirical_domain(arity)
    if kind == "hidden":
        if len(domain) % 2 == 0 or len(domain) < 3:
            raise DomainError(f"hidden domain must have odd length >= 3, got {domain}")
        arity = (len(domain) - 1) // 2
        return arity, hidden_domain(arity)
    raise InvalidArgumentError(f"unknown model kind {kind!r}")


def induced_empirical(model: HVModel) -> EmpiricalModel:
    """Project out the hidden column; probabilistically, marginalize over it."""
    varE = empirical_domain(model.arity)
    if model.probabilistic:
        return from_team(model.prob_team.restrict(varE), "empirical")
    return from_team(model.data.restrict(varE), "empirical")


def possibilistic_collapse(model: EmpiricalModel | HVModel):
    """The relational counterpart: the support read as a relational model."""
    return from_team(model.team, model.kind)


def empirically_equivalent(
    empirical: EmpiricalModel, hidden: HVModel, mode: str = "joint"
) -> bool:
    """Exact empirical equivalence of a hidden-variable model with an
    empirical one.

    ``joint`` compares full joint distributions (relationally: row sets)
    of the induced empirical model, the notion used throughout this
    package.  ``conditional`` compares measurement sets and the outcome
    distributions conditional on each measurement, the slightly weaker
    notion common in the literature; the two agree whenever the
    measurement marginals agree, and every result here is insensitive to
    the choice.
    """
    if empirical.arity != hidden.arity:
        raise InvalidArgumentError(
            f"arity mismatch: empirical {empirical.arity} vs hidden {hidden.arity}"
        )
    if empirical.probabilistic != hidden.probabilistic:
        raise InvalidArgumentError("cannot compare relational with probabilistic models")
    induced = induced_empirical(hidden)
    if mode == "joint":
        if empirical.probabilistic:
            return induced.prob_team.weights() == empirical.prob_team.weights()
        return induced.team.same_rows(empirical.team)
    if mode != "conditional":
        raise InvalidArgumentError(f"unknown equivalence mode {mode!r}")
    n = empirical.arity
    mvars = empirical_domain(n)[:n]
    if not empirical.probabilistic:
        # conditioning degenerates relationally: compare rows per measurement
        return induced.team.same_rows(empirical.team)
    left, right = induced.prob_team, empirical.prob_team
    if left.team.values_of(mvars) != right.team.values_of(mvars):
        return False
    return _conditionals(left, n) == _conditionals(right, n)


def _conditionals(prob_team: ProbTeam, arity: int) -> dict:
    mpos = prob_team.team.positions(empirical_domain(arity)[:arity])
    totals: dict = {}
    for row in prob_team.team.rows:
        key = tuple(row[i] for i in mpos)
        totals[key] = totals.get(key, Fraction(0)) + prob_team.weight(row)
    return {
        row: prob_team.weight(row) / totals[tuple(row[i] for i in mpos)]
        for row in prob_team.team.rows
    }


def verify_fig1_commutes(prob_hv_team: ProbTeam) -> bool:
    """Check the compatibility square of team and model structure.

    For a probabilistic hidden-variable team, collapsing to the relational
    world and projecting to the empirical variables commute exactly, on
    row sets and on weights, along every composite path.
    """
    h_prob = from_team(prob_hv_team, "hidden")
    varE = empirical_domain(h_prob.arity)

    # team level: support then restrict == restrict then support
    a = prob_hv_team.support().restrict(varE)
    b = prob_hv_team.restrict(varE).support()
    if not a.same_rows(b):
        return False

    # model level, all composite paths to a relational empirical model
    e_prob = induced_empirical(h_prob)
    h_rel = possibilistic_collapse(h_prob)
    path1 = possibilistic_collapse(e_prob)
    path2 = induced_empirical(h_rel)
    if not path1.team.same_rows(path2.team):
        return False

    # the probabilistic empirical model is the exact marginal
    if e_prob.prob_team.weights() != prob_hv_team.restrict(varE).weights():
        return False
    # and the relational projections agree with the team-level projection
    return path1.team.same_rows(Team(varE, a.rows))
