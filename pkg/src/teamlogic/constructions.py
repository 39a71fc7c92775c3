"""Constructive existence of empirically equivalent hidden-variable models.

Four constructors, each implementing a constructive proof:

* :func:`construct_single_valued` adds a constant hidden column;
* :func:`construct_strong_det` tags every row with itself as hidden value;
* :func:`construct_weakdet_lambdaindep` builds the least-common-multiple
  partition model realizing weak determinism together with hidden-variable
  independence for rational distributions;
* :func:`localize_rel` / :func:`localize_prob` turn a model satisfying
  Locality and hidden-variable independence into an equivalent one
  satisfying Strong Determinism and hidden-variable independence (the
  "local realism" normal form), in the relational and probabilistic
  semantics respectively.

Hidden values are canonical structured tokens (a fixed symbol, row tags,
integers 0..N-1, or pairs of a hidden value and a selector table), so
outputs are reproducible byte for byte.  Every output is exactly
empirically equivalent to its input; partition bookkeeping is asserted at
build time.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import lcm

from .errors import BudgetExceededError, InvalidArgumentError, PreconditionError
from .models import (
    LAMBDA_VAR,
    EmpiricalModel,
    HVModel,
    empirical_domain,
    from_team,
    induced_empirical,
)
from .properties import PropertyName, check_property
from .teams import ProbTeam, Team, value_key

SINGLE_LAMBDA = "l0"


def construct_single_valued(model: EmpiricalModel) -> HVModel:
    """Extend by a constant hidden column; trivially empirically equivalent
    and single-valued (hence independent of the measurements)."""
    if model.probabilistic:
        pt = model.prob_team.skolem_extend(LAMBDA_VAR, lambda s: {SINGLE_LAMBDA: Fraction(1)})
        return from_team(pt, "hidden")
    team = model.team.skolem_extend(LAMBDA_VAR, lambda s: (SINGLE_LAMBDA,))
    return from_team(team, "hidden")


def construct_strong_det(model: EmpiricalModel) -> HVModel:
    """Tag each row with itself: hidden values are the rows, so a hidden
    value determines everything, giving Strong Determinism.

    The hidden value also determines the measurements, so the output
    deliberately fails hidden-variable independence on any model with more
    than one measurement tuple.
    """
    if model.probabilistic:
        pt = model.prob_team.skolem_extend(LAMBDA_VAR, lambda s: {s.row: Fraction(1)})
        return from_team(pt, "hidden")
    team = model.team.skolem_extend(LAMBDA_VAR, lambda s: (s.row,))
    return from_team(team, "hidden")


def construct_weakdet_lambdaindep(model: EmpiricalModel) -> HVModel:
    """The LCM partition construction.

    For each measurement tuple, the conditional outcome probabilities
    p(z) = r(z)/s(z) partition a hidden set of size N = lcm of all s(z)
    into blocks of size p(z)*N, one block per outcome tuple; each row's
    mass is split uniformly over its block.  Every hidden value is then
    equally likely given any measurement, yielding hidden-variable
    independence, while a hidden value and a measurement pin the block and
    hence the outcome, yielding Weak Determinism.

    Relational models are routed through the uniform distribution and
    collapsed back.
    """
    if not model.probabilistic:
        uniform = from_team(ProbTeam.uniform(model.team), "empirical")
        hv = construct_weakdet_lambdaindep(uniform)
        return from_team(hv.team, "hidden")

    pt = model.prob_team
    team = pt.team
    n = model.arity
    mvars = empirical_domain(n)[:n]
    ovars = empirical_domain(n)[n:]
    mpos = team.positions(mvars)
    opos = team.positions(ovars)

    group_mass: dict = {}
    pair_mass: dict = {}
    for row in team.rows:
        a = tuple(row[i] for i in mpos)
        b = tuple(row[i] for i in opos)
        w = pt.weight(row)
        group_mass[a] = group_mass.get(a, Fraction(0)) + w
        pair_mass[(a, b)] = pair_mass.get((a, b), Fraction(0)) + w

    conditional = {z: mass / group_mass[z[0]] for z, mass in pair_mass.items()}
    modulus = lcm(*(p.denominator for p in conditional.values()))
    lam = list(range(modulus))

    # contiguous block per (measurement, outcome) pair, in canonical outcome order
    blocks: dict = {}
    outcomes = sorted({z[1] for z in conditional}, key=lambda b: tuple(value_key(v) for v in b))
    for a in sorted(group_mass, key=lambda a: tuple(value_key(v) for v in a)):
        cursor = 0
        for b in outcomes:
            p = conditional.get((a, b))
            if p is None:
                continue
            size = p * modulus
            assert size.denominator == 1
            blocks[(a, b)] = lam[cursor : cursor + int(size)]
            cursor += int(size)
        assert cursor == modulus, "blocks must partition the hidden set"

    def family(s):
        block = blocks[(s.values_at(mvars), s.values_at(ovars))]
        share = Fraction(1, len(block))
        return {c: share for c in block}

    return from_team(pt.skolem_extend(LAMBDA_VAR, family), "hidden")


def _require(model: HVModel):
    failing = [
        name
        for name, prop in (
            ("Locality", PropertyName.LOC_H),
            ("lambda-independence", PropertyName.LAMBDA_INDEP_H),
        )
        if not check_property(model, prop)
    ]
    if failing:
        raise PreconditionError(
            f"input model violates {' and '.join(failing)}; "
            "localization needs a Loc and lambda-independent witness"
        )


def localize_rel(model: HVModel, max_selectors: int = 1_000_000) -> HVModel:
    """Relational localization: from Locality and hidden-variable
    independence to Strong Determinism and hidden-variable independence.

    New hidden values are pairs of an old hidden value c and a family of
    per-component selectors f_i mapping each measurement value to an
    outcome witnessed with it under c; a row is compatible with (c, f)
    when every selector reproduces its outcomes.  Selector families are
    enumerated exhaustively, guarded by ``max_selectors``.
    """
    if model.probabilistic:
        raise InvalidArgumentError("localize_rel needs a relational model")
    _require(model)
    team = model.team
    n = model.arity
    empirical = induced_empirical(model).team
    mvars = empirical_domain(n)[:n]
    ovars = empirical_domain(n)[n:]
    mpos = team.positions(mvars)
    opos = team.positions(ovars)
    (lpos,) = team.positions((LAMBDA_VAR,))

    witnessed: dict = {}
    for row in team.rows:
        c = row[lpos]
        for i in range(n):
            witnessed.setdefault((i, c), {}).setdefault(row[mpos[i]], set()).add(row[opos[i]])

    lam_values = sorted({row[lpos] for row in team.rows}, key=value_key)
    selector_tags: dict = {}
    for c in lam_values:
        per_component = []
        count = 1
        for i in range(n):
            options = witnessed[(i, c)]
            keys = sorted(options, key=value_key)
            choices = [sorted(options[k], key=value_key) for k in keys]
            for ch in choices:
                count *= len(ch)
            if count > max_selectors:
                raise BudgetExceededError(
                    f"selector family for hidden value {c!r} exceeds {max_selectors}"
                )
            per_component.append(
                [tuple(zip(keys, pick)) for pick in product(*choices)]
            )
        selector_tags[c] = [tuple(fs) for fs in product(*per_component)]

    def compatible(s):
        tags = []
        for c in lam_values:
            for f in selector_tags[c]:
                if all(
                    dict(f[i]).get(s[mvars[i]]) == s[ovars[i]] for i in range(n)
                ):
                    tags.append((c, f))
        assert tags, "lambda-independence guarantees a compatible selector"
        return tags

    extended = empirical.skolem_extend(LAMBDA_VAR, compatible)
    return from_team(extended, "hidden")


def localize_prob(model: HVModel) -> HVModel:
    """Probabilistic localization via per-component LCM partitions.

    For each component i, the conditional probabilities
    p_i = P(o_i | m_i, c) partition a set of size N_i = lcm of their
    denominators into blocks of size p_i * N_i.  New hidden values are
    tuples (c, (c_1..c_n)) with c_i in the block of (m_i, o_i, c); a row's
    mass is distributed as P(c | row) split evenly over the block product.
    The hidden marginal then factors as P(c)/prod(N_i), independent of the
    measurements, while (m_i, c, c_i) pins o_i through its block.
    """
    if not model.probabilistic:
        raise InvalidArgumentError("localize_prob needs a probabilistic model")
    _require(model)
    pt = model.prob_team
    team = pt.team
    n = model.arity
    empirical = induced_empirical(model).prob_team
    mvars = empirical_domain(n)[:n]
    ovars = empirical_domain(n)[n:]
    mpos = team.positions(mvars)
    opos = team.positions(ovars)
    (lpos,) = team.positions((LAMBDA_VAR,))

    comp_mass: dict = {}
    comp_joint: dict = {}
    row_mass: dict = {}
    for row in team.rows:
        w = pt.weight(row)
        c = row[lpos]
        key = (tuple(row[i] for i in mpos), tuple(row[i] for i in opos))
        row_mass.setdefault(key, {})
        row_mass[key][c] = row_mass[key].get(c, Fraction(0)) + w
        for i in range(n):
            comp_mass[(i, row[mpos[i]], c)] = comp_mass.get(
                (i, row[mpos[i]], c), Fraction(0)
            ) + w
            comp_joint[(i, row[mpos[i]], row[opos[i]], c)] = comp_joint.get(
                (i, row[mpos[i]], row[opos[i]], c), Fraction(0)
            ) + w

    conditional = {
        (i, a, b, c): mass / comp_mass[(i, a, c)]
        for (i, a, b, c), mass in comp_joint.items()
    }

    moduli = [
        lcm(*(p.denominator for (i, _, _, _), p in conditional.items() if i == comp))
        for comp in range(n)
    ]

    blocks: dict = {}
    for comp in range(n):
        pairs = sorted(
            {(a, c) for (i, a, _, c) in conditional if i == comp},
            key=lambda ac: (value_key(ac[0]), value_key(ac[1])),
        )
        for a, c in pairs:
            outs = sorted(
                {b for (i, aa, b, cc) in conditional if i == comp and aa == a and cc == c},
                key=value_key,
            )
            cursor = 0
            for b in outs:
                size = conditional[(comp, a, b, c)] * moduli[comp]
                assert size.denominator == 1
                blocks[(comp, a, b, c)] = range(cursor, cursor + int(size))
                cursor += int(size)
            assert cursor == moduli[comp], "component blocks must partition"

    def family(s):
        a = s.values_at(mvars)
        b = s.values_at(ovars)
        mass_per_lam = row_mass[(a, b)]
        total = sum(mass_per_lam.values(), Fraction(0))
        dist: dict = {}
        for c, mass in mass_per_lam.items():
            lam_given_row = mass / total
            ranges = [blocks[(i, a[i], b[i], c)] for i in range(n)]
            share = lam_given_row / Fraction(
                _prod(len(r) for r in ranges)
            )
            for combo in product(*ranges):
                dist[(c, combo)] = share
        return dist

    extended = empirical.skolem_extend(LAMBDA_VAR, family)
    return from_team(extended, "hidden")


def _prod(items) -> int:
    out = 1
    for x in items:
        out *= x
    return out
