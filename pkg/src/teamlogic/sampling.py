"""Seeded random generators for teams, distributions and models.

Everything takes an explicit ``random.Random`` so that test sweeps and
CLI verification suites are reproducible; weight denominators stay small
by construction, keeping the exact-rational pipelines (and the LCM
constructions downstream) tractable.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .errors import InvalidArgumentError
from .models import EmpiricalModel, HVModel, empirical_domain, from_team, hidden_domain
from .teams import ProbTeam, Team


def random_team(
    rng: random.Random,
    variables: tuple[str, ...],
    universe_size: int = 2,
    max_rows: int = 4,
    nonempty: bool = True,
) -> Team:
    """A uniform random subset of the full assignment space."""
    space = list(product(range(universe_size), repeat=len(variables)))
    low = 1 if nonempty else 0
    count = rng.randint(low, min(max_rows, len(space)))
    rows = rng.sample(space, count)
    return Team(variables, rows, universe=range(universe_size))


def random_weights(rng: random.Random, count: int, denominator: int = 120) -> list[Fraction]:
    """A random full-support rational distribution with the given common
    denominator, drawn as a uniform composition."""
    if count > denominator:
        raise InvalidArgumentError("more rows than denominator units")
    cuts = sorted(rng.sample(range(1, denominator), count - 1)) if count > 1 else []
    bounds = [0] + cuts + [denominator]
    return [Fraction(bounds[i + 1] - bounds[i], denominator) for i in range(count)]


def random_prob_team(
    rng: random.Random,
    variables: tuple[str, ...],
    universe_size: int = 2,
    max_rows: int = 4,
    denominator: int = 120,
) -> ProbTeam:
    team = random_team(rng, variables, universe_size, max_rows, nonempty=True)
    weights = random_weights(rng, len(team.rows), denominator)
    return ProbTeam(team, dict(zip(team.rows, weights)))


def random_hv_prob_team(
    rng: random.Random,
    arity: int = 2,
    component_size: int = 2,
    lambda_size: int = 2,
    max_rows: int = 6,
    denominator: int = 120,
) -> ProbTeam:
    """A random probabilistic team over the hidden-variable domain."""
    domain = hidden_domain(arity)
    space = [
        m + o + (c,)
        for m in product([f"a{k}" for k in range(component_size)], repeat=arity)
        for o in product(range(component_size), repeat=arity)
        for c in [f"lam{k}" for k in range(lambda_size)]
    ]
    count = rng.randint(1, min(max_rows, len(space)))
    rows = rng.sample(space, count)
    team = Team(domain, rows)
    weights = random_weights(rng, len(team.rows), denominator)
    return ProbTeam(team, dict(zip(team.rows, weights)))


def random_empirical_model(
    rng: random.Random,
    arity: int = 2,
    component_size: int = 2,
    max_rows: int = 8,
    probabilistic: bool = False,
    conditional_denominator: int = 6,
) -> EmpiricalModel:
    """A random empirical model with small per-measurement conditionals.

    Probabilistic models are sampled as a measurement marginal times
    per-measurement outcome conditionals with denominators at most
    ``conditional_denominator``, so downstream LCM constructions stay
    small.
    """
    domain = empirical_domain(arity)
    mspace = list(product([f"a{k}" for k in range(component_size)], repeat=arity))
    ospace = list(product([f"x{k}" for k in range(component_size)], repeat=arity))
    contexts = rng.sample(mspace, rng.randint(1, min(3, len(mspace))))
    if not probabilistic:
        rows = []
        for m in contexts:
            picked = rng.sample(ospace, rng.randint(1, min(max_rows, len(ospace))))
            rows.extend(m + o for o in picked)
        return from_team(Team(domain, rows), "empirical")
    weights: dict = {}
    context_weights = random_weights(rng, len(contexts), 8 * len(contexts))
    for m, cw in zip(contexts, context_weights):
        d = rng.randint(1, conditional_denominator)
        picked = rng.sample(ospace, min(rng.randint(1, d), len(ospace)))
        shares = random_weights(rng, len(picked), d) if len(picked) > 1 else [Fraction(1)]
        for o, share in zip(picked, shares):
            weights[m + o] = cw * share
    team = Team(domain, weights.keys())
    return from_team(ProbTeam(team, weights), "empirical")


def random_local_witness(
    rng: random.Random,
    arity: int = 2,
    component_size: int = 2,
    lambda_size: int = 2,
    probabilistic: bool = False,
    conditional_denominator: int = 4,
) -> HVModel:
    """A random hidden-variable model satisfying Locality and
    hidden-variable independence by construction.

    Rows are all combinations of a measurement grid, a hidden value, and
    outcomes drawn from per-(component, measurement, hidden) option sets;
    probabilistically the distribution factors accordingly.
    """
    domain = hidden_domain(arity)
    mspace = list(product([f"a{k}" for k in range(component_size)], repeat=arity))
    contexts = rng.sample(mspace, rng.randint(1, min(3, len(mspace))))
    lams = [f"lam{k}" for k in range(lambda_size)]
    outcomes = [f"x{k}" for k in range(component_size)]
    m_values = sorted({m[i] for m in contexts for i in range(arity)})

    options: dict = {}
    for c in lams:
        for i in range(arity):
            for a in m_values:
                count = rng.randint(1, component_size)
                options[(i, a, c)] = sorted(rng.sample(outcomes, count))

    if not probabilistic:
        rows = [
            m + o + (c,)
            for m in contexts
            for c in lams
            for o in product(*[options[(i, m[i], c)] for i in range(arity)])
        ]
        return from_team(Team(domain, rows), "hidden")

    context_weights = dict(zip(contexts, random_weights(rng, len(contexts), 8 * len(contexts))))
    lam_weights = dict(zip(lams, random_weights(rng, len(lams), 8 * len(lams))))
    comp_dist: dict = {}
    for key, opts in options.items():
        if len(opts) == 1:
            comp_dist[key] = {opts[0]: Fraction(1)}
        else:
            shares = random_weights(rng, len(opts), conditional_denominator * len(opts))
            comp_dist[key] = dict(zip(opts, shares))
    weights: dict = {}
    for m in contexts:
        for c in lams:
            base = context_weights[m] * lam_weights[c]
            for o in product(*[sorted(comp_dist[(i, m[i], c)]) for i in range(arity)]):
                w = base
                for i in range(arity):
                    w *= comp_dist[(i, m[i], c)][o[i]]
                if w > 0:
                    weights[m + o + (c,)] = w
    team = Team(domain, weights.keys())
    return from_team(ProbTeam(team, weights), "hidden")
