"""Differential test: the optimized relational evaluator against a naive
reference that implements the satisfaction clauses literally.

The reference enumerates every covering pair of subteams for disjunction
and every set-valued Skolem function for the existential quantifier, with
no flatness shortcuts, no downward-closure reductions and no component
decomposition.  Agreement over random teams and random formulas spanning
all atom kinds and connectives exercises exactly the machinery the
optimized evaluator is allowed to be clever about.
"""

import random
from itertools import combinations, product

from teamlogic.eval_rel import eval_rel
from teamlogic.formulas import (
    NC,
    NCC,
    And,
    Const,
    Dep,
    Eq,
    Exists,
    Forall,
    GenDep,
    Incl,
    Indep,
    Neq,
    Or,
    Var,
    print_formula,
)
from teamlogic.teams import Team


def _tarski(row, domain, literal):
    def term(t):
        return row[domain.index(t.name)] if isinstance(t, Var) else t.value

    if isinstance(literal, Eq):
        return term(literal.lhs) == term(literal.rhs)
    return term(literal.lhs) != term(literal.rhs)


def naive_eval(team: Team, f) -> bool:
    domain, rows = team.domain, team.rows
    if isinstance(f, (Eq, Neq)):
        return all(_tarski(r, domain, f) for r in rows)
    if isinstance(f, Dep):
        xp = team.positions(f.xs)
        yp = team.positions(f.ys)
        return all(
            tuple(s[i] for i in yp) == tuple(t[i] for i in yp)
            for s in rows for t in rows
            if tuple(s[i] for i in xp) == tuple(t[i] for i in xp)
        )
    if isinstance(f, GenDep):
        p1, p2 = team.positions(f.x1), team.positions(f.x2)
        q1, q2 = team.positions(f.y1), team.positions(f.y2)
        return all(
            tuple(s[i] for i in q1) == tuple(t[i] for i in q2)
            for s in rows for t in rows
            if tuple(s[i] for i in p1) == tuple(t[i] for i in p2)
        )
    if isinstance(f, Indep):
        xp, zp, yp = team.positions(f.xs), team.positions(f.cond), team.positions(f.ys)
        for s in rows:
            for t in rows:
                if tuple(s[i] for i in zp) != tuple(t[i] for i in zp):
                    continue
                want_x = tuple(s[i] for i in xp)
                want_y = tuple(t[i] for i in yp)
                want_z = tuple(s[i] for i in zp)
                if not any(
                    tuple(u[i] for i in xp) == want_x
                    and tuple(u[i] for i in yp) == want_y
                    and tuple(u[i] for i in zp) == want_z
                    for u in rows
                ):
                    return False
        return True
    if isinstance(f, Incl):
        return team.values_of(f.xs) <= team.values_of(f.ys)
    if isinstance(f, NC):
        xp = team.positions(f.xs)
        (yp,) = team.positions((f.y,))
        return all(
            s[yp] == t[yp]
            for s in rows for t in rows
            if t[yp] in {s[i] for i in xp}
        )
    if isinstance(f, NCC):
        xp = team.positions(f.xs)
        options = [sorted({r[i] for i in xp}, key=repr) for r in rows]
        for picks in product(*options):
            chosen = dict(zip(rows, picks))
            if all(
                chosen[s] == chosen[t]
                for s in rows for t in rows
                if chosen[t] in {s[i] for i in xp}
            ):
                return True
        return not rows
    if isinstance(f, And):
        return naive_eval(team, f.lhs) and naive_eval(team, f.rhs)
    if isinstance(f, Or):
        if not rows:
            return True
        n = len(rows)
        for lmask in range(1 << n):
            left = Team(domain, (rows[i] for i in range(n) if lmask >> i & 1), team.universe)
            if not naive_eval(left, f.lhs):
                continue
            need = ((1 << n) - 1) & ~lmask
            for rmask in range(1 << n):
                if rmask & need != need:
                    continue
                right = Team(domain, (rows[i] for i in range(n) if rmask >> i & 1), team.universe)
                if naive_eval(right, f.rhs):
                    return True
        return False
    if isinstance(f, Forall):
        if not rows:
            return True
        return naive_eval(team.generalize(f.var, team.universe), f.body)
    if isinstance(f, Exists):
        if not rows:
            return True
        values = team.universe
        images = [c for size in range(1, len(values) + 1)
                  for c in combinations(values, size)]
        for choice in product(images, repeat=len(rows)):
            extended = team.skolem_extend(
                f.var,
                {s: img for s, img in
                 zip(team.assignments(), choice)},
            )
            if naive_eval(extended, f.body):
                return True
        return False
    raise AssertionError(f"unhandled node {f!r}")


VARS = ("x", "y", "z")


def random_formula(rng, depth, quantifiers_left=1, names=VARS):
    pick = rng.random()
    if depth == 0 or pick < 0.45:
        kind = rng.randrange(8)
        xs = tuple(rng.sample(names, rng.randint(1, 2)))
        ys = tuple(rng.sample(names, rng.randint(1, 2)))
        if kind == 0:
            return Eq(Var(rng.choice(names)), Const(rng.randint(0, 1)))
        if kind == 1:
            return Neq(Var(rng.choice(names)), Var(rng.choice(names)))
        if kind == 2:
            return Dep(xs, ys)
        if kind == 3:
            return Indep(xs, tuple(rng.sample(names, rng.randint(0, 1))), ys)
        if kind == 4:
            k = rng.randint(1, 2)
            return Incl(tuple(rng.sample(names, k)), tuple(rng.sample(names, k)))
        if kind == 5:
            return GenDep(
                (rng.choice(names),), (rng.choice(names),),
                (rng.choice(names),), (rng.choice(names),),
            )
        if kind == 6:
            return NC(xs, rng.choice(names))
        return NCC(xs)
    if pick < 0.65:
        return And(random_formula(rng, depth - 1, quantifiers_left, names),
                   random_formula(rng, depth - 1, 0, names))
    if pick < 0.85 or not quantifiers_left:
        return Or(random_formula(rng, depth - 1, 0, names),
                  random_formula(rng, depth - 1, 0, names))
    var = f"q{rng.randint(1, 2)}"
    body_vars = rng.random() < 0.5
    body = random_formula(rng, depth - 1, quantifiers_left - 1, names)
    if body_vars:
        body = And(body, Dep((var,), (rng.choice(names),)))
    return Exists(var, body) if rng.random() < 0.7 else Forall(var, body)


def test_differential_random_formulas():
    rng = random.Random(424242)
    space = list(product((0, 1), repeat=3))
    agreements = 0
    for round_ in range(350):
        rows = rng.sample(space, rng.randint(0, 3))
        team = Team(VARS, rows, universe=(0, 1))
        f = random_formula(rng, depth=2)
        expected = naive_eval(team, f)
        actual = eval_rel(team, f)
        assert actual == expected, (rows, print_formula(f))
        agreements += 1
    assert agreements == 350


def test_differential_quantifier_heavy():
    rng = random.Random(777)
    space = list(product((0, 1), repeat=2))
    for round_ in range(120):
        rows = rng.sample(space, rng.randint(1, 3))
        team = Team(("x", "y"), rows, universe=(0, 1))
        inner = random_formula(rng, depth=0, names=("x", "y"))
        shell = rng.randrange(3)
        if shell == 0:
            f = Exists("q1", Or(inner, Dep(("q1",), ("x",))))
        elif shell == 1:
            f = Exists("q1", Exists("q2", And(inner, Dep(("q1", "x"), ("q2",)))))
        else:
            f = Forall("q1", Or(Dep(("q1",), ("x",)), inner))
        assert eval_rel(team, f) == naive_eval(team, f), (rows, print_formula(f))


def test_differential_rebinding():
    rng = random.Random(31337)
    space = list(product((0, 1), repeat=2))
    for round_ in range(80):
        rows = rng.sample(space, rng.randint(1, 3))
        team = Team(("x", "y"), rows, universe=(0, 1))
        inner = random_formula(rng, depth=1, quantifiers_left=0, names=("x", "y"))
        if isinstance(inner, (Exists, Forall)):
            inner = random_formula(rng, depth=0, names=("x", "y"))
        f = Exists("x", inner)  # re-quantifies a bound column
        assert eval_rel(team, f) == naive_eval(team, f), (rows, print_formula(f))
