"""Teams, atoms and the logical operators, end to end.

A team is a set of assignments sharing a variable domain.  We build the
two-component correlation table (Alice's first measurement agrees with
Bob's, her second disagrees), evaluate atoms on it, and walk through
splits and quantifiers.

Run after installing the package:  python demos/01_teams_and_semantics.py
"""

from teamlogic import Team, eval_rel, parse

ex22 = Team(
    ("m1", "m2", "o1", "o2"),
    [
        ("a1", "b1", "+", "+"),
        ("a1", "b1", "-", "-"),
        ("a2", "b1", "+", "-"),
        ("a2", "b1", "-", "+"),
    ],
)

print("team rows:")
for row in ex22.rows:
    print("  ", row)

# Dependence: do the measurements determine the outcomes?  They do not:
# the first two rows share (a1, b1) but disagree on the outcomes.
print("\ndep(m1 m2, o1 o2):", eval_rel(ex22, parse("dep(m1 m2, o1 o2)")))

# Independence: all four outcome combinations occur, so o1 and o2 are
# completely independent *as a relation* even though they are perfectly
# correlated once the measurement is fixed.
print("o1 _||_ o2:       ", eval_rel(ex22, parse("o1 _||_ o2")))
print("o1 _||_{m1} o2:   ", eval_rel(ex22, parse("o1 _||_{m1} o2")))

# Disjunction splits the team into two covering subteams, so a formula
# is not equivalent to its disjunction with itself: dep(m2, o1) fails on
# the whole team (m2 is constant, o1 is not) yet splitting by the value
# of o1 satisfies each half.
print("\ndep(m2, o1):              ", eval_rel(ex22, parse("dep(m2, o1)")))
print("dep(m2, o1) | dep(m2, o1):", eval_rel(ex22, parse("dep(m2, o1) | dep(m2, o1)")))

# Existential quantification extends every row by a chosen value from
# the team's value universe.  Tagging rows 1 and 4 with one value and
# rows 2 and 3 with another makes each outcome a function of
# (measurement, tag), and two values suffice:
print("E l . dep(m1 l, o1) & dep(m2 l, o2):",
      eval_rel(ex22, parse("E l . dep(m1 l, o1) & dep(m2 l, o2)")))

# The universe matters to quantifiers even though it never changes the
# atoms.  Here y must be constant and avoid every value of x, so the
# team's own two values cannot satisfy the formula; adding a fresh value
# flips the verdict.
pair = Team(("x",), [(0,), (1,)])
needs_fresh = parse("E y . dep(, y) & x != y")
print("\nE y . dep(, y) & x != y:")
print("  over the bare universe:  ", eval_rel(pair, needs_fresh))
print("  after adding a value:    ", eval_rel(pair.add_values([2]), needs_fresh))

# The empty team satisfies every formula of the language.
empty = Team(("x", "y"), [])
print("\nempty team satisfies dep(x, y):", eval_rel(empty, parse("dep(x, y)")))
