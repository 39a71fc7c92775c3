"""Building empirically equivalent hidden-variable models.

Every empirical model admits a single-valued extension and a strongly
deterministic one; with rational probabilities it also admits one that is
weakly deterministic and independent of the measurements (the LCM
partition construction).  A model that is local and measurement
independent can be upgraded to a strongly deterministic one.
"""

from teamlogic import (
    CondProbQuery,
    ProbTeam,
    PropertyName as P,
    check_property,
    cond_prob,
    empirically_equivalent,
    from_team,
    induced_empirical,
)
from teamlogic.constructions import (
    construct_single_valued,
    construct_strong_det,
    construct_weakdet_lambdaindep,
    localize_rel,
)
from teamlogic.datasets import load_bundled

ex22 = load_bundled("ex22")
print("empirical model:", ex22)

sv = construct_single_valued(ex22)
print("\nsingle-valued extension: hidden values", sv.lambda_values())
print("  SingVal:", check_property(sv, P.SING_VAL_H),
      "| equivalent:", empirically_equivalent(ex22, sv))

sd = construct_strong_det(ex22)
print("\nrow-tagging extension:", len(sd.lambda_values()), "hidden values")
print("  StrongDet:", check_property(sd, P.STRONG_DET_H),
      "| lambda-independent:", check_property(sd, P.LAMBDA_INDEP_H),
      " <- the tags reveal the measurements")

uniform = from_team(ProbTeam.uniform(ex22.team), "empirical")
wd = construct_weakdet_lambdaindep(uniform)
print("\nLCM construction on the uniform distribution:")
print("  hidden values:", wd.lambda_values())
print("  WeakDet:", check_property(wd, P.WEAK_DET_H),
      "| lambda-independent:", check_property(wd, P.LAMBDA_INDEP_H))
for lam in wd.lambda_values():
    q = CondProbQuery(("l",), (lam,), ("m1", "m2"), ("a1", "b1"))
    print(f"  P(l={lam} | m=a1 b1) =", cond_prob(wd.prob_team, q), "(uniform, as promised)")

# Localization: a local, measurement-independent witness becomes strongly
# deterministic with selector-family hidden values.
print("\nlocalizing the single-valued model of a product table:")
from teamlogic import Team

grid = Team(
    ("m1", "m2", "o1", "o2"),
    [(a, b, x, y) for a in ("a1", "a2") for b in ("b1",)
     for x in ("+", "-") for y in ("+",)],
)
h = construct_single_valued(from_team(grid, "empirical"))
z = localize_rel(h)
print("  input satisfies Loc:", check_property(h, P.LOC_H))
print("  output: StrongDet", check_property(z, P.STRONG_DET_H),
      "| lambda-independent", check_property(z, P.LAMBDA_INDEP_H),
      "| hidden values:", len(z.lambda_values()))
print("  equivalent to the input's empirical model:",
      empirically_equivalent(induced_empirical(h), z))
