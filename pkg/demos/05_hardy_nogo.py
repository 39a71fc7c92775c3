"""The Hardy-style no-go argument, decided by global-section search.

An empirical model has an equivalent hidden-variable model satisfying
Strong Determinism and measurement independence exactly when its rows are
covered by consistent global sections (per-component outcome functions
whose graph stays inside the model).  The canonical Hardy table admits no
consistent section at all, so no such model exists; by the localization
normal form the same holds for Locality in place of Strong Determinism.
"""

from teamlogic import PropertyName as P, check_property, empirically_equivalent
from teamlogic.datasets import load_bundled
from teamlogic.nogo import (
    check_hardy_conditions,
    consistent_sections,
    exists_strongdet_lambdaindep,
)

hardy = load_bundled("hardy")
print("hardy table:")
for row in hardy.team.rows:
    print("  ", row)
print("conditions (1)-(6) violated:", check_hardy_conditions(hardy) or "none")
print("consistent global sections:", len(consistent_sections(hardy)))
print("classical explanation exists:", exists_strongdet_lambdaindep(hardy) is not None)

# Contrast: the correlation table with a single measurement on Bob's side
# IS classically explainable; the decision procedure returns a witness.
ex22 = load_bundled("ex22")
witness = exists_strongdet_lambdaindep(ex22)
print("\ncorrelation table with one Bob measurement:")
print("explainable:", witness is not None)
print("witness hidden values:", len(witness.lambda_values()))
print("witness validates:",
      check_property(witness, P.STRONG_DET_H)
      and check_property(witness, P.LAMBDA_INDEP_H)
      and empirically_equivalent(ex22, witness))
print("\n(the hidden values are the two sections: agree-with-Bob and")
print(" disagree-with-Bob; with only one measurement per side there is no")
print(" Bell-type obstruction)")
