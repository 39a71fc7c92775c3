"""The named properties of empirical and hidden-variable models.

Three bundled tables tell the story: a signalling model (weak but not
strong determinism), its single-valued hidden-variable extension, and a
six-row model separating outcome independence from parameter
independence.
"""

from teamlogic import PropertyName as P
from teamlogic import check_property, locality_oracle_rel, print_formula, property_formula
from teamlogic.datasets import load_bundled

sig = load_bundled("sig")
siglam = load_bundled("siglambda")
loc6 = load_bundled("loc6")

print("property formulas at arity 2:")
for prop in (P.WEAK_DET_E, P.STRONG_DET_E, P.NO_SIG_E, P.WEAK_DET_H,
             P.STRONG_DET_H, P.SING_VAL_H, P.LAMBDA_INDEP_H, P.OUT_INDEP_H,
             P.PAR_INDEP_H, P.LOC_H):
    print(f"  {prop.value:14} {print_formula(property_formula(prop, 2))}")

print("\nsignalling model (Bob's choice steers Alice's outcome):")
for row in sig.team.rows:
    print("  ", row)
for prop in (P.WEAK_DET_E, P.STRONG_DET_E, P.NO_SIG_E):
    print(f"  {prop.value}: {check_property(sig, prop)}")

print("\nits single-valued hidden-variable extension:")
for prop in (P.SING_VAL_H, P.WEAK_DET_H, P.OUT_INDEP_H, P.PAR_INDEP_H, P.STRONG_DET_H):
    print(f"  {prop.value}: {check_property(siglam, prop)}")

print("\nsix-row model: locality fails although outcome independence and")
print("hidden-variable independence both hold:")
for row in loc6.team.rows:
    print("  ", row)
for prop in (P.OUT_INDEP_H, P.PAR_INDEP_H, P.LOC_H, P.LAMBDA_INDEP_H):
    print(f"  {prop.value}: {check_property(loc6, prop)}")

# Locality also has a direct semantic characterization: for every
# measurement tuple occurring with a hidden value, componentwise
# witnessed outcomes must combine into a single row.  Both routes agree:
print("\nsemantic locality oracle on loc6:", locality_oracle_rel(loc6))
