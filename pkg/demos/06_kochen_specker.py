"""Kochen-Specker contextuality, three ways.

The bundled configuration has 18 integer rays in 4-space arranged into 9
orthogonal quadruples, every ray appearing in exactly two.  Three
formulations of its contextuality coincide:

1. no set of rays meets every quadruple exactly once (coloring search,
   with a parity shortcut: a transversal would hit an even number of
   incidences, but one per basis gives the odd number 9);
2. the 9-row measurement team violates the non-contextual-choice atom
   ncc(m1 m2 m3 m4);
3. no extension of that team by one-hot outcome columns satisfies the
   non-contextuality formula.
"""

from teamlogic import NCC, eval_atom_rel
from teamlogic.nogo import (
    cabello_config,
    ks_colorable,
    ks_team,
    noncontextual_extension,
    parity_obstruction,
    verify_ks,
)

cfg = cabello_config()
print("rays:", len(cfg.vectors), "| bases:", len(cfg.bases),
      "| validation problems:", cfg.validate() or "none")

print("\nparity argument forbids a transversal:", parity_obstruction(cfg))
print("exhaustive coloring search agrees:", ks_colorable(cfg) is None)

team = ks_team(cfg)
print("\nmeasurement team: one row per orthogonal basis,", len(team), "rows")
print("ncc(m1 m2 m3 m4):", eval_atom_rel(team, NCC(("m1", "m2", "m3", "m4"))))
print("one-hot non-contextual extension exists:",
      noncontextual_extension(cfg) is not None)

rep = verify_ks()
print("\nfull cross-check:")
for line in rep.lines():
    print("  ", line)

# A toy configuration of two disjoint bases flips all three checks at
# once: disjoint quadruples can be colored independently.
from teamlogic.nogo import ks_config_from_dict

toy = ks_config_from_dict({
    "vectors": [
        [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
        [1, 1, 0, 0], [1, -1, 0, 0], [0, 0, 1, 1], [0, 0, 1, -1],
    ],
    "bases": [[0, 1, 2, 3], [4, 5, 6, 7]],
})
print("\ntoy two-basis configuration:")
print("  coloring:", ks_colorable(toy))
print("  ncc:", eval_atom_rel(ks_team(toy), NCC(("m1", "m2", "m3", "m4"))))
print("  extension exists:", noncontextual_extension(toy) is not None)
