"""How the selective pair lists are chosen, and how little they keep."""

from gspectra import group_from_kind, irreps_for, kronecker_table, selection_plan

for kind in ["cyclic:8", "cyclic:128", "dihedral:8", "dihedral:16",
             "octahedral", "full_octahedral"]:
    irreps = irreps_for(group_from_kind(kind))
    kt = kronecker_table(irreps)
    plan = selection_plan(kt, irreps)
    full_scalars = sum((a * b) ** 2 for a in irreps.dims for b in irreps.dims)
    print(f"{kind:16s} {len(plan.pairs):3d} of {len(irreps) ** 2:3d} pairs, "
          f"{plan.scalar_count:4d} of {full_scalars:6d} scalars, seed {plan.seed_irrep}")

print("\nfull octahedral chain (pair -> unlocked):")
irreps = irreps_for(group_from_kind("full_octahedral"))
plan = selection_plan(kronecker_table(irreps), irreps)
for pair, edge in zip(plan.pairs, plan.recovery_edges):
    print(f"  {pair[0]:6s} (x) {pair[1]:6s} -> {', '.join(edge) if edge else '-'}")

print("\nKronecker table of the octahedral group:")
for row in kronecker_table(irreps_for(group_from_kind("octahedral"))).binary_rows():
    print(" ", row)
