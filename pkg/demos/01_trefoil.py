"""Walk through the trefoil: complex sizes, torsion per q, and the Z_2 at q = -7."""

from khtor import build_complex, builtin_table, diagram, integral_cohomology, link_torsion
from khtor.homology import describe_group
from khtor.torsion import is_acyclic

d = diagram(builtin_table("knot3_1"))
print(f"crossings: {d.n}  (n+ = {d.n_plus}, n- = {d.n_minus})")

kc = build_complex(d)
print("q-degrees present:", kc.q_degrees)
for q, sub in kc.subcomplexes():
    print(f"  q = {q:>3}: ranks by degree {dict(sorted(sub.dims.items()))}")

print("\ntorsion per q")
report = link_torsion(d)
for row in report.rows:
    parts = " ".join(str(c) for c in row.contributions)
    print(f"  q = {row.q:>3}: [{parts}]  ->  {row.torsion}")

print("\nintegral cohomology per q")
h = integral_cohomology(kc)
for q, (free, tors) in h.by_q().items():
    print(f"  q = {q:>3}: {describe_group(free, tors)}")

sub = kc.subcomplex(-7)
print(f"\nq = -7 is rationally acyclic: {is_acyclic(sub)}; torsion {report.row(-7).torsion}")
