"""Twist the figure-eight with Reidemeister I moves and watch the torsion stay put."""

from khtor import builtin_table, diagram, link_torsion, r1_variant

base = diagram(builtin_table("knot4_1"))
reference = link_torsion(base).column()
print("figure-eight:", {q: str(t) for q, t in reference.items()})

for sign in (1, -1):
    twisted = r1_variant(base, base.pd.labels()[0], sign)
    column = link_torsion(twisted).column()
    print(f"kink sign {sign:+d}: {twisted.n} crossings, same column: {column == reference}")

# the extra q-rows a bigger diagram produces are contractible; they can be shown explicitly
twisted = r1_variant(base, base.pd.labels()[0], 1)
full = link_torsion(twisted, keep_contractible=True)
extra = [row.q for row in full.rows if row.contractible]
print("contractible rows hidden by default:", extra)
