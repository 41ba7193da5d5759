"""Torsion of a cochain map through its mapping cone."""

from khtor import CochainComplex, mapping_cone, quasi_iso_torsion

# Z --2--> Z, concentrated in degrees 0 and 1; cohomology Z_2 in degree 1
c = CochainComplex(0, 1, {0: 1, 1: 1}, {0: [[2]]})
identity = {0: [[1]], 1: [[1]]}
cone = mapping_cone(identity, c, c)
cone.check()
print("cone ranks:", dict(sorted(cone.dims.items())))
print("torsion of the identity:", quasi_iso_torsion(identity, c, c))

# scaling a one-term complex by 3 is a rational quasi-isomorphism but not an integral one
point = CochainComplex(0, 0, {0: 1}, {})
print("torsion of multiplication by 3:", quasi_iso_torsion({0: [[3]]}, point, point))
