"""Exact Khovanov complexes of link diagrams and the Reidemeister torsion
of their q-graded subcomplexes."""

from .complex import CochainComplex, KhovanovComplex, build_complex
from .diagram import LinkDiagram, PDCode, PDError, builtin_table, corpus_names, diagram, mirror, parse_pd, r1_variant
from .homology import integral_cohomology, kauffman_bracket_jones, khovanov_polynomial
from .torsion import (
    TorsionError,
    TorsionReport,
    link_torsion,
    mapping_cone,
    quasi_iso_torsion,
    subcomplex_torsion,
)

__all__ = [
    "CochainComplex",
    "KhovanovComplex",
    "LinkDiagram",
    "PDCode",
    "PDError",
    "TorsionError",
    "TorsionReport",
    "build_complex",
    "builtin_table",
    "corpus_names",
    "diagram",
    "integral_cohomology",
    "kauffman_bracket_jones",
    "khovanov_polynomial",
    "link_torsion",
    "mapping_cone",
    "mirror",
    "parse_pd",
    "quasi_iso_torsion",
    "r1_variant",
    "subcomplex_torsion",
]
