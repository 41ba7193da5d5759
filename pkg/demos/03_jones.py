"""Evaluate the Khovanov polynomial at t = -1 and compare with a Kauffman state sum."""

from khtor import build_complex, builtin_table, corpus_names, diagram, kauffman_bracket_jones, khovanov_polynomial
from khtor.homology import evaluate_at_t_minus_one, format_laurent

for name in corpus_names()[:8]:
    d = diagram(builtin_table(name))
    kh = evaluate_at_t_minus_one(khovanov_polynomial(build_complex(d)))
    jones = kauffman_bracket_jones(d)
    print(f"{name:<10} {format_laurent(jones):<40} {'ok' if kh == jones else 'MISMATCH'}")
