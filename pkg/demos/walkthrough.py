"""Decompose every catalog example and check the answer against homology.

    python3 demos/walkthrough.py
"""
from quadrics.calculus import NotReducible, normalize
from quadrics.catalog import example_script
from quadrics.engine import cross_validate, decompose_complex, decompose_real, run_script
from quadrics.grammar import to_string
from quadrics.rings import catalog_ring, not_isomorphic_ungraded

EXAMPLES = ["square", "cube", "prism", "pentagon", "truncated-cube", "dual-stack-2", "simplex-3"]


def show(label, res, cv):
    if res.determined:
        nf = normalize(res.expr)
        text = str(nf) if not isinstance(nf, NotReducible) else to_string(res.expr)
    else:
        text = f"undetermined ({res.expr.reason})"
    print(f"  {label:8} {text}")
    print(f"  {'':8} via {', '.join(res.hypotheses_used) or '-'}; homology check {cv.verdict}")


for name in EXAMPLES:
    s = example_script(name)
    config, P = run_script(s)
    print(f"{name}: m={config.m} k={config.k} d={P.d}")
    show("real", decompose_real(s), cross_validate(s, "real"))
    if config.m <= 7:
        show("complex", decompose_complex(s), cross_validate(s, "complex"))

print()
cmp = not_isomorphic_ungraded(catalog_ring("z-cv-real"), catalog_ring("z-cv-complex"))
print(f"z-cv-real vs z-cv-complex: {cmp.verdict} by {cmp.invariant}: "
      f"{cmp.left['max_zero_product']} vs {cmp.right['max_zero_product']}")
