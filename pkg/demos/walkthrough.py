"""Walk through the rank-2 running example end to end.

Run with ``python demos/walkthrough.py``.
"""
from periodstrata.family import (
    DifTower,
    cohomology_dims,
    dual_twist,
    family_datum,
    pointwise_datum,
    sen_polynomial,
    stabilized_plus_dim,
)
from periodstrata.drdatum import classify, min_covers
from periodstrata.rings import RingMap, X, poly_ring
from periodstrata.strata import stratum_report, strata_decomposition

R = poly_ring()
# weights 0 and 1; the extension class between them is x
T = DifTower.from_blocks(R, [[[0, 0], [0, -1]], [[0, 0], [X, 0]]])

print("Sen polynomial:", sen_polynomial(T).to_string())
D = family_datum(T)
print("generic datum: ", D.to_literal())
print("flags:         ", classify(D))

for a in (0, 1, 2):
    P = pointwise_datum(T, RingMap.evaluate_at(R, a))
    print(f"datum at x={a}:   {P.to_literal()}")

# the double point at 0 sees the jump, the double point at 1 does not
for g in (X ** 2, (X - 1) ** 2):
    to_q = RingMap.project_to_quotient(R, g)
    print(f"h0, h1 on [0,2) over Q[x]/({g.to_string()}):", cohomology_dims(T, 0, 2, to_q))

print("min covers of the generic datum on [0, 1]:")
for E in min_covers(D, 0, 1):
    print("   ", E.to_literal())

print("strata on [0, 1]:")
for S in strata_decomposition(T, 0, 1):
    verdicts = {stratum_report(T, S, w).verdict for w in ((0, 1), (0, 2), (1, 2))}
    print(f"    {S.locus.describe('x'):<14} {S.datum.to_literal()}  {sorted(verdicts)}")

for a in (0, 1):
    d, l_star, seq = stabilized_plus_dim(T, 0, RingMap.evaluate_at(R, a))
    print(f"stabilized h0 at k=0, x={a}: {d}, reached at l={l_star}, sequence {seq}")
print("dual twist by 3 has Sen polynomial", sen_polynomial(dual_twist(T, 3)).to_string())
