"""Why SU(4)/Sp(2) carries no fat canonical-connection bundle with L = S(U(3)xU(1)).

    python demos/sp2_obstruction.py

su(4) = sp(2) + s(u(3) + u(1)) is a factorization, so the fibration is
defined, but the pair (h, h cap l) = (C2, C1+T) is not one of the tabulated
fat pairs.  The script shows the intersection, the singular curvature
direction found by the decision procedure, and the failing conditions.
"""

from pathlib import Path

from fatlab.fatness import decide_fat, verify_necessary_conditions
from fatlab.scenario import load_scenario
from fatlab.roots import identify
from fatlab.subalg import intersect, is_factorization

SCENARIO = Path(__file__).resolve().parents[1] / "scenarios" / "su4_sp2.json"

sc = load_scenario(SCENARIO)
b = sc.bundle
# g = k through the inclusion, so h and l live in the same algebra
print(f"su(4) = sp(2) + l: {is_factorization(sc.k, b.pair.h, b.l)}")
hl = intersect(b.pair.h, b.l)
print(f"h cap l: dim {hl.dim}, type {identify(hl)}")
v = decide_fat(b.pencil())
print(f"verdict: {v.status} ({v.certificate})")
if v.exact_witness is not None:
    print(f"exact degenerate direction u = {[str(x) for x in v.exact_witness]}")
rep = verify_necessary_conditions(b)
for c in rep.conditions:
    print(f"  ({c.key}) {c.status}: {c.detail}")
print(rep.summary)
