"""Two fat bundles, checked step by step.

    python demos/hopf_and_twistor.py

The Hopf circle bundle over S^2 and the twistor fibration over S^4 both
carry fat canonical connections.  The script prints the homogeneous-space
data, the curvature pencil and the verdict for each.
"""

from pathlib import Path

from fatlab.fatness import decide_fat, verify_necessary_conditions
from fatlab.homspace import holonomy_algebra, is_maximal_rank, is_symmetric
from fatlab.scenario import load_scenario

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"


def walk(name: str) -> None:
    sc = load_scenario(SCENARIOS / f"{name}.json")
    b = sc.bundle
    pair = b.pair
    print(f"== {name}: K = {pair.k.name}, H of dim {pair.h.dim}, m of dim {pair.m.dim}")
    print(f"   symmetric: {is_symmetric(pair)}, maximal rank: {is_maximal_rank(pair)}")
    print(f"   holonomy algebra of the canonical connection: dim {holonomy_algebra(b.connection).dim}")
    p = b.pencil()
    print(f"   pencil: {p.m_dim}x{p.m_dim} skew matrices indexed by a {p.u_dim}-dim complement of l")
    v = decide_fat(p)
    print(f"   verdict: {v.status} ({v.certificate}); {v.reason}")
    print(f"   necessary conditions: {verify_necessary_conditions(b).summary}")


if __name__ == "__main__":
    for name in ("hopf", "s4_twistor"):
        walk(name)
