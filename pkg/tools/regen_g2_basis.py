"""Regenerate src/fatlab/data/g2_basis.json.

    python tools/regen_g2_basis.py

The basis is the kernel of the derivation equations of the octonionic cross
product inside so(7) (coordinates in the L_ij basis), orthogonalized with
exact Gram-Schmidt.  tests/test_liealg.py checks the committed file against
a fresh computation.
"""

import json
from pathlib import Path

from fatlab.exact import frac_str
from fatlab.liealg import compute_g2_basis

OUT = Path(__file__).resolve().parents[1] / "src" / "fatlab" / "data" / "g2_basis.json"


def main():
    basis = compute_g2_basis()
    rows = ",\n  ".join(json.dumps([frac_str(x) for x in row]) for row in basis)
    OUT.write_text(
        "{\n"
        ' "description": "derivations of the 7-dim cross product, coordinates in so(7) basis L_ij (i<j)",\n'
        f' "basis": [\n  {rows}\n ]\n'
        "}\n"
    )
    print(f"wrote {len(basis)} vectors to {OUT}")


if __name__ == "__main__":
    main()
