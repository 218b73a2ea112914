from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from arbor.coefficients import MPoly


def as_oracle(x, nvars):
    """LinComb over forest tensors -> ``{(str, str): {exponents: coeff}}``."""
    out = {}
    for (a, b), c in x.terms.items():
        if isinstance(c, MPoly):
            out[(str(a), str(b))] = dict(c.terms)
        else:
            out[(str(a), str(b))] = {(0,) * nvars: c}
    return out
