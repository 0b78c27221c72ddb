"""Pure-numpy fallback for the contraction kernel.

Used when the compiled extension is unavailable; semantics are identical.
"""

import numpy as np


def contract_blocks(mats: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> complex:
    """sum over basis states x of prod_c mats[c, rows[x, c], cols[x, c]]."""
    acc = mats[0][rows[:, 0], cols[:, 0]].copy()
    for c in range(1, mats.shape[0]):
        acc *= mats[c][rows[:, c], cols[:, c]]
    return complex(acc.sum())
