"""Shared test helpers.

Partitions for property tests draw subinterval lengths log-uniformly from
[1/2, 2], so the ratio of any two lengths stays within [1/4, 4] — rough
enough to exercise the stretch-dependent recursions, tame enough that the
continuity-1 middle closure usually still has a representative.
"""

import numpy as np


def ratio_partition(rng, count, a=0.0, b=1.0):
    """Random lengths for [a, b] with all pairwise ratios in [1/4, 4]."""
    if count == 1:
        return (float(b - a),)
    lengths = np.exp(rng.uniform(np.log(0.5), np.log(2.0), size=count))
    lengths *= (b - a) / lengths.sum()
    return tuple(float(x) for x in lengths)
