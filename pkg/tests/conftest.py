import math

import numpy as np
import pytest

from curvelink import TangentSample, UnorientedTangent, Vec2


def make_sample(x, y, tx, ty, idx=0):
    return TangentSample(Vec2(x, y), UnorientedTangent(Vec2(tx, ty)), idx)


def circle_samples(n, radius=1.0, center=(0.0, 0.0), phase=0.0):
    """n exactly-spaced samples on a circle with exact tangents."""
    out = []
    for k in range(n):
        a = phase + 2.0 * math.pi * k / n
        out.append(
            make_sample(
                center[0] + radius * math.cos(a),
                center[1] + radius * math.sin(a),
                -math.sin(a),
                math.cos(a),
                k,
            )
        )
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
