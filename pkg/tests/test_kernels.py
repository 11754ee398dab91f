import math

import numpy as np
import pytest

from curvelink import (
    UnorientedTangent,
    Vec2,
    ZoneParams,
    in_allowed_region,
    in_noisy_allowed_region,
)
from curvelink.kernels import available_backends, get_backend


def random_batch(rng, n=5000):
    m = n  # points
    px = rng.uniform(-2, 2, m)
    py = rng.uniform(-2, 2, m)
    ang = rng.uniform(0, math.pi, m)
    tx = np.cos(ang)
    ty = np.sin(ang)
    # canonicalize like UnorientedTangent does
    flip = (tx < 0) | ((tx == 0) & (ty < 0))
    tx = np.where(flip, -tx, tx)
    ty = np.where(flip, -ty, ty)
    ii = rng.integers(0, m, n).astype(np.int64)
    jj = rng.integers(0, m, n).astype(np.int64)
    keep = ii != jj
    return px, py, tx, ty, ii[keep], jj[keep]


@pytest.fixture(scope="module")
def batch():
    return random_batch(np.random.default_rng(33))


def test_backends_bitwise_equal_noise_free(batch):
    names = available_backends()
    if len(names) < 2:
        pytest.skip("compiled backend not built")
    px, py, tx, ty, ii, jj = batch
    results = [
        get_backend(n).pair_codes_noise_free(px, py, tx, ty, ii, jj, 1.3, 0.6, 1e-9)
        for n in names
    ]
    assert np.array_equal(results[0], results[1])


def test_backends_bitwise_equal_noisy(batch):
    names = available_backends()
    if len(names) < 2:
        pytest.skip("compiled backend not built")
    px, py, tx, ty, ii, jj = batch
    results = [
        get_backend(n).pair_codes_noisy(
            px, py, tx, ty, ii, jj, 1.3, 0.6, 0.02, 0.05, 1e-9
        )
        for n in names
    ]
    assert np.array_equal(results[0], results[1])


@pytest.mark.parametrize("name", available_backends())
def test_kernel_matches_scalar_predicates(batch, name):
    """Each kernel encodes exactly the mutual scalar membership tests."""
    px, py, tx, ty, ii, jj = batch
    impl = get_backend(name)
    kappa, eps, xi, zeta, tol = 1.3, 0.6, 0.02, 0.025, 1e-9
    zp_free = ZoneParams(kappa_max=kappa, epsilon=eps, tol=tol)
    zp_noisy = ZoneParams(kappa_max=kappa, epsilon=eps, zeta=zeta, xi=xi, tol=tol)
    codes_free = impl.pair_codes_noise_free(px, py, tx, ty, ii, jj, kappa, eps, tol)
    codes_noisy = impl.pair_codes_noisy(
        px, py, tx, ty, ii, jj, kappa, eps, xi, 2 * zeta, tol
    )
    sub = np.random.default_rng(7).choice(len(ii), size=800, replace=False)
    for k in sub.tolist():
        a, b = int(ii[k]), int(jj[k])
        pa = Vec2(px[a], py[a])
        pb = Vec2(px[b], py[b])
        ma = UnorientedTangent(Vec2(tx[a], ty[a]))
        mb = UnorientedTangent(Vec2(tx[b], ty[b]))
        dup = (pa.x - pb.x) ** 2 + (pa.y - pb.y) ** 2 < tol * tol
        if dup:
            assert codes_free[k] == 2 and codes_noisy[k] == 2
            continue
        mutual_free = in_allowed_region(pb, pa, ma, zp_free) and in_allowed_region(
            pa, pb, mb, zp_free
        )
        assert bool(codes_free[k] == 1) == mutual_free
        mutual_noisy = in_noisy_allowed_region(
            pb, pa, ma, zp_noisy, 2 * zeta
        ) and in_noisy_allowed_region(pa, pb, mb, zp_noisy, 2 * zeta)
        assert bool(codes_noisy[k] == 1) == mutual_noisy


def test_duplicate_pair_flagged():
    px = np.array([0.0, 0.0, 1.0])
    py = np.array([0.0, 0.0, 0.0])
    tx = np.array([1.0, 1.0, 1.0])
    ty = np.array([0.0, 0.0, 0.0])
    ii = np.array([0, 0], dtype=np.int64)
    jj = np.array([1, 2], dtype=np.int64)
    for name in available_backends():
        codes = get_backend(name).pair_codes_noise_free(
            px, py, tx, ty, ii, jj, 1.0, 2.0, 1e-9
        )
        assert codes[0] == 2
        assert codes[1] == 1
