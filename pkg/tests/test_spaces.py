import math
import struct

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paraell.rofunc import Oscillating, Power, PowerLog
from paraell.spaces import (
    Field,
    Spectrum,
    TorusGrid,
    bracket,
    embedding_constants,
    equivalence_band,
    equivalence_ratio,
    field_from_json,
    field_to_json,
    hnorm,
    inverse_transform,
    pnorm,
    pnorm_prime,
    read_field,
    transform,
    write_field,
)

G8 = TorusGrid.square(8)


def test_grid_validation():
    with pytest.raises(ValueError):
        TorusGrid((6, 5))
    with pytest.raises(ValueError):
        TorusGrid((2,))
    with pytest.raises(ValueError):
        TorusGrid((4, 4, 4))


def test_frequency_set():
    g = TorusGrid((8,))
    assert sorted(g.axis_frequencies(8).tolist()) == list(range(-3, 5))


def test_constant_field_concentrates_at_zero():
    s = transform(Field(G8, np.ones(G8.shape)))
    assert abs(s.coefficient((0, 0))) == pytest.approx(8.0)
    rest = s.coeffs.copy()
    rest[0, 0] = 0
    assert np.max(np.abs(rest)) < 1e-12


def test_plane_wave_single_coefficient():
    s = transform(Field.plane_wave(G8, (3, 4)))
    k = s.coefficient((3, 4))
    assert abs(k) == pytest.approx(8.0)
    mask = np.ones(G8.shape, bool)
    mask[G8.index_of((3, 4))] = False
    assert np.max(np.abs(s.coeffs[mask])) < 1e-12


def test_round_trip_and_parseval():
    rng = np.random.default_rng(1)
    g = TorusGrid((16, 8))
    f = Field(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
    s = transform(f)
    assert np.max(np.abs(inverse_transform(s).values - f.values)) < 1e-12
    assert hnorm(s, Power(0)) == pytest.approx(np.linalg.norm(f.values), rel=1e-12)


def test_hnorm_examples():
    assert hnorm(Spectrum.unit_mode(G8, (3, 4)), Power(2)) == pytest.approx(26.0)
    assert hnorm(Spectrum.zeros(G8), Power(2)) == 0.0
    u = Spectrum(G8, Spectrum.unit_mode(G8, (1, 0)).coeffs + Spectrum.unit_mode(G8, (0, 2)).coeffs)
    assert hnorm(u, Power(1)) == pytest.approx(math.sqrt(7.0))


def test_pnorm_examples():
    assert pnorm(Spectrum.unit_mode(G8, (0, 0)), Power(1), 10) == pytest.approx(math.sqrt(101))
    assert pnorm(Spectrum.unit_mode(G8, (3, 4)), Power(1), 1) == pytest.approx(math.sqrt(27))
    rng = np.random.default_rng(2)
    u = Spectrum.random(G8, rng)
    big = pnorm(u, Power(1), 1e6)
    closed = math.sqrt(hnorm(u, Power(1)) ** 2 + 1e12 * hnorm(u, Power(0)) ** 2)
    assert big == pytest.approx(closed, rel=1e-12)
    assert big == pytest.approx(1e6 * hnorm(u, Power(0)), rel=1e-6)


def test_pnorm_prime_examples():
    assert pnorm_prime(Spectrum.unit_mode(G8, (0, 0)), Power(1), 10) == pytest.approx(11.0)
    assert pnorm_prime(Spectrum.unit_mode(G8, (3, 4)), Power(2), 1) == pytest.approx((math.sqrt(26) + 1) ** 2)
    assert pnorm_prime(Spectrum.zeros(G8), Power(1), 3) == 0.0


def test_norm_preconditions():
    u = Spectrum.unit_mode(G8, (0, 0))
    with pytest.raises(ValueError):
        pnorm(u, Power(1), 0.5)
    with pytest.raises(ValueError):
        pnorm(u, Power(0), 2)
    with pytest.raises(ValueError):
        pnorm_prime(u, Power(-1), 2)
    with pytest.raises(ValueError):
        equivalence_ratio(Spectrum.zeros(G8), Power(1), 1)


def test_equivalence_ratio_examples():
    assert equivalence_ratio(Spectrum.unit_mode(G8, (0, 0)), Power(1), 1) == pytest.approx(math.sqrt(2) / 2)
    u = Spectrum.unit_mode(G8, (4, 4))
    b = math.sqrt(33.0)
    assert equivalence_ratio(u, Power(1), 1) == pytest.approx(math.sqrt(b * b + 1) / (b + 1))


def test_equivalence_band_power_half():
    rng = np.random.default_rng(3)
    ps = [1, 10, 100, 1000]
    lo, hi = equivalence_band(Power(0.5), G8, ps)
    for _ in range(10):
        u = Spectrum.random(G8, rng)
        for p in ps:
            assert lo <= equivalence_ratio(u, Power(0.5), p) <= hi


@given(st.integers(0, 2**32 - 1), st.floats(1.0, 1e3))
@settings(max_examples=30, deadline=None)
def test_pnorm_lower_bound(seed, p):
    u = Spectrum.random(G8, np.random.default_rng(seed))
    alpha = PowerLog(1, 1)
    v = pnorm(u, alpha, p)
    assert v >= hnorm(u, alpha) * (1 - 1e-12)
    assert v >= alpha(p) * hnorm(u, Power(0)) * (1 - 1e-12)


def test_monotonicity():
    rng = np.random.default_rng(4)
    u = Spectrum.random(G8, rng)
    assert hnorm(u, Power(1)) <= hnorm(u, Power(2))
    assert hnorm(u, Power(1)) <= hnorm(u, PowerLog(1, 1))


def test_embedding_constants():
    phi = Oscillating(1, 0.3)
    c, C = embedding_constants(phi, G8, 0.5, 1.5)
    b = bracket(G8)
    assert np.all(c * b**0.5 <= phi(b) * (1 + 1e-12))
    assert np.all(phi(b) <= C * b**1.5 * (1 + 1e-12))
    assert c > 0 and C < np.inf


@pytest.mark.parametrize("grid", [TorusGrid((8,)), TorusGrid((4, 6))])
def test_field_binary_roundtrip(tmp_path, grid):
    rng = np.random.default_rng(5)
    f = Field(grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))
    path = tmp_path / "f.pelf"
    write_field(path, f)
    data = path.read_bytes()
    assert data[:4] == b"PELF"
    assert len(data) == 16 + 16 * f.values.size
    magic, dim, n0, n1 = struct.unpack("<4sB3xII", data[:16])
    assert dim == grid.dim and n0 == grid.sizes[0]
    assert n1 == (grid.sizes[1] if grid.dim == 2 else 0)
    g = read_field(path)
    np.testing.assert_array_equal(g.values, f.values)


def test_field_binary_rejects_garbage(tmp_path):
    p = tmp_path / "bad"
    p.write_bytes(b"XXXX" + bytes(12))
    with pytest.raises(ValueError):
        read_field(p)
    p.write_bytes(struct.pack("<4sB3xII", b"PELF", 1, 8, 0) + bytes(8))
    with pytest.raises(ValueError):
        read_field(p)


def test_field_json_roundtrip():
    f = Field.plane_wave(TorusGrid((4, 4)), (1, 2))
    g = field_from_json(field_to_json(f))
    np.testing.assert_array_equal(g.values, f.values)


def test_field_rejects_nonfinite():
    v = np.ones((4,))
    v[0] = np.nan
    with pytest.raises(ValueError):
        Field(TorusGrid((4,)), v)
