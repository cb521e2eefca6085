import math

import numpy as np

import fsm4d


def desk_config(**overrides):
    cfg = fsm4d.SystemConfig()
    for key, val in overrides.items():
        setattr(cfg, key, val)
    return cfg


def test_geometry_closed_forms():
    g = fsm4d.derive_geometry(fsm4d.full_scale(fsm4d.SystemConfig()))
    assert g.N == 4096
    assert abs(g.F - 74.8) < 0.1
    assert abs(g.dx_rayleigh * 100 - 1.46) < 0.01
    assert abs(g.dz_fresnel * 100 - 20.0) < 0.5
    assert abs(g.T_c * 1e6 - 5.35) < 0.01
    assert abs(g.w_spot * 100 - 3.57) < 0.02


def test_doppler_and_codebook():
    cfg = desk_config(c_light=3e8)
    assert abs(fsm4d.doppler_frequency(200.0, cfg) - 186666.67) < 0.01
    assert fsm4d.btsm_codebook_size(0.9, cfg) == 187
    assert abs(fsm4d.inverse_sinc(0.9) - 0.2504) < 1e-3


def test_spectral_efficiency_formula():
    assert fsm4d.spectral_efficiency(1.0, 100.0) == math.log2(101.0)
    assert abs(fsm4d.spectral_efficiency(0.998, 100.0) - 6.1733) < 1e-3


def test_velocity_neighbors_are_orthogonal():
    cfg = desk_config(c_light=3e8)
    g = fsm4d.derive_geometry(cfg)
    grid = fsm4d.build_grid(g, 4, 4, 4, 16)
    s0 = grid.symbol(0, 0, 0, 0)
    s1 = grid.symbol(0, 0, 1, 0)
    assert abs(grid.velocities[1] - 2.0 * cfg.c_light / cfg.N) < 1e-9
    assert abs(fsm4d.manifold_correlation(s0, s1, g)) < 1e-10


def test_dfnt_far_depth_degenerates_to_fft():
    cfg = desk_config(N=512)
    g = fsm4d.derive_geometry(cfg)
    rng = np.random.default_rng(7)
    x = rng.normal(size=512) + 1j * rng.normal(size=512)
    y = np.asarray(fsm4d.dfnt_apply(list(x), g, 1e12))
    ref = np.fft.fft(x) / math.sqrt(512.0)
    assert np.max(np.abs(y - ref)) < 1e-6


def test_dfnt_roundtrip_and_unitarity():
    cfg = desk_config(N=256)
    g = fsm4d.derive_geometry(cfg)
    rng = np.random.default_rng(11)
    x = rng.normal(size=256) + 1j * rng.normal(size=256)
    y = np.asarray(fsm4d.dfnt_apply(list(x), g, cfg.z0))
    back = np.asarray(fsm4d.dfnt_inverse(list(y), g, cfg.z0))
    assert abs(np.linalg.norm(y) - np.linalg.norm(x)) < 1e-9
    assert np.max(np.abs(back - x)) < 1e-10


def test_precode_focuses_unit_gain():
    cfg = desk_config(N=256, z0=2.0)
    g = fsm4d.derive_geometry(cfg)
    grid = fsm4d.build_grid(g, 2, 2, 2, 4)
    s = grid.symbol(1, 0, 1, 2)
    w = np.asarray(fsm4d.precode(s, g))
    h = np.asarray(fsm4d.channel_vector(s, g))
    assert abs(np.linalg.norm(w) - 1.0) < 1e-12
    assert abs(abs(np.vdot(h, w)) - 1.0) < 1e-12


def test_detection_roundtrip():
    cfg = desk_config(N=256, z0=2.0)
    g = fsm4d.derive_geometry(cfg)
    grid = fsm4d.build_grid(g, 2, 2, 2, 4)
    assert grid.bits_per_symbol == 5
    for word in range(32):
        s = fsm4d.encode_bits(word, grid)
        y = list(np.asarray(fsm4d.channel_vector(s, g)) * s.qam_value)
        assert fsm4d.matched_filter_detect(y, grid, g).bits_hat == word


def test_flop_model_values():
    g = fsm4d.derive_geometry(fsm4d.full_scale(fsm4d.SystemConfig()))
    est = fsm4d.flop_estimate(fsm4d.SolverKind.Dfnt, 4096, g.T_c)
    assert est.flops == 5 * 4096 * 12 + 2 * 4096
    svd = fsm4d.flop_estimate(fsm4d.SolverKind.Svd, 4096, g.T_c)
    assert abs(svd.flops / ((4.0 / 3.0) * 4096**3) - 1.0) < 1e-12
    assert svd.ratio_vs_Tc > 1000.0
