import math

import geoflow as gf


def test_profiles_and_curvature():
    names = gf.profile_names()
    assert "cigar" in names and "gaussian" in names

    cigar = gf.AmbientMetric(2, gf.make_profile("cigar"))
    assert abs(gf.gauss_curvature_2d(cigar, [0.0, 0.0]) - 2.0) < 1e-12
    assert abs(gf.gauss_curvature_2d(cigar, [1.0, 0.0]) - 1.0) < 1e-12

    rs = gf.AmbientMetric(3, gf.make_profile("round_sphere_chart"))
    ric = gf.ricci(rs, [0.3, 0.0, 0.0])
    F = gf.make_profile("round_sphere_chart").value(0.3)
    assert abs(ric[(0, 0)] - 2.0 / F**2) < 1e-12


def test_soliton_integration():
    one = gf.RadialProfile.constant(1.0)
    sol = gf.integrate_soliton(one, one, gf.SolitonParams.shrinking(0.0), 3, 0.01, 5.0,
                               regular_origin=True)
    assert sol.residual_sup < 1e-9
    # recovers f = r^2/4 up to a constant
    c = sol.f[0] - sol.r[0] ** 2 / 4.0
    assert all(abs(f - (r * r / 4.0 + c)) < 1e-9 for r, f in zip(sol.r, sol.f))


def test_background_and_f_minimal():
    bg = gf.make_background("gaussian", 3, gf.SolitonClass.shrinking, 0.0)
    factor, phibar, fbar = bg.eval([1.0, 0.0, 0.0], -0.5)
    assert abs(factor - 1.0) < 1e-9
    assert abs(fbar - 1.0 / 2.0) < 1e-9

    amb = gf.make_static_ambient("gaussian", 3)
    root = gf.find_f_minimal_sphere(amb, 3, 1.0, 3.0)
    assert abs(root - 2.0) < 1e-8


def test_curve_and_weighted_area():
    amb = gf.make_static_ambient("euclidean", 2)
    circ = gf.PlaneCurve.circle(1.0, 128)
    H = gf.curve_mean_curvature(circ, amb)
    assert all(abs(h - 1.0) < 1e-3 for h in H)
    assert abs(gf.weighted_area(circ, amb) - 2.0 * math.pi) < 1e-9


def test_sphere_family_tracks_closed_form():
    bg = gf.make_background("gaussian", 3, gf.SolitonClass.shrinking, 0.0)
    fam = gf.construct_soliton_family_sphere(bg, 2.0, [-1.0, -0.25])
    assert abs(fam.radii[1] - 1.0) < 1e-7


def test_monotonicity_pipeline():
    bg = gf.make_background("gaussian", 2, gf.SolitonClass.shrinking, 0.0)
    fam = gf.evolve_curve_mcf(bg, gf.PlaneCurve.circle(2.5, 128), -2.0, -1.9, 1e-4, 250)
    res = gf.check_monotonicity(fam, bg, 1e-2)
    assert res["monotone"]
    assert res["worst_rel"] < 1e-2


def test_extended_harnack_on_grim_reaper():
    bg = gf.make_background("grim_reaper_f", 2, gf.SolitonClass.steady, 0.0)
    seed = gf.PlaneCurve.grim_reaper(1.4, 1024)
    times = [i * 1e-3 for i in range(-2, 3)]
    fam = gf.reparametrize_to_mcf(gf.construct_soliton_family_curve(bg, seed, times))
    rep = gf.extended_harnack(fam, bg, 2)
    assert rep.sup < 1e-4
