"""Acceptance gate: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest -s tests/test_acceptance.py`` to see them).

Tolerances are fixed here and nowhere else.  Timing checks compare medians
of repeated runs and assert ratios, never absolute milliseconds.
"""

import math
from contextlib import contextmanager

import numpy as np
import pytest

from trigbf import (
    EngineDiagnostics,
    Image,
    SpatialSpec,
    bilateral_direct,
    bilateral_poly,
    bilateral_trig,
    build_auxiliary_images,
    degree_estimate,
    error_stats,
    gaussian_eval,
    gaussian_fir,
    gaussian_recursive,
    make_taylor_kernel,
    make_trig_kernel,
    poly_eval,
    read_pnm,
    sup_error,
    trig_eval,
    write_pnm,
)
from trigbf.bench import median_ms, synthesize_noise
from trigbf.spatial import smooth_plane


@contextmanager
def criterion(num, label):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num} [{label}]: FAIL")
        raise
    print(f"ACCEPTANCE {num} [{label}]: PASS")


def byte_noise(rng, w, h):
    return Image(w, h, 1, rng.integers(0, 256, (1, h, w)).astype(float))


def exactness_instances(rng, count=20):
    return [byte_noise(rng, 64, 64) for _ in range(count)]


def test_criterion_1_trig_exactness():
    # sigma_r chosen so every degree in 1..6 yields a nonnegative monotone
    # kernel (rho*sqrt(N) >= 1), keeping the normalizer bounded away from
    # zero; the comparison is then numerically well posed at 1e-8.
    with criterion(1, "trig engine equals direct reference within 1e-8"):
        rng = np.random.default_rng(101)
        worst = 0.0
        for img in exactness_instances(rng):
            for radius in (1, 3, 7):
                spec = SpatialSpec.box(radius)
                for n_deg in (1, 2, 3, 4, 5, 6):
                    k = make_trig_kernel(170.0, 255.0, degree=n_deg)
                    fast = bilateral_trig(img, spec, k)
                    ref = bilateral_direct(img, spec, lambda s: trig_eval(k, s))
                    worst = max(worst, error_stats(fast, ref).max_abs)
        print(f"  worst |trig - direct| = {worst:.3e}")
        assert worst < 1e-8


def test_criterion_2_poly_exactness():
    with criterion(2, "poly engine equals direct reference within 1e-6"):
        rng = np.random.default_rng(101)
        worst = 0.0
        for img in exactness_instances(rng):
            for radius in (1, 3, 7):
                spec = SpatialSpec.box(radius)
                for terms, sigma in ((1, 80.0), (2, 200.0), (3, 80.0)):
                    p = make_taylor_kernel(sigma, terms)
                    fast = bilateral_poly(img, spec, p)
                    ref = bilateral_direct(img, spec, lambda s: poly_eval(p, s))
                    worst = max(worst, error_stats(fast, ref).max_abs)
        print(f"  worst |poly - direct| = {worst:.3e}")
        assert worst < 1e-6


def test_criterion_3_degree_formula_row():
    with criterion(3, "ceiling degree formula reproduces the published row"):
        got = [degree_estimate(float(s), 255.0) for s in (200, 150, 100, 80, 60, 50, 40)]
        assert got == [1, 2, 3, 5, 8, 11, 17]


def test_criterion_4_gaussian_approximation_quality():
    with criterion(4, "raised cosine beats the matched Taylor polynomial"):
        k = make_trig_kernel(80.0, 255.0, degree=4)
        p = make_taylor_kernel(80.0, 3)
        e_trig = sup_error(lambda s: trig_eval(k, s), 80.0, 255.0)
        e_taylor = sup_error(lambda s: poly_eval(p, s), 80.0, 255.0)
        print(f"  sup errors: trig {e_trig:.4f}, taylor {e_taylor:.4f}")
        assert 5.0 * e_trig < e_taylor
        grid = np.linspace(100.0, 255.0, 5001)[1:]
        taylor_err = np.abs(poly_eval(p, grid) - gaussian_eval(80.0, grid))
        assert float(taylor_err.max()) > 1.0


def test_criterion_5_convergence_in_degree():
    with criterion(5, "sup error strictly decreases along N = 4, 8, 16, 32"):
        sigma = 2.0 * 255.0 / math.pi  # rho = gamma * sigma = 1
        errs = []
        for n_deg in (4, 8, 16, 32):
            k = make_trig_kernel(sigma, 255.0, degree=n_deg)
            assert k.rho == pytest.approx(1.0)
            errs.append(sup_error(lambda s: trig_eval(k, s), sigma, 255.0))
        print("  sup errors:", ", ".join(f"{e:.5f}" for e in errs))
        assert all(a > b for a, b in zip(errs, errs[1:]))


def test_criterion_6_pass_count():
    with criterion(6, "2(N+1) spatial passes, one fewer for even N"):
        rng = np.random.default_rng(102)
        img = byte_noise(rng, 32, 32)
        for n_deg in range(1, 9):
            k = make_trig_kernel(80.0, 255.0, degree=n_deg)
            diag = EngineDiagnostics()
            bilateral_trig(img, SpatialSpec.box(1), k, diagnostics=diag)
            expected = 2 * (n_deg + 1) - (1 if n_deg % 2 == 0 else 0)
            assert diag.spatial_passes == expected, (n_deg, diag.spatial_passes)


def test_criterion_7_constant_time_scaling():
    with criterion(7, "wall time flat in sigma_s, degree blow-up at small sigma_r"):
        img = synthesize_noise(720, 540)

        def trig_time(sigma_s, sigma_r, reps):
            spec = SpatialSpec.gaussian_recursive(sigma_s)
            k = make_trig_kernel(sigma_r, 255.0)
            return median_ms(lambda: bilateral_trig(img, spec, k), reps)

        t_s10 = trig_time(10.0, 80.0, reps=3)
        t_s100 = trig_time(100.0, 80.0, reps=3)
        ratio_s = max(t_s10, t_s100) / min(t_s10, t_s100)
        print(f"  sigma_s 10 vs 100: {t_s10:.0f}ms vs {t_s100:.0f}ms (x{ratio_s:.2f})")
        assert ratio_s < 1.33

        t_r10 = trig_time(10.0, 10.0, reps=1)
        t_r100 = trig_time(10.0, 100.0, reps=3)
        print(f"  sigma_r 10 vs 100: {t_r10:.0f}ms vs {t_r100:.0f}ms (x{t_r10 / t_r100:.1f})")
        assert t_r10 > 3.0 * t_r100


def structured_test_image(n=256, seed=105):
    """Byte-valued image with smooth ramps, block edges, and mild noise."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:n, 0:n]
    img = 96.0 + 80.0 * np.sin(2 * np.pi * x / n) * np.cos(2 * np.pi * y / (0.7 * n))
    img += np.where((x // 32 + y // 32) % 2 == 0, 40.0, -40.0)
    img += np.where(x > n // 2, 30.0, -30.0)
    img += rng.normal(0.0, 6.0, (n, n))
    return Image(n, n, 1, np.round(np.clip(img, 0.0, 255.0))[None])


def test_criterion_8_error_ordering_vs_baseline():
    with criterion(8, "trig tracks the Gaussian reference 2x closer than poly"):
        img = structured_test_image()
        spec = SpatialSpec.gaussian_fir(15.0)
        k = make_trig_kernel(80.0, 255.0)  # degree 4, three cosine terms
        p = make_taylor_kernel(80.0, k.N // 2 + 1)  # matched term count
        reference = bilateral_direct(img, spec, lambda s: gaussian_eval(80.0, s))
        std_trig = error_stats(bilateral_trig(img, spec, k), reference).std_dev
        std_poly = error_stats(bilateral_poly(img, spec, p), reference).std_dev
        print(f"  std vs reference: trig {std_trig:.3f}, poly {std_poly:.3f}")
        assert 2.0 * std_trig < std_poly


class TestCriterion9PropertySuites:
    """Each property exercised over at least 100 randomized cases."""

    def test_unit_dc_gain(self):
        with criterion(9, "unit DC gain, 120 cases"):
            rng = np.random.default_rng(106)
            specs = [
                SpatialSpec.box(int(rng.integers(0, 12))) for _ in range(4)
            ] + [
                SpatialSpec.gaussian_fir(float(rng.uniform(0.5, 8.0))),
                SpatialSpec.gaussian_recursive(float(rng.uniform(0.5, 30.0))),
            ]
            cases = 0
            for spec in specs:
                for _ in range(20):
                    w, h = int(rng.integers(2, 24)), int(rng.integers(2, 24))
                    level = float(rng.uniform(0.0, 255.0))
                    out = smooth_plane(np.full((h, w), level), spec)
                    assert np.max(np.abs(out - level)) < 1e-6
                    cases += 1
            assert cases == 120

    def test_linearity(self):
        with criterion(9, "linearity of all smoothers, 120 cases"):
            rng = np.random.default_rng(107)
            specs = [
                SpatialSpec.box(2),
                SpatialSpec.gaussian_fir(1.5),
                SpatialSpec.gaussian_recursive(2.5),
            ]
            for spec in specs:
                for _ in range(40):
                    f = rng.uniform(0, 255, (10, 11))
                    g = rng.uniform(0, 255, (10, 11))
                    a, b = rng.uniform(-2, 2, 2)
                    lhs = smooth_plane(a * f + b * g, spec)
                    rhs = a * smooth_plane(f, spec) + b * smooth_plane(g, spec)
                    assert np.max(np.abs(lhs - rhs)) < 1e-9

    def test_constant_image_fixed_points(self):
        with criterion(9, "constant images are fixed points, 120 cases"):
            rng = np.random.default_rng(108)
            spec = SpatialSpec.box(2)
            for _ in range(40):
                level = float(rng.uniform(0.0, 255.0))
                w, h = int(rng.integers(3, 16)), int(rng.integers(3, 16))
                img = Image(w, h, 1, np.full((1, h, w), level))
                k = make_trig_kernel(float(rng.uniform(30.0, 220.0)), 255.0)
                p = make_taylor_kernel(80.0, 3)
                for out in (
                    bilateral_trig(img, spec, k),
                    bilateral_poly(img, spec, p),
                    bilateral_direct(img, spec, lambda s: gaussian_eval(80.0, s)),
                ):
                    assert error_stats(out, img).max_abs < 1e-9

    def test_range_preservation(self):
        with criterion(9, "output within input range, 100 cases"):
            rng = np.random.default_rng(109)
            for _ in range(100):
                w, h = int(rng.integers(4, 20)), int(rng.integers(4, 20))
                img = byte_noise(rng, w, h)
                n_deg = int(rng.integers(1, 6))
                k = make_trig_kernel(170.0, 255.0, degree=n_deg)
                out = bilateral_trig(img, SpatialSpec.box(int(rng.integers(1, 4))), k)
                assert out.samples.min() >= img.samples.min() - 1e-6
                assert out.samples.max() <= img.samples.max() + 1e-6

    def test_auxiliary_identity(self):
        with criterion(9, "cos^2 + sin^2 = 1 on auxiliary images, 100 cases"):
            rng = np.random.default_rng(110)
            for _ in range(100):
                plane = rng.integers(0, 256, (6, 6)).astype(float)
                n_deg = int(rng.integers(1, 10))
                k = make_trig_kernel(float(rng.uniform(20, 200)), 255.0, degree=n_deg)
                aux = build_auxiliary_images(plane, k)
                for c, s in zip(aux.cos_images, aux.sin_images):
                    assert np.max(np.abs(c * c + s * s - 1.0)) < 1e-12

    def test_pnm_round_trip(self):
        with criterion(9, "PNM round trip, 100 cases"):
            rng = np.random.default_rng(111)
            for _ in range(100):
                w, h = int(rng.integers(1, 16)), int(rng.integers(1, 16))
                ch = int(rng.choice([1, 3]))
                img = Image(w, h, ch, rng.integers(0, 256, (ch, h, w)).astype(float))
                back = read_pnm(write_pnm(img))
                assert np.array_equal(back.samples, img.samples)

    def test_recursive_matches_fir_reference(self):
        with criterion(9, "recursive Gaussian within 1% of the FIR reference"):
            rng = np.random.default_rng(112)
            for sigma, size in ((2.0, 64), (5.0, 64), (20.0, 128), (50.0, 256)):
                img = byte_noise(rng, size, size)
                st = error_stats(
                    gaussian_recursive(img, sigma), gaussian_fir(img, sigma)
                )
                assert st.max_abs < 0.01 * 255.0

    def test_eta_guard_silent_for_valid_kernels(self):
        with criterion(9, "normalizer guard never fires for valid kernels"):
            rng = np.random.default_rng(113)
            for _ in range(100):
                img = byte_noise(rng, 12, 12)
                n_deg = int(rng.integers(1, 7))
                k = make_trig_kernel(170.0, 255.0, degree=n_deg)
                diag = EngineDiagnostics()
                bilateral_trig(img, SpatialSpec.box(2), k, diagnostics=diag)
                assert diag.guarded_pixels == 0
