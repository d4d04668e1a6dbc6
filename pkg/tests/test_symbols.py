import math

import numpy as np
import pytest

from paraell.problems import bilaplace_dirichlet, helmholtz_dirichlet, helmholtz_robin
from paraell.rofunc import Oscillating, Power
from paraell.symbols import (
    Angle,
    BoundaryComponent,
    BoundaryOperator,
    BVProblem,
    DegenerateSplitError,
    DiffExpression,
    EllipticityConfig,
    MultiIndex,
    SymbolError,
    Term,
    admissible_phi,
    check_parameter_ellipticity,
    condition_i_scan,
    condition_ii_scan,
    lopatinskii_matrix,
    problem_from_json,
    problem_to_json,
    root_split,
    smoothness_threshold,
    symbol_A0,
    symbol_B0,
    tau_polynomial_A,
)

X0 = (0.3, 0.0)
NU = (0.0, 1.0)


def test_multi_index():
    mu = MultiIndex((2, 1))
    assert mu.order == 3
    assert mu.monomial(np.array([2.0, 3.0])) == pytest.approx(12.0)
    with pytest.raises(ValueError):
        MultiIndex((-1, 0))
    with pytest.raises(ValueError):
        Term(1, (2, 0), 1.0)


def test_symbol_A0_examples():
    p = helmholtz_robin()
    assert symbol_A0(p, X0, (1, 0), 0) == pytest.approx(-1)
    assert symbol_A0(p, X0, (0, 0), 1j) == pytest.approx(-1)
    assert symbol_A0(p, X0, (1, 0), 1) == pytest.approx(0)


def test_symbol_B0_examples():
    d = helmholtz_dirichlet()
    assert symbol_B0(d, 0, X0, (0.3, -2.0), 1 + 1j, "bottom") == pytest.approx(1)
    r = helmholtz_robin()
    assert symbol_B0(r, 0, X0, (0, 0), 1j, "bottom") == pytest.approx(-1j)
    # xi = tau nu on the bottom edge gives -i tau - lam
    tau = 0.7
    assert symbol_B0(r, 0, X0, (0, tau), 2.0, "bottom") == pytest.approx(-1j * tau - 2.0)
    assert symbol_B0(r, 0, (0.3, 1.0), (0, -tau), 2.0, "top") == pytest.approx(-1j * tau - 2.0)


def test_tau_polynomial_examples():
    p = helmholtz_robin()
    np.testing.assert_allclose(tau_polynomial_A(p, X0, (0, 0), NU, 2j), [-4, 0, -1])
    np.testing.assert_allclose(tau_polynomial_A(p, X0, (1, 0), NU, 2j), [-5, 0, -1])
    for xt, lam in [((0.4, 0), 0.1), ((-2, 0), 3 + 1j)]:
        assert tau_polynomial_A(p, X0, xt, NU, lam)[-1] == pytest.approx(-1)


def test_tau_polynomial_rejects_bad_frame():
    p = helmholtz_robin()
    with pytest.raises(ValueError):
        tau_polynomial_A(p, X0, (0, 1), NU, 1j)
    with pytest.raises(ValueError):
        tau_polynomial_A(p, X0, (1, 0), (0, 2), 1j)


def test_tau_polynomial_leading_coefficient_check():
    # -D1^2 + lam^2 is characteristic in the x2 direction
    interior = DiffExpression(2, (Term(2, (2, 0), -1.0), Term(0, (0, 0), 1.0)))
    dir_op = BoundaryOperator(0, DiffExpression(0, (Term(0, (0, 0), 1.0),)))
    p = BVProblem(1, interior, (BoundaryComponent("bottom", (dir_op,)),))
    with pytest.raises(SymbolError):
        tau_polynomial_A(p, X0, (1, 0), NU, 1j)


def test_root_split_examples():
    r = root_split([-5, 0, -1])
    np.testing.assert_allclose(r.tau_plus, [1j * math.sqrt(5)], atol=1e-14)
    np.testing.assert_allclose(r.tau_minus, [-1j * math.sqrt(5)], atol=1e-14)
    r = root_split([-4, 0, -1])
    np.testing.assert_allclose(r.tau_plus, [2j], atol=1e-14)
    with pytest.raises(DegenerateSplitError):
        root_split([1, 0, -1])


def test_root_split_uneven():
    # (tau - i)(tau - 2i) has both roots above the axis
    with pytest.raises(DegenerateSplitError):
        root_split(np.polynomial.polynomial.polyfromroots([1j, 2j]))


def test_root_split_double_roots_clustered():
    poly = np.polynomial.polynomial.polyfromroots([1j, 1j, -1j, -1j])
    r = root_split(poly)
    np.testing.assert_allclose(r.tau_plus, [1j, 1j], atol=1e-7)
    assert r.q == 2


def test_lopatinskii_examples():
    d = helmholtz_dirichlet()
    L = lopatinskii_matrix(d, X0, (0.5, 0), NU, 1j, "bottom")
    np.testing.assert_allclose(L.C, [[1]])
    assert L.sigma_min == pytest.approx(1)
    r = helmholtz_robin()
    L = lopatinskii_matrix(r, X0, (0, 0), NU, 1j, "bottom")
    np.testing.assert_allclose(L.C, [[1 - 1j]], atol=1e-14)
    assert L.sigma_min == pytest.approx(math.sqrt(2))


def test_robin_failure_witness_on_real_ray():
    # at xi_t = 0 the roots for lam = 1 are real
    r = helmholtz_robin()
    with pytest.raises(DegenerateSplitError):
        lopatinskii_matrix(r, X0, (0, 0), NU, 1.0, "bottom")
    # -i tau+ = lam with tau+ = i lam forces |xi_t|^2 = 2 lam^2: Lopatinskii fails there
    L = lopatinskii_matrix(r, X0, (math.sqrt(2), 0), NU, 1.0, "bottom")
    np.testing.assert_allclose(L.split.tau_plus, [1j], atol=1e-14)
    assert L.sigma_min < 1e-14


def _sphere_min_A(theta, n=20001):
    a = np.linspace(0, np.pi / 2, n)
    lam = np.sin(a) * np.exp(1j * theta)
    return float(np.min(np.abs(lam**2 - np.cos(a) ** 2)))


def test_condition_i_examples():
    p = helmholtz_robin()
    assert condition_i_scan(p, Angle.ray(np.pi / 2)) == pytest.approx(1.0, abs=1e-12)
    assert _sphere_min_A(np.pi / 2) == pytest.approx(1.0)
    assert condition_i_scan(p, Angle.ray(0.0)) < 1e-12
    assert _sphere_min_A(0.0) < 1e-6


def test_condition_ii_robin_matches_oracle():
    # independent oracle: numpy.roots of the Helmholtz tau-polynomial
    p = helmholtz_robin()
    best = np.inf
    for a in np.linspace(0, np.pi / 2, 257):
        for sgn in (1, -1):
            xi, lam = sgn * np.cos(a), 1j * np.sin(a)
            roots = np.roots([-1, 0, lam**2 - xi**2])
            tp = roots[roots.imag > 0][0]
            best = min(best, abs(-1j * tp - lam))
    got = condition_ii_scan(p, Angle.ray(np.pi / 2))
    assert got == pytest.approx(best, rel=1e-10)
    assert got > 0


def test_condition_ii_batch_matches_scalar():
    p = bilaplace_dirichlet()
    K = Angle.ray(0.3)
    best = np.inf
    for a in np.linspace(0, np.pi / 2, 33):
        for sgn in (1, -1):
            for name, nu in (("bottom", (0, 1)), ("top", (0, -1))):
                lam = np.sin(a) * np.exp(0.3j)
                x = (0.0, 0.0 if name == "bottom" else 1.0)
                L = lopatinskii_matrix(p, x, (sgn * np.cos(a), 0), nu, lam, name)
                best = min(best, L.sigma_min)
    got = condition_ii_scan(p, K, EllipticityConfig(sphere_samples=64))
    assert got == pytest.approx(best, rel=1e-8)


def test_condition_ii_dirichlet_is_one():
    assert condition_ii_scan(helmholtz_dirichlet(), Angle.ray(np.pi / 2)) == pytest.approx(1.0, abs=1e-9)


def test_verdicts_robin_example():
    r = check_parameter_ellipticity(helmholtz_robin(), Angle.ray(np.pi / 2))
    assert r.verdict and r.min_symbol_modulus >= 0.9
    r = check_parameter_ellipticity(helmholtz_robin(), Angle.ray(0.0))
    assert not r.verdict
    assert any(w["condition"] == "i" for w in r.worst_points)
    assert r.witnesses
    r = check_parameter_ellipticity(helmholtz_dirichlet(), Angle.ray(np.pi / 2))
    assert r.verdict
    r = check_parameter_ellipticity(helmholtz_robin(), Angle.degrees(-20, 20))
    assert not r.verdict and r.min_symbol_modulus < 1e-6


def test_negative_real_axis_also_fails():
    r = check_parameter_ellipticity(helmholtz_robin(), Angle.ray(np.pi))
    assert not r.verdict


def test_bilaplace_elliptic_on_imaginary_axis():
    r = check_parameter_ellipticity(bilaplace_dirichlet(), Angle.degrees(80, 100))
    assert r.verdict


def test_report_dict_shape():
    d = check_parameter_ellipticity(helmholtz_dirichlet(), Angle.ray(np.pi / 2)).to_dict()
    for key in ("verdict", "minSymbolModulus", "minLopatinskiiSigma", "worstPoints", "samplesUsed"):
        assert key in d


def test_variable_coefficients_sampled():
    # Delta with a varying tangential coefficient stays elliptic on the imaginary axis
    interior = DiffExpression(
        2,
        (
            Term(2, (2, 0), lambda x: -(1.5 + 0.5 * math.sin(x[0]))),
            Term(2, (0, 2), -1.0),
            Term(0, (0, 0), 1.0),
        ),
    )
    base = helmholtz_dirichlet()
    p = BVProblem(1, interior, base.boundary, name="varcoef")
    r = check_parameter_ellipticity(p, Angle.ray(np.pi / 2))
    assert r.verdict
    assert r.samples_used["conditionI"] > 64 * 500
    assert not p.constant


def test_angle_directions():
    K = Angle.degrees(-10.5, 10.5)
    d = K.directions()
    assert d[0] == pytest.approx(math.radians(-10.5)) and d[-1] == pytest.approx(math.radians(10.5))
    assert np.any(np.abs(d) < 1e-15)
    assert Angle.ray(1.0).directions().tolist() == [1.0]
    with pytest.raises(ValueError):
        Angle(1.0, 0.0)
    assert Angle.from_dict(Angle(0.1, 0.2).to_dict()) == Angle(0.1, 0.2)


def test_smoothness_threshold_and_admissibility():
    assert smoothness_threshold(helmholtz_dirichlet()) == 0
    assert smoothness_threshold(helmholtz_robin()) == 0
    op3 = BoundaryOperator(3, DiffExpression(3, (Term(3, (0, 3), 1.0),)))
    p3 = BVProblem(1, helmholtz_robin().interior, (BoundaryComponent("bottom", (op3,)),))
    assert smoothness_threshold(p3) == 1.5
    assert admissible_phi(helmholtz_robin(), Power(0.25))
    assert not admissible_phi(p3, Power(1))
    assert admissible_phi(helmholtz_robin(), Oscillating(1, 0.3))


def test_problem_json_roundtrip_and_schema():
    for p in (helmholtz_robin(), bilaplace_dirichlet()):
        back = problem_from_json(problem_to_json(p))
        assert back.q == p.q and back.name == p.name
        assert symbol_A0(back, X0, (0.3, 0.4), 1j) == pytest.approx(symbol_A0(p, X0, (0.3, 0.4), 1j))
    text = (
        '{"q":1,"interior":[{"r":2,"mu":[2,0],"coeff":[-1,0]},{"r":2,"mu":[0,2],"coeff":[-1,0]},'
        '{"r":0,"mu":[0,0],"coeff":[1,0]}],"boundary":[{"component":"bottom","ops":[{"m":0,'
        '"terms":[{"r":0,"mu":[0,0],"coeff":[1,0]}]}]}]}'
    )
    p = problem_from_json(text)
    assert p.component("bottom").normal == (0.0, 1.0)


def test_problem_validation():
    A = helmholtz_robin().interior
    with pytest.raises(ValueError):
        BVProblem(2, A, ())
    with pytest.raises(ValueError):
        BVProblem(1, A, (BoundaryComponent("bottom", ()),))
    with pytest.raises(ValueError):
        BoundaryComponent("side", ())
