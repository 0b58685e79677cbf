"""Tests for the yield criteria and the convex-analysis primitives.

Oracles are independent of the closed forms: a scalar bisection along the
flow for the closest-point projection, central differences for gradients,
and random admissible points for maximum dissipation and convexity.
"""
import numpy as np
import pytest
from scipy.optimize import bisect

from criteria import (
    CombinedCriterion,
    CriterionFactory,
    CriterionKind,
    FlowResult,
    GeneralizedStress,
    InvalidParameterError,
    IsotropicCriterion,
    KinematicCriterion,
    NonDifferentiablePointError,
    PerfectCriterion,
    corrected_stress,
    dissipation,
    evaluate_yield,
    kkt_check,
    pairing,
    project_return_map,
    viscoplastic_flow,
    viscoplastic_return_map,
    yield_gradient,
)

# ===== test parameters =====
SIGMA_Y0 = 30.0
E_MOD = 30.0
K_MOD = 50.0
H_MOD = 35.0
TOL = 1e-9
N_RANDOM = 10_000
N_ORACLE = 1_000

MECHANICAL_KINDS = [CriterionKind.PERFECT, CriterionKind.ISOTROPIC,
                    CriterionKind.KINEMATIC, CriterionKind.COMBINED]


def _crit(kind, sigma_Y0=SIGMA_Y0, omega=0.0, T0=300.0):
    return CriterionFactory.create_criterion(kind, sigma_Y0, omega=omega, T0=T0)


def _random_trial(rng, kind):
    """Random trial state, moduli and criterion over the full parameter domain."""
    crit = _crit(kind, sigma_Y0=rng.uniform(1.0, 50.0))
    z = GeneralizedStress(
        sigma=rng.uniform(-100.0, 100.0),
        beta_i=rng.uniform(-100.0, 100.0) if kind.uses_isotropic else 0.0,
        beta_k=rng.uniform(-100.0, 100.0) if kind.uses_kinematic else 0.0,
    )
    E = rng.uniform(1.0, 100.0)
    K = rng.uniform(0.0, 100.0) if kind.uses_isotropic else 0.0
    H = rng.uniform(0.0, 100.0) if kind.uses_kinematic else 0.0
    return crit, z, E, K, H


def _random_admissible(rng, crit, kind):
    """A random point with f <= 0: relative stress inside the current radius."""
    beta_i = rng.uniform(-100.0, crit.yield_stress()) if kind.uses_isotropic else 0.0
    beta_k = rng.uniform(-100.0, 100.0) if kind.uses_kinematic else 0.0
    radius = crit.yield_stress() - beta_i
    sigma = beta_k + rng.uniform(-1.0, 1.0) * radius
    return GeneralizedStress(sigma, beta_i, beta_k)


def _bisection_multiplier(crit, z_trial, E, K, H):
    """Multiplier at which f vanishes along the inverse-moduli-weighted flow path.

    Past the kink the relative stress stays pinned at zero and only beta_i moves.
    """
    gradient = crit.gradient(z_trial)

    def f_along(lam):
        flow = FlowResult.along(lam, gradient)
        return crit.evaluate(corrected_stress(z_trial, flow, E, K, H))

    def f_pinned(lam):
        return z_trial.beta_i - K * lam - crit.yield_stress()

    upper = crit.kink_distance(z_trial, gradient, E, H)
    if f_along(upper) <= 0.0:
        return bisect(f_along, 0.0, upper, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)
    return bisect(f_pinned, upper, upper + z_trial.beta_i / K,
                  xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=500)


# ================================================================
# evaluate_yield
# ================================================================

class TestEvaluateYield:

    def test_perfect_origin_is_interior(self):
        assert evaluate_yield(PerfectCriterion(SIGMA_Y0), GeneralizedStress(0.0)) == -30.0

    def test_isotropic_hand_value(self):
        z = GeneralizedStress(sigma=40.0, beta_i=-6.25)
        assert evaluate_yield(IsotropicCriterion(SIGMA_Y0), z) == pytest.approx(3.75, abs=1e-12)

    def test_kinematic_on_surface(self):
        z = GeneralizedStress(sigma=35.38461538461539, beta_k=5.384615384615385)
        assert evaluate_yield(KinematicCriterion(SIGMA_Y0), z) == pytest.approx(0.0, abs=1e-9)

    @pytest.mark.parametrize("kind", list(CriterionKind))
    def test_scalar_form_matches_evaluate(self, kind):
        rng = np.random.default_rng(3)
        crit = _crit(kind, omega=0.001)
        T = 310.0 if kind.is_thermo else None
        f = crit.scalar_form(T)
        for _ in range(200):
            sigma, beta_i, beta_k = (float(x) for x in rng.uniform(-100.0, 100.0, size=3))
            assert f(sigma, beta_i, beta_k) == crit.evaluate(GeneralizedStress(sigma, beta_i, beta_k, T))

    def test_thermo_softening_law(self):
        crit = _crit(CriterionKind.THERMO_PERFECT, omega=0.001, T0=300.0)
        z = GeneralizedStress(sigma=0.0, T=400.0)
        assert evaluate_yield(crit, z) == pytest.approx(-30.0 * 0.9)

    def test_collapsed_surface_raises(self):
        crit = _crit(CriterionKind.THERMO_PERFECT, omega=0.01, T0=300.0)
        with pytest.raises(InvalidParameterError, match="collapsed"):
            evaluate_yield(crit, GeneralizedStress(sigma=0.0, T=400.0))

    def test_thermo_needs_temperature(self):
        crit = _crit(CriterionKind.THERMO_ISOTROPIC, omega=0.001)
        with pytest.raises(InvalidParameterError):
            evaluate_yield(crit, GeneralizedStress(sigma=1.0))

    @pytest.mark.parametrize("kind", MECHANICAL_KINDS)
    def test_fresh_origin_strictly_negative(self, kind):
        assert evaluate_yield(_crit(kind), GeneralizedStress(0.0)) < 0.0

    @pytest.mark.parametrize("kind", MECHANICAL_KINDS)
    def test_admissible_set_is_convex(self, kind):
        rng = np.random.default_rng(7)
        crit = _crit(kind)
        for _ in range(500):
            a = _random_admissible(rng, crit, kind)
            b = _random_admissible(rng, crit, kind)
            w = rng.uniform()
            mix = GeneralizedStress(w * a.sigma + (1 - w) * b.sigma,
                                    w * a.beta_i + (1 - w) * b.beta_i,
                                    w * a.beta_k + (1 - w) * b.beta_k)
            assert crit.evaluate(mix) <= 1e-12


# ================================================================
# yield_gradient
# ================================================================

class TestYieldGradient:

    def test_perfect(self):
        assert tuple(yield_gradient(PerfectCriterion(SIGMA_Y0), GeneralizedStress(40.0))) == (1, 0, 0, 0)

    def test_isotropic_negative_branch(self):
        g = yield_gradient(IsotropicCriterion(SIGMA_Y0), GeneralizedStress(-40.0, beta_i=-1.0))
        assert tuple(g) == (-1, 1, 0, 0)

    def test_kinematic(self):
        g = yield_gradient(KinematicCriterion(SIGMA_Y0), GeneralizedStress(40.0, beta_k=0.0))
        assert tuple(g) == (1, 0, -1, 0)

    def test_combined(self):
        g = yield_gradient(CombinedCriterion(SIGMA_Y0), GeneralizedStress(-40.0, -2.0, 3.0))
        assert tuple(g) == (-1, 1, 1, 0)

    def test_thermo_temperature_derivative(self):
        crit = _crit(CriterionKind.THERMO_PERFECT, omega=0.001)
        g = yield_gradient(crit, GeneralizedStress(40.0, T=300.0))
        assert g.d_T == pytest.approx(0.03)

    def test_kink_raises(self):
        with pytest.raises(NonDifferentiablePointError):
            yield_gradient(KinematicCriterion(SIGMA_Y0), GeneralizedStress(5.0, beta_k=5.0))

    @pytest.mark.parametrize("kind", list(CriterionKind))
    def test_matches_central_differences(self, kind):
        rng = np.random.default_rng(11)
        crit = _crit(kind, omega=0.001)
        h = 1e-3
        checked = 0
        while checked < 200:
            z = GeneralizedStress(rng.uniform(-100, 100), rng.uniform(-100, 0),
                                  rng.uniform(-100, 100), 300.0 if kind.is_thermo else None)
            if abs(crit.relative_stress(z)) < 1.0:
                continue
            g = crit.gradient(z)
            numeric = []
            for field_name in ("sigma", "beta_i", "beta_k", "T"):
                if field_name == "T" and not kind.is_thermo:
                    numeric.append(0.0)
                    continue
                plus = GeneralizedStress(**{**z.__dict__, field_name: getattr(z, field_name) + h})
                minus = GeneralizedStress(**{**z.__dict__, field_name: getattr(z, field_name) - h})
                numeric.append((crit.evaluate(plus) - crit.evaluate(minus)) / (2 * h))
            np.testing.assert_allclose(tuple(g), numeric, rtol=1e-6, atol=1e-6)
            checked += 1


# ================================================================
# project_return_map
# ================================================================

class TestProjectReturnMap:

    def test_perfect_example(self):
        flow, z_post = project_return_map(PerfectCriterion(SIGMA_Y0), GeneralizedStress(40.0), E_MOD)
        assert flow.lam == pytest.approx(1 / 3)
        assert z_post.sigma == pytest.approx(30.0)

    def test_admissible_trial_unchanged(self):
        z = GeneralizedStress(10.0)
        flow, z_post = project_return_map(PerfectCriterion(SIGMA_Y0), z, E_MOD)
        assert flow.lam == 0.0
        assert z_post == z

    def test_isotropic_example(self):
        flow, z_post = project_return_map(IsotropicCriterion(SIGMA_Y0), GeneralizedStress(40.0),
                                          E_MOD, K=K_MOD)
        assert flow.lam == pytest.approx(0.125)
        assert z_post.sigma == pytest.approx(36.25)
        assert z_post.beta_i == pytest.approx(-6.25)

    def test_kinematic_example(self):
        flow, z_post = project_return_map(KinematicCriterion(SIGMA_Y0), GeneralizedStress(40.0),
                                          E_MOD, H=H_MOD)
        assert flow.lam == pytest.approx(10 / 65)
        assert z_post.sigma == pytest.approx(35.384615384615, abs=1e-9)
        assert z_post.beta_k == pytest.approx(5.384615384615, abs=1e-9)
        assert flow.d_xi_k == pytest.approx(-10 / 65)

    def test_negative_moduli_rejected(self):
        with pytest.raises(InvalidParameterError):
            project_return_map(PerfectCriterion(SIGMA_Y0), GeneralizedStress(40.0), -1.0)

    def test_apex_return_isotropic_example(self):
        # beta_i > sigma_Y: the surface has shrunk past |sigma|, so the return ends on the apex
        crit = IsotropicCriterion(SIGMA_Y0)
        flow, z_post = project_return_map(crit, GeneralizedStress(sigma=1.0, beta_i=40.0), E_MOD, K=K_MOD)
        assert flow.lam == pytest.approx(0.2)
        assert flow.dir_eps_p == pytest.approx(1 / 6)
        assert flow.dir_xi_i == 1.0
        assert z_post.sigma == pytest.approx(0.0, abs=1e-12)
        assert z_post.beta_i == pytest.approx(30.0)
        assert kkt_check(crit, z_post, flow, TOL)

    def test_apex_return_combined_example(self):
        crit = CombinedCriterion(SIGMA_Y0)
        z = GeneralizedStress(sigma=10.0, beta_i=40.0, beta_k=2.0)
        flow, z_post = project_return_map(crit, z, E_MOD, K=K_MOD, H=20.0)
        assert flow.lam == pytest.approx(0.2)
        assert flow.dir_eps_p == pytest.approx(0.8)
        assert flow.dir_xi_k == pytest.approx(-0.8)
        assert z_post.sigma == pytest.approx(5.2)
        assert z_post.beta_k == pytest.approx(5.2)
        assert crit.evaluate(z_post) == pytest.approx(0.0, abs=1e-12)

    def test_apex_on_the_kink(self):
        crit = IsotropicCriterion(SIGMA_Y0)
        flow, z_post = project_return_map(crit, GeneralizedStress(sigma=0.0, beta_i=35.0), E_MOD, K=K_MOD)
        assert flow.lam == pytest.approx(0.1)
        assert flow.dir_eps_p == 0.0
        assert z_post.beta_i == pytest.approx(30.0)

    def test_apex_without_isotropic_modulus_raises(self):
        # K = 0 cannot lower beta_i, so no admissible state is reachable
        z = GeneralizedStress(sigma=1.0, beta_i=40.0)
        with pytest.raises(NonDifferentiablePointError, match="apex"):
            project_return_map(IsotropicCriterion(SIGMA_Y0), z, E_MOD, K=0.0)

    @pytest.mark.parametrize("kind", [CriterionKind.ISOTROPIC, CriterionKind.COMBINED])
    def test_positive_beta_i_never_raises(self, kind):
        rng = np.random.default_rng(7)
        for _ in range(2_500):
            crit = _crit(kind, sigma_Y0=rng.uniform(1.0, 50.0))
            z = GeneralizedStress(rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0),
                                  rng.uniform(-100.0, 100.0) if kind.uses_kinematic else 0.0)
            E = rng.uniform(1.0, 100.0)
            K = rng.uniform(0.01, 100.0)
            H = rng.uniform(0.0, 100.0) if kind.uses_kinematic else 0.0
            flow, z_post = project_return_map(crit, z, E, K, H, TOL)
            assert abs(flow.dir_eps_p) <= 1.0 + 1e-12
            assert crit.evaluate(z_post) <= TOL

    @pytest.mark.parametrize("kind", MECHANICAL_KINDS)
    def test_kkt_holds_for_random_trials(self, kind):
        rng = np.random.default_rng(2024)
        for _ in range(N_RANDOM // len(MECHANICAL_KINDS)):
            crit, z, E, K, H = _random_trial(rng, kind)
            flow, z_post = project_return_map(crit, z, E, K, H, TOL)
            report = kkt_check(crit, z_post, flow, TOL * max(1.0, flow.lam))
            assert report, report.violations

    @pytest.mark.parametrize("kind", MECHANICAL_KINDS)
    def test_closed_form_matches_bisection_oracle(self, kind):
        rng = np.random.default_rng(99)
        checked = 0
        while checked < N_ORACLE // len(MECHANICAL_KINDS):
            crit, z, E, K, H = _random_trial(rng, kind)
            if crit.evaluate(z) <= TOL:
                continue
            flow, _ = project_return_map(crit, z, E, K, H, TOL)
            assert abs(flow.lam - _bisection_multiplier(crit, z, E, K, H)) <= 1e-10 * max(1.0, flow.lam)
            checked += 1

    @pytest.mark.parametrize("kind", MECHANICAL_KINDS)
    def test_idempotent(self, kind):
        rng = np.random.default_rng(5)
        for _ in range(500):
            crit, z, E, K, H = _random_trial(rng, kind)
            _, z_post = project_return_map(crit, z, E, K, H, TOL)
            flow2, z_post2 = project_return_map(crit, z_post, E, K, H, TOL)
            assert flow2.lam == 0.0
            assert z_post2 == z_post

    @pytest.mark.parametrize("kind", MECHANICAL_KINDS)
    def test_maximum_dissipation(self, kind):
        rng = np.random.default_rng(31)
        checked = 0
        while checked < N_ORACLE // len(MECHANICAL_KINDS):
            crit, z, E, K, H = _random_trial(rng, kind)
            flow, z_post = project_return_map(crit, z, E, K, H, TOL)
            if flow.lam == 0.0:
                continue
            best = pairing(z_post, flow)
            for _ in range(20):
                z_other = _random_admissible(rng, crit, kind)
                assert best - pairing(z_other, flow) >= -1e-9 * max(1.0, flow.lam)
            checked += 1


# ================================================================
# dissipation
# ================================================================

class TestDissipation:

    def test_perfect_example(self):
        flow = FlowResult(lam=1 / 3, dir_eps_p=1.0)
        assert dissipation(PerfectCriterion(SIGMA_Y0), GeneralizedStress(30.0), flow) == pytest.approx(10.0)

    def test_no_flow_no_dissipation(self):
        assert dissipation(KinematicCriterion(SIGMA_Y0), GeneralizedStress(5.0), FlowResult.none()) == 0.0

    def test_isotropic_example(self):
        z = GeneralizedStress(36.25, beta_i=-6.25)
        flow = FlowResult(lam=0.125, dir_eps_p=1.0, dir_xi_i=1.0)
        assert dissipation(IsotropicCriterion(SIGMA_Y0), z, flow) == pytest.approx(3.75)

    def test_inadmissible_stress_rejected(self):
        flow = FlowResult(lam=0.1, dir_eps_p=1.0)
        with pytest.raises(InvalidParameterError):
            dissipation(PerfectCriterion(SIGMA_Y0), GeneralizedStress(40.0), flow)

    @pytest.mark.parametrize("kind", MECHANICAL_KINDS)
    def test_equals_lam_sigma_Y_after_return(self, kind):
        rng = np.random.default_rng(17)
        for _ in range(300):
            crit, z, E, K, H = _random_trial(rng, kind)
            flow, z_post = project_return_map(crit, z, E, K, H, TOL)
            value = dissipation(crit, z_post, flow, TOL)
            assert value >= 0.0
            assert value == pytest.approx(flow.lam * crit.sigma_Y0, rel=1e-12, abs=1e-9)


# ================================================================
# viscoplastic_flow
# ================================================================

class TestViscoplasticFlow:

    def test_interior_has_no_rate(self):
        crit = PerfectCriterion(SIGMA_Y0)
        assert viscoplastic_flow(crit, GeneralizedStress(25.0), eta=3.0, E=E_MOD).lam == 0.0

    def test_rate_is_overstress_over_eta(self):
        flow = viscoplastic_flow(PerfectCriterion(SIGMA_Y0), GeneralizedStress(40.0), eta=1.0, E=E_MOD)
        assert flow.lam == pytest.approx(10.0)
        assert flow.dir_eps_p == 1.0

    def test_nonpositive_eta_rejected(self):
        with pytest.raises(InvalidParameterError):
            viscoplastic_flow(PerfectCriterion(SIGMA_Y0), GeneralizedStress(40.0), eta=0.0, E=E_MOD)

    def test_implicit_step_leaves_overstress(self):
        crit = IsotropicCriterion(SIGMA_Y0)
        flow, z_post = viscoplastic_return_map(crit, GeneralizedStress(40.0), eta=0.5, dt=0.1,
                                               E=E_MOD, K=K_MOD)
        assert crit.evaluate(z_post) == pytest.approx(0.5 * flow.lam / 0.1)

    @pytest.mark.parametrize("kind", MECHANICAL_KINDS)
    def test_converges_to_return_map(self, kind):
        z = GeneralizedStress(40.0, beta_i=-2.0 if kind.uses_isotropic else 0.0,
                              beta_k=3.0 if kind.uses_kinematic else 0.0)
        crit = _crit(kind)
        K = K_MOD if kind.uses_isotropic else 0.0
        H = H_MOD if kind.uses_kinematic else 0.0
        exact, _ = project_return_map(crit, z, E_MOD, K, H)
        errors = []
        for eta in (1e-1, 1e-2, 1e-3):
            flow = viscoplastic_flow(crit, z, eta, E_MOD, K, H, dt=1e-2)
            errors.append(abs(flow.lam - exact.lam))
        assert errors[0] > errors[1] > errors[2]
        # O(eta): each decade of eta buys about a decade of error
        assert errors[1] / errors[2] == pytest.approx(10.0, rel=0.2)


# ================================================================
# kkt_check
# ================================================================

class TestKKTCheck:

    def test_elastic_branch(self):
        assert kkt_check(PerfectCriterion(SIGMA_Y0), GeneralizedStress(0.0), FlowResult.none())

    def test_after_return(self):
        flow, z_post = project_return_map(PerfectCriterion(SIGMA_Y0), GeneralizedStress(40.0), E_MOD)
        assert kkt_check(PerfectCriterion(SIGMA_Y0), z_post, flow)

    def test_complementarity_violation_reported(self):
        report = kkt_check(PerfectCriterion(SIGMA_Y0), GeneralizedStress(28.0),
                           FlowResult(lam=0.1, dir_eps_p=1.0))
        assert not report
        assert report.residuals["complementarity"] == pytest.approx(0.2)
        assert any(v.startswith("complementarity") for v in report.violations)

    def test_negative_multiplier_reported(self):
        report = kkt_check(PerfectCriterion(SIGMA_Y0), GeneralizedStress(30.0), FlowResult(lam=-1e-3))
        assert not report
        assert "multiplier" in report.violations[0]


# ================================================================
# factory
# ================================================================

class TestCriterionFactory:

    def test_thermo_kind_gets_thermal_criterion(self):
        crit = CriterionFactory.create_criterion("thermo_kinematic", 10.0, omega=0.002)
        assert isinstance(crit, KinematicCriterion)
        assert crit.kind is CriterionKind.THERMO_KINEMATIC
        assert crit.d_f_dT() == pytest.approx(0.02)

    def test_mechanical_kind_ignores_omega(self):
        assert CriterionFactory.create_criterion("perfect", 10.0, omega=0.5).d_f_dT() == 0.0

    def test_unknown_kind(self):
        with pytest.raises(InvalidParameterError, match="Available"):
            CriterionFactory.create_criterion("drucker_prager", 10.0)

    def test_available_kinds(self):
        assert set(CriterionFactory.get_available_kinds()) == {k.value for k in CriterionKind}

    def test_invalid_sigma_Y0(self):
        with pytest.raises(InvalidParameterError):
            PerfectCriterion(0.0)
