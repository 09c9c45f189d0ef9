#include "mdplab/empirical.hpp"
#include "mdplab/exact.hpp"
#include "mdplab/io.hpp"
#include "mdplab/random.hpp"
#include "mdplab/verification.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

using namespace mdplab;

namespace {

Policy random_policy(RandomStream& rng, int ns, int na) {
    Policy p;
    for (int s = 0; s < ns; ++s)
        p.action_of.push_back(rng.index(na));
    return p;
}

/// Empirical model whose anchor estimates equal the true anchor rows.
EmpiricalModel exact_empirical(const LinearGroundTruth& truth) {
    return build_empirical_mdp(truth.coefficients, EmpiricalAnchorKernel{truth.anchor_kernel},
                               truth.mdp.reward(), truth.mdp.gamma(),
                               Provenance{0, 0, truth.anchors});
}

} // namespace

TEST(AuxiliaryMdp, ZeroTiltOnExactEstimateIsEmpiricalModel) {
    const auto truth = synthesize_linear_mdp(10, 2, 4, SynthesisMode::anchor(), 3);
    const auto emp = exact_empirical(truth);
    const int pair = truth.anchors.indices[1];
    const auto aux = build_auxiliary_mdp(emp, truth.mdp.kernel().row(pair), 1, 0.0);
    EXPECT_LE((aux.model.kernel() - emp.kernel_hat).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(aux.model.reward(), emp.reward);
}

TEST(AuxiliaryMdp, TiltChangesOnlyTheAnchorEntryInTabularCase) {
    const auto truth = synthesize_linear_mdp(3, 2, 6, SynthesisMode::anchor(), 4);
    const auto emp = estimate_model(truth, 20, 8);
    const int pair = truth.anchors.indices[2];
    const auto aux = build_auxiliary_mdp(emp, truth.mdp.kernel().row(pair), 2, 0.3);
    const Vector diff = aux.model.reward() - emp.reward;
    for (int i = 0; i < 6; ++i)
        EXPECT_NEAR(diff(i), i == pair ? 0.3 : 0.0, 1e-15);
}

TEST(AuxiliaryMdp, KernelDependsOnlyOnReplacedAnchorRow) {
    const auto truth = synthesize_linear_mdp(12, 2, 4, SynthesisMode::anchor(), 5);
    const auto emp = estimate_model(truth, 30, 9);
    const int pair = truth.anchors.indices[0];
    const auto a = build_auxiliary_mdp(emp, truth.mdp.kernel().row(pair), 0, -2.0);
    const auto b = build_auxiliary_mdp(emp, truth.mdp.kernel().row(pair), 0, 5.0);
    EXPECT_EQ(a.model.kernel(), b.model.kernel());
    Matrix p_tilde = emp.p_hat_anchor;
    p_tilde.row(0) = truth.mdp.kernel().row(pair);
    EXPECT_LE((a.model.kernel() - emp.lambda * p_tilde).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((a.model.kernel().rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-10);
}

TEST(AuxiliaryMdp, RefusesNonConvexCoefficients) {
    const auto truth = adversarial_instance(2, 2.0);
    const auto emp = estimate_model(truth, 100, 1);
    EXPECT_THROW(build_auxiliary_mdp(emp, truth.mdp.kernel().row(truth.anchors.indices[0]), 0, 0.0),
                 ModelError);
}

TEST(ValueIdentity, ExactEstimateHasZeroTilt) {
    const auto truth = synthesize_linear_mdp(10, 3, 4, SynthesisMode::anchor(), 6);
    const auto r = verify_value_identity(exact_empirical(truth), truth.mdp, 2,
                                         Policy{std::vector<int>(10, 1)});
    EXPECT_LE(std::abs(r.u), 1e-14);
    EXPECT_LE(r.residual, 1e-12);
}

TEST(ValueIdentity, RandomAnchorInstances) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        RandomStream rng(seed);
        const auto truth = synthesize_linear_mdp(20, 3, 5, SynthesisMode::anchor(), seed);
        const auto emp = estimate_model(truth, 50, seed + 1);
        const auto r = verify_value_identity(emp, truth.mdp, rng.index(5), random_policy(rng, 20, 3));
        EXPECT_LE(r.residual, 1e-8);
        EXPECT_TRUE(r.u_within_bound);
        const auto opt = verify_optimal_value_identity(emp, truth.mdp, rng.index(5));
        EXPECT_LE(opt.residual, 1e-8);
    }
}

TEST(ValueIdentity, TiltLipschitz) {
    const auto truth = synthesize_linear_mdp(15, 2, 4, SynthesisMode::anchor(), 7);
    const auto emp = estimate_model(truth, 40, 2);
    RandomStream rng(3);
    for (int i = 0; i < 20; ++i) {
        const double u1 = rng.uniform(-10, 10);
        const double u2 = rng.uniform(-10, 10);
        EXPECT_GE(check_tilt_lipschitz(emp, truth.mdp, rng.index(4), random_policy(rng, 15, 2), u1, u2),
                  -1e-9);
    }
}

TEST(ValueIdentity, FiniteHorizonVariant) {
    for (int horizon = 1; horizon <= 5; ++horizon) {
        RandomStream rng(static_cast<std::uint64_t>(horizon));
        const auto truth = synthesize_linear_mdp(8, 2, 3, SynthesisMode::anchor(), 10 + horizon);
        const auto emp = estimate_model(truth, 25, 20 + horizon);
        TimeDependentPolicy pi;
        for (int h = 0; h < horizon; ++h)
            pi.steps.push_back(random_policy(rng, 8, 2));
        const auto r = verify_finite_horizon_identity(emp, truth.mdp, rng.index(3), pi, horizon);
        EXPECT_LE(r.residual, 1e-10);
        EXPECT_LE(r.worst_u_excess, 1e-9);
    }
}

TEST(VarianceJensen, ConstantValuesGiveZeroMargin) {
    const auto truth = synthesize_linear_mdp(10, 2, 4, SynthesisMode::anchor(), 8);
    EXPECT_NEAR(check_variance_jensen(truth, Vector::Constant(10, 3.0)), 0.0, 1e-12);
}

TEST(VarianceJensen, TabularCaseIsEquality) {
    const auto truth = synthesize_linear_mdp(4, 2, 8, SynthesisMode::anchor(), 9);
    RandomStream rng(1);
    Vector v(4);
    for (int i = 0; i < 4; ++i)
        v(i) = rng.uniform(0, 10);
    EXPECT_NEAR(check_variance_jensen(truth, v), 0.0, 1e-12);
}

TEST(VarianceJensen, RandomDrawsHaveNonNegativeMargin) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto truth = synthesize_linear_mdp(12, 3, 4, SynthesisMode::anchor(), seed);
        RandomStream rng(seed);
        Vector v(12);
        for (int i = 0; i < 12; ++i)
            v(i) = rng.uniform(0, 10);
        EXPECT_GE(check_variance_jensen(truth, v), -1e-9);
    }
}

TEST(VarianceJensen, RefusesNonConvexCoefficients) {
    EXPECT_THROW(check_variance_jensen(adversarial_instance(2, 2.0), Vector::Zero(3)), ModelError);
}

TEST(TotalVariance, DeterministicKernelHasFullSlack) {
    Matrix kernel(4, 2);
    kernel << 0, 1,  //
        1, 0,        //
        1, 0,        //
        0, 1;
    const TabularMDP m(2, 2, kernel, Vector{{0.1, 0.9, 0.4, 0.2}}, 0.9);
    EXPECT_NEAR(check_total_variance_bound(m, Policy{{1, 0}}), std::sqrt(2.0 / std::pow(0.1, 3)),
                1e-9);
}

TEST(TotalVariance, RandomTenStateInstanceAtNinety) {
    const auto truth = synthesize_linear_mdp(10, 3, 10, SynthesisMode::anchor(), 12);
    const double slack = check_total_variance_bound(truth.mdp, Policy{std::vector<int>(10, 0)});
    EXPECT_GE(slack, -1e-9);
    EXPECT_LE(std::sqrt(2000.0) - slack, std::sqrt(2000.0) + 1e-9);
}

TEST(PluginDecomposition, HoldsOnEmpiricalModels) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto truth = synthesize_linear_mdp(15, 3, 5, SynthesisMode::anchor(), seed);
        const TabularMDP hat = estimate_model(truth, 60, seed).as_proper();
        const auto pi = solve_optimal(hat, 1e-6).policy;
        EXPECT_GE(check_plugin_decomposition(truth.mdp, hat, pi, 1e-6).slack(), -1e-9);
    }
}

TEST(PseudoViDecomposition, HoldsOnRegularInstances) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto truth = synthesize_linear_mdp(10, 2, 4, SynthesisMode::regular(2.0), seed);
        const auto emp = estimate_model(truth, 100, seed);
        const auto r = check_pseudo_vi_decomposition(truth, emp, 30);
        EXPECT_GE(r.slack(), -1e-9);
        EXPECT_GE(r.lhs, 0.0);
    }
}

TEST(Counterexample, ClosedFormsAtHalf) {
    const auto r = pseudo_counterexample(0.5);
    ASSERT_FALSE(r.singular);
    EXPECT_NEAR(r.values[0](0), 4.0 / 3.0, 1e-10);
    EXPECT_NEAR(r.values[0](1), 2.0 / 3.0, 1e-10);
    EXPECT_NEAR(r.values[3](1), 1.0 / (0.1 * 0.25 - 1.1 * 0.5 + 1.0), 1e-10);
    EXPECT_LE(r.closed_form_residual, 1e-10);
    EXPECT_FALSE(r.uniformly_optimal_exists);
}

TEST(Counterexample, NoUniformOptimumBelowBoundary) {
    for (double g : {0.3, 0.6, 0.9}) {
        const auto r = pseudo_counterexample(g);
        ASSERT_FALSE(r.singular);
        EXPECT_FALSE(r.uniformly_optimal_exists) << g;
        EXPECT_NE(r.per_state_argmax[0], r.per_state_argmax[1]);
    }
}

TEST(Counterexample, KernelRowsSumToOne) {
    const PseudoMDP m = counterexample_model(0.7);
    EXPECT_EQ(m.kernel()(3, 0) + m.kernel()(3, 1), 1.0);
}

TEST(Counterexample, RejectsGammaOutsideRange) {
    EXPECT_THROW(pseudo_counterexample(1.0), ModelError);
}

TEST(Suite, PassesAndIsDeterministic) {
    const auto a = run_verification_suite({});
    const auto b = run_verification_suite({});
    EXPECT_TRUE(a.passed());
    EXPECT_EQ(a.to_json(), b.to_json());
    for (const auto& c : a.checks)
        EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
}

TEST(Suite, CorruptedFixtureFailsWithNamedInvariant) {
    const auto dir = std::filesystem::temp_directory_path() / "mdplab_fixture_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "corrupt.json").string();
    Json doc = to_json(counterexample_proper_variant(0.5));
    doc["kernel"][0] = Json::array({0.0, 0.9});
    write_json_file(path, doc);

    VerificationOptions options;
    options.fixture_files = {path};
    const auto report = run_verification_suite(options);
    EXPECT_FALSE(report.passed());
    const auto& last = report.checks.back();
    EXPECT_EQ(last.name, "fixture:" + path);
    EXPECT_FALSE(last.passed);
    EXPECT_NE(last.detail.find("kernel_row_sums"), std::string::npos) << last.detail;
}
