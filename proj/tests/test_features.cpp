#include "mdplab/features.hpp"
#include "mdplab/exact.hpp"

#include <gtest/gtest.h>

using namespace mdplab;

namespace {

double max_row_sum_error(const Matrix& m) {
    return (m.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

} // namespace

TEST(Coefficients, AnchorRowsAreIndicators) {
    const auto truth = synthesize_linear_mdp(6, 2, 3, SynthesisMode::anchor(), 5);
    for (int k = 0; k < 3; ++k) {
        const int pair = truth.anchors.indices[static_cast<std::size_t>(k)];
        for (int j = 0; j < 3; ++j)
            EXPECT_EQ(truth.coefficients.lambda(pair, j), j == k ? 1.0 : 0.0);
    }
}

TEST(Coefficients, RecoversConstructedConvexCombination) {
    Matrix phi(3, 2);
    phi << 1.0, 2.0,  //
        -1.0, 0.5,    //
        0.3 * 1.0 + 0.7 * -1.0, 0.3 * 2.0 + 0.7 * 0.5;
    const auto c = compute_coefficients(FeatureMap{phi}, AnchorSet{{0, 1}});
    EXPECT_NEAR(c.lambda(2, 0), 0.3, 1e-12);
    EXPECT_NEAR(c.lambda(2, 1), 0.7, 1e-12);
    EXPECT_TRUE(c.is_convex);
    EXPECT_NEAR(c.regularity, 1.0, 1e-12);
}

TEST(Coefficients, AdversarialRowAtLTwo) {
    const auto truth = adversarial_instance(2, 2.0);
    const int designated = adversarial_designated_pair(2);
    EXPECT_NEAR(truth.coefficients.lambda(designated, 0), 1.5, 1e-12);
    EXPECT_NEAR(truth.coefficients.lambda(designated, 1), -0.5, 1e-12);
    EXPECT_FALSE(truth.coefficients.is_convex);
    EXPECT_NEAR(truth.coefficients.regularity, 2.0, 1e-12);
}

TEST(Coefficients, UnrepresentableRowReportsResidual) {
    // Row 2 is not an affine combination of rows 0 and 1.
    Matrix bad(3, 2);
    bad << 1, 0,  //
        2, 0,     //
        0, 1;
    EXPECT_THROW(compute_coefficients(FeatureMap{bad}, AnchorSet{{0, 1}}), RepresentationError);
}

TEST(Coefficients, RejectsDuplicateAnchors) {
    EXPECT_THROW(compute_coefficients(FeatureMap{Matrix::Identity(3, 2)}, AnchorSet{{0, 0}}),
                 ModelError);
}

TEST(AnchorProperty, TabularCaseHolds) {
    const auto truth = synthesize_linear_mdp(3, 2, 6, SynthesisMode::anchor(), 1);
    const auto report = verify_anchor_property(truth.coefficients);
    EXPECT_TRUE(report.holds);
    EXPECT_NEAR(report.regularity, 1.0, 1e-12);
    EXPECT_TRUE(truth.coefficients.lambda.isApprox(Matrix::Identity(6, 6)));
    EXPECT_LE((truth.mdp.kernel() - truth.anchor_kernel).cwiseAbs().maxCoeff(), 0.0);
}

TEST(AnchorProperty, AdversarialInstanceFails) {
    const auto report = verify_anchor_property(adversarial_instance(3, 2.0).coefficients);
    EXPECT_FALSE(report.holds);
    EXPECT_NEAR(report.worst_negative_entry, -0.5, 1e-12);
}

TEST(AnchorProperty, SoftAggregationHolds) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto truth = synthesize_linear_mdp(12, 3, 5, SynthesisMode::anchor(), seed);
        const auto report = verify_anchor_property(truth.coefficients);
        EXPECT_TRUE(report.holds);
        EXPECT_NEAR(report.regularity, 1.0, 1e-9);
        EXPECT_LE(report.worst_row_sum_error, 1e-9);
    }
}

TEST(Synthesis, KernelRowsSumToOneInBothModes) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto a = synthesize_linear_mdp(15, 3, 4, SynthesisMode::anchor(), seed);
        const auto r = synthesize_linear_mdp(15, 3, 4, SynthesisMode::regular(2.0), seed);
        EXPECT_LE(max_row_sum_error(a.mdp.kernel()), 1e-10);
        EXPECT_LE(max_row_sum_error(r.mdp.kernel()), 1e-10);
        EXPECT_GE(r.mdp.kernel().minCoeff(), 0.0);
        EXPECT_LE(r.coefficients.regularity, 2.0 + 1e-9);
        EXPECT_FALSE(r.coefficients.is_convex);
        EXPECT_LE(a.reconstruction_error(), 1e-10);
        EXPECT_LE(r.reconstruction_error(), 1e-10);
    }
}

TEST(Synthesis, DeterministicGivenSeed) {
    const auto a = synthesize_linear_mdp(10, 2, 3, SynthesisMode::regular(1.5), 42);
    const auto b = synthesize_linear_mdp(10, 2, 3, SynthesisMode::regular(1.5), 42);
    EXPECT_EQ(a.mdp.kernel(), b.mdp.kernel());
    EXPECT_EQ(a.mdp.reward(), b.mdp.reward());
    EXPECT_EQ(a.features.phi, b.features.phi);
    EXPECT_EQ(a.anchors.indices, b.anchors.indices);
}

TEST(Synthesis, RejectsTooManyAnchors) {
    EXPECT_THROW(synthesize_linear_mdp(2, 2, 5, SynthesisMode::anchor(), 0), ModelError);
}

TEST(Adversarial, AnchorRowAtLTwo) {
    const auto truth = adversarial_instance(2, 2.0);
    EXPECT_NEAR(truth.anchor_kernel(0, 0), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(truth.anchor_kernel(0, 1), 2.0 / 3.0, 1e-15);
    EXPECT_EQ(truth.anchor_kernel(0, 2), 0.0);
    EXPECT_EQ(truth.anchor_kernel(1, 0), 1.0);
}

TEST(Adversarial, DesignatedPairNeverReachesFirstState) {
    for (double L : {1.01, 1.5, 2.0, 3.0, 10.0}) {
        const auto truth = adversarial_instance(4, L);
        EXPECT_EQ(truth.mdp.kernel()(adversarial_designated_pair(4), 0), 0.0) << "L=" << L;
        EXPECT_LE(truth.reconstruction_error(), 1e-12);
    }
}

TEST(Adversarial, NearOneIsAlmostConvex) {
    const auto truth = adversarial_instance(2, 1.0 + 1e-12);
    const int designated = adversarial_designated_pair(2);
    EXPECT_NEAR(truth.coefficients.lambda(designated, 0), 1.0, 1e-9);
    EXPECT_NEAR(truth.coefficients.lambda(designated, 1), 0.0, 1e-9);
    EXPECT_TRUE(truth.coefficients.is_convex);
}

TEST(Adversarial, RejectsInvalidParameters) {
    EXPECT_THROW(adversarial_instance(1, 2.0), ModelError);
    EXPECT_THROW(adversarial_instance(2, 1.0), ModelError);
}

TEST(PlantedGaps, OptimalQHasPrescribedStructure) {
    const auto base = synthesize_linear_mdp(20, 4, 5, SynthesisMode::anchor(), 3);
    const GapDesign design{1e-3, 0.05, 0.4};
    const auto truth = plant_action_gaps(base, 11, design);
    EXPECT_EQ(truth.mdp.kernel(), base.mdp.kernel());
    EXPECT_GE(truth.mdp.reward().minCoeff(), 0.0);
    EXPECT_LE(truth.mdp.reward().maxCoeff(), 1.0);
    const Vector q = optimal_q(truth.mdp);
    for (int s = 0; s < 20; ++s) {
        const auto seg = q.segment(s * 4, 4);
        int at_max = 0;
        for (int a = 0; a < 4; ++a) {
            const double gap = seg.maxCoeff() - seg(a);
            if (gap < 1e-9)
                ++at_max;
            else
                EXPECT_TRUE(gap >= 1e-3 - 1e-9 && gap <= 0.05 + 1e-9) << gap;
        }
        EXPECT_EQ(at_max, 1);
    }
}
