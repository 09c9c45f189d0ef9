#pragma once

// Feature factorization P = Lambda P_K: combination coefficients over an anchor
// set, regularity diagnostics, and ground-truth instance synthesis.

#include "mdplab/mdp.hpp"

#include <cstdint>
#include <vector>

namespace mdplab {

/// Row phi(s,a) per state-action pair: |S||A| x K.
struct FeatureMap {
    Matrix phi;
    int dimension() const { return static_cast<int>(phi.cols()); }
};

/// K distinct state-action pair indices.
struct AnchorSet {
    std::vector<int> indices;
    int size() const { return static_cast<int>(indices.size()); }
};

inline constexpr double kCoefficientTolerance = 1e-9;
inline constexpr double kRepresentationTolerance = 1e-8;

struct CombinationCoefficients {
    Matrix lambda;          ///< |S||A| x K, row lambda^{s,a}
    double regularity = 1.0; ///< L = max row 1-norm
    bool is_convex = true;   ///< L <= 1 + 1e-9

    /// Column of Lambda for anchor k.
    Vector column(int k) const { return lambda.col(k); }
};

/// Solves phi(s,a) = sum_k lambda_k phi(s_k, a_k) with sum_k lambda_k = 1 for every
/// pair. Picks the minimum-norm solution, or a non-negative one when the system
/// is underdetermined and such a solution exists. Anchor rows are exact indicators.
/// Throws RepresentationError when some row cannot be represented.
CombinationCoefficients compute_coefficients(const FeatureMap& features, const AnchorSet& anchors);

struct AnchorPropertyReport {
    bool holds = false;
    double worst_negative_entry = 0.0; ///< min(0, min lambda)
    double worst_row_sum_error = 0.0;
    double regularity = 1.0;
};

AnchorPropertyReport verify_anchor_property(const CombinationCoefficients& coeffs);

struct LinearGroundTruth {
    TabularMDP mdp;
    FeatureMap features;
    AnchorSet anchors;
    Matrix anchor_kernel; ///< K x |S|, rows of the kernel at the anchors
    CombinationCoefficients coefficients;

    /// Validates shapes and that anchor_kernel matches the kernel at the anchors;
    /// computes the coefficients.
    LinearGroundTruth(TabularMDP mdp, FeatureMap features, AnchorSet anchors);

    /// max |P - Lambda P_K| entrywise.
    double reconstruction_error() const;
};

struct SynthesisMode {
    enum class Kind { anchor, regular };
    Kind kind = Kind::anchor;
    double regularity = 1.0;

    static SynthesisMode anchor() { return {}; }
    static SynthesisMode regular(double bound) { return {Kind::regular, bound}; }
};

inline constexpr int kMaxSynthesisRetries = 10'000;

/// Random linear MDP with K anchors. Anchor mode draws convex coefficient rows;
/// regular(L) mode draws signed rows with 1-norm at most L, pulled toward a convex
/// row just far enough that the kernel stays non-negative. Rewards are uniform on
/// [0, 1]. Deterministic given `seed`.
LinearGroundTruth synthesize_linear_mdp(int num_states, int num_actions, int num_anchors,
                                        SynthesisMode mode, std::uint64_t seed,
                                        double gamma = 0.9);

/// The two-anchor construction on which the estimated kernel goes negative with
/// constant probability: |S| = K + 1, |A| = 2, anchors (k, k mod 2), and one
/// designated pair (see adversarial_designated_pair) with coefficients
/// ((1 + L) / 2, (1 - L) / 2, 0, ...).
LinearGroundTruth adversarial_instance(int num_anchors, double regularity, double gamma = 0.9);

struct GapDesign {
    double min_gap = 1e-4;      ///< action gaps are log-uniform on [min_gap, max_gap]
    double max_gap = 0.1;
    double value_spread = 0.4;  ///< V* ranges over c + [0, value_spread]
};

/// Replaces the reward so that Q*(s,a) = V*(s) - gap(s,a) holds exactly, with a
/// random optimal action per state, V* drawn on c + [0, value_spread] where
/// c (1 - gamma) = 0.5, and log-uniform gaps on the other actions. The kernel,
/// features and anchors are kept. Throws ModelError when a reward leaves [0, 1].
LinearGroundTruth plant_action_gaps(const LinearGroundTruth& truth, std::uint64_t seed,
                                    GapDesign design = {});

/// Index of the designated non-anchor pair of adversarial_instance(num_anchors, .).
int adversarial_designated_pair(int num_anchors);

} // namespace mdplab
