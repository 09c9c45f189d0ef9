#pragma once

// Empirical model assembly P_hat = Lambda P_hat_K, proper/pseudo classification,
// and misspecified ground truths P = P_bar + Xi.

#include "mdplab/oracle.hpp"

#include <optional>
#include <string>

namespace mdplab {

enum class Classification { proper, pseudo };

std::string to_string(Classification c);

struct Provenance {
    std::uint64_t seed = 0;
    std::int64_t samples_per_pair = 0;
    AnchorSet anchors;
};

struct EmpiricalModel {
    int num_states = 0;
    int num_actions = 0;
    Matrix kernel_hat;   ///< Lambda * p_hat_K
    Vector reward;
    double gamma = 0.0;
    Classification classification = Classification::proper;
    Provenance provenance;

    // Kept for auxiliary-model constructions.
    Matrix lambda;
    Matrix p_hat_anchor;
    bool lambda_convex = true;

    int num_pairs() const { return num_states * num_actions; }
    PseudoMDP as_pseudo() const;
    /// Throws ModelError when the model is pseudo.
    TabularMDP as_proper(RewardRange range = RewardRange::unbounded) const;
};

EmpiricalModel build_empirical_mdp(const CombinationCoefficients& coeffs,
                                   const EmpiricalAnchorKernel& p_hat_anchor, const Vector& reward,
                                   double gamma, Provenance provenance = {});

/// Samples N draws per anchor from `truth` under `seed` and assembles the model.
EmpiricalModel estimate_model(const LinearGroundTruth& truth, std::int64_t samples_per_pair,
                              std::uint64_t seed, int threads = 1);

/// Same, sampling from an arbitrary true kernel (e.g. a misspecified one) while
/// combining with the coefficients of `structure`.
EmpiricalModel estimate_model(const LinearGroundTruth& structure, const TabularMDP& sampled,
                              std::int64_t samples_per_pair, std::uint64_t seed, int threads = 1);

struct ClassificationReport {
    Classification classification = Classification::proper;
    double min_entry = 0.0;
    int row = 0; ///< state-action pair of the minimum
    int col = 0; ///< next state of the minimum
};

/// proper iff the minimum kernel entry is >= -1e-12.
ClassificationReport classify_kernel(const Matrix& kernel);
ClassificationReport classify_model(const EmpiricalModel& model);

struct MisspecifiedTruth {
    LinearGroundTruth base;
    Matrix perturbation;      ///< Xi, zero row sums
    double xi = 0.0;          ///< achieved max row 1-norm of Xi
    double requested_xi = 0.0;
    std::vector<int> unperturbed_rows; ///< rows left alone for lack of headroom
    TabularMDP mdp;           ///< kernel P_bar + Xi
};

inline constexpr int kMaxPerturbationRetries = 1000;

/// Moves mass xi / 2 within every row of the base kernel from random donor
/// entries to a random recipient, so ||Xi(s,a)||_1 = xi on every perturbed row.
/// Row 1-norm is used throughout (twice the total-variation distance).
MisspecifiedTruth inject_misspecification(const LinearGroundTruth& base, double xi,
                                          std::uint64_t seed);

} // namespace mdplab
