#pragma once

// Generative-model oracle: i.i.d. next-state draws from anchor pairs and the
// count-based estimate of the anchor kernel.

#include "mdplab/features.hpp"

#include <cstdint>
#include <vector>

namespace mdplab {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct CountTable {
    CountMatrix counts; ///< K x |S|; every row sums to samples_per_pair
    std::int64_t samples_per_pair = 0;
    AnchorSet anchors;
    std::uint64_t master_seed = 0;
};

struct EmpiricalAnchorKernel {
    Matrix p_hat; ///< K x |S|, count / N
};

/// Key of the stream that feeds anchor `k` under `master_seed`.
std::uint64_t anchor_stream_key(std::uint64_t master_seed, int k);

/// N i.i.d. draws from `distribution` on stream `key`; draw i uses counter i.
/// Returns per-outcome counts.
std::vector<std::int64_t> sample_row(const Eigen::Ref<const Eigen::RowVectorXd>& distribution,
                                     std::int64_t n, std::uint64_t key);

/// Draws N next states from the true row of every anchor, anchor k on stream
/// anchor_stream_key(master_seed, k). `threads` > 1 spreads anchors over a pool;
/// the result does not depend on it.
CountTable sample_counts(const TabularMDP& truth, const AnchorSet& anchors, std::int64_t n,
                         std::uint64_t master_seed, int threads = 1);

/// Same with explicit per-anchor stream keys.
CountTable sample_counts(const TabularMDP& truth, const AnchorSet& anchors, std::int64_t n,
                         const std::vector<std::uint64_t>& keys, int threads = 1);

/// Entrywise count / N.
EmpiricalAnchorKernel empirical_anchor_kernel(const CountTable& table);

} // namespace mdplab
