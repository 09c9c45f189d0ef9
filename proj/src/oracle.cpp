#include "mdplab/oracle.hpp"

#include "mdplab/random.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace mdplab {

std::uint64_t anchor_stream_key(std::uint64_t master_seed, int k) {
    return derive_key(master_seed, static_cast<std::uint64_t>(k));
}

std::vector<std::int64_t> sample_row(const Eigen::Ref<const Eigen::RowVectorXd>& distribution,
                                     std::int64_t n, std::uint64_t key) {
    const auto size = static_cast<std::size_t>(distribution.size());
    std::vector<double> cumulative(size);
    double running = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
        running += std::max(0.0, distribution(static_cast<Eigen::Index>(j)));
        cumulative[j] = running;
    }
    std::vector<std::int64_t> counts(size, 0);
    for (std::int64_t i = 0; i < n; ++i) {
        const double target = counter_uniform(key, static_cast<std::uint64_t>(i)) * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
        // Never land on a zero-probability tail.
        while (it != cumulative.begin() && (it == cumulative.end() || *it == *(it - 1)))
            --it;
        ++counts[static_cast<std::size_t>(it - cumulative.begin())];
    }
    return counts;
}

CountTable sample_counts(const TabularMDP& truth, const AnchorSet& anchors, std::int64_t n,
                         const std::vector<std::uint64_t>& keys, int threads) {
    if (n < 1)
        throw ModelError("samples per pair N must be at least 1");
    if (keys.size() != anchors.indices.size())
        throw ModelError("one stream key per anchor is required");
    for (int idx : anchors.indices)
        if (idx < 0 || idx >= truth.num_pairs())
            throw ModelError("anchor index out of range");

    const int k = anchors.size();
    CountTable table;
    table.counts = CountMatrix::Zero(k, truth.num_states());
    table.samples_per_pair = n;
    table.anchors = anchors;

    auto fill = [&](int row) {
        const auto counts = sample_row(truth.kernel().row(anchors.indices[static_cast<std::size_t>(row)]),
                                       n, keys[static_cast<std::size_t>(row)]);
        for (std::size_t j = 0; j < counts.size(); ++j)
            table.counts(row, static_cast<Eigen::Index>(j)) = counts[j];
    };

    const int workers = std::clamp(threads, 1, std::max(1, k));
    if (workers == 1) {
        for (int row = 0; row < k; ++row)
            fill(row);
        return table;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int row = next++; row < k; row = next++)
                fill(row);
        });
    for (auto& t : pool)
        t.join();
    return table;
}

CountTable sample_counts(const TabularMDP& truth, const AnchorSet& anchors, std::int64_t n,
                         std::uint64_t master_seed, int threads) {
    std::vector<std::uint64_t> keys;
    keys.reserve(anchors.indices.size());
    for (int k = 0; k < anchors.size(); ++k)
        keys.push_back(anchor_stream_key(master_seed, k));
    CountTable table = sample_counts(truth, anchors, n, keys, threads);
    table.master_seed = master_seed;
    return table;
}

EmpiricalAnchorKernel empirical_anchor_kernel(const CountTable& table) {
    if (table.samples_per_pair < 1)
        throw ModelError("samples per pair N must be at least 1");
    for (Eigen::Index i = 0; i < table.counts.rows(); ++i) {
        if (table.counts.row(i).minCoeff() < 0)
            throw ModelError("counts must be non-negative");
        if (table.counts.row(i).sum() != table.samples_per_pair)
            throw ModelError("count row " + std::to_string(i) + " does not sum to N");
    }
    return {table.counts.cast<double>() / static_cast<double>(table.samples_per_pair)};
}

} // namespace mdplab
