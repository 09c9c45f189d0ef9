#include "mdplab/empirical.hpp"

#include "mdplab/random.hpp"

#include <cmath>
#include <numeric>

namespace mdplab {

std::string to_string(Classification c) {
    return c == Classification::proper ? "proper" : "pseudo";
}

PseudoMDP EmpiricalModel::as_pseudo() const {
    return PseudoMDP(num_states, num_actions, kernel_hat, reward, gamma);
}

TabularMDP EmpiricalModel::as_proper(RewardRange range) const {
    if (classification != Classification::proper)
        throw ModelError("empirical model is pseudo; no proper MDP view exists");
    return TabularMDP(num_states, num_actions, kernel_hat, reward, gamma, range);
}

ClassificationReport classify_kernel(const Matrix& kernel) {
    ClassificationReport report;
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    report.min_entry = kernel.minCoeff(&row, &col);
    report.row = static_cast<int>(row);
    report.col = static_cast<int>(col);
    report.classification = report.min_entry >= kNegativityTolerance ? Classification::proper
                                                                     : Classification::pseudo;
    return report;
}

EmpiricalModel estimate_model(const LinearGroundTruth& structure, const TabularMDP& sampled,
                              std::int64_t samples_per_pair, std::uint64_t seed, int threads) {
    const CountTable table =
        sample_counts(sampled, structure.anchors, samples_per_pair, seed, threads);
    return build_empirical_mdp(structure.coefficients, empirical_anchor_kernel(table),
                               sampled.reward(), sampled.gamma(),
                               Provenance{seed, samples_per_pair, structure.anchors});
}

EmpiricalModel estimate_model(const LinearGroundTruth& truth, std::int64_t samples_per_pair,
                              std::uint64_t seed, int threads) {
    return estimate_model(truth, truth.mdp, samples_per_pair, seed, threads);
}

ClassificationReport classify_model(const EmpiricalModel& model) {
    return classify_kernel(model.kernel_hat);
}

EmpiricalModel build_empirical_mdp(const CombinationCoefficients& coeffs,
                                   const EmpiricalAnchorKernel& p_hat_anchor, const Vector& reward,
                                   double gamma, Provenance provenance) {
    const Matrix& lambda = coeffs.lambda;
    const Matrix& p_hat = p_hat_anchor.p_hat;
    if (lambda.cols() != p_hat.rows())
        throw ModelError("coefficient columns must match anchor kernel rows");
    if (p_hat.cols() < 1 || lambda.rows() % p_hat.cols() != 0)
        throw ModelError("pair count must be a multiple of the state count");
    if (reward.size() != lambda.rows())
        throw ModelError("reward length must equal the pair count");

    EmpiricalModel model;
    model.num_states = static_cast<int>(p_hat.cols());
    model.num_actions = static_cast<int>(lambda.rows() / p_hat.cols());
    model.kernel_hat = lambda * p_hat;
    model.reward = reward;
    model.gamma = gamma;
    model.provenance = std::move(provenance);
    model.lambda = lambda;
    model.p_hat_anchor = p_hat;
    model.lambda_convex = coeffs.is_convex;

    // Anchor rows reproduce the anchor estimates bit for bit.
    for (Eigen::Index i = 0; i < lambda.rows(); ++i) {
        for (Eigen::Index k = 0; k < lambda.cols(); ++k) {
            if (lambda(i, k) == 1.0 && lambda.row(i).cwiseAbs().sum() == 1.0) {
                model.kernel_hat.row(i) = p_hat.row(k);
                break;
            }
        }
    }
    model.classification = classify_kernel(model.kernel_hat).classification;
    return model;
}

MisspecifiedTruth inject_misspecification(const LinearGroundTruth& base, double xi,
                                          std::uint64_t seed) {
    if (!(xi >= 0.0 && xi <= 1.0))
        throw ModelError("misspecification xi must lie in [0, 1]");
    const Matrix& kernel = base.mdp.kernel();
    const int rows = static_cast<int>(kernel.rows());
    const int cols = static_cast<int>(kernel.cols());
    const double move = 0.5 * xi;

    Matrix perturbation = Matrix::Zero(rows, cols);
    std::vector<int> skipped;
    RandomStream rng(derive_key(seed, 0x78690000ULL));
    std::vector<int> order(static_cast<std::size_t>(cols));

    for (int i = 0; i < rows && move > 0.0; ++i) {
        bool done = false;
        for (int attempt = 0; attempt < kMaxPerturbationRetries && !done; ++attempt) {
            const int recipient = rng.index(cols);
            if (1.0 - kernel(i, recipient) < move)
                continue;
            std::iota(order.begin(), order.end(), 0);
            rng.shuffle(order);
            double remaining = move;
            for (int j : order) {
                if (j == recipient || remaining <= 0.0)
                    continue;
                const double take = std::min(kernel(i, j), remaining);
                perturbation(i, j) -= take;
                remaining -= take;
            }
            if (remaining > 1e-15) {
                perturbation.row(i).setZero();
                continue;
            }
            perturbation(i, recipient) += move;
            done = true;
        }
        if (!done)
            skipped.push_back(i);
    }

    Matrix perturbed = kernel + perturbation;
    perturbed = perturbed.cwiseMax(0.0);
    MisspecifiedTruth out{
        base,
        perturbation,
        perturbation.cwiseAbs().rowwise().sum().maxCoeff(),
        xi,
        std::move(skipped),
        TabularMDP(base.mdp.num_states(), base.mdp.num_actions(), std::move(perturbed),
                   base.mdp.reward(), base.mdp.gamma()),
    };
    return out;
}

} // namespace mdplab
