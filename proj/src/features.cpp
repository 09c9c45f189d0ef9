#include "mdplab/features.hpp"

#include "mdplab/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mdplab {

namespace {

/// Lawson-Hanson non-negative least squares: min ||A x - b|| s.t. x >= 0.
Vector nnls(const Matrix& a, const Vector& b) {
    const Eigen::Index n = a.cols();
    Vector x = Vector::Zero(n);
    std::vector<bool> passive(static_cast<std::size_t>(n), false);
    const double tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());

    auto solve_passive = [&](Vector& z) {
        std::vector<Eigen::Index> cols;
        for (Eigen::Index j = 0; j < n; ++j)
            if (passive[static_cast<std::size_t>(j)])
                cols.push_back(j);
        Matrix sub(a.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k)
            sub.col(static_cast<Eigen::Index>(k)) = a.col(cols[k]);
        const Vector sol = sub.completeOrthogonalDecomposition().solve(b);
        z.setZero(n);
        for (std::size_t k = 0; k < cols.size(); ++k)
            z(cols[k]) = sol(static_cast<Eigen::Index>(k));
    };

    for (int outer = 0; outer < 3 * static_cast<int>(n) + 10; ++outer) {
        const Vector w = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double best_w = tol;
        for (Eigen::Index j = 0; j < n; ++j)
            if (!passive[static_cast<std::size_t>(j)] && w(j) > best_w) {
                best = j;
                best_w = w(j);
            }
        if (best < 0)
            break;
        passive[static_cast<std::size_t>(best)] = true;

        Vector z;
        for (int inner = 0; inner < 3 * static_cast<int>(n) + 10; ++inner) {
            solve_passive(z);
            bool feasible = true;
            double alpha = std::numeric_limits<double>::infinity();
            for (Eigen::Index j = 0; j < n; ++j) {
                if (passive[static_cast<std::size_t>(j)] && z(j) <= 0.0) {
                    feasible = false;
                    alpha = std::min(alpha, x(j) / (x(j) - z(j)));
                }
            }
            if (feasible) {
                x = z;
                break;
            }
            x += alpha * (z - x);
            for (Eigen::Index j = 0; j < n; ++j)
                if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
                    passive[static_cast<std::size_t>(j)] = false;
                    x(j) = 0.0;
                }
        }
    }
    return x;
}

/// Forces an exact unit row sum by adjusting the largest entry.
template <typename Row>
void fix_row_sum(Row&& row) {
    Eigen::Index arg = 0;
    row.maxCoeff(&arg);
    row(arg) += 1.0 - row.sum();
}

void check_anchor_set(const AnchorSet& anchors, int num_pairs, int dimension) {
    if (dimension < 1)
        throw ModelError("feature dimension K must be at least 1");
    if (anchors.size() != dimension)
        throw ModelError("anchor set size must equal the feature dimension K");
    std::vector<int> sorted = anchors.indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ModelError("anchor indices must be distinct");
    if (sorted.front() < 0 || sorted.back() >= num_pairs)
        throw ModelError("anchor index out of range");
}

/// K x K matrix I + (0.5 / K) U[-1, 1]: strictly diagonally dominant, so invertible.
Matrix random_mixing(int k, RandomStream& rng) {
    Matrix m = Matrix::Identity(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            m(i, j) += (0.5 / k) * rng.uniform(-1.0, 1.0);
    return m;
}

Eigen::RowVectorXd to_row(const std::vector<double>& v) {
    Eigen::RowVectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

/// Signed coefficient row with 1-norm in (1, bound], positive and negative parts
/// on disjoint random subsets, then mixed toward a convex row until
/// row * anchor_kernel is non-negative. Returns false when the result is not
/// genuinely signed.
bool draw_regular_row(int k, double bound, const Matrix& anchor_kernel, RandomStream& rng,
                      Eigen::RowVectorXd& lambda) {
    const double norm = rng.uniform(1.0, bound);
    std::vector<int> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    const int positives = 1 + rng.index(k - 1);

    lambda = Eigen::RowVectorXd::Zero(k);
    const auto pos = rng.simplex(positives);
    const auto neg = rng.simplex(k - positives);
    for (int i = 0; i < positives; ++i)
        lambda(order[static_cast<std::size_t>(i)]) = 0.5 * (1.0 + norm) * pos[static_cast<std::size_t>(i)];
    for (int i = positives; i < k; ++i)
        lambda(order[static_cast<std::size_t>(i)]) =
            -0.5 * (norm - 1.0) * neg[static_cast<std::size_t>(i - positives)];

    const Eigen::RowVectorXd row = lambda * anchor_kernel;
    if (row.minCoeff() < 0.0) {
        const Eigen::RowVectorXd convex = to_row(rng.simplex(k));
        const Eigen::RowVectorXd convex_row = convex * anchor_kernel;
        double t = 1.0;
        for (Eigen::Index j = 0; j < row.size(); ++j)
            if (row(j) < 0.0)
                t = std::min(t, convex_row(j) / (convex_row(j) - row(j)));
        lambda = t * lambda + (1.0 - t) * convex;
    }
    fix_row_sum(lambda);
    return lambda.minCoeff() < -1e-3;
}

} // namespace

CombinationCoefficients compute_coefficients(const FeatureMap& features, const AnchorSet& anchors) {
    const Matrix& phi = features.phi;
    const int num_pairs = static_cast<int>(phi.rows());
    const int k = features.dimension();
    check_anchor_set(anchors, num_pairs, k);
    if (!phi.allFinite())
        throw ModelError("feature matrix contains non-finite entries");

    const double scale = std::max(phi.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    // Augmented system [B^T; 1^T] lambda = [phi(s,a)^T; 1], B = anchor feature rows.
    Matrix system(k + 1, k);
    for (int j = 0; j < k; ++j)
        system.block(0, j, k, 1) = phi.row(anchors.indices[static_cast<std::size_t>(j)]).transpose() / scale;
    system.row(k).setOnes();
    const auto cod = system.completeOrthogonalDecomposition();
    const bool unique = cod.rank() == k;

    CombinationCoefficients out;
    out.lambda.resize(num_pairs, k);
    double worst_residual = 0.0;
    Vector rhs(k + 1);
    for (int i = 0; i < num_pairs; ++i) {
        rhs.head(k) = phi.row(i).transpose() / scale;
        rhs(k) = 1.0;
        Vector lambda = cod.solve(rhs);
        double residual = (system * lambda - rhs).cwiseAbs().maxCoeff();
        if (!unique && lambda.minCoeff() < -kCoefficientTolerance) {
            const Vector nonneg = nnls(system, rhs);
            const double nonneg_residual = (system * nonneg - rhs).cwiseAbs().maxCoeff();
            if (nonneg_residual <= kRepresentationTolerance) {
                lambda = nonneg;
                residual = nonneg_residual;
            }
        }
        worst_residual = std::max(worst_residual, residual);
        out.lambda.row(i) = lambda.transpose();
        fix_row_sum(out.lambda.row(i));
    }
    if (worst_residual > kRepresentationTolerance) {
        std::ostringstream os;
        os << "anchor features do not span the feature row space (worst residual "
           << worst_residual << ")";
        throw RepresentationError(os.str(), worst_residual);
    }
    for (int j = 0; j < k; ++j) {
        out.lambda.row(anchors.indices[static_cast<std::size_t>(j)]).setZero();
        out.lambda(anchors.indices[static_cast<std::size_t>(j)], j) = 1.0;
    }
    out.regularity = out.lambda.cwiseAbs().rowwise().sum().maxCoeff();
    out.is_convex = out.regularity <= 1.0 + kCoefficientTolerance;
    return out;
}

AnchorPropertyReport verify_anchor_property(const CombinationCoefficients& coeffs) {
    AnchorPropertyReport report;
    report.worst_negative_entry = std::min(0.0, coeffs.lambda.minCoeff());
    report.worst_row_sum_error =
        (coeffs.lambda.rowwise().sum().array() - 1.0).abs().maxCoeff();
    report.regularity = coeffs.lambda.cwiseAbs().rowwise().sum().maxCoeff();
    report.holds = report.worst_negative_entry >= -kCoefficientTolerance &&
                   report.worst_row_sum_error <= kCoefficientTolerance;
    return report;
}

LinearGroundTruth::LinearGroundTruth(TabularMDP mdp_in, FeatureMap features_in,
                                     AnchorSet anchors_in)
    : mdp(std::move(mdp_in)), features(std::move(features_in)), anchors(std::move(anchors_in)) {
    if (features.phi.rows() != mdp.num_pairs())
        throw ModelError("feature matrix must have one row per state-action pair");
    coefficients = compute_coefficients(features, anchors);
    anchor_kernel.resize(anchors.size(), mdp.num_states());
    for (int k = 0; k < anchors.size(); ++k)
        anchor_kernel.row(k) = mdp.kernel().row(anchors.indices[static_cast<std::size_t>(k)]);
}

double LinearGroundTruth::reconstruction_error() const {
    return (mdp.kernel() - coefficients.lambda * anchor_kernel).cwiseAbs().maxCoeff();
}

LinearGroundTruth synthesize_linear_mdp(int num_states, int num_actions, int num_anchors,
                                        SynthesisMode mode, std::uint64_t seed, double gamma) {
    const int num_pairs = num_states * num_actions;
    if (num_states < 1 || num_actions < 1)
        throw ModelError("num_states and num_actions must be positive");
    if (num_anchors < 1 || num_anchors > num_pairs)
        throw ModelError("K must lie in [1, |S||A|]");
    if (mode.kind == SynthesisMode::Kind::regular && !(mode.regularity >= 1.0))
        throw ModelError("regularity bound L must be at least 1");

    RandomStream rng(derive_key(seed, 0x73796e7468ULL));

    std::vector<int> all(static_cast<std::size_t>(num_pairs));
    std::iota(all.begin(), all.end(), 0);
    rng.shuffle(all);
    AnchorSet anchors{std::vector<int>(all.begin(), all.begin() + num_anchors)};
    std::sort(anchors.indices.begin(), anchors.indices.end());

    Matrix anchor_kernel(num_anchors, num_states);
    for (int k = 0; k < num_anchors; ++k)
        anchor_kernel.row(k) = to_row(rng.simplex(num_states));

    std::vector<int> anchor_slot(static_cast<std::size_t>(num_pairs), -1);
    for (int k = 0; k < num_anchors; ++k)
        anchor_slot[static_cast<std::size_t>(anchors.indices[static_cast<std::size_t>(k)])] = k;

    const bool regular = mode.kind == SynthesisMode::Kind::regular && mode.regularity > 1.0 &&
                         num_anchors >= 2;
    Matrix lambda = Matrix::Zero(num_pairs, num_anchors);
    for (int i = 0; i < num_pairs; ++i) {
        const int slot = anchor_slot[static_cast<std::size_t>(i)];
        if (slot >= 0) {
            lambda(i, slot) = 1.0;
            continue;
        }
        if (!regular) {
            lambda.row(i) = to_row(rng.simplex(num_anchors));
            continue;
        }
        Eigen::RowVectorXd row;
        int attempt = 0;
        while (!draw_regular_row(num_anchors, mode.regularity, anchor_kernel, rng, row)) {
            if (++attempt >= kMaxSynthesisRetries)
                throw CapacityError("synthesize_linear_mdp: regular-mode rejection exceeded " +
                                    std::to_string(kMaxSynthesisRetries) + " retries");
        }
        lambda.row(i) = row;
    }

    Matrix kernel = lambda * anchor_kernel;
    // Rows pulled onto the boundary carry rounding-level negatives.
    kernel = kernel.cwiseMax(0.0);
    for (int k = 0; k < num_anchors; ++k)
        kernel.row(anchors.indices[static_cast<std::size_t>(k)]) = anchor_kernel.row(k);

    Vector reward(num_pairs);
    for (int i = 0; i < num_pairs; ++i)
        reward(i) = rng.uniform();

    const Matrix mixing = random_mixing(num_anchors, rng);
    FeatureMap features{lambda * mixing};
    return LinearGroundTruth(
        TabularMDP(num_states, num_actions, std::move(kernel), std::move(reward), gamma),
        std::move(features), std::move(anchors));
}

int adversarial_designated_pair(int num_anchors) { return num_anchors * 2; }

LinearGroundTruth adversarial_instance(int num_anchors, double regularity, double gamma) {
    if (num_anchors < 2)
        throw ModelError("adversarial_instance requires K >= 2");
    if (!(regularity > 1.0))
        throw ModelError("adversarial_instance requires L > 1");
    const int k = num_anchors;
    const int num_states = k + 1;
    const int num_actions = 2;
    const int num_pairs = num_states * num_actions;
    const int designated = adversarial_designated_pair(k);

    AnchorSet anchors;
    for (int j = 0; j < k; ++j)
        anchors.indices.push_back(j * num_actions + j % 2);

    Matrix anchor_kernel = Matrix::Constant(k, num_states, 1.0 / num_states);
    anchor_kernel.row(0).setZero();
    anchor_kernel(0, 0) = (regularity - 1.0) / (regularity + 1.0);
    anchor_kernel(0, 1) = 2.0 / (regularity + 1.0);
    anchor_kernel.row(1).setZero();
    anchor_kernel(1, 0) = 1.0;

    Matrix lambda = Matrix::Constant(num_pairs, k, 1.0 / k);
    for (int j = 0; j < k; ++j) {
        lambda.row(anchors.indices[static_cast<std::size_t>(j)]).setZero();
        lambda(anchors.indices[static_cast<std::size_t>(j)], j) = 1.0;
    }
    lambda.row(designated).setZero();
    lambda(designated, 0) = 0.5 * (1.0 + regularity);
    lambda(designated, 1) = 0.5 * (1.0 - regularity);

    Matrix kernel = lambda * anchor_kernel;
    // The designated row has exact zero mass on state 0 by construction.
    kernel(designated, 0) = 0.0;
    kernel.row(designated) /= kernel.row(designated).sum();
    for (int j = 0; j < k; ++j)
        kernel.row(anchors.indices[static_cast<std::size_t>(j)]) = anchor_kernel.row(j);

    Vector reward = Vector::Zero(num_pairs);
    reward(designated) = 1.0;
    for (int s = 0; s < num_states; ++s)
        reward(s * num_actions) = std::max(reward(s * num_actions), 0.5);

    return LinearGroundTruth(
        TabularMDP(num_states, num_actions, std::move(kernel), std::move(reward), gamma),
        FeatureMap{lambda}, std::move(anchors));
}

LinearGroundTruth plant_action_gaps(const LinearGroundTruth& truth, std::uint64_t seed,
                                    GapDesign design) {
    if (!(design.min_gap > 0.0 && design.max_gap >= design.min_gap && design.value_spread >= 0.0))
        throw ModelError("gap design needs 0 < min_gap <= max_gap and value_spread >= 0");
    const TabularMDP& mdp = truth.mdp;
    const int ns = mdp.num_states();
    const int na = mdp.num_actions();
    const double gamma = mdp.gamma();
    RandomStream rng(derive_key(seed, 0x67617073));

    const double base = 0.5 / (1.0 - gamma);
    Vector v_star(ns);
    for (int s = 0; s < ns; ++s)
        v_star(s) = base + design.value_spread * rng.uniform();
    const double log_lo = std::log(design.min_gap);
    const double log_hi = std::log(design.max_gap);
    Vector q_star(mdp.num_pairs());
    for (int s = 0; s < ns; ++s) {
        const int best = rng.index(na);
        for (int a = 0; a < na; ++a) {
            const double gap = a == best ? 0.0 : std::exp(rng.uniform(log_lo, log_hi));
            q_star(mdp.pair(s, a)) = v_star(s) - gap;
        }
    }
    const Vector reward = q_star - gamma * mdp.kernel() * v_star;
    if (reward.minCoeff() < 0.0 || reward.maxCoeff() > 1.0)
        throw ModelError("reward_range: planted gaps push rewards outside [0, 1]");

    LinearGroundTruth out = truth;
    out.mdp = mdp.with_reward(reward, RewardRange::unit);
    return out;
}

} // namespace mdplab
