#include "mdplab/mdp.hpp"

#include <cmath>
#include <sstream>

namespace mdplab {

namespace {

void check_kernel_shape(int num_states, int num_actions, const Matrix& kernel) {
    if (num_states <= 0 || num_actions <= 0)
        throw ModelError("num_states and num_actions must be positive");
    if (kernel.rows() != static_cast<Eigen::Index>(num_states) * num_actions ||
        kernel.cols() != num_states) {
        std::ostringstream os;
        os << "kernel must be " << num_states * num_actions << " x " << num_states << ", got "
           << kernel.rows() << " x " << kernel.cols();
        throw ModelError(os.str());
    }
    if (!kernel.allFinite())
        throw ModelError("kernel contains non-finite entries");
}

void check_row_sums(const Matrix& kernel) {
    for (Eigen::Index i = 0; i < kernel.rows(); ++i) {
        const double sum = kernel.row(i).sum();
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            std::ostringstream os;
            os.precision(17);
            os << "kernel_row_sums: row " << i << " sums to " << sum;
            throw ModelError(os.str());
        }
    }
}

void check_non_negative(const Matrix& kernel) {
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    const double min = kernel.minCoeff(&row, &col);
    if (min < kNegativityTolerance) {
        std::ostringstream os;
        os << "kernel_non_negative: entry (" << row << ", " << col << ") is " << min;
        throw ModelError(os.str());
    }
}

void check_reward(const Vector& reward, Eigen::Index expected, RewardRange range) {
    if (reward.size() != expected)
        throw ModelError("reward length must equal num_states * num_actions");
    if (!reward.allFinite())
        throw ModelError("reward contains non-finite entries");
    if (range == RewardRange::unit && (reward.minCoeff() < 0.0 || reward.maxCoeff() > 1.0))
        throw ModelError("reward_range: entries must lie in [0, 1]");
}

} // namespace

DiscountedModel::DiscountedModel(int num_states, int num_actions, Matrix kernel, Vector reward,
                                 double gamma)
    : num_states_(num_states), num_actions_(num_actions), kernel_(std::move(kernel)),
      reward_(std::move(reward)), gamma_(gamma) {
    check_kernel_shape(num_states_, num_actions_, kernel_);
    check_row_sums(kernel_);
    if (!(gamma_ > 0.0 && gamma_ < 1.0))
        throw ModelError("gamma must lie in (0, 1)");
}

TabularMDP::TabularMDP(int num_states, int num_actions, Matrix kernel, Vector reward, double gamma,
                       RewardRange range)
    : DiscountedModel(num_states, num_actions, std::move(kernel), std::move(reward), gamma) {
    check_non_negative(this->kernel());
    check_reward(this->reward(), num_pairs(), range);
}

TabularMDP TabularMDP::with_reward(Vector reward, RewardRange range) const {
    return TabularMDP(num_states(), num_actions(), kernel(), std::move(reward), gamma(), range);
}

PseudoMDP::PseudoMDP(int num_states, int num_actions, Matrix kernel, Vector reward, double gamma)
    : DiscountedModel(num_states, num_actions, std::move(kernel), std::move(reward), gamma) {
    check_reward(this->reward(), num_pairs(), RewardRange::unbounded);
}

PseudoMDP::PseudoMDP(const TabularMDP& proper)
    : PseudoMDP(proper.num_states(), proper.num_actions(), proper.kernel(), proper.reward(),
                proper.gamma()) {}

TabularMDP PseudoMDP::to_proper(RewardRange range) const {
    return TabularMDP(num_states(), num_actions(), kernel(), reward(), gamma(), range);
}

FiniteHorizonMDP::FiniteHorizonMDP(int num_states, int num_actions, Matrix kernel,
                                   std::vector<Vector> rewards, RewardRange range)
    : num_states_(num_states), num_actions_(num_actions), kernel_(std::move(kernel)),
      rewards_(std::move(rewards)) {
    check_kernel_shape(num_states_, num_actions_, kernel_);
    check_row_sums(kernel_);
    check_non_negative(kernel_);
    if (rewards_.empty())
        throw ModelError("horizon must be at least 1");
    for (const auto& r : rewards_)
        check_reward(r, num_pairs(), range);
}

FiniteHorizonMDP FiniteHorizonMDP::stationary(int num_states, int num_actions, Matrix kernel,
                                              const Vector& reward, int horizon,
                                              RewardRange range) {
    if (horizon < 1)
        throw ModelError("horizon must be at least 1");
    return FiniteHorizonMDP(num_states, num_actions, std::move(kernel),
                            std::vector<Vector>(static_cast<std::size_t>(horizon), reward), range);
}

TurnBasedGame::TurnBasedGame(TabularMDP dynamics, std::vector<Player> state_owner)
    : dynamics_(std::move(dynamics)), owner_(std::move(state_owner)) {
    if (static_cast<int>(owner_.size()) != dynamics_.num_states())
        throw ModelError("state_owner length must equal num_states");
}

Policy GamePolicy::joint(const TurnBasedGame& game) const {
    Policy out;
    out.action_of.resize(static_cast<std::size_t>(game.num_states()));
    for (int s = 0; s < game.num_states(); ++s)
        out.action_of[static_cast<std::size_t>(s)] =
            game.owner(s) == Player::maximizer ? maximizer[s] : minimizer[s];
    return out;
}

GamePolicy GamePolicy::split(const TurnBasedGame& game, const Policy& joint) {
    GamePolicy out;
    out.maximizer.action_of.assign(joint.action_of.size(), -1);
    out.minimizer.action_of.assign(joint.action_of.size(), -1);
    for (int s = 0; s < game.num_states(); ++s) {
        auto& side = game.owner(s) == Player::maximizer ? out.maximizer : out.minimizer;
        side.action_of[static_cast<std::size_t>(s)] = joint[s];
    }
    return out;
}

void validate(const Policy& policy, int num_states, int num_actions) {
    if (policy.size() != num_states)
        throw ModelError("policy must assign an action to every state");
    for (int s = 0; s < num_states; ++s)
        if (policy[s] < 0 || policy[s] >= num_actions)
            throw ModelError("policy action out of range at state " + std::to_string(s));
}

void validate(const TimeDependentPolicy& policy, int num_states, int num_actions, int horizon) {
    if (policy.horizon() != horizon)
        throw ModelError("time-dependent policy must have one map per step");
    for (const auto& step : policy.steps)
        validate(step, num_states, num_actions);
}

Matrix state_kernel(const DiscountedModel& model, const Policy& policy) {
    const int n = model.num_states();
    Matrix out(n, n);
    for (int s = 0; s < n; ++s)
        out.row(s) = model.kernel().row(model.pair(s, policy[s]));
    return out;
}

Vector state_reward(const DiscountedModel& model, const Policy& policy) {
    const int n = model.num_states();
    Vector out(n);
    for (int s = 0; s < n; ++s)
        out(s) = model.reward()(model.pair(s, policy[s]));
    return out;
}

} // namespace mdplab
