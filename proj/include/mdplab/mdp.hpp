#pragma once

// Decision-model containers: discounted MDPs (proper and pseudo), finite-horizon
// MDPs, and two-player turn-based zero-sum games. State-action pairs are laid out
// row-major, pair index = state * num_actions + action.

#include "mdplab/common.hpp"

#include <vector>

namespace mdplab {

/// Row-sum tolerance for transition kernels.
inline constexpr double kRowSumTolerance = 1e-12;
/// Entries above this (negative) value count as non-negative.
inline constexpr double kNegativityTolerance = -1e-12;

enum class RewardRange {
    unit,      ///< rewards must lie in [0, 1]
    unbounded, ///< any finite reward (auxiliary and induced models)
};

/// Shared storage and shape checks for discounted models.
class DiscountedModel {
public:
    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    int num_pairs() const { return num_states_ * num_actions_; }
    int pair(int state, int action) const { return state * num_actions_ + action; }

    const Matrix& kernel() const { return kernel_; }
    const Vector& reward() const { return reward_; }
    double gamma() const { return gamma_; }

    /// Smallest kernel entry; negative only for pseudo models.
    double min_entry() const { return kernel_.minCoeff(); }

protected:
    DiscountedModel(int num_states, int num_actions, Matrix kernel, Vector reward, double gamma);
    ~DiscountedModel() = default;
    DiscountedModel(const DiscountedModel&) = default;
    DiscountedModel(DiscountedModel&&) = default;
    DiscountedModel& operator=(const DiscountedModel&) = default;
    DiscountedModel& operator=(DiscountedModel&&) = default;

private:
    int num_states_;
    int num_actions_;
    Matrix kernel_;
    Vector reward_;
    double gamma_;
};

/// A discounted MDP whose kernel rows are probability distributions.
class TabularMDP : public DiscountedModel {
public:
    TabularMDP(int num_states, int num_actions, Matrix kernel, Vector reward, double gamma,
               RewardRange range = RewardRange::unit);

    /// Same kernel and discount, different reward vector.
    TabularMDP with_reward(Vector reward, RewardRange range = RewardRange::unbounded) const;
};

/// A discounted model whose kernel rows sum to one but may hold negative entries.
class PseudoMDP : public DiscountedModel {
public:
    PseudoMDP(int num_states, int num_actions, Matrix kernel, Vector reward, double gamma);
    explicit PseudoMDP(const TabularMDP& proper);

    bool is_proper() const { return min_entry() >= kNegativityTolerance; }
    /// Converts to a proper MDP; throws ModelError when some entry is negative.
    TabularMDP to_proper(RewardRange range = RewardRange::unbounded) const;
};

class FiniteHorizonMDP {
public:
    /// `rewards` holds one reward vector per step h = 0 .. H-1.
    FiniteHorizonMDP(int num_states, int num_actions, Matrix kernel, std::vector<Vector> rewards,
                     RewardRange range = RewardRange::unit);

    /// Stationary reward repeated for `horizon` steps.
    static FiniteHorizonMDP stationary(int num_states, int num_actions, Matrix kernel,
                                       const Vector& reward, int horizon,
                                       RewardRange range = RewardRange::unit);

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    int num_pairs() const { return num_states_ * num_actions_; }
    int horizon() const { return static_cast<int>(rewards_.size()); }
    const Matrix& kernel() const { return kernel_; }
    const Vector& reward(int step) const { return rewards_.at(static_cast<std::size_t>(step)); }
    const std::vector<Vector>& rewards() const { return rewards_; }

private:
    int num_states_;
    int num_actions_;
    Matrix kernel_;
    std::vector<Vector> rewards_;
};

enum class Player { maximizer, minimizer };

class TurnBasedGame {
public:
    TurnBasedGame(TabularMDP dynamics, std::vector<Player> state_owner);

    const TabularMDP& dynamics() const { return dynamics_; }
    const std::vector<Player>& state_owner() const { return owner_; }
    Player owner(int state) const { return owner_[static_cast<std::size_t>(state)]; }

    int num_states() const { return dynamics_.num_states(); }
    int num_actions() const { return dynamics_.num_actions(); }
    double gamma() const { return dynamics_.gamma(); }

private:
    TabularMDP dynamics_;
    std::vector<Player> owner_;
};

/// Deterministic stationary policy.
struct Policy {
    std::vector<int> action_of;

    int operator[](int state) const { return action_of[static_cast<std::size_t>(state)]; }
    int size() const { return static_cast<int>(action_of.size()); }
    bool operator==(const Policy&) const = default;
};

/// One stationary map per step h = 0 .. H-1.
struct TimeDependentPolicy {
    std::vector<Policy> steps;

    const Policy& at(int step) const { return steps.at(static_cast<std::size_t>(step)); }
    int horizon() const { return static_cast<int>(steps.size()); }
    bool operator==(const TimeDependentPolicy&) const = default;
};

/// A pair (pi_1, pi_2). Each component holds an action for every state, but only
/// entries at states owned by that player are meaningful.
struct GamePolicy {
    Policy maximizer;
    Policy minimizer;

    /// The action actually taken at each state under `game`'s ownership.
    Policy joint(const TurnBasedGame& game) const;
    static GamePolicy split(const TurnBasedGame& game, const Policy& joint);
};

void validate(const Policy& policy, int num_states, int num_actions);
void validate(const TimeDependentPolicy& policy, int num_states, int num_actions, int horizon);

/// Rows of `kernel` selected by `policy`: an |S| x |S| state-to-state matrix.
Matrix state_kernel(const DiscountedModel& model, const Policy& policy);
Vector state_reward(const DiscountedModel& model, const Policy& policy);

} // namespace mdplab
