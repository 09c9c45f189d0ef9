#pragma once

// Plug-in planners: the last step of the model-based pipeline. Each maps a model
// (typically the empirical one) and an accuracy eps_ps to a policy.

#include "mdplab/mdp.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mdplab {

enum class SolverKind { value_iteration, policy_iteration, pseudo_vi, backward_induction, shapley };

std::string to_string(SolverKind kind);
std::optional<SolverKind> parse_solver(std::string_view name);

struct PlanResult {
    Policy policy;
    Vector values;
    double eps_reported = 0.0; ///< 0 for exact methods
    int iterations = 0;
};

enum class DmdpMethod { value_iteration, policy_iteration };

/// eps_ps-optimal policy inside a proper model. Policy iteration is exact and
/// reports eps 0.
PlanResult solve_proper_dmdp(const TabularMDP& model, double eps_ps, DmdpMethod method);

struct ValueIterationTrace {
    /// values[h] = V_h for h = 0 .. H, with V_H = 0 and V_h = max_a(r + gamma P V_{h+1}).
    std::vector<Vector> values;
    int horizon() const { return static_cast<int>(values.size()) - 1; }
};

struct PseudoViOptions {
    /// Clamp iterates to [0, 1 / (1 - gamma)]. Off by default.
    bool truncate = false;
    bool keep_trace = false;
};

struct PseudoViResult {
    Vector values; ///< V_0 after H backups
    Policy policy; ///< greedy with respect to `values`
    int horizon = 0;
    ValueIterationTrace trace; ///< filled when keep_trace is set
};

inline constexpr double kDivergenceBound = 1e9;

/// ceil(ln(2 / (eps (1 - gamma))) / (1 - gamma)), at least 1.
int pseudo_vi_horizon(double eps, double gamma);

/// `steps` Bellman-optimality backups from V = 0 with no projection; works on
/// pseudo models. Throws DivergenceError when an entry exceeds 1e9 in magnitude.
ValueIterationTrace run_value_iteration(const DiscountedModel& model, int steps,
                                        bool truncate = false);

/// Value iteration for pseudo_vi_horizon(eps, gamma) steps and its greedy policy.
PseudoViResult solve_pseudo_vi(const DiscountedModel& model, double eps,
                               PseudoViOptions options = {});

struct FiniteHorizonSolution {
    TimeDependentPolicy policy;
    std::vector<Vector> values; ///< V_h for h = 0 .. H-1
    double eps_reported = 0.0;
};

/// Exact backward induction; eps_ps is accepted for contract uniformity.
FiniteHorizonSolution solve_fhmdp(const FiniteHorizonMDP& model, double eps_ps);

struct GameSolution {
    GamePolicy policy;
    Vector values;
    int iterations = 0;
};

/// Shapley value iteration (max on maximizer states, min on minimizer states),
/// stopped at eps_ps (1 - gamma) / (2 gamma), then greedy extraction for both sides.
GameSolution solve_tbsg(const TurnBasedGame& game, double eps_ps);

/// The MDP faced by `responder` when the other player is fixed to `fixed`.
/// For the minimizer the reward is negated so the induced problem maximizes.
TabularMDP induced_mdp(const TurnBasedGame& game, const GamePolicy& fixed, Player responder);

/// Best response of `responder` to the opponent's part of `fixed`; the returned
/// pair keeps the opponent's actions.
GamePolicy counter_policy(const TurnBasedGame& game, const GamePolicy& fixed, Player responder);

} // namespace mdplab
