#pragma once

// Exact evaluation and ground-truth solvers. Everything here is the reference
// against which plug-in policies are scored.

#include "mdplab/mdp.hpp"

#include <cstdint>
#include <vector>

namespace mdplab {

/// Q^pi from the linear system Q = r + gamma P Pi Q, solved by dense LU with
/// partial pivoting. Throws NoFixedPointError when I - gamma P^pi is singular
/// (only possible for pseudo models).
Vector evaluate_policy(const DiscountedModel& model, const Policy& policy);

/// V^pi(s) = Q^pi(s, pi(s)).
Vector policy_values(const DiscountedModel& model, const Vector& q, const Policy& policy);

/// r + gamma P V for every pair.
Vector bellman_backup(const DiscountedModel& model, const Vector& values);

/// max_a Q(s, a) for every state.
Vector max_over_actions(const Vector& q, int num_states, int num_actions);

/// argmax_a [r(s,a) + gamma P(s,a) V], ties to the lowest action index.
Policy greedy_policy(const DiscountedModel& model, const Vector& values);

/// argmax_a Q(s, a), ties to the lowest action index.
Policy greedy_from_q(const Vector& q, int num_states, int num_actions);

struct OptimalSolution {
    Vector q;
    Vector values;
    Policy policy;
    int iterations = 0;
};

/// Value iteration from V = 0, stopped once successive iterates differ by at most
/// tolerance * (1 - gamma) / (2 gamma) in sup norm. The returned Q is within
/// `tolerance` of Q* and the greedy policy is `tolerance`-optimal.
OptimalSolution solve_optimal(const TabularMDP& model, double tolerance);

/// Q* of a proper model, taken as the exact evaluation of a 1e-10-optimal policy.
Vector optimal_q(const TabularMDP& model);

/// ||Q* - Q^pi||_inf.
double suboptimality(const TabularMDP& model, const Policy& policy);
/// Same, against a precomputed Q*.
double suboptimality(const TabularMDP& model, const Policy& policy, const Vector& q_star);

/// Var_{s,a}(V) = P(s,a) V^2 - (P(s,a) V)^2 per row, clamped at zero.
Vector variance_vector(const Matrix& kernel, const Vector& values);
Vector variance_vector(const DiscountedModel& model, const Vector& values);

// ---------------------------------------------------------------------------
// Finite horizon

/// Q_h^pi for h = 0 .. H-1 with Q_h = r_h + P V_{h+1} and V_H = 0.
std::vector<Vector> evaluate_policy(const FiniteHorizonMDP& model,
                                    const TimeDependentPolicy& policy);

/// max_h ||Q_h* - Q_h^pi||_inf.
double suboptimality(const FiniteHorizonMDP& model, const TimeDependentPolicy& policy);

// ---------------------------------------------------------------------------
// Turn-based games

Vector evaluate_policy(const TurnBasedGame& game, const GamePolicy& policy);

/// Q* of a game, taken as the exact evaluation of the Shapley equilibrium at 1e-10.
Vector equilibrium_q(const TurnBasedGame& game);

/// ||Q^pi - Q*||_inf (two-sided).
double suboptimality(const TurnBasedGame& game, const GamePolicy& policy);
double suboptimality(const TurnBasedGame& game, const GamePolicy& policy, const Vector& q_star);

/// Worst violation of the equilibrium inequalities for `policy`:
/// Q(s,a) <= Q(s,pi(s)) on maximizer states and Q(s,a) >= Q(s,pi(s)) on minimizer
/// states. Zero or negative means the inequalities hold.
double equilibrium_violation(const TurnBasedGame& game, const GamePolicy& policy);

// ---------------------------------------------------------------------------
// Enumeration oracles

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

struct BruteForceResult {
    Policy policy;        ///< maximizer of sum_s V^pi(s), lowest index on ties
    Vector values;        ///< V of `policy`
    Vector per_state_max; ///< max over all policies, per state
    std::vector<Policy> per_state_argmax;
    bool uniformly_optimal = false; ///< `policy` attains every per-state maximum
    std::uint64_t policies_evaluated = 0;
};

/// Enumerates every deterministic policy of a (proper or pseudo) model.
/// Throws CapacityError when |A|^|S| exceeds `cap`.
BruteForceResult brute_force_solve(const DiscountedModel& model,
                                   std::uint64_t cap = kDefaultEnumerationCap);

struct FiniteHorizonBruteForce {
    TimeDependentPolicy policy;
    std::vector<Vector> values; ///< V_h for h = 0 .. H-1
    std::uint64_t policies_evaluated = 0;
};

FiniteHorizonBruteForce brute_force_solve(const FiniteHorizonMDP& model,
                                          std::uint64_t cap = kDefaultEnumerationCap);

struct GameBruteForce {
    GamePolicy policy; ///< attains min over pi_2 of max over pi_1
    Vector values;
    double equilibrium_violation = 0.0;
    std::uint64_t pairs_evaluated = 0;
};

GameBruteForce brute_force_solve(const TurnBasedGame& game,
                                 std::uint64_t cap = kDefaultEnumerationCap);

} // namespace mdplab
