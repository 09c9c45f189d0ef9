#pragma once

// Executable checks of the analytic structure behind the plug-in guarantees:
// auxiliary models and the scalar-tilt value identity, variance inequalities,
// error decompositions, and the two-state pseudo-MDP counterexample.

#include "mdplab/empirical.hpp"
#include "mdplab/exact.hpp"
#include "mdplab/solvers.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace mdplab {

/// (I - gamma P Pi)^{-1} x for a state-action vector x.
Vector apply_resolvent(const DiscountedModel& model, const Policy& policy, const Vector& x);

// ---------------------------------------------------------------------------
// Auxiliary models

struct AuxiliaryMDP {
    TabularMDP model; ///< kernel Lambda P_tilde_K, reward r + u Lambda[:, k]
    int anchor = 0;   ///< position k in the anchor set
    double u = 0.0;
};

/// Replaces anchor row k of the empirical anchor kernel by `truth_row` and tilts
/// the reward by u times column k of Lambda. Refuses non-convex coefficients.
AuxiliaryMDP build_auxiliary_mdp(const EmpiricalModel& empirical,
                                 const Eigen::Ref<const Eigen::RowVectorXd>& truth_row,
                                 int anchor, double u);

struct ValueIdentityReport {
    double residual = 0.0; ///< ||Q_hat - Q_tilde||_inf
    double u = 0.0;
    double u_bound = 0.0;  ///< 1 / (1 - gamma)
    bool u_within_bound = false;
};

/// u = gamma (P_hat(s,a) - P(s,a)) V_hat^pi for anchor k, then compares Q_hat^pi
/// with Q^pi in the auxiliary model tilted by u.
ValueIdentityReport verify_value_identity(const EmpiricalModel& empirical, const TabularMDP& truth,
                                          int anchor, const Policy& policy);

/// Same with the empirical optimum: u* from V_hat*, compares Q_hat* with Q_tilde*.
ValueIdentityReport verify_optimal_value_identity(const EmpiricalModel& empirical,
                                                  const TabularMDP& truth, int anchor);

/// |u1 - u2| / (1 - gamma) - ||Q_tilde^pi_{u1} - Q_tilde^pi_{u2}||_inf.
double check_tilt_lipschitz(const EmpiricalModel& empirical, const TabularMDP& truth, int anchor,
                            const Policy& policy, double u1, double u2);

/// Step-indexed variant: u_h = (P_hat(s,a) - P(s,a)) V_hat_{h+1}^pi and the
/// auxiliary finite-horizon model with rewards r + u_h Lambda[:, k].
struct FiniteHorizonIdentityReport {
    double residual = 0.0; ///< max_h ||Q_hat_h - Q_tilde_h||_inf
    double worst_u_excess = 0.0; ///< max_h |u_h| - (H - h - 1)
};

FiniteHorizonIdentityReport verify_finite_horizon_identity(const EmpiricalModel& empirical,
                                                           const TabularMDP& truth, int anchor,
                                                           const TimeDependentPolicy& policy,
                                                           int horizon);

// ---------------------------------------------------------------------------
// Inequalities

/// min over pairs of sqrt(Var_{s,a}(V)) - sum_k lambda_k sqrt(Var_{s_k,a_k}(V)).
/// Refuses non-convex coefficients.
double check_variance_jensen(const LinearGroundTruth& truth, const Vector& values);

/// sqrt(2 / (1 - gamma)^3) - ||(I - gamma P^pi)^{-1} sqrt(Var_P(V^pi))||_inf.
double check_total_variance_bound(const TabularMDP& truth, const Policy& policy);

/// Sup-norm residual of Q^pi_M - Q^pi_Mhat = gamma (I - gamma P^pi)^{-1}(P - P_hat) V_hat^pi.
double check_value_difference_identity(const TabularMDP& model, const TabularMDP& other,
                                       const Policy& policy);

struct DecompositionReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack() const { return rhs - lhs; }
};

/// ||Q* - Q^pi_hat|| versus ||Q* - Q_hat^{pi*}|| + ||Q_hat^pi_hat - Q^pi_hat|| + eps_ps.
DecompositionReport check_plugin_decomposition(const TabularMDP& truth, const TabularMDP& empirical,
                                               const Policy& plugin_policy, double eps_ps);

/// H-step value iteration in the empirical and the true model from zero:
/// ||Q_hat_0 - Q_0|| versus sum_h gamma^{h+1} L ||(P_hat_K - P_K) V_hat_{h+1}||.
DecompositionReport check_pseudo_vi_decomposition(const LinearGroundTruth& truth,
                                                  const EmpiricalModel& empirical, int horizon);

// ---------------------------------------------------------------------------
// Two-state pseudo-MDP counterexample

/// Rows (s1,a1) = [0,1], (s1,a2) = [0,1], (s2,a1) = [1,0], (s2,a2) = [-0.1,1.1];
/// rewards (1, 0, 0, 1).
PseudoMDP counterexample_model(double gamma);

/// The same model with row (s2,a2) replaced by [0, 1]: a proper MDP.
TabularMDP counterexample_proper_variant(double gamma);

struct CounterexampleReport {
    double gamma = 0.0;
    bool singular = false;
    std::string error;
    /// Values of (a1,a1), (a1,a2), (a2,a1), (a2,a2).
    std::array<Vector, 4> values;
    std::array<Vector, 4> closed_forms;
    double closed_form_residual = 0.0;
    std::array<int, 2> per_state_argmax{}; ///< policy index maximizing each state
    bool uniformly_optimal_exists = false;
};

CounterexampleReport pseudo_counterexample(double gamma);

// ---------------------------------------------------------------------------
// Suite

struct CheckResult {
    std::string name;
    bool passed = false;
    double margin = 0.0; ///< >= 0 when passing, smaller is tighter
    std::string detail;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    bool passed() const;
    std::string to_json() const;
};

struct VerificationOptions {
    std::uint64_t seed = 20240601;
    /// Extra model files whose invariants are checked as fixtures.
    std::vector<std::string> fixture_files;
};

VerificationReport run_verification_suite(const VerificationOptions& options);

} // namespace mdplab
