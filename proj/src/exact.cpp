#include "mdplab/exact.hpp"

#include "mdplab/solvers.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace mdplab {

namespace {

constexpr double kSingularRcond = 1e-13;

/// |A|^n, or throws CapacityError once it exceeds `cap`.
std::uint64_t checked_power(int base, long long exponent, std::uint64_t cap, const char* what) {
    std::uint64_t count = 1;
    for (long long i = 0; i < exponent; ++i) {
        count *= static_cast<std::uint64_t>(base);
        if (count > cap) {
            std::ostringstream os;
            os << what << ": enumeration size exceeds cap " << cap;
            throw CapacityError(os.str());
        }
    }
    return count;
}

/// Decodes `index` as a mixed-radix number, least significant digit first.
void decode(std::uint64_t index, int radix, std::vector<int>& digits) {
    for (auto& d : digits) {
        d = static_cast<int>(index % static_cast<std::uint64_t>(radix));
        index /= static_cast<std::uint64_t>(radix);
    }
}

} // namespace

Vector evaluate_policy(const DiscountedModel& model, const Policy& policy) {
    validate(policy, model.num_states(), model.num_actions());
    const int n = model.num_states();
    const Matrix system = Matrix::Identity(n, n) - model.gamma() * state_kernel(model, policy);
    const Eigen::PartialPivLU<Matrix> lu(system);
    if (!(lu.rcond() > kSingularRcond))
        throw NoFixedPointError("no fixed point: I - gamma P^pi is singular (rcond " +
                                std::to_string(lu.rcond()) + ")");
    const Vector values = lu.solve(state_reward(model, policy));
    if (!values.allFinite())
        throw NoFixedPointError("no fixed point: policy evaluation produced non-finite values");
    return bellman_backup(model, values);
}

Vector policy_values(const DiscountedModel& model, const Vector& q, const Policy& policy) {
    Vector out(model.num_states());
    for (int s = 0; s < model.num_states(); ++s)
        out(s) = q(model.pair(s, policy[s]));
    return out;
}

Vector bellman_backup(const DiscountedModel& model, const Vector& values) {
    return model.reward() + model.gamma() * (model.kernel() * values);
}

Vector max_over_actions(const Vector& q, int num_states, int num_actions) {
    Vector out(num_states);
    for (int s = 0; s < num_states; ++s)
        out(s) = q.segment(static_cast<Eigen::Index>(s) * num_actions, num_actions).maxCoeff();
    return out;
}

Policy greedy_from_q(const Vector& q, int num_states, int num_actions) {
    Policy out;
    out.action_of.resize(static_cast<std::size_t>(num_states));
    for (int s = 0; s < num_states; ++s) {
        int best = 0;
        double best_value = q(static_cast<Eigen::Index>(s) * num_actions);
        for (int a = 1; a < num_actions; ++a) {
            const double v = q(static_cast<Eigen::Index>(s) * num_actions + a);
            if (v > best_value) {
                best = a;
                best_value = v;
            }
        }
        out.action_of[static_cast<std::size_t>(s)] = best;
    }
    return out;
}

Policy greedy_policy(const DiscountedModel& model, const Vector& values) {
    if (values.size() != model.num_states())
        throw ModelError("value vector length must equal num_states");
    return greedy_from_q(bellman_backup(model, values), model.num_states(), model.num_actions());
}

OptimalSolution solve_optimal(const TabularMDP& model, double tolerance) {
    if (!(tolerance > 0.0))
        throw ModelError("tolerance must be positive");
    const double gamma = model.gamma();
    const double threshold = tolerance * (1.0 - gamma) / (2.0 * gamma);

    OptimalSolution out;
    Vector values = Vector::Zero(model.num_states());
    for (;;) {
        Vector q = bellman_backup(model, values);
        Vector next = max_over_actions(q, model.num_states(), model.num_actions());
        ++out.iterations;
        const double change = sup_norm(next - values);
        values = std::move(next);
        if (change <= threshold)
            break;
    }
    out.q = bellman_backup(model, values);
    out.values = std::move(values);
    out.policy = greedy_from_q(out.q, model.num_states(), model.num_actions());
    return out;
}

Vector optimal_q(const TabularMDP& model) {
    return evaluate_policy(model, solve_optimal(model, 1e-10).policy);
}

double suboptimality(const TabularMDP& model, const Policy& policy, const Vector& q_star) {
    return sup_norm(q_star - evaluate_policy(model, policy));
}

double suboptimality(const TabularMDP& model, const Policy& policy) {
    return suboptimality(model, policy, optimal_q(model));
}

Vector variance_vector(const Matrix& kernel, const Vector& values) {
    // Centered form; the raw second moment cancels badly for near-constant values.
    const Vector first = kernel * values;
    Vector out(kernel.rows());
    for (Eigen::Index i = 0; i < kernel.rows(); ++i)
        out(i) = (kernel.row(i).transpose().array() * (values.array() - first(i)).square()).sum();
    return out.cwiseMax(0.0);
}

Vector variance_vector(const DiscountedModel& model, const Vector& values) {
    return variance_vector(model.kernel(), values);
}

// ---------------------------------------------------------------------------

std::vector<Vector> evaluate_policy(const FiniteHorizonMDP& model,
                                    const TimeDependentPolicy& policy) {
    const int horizon = model.horizon();
    validate(policy, model.num_states(), model.num_actions(), horizon);
    std::vector<Vector> q(static_cast<std::size_t>(horizon));
    Vector next = Vector::Zero(model.num_states());
    for (int h = horizon - 1; h >= 0; --h) {
        Vector qh = model.reward(h) + model.kernel() * next;
        for (int s = 0; s < model.num_states(); ++s)
            next(s) = qh(static_cast<Eigen::Index>(s) * model.num_actions() + policy.at(h)[s]);
        q[static_cast<std::size_t>(h)] = std::move(qh);
    }
    return q;
}

double suboptimality(const FiniteHorizonMDP& model, const TimeDependentPolicy& policy) {
    const auto q_star = evaluate_policy(model, solve_fhmdp(model, 0.0).policy);
    const auto q_pi = evaluate_policy(model, policy);
    double worst = 0.0;
    for (std::size_t h = 0; h < q_star.size(); ++h)
        worst = std::max(worst, sup_norm(q_star[h] - q_pi[h]));
    return worst;
}

// ---------------------------------------------------------------------------

Vector evaluate_policy(const TurnBasedGame& game, const GamePolicy& policy) {
    return evaluate_policy(game.dynamics(), policy.joint(game));
}

Vector equilibrium_q(const TurnBasedGame& game) {
    return evaluate_policy(game, solve_tbsg(game, 1e-10).policy);
}

double suboptimality(const TurnBasedGame& game, const GamePolicy& policy, const Vector& q_star) {
    return sup_norm(evaluate_policy(game, policy) - q_star);
}

double suboptimality(const TurnBasedGame& game, const GamePolicy& policy) {
    return suboptimality(game, policy, equilibrium_q(game));
}

double equilibrium_violation(const TurnBasedGame& game, const GamePolicy& policy) {
    const Vector q = evaluate_policy(game, policy);
    const Policy joint = policy.joint(game);
    const int na = game.num_actions();
    double worst = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < game.num_states(); ++s) {
        const double on_policy = q(static_cast<Eigen::Index>(s) * na + joint[s]);
        for (int a = 0; a < na; ++a) {
            const double v = q(static_cast<Eigen::Index>(s) * na + a);
            const double violation =
                game.owner(s) == Player::maximizer ? v - on_policy : on_policy - v;
            worst = std::max(worst, violation);
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------

BruteForceResult brute_force_solve(const DiscountedModel& model, std::uint64_t cap) {
    const int ns = model.num_states();
    const int na = model.num_actions();
    const std::uint64_t count = checked_power(na, ns, cap, "brute_force_solve");

    BruteForceResult out;
    out.per_state_max = Vector::Constant(ns, -std::numeric_limits<double>::infinity());
    out.per_state_argmax.resize(static_cast<std::size_t>(ns));
    double best_total = -std::numeric_limits<double>::infinity();

    Policy candidate;
    candidate.action_of.resize(static_cast<std::size_t>(ns));
    for (std::uint64_t index = 0; index < count; ++index) {
        decode(index, na, candidate.action_of);
        const Vector v = policy_values(model, evaluate_policy(model, candidate), candidate);
        ++out.policies_evaluated;
        for (int s = 0; s < ns; ++s) {
            if (v(s) > out.per_state_max(s)) {
                out.per_state_max(s) = v(s);
                out.per_state_argmax[static_cast<std::size_t>(s)] = candidate;
            }
        }
        const double total = v.sum();
        if (total > best_total) {
            best_total = total;
            out.policy = candidate;
            out.values = v;
        }
    }
    const double slack = 1e-10 * std::max(1.0, sup_norm(out.per_state_max));
    out.uniformly_optimal = ((out.per_state_max - out.values).array() <= slack).all();
    return out;
}

FiniteHorizonBruteForce brute_force_solve(const FiniteHorizonMDP& model, std::uint64_t cap) {
    const int ns = model.num_states();
    const int na = model.num_actions();
    const int horizon = model.horizon();
    const std::uint64_t count =
        checked_power(na, static_cast<long long>(ns) * horizon, cap, "brute_force_solve");

    FiniteHorizonBruteForce out;
    double best_total = -std::numeric_limits<double>::infinity();
    std::vector<int> digits(static_cast<std::size_t>(ns) * static_cast<std::size_t>(horizon));
    TimeDependentPolicy candidate;
    candidate.steps.resize(static_cast<std::size_t>(horizon));
    for (std::uint64_t index = 0; index < count; ++index) {
        decode(index, na, digits);
        for (int h = 0; h < horizon; ++h)
            candidate.steps[static_cast<std::size_t>(h)].action_of.assign(
                digits.begin() + static_cast<std::ptrdiff_t>(h) * ns,
                digits.begin() + static_cast<std::ptrdiff_t>(h + 1) * ns);
        const auto q = evaluate_policy(model, candidate);
        ++out.policies_evaluated;
        std::vector<Vector> values(static_cast<std::size_t>(horizon));
        double total = 0.0;
        for (int h = 0; h < horizon; ++h) {
            Vector vh(ns);
            for (int s = 0; s < ns; ++s)
                vh(s) = q[static_cast<std::size_t>(h)](static_cast<Eigen::Index>(s) * na +
                                                       candidate.at(h)[s]);
            // The optimal policy maximizes every V_h simultaneously.
            total += vh.sum();
            values[static_cast<std::size_t>(h)] = std::move(vh);
        }
        if (total > best_total) {
            best_total = total;
            out.policy = candidate;
            out.values = std::move(values);
        }
    }
    return out;
}

GameBruteForce brute_force_solve(const TurnBasedGame& game, std::uint64_t cap) {
    const int ns = game.num_states();
    const int na = game.num_actions();
    std::vector<int> max_states;
    std::vector<int> min_states;
    for (int s = 0; s < ns; ++s)
        (game.owner(s) == Player::maximizer ? max_states : min_states).push_back(s);

    const std::uint64_t max_count =
        checked_power(na, static_cast<long long>(max_states.size()), cap, "brute_force_solve");
    const std::uint64_t min_count =
        checked_power(na, static_cast<long long>(min_states.size()), cap, "brute_force_solve");
    if (max_count > cap / min_count)
        throw CapacityError("brute_force_solve: enumeration size exceeds cap");

    GameBruteForce out;
    double best_min_total = std::numeric_limits<double>::infinity();
    std::vector<int> max_digits(max_states.size());
    std::vector<int> min_digits(min_states.size());
    Policy joint;
    joint.action_of.assign(static_cast<std::size_t>(ns), 0);

    for (std::uint64_t j = 0; j < min_count; ++j) {
        decode(j, na, min_digits);
        for (std::size_t i = 0; i < min_states.size(); ++i)
            joint.action_of[static_cast<std::size_t>(min_states[i])] = min_digits[i];

        // Best response of the maximizer: an MDP, so the sum maximizer is uniform.
        double best_total = -std::numeric_limits<double>::infinity();
        Policy best_joint;
        Vector best_values;
        for (std::uint64_t i = 0; i < max_count; ++i) {
            decode(i, na, max_digits);
            for (std::size_t k = 0; k < max_states.size(); ++k)
                joint.action_of[static_cast<std::size_t>(max_states[k])] = max_digits[k];
            const Vector v =
                policy_values(game.dynamics(), evaluate_policy(game.dynamics(), joint), joint);
            ++out.pairs_evaluated;
            if (v.sum() > best_total) {
                best_total = v.sum();
                best_joint = joint;
                best_values = v;
            }
        }
        if (best_total < best_min_total) {
            best_min_total = best_total;
            out.policy = GamePolicy::split(game, best_joint);
            out.values = best_values;
        }
    }
    out.equilibrium_violation = equilibrium_violation(game, out.policy);
    return out;
}

} // namespace mdplab
