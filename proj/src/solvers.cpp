#include "mdplab/solvers.hpp"

#include "mdplab/exact.hpp"

#include <cmath>

namespace mdplab {

std::string to_string(SolverKind kind) {
    switch (kind) {
    case SolverKind::value_iteration:
        return "value_iteration";
    case SolverKind::policy_iteration:
        return "policy_iteration";
    case SolverKind::pseudo_vi:
        return "pseudo_vi";
    case SolverKind::backward_induction:
        return "backward_induction";
    case SolverKind::shapley:
        return "shapley";
    }
    return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
    for (auto kind : {SolverKind::value_iteration, SolverKind::policy_iteration,
                      SolverKind::pseudo_vi, SolverKind::backward_induction, SolverKind::shapley})
        if (to_string(kind) == name)
            return kind;
    return std::nullopt;
}

namespace {

PlanResult policy_iteration(const TabularMDP& model) {
    const int ns = model.num_states();
    const int na = model.num_actions();
    PlanResult out;
    out.policy = greedy_from_q(model.reward(), ns, na);
    for (;;) {
        ++out.iterations;
        const Vector q = evaluate_policy(model, out.policy);
        const double slack = 1e-12 * std::max(1.0, sup_norm(q));
        bool changed = false;
        for (int s = 0; s < ns; ++s) {
            const Eigen::Index base = static_cast<Eigen::Index>(s) * na;
            int best = out.policy[s];
            double best_value = q(base + best);
            for (int a = 0; a < na; ++a) {
                if (q(base + a) > best_value + slack) {
                    best = a;
                    best_value = q(base + a);
                }
            }
            if (best != out.policy[s]) {
                out.policy.action_of[static_cast<std::size_t>(s)] = best;
                changed = true;
            }
        }
        if (!changed) {
            out.values = policy_values(model, q, out.policy);
            return out;
        }
    }
}

} // namespace

PlanResult solve_proper_dmdp(const TabularMDP& model, double eps_ps, DmdpMethod method) {
    if (method == DmdpMethod::policy_iteration)
        return policy_iteration(model);
    if (!(eps_ps > 0.0))
        throw ModelError("eps_ps must be positive");
    auto solution = solve_optimal(model, eps_ps);
    PlanResult out;
    out.policy = std::move(solution.policy);
    out.values = std::move(solution.values);
    out.eps_reported = eps_ps;
    out.iterations = solution.iterations;
    return out;
}

int pseudo_vi_horizon(double eps, double gamma) {
    if (!(eps > 0.0))
        throw ModelError("eps must be positive");
    const double h = std::ceil(std::log(2.0 / (eps * (1.0 - gamma))) / (1.0 - gamma));
    return std::max(1, static_cast<int>(h));
}

ValueIterationTrace run_value_iteration(const DiscountedModel& model, int steps, bool truncate) {
    if (steps < 0)
        throw ModelError("step count must be non-negative");
    const double ceiling = 1.0 / (1.0 - model.gamma());
    ValueIterationTrace trace;
    trace.values.assign(static_cast<std::size_t>(steps) + 1, Vector::Zero(model.num_states()));
    for (int h = steps - 1; h >= 0; --h) {
        Vector v = max_over_actions(bellman_backup(model, trace.values[static_cast<std::size_t>(h) + 1]),
                                    model.num_states(), model.num_actions());
        if (truncate)
            v = v.cwiseMax(0.0).cwiseMin(ceiling);
        if (!v.allFinite() || sup_norm(v) > kDivergenceBound)
            throw DivergenceError("value iteration diverged after " + std::to_string(steps - h) +
                                  " backups");
        trace.values[static_cast<std::size_t>(h)] = std::move(v);
    }
    return trace;
}

PseudoViResult solve_pseudo_vi(const DiscountedModel& model, double eps, PseudoViOptions options) {
    PseudoViResult out;
    out.horizon = pseudo_vi_horizon(eps, model.gamma());
    auto trace = run_value_iteration(model, out.horizon, options.truncate);
    out.values = trace.values.front();
    out.policy = greedy_policy(model, out.values);
    if (options.keep_trace)
        out.trace = std::move(trace);
    return out;
}

FiniteHorizonSolution solve_fhmdp(const FiniteHorizonMDP& model, double eps_ps) {
    (void)eps_ps;
    const int horizon = model.horizon();
    const int ns = model.num_states();
    const int na = model.num_actions();
    FiniteHorizonSolution out;
    out.policy.steps.resize(static_cast<std::size_t>(horizon));
    out.values.resize(static_cast<std::size_t>(horizon));
    Vector next = Vector::Zero(ns);
    for (int h = horizon - 1; h >= 0; --h) {
        const Vector q = model.reward(h) + model.kernel() * next;
        out.policy.steps[static_cast<std::size_t>(h)] = greedy_from_q(q, ns, na);
        next = max_over_actions(q, ns, na);
        out.values[static_cast<std::size_t>(h)] = next;
    }
    return out;
}

GameSolution solve_tbsg(const TurnBasedGame& game, double eps_ps) {
    if (!(eps_ps > 0.0))
        throw ModelError("eps_ps must be positive");
    const TabularMDP& dyn = game.dynamics();
    const int ns = game.num_states();
    const int na = game.num_actions();
    const double gamma = game.gamma();
    const double threshold = eps_ps * (1.0 - gamma) / (2.0 * gamma);

    // Minimizer states are handled by negation: max over -Q.
    Vector sign(ns);
    for (int s = 0; s < ns; ++s)
        sign(s) = game.owner(s) == Player::maximizer ? 1.0 : -1.0;

    auto backup = [&](const Vector& v, Vector& q) {
        q = bellman_backup(dyn, v);
        Vector next(ns);
        for (int s = 0; s < ns; ++s) {
            const auto seg = q.segment(static_cast<Eigen::Index>(s) * na, na);
            next(s) = sign(s) > 0 ? seg.maxCoeff() : seg.minCoeff();
        }
        return next;
    };

    GameSolution out;
    Vector values = Vector::Zero(ns);
    Vector q;
    for (;;) {
        Vector next = backup(values, q);
        ++out.iterations;
        const double change = sup_norm(next - values);
        values = std::move(next);
        if (change <= threshold)
            break;
    }
    q = bellman_backup(dyn, values);
    Vector oriented = q;
    for (int s = 0; s < ns; ++s)
        oriented.segment(static_cast<Eigen::Index>(s) * na, na) *= sign(s);
    out.policy = GamePolicy::split(game, greedy_from_q(oriented, ns, na));
    out.values = std::move(values);
    return out;
}

TabularMDP induced_mdp(const TurnBasedGame& game, const GamePolicy& fixed, Player responder) {
    const TabularMDP& dyn = game.dynamics();
    const int na = game.num_actions();
    Matrix kernel = dyn.kernel();
    Vector reward = dyn.reward();
    const Policy& opponent = responder == Player::maximizer ? fixed.minimizer : fixed.maximizer;
    for (int s = 0; s < game.num_states(); ++s) {
        if (game.owner(s) == responder)
            continue;
        const int fixed_pair = dyn.pair(s, opponent[s]);
        for (int a = 0; a < na; ++a) {
            kernel.row(dyn.pair(s, a)) = dyn.kernel().row(fixed_pair);
            reward(dyn.pair(s, a)) = dyn.reward()(fixed_pair);
        }
    }
    if (responder == Player::minimizer)
        reward = -reward;
    return TabularMDP(dyn.num_states(), na, std::move(kernel), std::move(reward), dyn.gamma(),
                      RewardRange::unbounded);
}

GamePolicy counter_policy(const TurnBasedGame& game, const GamePolicy& fixed, Player responder) {
    const TabularMDP induced = induced_mdp(game, fixed, responder);
    const Policy response = solve_proper_dmdp(induced, 0.0, DmdpMethod::policy_iteration).policy;
    GamePolicy out = fixed;
    Policy& side = responder == Player::maximizer ? out.maximizer : out.minimizer;
    side.action_of.assign(static_cast<std::size_t>(game.num_states()), -1);
    for (int s = 0; s < game.num_states(); ++s)
        if (game.owner(s) == responder)
            side.action_of[static_cast<std::size_t>(s)] = response[s];
    return out;
}

} // namespace mdplab
