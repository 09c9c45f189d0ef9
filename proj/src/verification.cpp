#include "mdplab/verification.hpp"

#include "mdplab/io.hpp"
#include "mdplab/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mdplab {

Vector apply_resolvent(const DiscountedModel& model, const Policy& policy, const Vector& x) {
    validate(policy, model.num_states(), model.num_actions());
    const int ns = model.num_states();
    const double gamma = model.gamma();
    // y = x + gamma P z with z = (I - gamma P_pi)^{-1} Pi x.
    Vector pi_x(ns);
    for (int s = 0; s < ns; ++s)
        pi_x(s) = x(model.pair(s, policy[s]));
    const Matrix system = Matrix::Identity(ns, ns) - gamma * state_kernel(model, policy);
    Eigen::PartialPivLU<Matrix> lu(system);
    if (!(std::abs(lu.determinant()) > 0.0))
        throw NoFixedPointError("I - gamma P_pi is singular");
    const Vector z = lu.solve(pi_x);
    if (!z.allFinite())
        throw NoFixedPointError("resolvent solve produced non-finite values");
    return x + gamma * model.kernel() * z;
}

// ---------------------------------------------------------------------------

namespace {

void require_convex(const EmpiricalModel& empirical) {
    if (!empirical.lambda_convex)
        throw ModelError("auxiliary models require convex combination coefficients");
}

int anchor_pair(const EmpiricalModel& empirical, int anchor) {
    const auto& idx = empirical.provenance.anchors.indices;
    if (anchor < 0 || anchor >= static_cast<int>(idx.size()))
        throw ModelError("anchor position out of range");
    return idx[static_cast<std::size_t>(anchor)];
}

Vector empirical_values(const DiscountedModel& model, const Policy& policy) {
    return policy_values(model, evaluate_policy(model, policy), policy);
}

Policy exact_optimal_policy(const TabularMDP& model) {
    return solve_proper_dmdp(model, 0.0, DmdpMethod::policy_iteration).policy;
}

Vector optimal_q_exact(const TabularMDP& model) {
    return evaluate_policy(model, exact_optimal_policy(model));
}

} // namespace

AuxiliaryMDP build_auxiliary_mdp(const EmpiricalModel& empirical,
                                 const Eigen::Ref<const Eigen::RowVectorXd>& truth_row,
                                 int anchor, double u) {
    require_convex(empirical);
    anchor_pair(empirical, anchor);
    if (truth_row.size() != empirical.num_states)
        throw ModelError("truth row length must equal the state count");
    Matrix anchor_kernel = empirical.p_hat_anchor;
    anchor_kernel.row(anchor) = truth_row;
    Matrix kernel = empirical.lambda * anchor_kernel;
    // Anchor rows copy their anchor kernel row exactly.
    for (Eigen::Index i = 0; i < kernel.rows(); ++i)
        for (Eigen::Index k = 0; k < empirical.lambda.cols(); ++k)
            if (empirical.lambda(i, k) == 1.0)
                kernel.row(i) = anchor_kernel.row(k);
    Vector reward = empirical.reward + u * empirical.lambda.col(anchor);
    return AuxiliaryMDP{TabularMDP(empirical.num_states, empirical.num_actions, std::move(kernel),
                                   std::move(reward), empirical.gamma, RewardRange::unbounded),
                        anchor, u};
}

ValueIdentityReport verify_value_identity(const EmpiricalModel& empirical, const TabularMDP& truth,
                                          int anchor, const Policy& policy) {
    require_convex(empirical);
    const int pair = anchor_pair(empirical, anchor);
    const TabularMDP hat = empirical.as_proper();
    const Vector q_hat = evaluate_policy(hat, policy);
    const Vector v_hat = policy_values(hat, q_hat, policy);

    ValueIdentityReport out;
    out.u = empirical.gamma *
            (empirical.kernel_hat.row(pair) - truth.kernel().row(pair)).dot(v_hat);
    out.u_bound = 1.0 / (1.0 - empirical.gamma);
    out.u_within_bound = std::abs(out.u) <= out.u_bound + 1e-9;
    const AuxiliaryMDP aux = build_auxiliary_mdp(empirical, truth.kernel().row(pair), anchor, out.u);
    out.residual = sup_norm(q_hat - evaluate_policy(aux.model, policy));
    return out;
}

ValueIdentityReport verify_optimal_value_identity(const EmpiricalModel& empirical,
                                                  const TabularMDP& truth, int anchor) {
    require_convex(empirical);
    const int pair = anchor_pair(empirical, anchor);
    const TabularMDP hat = empirical.as_proper();
    const Policy pi_hat = exact_optimal_policy(hat);
    const Vector q_hat = evaluate_policy(hat, pi_hat);
    const Vector v_hat = policy_values(hat, q_hat, pi_hat);

    ValueIdentityReport out;
    out.u = empirical.gamma *
            (empirical.kernel_hat.row(pair) - truth.kernel().row(pair)).dot(v_hat);
    out.u_bound = 1.0 / (1.0 - empirical.gamma);
    out.u_within_bound = std::abs(out.u) <= out.u_bound + 1e-9;
    const AuxiliaryMDP aux = build_auxiliary_mdp(empirical, truth.kernel().row(pair), anchor, out.u);
    out.residual = sup_norm(q_hat - optimal_q_exact(aux.model));
    return out;
}

double check_tilt_lipschitz(const EmpiricalModel& empirical, const TabularMDP& truth, int anchor,
                            const Policy& policy, double u1, double u2) {
    const int pair = anchor_pair(empirical, anchor);
    const auto row = truth.kernel().row(pair);
    const Vector q1 = evaluate_policy(build_auxiliary_mdp(empirical, row, anchor, u1).model, policy);
    const Vector q2 = evaluate_policy(build_auxiliary_mdp(empirical, row, anchor, u2).model, policy);
    return std::abs(u1 - u2) / (1.0 - empirical.gamma) - sup_norm(q1 - q2);
}

FiniteHorizonIdentityReport verify_finite_horizon_identity(const EmpiricalModel& empirical,
                                                           const TabularMDP& truth, int anchor,
                                                           const TimeDependentPolicy& policy,
                                                           int horizon) {
    require_convex(empirical);
    if (horizon < 1 || policy.horizon() != horizon)
        throw ModelError("policy horizon must equal the requested horizon");
    const int pair = anchor_pair(empirical, anchor);
    const FiniteHorizonMDP hat =
        FiniteHorizonMDP::stationary(empirical.num_states, empirical.num_actions,
                                     empirical.kernel_hat, empirical.reward, horizon,
                                     RewardRange::unbounded);
    const std::vector<Vector> q_hat = evaluate_policy(hat, policy);

    FiniteHorizonIdentityReport out;
    out.worst_u_excess = -std::numeric_limits<double>::infinity();
    const Eigen::RowVectorXd diff = empirical.kernel_hat.row(pair) - truth.kernel().row(pair);
    std::vector<double> u(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h) {
        double uh = 0.0;
        if (h + 1 < horizon) {
            const Vector& q_next = q_hat[static_cast<std::size_t>(h) + 1];
            Vector v_next(empirical.num_states);
            for (int s = 0; s < empirical.num_states; ++s)
                v_next(s) = q_next(s * empirical.num_actions + policy.at(h + 1)[s]);
            uh = diff.dot(v_next);
        }
        u[static_cast<std::size_t>(h)] = uh;
        out.worst_u_excess = std::max(out.worst_u_excess, std::abs(uh) - (horizon - h - 1));
    }

    const AuxiliaryMDP base = build_auxiliary_mdp(empirical, truth.kernel().row(pair), anchor, 0.0);
    std::vector<Vector> rewards;
    rewards.reserve(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h)
        rewards.push_back(empirical.reward + u[static_cast<std::size_t>(h)] * empirical.lambda.col(anchor));
    const FiniteHorizonMDP aux(empirical.num_states, empirical.num_actions, base.model.kernel(),
                               std::move(rewards), RewardRange::unbounded);
    const std::vector<Vector> q_aux = evaluate_policy(aux, policy);
    for (int h = 0; h < horizon; ++h)
        out.residual = std::max(out.residual, sup_norm(q_hat[static_cast<std::size_t>(h)] -
                                                       q_aux[static_cast<std::size_t>(h)]));
    return out;
}

// ---------------------------------------------------------------------------

double check_variance_jensen(const LinearGroundTruth& truth, const Vector& values) {
    if (!truth.coefficients.is_convex)
        throw ModelError("variance comparison requires convex combination coefficients");
    const Vector sd = variance_vector(truth.mdp.kernel(), values).cwiseSqrt();
    Vector anchor_sd(truth.anchors.size());
    for (int k = 0; k < truth.anchors.size(); ++k)
        anchor_sd(k) = sd(truth.anchors.indices[static_cast<std::size_t>(k)]);
    return (sd - truth.coefficients.lambda * anchor_sd).minCoeff();
}

double check_total_variance_bound(const TabularMDP& truth, const Policy& policy) {
    const Vector v = empirical_values(truth, policy);
    const Vector sd = variance_vector(truth, v).cwiseSqrt();
    const double lhs = sup_norm(apply_resolvent(truth, policy, sd));
    return std::sqrt(2.0 / std::pow(1.0 - truth.gamma(), 3)) - lhs;
}

double check_value_difference_identity(const TabularMDP& model, const TabularMDP& other,
                                       const Policy& policy) {
    if (model.num_pairs() != other.num_pairs() || model.gamma() != other.gamma())
        throw ModelError("models must share shape and discount");
    const Vector q = evaluate_policy(model, policy);
    const Vector q_other = evaluate_policy(other, policy);
    const Vector v_other = policy_values(other, q_other, policy);
    const Vector rhs =
        model.gamma() * apply_resolvent(model, policy, (model.kernel() - other.kernel()) * v_other);
    const Vector reward_gap = model.reward() - other.reward();
    return sup_norm((q - q_other) - rhs - apply_resolvent(model, policy, reward_gap));
}

DecompositionReport check_plugin_decomposition(const TabularMDP& truth, const TabularMDP& empirical,
                                               const Policy& plugin_policy, double eps_ps) {
    const Policy pi_star = exact_optimal_policy(truth);
    const Vector q_star = evaluate_policy(truth, pi_star);
    const Vector q_plugin = evaluate_policy(truth, plugin_policy);
    DecompositionReport out;
    out.lhs = sup_norm(q_star - q_plugin);
    out.rhs = sup_norm(q_star - evaluate_policy(empirical, pi_star)) +
              sup_norm(evaluate_policy(empirical, plugin_policy) - q_plugin) + eps_ps;
    return out;
}

DecompositionReport check_pseudo_vi_decomposition(const LinearGroundTruth& truth,
                                                  const EmpiricalModel& empirical, int horizon) {
    const PseudoMDP hat = empirical.as_pseudo();
    const ValueIterationTrace hat_trace = run_value_iteration(hat, horizon);
    const ValueIterationTrace true_trace = run_value_iteration(truth.mdp, horizon);
    const double gamma = truth.mdp.gamma();
    const double regularity = truth.coefficients.regularity;
    const Matrix anchor_gap = empirical.p_hat_anchor - truth.anchor_kernel;

    DecompositionReport out;
    out.lhs = sup_norm(bellman_backup(hat, hat_trace.values[1]) -
                       bellman_backup(truth.mdp, true_trace.values[1]));
    double discount = 1.0;
    for (int h = 0; h < horizon; ++h) {
        discount *= gamma;
        out.rhs += discount * regularity *
                   sup_norm(anchor_gap * hat_trace.values[static_cast<std::size_t>(h) + 1]);
    }
    return out;
}

// ---------------------------------------------------------------------------

PseudoMDP counterexample_model(double gamma) {
    Matrix kernel(4, 2);
    kernel << 0.0, 1.0,  //
        0.0, 1.0,        //
        1.0, 0.0,        //
        -0.1, 1.1;
    Vector reward(4);
    reward << 1.0, 0.0, 0.0, 1.0;
    return PseudoMDP(2, 2, std::move(kernel), std::move(reward), gamma);
}

TabularMDP counterexample_proper_variant(double gamma) {
    Matrix kernel(4, 2);
    kernel << 0.0, 1.0,  //
        0.0, 1.0,        //
        1.0, 0.0,        //
        0.0, 1.0;
    Vector reward(4);
    reward << 1.0, 0.0, 0.0, 1.0;
    return TabularMDP(2, 2, std::move(kernel), std::move(reward), gamma);
}

CounterexampleReport pseudo_counterexample(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ModelError("gamma must lie in (0, 1)");
    CounterexampleReport out;
    out.gamma = gamma;
    const PseudoMDP model = counterexample_model(gamma);

    const double g2 = 1.0 - gamma * gamma;
    const double d = 0.1 * gamma * gamma - 1.1 * gamma + 1.0;
    out.closed_forms[0] = Vector{{1.0 / g2, gamma / g2}};
    out.closed_forms[1] = Vector{{1.0 / (1.0 - gamma), 1.0 / (1.0 - gamma)}};
    out.closed_forms[2] = Vector{{0.0, 0.0}};
    out.closed_forms[3] = Vector{{gamma / d, 1.0 / d}};

    try {
        for (int i = 0; i < 4; ++i) {
            const Policy policy{{i / 2, i % 2}};
            out.values[static_cast<std::size_t>(i)] =
                policy_values(model, evaluate_policy(model, policy), policy);
        }
    } catch (const NoFixedPointError& e) {
        out.singular = true;
        out.error = e.what();
        return out;
    }

    for (int i = 0; i < 4; ++i)
        out.closed_form_residual =
            std::max(out.closed_form_residual,
                     sup_norm(out.values[static_cast<std::size_t>(i)] -
                              out.closed_forms[static_cast<std::size_t>(i)]));

    std::array<double, 2> best{-std::numeric_limits<double>::infinity(),
                               -std::numeric_limits<double>::infinity()};
    for (int i = 0; i < 4; ++i)
        for (int s = 0; s < 2; ++s)
            if (out.values[static_cast<std::size_t>(i)](s) > best[static_cast<std::size_t>(s)]) {
                best[static_cast<std::size_t>(s)] = out.values[static_cast<std::size_t>(i)](s);
                out.per_state_argmax[static_cast<std::size_t>(s)] = i;
            }
    for (int i = 0; i < 4; ++i) {
        const Vector& v = out.values[static_cast<std::size_t>(i)];
        if (v(0) >= best[0] - 1e-12 && v(1) >= best[1] - 1e-12)
            out.uniformly_optimal_exists = true;
    }
    return out;
}

// ---------------------------------------------------------------------------

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string VerificationReport::to_json() const {
    Json doc;
    doc["seed"] = seed;
    doc["passed"] = passed();
    Json list = Json::array();
    for (const auto& c : checks)
        list.push_back(Json{{"name", c.name},
                            {"passed", c.passed},
                            {"margin", c.margin},
                            {"detail", c.detail}});
    doc["checks"] = std::move(list);
    return doc.dump(2) + "\n";
}

namespace {

Policy random_policy(RandomStream& rng, int num_states, int num_actions) {
    Policy p;
    p.action_of.resize(static_cast<std::size_t>(num_states));
    for (auto& a : p.action_of)
        a = rng.index(num_actions);
    return p;
}

Vector random_values(RandomStream& rng, int n, double hi) {
    Vector v(n);
    for (int i = 0; i < n; ++i)
        v(i) = rng.uniform(0.0, hi);
    return v;
}

TabularMDP random_tabular(RandomStream& rng, int ns, int na, double gamma) {
    Matrix kernel(ns * na, ns);
    Vector reward(ns * na);
    for (int i = 0; i < ns * na; ++i) {
        const auto row = rng.simplex(ns);
        for (int j = 0; j < ns; ++j)
            kernel(i, j) = row[static_cast<std::size_t>(j)];
        double total = kernel.row(i).sum();
        kernel.row(i) /= total;
        reward(i) = rng.uniform();
    }
    // Renormalizing can leave an ulp; push it into the largest entry.
    for (int i = 0; i < ns * na; ++i) {
        Eigen::Index j = 0;
        kernel.row(i).maxCoeff(&j);
        kernel(i, j) += 1.0 - kernel.row(i).sum();
    }
    return TabularMDP(ns, na, std::move(kernel), std::move(reward), gamma);
}

struct CheckBuilder {
    std::vector<CheckResult>& out;

    // Passes when margin >= 0; margin is the worst case over the draws.
    void add(std::string name, double margin, std::string detail = {}) {
        out.push_back(CheckResult{std::move(name), margin >= 0.0, margin, std::move(detail)});
    }
    void fail(std::string name, std::string detail) {
        out.push_back(CheckResult{std::move(name), false, -std::numeric_limits<double>::infinity(),
                                  std::move(detail)});
    }
};

template <typename Fn>
void guarded(CheckBuilder& checks, const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        checks.fail(name, e.what());
    }
}

} // namespace

VerificationReport run_verification_suite(const VerificationOptions& options) {
    VerificationReport report;
    report.seed = options.seed;
    CheckBuilder checks{report.checks};
    const std::uint64_t seed = options.seed;

    guarded(checks, "counterexample_closed_forms", [&] {
        const auto r = pseudo_counterexample(0.5);
        if (r.singular)
            return checks.fail("counterexample_closed_forms", r.error);
        checks.add("counterexample_closed_forms", 1e-10 - r.closed_form_residual);
    });

    guarded(checks, "counterexample_no_uniform_optimum", [&] {
        std::ostringstream detail;
        bool ok = true;
        for (double g : {0.3, 0.5, 0.6, 0.9}) {
            const auto r = pseudo_counterexample(g);
            ok = ok && !r.singular && !r.uniformly_optimal_exists;
            detail << "gamma=" << g << " argmax=(" << r.per_state_argmax[0] << ","
                   << r.per_state_argmax[1] << ") ";
        }
        checks.add("counterexample_no_uniform_optimum", ok ? 0.0 : -1.0, detail.str());
    });

    guarded(checks, "counterexample_row_sums", [&] {
        const PseudoMDP m = counterexample_model(0.5);
        const double err = (m.kernel().rowwise().sum().array() - 1.0).abs().maxCoeff();
        checks.add("counterexample_row_sums", kRowSumTolerance - err);
    });

    guarded(checks, "value_identity", [&] {
        double worst = std::numeric_limits<double>::infinity();
        double worst_u = std::numeric_limits<double>::infinity();
        double worst_opt = std::numeric_limits<double>::infinity();
        double worst_lip = std::numeric_limits<double>::infinity();
        for (int draw = 0; draw < 10; ++draw) {
            const std::uint64_t key = derive_key(seed, 0x1d00 + static_cast<std::uint64_t>(draw));
            RandomStream rng(derive_key(key, 1));
            const auto truth = synthesize_linear_mdp(20, 3, 5, SynthesisMode::anchor(), key);
            const EmpiricalModel emp = estimate_model(truth, 50, derive_key(key, 2));
            const int anchor = rng.index(5);
            const Policy pi = random_policy(rng, 20, 3);
            const auto r = verify_value_identity(emp, truth.mdp, anchor, pi);
            worst = std::min(worst, 1e-8 - r.residual);
            worst_u = std::min(worst_u, r.u_bound + 1e-9 - std::abs(r.u));
            worst_opt = std::min(worst_opt,
                                 1e-8 - verify_optimal_value_identity(emp, truth.mdp, anchor).residual);
            const double u1 = rng.uniform(-10.0, 10.0);
            const double u2 = rng.uniform(-10.0, 10.0);
            worst_lip = std::min(worst_lip,
                                 check_tilt_lipschitz(emp, truth.mdp, anchor, pi, u1, u2) + 1e-9);
        }
        checks.add("value_identity", worst);
        checks.add("tilt_bound", worst_u);
        checks.add("optimal_value_identity", worst_opt);
        checks.add("tilt_lipschitz", worst_lip);
    });

    guarded(checks, "finite_horizon_identity", [&] {
        double worst = std::numeric_limits<double>::infinity();
        double worst_u = std::numeric_limits<double>::infinity();
        for (int draw = 0; draw < 5; ++draw) {
            const std::uint64_t key = derive_key(seed, 0xf400 + static_cast<std::uint64_t>(draw));
            RandomStream rng(derive_key(key, 1));
            const auto truth = synthesize_linear_mdp(8, 2, 4, SynthesisMode::anchor(), key);
            const EmpiricalModel emp = estimate_model(truth, 30, derive_key(key, 2));
            const int horizon = 2 + draw % 4;
            TimeDependentPolicy pi;
            for (int h = 0; h < horizon; ++h)
                pi.steps.push_back(random_policy(rng, 8, 2));
            const auto r = verify_finite_horizon_identity(emp, truth.mdp, rng.index(4), pi, horizon);
            worst = std::min(worst, 1e-8 - r.residual);
            worst_u = std::min(worst_u, 1e-9 - r.worst_u_excess);
        }
        checks.add("finite_horizon_identity", worst);
        checks.add("finite_horizon_tilt_bound", worst_u);
    });

    guarded(checks, "variance_jensen", [&] {
        double worst = std::numeric_limits<double>::infinity();
        for (int draw = 0; draw < 20; ++draw) {
            const std::uint64_t key = derive_key(seed, 0x7a00 + static_cast<std::uint64_t>(draw));
            RandomStream rng(derive_key(key, 1));
            const auto truth = synthesize_linear_mdp(12, 3, 4, SynthesisMode::anchor(), key);
            const Vector v = random_values(rng, 12, 1.0 / (1.0 - truth.mdp.gamma()));
            worst = std::min(worst, check_variance_jensen(truth, v) + 1e-9);
        }
        checks.add("variance_jensen", worst);
    });

    guarded(checks, "total_variance_bound", [&] {
        double worst = std::numeric_limits<double>::infinity();
        const double gammas[] = {0.5, 0.9, 0.99};
        for (int draw = 0; draw < 21; ++draw) {
            RandomStream rng(derive_key(seed, 0x7b00 + static_cast<std::uint64_t>(draw)));
            const TabularMDP m = random_tabular(rng, 10, 3, gammas[draw % 3]);
            worst = std::min(worst, check_total_variance_bound(m, random_policy(rng, 10, 3)) + 1e-9);
        }
        checks.add("total_variance_bound", worst);
    });

    guarded(checks, "value_difference_identity", [&] {
        double worst = std::numeric_limits<double>::infinity();
        for (int draw = 0; draw < 10; ++draw) {
            RandomStream rng(derive_key(seed, 0x7c00 + static_cast<std::uint64_t>(draw)));
            const TabularMDP a = random_tabular(rng, 8, 2, 0.9);
            const TabularMDP b = random_tabular(rng, 8, 2, 0.9).with_reward(a.reward(), RewardRange::unit);
            worst = std::min(worst, 1e-8 - check_value_difference_identity(a, b, random_policy(rng, 8, 2)));
        }
        checks.add("value_difference_identity", worst);
    });

    guarded(checks, "plugin_decomposition", [&] {
        double worst = std::numeric_limits<double>::infinity();
        const double eps_ps = 1e-6;
        for (int draw = 0; draw < 10; ++draw) {
            const std::uint64_t key = derive_key(seed, 0x7d00 + static_cast<std::uint64_t>(draw));
            const auto truth = synthesize_linear_mdp(15, 3, 5, SynthesisMode::anchor(), key);
            const TabularMDP hat = estimate_model(truth, 100, derive_key(key, 2)).as_proper();
            const Policy pi = solve_proper_dmdp(hat, eps_ps, DmdpMethod::value_iteration).policy;
            worst = std::min(worst, check_plugin_decomposition(truth.mdp, hat, pi, eps_ps).slack() + 1e-9);
        }
        checks.add("plugin_decomposition", worst);
    });

    guarded(checks, "pseudo_vi_decomposition", [&] {
        double worst = std::numeric_limits<double>::infinity();
        for (int draw = 0; draw < 5; ++draw) {
            const std::uint64_t key = derive_key(seed, 0x7e00 + static_cast<std::uint64_t>(draw));
            const auto truth = synthesize_linear_mdp(10, 2, 4, SynthesisMode::regular(2.0), key);
            const EmpiricalModel emp = estimate_model(truth, 200, derive_key(key, 2));
            const int horizon = pseudo_vi_horizon(0.1, truth.mdp.gamma());
            worst = std::min(worst, check_pseudo_vi_decomposition(truth, emp, horizon).slack() + 1e-9);
        }
        checks.add("pseudo_vi_decomposition", worst);
    });

    for (const auto& path : options.fixture_files) {
        const std::string name = "fixture:" + path;
        try {
            load_model(path);
            checks.add(name, 0.0, "loaded");
        } catch (const std::exception& e) {
            checks.fail(name, e.what());
        }
    }
    return report;
}

} // namespace mdplab
