// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "mdplab/empirical.hpp"
#include "mdplab/exact.hpp"
#include "mdplab/experiment.hpp"
#include "mdplab/random.hpp"
#include "mdplab/solvers.hpp"
#include "mdplab/verification.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#ifndef MDPLAB_CLI_PATH
#error "MDPLAB_CLI_PATH must point at the mdplab executable"
#endif

using namespace mdplab;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Outcome()> run;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

Policy random_policy(RandomStream& rng, int ns, int na) {
    Policy p;
    for (int s = 0; s < ns; ++s)
        p.action_of.push_back(rng.index(na));
    return p;
}

Vector random_values(RandomStream& rng, int n, double hi) {
    Vector v(n);
    for (int i = 0; i < n; ++i)
        v(i) = rng.uniform(0.0, hi);
    return v;
}

double stddev(const std::vector<double>& xs) {
    if (xs.size() < 2)
        return 0.0;
    const double m = mean(xs);
    double acc = 0.0;
    for (double x : xs)
        acc += (x - m) * (x - m);
    return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

Json scaling_config() {
    return Json::parse(R"({
        "instance": {"mode": "anchor", "num_states": 50, "num_actions": 4, "num_anchors": 8,
                     "gamma": 0.9},
        "sweep": {"N": [250, 1000, 4000], "seeds": 20, "solver": "value_iteration",
                  "eps_ps": 1e-8},
        "master_seed": 1,
        "threads": 8
    })");
}

// 1
Outcome counterexample_fixture() {
    const auto half = pseudo_counterexample(0.5);
    double worst = half.closed_form_residual;
    bool ok = !half.singular && worst <= 1e-10;
    std::string which;
    for (double g : {0.3, 0.6, 0.9}) {
        const auto r = pseudo_counterexample(g);
        if (r.singular || r.uniformly_optimal_exists) {
            ok = false;
            which += " uniform_optimum_at_" + fmt(g);
        }
    }
    return {ok, "closed_form_residual=" + fmt(worst) + which};
}

// 2
Outcome value_identity() {
    double worst_residual = 0.0;
    double worst_u_excess = -1e300;
    for (std::uint64_t draw = 0; draw < 50; ++draw) {
        RandomStream rng(derive_key(2, draw));
        const auto truth = synthesize_linear_mdp(20, 3, 5, SynthesisMode::anchor(), derive_key(20, draw));
        const auto emp = estimate_model(truth, 50, derive_key(21, draw));
        const auto r = verify_value_identity(emp, truth.mdp, rng.index(5), random_policy(rng, 20, 3));
        worst_residual = std::max(worst_residual, r.residual);
        worst_u_excess = std::max(worst_u_excess, std::abs(r.u) - r.u_bound);
    }
    return {worst_residual <= 1e-8 && worst_u_excess <= 1e-9,
            "max_residual=" + fmt(worst_residual) + " max(|u|-1/(1-g))=" + fmt(worst_u_excess)};
}

// 3
Outcome property_sweeps() {
    double jensen = 1e300;
    double total_variance = 1e300;
    double lipschitz = 1e300;
    const double gammas[] = {0.5, 0.9, 0.99};
    for (std::uint64_t draw = 0; draw < 100; ++draw) {
        RandomStream rng(derive_key(3, draw));
        const auto truth = synthesize_linear_mdp(12, 3, 4, SynthesisMode::anchor(), derive_key(30, draw));
        jensen = std::min(jensen, check_variance_jensen(truth, random_values(rng, 12, 10.0)));

        const double g = gammas[draw % 3];
        const TabularMDP m(12, 3, truth.mdp.kernel(), truth.mdp.reward(), g);
        total_variance = std::min(total_variance, check_total_variance_bound(m, random_policy(rng, 12, 3)));

        const auto emp = estimate_model(truth, 40, derive_key(31, draw));
        const double u1 = rng.uniform(-20.0, 20.0);
        const double u2 = rng.uniform(-20.0, 20.0);
        lipschitz = std::min(lipschitz, check_tilt_lipschitz(emp, truth.mdp, rng.index(4),
                                                             random_policy(rng, 12, 3), u1, u2));
    }
    const bool ok = jensen >= -1e-9 && total_variance >= -1e-9 && lipschitz >= -1e-9;
    return {ok, "min_jensen_margin=" + fmt(jensen) + " min_total_variance_slack=" +
                    fmt(total_variance) + " min_lipschitz_slack=" + fmt(lipschitz)};
}

// 4
Outcome negativity_rate() {
    const auto truth = adversarial_instance(2, 2.0);
    int pseudo = 0;
    const int seeds = 1000;
    for (int s = 0; s < seeds; ++s)
        if (estimate_model(truth, 1000, derive_key(4, static_cast<std::uint64_t>(s))).classification ==
            Classification::pseudo)
            ++pseudo;
    const double fraction = static_cast<double>(pseudo) / seeds;
    return {fraction >= 0.25, "pseudo_fraction=" + fmt(fraction)};
}

// 5
Outcome unbiasedness() {
    const int ns = 5;
    const int na = 4;
    const int k = 4;
    const std::int64_t n = 100;
    const int seeds = 10000;
    const auto truth = synthesize_linear_mdp(ns, na, k, SynthesisMode::anchor(), 5);
    Matrix sum = Matrix::Zero(ns * na, ns);
    for (int s = 0; s < seeds; ++s)
        sum += estimate_model(truth, n, derive_key(50, static_cast<std::uint64_t>(s))).kernel_hat;
    const Matrix avg = sum / seeds;

    // Var(P_hat(i,j)) = sum_k lambda_ik^2 p_kj (1 - p_kj) / N, exact for multinomial anchor rows.
    const Matrix& lambda = truth.coefficients.lambda;
    const Matrix& pk = truth.anchor_kernel;
    const Matrix bern = pk.array() * (1.0 - pk.array());
    const Matrix var = lambda.cwiseAbs2() * bern / static_cast<double>(n);
    int within = 0;
    const int total = static_cast<int>(avg.size());
    for (Eigen::Index i = 0; i < avg.rows(); ++i)
        for (Eigen::Index j = 0; j < avg.cols(); ++j) {
            const double se = std::sqrt(var(i, j) / seeds);
            if (std::abs(avg(i, j) - truth.mdp.kernel()(i, j)) <= 3.0 * se + 1e-12)
                ++within;
        }
    const double fraction = static_cast<double>(within) / total;
    return {fraction >= 0.99, "entries_within_3se=" + std::to_string(within) + "/" + std::to_string(total)};
}

// 6
Outcome scaling() {
    const auto config = parse_config(scaling_config());
    const auto report = summarize(run_sweep(config));
    std::vector<double> means;
    for (const auto& r : report.rows)
        means.push_back(r.mean);
    bool decreasing = means.size() == 3;
    for (std::size_t i = 1; i < means.size(); ++i)
        decreasing = decreasing && means[i] < means[i - 1];
    const double slope = report.slopes.empty() ? std::nan("") : report.slopes.begin()->second;
    std::string detail = "slope=" + fmt(slope) + " means=";
    for (double m : means)
        detail += fmt(m) + " ";
    return {decreasing && slope >= -0.65 && slope <= -0.35, detail};
}

// 7
Outcome misspecification_envelope() {
    Json doc = scaling_config();
    doc["instance"]["xi"] = Json::array({0.0, 0.01, 0.04});
    const auto config = parse_config(doc);
    const auto rows = run_sweep(config);
    const double gamma = config.instance.gamma;
    const std::size_t per_level = config.samples.size() * static_cast<std::size_t>(config.seeds);

    std::map<std::int64_t, std::vector<double>> baseline;
    for (std::size_t i = 0; i < per_level; ++i)
        baseline[rows[i].samples].push_back(rows[i].suboptimality);

    double worst = -1e300;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double xi = config.instance.xi[i / per_level];
        const auto& base = baseline.at(rows[i].samples);
        const double envelope = mean(base) + 16.0 * std::sqrt(xi) / ((1 - gamma) * (1 - gamma)) +
                                3.0 * stddev(base);
        worst = std::max(worst, rows[i].suboptimality - envelope);
    }
    return {worst <= 0.0, "max(subopt-envelope)=" + fmt(worst)};
}

// 8
Outcome pseudo_path() {
    const auto config = parse_config(Json::parse(R"({
        "instance": {"mode": "regular", "regularity": 2.0, "num_states": 20, "num_actions": 3,
                     "num_anchors": 5, "gamma": 0.9},
        "sweep": {"N": [1000, 10000, 100000], "seeds": 20, "solver": "pseudo_vi", "eps_ps": 1e-6},
        "master_seed": 1,
        "threads": 8
    })"));
    const auto rows = run_sweep(config);
    bool finite = true;
    int pseudo = 0;
    for (const auto& r : rows) {
        finite = finite && r.status == "ok" && std::isfinite(r.suboptimality);
        pseudo += r.classification == Classification::pseudo;
    }
    const auto report = summarize(rows);
    bool decreasing = report.rows.size() == 3;
    for (std::size_t i = 1; i < report.rows.size(); ++i)
        decreasing = decreasing && report.rows[i].mean < report.rows[i - 1].mean;

    const Instance instance = build_instance(config);
    const int horizon = pseudo_vi_horizon(config.eps_ps, config.instance.gamma);
    double worst_slack = 1e300;
    for (std::int64_t n : config.samples)
        for (int s = 0; s < config.seeds; ++s) {
            const auto emp = estimate_model(instance.structure, instance.truths[0], n,
                                            cell_key(config.master_seed, n, s));
            worst_slack = std::min(worst_slack,
                                   check_pseudo_vi_decomposition(instance.structure, emp, horizon).slack());
        }
    std::string detail = "pseudo_cells=" + std::to_string(pseudo) + "/" + std::to_string(rows.size()) +
                         " means=";
    for (const auto& r : report.rows)
        detail += fmt(r.mean) + " ";
    detail += "min_decomposition_slack=" + fmt(worst_slack);
    return {finite && pseudo > 0 && decreasing && worst_slack >= -1e-9, detail};
}

// 9
Outcome finite_horizon_and_game() {
    bool ok = true;
    double fh_gap = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto base = synthesize_linear_mdp(3, 2, 6, SynthesisMode::anchor(), derive_key(90, seed));
        RandomStream rng(derive_key(91, seed));
        std::vector<Vector> rewards;
        for (int h = 0; h < 3; ++h)
            rewards.push_back(random_values(rng, 6, 1.0));
        const FiniteHorizonMDP m(3, 2, base.mdp.kernel(), rewards);
        const auto exact = solve_fhmdp(m, 0.0);
        const auto brute = brute_force_solve(m);
        ok = ok && exact.policy == brute.policy;
        for (int h = 0; h < 3; ++h)
            fh_gap = std::max(fh_gap, sup_norm(exact.values[static_cast<std::size_t>(h)] -
                                               brute.values[static_cast<std::size_t>(h)]));
    }
    ok = ok && fh_gap == 0.0;

    const double eps = 1e-6;
    double value_gap = 0.0;
    double violation = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto base = synthesize_linear_mdp(3, 2, 6, SynthesisMode::anchor(), derive_key(92, seed));
        const TurnBasedGame game(base.mdp, {Player::maximizer, Player::minimizer, Player::maximizer});
        const auto sol = solve_tbsg(game, eps);
        const auto brute = brute_force_solve(game);
        value_gap = std::max(value_gap, sup_norm(sol.values - brute.values));
        violation = std::max(violation, equilibrium_violation(game, sol.policy));
    }
    ok = ok && value_gap <= 2 * eps && violation <= eps;
    return {ok, "fh_value_gap=" + fmt(fh_gap) + " game_value_gap=" + fmt(value_gap) +
                    " equilibrium_violation=" + fmt(violation)};
}

// 10
Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mdplab_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string config_path = (dir / "config.json").string();
    std::ofstream(config_path) << scaling_config().dump(2) << '\n';

    std::vector<std::string> outputs;
    for (int threads : {1, 8, 1, 8}) {
        const std::string out = (dir / ("run" + std::to_string(outputs.size()) + ".csv")).string();
        const std::string cmd = std::string("\"") + MDPLAB_CLI_PATH + "\" sweep -c \"" + config_path +
                                "\" -j " + std::to_string(threads) + " -o \"" + out + "\" > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0)
            return {false, "sweep command failed: " + cmd};
        std::ifstream in(out, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        outputs.push_back(ss.str());
    }
    bool same = !outputs[0].empty();
    for (const auto& o : outputs)
        same = same && o == outputs[0];
    return {same, "runs=4 bytes=" + std::to_string(outputs[0].size())};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "counterexample closed forms and no uniform optimum", 1.0, counterexample_fixture},
        {2, "value identity on 50 anchor instances", 30.0, value_identity},
        {3, "variance, total-variance and tilt-Lipschitz sweeps", 60.0, property_sweeps},
        {4, "adversarial pseudo-classification rate", 60.0, negativity_rate},
        {5, "empirical kernel unbiasedness", 120.0, unbiasedness},
        {6, "suboptimality scaling in N", 300.0, scaling},
        {7, "misspecification envelope", 300.0, misspecification_envelope},
        {8, "pseudo VI on regular instances", 300.0, pseudo_path},
        {9, "finite-horizon and game oracles", 30.0, finite_horizon_and_game},
        {10, "sweep CSV determinism across thread counts", 120.0, determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = secs < c.budget_s;
        const bool passed = outcome.passed && in_budget;
        failures += !passed;
        std::printf("%s criterion %d: %s | %s | %.2fs (budget %.0fs)%s\n", passed ? "PASS" : "FAIL",
                    c.id, c.name.c_str(), outcome.detail.c_str(), secs, c.budget_s,
                    in_budget ? "" : " over budget");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
