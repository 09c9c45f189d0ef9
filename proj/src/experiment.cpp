#include "mdplab/experiment.hpp"

#include "mdplab/random.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

namespace mdplab {

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::dmdp:
        return "dmdp";
    case ModelKind::fhmdp:
        return "fhmdp";
    case ModelKind::tbsg:
        return "tbsg";
    }
    return "unknown";
}

namespace {

std::optional<ModelKind> parse_kind(const std::string& name) {
    for (auto kind : {ModelKind::dmdp, ModelKind::fhmdp, ModelKind::tbsg})
        if (to_string(kind) == name)
            return kind;
    return std::nullopt;
}

std::string mode_name(InstanceMode mode) {
    switch (mode) {
    case InstanceMode::anchor:
        return "anchor";
    case InstanceMode::regular:
        return "regular";
    case InstanceMode::adversarial:
        return "adversarial";
    }
    return "unknown";
}

template <typename T>
T get_field(const Json& obj, const std::string& prefix, const char* key, T fallback) {
    if (!obj.contains(key))
        return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(prefix + key, "wrong type");
    }
}

std::uint64_t parse_seed_value(const Json& value, const std::string& field) {
    if (value.is_number_unsigned())
        return value.get<std::uint64_t>();
    if (value.is_number_integer() && value.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(value.get<std::int64_t>());
    throw ConfigError(field, "expected a non-negative integer");
}

} // namespace

ExperimentConfig parse_config(const Json& doc) {
    if (!doc.is_object())
        throw ConfigError("config", "expected a JSON object");
    ExperimentConfig config;

    const Json inst = doc.value("instance", Json::object());
    if (!inst.is_object())
        throw ConfigError("instance", "expected an object");
    InstanceSpec& spec = config.instance;
    const std::string kind = get_field<std::string>(inst, "instance.", "kind", "dmdp");
    if (auto k = parse_kind(kind))
        spec.kind = *k;
    else
        throw ConfigError("instance.kind", "unknown model kind '" + kind + "'");
    const std::string mode = get_field<std::string>(inst, "instance.", "mode", "anchor");
    if (mode == "anchor")
        spec.mode = InstanceMode::anchor;
    else if (mode == "regular")
        spec.mode = InstanceMode::regular;
    else if (mode == "adversarial")
        spec.mode = InstanceMode::adversarial;
    else
        throw ConfigError("instance.mode", "unknown mode '" + mode + "'");
    spec.num_states = get_field(inst, "instance.", "num_states", spec.num_states);
    spec.num_actions = get_field(inst, "instance.", "num_actions", spec.num_actions);
    spec.num_anchors = get_field(inst, "instance.", "num_anchors", spec.num_anchors);
    spec.regularity = get_field(inst, "instance.", "regularity", spec.regularity);
    spec.gamma = get_field(inst, "instance.", "gamma", spec.gamma);
    spec.horizon = get_field(inst, "instance.", "horizon", spec.horizon);
    if (inst.contains("xi")) {
        const Json& xi = inst.at("xi");
        if (xi.is_number())
            spec.xi = {xi.get<double>()};
        else
            spec.xi = get_field<std::vector<double>>(inst, "instance.", "xi", {});
    }
    if (inst.contains("seed"))
        spec.seed = parse_seed_value(inst.at("seed"), "instance.seed");
    const std::string rewards = get_field<std::string>(inst, "instance.", "rewards", "planted_gaps");
    if (rewards == "uniform")
        spec.rewards = RewardDesign::uniform;
    else if (rewards == "planted_gaps")
        spec.rewards = RewardDesign::planted_gaps;
    else
        throw ConfigError("instance.rewards", "unknown reward design '" + rewards + "'");
    spec.gaps.min_gap = get_field(inst, "instance.", "min_gap", spec.gaps.min_gap);
    spec.gaps.max_gap = get_field(inst, "instance.", "max_gap", spec.gaps.max_gap);
    spec.gaps.value_spread = get_field(inst, "instance.", "value_spread", spec.gaps.value_spread);
    spec.model_file = get_field<std::string>(inst, "instance.", "model_file", "");
    spec.features_file = get_field<std::string>(inst, "instance.", "features_file", "");

    const Json sweep = doc.value("sweep", Json::object());
    if (!sweep.is_object())
        throw ConfigError("sweep", "expected an object");
    config.samples = get_field<std::vector<std::int64_t>>(sweep, "sweep.", "N", {});
    config.seeds = get_field(sweep, "sweep.", "seeds", config.seeds);
    const std::string solver = get_field<std::string>(sweep, "sweep.", "solver", "value_iteration");
    if (auto s = parse_solver(solver))
        config.solver = *s;
    else
        throw ConfigError("sweep.solver", "unknown solver '" + solver + "'");
    config.eps_ps = get_field(sweep, "sweep.", "eps_ps", config.eps_ps);

    if (doc.contains("master_seed"))
        config.master_seed = parse_seed_value(doc.at("master_seed"), "master_seed");
    config.threads = get_field(doc, "", "threads", config.threads);
    config.timing = get_field(doc, "", "timing", config.timing);
    config.output = get_field<std::string>(doc, "", "output", "");

    if (const char* env = std::getenv("MDPLAB_SEED"); env != nullptr && *env != '\0') {
        std::uint64_t value = 0;
        const char* end = env + std::char_traits<char>::length(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc() || ptr != end)
            throw ConfigError("MDPLAB_SEED", "expected a non-negative integer");
        config.master_seed = value;
    }
    validate(config);
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    try {
        return parse_config(read_json_file(path));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("config", e.what());
    }
}

void validate(const ExperimentConfig& config) {
    const InstanceSpec& spec = config.instance;
    if (config.samples.empty())
        throw ConfigError("sweep.N", "must be non-empty");
    for (auto n : config.samples)
        if (n < 1)
            throw ConfigError("sweep.N", "entries must be positive");
    if (config.seeds < 1)
        throw ConfigError("sweep.seeds", "must be at least 1");
    if (!(config.eps_ps > 0.0))
        throw ConfigError("sweep.eps_ps", "must be positive");
    if (config.threads < 1)
        throw ConfigError("threads", "must be at least 1");
    if (spec.xi.empty())
        throw ConfigError("instance.xi", "must be non-empty");
    for (double xi : spec.xi)
        if (!(xi >= 0.0 && xi < 2.0))
            throw ConfigError("instance.xi", "entries must lie in [0, 2)");
    if (!(spec.gamma > 0.0 && spec.gamma < 1.0))
        throw ConfigError("instance.gamma", "must lie in (0, 1)");
    if (spec.kind == ModelKind::fhmdp && spec.horizon < 1)
        throw ConfigError("instance.horizon", "must be at least 1");
    if (spec.model_file.empty() != spec.features_file.empty())
        throw ConfigError("instance.features_file", "model_file and features_file go together");
    if (spec.model_file.empty()) {
        if (spec.num_anchors < 1)
            throw ConfigError("instance.num_anchors", "must be at least 1");
        if (spec.mode != InstanceMode::adversarial) {
            if (spec.num_states < 1)
                throw ConfigError("instance.num_states", "must be at least 1");
            if (spec.num_actions < 1)
                throw ConfigError("instance.num_actions", "must be at least 1");
            if (spec.num_anchors > spec.num_states * spec.num_actions)
                throw ConfigError("instance.num_anchors", "cannot exceed the pair count");
        } else if (spec.num_anchors < 2) {
            throw ConfigError("instance.num_anchors", "adversarial mode needs at least 2 anchors");
        }
        if (spec.rewards == RewardDesign::planted_gaps &&
            !(spec.gaps.min_gap > 0.0 && spec.gaps.max_gap >= spec.gaps.min_gap))
            throw ConfigError("instance.min_gap", "need 0 < min_gap <= max_gap");
        if (spec.mode != InstanceMode::anchor && !(spec.regularity >= 1.0))
            throw ConfigError("instance.regularity", "must be at least 1");
    }

    bool compatible = false;
    switch (spec.kind) {
    case ModelKind::dmdp:
        compatible = config.solver == SolverKind::value_iteration ||
                     config.solver == SolverKind::policy_iteration ||
                     config.solver == SolverKind::pseudo_vi;
        break;
    case ModelKind::fhmdp:
        compatible = config.solver == SolverKind::backward_induction;
        break;
    case ModelKind::tbsg:
        compatible = config.solver == SolverKind::shapley;
        break;
    }
    if (!compatible)
        throw ConfigError("sweep.solver",
                          to_string(config.solver) + " does not apply to " + to_string(spec.kind));
}

// ---------------------------------------------------------------------------
// CSV

std::string format_number(double value) {
    if (std::isnan(value))
        return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string to_csv_line(const ResultRow& row) {
    std::string out;
    out += row.instance_id;
    out += ',' + to_string(row.model_kind);
    out += ',' + std::to_string(row.samples);
    out += ',' + std::to_string(row.seed);
    out += ',' + to_string(row.solver);
    out += ',' + format_number(row.eps_ps);
    out += ',' + to_string(row.classification);
    out += ',' + format_number(row.suboptimality);
    out += ',' + format_number(row.wall_time_ms);
    out += ',' + row.status;
    return out;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& row : rows)
        out << to_csv_line(row) << '\n';
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

double parse_double(const std::string& text, int line) {
    if (text == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error("csv line " + std::to_string(line) + ": bad number '" + text + "'");
    return value;
}

template <typename Int>
Int parse_int(const std::string& text, int line) {
    Int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error("csv line " + std::to_string(line) + ": bad integer '" + text + "'");
    return value;
}

} // namespace

std::vector<ResultRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw Error("csv schema mismatch: empty input");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCsvHeader)
        throw Error("csv schema mismatch: header '" + line + "'");
    std::vector<ResultRow> rows;
    int number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = split_csv(line);
        if (f.size() != 10)
            throw Error("csv schema mismatch: line " + std::to_string(number) + " has " +
                        std::to_string(f.size()) + " fields");
        ResultRow row;
        row.instance_id = f[0];
        const auto kind = parse_kind(f[1]);
        const auto solver = parse_solver(f[4]);
        if (!kind || !solver || (f[6] != "proper" && f[6] != "pseudo"))
            throw Error("csv schema mismatch: line " + std::to_string(number));
        row.model_kind = *kind;
        row.samples = parse_int<std::int64_t>(f[2], number);
        row.seed = parse_int<int>(f[3], number);
        row.solver = *solver;
        row.eps_ps = parse_double(f[5], number);
        row.classification = f[6] == "proper" ? Classification::proper : Classification::pseudo;
        row.suboptimality = parse_double(f[7], number);
        row.wall_time_ms = parse_double(f[8], number);
        row.status = f[9];
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Instances and cells

namespace {

constexpr std::uint64_t kInstanceLabel = 0x696e7374;
constexpr std::uint64_t kMisspecLabel = 0x78690000;
constexpr std::uint64_t kCellLabel = 0x63656c6c;

std::uint64_t instance_seed(const ExperimentConfig& config) {
    return config.instance.seed.value_or(derive_key(config.master_seed, kInstanceLabel));
}

LinearGroundTruth build_structure(const ExperimentConfig& config, std::uint64_t seed) {
    const InstanceSpec& spec = config.instance;
    if (!spec.model_file.empty())
        return load_linear_truth(spec.model_file, spec.features_file);
    if (spec.mode == InstanceMode::adversarial)
        return adversarial_instance(spec.num_anchors, spec.regularity, spec.gamma);
    const SynthesisMode mode = spec.mode == InstanceMode::anchor
                                   ? SynthesisMode::anchor()
                                   : SynthesisMode::regular(spec.regularity);
    LinearGroundTruth truth = synthesize_linear_mdp(spec.num_states, spec.num_actions,
                                                    spec.num_anchors, mode, seed, spec.gamma);
    if (spec.rewards == RewardDesign::planted_gaps)
        return plant_action_gaps(truth, seed, spec.gaps);
    return truth;
}

std::string instance_name(const ExperimentConfig& config, const LinearGroundTruth& s,
                          std::uint64_t seed) {
    const InstanceSpec& spec = config.instance;
    std::ostringstream id;
    id << to_string(spec.kind) << '-';
    if (!spec.model_file.empty())
        id << std::filesystem::path(spec.model_file).stem().string();
    else
        id << mode_name(spec.mode);
    id << "-S" << s.mdp.num_states() << "-A" << s.mdp.num_actions() << "-K" << s.anchors.size()
       << "-L" << format_number(std::round(s.coefficients.regularity * 1e6) / 1e6) << "-g" << format_number(s.mdp.gamma());
    if (spec.kind == ModelKind::fhmdp)
        id << "-H" << spec.horizon;
    if (spec.model_file.empty() && spec.mode != InstanceMode::adversarial) {
        id << (spec.rewards == RewardDesign::planted_gaps ? "-gaps" : "-unif");
        id << "-s" << seed;
    }
    return id.str();
}

std::string level_id(const Instance& instance, int xi_index) {
    return instance.base_id + "-xi" + format_number(instance.xi[static_cast<std::size_t>(xi_index)]);
}

std::vector<Player> alternating_owners(int num_states) {
    std::vector<Player> owners(static_cast<std::size_t>(num_states));
    for (int s = 0; s < num_states; ++s)
        owners[static_cast<std::size_t>(s)] = s % 2 == 0 ? Player::maximizer : Player::minimizer;
    return owners;
}

} // namespace

Instance build_instance(const ExperimentConfig& config) {
    const std::uint64_t seed = instance_seed(config);
    LinearGroundTruth structure = build_structure(config, seed);
    const std::string base_id = instance_name(config, structure, seed);
    Instance out{base_id, std::move(structure), config.instance.xi, {}, {}, {}};
    if (config.instance.kind == ModelKind::tbsg)
        out.owners = alternating_owners(out.structure.mdp.num_states());
    for (double xi : out.xi) {
        if (xi == 0.0)
            out.truths.push_back(out.structure.mdp);
        else
            out.truths.push_back(
                inject_misspecification(out.structure, xi,
                                        derive_key(seed, kMisspecLabel ^ std::bit_cast<std::uint64_t>(xi)))
                    .mdp);
        const TabularMDP& truth = out.truths.back();
        switch (config.instance.kind) {
        case ModelKind::dmdp:
            out.q_star.push_back(optimal_q(truth));
            break;
        case ModelKind::tbsg:
            out.q_star.push_back(equilibrium_q(TurnBasedGame(truth, out.owners)));
            break;
        case ModelKind::fhmdp:
            out.q_star.emplace_back();
            break;
        }
    }
    return out;
}

std::uint64_t cell_key(std::uint64_t master_seed, std::int64_t samples, int seed_index) {
    return derive_key(derive_key(derive_key(master_seed, kCellLabel),
                                 static_cast<std::uint64_t>(samples)),
                      static_cast<std::uint64_t>(seed_index));
}

ResultRow run_cell(const ExperimentConfig& config, const Instance& instance, int xi_index,
                   std::int64_t samples, int seed_index) {
    const auto start = std::chrono::steady_clock::now();
    const auto level = static_cast<std::size_t>(xi_index);
    const TabularMDP& truth = instance.truths.at(level);

    ResultRow row;
    row.instance_id = level_id(instance, xi_index);
    row.model_kind = config.instance.kind;
    row.samples = samples;
    row.seed = seed_index;
    row.solver = config.solver;
    row.eps_ps = config.eps_ps;

    const EmpiricalModel emp = estimate_model(
        instance.structure, truth, samples, cell_key(config.master_seed, samples, seed_index));
    row.classification = emp.classification;
    const bool pseudo = emp.classification == Classification::pseudo;

    if (pseudo && config.solver != SolverKind::pseudo_vi) {
        row.status = "skipped_pseudo";
        row.suboptimality = std::numeric_limits<double>::quiet_NaN();
    } else {
        switch (config.solver) {
        case SolverKind::value_iteration:
        case SolverKind::policy_iteration: {
            const auto method = config.solver == SolverKind::value_iteration
                                    ? DmdpMethod::value_iteration
                                    : DmdpMethod::policy_iteration;
            const auto plan = solve_proper_dmdp(emp.as_proper(), config.eps_ps, method);
            row.suboptimality = suboptimality(truth, plan.policy, instance.q_star[level]);
            break;
        }
        case SolverKind::pseudo_vi: {
            try {
                const auto plan = solve_pseudo_vi(emp.as_pseudo(), config.eps_ps);
                row.suboptimality = suboptimality(truth, plan.policy, instance.q_star[level]);
            } catch (const DivergenceError&) {
                row.status = "diverged";
                row.suboptimality = std::numeric_limits<double>::quiet_NaN();
            }
            break;
        }
        case SolverKind::backward_induction: {
            const int horizon = config.instance.horizon;
            const auto hat = FiniteHorizonMDP::stationary(emp.num_states, emp.num_actions,
                                                          emp.kernel_hat, emp.reward, horizon,
                                                          RewardRange::unbounded);
            const auto fh_truth = FiniteHorizonMDP::stationary(
                truth.num_states(), truth.num_actions(), truth.kernel(), truth.reward(), horizon,
                RewardRange::unbounded);
            row.suboptimality = suboptimality(fh_truth, solve_fhmdp(hat, config.eps_ps).policy);
            break;
        }
        case SolverKind::shapley: {
            const TurnBasedGame hat(emp.as_proper(), instance.owners);
            const TurnBasedGame game(truth, instance.owners);
            row.suboptimality =
                suboptimality(game, solve_tbsg(hat, config.eps_ps).policy, instance.q_star[level]);
            break;
        }
        }
    }
    if (config.timing)
        row.wall_time_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return row;
}

std::vector<ResultRow> run_sweep(const ExperimentConfig& config) {
    validate(config);
    const Instance instance = build_instance(config);

    struct Cell {
        int xi_index;
        std::int64_t samples;
        int seed_index;
    };
    std::vector<Cell> cells;
    for (int x = 0; x < static_cast<int>(instance.xi.size()); ++x)
        for (auto n : config.samples)
            for (int s = 0; s < config.seeds; ++s)
                cells.push_back({x, n, s});

    std::vector<ResultRow> rows(cells.size());
    std::vector<std::exception_ptr> errors(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                rows[i] = run_cell(config, instance, cells[i].xi_index, cells[i].samples,
                                   cells[i].seed_index);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto workers = static_cast<std::size_t>(
        std::min<std::size_t>(static_cast<std::size_t>(config.threads), cells.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return rows;
}

GeneratedFiles generate_instance_files(const ExperimentConfig& config, const std::string& dir) {
    validate(config);
    const std::uint64_t seed = instance_seed(config);
    const LinearGroundTruth structure = build_structure(config, seed);
    std::filesystem::create_directories(dir);
    const std::filesystem::path base(dir);

    GeneratedFiles out;
    out.model_path = (base / "model.json").string();
    out.features_path = (base / "features.json").string();
    write_json_file(out.model_path, to_json(structure.mdp));
    write_json_file(out.features_path, features_to_json(structure.features, structure.anchors));
    const TabularMDP& mdp = structure.mdp;
    if (config.instance.kind == ModelKind::fhmdp) {
        out.derived_path = (base / "fhmdp.json").string();
        write_json_file(out.derived_path,
                        to_json(FiniteHorizonMDP::stationary(mdp.num_states(), mdp.num_actions(),
                                                             mdp.kernel(), mdp.reward(),
                                                             config.instance.horizon)));
    } else if (config.instance.kind == ModelKind::tbsg) {
        out.derived_path = (base / "game.json").string();
        write_json_file(out.derived_path,
                        to_json(TurnBasedGame(mdp, alternating_owners(mdp.num_states()))));
    }
    out.anchor_property = verify_anchor_property(structure.coefficients);
    return out;
}

// ---------------------------------------------------------------------------
// Reporting

double mean(const std::vector<double>& values) {
    if (values.empty())
        return std::numeric_limits<double>::quiet_NaN();
    double total = 0.0;
    for (double v : values)
        total += v;
    return total / static_cast<double>(values.size());
}

double quantile(std::vector<double> values, double q) {
    if (values.empty())
        return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size())
        throw Error("slope fit needs equally many x and y values");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 2)
        return std::numeric_limits<double>::quiet_NaN();
    const double mx = mean(lx);
    const double my = mean(ly);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0)
        return std::numeric_limits<double>::quiet_NaN();
    return sxy / sxx;
}

Report summarize(const std::vector<ResultRow>& rows) {
    using Key = std::tuple<std::string, std::string, std::int64_t>;
    std::map<Key, std::pair<std::vector<double>, int>> groups;
    for (const auto& row : rows) {
        auto& group = groups[Key{row.instance_id, to_string(row.solver), row.samples}];
        if (row.status == "ok")
            group.first.push_back(row.suboptimality);
        else
            ++group.second;
    }
    Report report;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> curves;
    for (const auto& [key, group] : groups) {
        SummaryRow s;
        s.instance_id = std::get<0>(key);
        s.solver = *parse_solver(std::get<1>(key));
        s.samples = std::get<2>(key);
        s.count = static_cast<int>(group.first.size());
        s.skipped = group.second;
        s.mean = mean(group.first);
        s.median = median(group.first);
        s.p90 = quantile(group.first, 0.9);
        report.rows.push_back(s);
        if (s.count > 0) {
            auto& curve = curves[s.instance_id + " " + to_string(s.solver)];
            curve.first.push_back(static_cast<double>(s.samples));
            curve.second.push_back(s.mean);
        }
    }
    for (const auto& [name, curve] : curves)
        report.slopes[name] = fit_loglog_slope(curve.first, curve.second);
    return report;
}

void write_report_table(std::ostream& out, const Report& report) {
    std::size_t id_width = std::string("instance_id").size();
    for (const auto& r : report.rows)
        id_width = std::max(id_width, r.instance_id.size());
    const int idw = static_cast<int>(id_width) + 2;
    out << std::left << std::setw(idw) << "instance_id" << std::setw(20) << "solver" << std::right
        << std::setw(10) << "N" << std::setw(7) << "count" << std::setw(8) << "skipped"
        << std::setw(14) << "mean" << std::setw(14) << "median" << std::setw(14) << "p90" << '\n';
    const auto old = out.flags();
    for (const auto& r : report.rows) {
        out << std::left << std::setw(idw) << r.instance_id << std::setw(20) << to_string(r.solver)
            << std::right << std::setw(10) << r.samples << std::setw(7) << r.count << std::setw(8)
            << r.skipped << std::setprecision(6) << std::setw(14) << r.mean << std::setw(14)
            << r.median << std::setw(14) << r.p90 << '\n';
    }
    for (const auto& [name, slope] : report.slopes)
        out << "loglog_slope " << name << ' ' << format_number(slope) << '\n';
    out.flags(old);
}

void write_plot_data(std::ostream& out, const Report& report) {
    std::string current;
    for (const auto& r : report.rows) {
        if (r.count == 0)
            continue;
        const std::string block = r.instance_id + " " + to_string(r.solver);
        if (block != current) {
            if (!current.empty())
                out << "\n\n";
            out << "# " << block << "\n# N mean_error\n";
            current = block;
        }
        out << r.samples << ' ' << format_number(r.mean) << '\n';
    }
}

} // namespace mdplab
