#include "mdplab/io.hpp"

#include <fstream>
#include <sstream>

namespace mdplab {

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
    return out;
}

Matrix matrix_from_json(const Json& rows, const char* field) {
    if (!rows.is_array() || rows.empty() || !rows.front().is_array())
        throw ModelError(std::string(field) + ": expected a non-empty array of rows");
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto m = static_cast<Eigen::Index>(rows.front().size());
    Matrix out(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m)
            throw ModelError(std::string(field) + ": ragged row " + std::to_string(i));
        for (Eigen::Index j = 0; j < m; ++j)
            out(i, j) = row[static_cast<std::size_t>(j)].get<double>();
    }
    return out;
}

Vector vector_from_json(const Json& values, const char* field) {
    if (!values.is_array())
        throw ModelError(std::string(field) + ": expected an array");
    Vector out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = values[i].get<double>();
    return out;
}

namespace {

Json discounted_json(const DiscountedModel& model) {
    return Json{{"num_states", model.num_states()},
                {"num_actions", model.num_actions()},
                {"kernel", matrix_to_json(model.kernel())},
                {"reward", vector_to_json(model.reward())},
                {"gamma", model.gamma()}};
}

template <typename T>
T required(const Json& doc, const char* field) {
    if (!doc.contains(field))
        throw ModelError(std::string("missing field: ") + field);
    try {
        return doc.at(field).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ModelError(std::string("wrong type for field: ") + field);
    }
}

} // namespace

Json to_json(const TabularMDP& model) { return discounted_json(model); }

Json to_json(const PseudoMDP& model) { return discounted_json(model); }

Json to_json(const FiniteHorizonMDP& model) {
    Json rewards = Json::array();
    for (const auto& r : model.rewards())
        rewards.push_back(vector_to_json(r));
    return Json{{"num_states", model.num_states()},
                {"num_actions", model.num_actions()},
                {"kernel", matrix_to_json(model.kernel())},
                {"reward", vector_to_json(model.reward(0))},
                {"horizon", model.horizon()},
                {"rewards_per_step", std::move(rewards)}};
}

Json to_json(const TurnBasedGame& game) {
    Json doc = discounted_json(game.dynamics());
    Json owners = Json::array();
    for (Player p : game.state_owner())
        owners.push_back(p == Player::maximizer ? "max" : "min");
    doc["state_owner"] = std::move(owners);
    return doc;
}

Json to_json(const EmpiricalModel& model) {
    Json anchors = Json::array();
    for (int idx : model.provenance.anchors.indices)
        anchors.push_back(idx);
    return Json{{"num_states", model.num_states},
                {"num_actions", model.num_actions},
                {"kernel", matrix_to_json(model.kernel_hat)},
                {"reward", vector_to_json(model.reward)},
                {"gamma", model.gamma},
                {"classification", to_string(model.classification)},
                {"provenance",
                 {{"seed", model.provenance.seed},
                  {"samples_per_pair", model.provenance.samples_per_pair},
                  {"anchors", std::move(anchors)}}}};
}

Json to_json(const CountTable& table) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < table.counts.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < table.counts.cols(); ++j)
            row.push_back(table.counts(i, j));
        rows.push_back(std::move(row));
    }
    return Json{{"counts", std::move(rows)},
                {"N", table.samples_per_pair},
                {"seed", table.master_seed},
                {"anchors", table.anchors.indices}};
}

Json features_to_json(const FeatureMap& features, const AnchorSet& anchors) {
    return Json{{"phi", matrix_to_json(features.phi)}, {"anchors", anchors.indices}};
}

void features_from_json(const Json& doc, FeatureMap& features, AnchorSet& anchors) {
    if (!doc.contains("phi") || !doc.contains("anchors"))
        throw ModelError("feature file requires phi and anchors");
    features.phi = matrix_from_json(doc.at("phi"), "phi");
    anchors.indices = required<std::vector<int>>(doc, "anchors");
}

AnyModel model_from_json(const Json& doc) {
    const int ns = required<int>(doc, "num_states");
    const int na = required<int>(doc, "num_actions");
    if (!doc.contains("kernel"))
        throw ModelError("missing field: kernel");
    Matrix kernel = matrix_from_json(doc.at("kernel"), "kernel");
    const bool signed_kernel = kernel.minCoeff() < kNegativityTolerance;

    if (doc.contains("horizon") || doc.contains("rewards_per_step")) {
        std::vector<Vector> rewards;
        if (doc.contains("rewards_per_step")) {
            for (const auto& r : doc.at("rewards_per_step"))
                rewards.push_back(vector_from_json(r, "rewards_per_step"));
            if (doc.contains("horizon") &&
                required<int>(doc, "horizon") != static_cast<int>(rewards.size()))
                throw ModelError("horizon must match rewards_per_step length");
        } else {
            const Vector r = vector_from_json(doc.at("reward"), "reward");
            rewards.assign(static_cast<std::size_t>(required<int>(doc, "horizon")), r);
        }
        return FiniteHorizonMDP(ns, na, std::move(kernel), std::move(rewards));
    }

    if (!doc.contains("reward"))
        throw ModelError("missing field: reward");
    Vector reward = vector_from_json(doc.at("reward"), "reward");
    const double gamma = required<double>(doc, "gamma");

    if (doc.contains("state_owner")) {
        std::vector<Player> owners;
        for (const auto& o : doc.at("state_owner")) {
            const std::string tag = o.get<std::string>();
            if (tag == "max" || tag == "player1")
                owners.push_back(Player::maximizer);
            else if (tag == "min" || tag == "player2")
                owners.push_back(Player::minimizer);
            else
                throw ModelError("state_owner entries must be max or min");
        }
        return TurnBasedGame(TabularMDP(ns, na, std::move(kernel), std::move(reward), gamma,
                                        RewardRange::unbounded),
                             std::move(owners));
    }
    if (signed_kernel)
        return PseudoMDP(ns, na, std::move(kernel), std::move(reward), gamma);
    return TabularMDP(ns, na, std::move(kernel), std::move(reward), gamma);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << doc.dump(2) << '\n';
}

AnyModel load_model(const std::string& path) { return model_from_json(read_json_file(path)); }

LinearGroundTruth load_linear_truth(const std::string& model_path,
                                    const std::string& features_path) {
    AnyModel any = load_model(model_path);
    auto* mdp = std::get_if<TabularMDP>(&any);
    if (mdp == nullptr)
        throw ModelError(model_path + ": linear ground truth requires a proper discounted model");
    FeatureMap features;
    AnchorSet anchors;
    features_from_json(read_json_file(features_path), features, anchors);
    return LinearGroundTruth(std::move(*mdp), std::move(features), std::move(anchors));
}

} // namespace mdplab
