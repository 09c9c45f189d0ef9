#pragma once

// JSON model, feature, count-table and empirical-model files.
//
// Model schema: num_states, num_actions, kernel (array of rows), reward, gamma.
// Optional discriminators: state_owner (turn-based game, values "max"/"min"),
// horizon + rewards_per_step (finite horizon). Kernels with negative entries
// load as pseudo models.

#include "mdplab/empirical.hpp"

#include "json.hpp"

#include <string>
#include <variant>

namespace mdplab {

using Json = nlohmann::json;

using AnyModel = std::variant<TabularMDP, PseudoMDP, FiniteHorizonMDP, TurnBasedGame>;

Json to_json(const TabularMDP& model);
Json to_json(const PseudoMDP& model);
Json to_json(const FiniteHorizonMDP& model);
Json to_json(const TurnBasedGame& game);
Json to_json(const EmpiricalModel& model);
Json to_json(const CountTable& table);
Json features_to_json(const FeatureMap& features, const AnchorSet& anchors);

/// Parses a model document; invariant violations raise ModelError naming the
/// invariant (e.g. "kernel_row_sums").
AnyModel model_from_json(const Json& doc);
void features_from_json(const Json& doc, FeatureMap& features, AnchorSet& anchors);

Json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline; byte-stable for equal inputs.
void write_json_file(const std::string& path, const Json& doc);

AnyModel load_model(const std::string& path);

/// Rebuilds a linear ground truth from a proper model file and a feature file.
LinearGroundTruth load_linear_truth(const std::string& model_path, const std::string& features_path);

Matrix matrix_from_json(const Json& rows, const char* field);
Json matrix_to_json(const Matrix& m);
Vector vector_from_json(const Json& values, const char* field);
Json vector_to_json(const Vector& v);

} // namespace mdplab
