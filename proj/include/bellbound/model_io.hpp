#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bellbound/model.hpp"

namespace bellbound {

// File-level failures (missing file, unreadable path). Format and content
// problems throw ValidationError instead.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Builds a model from the document form:
//   { "lambdas": [ { "label": ..., "weights": {"XY": ...} | "weight": w,
//                    "dists": {"XY": [p++, p+-, p-+, p--], ...} }, ... ] }
// The scalar "weight" form assigns the same weight to all four pairs.
// The returned model has passed validate_model.
LambdaModel model_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const LambdaModel& model);

// Reads and parses a model file. Parse errors are reported with the line
// number in the message.
LambdaModel load_model_file(const std::string& path);

void save_model_file(const LambdaModel& model, const std::string& path);

}  // namespace bellbound
