#include "bellbound/model_io.hpp"

#include <fstream>
#include <sstream>

namespace bellbound {

using nlohmann::json;

namespace {

std::string lambda_where(std::size_t i) {
  std::ostringstream s;
  s << "lambda " << i;
  return s.str();
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ValidationError(where + ": expected a number");
  }
  return j.get<double>();
}

JointDistribution parse_dist(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) {
    throw ValidationError(where + ": expected an array of 4 probabilities");
  }
  JointDistribution d;
  for (std::size_t o = 0; o < 4; ++o) {
    d.p[o] = require_number(j[o], where);
  }
  return d;
}

}  // namespace

LambdaModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lambdas")) {
    throw ValidationError("document must be an object with a \"lambdas\" array");
  }
  const json& arr = j.at("lambdas");
  if (!arr.is_array()) {
    throw ValidationError("\"lambdas\" must be an array");
  }
  LambdaModel model;
  model.lambdas.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& lj = arr[i];
    const std::string where = lambda_where(i);
    if (!lj.is_object()) {
      throw ValidationError(where + ": expected an object");
    }
    LambdaEntry e;
    if (lj.contains("label")) {
      if (!lj.at("label").is_string()) {
        throw ValidationError(where + ": \"label\" must be a string");
      }
      e.label = lj.at("label").get<std::string>();
    }
    if (lj.contains("weight")) {
      const double w = require_number(lj.at("weight"), where + ", weight");
      e.weights.fill(w);
    } else if (lj.contains("weights")) {
      const json& wj = lj.at("weights");
      if (!wj.is_object()) {
        throw ValidationError(where + ": \"weights\" must be an object");
      }
      for (SettingPair sp : all_pairs()) {
        const char* name = pair_name(sp);
        if (!wj.contains(name)) {
          throw ValidationError(where + ": missing setting pair " + name + " in \"weights\"");
        }
        e.weights[pair_index(sp)] = require_number(wj.at(name), where + ", weight " + name);
      }
    } else {
      throw ValidationError(where + ": needs \"weight\" or \"weights\"");
    }
    if (!lj.contains("dists") || !lj.at("dists").is_object()) {
      throw ValidationError(where + ": needs a \"dists\" object");
    }
    const json& dj = lj.at("dists");
    for (SettingPair sp : all_pairs()) {
      const char* name = pair_name(sp);
      if (!dj.contains(name)) {
        throw ValidationError(where + ": missing setting pair " + name + " in \"dists\"");
      }
      e.dists[pair_index(sp)] = parse_dist(dj.at(name), where + ", dist " + name);
    }
    model.lambdas.push_back(std::move(e));
  }
  return validate_model(std::move(model));
}

json model_to_json(const LambdaModel& model) {
  json arr = json::array();
  for (const LambdaEntry& e : model.lambdas) {
    json lj = json::object();
    if (!e.label.empty()) lj["label"] = e.label;
    const bool uniform = e.weights[0] == e.weights[1] && e.weights[1] == e.weights[2] &&
                         e.weights[2] == e.weights[3];
    if (uniform) {
      lj["weight"] = e.weights[0];
    } else {
      json wj = json::object();
      for (SettingPair sp : all_pairs()) {
        wj[pair_name(sp)] = e.weights[pair_index(sp)];
      }
      lj["weights"] = wj;
    }
    json dj = json::object();
    for (SettingPair sp : all_pairs()) {
      dj[pair_name(sp)] = e.dists[pair_index(sp)].p;
    }
    lj["dists"] = dj;
    arr.push_back(std::move(lj));
  }
  return json{{"lambdas", std::move(arr)}};
}

LambdaModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open model file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    std::size_t line = 1;
    const std::size_t stop = err.byte < text.size() ? err.byte : text.size();
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') ++line;
    }
    std::ostringstream msg;
    msg << path << ": parse error at line " << line << ": " << err.what();
    throw ValidationError(msg.str());
  }
  return model_from_json(j);
}

void save_model_file(const LambdaModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write model file: " + path);
  }
  out << model_to_json(model).dump(2) << "\n";
  if (!out) {
    throw IoError("failed writing model file: " + path);
  }
}

}  // namespace bellbound
