#include "bellbound/info.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bellbound {

namespace {

void check_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream msg;
    msg << what << " = " << v << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

double binary_entropy(double p) {
  check_unit_interval(p, "probability");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double channel_capacity(double S) {
  check_unit_interval(S, "signalling S");
  return 1.0 - binary_entropy((1.0 - S) / 2.0);
}

double mutual_info_shift(double p, double S) {
  check_unit_interval(S, "signalling S");
  if (!(p >= 0.0 && p + S <= 1.0)) {
    std::ostringstream msg;
    msg << "marginal p = " << p << " with shift S = " << S << " leaves [0, 1]";
    throw std::domain_error(msg.str());
  }
  return binary_entropy(p + S / 2.0) -
         binary_entropy(p) / 2.0 - binary_entropy(p + S) / 2.0;
}

InfoReport info_thresholds(double V) {
  if (!(V >= 0.0 && V <= 2.0)) {
    std::ostringstream msg;
    msg << "violation V = " << V << " outside [0, 2]";
    throw std::domain_error(msg.str());
  }
  InfoReport r;
  r.H_V = binary_entropy(V / 4.0);
  r.C_V = 1.0 - r.H_V;
  r.H_of_I = r.H_V;
  r.C_of_S = r.C_V;
  return r;
}

InfoReport info_thresholds(double V, double I, double S) {
  InfoReport r = info_thresholds(V);
  if (!(I >= 0.0 && I <= 0.5)) {
    std::ostringstream msg;
    msg << "indeterminism I = " << I << " outside [0, 1/2]";
    throw std::domain_error(msg.str());
  }
  r.H_of_I = binary_entropy(I);
  r.C_of_S = channel_capacity(S);
  return r;
}

nlohmann::json to_json(const InfoReport& r) {
  return nlohmann::json{
      {"H_of_I", r.H_of_I},
      {"C_of_S", r.C_of_S},
      {"H_V", r.H_V},
      {"C_V", r.C_V},
  };
}

}  // namespace bellbound
