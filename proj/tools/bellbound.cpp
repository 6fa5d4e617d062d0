#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bellbound/boxes.hpp"
#include "bellbound/chsh.hpp"
#include "bellbound/info.hpp"
#include "bellbound/measures.hpp"
#include "bellbound/model_io.hpp"
#include "bellbound/oracle.hpp"
#include "bellbound/singlet.hpp"

namespace {

using nlohmann::json;
using namespace bellbound;

// Reports round every float to 12 significant digits so output bytes are
// stable and diffable. Model documents skip this: they are data, not reports,
// and must round-trip exactly.
void round_floats(json& j) {
  if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", j.get<double>());
    j = std::strtod(buf, nullptr);
  } else if (j.is_object() || j.is_array()) {
    for (auto& el : j) round_floats(el);
  }
}

void emit_report(json j) {
  round_floats(j);
  std::cout << j.dump(2) << "\n";
}

unsigned default_threads() {
  const char* env = std::getenv("BELLBOUND_THREADS");
  if (env == nullptr) return 1;
  const long n = std::strtol(env, nullptr, 10);
  return n >= 1 ? static_cast<unsigned>(std::min(n, 256L)) : 1;
}

json chsh_json(const ChshValue& v) {
  return json{{"value", v.value}, {"correlators", v.correlators}};
}

int run_analyze(const std::string& path) {
  const LambdaModel model = load_model_file(path);
  const MeasureReport r = measure_all(model);
  const ChshValue v = chsh(behavior_of(model));
  json out;
  out["measures"] = to_json(r);
  out["chsh"] = chsh_json(v);
  int code = 0;
  if (r.freedom_of_choice) {
    const ConsistencyVerdict verdict = check_model_consistency(model);
    out["consistency"] = to_json(verdict);
    out["info"] = to_json(info_thresholds(verdict.V, std::min(r.I, 0.5),
                                          std::min(r.S, 1.0)));
    std::cerr << "I = " << r.I << ", S = " << r.S << ", CHSH = " << v.value
              << ", bound " << verdict.B
              << (verdict.pass ? " (respected" : " (VIOLATED")
              << (verdict.equality ? ", saturated)" : ")") << "\n";
    if (!verdict.pass) code = 3;
  } else {
    out["consistency"] = nullptr;
    out["info"] = nullptr;
    std::cerr << "warning: measurement dependence M = " << r.M
              << "; the bound assumes freedom of choice, no verdict\n";
  }
  emit_report(out);
  return code;
}

int run_box(const std::string& kind, double I, bool flip,
            const std::vector<int>& outcomes, const std::string& out_path) {
  BoxSpec spec;
  if (kind == "pr") {
    spec.kind = BoxSpec::Kind::PR;
  } else if (kind == "nosignal") {
    spec.kind = BoxSpec::Kind::NoSignal;
  } else if (kind == "signalling") {
    spec.kind = BoxSpec::Kind::Signalling;
  } else if (kind == "deterministic") {
    spec.kind = BoxSpec::Kind::Deterministic;
  } else {
    throw std::domain_error("unknown box kind " + kind);
  }
  spec.I = I;
  spec.flip = flip;
  if (spec.kind == BoxSpec::Kind::Deterministic) {
    if (outcomes.size() != 4) {
      throw std::domain_error("deterministic boxes need --outcomes aX,aXp,bY,bYp");
    }
    std::copy(outcomes.begin(), outcomes.end(), spec.outcomes.begin());
  }
  const LambdaModel model = make_box(spec);
  const MeasureReport r = measure_all(model);
  const ChshValue v = chsh(behavior_of(model));
  std::cerr << kind << " box: I = " << r.I << ", S = " << r.S
            << ", CHSH = " << v.value << "\n";
  if (out_path.empty()) {
    std::cout << model_to_json(model).dump(2) << "\n";
  } else {
    save_model_file(model, out_path);
    std::cerr << "model written to " << out_path << "\n";
  }
  return 0;
}

void write_oracle_csv(const std::string& path,
                      const std::vector<double>& I_grid,
                      const std::vector<double>& S_grid,
                      const std::vector<OracleReport>& cells) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << "I,S,max_E,analytic_B,gap\n";
  std::size_t idx = 0;
  for (double I : I_grid) {
    for (double S : S_grid) {
      const OracleReport& rep = cells[idx++];
      char line[160];
      std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g\n", I, S,
                    rep.max_E, rep.analytic_B, rep.gap);
      f << line;
    }
  }
}

int run_oracle(double I, double S, double step, bool endpoints,
               unsigned threads, const std::vector<double>& I_list,
               const std::vector<double>& S_list, const std::string& csv) {
  if (I_list.empty() != S_list.empty()) {
    throw std::domain_error("--I-list and --S-list go together");
  }
  if (I_list.empty()) {
    const OracleReport rep = brute_force_max(I, S, step, endpoints, threads);
    std::cerr << "I = " << I << ", S = " << S << ": max E = " << rep.max_E
              << ", bound " << rep.analytic_B << ", gap " << rep.gap << "\n";
    emit_report(to_json(rep));
    return 0;
  }
  const std::vector<OracleReport> cells =
      verify_tightness(I_list, S_list, step, endpoints, threads);
  json rows = json::array();
  std::size_t idx = 0;
  double worst_gap = 0.0;
  for (double Iv : I_list) {
    for (double Sv : S_list) {
      json row = to_json(cells[idx]);
      row["I"] = Iv;
      row["S"] = Sv;
      rows.push_back(std::move(row));
      worst_gap = std::max(worst_gap, cells[idx].gap);
      ++idx;
    }
  }
  if (!csv.empty()) write_oracle_csv(csv, I_list, S_list, cells);
  std::cerr << cells.size() << " cells verified, worst gap " << worst_gap
            << "\n";
  emit_report(json{{"cells", std::move(rows)}, {"grid_step", step}});
  return 0;
}

ChshSettings settings_from_angles(const std::vector<double>& angles) {
  if (angles.size() != 4) {
    throw std::domain_error("--settings needs four angles x,xp,y,yp in degrees");
  }
  return ChshSettings{planar_setting(angles[0]), planar_setting(angles[1]),
                      planar_setting(angles[2]), planar_setting(angles[3])};
}

int run_singlet(double w, std::uint64_t samples, std::uint64_t seed,
                unsigned threads, const std::vector<double>& angles,
                const std::string& csv) {
  const MixtureSpec spec{w};
  const MixtureMeasures mm = mixture_measures(spec);
  const ChshSettings s = settings_from_angles(angles);
  const ChshValue analytic = chsh(quantum_behavior(s));
  const std::pair<Vec3, Vec3> pairs[kPairCount] = {
      {s.x, s.y}, {s.xp, s.y}, {s.x, s.yp}, {s.xp, s.yp}};
  json estimates = json::array();
  double chsh_est = 0.0;
  std::size_t k = 0;
  for (const auto& [x, y] : pairs) {
    const CorrelatorEstimate est =
        estimate_correlator(spec, x, y, samples, seed, threads);
    chsh_est += (k == 3 ? -est.E : est.E);
    estimates.push_back(json{{"E", est.E}, {"std_error", est.std_error}});
    ++k;
  }
  std::cerr << "w = " << w << " (I = " << mm.I << ", S = " << mm.S
            << "), seed " << seed << ": CHSH estimate " << chsh_est
            << " vs analytic " << analytic.value << "\n";
  json out;
  out["w"] = w;
  out["measures"] = json{{"I", mm.I},
                         {"S", mm.S},
                         {"S_plus_2I", mm.S + 2.0 * mm.I},
                         {"info_sum", binary_entropy(mm.I) + channel_capacity(mm.S)}};
  out["settings_degrees"] = angles;
  out["estimate"] = json{{"correlators", std::move(estimates)},
                         {"chsh", chsh_est},
                         {"samples", samples},
                         {"seed", seed}};
  out["analytic"] = chsh_json(analytic);
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw IoError("cannot write " + csv);
    f << "pair,E,std_error,analytic\n";
    for (std::size_t i = 0; i < kPairCount; ++i) {
      char line[160];
      std::snprintf(line, sizeof line, "%s,%.12g,%.12g,%.12g\n",
                    pair_name(all_pairs()[i]),
                    out["estimate"]["correlators"][i]["E"].get<double>(),
                    out["estimate"]["correlators"][i]["std_error"].get<double>(),
                    analytic.correlators[i]);
      f << line;
    }
  }
  emit_report(out);
  return 0;
}

int run_scan(int quadruples, int w_steps, int perturbed, std::uint64_t seed,
             const std::string& csv) {
  ScanParams params;
  params.quadruples = quadruples;
  params.w_steps = w_steps;
  params.perturbed = perturbed;
  params.seed = seed;
  const ScanReport rep = conjecture_scan(params);
  std::cerr << rep.mixture_rows.size() << " blend rows, "
            << rep.perturbed_scanned << " perturbed models (" << rep.rejected
            << " rejected), seed " << seed << ": min S + 2I = "
            << rep.min_s_plus_2i << ", " << rep.candidates.size()
            << " below 1\n";
  if (!csv.empty()) {
    std::ofstream f(csv);
    if (!f) throw IoError("cannot write " + csv);
    f << "w,I,S,S_plus_2I,info_sum\n";
    for (const ScanRow& row : rep.mixture_rows) {
      char line[160];
      std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g\n",
                    row.w, row.I, row.S, row.s_plus_2i, row.info_sum);
      f << line;
    }
  }
  emit_report(to_json(rep));
  return 0;
}

int run_info(double I, double S, double p, bool has_p) {
  json out;
  out["H_of_I"] = binary_entropy(I);
  out["C_of_S"] = channel_capacity(S);
  out["sum"] = binary_entropy(I) + channel_capacity(S);
  if (has_p) out["mutual_info_shift"] = mutual_info_shift(p, S);
  std::cerr << "H(" << I << ") = " << out["H_of_I"].get<double>() << ", C("
            << S << ") = " << out["C_of_S"].get<double>() << "\n";
  emit_report(out);
  return 0;
}

int run_thresholds(double V) {
  const Thresholds t = thresholds_for_violation(V);
  const InfoReport ir = info_thresholds(V);
  std::cerr << "V = " << V << ": I_V = " << t.I_V << ", S_V = " << t.S_V
            << "\n";
  emit_report(json{{"V", t.V},
                   {"I_V", t.I_V},
                   {"S_V", t.S_V},
                   {"H_V", ir.H_V},
                   {"C_V", ir.C_V}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Indeterminism, signalling and measurement dependence in "
               "hidden-variable models of two-party correlations"};
  app.require_subcommand(1);

  std::string model_path;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "Measure a model file and check it against the bound");
  analyze->add_option("model", model_path, "model JSON file")->required();

  std::string box_kind = "pr";
  double box_I = 0.25;
  bool box_flip = false;
  std::vector<int> box_outcomes;
  std::string box_out;
  CLI::App* box = app.add_subcommand("box", "Emit a reference model");
  box->add_option("--kind", box_kind,
                  "pr | nosignal | signalling | deterministic");
  box->add_option("--I", box_I, "indeterminism for nosignal/signalling");
  box->add_flag("--flip", box_flip, "swap outcome roles");
  box->add_option("--outcomes", box_outcomes, "aX,aXp,bY,bYp (each +1 or -1)")
      ->delimiter(',');
  box->add_option("--out", box_out, "write the model here instead of stdout");

  double oracle_I = 0.25, oracle_S = 0.0, oracle_step = 0.05;
  bool no_endpoints = false;
  unsigned threads = default_threads();
  std::vector<double> I_list, S_list;
  std::string oracle_csv;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Brute-force the maximal CHSH value on a marginal grid");
  oracle->add_option("--I", oracle_I, "indeterminism budget");
  oracle->add_option("--S", oracle_S, "signalling budget");
  oracle->add_option("--step", oracle_step, "grid step");
  oracle->add_flag("--no-endpoints", no_endpoints,
                   "grid multiples only, no exact {0, I, 1-I, 1}");
  oracle->add_option("--threads", threads, "worker threads");
  oracle->add_option("--I-list", I_list, "sweep these I values")->delimiter(',');
  oracle->add_option("--S-list", S_list, "sweep these S values")->delimiter(',');
  oracle->add_option("--csv", oracle_csv, "write sweep cells as CSV");

  double w = 0.0;
  std::uint64_t samples = 100000, seed = 1;
  unsigned singlet_threads = default_threads();
  std::vector<double> angles{0.0, 90.0, 225.0, 135.0};
  std::string singlet_csv;
  bool scan = false;
  int scan_quadruples = 3, scan_w_steps = 11, scan_perturbed = 1200;
  CLI::App* singlet = app.add_subcommand(
      "singlet", "Simulate blends of the singlet with a one-bit protocol");
  singlet->add_option("--w", w, "protocol share in [0, 1]");
  singlet->add_option("--samples", samples, "Monte Carlo samples per pair");
  singlet->add_option("--seed", seed, "RNG seed");
  singlet->add_option("--threads", singlet_threads, "worker threads");
  singlet->add_option("--settings", angles, "planar angles x,xp,y,yp in degrees")
      ->delimiter(',');
  singlet->add_option("--csv", singlet_csv, "write correlators or scan rows as CSV");
  singlet->add_flag("--scan", scan, "sweep model families for S + 2I < 1");
  singlet->add_option("--scan-quadruples", scan_quadruples,
                      "setting quadruples in the scan");
  singlet->add_option("--scan-w-steps", scan_w_steps, "blend-share grid size");
  singlet->add_option("--scan-perturbed", scan_perturbed,
                      "jittered models to scan");

  double info_I = 0.0, info_S = 0.0, info_p = 0.0;
  CLI::App* info = app.add_subcommand(
      "info", "Entropy of indeterminism and capacity of signalling");
  info->add_option("--I", info_I, "indeterminism")->required();
  info->add_option("--S", info_S, "signalling")->required();
  CLI::Option* p_opt = info->add_option(
      "--p", info_p, "evaluate the marginal-shift information at this p");

  double V = 0.0;
  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "Minimal resources for a CHSH excess V");
  thresholds->add_option("--V", V, "CHSH excess in [0, 2]")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(model_path);
    if (box->parsed()) return run_box(box_kind, box_I, box_flip, box_outcomes, box_out);
    if (oracle->parsed()) {
      return run_oracle(oracle_I, oracle_S, oracle_step, !no_endpoints, threads,
                        I_list, S_list, oracle_csv);
    }
    if (singlet->parsed()) {
      if (scan) {
        return run_scan(scan_quadruples, scan_w_steps, scan_perturbed, seed,
                        singlet_csv);
      }
      return run_singlet(w, samples, seed, singlet_threads, angles, singlet_csv);
    }
    if (info->parsed()) return run_info(info_I, info_S, info_p, p_opt->count() > 0);
    if (thresholds->parsed()) return run_thresholds(V);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
