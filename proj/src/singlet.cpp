#include "bellbound/singlet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bellbound/chsh.hpp"
#include "bellbound/info.hpp"
#include "bellbound/measures.hpp"

namespace bellbound {

double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
  const double r = norm(v);
  if (r < 1e-12) throw std::domain_error("cannot normalize a near-zero vector");
  return {v.x / r, v.y / r, v.z / r};
}

Vec3 planar_setting(double angle_degrees) {
  const double rad = angle_degrees * std::numbers::pi_v<double> / 180.0;
  return {std::cos(rad), std::sin(rad), 0.0};
}

void require_unit(const Vec3& v, const char* what) {
  if (std::abs(norm(v) - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << what << " must be a unit vector, |v| = " << norm(v);
    throw std::domain_error(msg.str());
  }
}

JointDistribution qm_singlet_dist(const Vec3& x, const Vec3& y) {
  require_unit(x, "first setting");
  require_unit(y, "second setting");
  const double d = dot(x, y);
  const double anti = (1.0 + d) / 4.0;  // outcomes disagree
  const double corr = (1.0 - d) / 4.0;  // outcomes agree
  return {{corr, anti, anti, corr}};
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq sq{static_cast<std::uint32_t>(seed),
                   static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(stream),
                   static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(sq);
}

double uniform01(std::mt19937_64& engine) {
  return static_cast<double>((engine() >> 11) + 1) * 0x1p-53;
}

int sgn(double t) { return t >= 0.0 ? 1 : -1; }

void check_share(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    std::ostringstream msg;
    msg << "protocol share w = " << w << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
}

JointDistribution settings_dist(const ChshSettings& s, std::size_t k) {
  switch (k) {
    case 0: return qm_singlet_dist(s.x, s.y);
    case 1: return qm_singlet_dist(s.xp, s.y);
    case 2: return qm_singlet_dist(s.x, s.yp);
    default: return qm_singlet_dist(s.xp, s.yp);
  }
}

}  // namespace

SphereSampler::SphereSampler(std::uint64_t seed, std::uint64_t stream)
    : engine_(make_engine(seed, stream)) {}

double SphereSampler::uniform01() { return bellbound::uniform01(engine_); }

Vec3 SphereSampler::next() {
  constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;
  for (;;) {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double u3 = uniform01();
    const double u4 = uniform01();
    const double r1 = std::sqrt(-2.0 * std::log(u1));
    const double r2 = std::sqrt(-2.0 * std::log(u3));
    const Vec3 v{r1 * std::cos(two_pi * u2), r1 * std::sin(two_pi * u2),
                 r2 * std::cos(two_pi * u4)};
    const double r = norm(v);
    if (r > 1e-12) return {v.x / r, v.y / r, v.z / r};
  }
}

TBOutcomes tb_outcomes(const Vec3& x, const Vec3& y, const TBHidden& h) {
  const int s1 = sgn(dot(x, h.l1));
  const int s2 = sgn(dot(x, h.l2));
  const double c = static_cast<double>(s1 * s2);
  const Vec3 combined{h.l1.x + c * h.l2.x, h.l1.y + c * h.l2.y,
                      h.l1.z + c * h.l2.z};
  return {-s1, sgn(dot(y, combined))};
}

JointDistribution mixture_dist(const MixtureSpec& spec, const Vec3& x,
                               const Vec3& y, const TBHidden& h) {
  check_share(spec.w);
  const JointDistribution q = qm_singlet_dist(x, y);
  const TBOutcomes o = tb_outcomes(x, y, h);
  JointDistribution d;
  for (std::size_t i = 0; i < 4; ++i) d.p[i] = (1.0 - spec.w) * q.p[i];
  const std::size_t slot = (o.a == 1 ? 0 : 2) + (o.b == 1 ? 0 : 1);
  d.p[slot] += spec.w;
  return d;
}

MixtureMeasures mixture_measures(const MixtureSpec& spec) {
  check_share(spec.w);
  const double I = (1.0 - spec.w) / 2.0;
  const double S = spec.w;

  // Confirmation on a fixed hidden-state sample: marginals must sit at
  // (1 +- w) / 2, the second observer's worst shift must reach w, and the
  // first observer's outcome must not react to the second's setting.
  SphereSampler sampler(0x6D78BEC5u, 0);
  const ChshSettings s = default_chsh_settings();
  double worst_I = 0.0, worst_12 = 0.0, worst_21 = 0.0;
  for (int i = 0; i < 128; ++i) {
    const TBHidden h{sampler.next(), sampler.next()};
    const JointDistribution d[kPairCount] = {
        mixture_dist(spec, s.x, s.y, h), mixture_dist(spec, s.xp, s.y, h),
        mixture_dist(spec, s.x, s.yp, h), mixture_dist(spec, s.xp, s.yp, h)};
    Marginals mg[kPairCount];
    for (std::size_t k = 0; k < kPairCount; ++k) {
      mg[k] = marginals(d[k]);
      worst_I = std::max({worst_I, std::min(mg[k].m, 1.0 - mg[k].m),
                          std::min(mg[k].n, 1.0 - mg[k].n)});
    }
    worst_12 = std::max({worst_12, std::abs(mg[0].n - mg[1].n),
                         std::abs(mg[2].n - mg[3].n)});
    worst_21 = std::max({worst_21, std::abs(mg[0].m - mg[2].m),
                         std::abs(mg[1].m - mg[3].m)});
  }
  if (std::abs(worst_I - I) > 1e-9 || std::abs(worst_12 - S) > 1e-9 ||
      worst_21 > 1e-9) {
    std::ostringstream msg;
    msg << "blend measures failed numerical confirmation at w = " << spec.w
        << ": worst I " << worst_I << ", worst shift " << worst_12
        << ", reverse shift " << worst_21;
    throw std::logic_error(msg.str());
  }
  return {I, S};
}

CorrelatorEstimate estimate_correlator(const MixtureSpec& spec, const Vec3& x,
                                       const Vec3& y, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads) {
  check_share(spec.w);
  require_unit(x, "first setting");
  require_unit(y, "second setting");
  if (samples == 0) throw std::domain_error("sample count must be positive");

  constexpr std::uint64_t kChunk = 65536;
  const std::uint64_t nchunks = (samples + kChunk - 1) / kChunk;
  struct Sums {
    double s = 0.0;
    double s2 = 0.0;
  };
  std::vector<Sums> sums(nchunks);
  auto run = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t c = first; c < nchunks; c += stride) {
      SphereSampler sampler(seed, c);
      const std::uint64_t lo = c * kChunk;
      const std::uint64_t hi = std::min(samples, lo + kChunk);
      double s = 0.0, s2 = 0.0;
      for (std::uint64_t i = lo; i < hi; ++i) {
        const TBHidden h{sampler.next(), sampler.next()};
        const double e = correlator(mixture_dist(spec, x, y, h));
        s += e;
        s2 += e * e;
      }
      sums[c] = {s, s2};
    }
  };
  const unsigned workers =
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(std::max(1u, threads), nchunks));
  if (workers == 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back(run, t, workers);
    }
    for (std::thread& t : pool) t.join();
  }
  double s = 0.0, s2 = 0.0;
  for (const Sums& cs : sums) {
    s += cs.s;
    s2 += cs.s2;
  }
  CorrelatorEstimate r;
  r.samples = samples;
  r.E = s / static_cast<double>(samples);
  const double var = std::max(0.0, s2 / static_cast<double>(samples) - r.E * r.E);
  r.std_error = samples > 1 ? std::sqrt(var / static_cast<double>(samples - 1)) : 0.0;
  return r;
}

ChshSettings default_chsh_settings() {
  return {planar_setting(0.0), planar_setting(90.0), planar_setting(225.0),
          planar_setting(135.0)};
}

Behavior quantum_behavior(const ChshSettings& s) {
  Behavior b;
  for (std::size_t k = 0; k < kPairCount; ++k) b.dists[k] = settings_dist(s, k);
  return b;
}

LambdaModel grid_mixture_model(const MixtureSpec& spec, const ChshSettings& s) {
  check_share(spec.w);
  const Behavior q = quantum_behavior(s);
  LambdaModel model;
  model.lambdas.reserve(256);
  std::array<std::size_t, kPairCount> t{};
  for (t[0] = 0; t[0] < 4; ++t[0])
    for (t[1] = 0; t[1] < 4; ++t[1])
      for (t[2] = 0; t[2] < 4; ++t[2])
        for (t[3] = 0; t[3] < 4; ++t[3]) {
          LambdaEntry e;
          const double wgt = q.dists[0][t[0]] * q.dists[1][t[1]] *
                             q.dists[2][t[2]] * q.dists[3][t[3]];
          e.weights.fill(wgt);
          for (std::size_t k = 0; k < kPairCount; ++k) {
            for (std::size_t o = 0; o < 4; ++o) {
              e.dists[k].p[o] = (1.0 - spec.w) * q.dists[k][o];
            }
            e.dists[k].p[t[k]] += spec.w;
          }
          model.lambdas.push_back(std::move(e));
        }
  return validate_model(std::move(model));
}

namespace {

// Jittered variant of grid_mixture_model: each pattern splits into two
// lambdas of half weight whose blend shares move by +-j per setting pair.
// The +- pairing keeps every behavior entry at its unjittered value.
LambdaModel jittered_grid_model(double w, const ChshSettings& s,
                                std::mt19937_64& engine, double jscale) {
  const Behavior q = quantum_behavior(s);
  LambdaModel model;
  model.lambdas.reserve(512);
  std::array<std::size_t, kPairCount> t{};
  for (t[0] = 0; t[0] < 4; ++t[0])
    for (t[1] = 0; t[1] < 4; ++t[1])
      for (t[2] = 0; t[2] < 4; ++t[2])
        for (t[3] = 0; t[3] < 4; ++t[3]) {
          const double wgt = 0.5 * (q.dists[0][t[0]] * q.dists[1][t[1]] *
                                    q.dists[2][t[2]] * q.dists[3][t[3]]);
          std::array<double, kPairCount> jitter;
          for (double& j : jitter) j = jscale * uniform01(engine);
          for (int sign : {1, -1}) {
            LambdaEntry e;
            e.weights.fill(wgt);
            for (std::size_t k = 0; k < kPairCount; ++k) {
              const double beta = w + sign * jitter[k];
              for (std::size_t o = 0; o < 4; ++o) {
                e.dists[k].p[o] = (1.0 - beta) * q.dists[k][o];
              }
              e.dists[k].p[t[k]] += beta;
            }
            model.lambdas.push_back(std::move(e));
          }
        }
  return validate_model(std::move(model));
}

double behavior_deviation(const Behavior& a, const Behavior& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    for (std::size_t o = 0; o < 4; ++o) {
      worst = std::max(worst, std::abs(a.dists[k].p[o] - b.dists[k].p[o]));
    }
  }
  return worst;
}

ScanRow make_row(double w, double I, double S) {
  ScanRow row;
  row.w = w;
  row.I = I;
  row.S = S;
  row.s_plus_2i = S + 2.0 * I;
  row.info_sum = binary_entropy(std::min(I, 0.5)) + channel_capacity(std::min(S, 1.0));
  return row;
}

}  // namespace

ScanReport conjecture_scan(const ScanParams& params) {
  if (params.quadruples < 1 || params.quadruples > 64) {
    throw std::domain_error("quadruple count must be in [1, 64]");
  }
  if (params.w_steps < 2) {
    throw std::domain_error("need at least 2 blend-share steps");
  }
  if (params.perturbed < 0) {
    throw std::domain_error("perturbed count must be nonnegative");
  }

  ScanReport rep;
  rep.note =
      "numerical evidence over specific model families reproducing the "
      "singlet behavior, not a proof; the region 0 < S < 1/3 stays open";

  for (int i = 0; i < params.w_steps; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(params.w_steps - 1);
    const MixtureMeasures mm = mixture_measures({w});
    rep.mixture_rows.push_back(make_row(w, mm.I, mm.S));
  }
  rep.min_row = rep.mixture_rows.front();
  rep.min_s_plus_2i = rep.min_row.s_plus_2i;
  rep.min_info_sum = rep.min_row.info_sum;

  auto fold = [&rep](const ScanRow& row) {
    if (row.s_plus_2i < rep.min_s_plus_2i) {
      rep.min_s_plus_2i = row.s_plus_2i;
      rep.min_row = row;
    }
    rep.min_info_sum = std::min(rep.min_info_sum, row.info_sum);
    if (row.s_plus_2i < 1.0 - 1e-6) rep.candidates.push_back(row);
  };
  for (const ScanRow& row : rep.mixture_rows) fold(row);

  std::vector<ChshSettings> quads;
  quads.reserve(static_cast<std::size_t>(params.quadruples));
  for (int k = 0; k < params.quadruples; ++k) {
    const double theta = 90.0 * static_cast<double>(k + 1) /
                         static_cast<double>(params.quadruples + 1);
    quads.push_back({planar_setting(0.0), planar_setting(90.0),
                     planar_setting(180.0 + theta), planar_setting(90.0 + theta)});
  }

  for (int trial = 0; trial < params.perturbed; ++trial) {
    std::mt19937_64 engine =
        make_engine(params.seed, static_cast<std::uint64_t>(trial));
    const double w = 0.05 + 0.9 * uniform01(engine);
    const double jscale = 0.5 * uniform01(engine) * std::min(w, 1.0 - w);
    const ChshSettings& s = quads[static_cast<std::size_t>(trial) % quads.size()];
    const LambdaModel model = jittered_grid_model(w, s, engine, jscale);
    if (behavior_deviation(behavior_of(model), quantum_behavior(s)) > 1e-6) {
      ++rep.rejected;
      continue;
    }
    const MeasureReport mr = measure_all(model);
    ++rep.perturbed_scanned;
    fold(make_row(w, mr.I, mr.S));
  }
  return rep;
}

nlohmann::json to_json(const ScanRow& r) {
  return nlohmann::json{
      {"w", r.w}, {"I", r.I}, {"S", r.S},
      {"S_plus_2I", r.s_plus_2i}, {"info_sum", r.info_sum},
  };
}

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ScanRow& row : r.mixture_rows) rows.push_back(to_json(row));
  nlohmann::json cands = nlohmann::json::array();
  for (const ScanRow& row : r.candidates) cands.push_back(to_json(row));
  return nlohmann::json{
      {"mixture_rows", std::move(rows)},
      {"perturbed_scanned", r.perturbed_scanned},
      {"rejected", r.rejected},
      {"min_S_plus_2I", r.min_s_plus_2i},
      {"min_info_sum", r.min_info_sum},
      {"min_row", to_json(r.min_row)},
      {"candidates", std::move(cands)},
      {"note", r.note},
  };
}

}  // namespace bellbound
