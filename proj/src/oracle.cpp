#include "bellbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bellbound/chsh.hpp"

namespace bellbound {

namespace {

constexpr double kGridEps = 1e-12;

void check_oracle_inputs(double I, double S, double step) {
  if (!(I >= 0.0 && I <= 0.5)) {
    std::ostringstream msg;
    msg << "indeterminism I = " << I << " outside [0, 1/2]";
    throw std::domain_error(msg.str());
  }
  if (!(S >= 0.0 && S <= 1.0)) {
    std::ostringstream msg;
    msg << "signalling S = " << S << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
  if (!(step > 0.0 && step <= 1.0)) {
    std::ostringstream msg;
    msg << "grid step " << step << " outside (0, 1]";
    throw std::domain_error(msg.str());
  }
}

bool admissible(double v, double I) {
  return v >= -kGridEps && v <= 1.0 + kGridEps &&
         (v <= I + kGridEps || v >= (1.0 - I) - kGridEps);
}

double dist_entry_floor(double v) {
  // Marginal-form entries like m - c can come out a hair negative.
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

double j_functional(const BoxParams& params) {
  const auto& m = params.m;
  const auto& n = params.n;
  // Grouped to match the two-block table decomposition in brute_force_max,
  // so both paths produce bitwise-identical sums.
  return (std::abs(m[0] - n[0]) + std::abs(m[2] - n[2])) +
         (std::abs(m[1] - n[1]) + std::abs(m[3] + n[3] - 1.0));
}

EMaxResult e_max_given_marginals(const std::array<double, kPairCount>& m,
                                 const std::array<double, kPairCount>& n) {
  for (std::size_t k = 0; k < kPairCount; ++k) {
    if (!(m[k] >= -kGridEps && m[k] <= 1.0 + kGridEps) ||
        !(n[k] >= -kGridEps && n[k] <= 1.0 + kGridEps)) {
      std::ostringstream msg;
      msg << "marginal outside [0, 1] for pair " << pair_name(all_pairs()[k]);
      throw std::domain_error(msg.str());
    }
  }
  EMaxResult r;
  r.params.m = m;
  r.params.n = n;
  for (std::size_t k = 0; k < 3; ++k) r.params.c[k] = std::min(m[k], n[k]);
  r.params.c[3] = std::max(0.0, m[3] + n[3] - 1.0);
  r.e = 4.0 - 2.0 * j_functional(r.params);

  double direct = 0.0;
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const double c = r.params.c[k];
    const JointDistribution d{{c, m[k] - c, n[k] - c, 1.0 + c - m[k] - n[k]}};
    const double e = correlator(d);
    direct += k == 3 ? -e : e;
  }
  if (std::abs(direct - r.e) > 1e-12) {
    std::ostringstream msg;
    msg << "closed-form maximum " << r.e << " disagrees with direct evaluation "
        << direct;
    throw std::logic_error(msg.str());
  }
  return r;
}

std::vector<double> admissible_grid(double I, double step, bool endpoints) {
  check_oracle_inputs(I, 0.0, step);
  std::vector<double> g;
  for (long k = 0;; ++k) {
    double v = static_cast<double>(k) * step;
    if (v > 1.0 + kGridEps) break;
    v = std::min(v, 1.0);
    if (admissible(v, I)) g.push_back(v);
  }
  if (endpoints) {
    for (double v : {0.0, I, 1.0 - I, 1.0}) {
      if (admissible(v, I)) g.push_back(v);
    }
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

namespace {

// Per-block minimum of the J contribution over the second observer's
// admissible marginals, with the attaining pair (lex-smallest).
struct BlockMin {
  double j = 0.0;
  int a = 0;
  int b = 0;
};

struct SearchBest {
  double j = 0.0;
  std::array<int, kPairCount> mi{};  // indices of (m1, m2, m3, m4)
  bool valid = false;
};

// Scans m-tuples with i1 in [lo, hi); first strictly-better hit wins, so the
// result is the lex-smallest minimizer within the range.
SearchBest scan_range(const std::vector<double>& g, double S, int lo, int hi,
                      const std::vector<BlockMin>& f13,
                      const std::vector<BlockMin>& f24) {
  const int size = static_cast<int>(g.size());
  const double slack = S + kGridEps;
  SearchBest best;
  for (int i1 = lo; i1 < hi; ++i1) {
    for (int i2 = 0; i2 < size; ++i2) {
      if (std::abs(g[i1] - g[i2]) > slack) continue;
      for (int i3 = 0; i3 < size; ++i3) {
        const double j13 = f13[static_cast<std::size_t>(i1) * size + i3].j;
        for (int i4 = 0; i4 < size; ++i4) {
          if (std::abs(g[i3] - g[i4]) > slack) continue;
          const double j = j13 + f24[static_cast<std::size_t>(i2) * size + i4].j;
          if (!best.valid || j < best.j) {
            best = {j, {i1, i2, i3, i4}, true};
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

OracleReport brute_force_max(double I, double S, double grid_step,
                             bool endpoints, unsigned threads) {
  check_oracle_inputs(I, S, grid_step);
  const std::vector<double> g = admissible_grid(I, grid_step, endpoints);
  const int size = static_cast<int>(g.size());
  const double slack = S + kGridEps;

  // Block tables: f13[(a, b)] minimizes |m_a - n| + |m_b - n'| over admissible
  // (n, n') with |n - n'| <= S; f24 minimizes |m_a - n| + |m_b + n' - 1|.
  // Ascending scans keep the first minimizer, the lex-smallest one.
  std::vector<BlockMin> f13(static_cast<std::size_t>(size) * size);
  std::vector<BlockMin> f24(static_cast<std::size_t>(size) * size);
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      BlockMin b13, b24;
      bool seen = false;
      for (int i = 0; i < size; ++i) {
        for (int k = 0; k < size; ++k) {
          if (std::abs(g[i] - g[k]) > slack) continue;
          const double j13 = std::abs(g[a] - g[i]) + std::abs(g[b] - g[k]);
          const double j24 = std::abs(g[a] - g[i]) + std::abs(g[b] + g[k] - 1.0);
          if (!seen || j13 < b13.j) b13 = {j13, i, k};
          if (!seen || j24 < b24.j) b24 = {j24, i, k};
          seen = true;
        }
      }
      if (!seen) throw std::logic_error("no admissible second-observer marginals");
      f13[static_cast<std::size_t>(a) * size + b] = b13;
      f24[static_cast<std::size_t>(a) * size + b] = b24;
    }
  }

  // Deterministic static partition over m1; merging in partition order keeps
  // the same winner as a sequential scan, whatever the thread count.
  const int workers = std::max(1, std::min<int>(static_cast<int>(std::max(1u, threads)), size));
  std::vector<SearchBest> partial(static_cast<std::size_t>(workers));
  if (workers == 1) {
    partial[0] = scan_range(g, S, 0, size, f13, f24);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      const int lo = size * w / workers;
      const int hi = size * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] { partial[static_cast<std::size_t>(w)] = scan_range(g, S, lo, hi, f13, f24); });
    }
    for (std::thread& t : pool) t.join();
  }
  SearchBest best;
  for (const SearchBest& p : partial) {
    if (!p.valid) continue;
    if (!best.valid || p.j < best.j) best = p;
  }
  if (!best.valid) throw std::logic_error("empty marginal search space");

  const auto [i1, i2, i3, i4] = best.mi;
  const BlockMin& b13 = f13[static_cast<std::size_t>(i1) * size + i3];
  const BlockMin& b24 = f24[static_cast<std::size_t>(i2) * size + i4];
  const std::array<double, kPairCount> m{g[i1], g[i2], g[i3], g[i4]};
  const std::array<double, kPairCount> n{g[b13.a], g[b24.a], g[b13.b], g[b24.b]};
  const EMaxResult em = e_max_given_marginals(m, n);

  OracleReport r;
  r.max_E = em.e;
  r.argmax = em.params;
  r.analytic_B = bound_B(I, S);
  r.gap = r.analytic_B - r.max_E;
  r.grid_step = grid_step;
  if (r.gap < -1e-9) {
    std::ostringstream msg;
    msg << "search found E = " << r.max_E << " above the analytic bound "
        << r.analytic_B << " at I = " << I << ", S = " << S;
    throw std::logic_error(msg.str());
  }
  return r;
}

std::vector<OracleReport> verify_tightness(const std::vector<double>& I_grid,
                                           const std::vector<double>& S_grid,
                                           double grid_step, bool endpoints,
                                           unsigned threads) {
  std::vector<OracleReport> reports;
  reports.reserve(I_grid.size() * S_grid.size());
  for (double I : I_grid) {
    for (double S : S_grid) {
      OracleReport r = brute_force_max(I, S, grid_step, endpoints, threads);
      if (r.gap > 4.0 * grid_step + 1e-9) {
        std::ostringstream msg;
        msg << "gap " << r.gap << " exceeds grid resolution at I = " << I
            << ", S = " << S << ", step = " << grid_step;
        throw std::logic_error(msg.str());
      }
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

LambdaModel argmax_to_model(const BoxParams& params) {
  LambdaEntry e;
  e.weights.fill(1.0);
  for (std::size_t k = 0; k < kPairCount; ++k) {
    const double m = params.m[k];
    const double n = params.n[k];
    const double c = params.c[k];
    if (c < std::max(0.0, m + n - 1.0) - kGridEps || c > std::min(m, n) + kGridEps) {
      std::ostringstream msg;
      msg << "pair " << pair_name(all_pairs()[k]) << ": c = " << c
          << " violates positivity for m = " << m << ", n = " << n;
      throw ValidationError(msg.str());
    }
    e.dists[k] = JointDistribution{{dist_entry_floor(c), dist_entry_floor(m - c),
                                    dist_entry_floor(n - c),
                                    dist_entry_floor(1.0 + c - m - n)}};
  }
  LambdaModel model;
  model.lambdas.push_back(std::move(e));
  return validate_model(std::move(model));
}

nlohmann::json to_json(const OracleReport& r) {
  return nlohmann::json{
      {"max_E", r.max_E},
      {"argmax", {{"m", r.argmax.m}, {"n", r.argmax.n}, {"c", r.argmax.c}}},
      {"analytic_B", r.analytic_B},
      {"gap", r.gap},
      {"grid_step", r.grid_step},
  };
}

}  // namespace bellbound
