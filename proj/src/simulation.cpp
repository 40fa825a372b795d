#include "evdep/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "evdep/rng.hpp"

namespace evdep {

PairedBinarySample sample_joint(const JointBinaryDistribution& d,
                                std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::domain_error("sample_joint: need n >= 1");
  const double t1 = d.cell11();
  const double t2 = t1 + d.cell10();
  const double t3 = t2 + d.cell01();
  PairedBinarySample s;
  s.mode = SampleMode::iid;
  s.x.resize(n);
  s.y.resize(n);
  SplitMix64 gen(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = uniform01(gen);
    if (u < t1) {
      s.x[i] = 1; s.y[i] = 1;
    } else if (u < t2) {
      s.x[i] = 1; s.y[i] = 0;
    } else if (u < t3) {
      s.x[i] = 0; s.y[i] = 1;
    } else {
      s.x[i] = 0; s.y[i] = 0;
    }
  }
  return s;
}

PairedBinarySample sample_markov_joint(const JointBinaryDistribution& d,
                                       std::size_t n, double persistence,
                                       std::uint64_t seed) {
  if (n == 0) throw std::domain_error("sample_markov_joint: need n >= 1");
  if (!(persistence >= 0.0 && persistence < 1.0))
    throw std::domain_error("sample_markov_joint: persistence must be in [0,1)");
  const double t1 = d.cell11();
  const double t2 = t1 + d.cell10();
  const double t3 = t2 + d.cell01();
  PairedBinarySample s;
  s.mode = SampleMode::time_series;
  s.x.resize(n);
  s.y.resize(n);
  SplitMix64 gen(seed);
  auto fresh = [&](std::size_t i) {
    const double u = uniform01(gen);
    if (u < t1) {
      s.x[i] = 1; s.y[i] = 1;
    } else if (u < t2) {
      s.x[i] = 1; s.y[i] = 0;
    } else if (u < t3) {
      s.x[i] = 0; s.y[i] = 1;
    } else {
      s.x[i] = 0; s.y[i] = 0;
    }
  };
  fresh(0);
  for (std::size_t i = 1; i < n; ++i) {
    if (uniform01(gen) < persistence) {
      s.x[i] = s.x[i - 1];
      s.y[i] = s.y[i - 1];
    } else {
      fresh(i);
    }
  }
  return s;
}

namespace {

struct Kahan {
  double sum = 0.0, carry = 0.0;
  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct CellAccum {
  std::uint64_t covered = 0, below = 0, above = 0;
  Kahan length;
};

double true_measure(MeasureKind kind, const JointBinaryDistribution& d) {
  switch (kind) {
    case MeasureKind::cole: return cole(d);
    case MeasureKind::yule_q: return yule_q(d);
    case MeasureKind::phi: return phi(d);
    default:
      throw std::domain_error("coverage: unsupported measure " +
                              to_string(kind));
  }
}

}  // namespace

std::vector<CoverageCell> run_coverage(const CoverageConfig& cfg) {
  if (cfg.replications == 0 || cfg.r_count < 1 || cfg.marginal_pairs.empty() ||
      cfg.sample_sizes.empty() || cfg.measures.empty() || cfg.methods.empty())
    throw std::domain_error("run_coverage: empty design");
  if (!(cfg.r_inset_fraction > 0.0 && cfg.r_inset_fraction < 0.5))
    throw std::domain_error("run_coverage: inset fraction must be in (0, 0.5)");

  const std::size_t n_scen = cfg.marginal_pairs.size() *
                             static_cast<std::size_t>(cfg.r_count) *
                             cfg.sample_sizes.size();
  const bool has_cole =
      std::find(cfg.measures.begin(), cfg.measures.end(), MeasureKind::cole) !=
      cfg.measures.end();
  const std::vector<CiStrategy> strategies =
      cfg.strategies.empty() ? std::vector<CiStrategy>{CiStrategy::full}
                             : cfg.strategies;

  std::vector<std::vector<CoverageCell>> per_scenario(n_scen);

  auto run_scenario = [&](std::size_t scen) {
    const std::size_t per_pair =
        static_cast<std::size_t>(cfg.r_count) * cfg.sample_sizes.size();
    const std::size_t pair_i = scen / per_pair;
    const std::size_t rest = scen % per_pair;
    const std::size_t r_i = rest / cfg.sample_sizes.size();
    const std::size_t n_i = rest % cfg.sample_sizes.size();

    const auto [p, q] = cfg.marginal_pairs[pair_i];
    const FrechetBounds b = fh_bounds(p, q);
    const double width = b.upper - b.lower;
    const double lo = b.lower + cfg.r_inset_fraction * width;
    const double hi = b.upper - cfg.r_inset_fraction * width;
    const double r =
        cfg.r_count == 1
            ? 0.5 * (lo + hi)
            : lo + (hi - lo) * static_cast<double>(r_i) /
                       static_cast<double>(cfg.r_count - 1);
    const std::uint64_t n = cfg.sample_sizes[n_i];
    const JointBinaryDistribution d(p, q, r);

    // cell layout: per measure x method (x strategy for cole)
    struct CellKey {
      MeasureKind measure;
      Method method;
      CiStrategy strategy;
      double truth;
    };
    std::vector<CellKey> keys;
    for (MeasureKind mk : cfg.measures) {
      const double truth = true_measure(mk, d);
      for (Method method : cfg.methods) {
        if (mk == MeasureKind::cole) {
          for (CiStrategy st : strategies)
            keys.push_back({mk, method, st, truth});
        } else {
          keys.push_back({mk, method, CiStrategy::full, truth});
        }
      }
    }
    std::vector<CellAccum> accum(keys.size());
    std::uint64_t retained = 0;

    for (std::uint64_t rep = 0; rep < cfg.replications; ++rep) {
      const std::uint64_t rep_seed = derive_seed(cfg.seed, scen, rep);
      const PairedBinarySample sample =
          sample_joint(d, n, derive_seed(rep_seed, 1));
      const MomentEstimates m = estimate_moments(sample);
      if (m.any_boundary()) continue;
      ++retained;
      const LongRunCovariance omega = omega_iid(m);

      std::size_t idx = 0;
      for (MeasureKind mk : cfg.measures) {
        for (Method method : cfg.methods) {
          if (mk == MeasureKind::cole) {
            const auto cis = ci_c_strategies(m, omega, cfg.level, method,
                                             cfg.grid_step, strategies,
                                             cfg.n_mc, derive_seed(rep_seed, 2));
            for (std::size_t si = 0; si < strategies.size(); ++si, ++idx) {
              const double truth = keys[idx].truth;
              CellAccum& a = accum[idx];
              if (cis[si].contains(truth)) ++a.covered;
              else if (truth < cis[si].lower) ++a.below;
              else ++a.above;
              a.length.add(cis[si].length());
            }
          } else {
            const CiMeasure cm = mk == MeasureKind::yule_q ? CiMeasure::yule_q
                                                           : CiMeasure::phi;
            const IntervalEstimate e = ci(cm, m, omega, cfg.level, method);
            const double truth = keys[idx].truth;
            CellAccum& a = accum[idx];
            if (e.contains(truth)) ++a.covered;
            else if (truth < e.lower) ++a.below;
            else ++a.above;
            a.length.add(e.length());
            ++idx;
          }
        }
      }
    }

    std::vector<CoverageCell>& cells = per_scenario[scen];
    cells.resize(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) {
      CoverageCell& c = cells[i];
      c.p = p; c.q = q; c.r = r; c.n = n;
      c.measure = keys[i].measure;
      c.method = keys[i].method;
      c.strategy = keys[i].strategy;
      c.true_value = keys[i].truth;
      c.total = cfg.replications;
      c.retained = retained;
      if (retained > 0) {
        const double den = static_cast<double>(retained);
        c.coverage = accum[i].covered / den;
        c.below_rate = accum[i].below / den;
        c.above_rate = accum[i].above / den;
        c.mean_length = accum[i].length.sum / den;
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads
                                 : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, n_scen));
  if (threads <= 1) {
    for (std::size_t s = 0; s < n_scen; ++s) run_scenario(s);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t s = next.fetch_add(1);
          if (s >= n_scen) return;
          run_scenario(s);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<CoverageCell> out;
  for (auto& v : per_scenario)
    out.insert(out.end(), v.begin(), v.end());
  return out;
}

LimitLawResult replicate_limit_law(double p, double q, double c_true,
                                   std::uint64_t n, std::uint64_t replications,
                                   std::uint64_t seed, std::size_t n_mc) {
  if (!(c_true > -1.0 && c_true < 1.0))
    throw std::domain_error("replicate_limit_law: need C in (-1, 1)");
  const double pq = p * q;
  const double m_plus = std::min(p, q) - pq;
  const double m_minus = pq - std::max(0.0, p + q - 1.0);
  const double r = c_true >= 0.0 ? pq + c_true * m_plus : pq + c_true * m_minus;
  const JointBinaryDistribution d(p, q, r);  // throws if out of domain

  LimitLawResult res;
  res.p = p; res.q = q; res.c_true = c_true; res.r_true = r;
  res.n = n;
  res.replications = replications;
  res.estimates.reserve(replications);
  for (std::uint64_t rep = 0; rep < replications; ++rep) {
    const PairedBinarySample s =
        sample_joint(d, n, derive_seed(seed, 0x5a11, rep));
    const MomentEstimates m = estimate_moments(s);
    if (m.p_degenerate || m.q_degenerate) {
      ++res.dropped;
      continue;
    }
    res.estimates.push_back(m.sigma_hat >= 0.0 ? m.sigma_hat / m.m_plus
                                               : m.sigma_hat / m.m_minus);
  }

  const MomentEstimates pop = MomentEstimates::from_population(d, n);
  res.law = law_c(pop, omega_iid(pop), SigmaSign::auto_detect,
                  MarginalCase::auto_detect, n_mc, derive_seed(seed, 0x1a3));
  return res;
}

namespace {

// Joint probability solving yule_q = v at fixed marginals, via the odds
// ratio quadratic.
bool invert_yule(double p, double q, double v, double* r_out) {
  const double k = (1.0 + v) / (1.0 - v);
  if (v == 0.0) {
    *r_out = p * q;
    return true;
  }
  const double a = 1.0 - k;
  const double b = (1.0 - p - q) + k * (p + q);
  const double c = -k * p * q;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return false;
  const double sq = std::sqrt(disc);
  const double qq = -0.5 * (b + std::copysign(sq, b));
  const double cand[2] = {qq / a, c / qq};
  const FrechetBounds fb = fh_bounds(p, q);
  for (double cnd : cand) {
    if (cnd > fb.lower && cnd < fb.upper) {
      *r_out = cnd;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<SurfaceRow> comparison_surface(MeasureKind fixed_kind,
                                           double fixed_value, int grid) {
  if (!(fixed_value > -1.0 && fixed_value < 1.0))
    throw std::domain_error("comparison_surface: fixed value must be in (-1,1)");
  if (grid < 1) throw std::domain_error("comparison_surface: grid must be >= 1");

  std::vector<SurfaceRow> rows;
  rows.reserve(static_cast<std::size_t>(grid) * grid);
  for (int i = 1; i <= grid; ++i) {
    const double p = static_cast<double>(i) / (grid + 1);
    for (int j = 1; j <= grid; ++j) {
      const double q = static_cast<double>(j) / (grid + 1);
      const FrechetBounds fb = fh_bounds(p, q);
      const double pq = p * q;
      double r;
      switch (fixed_kind) {
        case MeasureKind::cole:
          r = fixed_value >= 0.0 ? pq + fixed_value * (fb.upper - pq)
                                 : pq + fixed_value * (pq - fb.lower);
          break;
        case MeasureKind::phi:
          r = pq + fixed_value *
                       std::sqrt(p * (1 - p) * q * (1 - q));
          break;
        case MeasureKind::yule_q: {
          if (!invert_yule(p, q, fixed_value, &r)) continue;
          break;
        }
        default:
          throw std::domain_error(
              "comparison_surface: unsupported fixed measure " +
              to_string(fixed_kind));
      }
      if (!(r > fb.lower && r < fb.upper)) continue;
      const JointBinaryDistribution d(p, q, r);
      rows.push_back({p, q, r, yule_q(d), phi(d), cole(d)});
    }
  }
  return rows;
}

}  // namespace evdep
