#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "evdep/core.hpp"
#include "evdep/dataset.hpp"
#include "evdep/estimation.hpp"
#include "evdep/inference.hpp"
#include "evdep/measures.hpp"
#include "evdep/normal.hpp"
#include "evdep/report.hpp"
#include "evdep/rng.hpp"
#include "evdep/simulation.hpp"
#include "evdep/tetrachoric.hpp"

using nlohmann::json;
using namespace evdep;

namespace {

struct CommonOpts {
  double level = 0.90;
  std::string method = "fisher";
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string mode = "iid";
  long hac_bandwidth = -1;  // -1: rate-based default
  double grid_step = 0.001;
  std::size_t n_mc = kDefaultMonteCarloDraws;
  bool full_precision = false;
  unsigned threads = 0;

  int digits() const { return full_precision ? 17 : 6; }
  Method method_enum() const {
    return method == "standard" ? Method::standard : Method::fisher;
  }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--level", o.level, "confidence level in (0,1)")
      ->check(CLI::Range(1e-6, 1.0 - 1e-6));
  cmd->add_option("--method", o.method, "CI method")
      ->check(CLI::IsMember({"standard", "fisher"}));
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--seed", o.seed, "master seed for every randomized path");
  cmd->add_option("--mode", o.mode, "sampling assumption for the data")
      ->check(CLI::IsMember({"iid", "timeseries"}));
  cmd->add_option("--hac-bandwidth", o.hac_bandwidth,
                  "HAC lag truncation (timeseries mode; default 1.3 n^0.2)");
  cmd->add_option("--grid-step", o.grid_step,
                  "grid resolution for inverted-test intervals");
  cmd->add_option("--nmc", o.n_mc,
                  "Monte Carlo draws for the degenerate Cole laws");
  cmd->add_flag("--full-precision", o.full_precision,
                "print 17 significant digits instead of 6");
  cmd->add_option("--threads", o.threads, "worker threads (0 = hardware)");
}

// ---------------------------------------------------------------------------
// measure
// ---------------------------------------------------------------------------

struct MeasureOpts {
  CommonOpts common;
  bool has_n11 = false, has_n10 = false, has_n01 = false, has_n00 = false;
  std::uint64_t n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  std::string table_file;
  std::string data_file;
  std::string col_x, col_y;
  std::vector<std::string> na_tokens = Dataset::default_na_tokens();
};

struct MeasureReport {
  std::uint64_t n = 0;
  MomentEstimates moments;
  bool boundary = false;
  std::vector<std::pair<std::string, double>> values;
  bool or_infinite = false;
  std::optional<IntervalEstimate> ci_q, ci_c, ci_phi;
  std::string diagnostic;
};

MeasureReport build_measure_report(const MomentEstimates& m,
                                   const LongRunCovariance& lr,
                                   const CommonOpts& o) {
  MeasureReport rep;
  rep.n = m.n;
  rep.moments = m;
  rep.boundary = m.any_boundary();

  const JointBinaryDistribution d = m.to_distribution();
  const auto cc = contingency_coefficients(d);
  const auto fm = further_measures(d);
  const OddsRatio orv = odds_ratio(d);
  rep.or_infinite = orv.is_infinite();
  rep.values = {
      {"covariance", covariance(d)},
      {"phi", phi(d)},
      {"cole", cole(d)},
      {"yule_q", yule_q(d)},
      {"yule_y", yule_g(d, 0.5)},
      {"odds_ratio", orv.value()},
      {"msc", cc.msc},
      {"cramers_v", cc.cramers_v},
      {"tschuprow_t", cc.tschuprow_t},
      {"pearson_cc", cc.pearson_cc},
      {"distance_cor", fm.distance_cor},
      {"chatterjee_xi", fm.chatterjee_xi},
      {"uncertainty", fm.uncertainty},
      {"tetrachoric", tetrachoric(d)},
  };

  if (rep.boundary) {
    rep.diagnostic =
        "sample moments on the domain boundary: intervals suppressed, "
        "point values follow the boundary conventions";
    return rep;
  }
  const Method method = o.method_enum();
  rep.ci_q = ci(CiMeasure::yule_q, m, lr, o.level, method);
  rep.ci_phi = ci(CiMeasure::phi, m, lr, o.level, method);
  rep.ci_c = ci_c(m, lr, o.level, method, o.grid_step, CiStrategy::full,
                  o.n_mc, o.seed);
  return rep;
}

json measure_report_json(const MeasureReport& rep, const CommonOpts& o) {
  json values;
  for (const auto& [name, value] : rep.values) {
    if (name == "odds_ratio" && rep.or_infinite)
      values[name] = nullptr;
    else
      values[name] = value;
  }
  json out{
      {"n", rep.n},
      {"p_hat", rep.moments.p_hat},
      {"q_hat", rep.moments.q_hat},
      {"r_hat", rep.moments.r_hat},
      {"level", o.level},
      {"method", o.method},
      {"mode", o.mode},
      {"seed", o.seed},
      {"boundary", rep.boundary},
      {"odds_ratio_infinite", rep.or_infinite},
      {"measures", values},
  };
  if (!rep.diagnostic.empty()) out["diagnostic"] = rep.diagnostic;
  if (rep.ci_q) {
    out["intervals"]["yule_q"] = interval_to_json(*rep.ci_q);
    out["intervals"]["cole"] = interval_to_json(*rep.ci_c);
    out["intervals"]["phi"] = interval_to_json(*rep.ci_phi);
  }
  return out;
}

void print_measure_text(const MeasureReport& rep, const CommonOpts& o,
                        std::ostream& os) {
  const int dig = o.digits();
  os << "n = " << rep.n << "   level = " << format_number(o.level, 4)
     << "   method = " << o.method << "   mode = " << o.mode << "\n";
  os << "p_hat = " << format_number(rep.moments.p_hat, dig)
     << "   q_hat = " << format_number(rep.moments.q_hat, dig)
     << "   r_hat = " << format_number(rep.moments.r_hat, dig) << "\n\n";
  auto line = [&](const std::string& name, double value,
                  const std::optional<IntervalEstimate>& e) {
    os << "  " << name;
    for (std::size_t i = name.size(); i < 16; ++i) os << ' ';
    if (name == "odds_ratio" && rep.or_infinite)
      os << "inf";
    else
      os << format_number(value, dig);
    if (e) {
      os << "   [" << format_number(e->lower, dig) << ", "
         << format_number(e->upper, dig) << "]";
      if (e->non_interval_flag) os << "  (non-convex acceptance set)";
      if (e->empty_acceptance) os << "  (empty acceptance set)";
    }
    os << "\n";
  };
  for (const auto& [name, value] : rep.values) {
    std::optional<IntervalEstimate> e;
    if (name == "yule_q") e = rep.ci_q;
    if (name == "cole") e = rep.ci_c;
    if (name == "phi") e = rep.ci_phi;
    line(name, value, e);
  }
  if (!rep.diagnostic.empty()) os << "\nnote: " << rep.diagnostic << "\n";
}

void print_measure_csv(const MeasureReport& rep, const CommonOpts& o,
                       std::ostream& os) {
  const int dig = o.digits();
  os << "measure,value,lower,upper\n";
  for (const auto& [name, value] : rep.values) {
    const IntervalEstimate* e = nullptr;
    if (name == "yule_q" && rep.ci_q) e = &*rep.ci_q;
    if (name == "cole" && rep.ci_c) e = &*rep.ci_c;
    if (name == "phi" && rep.ci_phi) e = &*rep.ci_phi;
    os << name << ',';
    if (name == "odds_ratio" && rep.or_infinite)
      os << "inf";
    else
      os << format_number(value, dig);
    if (e)
      os << ',' << format_number(e->lower, dig) << ','
         << format_number(e->upper, dig);
    else
      os << ",,";
    os << "\n";
  }
}

int run_measure(const MeasureOpts& opt) {
  const CommonOpts& o = opt.common;
  const bool has_flags =
      opt.has_n11 || opt.has_n10 || opt.has_n01 || opt.has_n00;
  const int sources = int(has_flags) + int(!opt.table_file.empty()) +
                      int(!opt.data_file.empty());
  if (sources != 1)
    throw std::invalid_argument(
        "measure: give exactly one of --n11/--n10/--n01/--n00, --table, "
        "--data");

  MomentEstimates m;
  LongRunCovariance lr;
  if (!opt.data_file.empty()) {
    const Dataset ds = Dataset::read_csv_file(opt.data_file, opt.na_tokens);
    if (ds.columns() < 2)
      throw std::invalid_argument("measure: need two binary columns");
    const std::size_t ix =
        opt.col_x.empty() ? 0 : ds.column_index(opt.col_x);
    const std::size_t iy =
        opt.col_y.empty() ? 1 : ds.column_index(opt.col_y);
    PairedBinarySample s;
    s.mode = o.mode == "timeseries" ? SampleMode::time_series
                                    : SampleMode::iid;
    for (std::size_t row = 0; row < ds.rows(); ++row) {
      const auto a = ds.column(ix)[row];
      const auto b = ds.column(iy)[row];
      if (a < 0 || b < 0) {
        if (s.mode == SampleMode::time_series)
          throw std::invalid_argument(
              "measure: missing values break the time ordering; clean the "
              "series first");
        continue;
      }
      s.x.push_back(static_cast<std::uint8_t>(a));
      s.y.push_back(static_cast<std::uint8_t>(b));
    }
    if (s.n() == 0) throw std::invalid_argument("measure: no complete rows");
    m = estimate_moments(s);
    if (o.mode == "timeseries") {
      const long bw = o.hac_bandwidth >= 0 ? o.hac_bandwidth
                                           : default_hac_bandwidth(s.n());
      lr = omega_hac(s, bw);
    } else if (!m.any_boundary()) {
      lr = omega_iid(m);
    }
  } else {
    if (o.mode == "timeseries")
      throw std::invalid_argument(
          "measure: timeseries mode needs --data (counts carry no order)");
    ContingencyTable t{1, 0, 0, 0};
    if (has_flags) {
      if (!(opt.has_n11 && opt.has_n10 && opt.has_n01 && opt.has_n00))
        throw std::invalid_argument(
            "measure: all four of --n11 --n10 --n01 --n00 are required");
      t = ContingencyTable(opt.n11, opt.n10, opt.n01, opt.n00);
    } else {
      std::ifstream in(opt.table_file);
      if (!in)
        throw std::invalid_argument("measure: cannot open '" +
                                    opt.table_file + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      t = ContingencyTable::parse_block(buf.str());
    }
    m = moments_from_table(t);
    if (!m.any_boundary()) lr = omega_iid(m);
  }

  const MeasureReport rep = build_measure_report(m, lr, o);
  if (o.format == "json")
    std::cout << measure_report_json(rep, o).dump(2) << "\n";
  else if (o.format == "csv")
    print_measure_csv(rep, o, std::cout);
  else
    print_measure_text(rep, o, std::cout);
  if (!rep.diagnostic.empty()) std::cerr << "warning: " << rep.diagnostic << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// matrix
// ---------------------------------------------------------------------------

struct MatrixOpts {
  CommonOpts common;
  std::string data_file;
  std::vector<std::string> measures = {"cole", "yule_q", "phi"};
  bool all = false;
  std::vector<std::string> na_tokens = Dataset::default_na_tokens();
};

struct PairCell {
  bool skipped = false;
  bool boundary = false;
  std::uint64_t n_eff = 0;
  std::vector<double> values;  // aligned with the measure list
  std::optional<IntervalEstimate> ci_q, ci_c, ci_phi;
};

double measure_value(MeasureKind kind, const JointBinaryDistribution& d) {
  switch (kind) {
    case MeasureKind::covariance: return covariance(d);
    case MeasureKind::phi: return phi(d);
    case MeasureKind::cole: return cole(d);
    case MeasureKind::yule_q: return yule_q(d);
    case MeasureKind::yule_y: return yule_g(d, 0.5);
    case MeasureKind::odds_ratio: return odds_ratio(d).value();
    case MeasureKind::msc: return contingency_coefficients(d).msc;
    case MeasureKind::cramers_v: return contingency_coefficients(d).cramers_v;
    case MeasureKind::tschuprow_t:
      return contingency_coefficients(d).tschuprow_t;
    case MeasureKind::pearson_cc:
      return contingency_coefficients(d).pearson_cc;
    case MeasureKind::distance_cor: return further_measures(d).distance_cor;
    case MeasureKind::chatterjee_xi: return further_measures(d).chatterjee_xi;
    case MeasureKind::uncertainty: return further_measures(d).uncertainty;
    case MeasureKind::tetrachoric: return tetrachoric(d);
  }
  return 0.0;
}

MeasureKind parse_measure(const std::string& name) {
  for (MeasureKind kind :
       {MeasureKind::covariance, MeasureKind::phi, MeasureKind::cole,
        MeasureKind::yule_q, MeasureKind::yule_y, MeasureKind::odds_ratio,
        MeasureKind::msc, MeasureKind::cramers_v, MeasureKind::tschuprow_t,
        MeasureKind::pearson_cc, MeasureKind::distance_cor,
        MeasureKind::chatterjee_xi, MeasureKind::uncertainty,
        MeasureKind::tetrachoric}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown measure '" + name + "'");
}

int run_matrix(const MatrixOpts& opt) {
  const CommonOpts& o = opt.common;
  const Dataset ds = Dataset::read_csv_file(opt.data_file, opt.na_tokens);
  if (ds.columns() < 2)
    throw std::invalid_argument("matrix: need at least two binary columns");

  std::vector<MeasureKind> kinds;
  if (opt.all) {
    kinds = {MeasureKind::cole,         MeasureKind::yule_q,
             MeasureKind::phi,          MeasureKind::covariance,
             MeasureKind::yule_y,       MeasureKind::odds_ratio,
             MeasureKind::msc,          MeasureKind::cramers_v,
             MeasureKind::tschuprow_t,  MeasureKind::pearson_cc,
             MeasureKind::distance_cor, MeasureKind::chatterjee_xi,
             MeasureKind::uncertainty,  MeasureKind::tetrachoric};
  } else {
    for (const auto& name : opt.measures) kinds.push_back(parse_measure(name));
  }

  const std::size_t ncol = ds.columns();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < ncol; ++a)
    for (std::size_t b = a + 1; b < ncol; ++b) pairs.push_back({a, b});

  std::vector<PairCell> cells(pairs.size());
  auto work = [&](std::size_t idx) {
    const auto [a, b] = pairs[idx];
    PairCell& cell = cells[idx];
    const PairwiseCounts pc = pairwise_counts(ds, a, b);
    cell.n_eff = pc.effective_n();
    if (cell.n_eff < 2) {
      cell.skipped = true;
      return;
    }
    const MomentEstimates m = moments_from_table(pc.table());
    cell.boundary = m.any_boundary();
    if (m.p_degenerate || m.q_degenerate) {
      cell.skipped = true;  // no dependence is defined for a constant column
      return;
    }
    const JointBinaryDistribution d = m.to_distribution();
    for (MeasureKind kind : kinds) cell.values.push_back(measure_value(kind, d));
    if (!cell.boundary) {
      const LongRunCovariance lr = omega_iid(m);
      const Method method = o.method_enum();
      cell.ci_q = ci(CiMeasure::yule_q, m, lr, o.level, method);
      cell.ci_phi = ci(CiMeasure::phi, m, lr, o.level, method);
      cell.ci_c = ci_c(m, lr, o.level, method, o.grid_step, CiStrategy::full,
                       o.n_mc, derive_seed(o.seed, idx));
    }
  };

  unsigned threads = o.threads ? o.threads
                               : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, pairs.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= pairs.size()) return;
          work(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (cells[i].skipped)
      std::cerr << "warning: pair (" << ds.names()[pairs[i].first] << ", "
                << ds.names()[pairs[i].second]
                << ") skipped: fewer than 2 complete rows or a constant "
                   "column\n";
  }

  const int dig = o.digits();
  auto cell_at = [&](std::size_t a, std::size_t b) -> const PairCell* {
    if (a == b) return nullptr;
    const std::size_t lo = std::min(a, b), hi = std::max(a, b);
    // index into the upper-triangle enumeration
    const std::size_t idx = lo * ncol - lo * (lo + 1) / 2 + (hi - lo - 1);
    return &cells[idx];
  };

  if (o.format == "json") {
    json out{{"columns", ds.names()}, {"level", o.level},
             {"method", o.method},   {"seed", o.seed},
             {"rows", ds.rows()}};
    json jm = json::object();
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      json mat = json::array();
      for (std::size_t a = 0; a < ncol; ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < ncol; ++b) {
          if (a == b) { row.push_back(1.0); continue; }
          const PairCell* cell = cell_at(a, b);
          if (cell->skipped) row.push_back(nullptr);
          else row.push_back(cell->values[k]);
        }
        mat.push_back(row);
      }
      jm[to_string(kinds[k])] = mat;
    }
    out["measures"] = jm;
    json jn = json::array();
    for (std::size_t a = 0; a < ncol; ++a) {
      json row = json::array();
      for (std::size_t b = 0; b < ncol; ++b) {
        if (a == b) {
          std::uint64_t complete = 0;
          for (std::size_t r = 0; r < ds.rows(); ++r)
            complete += ds.column(a)[r] >= 0 ? 1 : 0;
          row.push_back(complete);
        } else {
          row.push_back(cell_at(a, b)->n_eff);
        }
      }
      jn.push_back(row);
    }
    out["effective_n"] = jn;
    json jci = json::object();
    for (const std::string which : {"cole", "yule_q", "phi"}) {
      json entries = json::array();
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const PairCell& cell = cells[i];
        const std::optional<IntervalEstimate>& e =
            which == "cole" ? cell.ci_c
                            : (which == "yule_q" ? cell.ci_q : cell.ci_phi);
        if (cell.skipped || !e) continue;
        json entry = interval_to_json(*e);
        entry["a"] = ds.names()[pairs[i].first];
        entry["b"] = ds.names()[pairs[i].second];
        entries.push_back(entry);
      }
      jci[which] = entries;
    }
    out["intervals"] = jci;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (o.format == "csv") {
    std::cout << "a,b,n_eff";
    for (MeasureKind kind : kinds) std::cout << ',' << to_string(kind);
    std::cout << ",cole_lower,cole_upper,yule_q_lower,yule_q_upper,phi_lower,"
                 "phi_upper\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const PairCell& cell = cells[i];
      std::cout << ds.names()[pairs[i].first] << ','
                << ds.names()[pairs[i].second] << ',' << cell.n_eff;
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        std::cout << ',';
        if (!cell.skipped) std::cout << format_number(cell.values[k], dig);
      }
      for (const auto* e : {cell.ci_c ? &*cell.ci_c : nullptr,
                            cell.ci_q ? &*cell.ci_q : nullptr,
                            cell.ci_phi ? &*cell.ci_phi : nullptr}) {
        if (e)
          std::cout << ',' << format_number(e->lower, dig) << ','
                    << format_number(e->upper, dig);
        else
          std::cout << ",,";
      }
      std::cout << "\n";
    }
    return 0;
  }

  // text: one matrix per measure, then the effective sample sizes
  auto print_matrix = [&](const std::string& title,
                          const std::function<std::string(std::size_t,
                                                          std::size_t)>& fmt) {
    std::cout << title << "\n";
    std::size_t width = 9;
    for (const auto& name : ds.names()) width = std::max(width, name.size() + 1);
    std::cout << std::string(width, ' ');
    for (const auto& name : ds.names()) {
      std::cout << name;
      for (std::size_t i = name.size(); i < width; ++i) std::cout << ' ';
    }
    std::cout << "\n";
    for (std::size_t a = 0; a < ncol; ++a) {
      const std::string& name = ds.names()[a];
      std::cout << name;
      for (std::size_t i = name.size(); i < width; ++i) std::cout << ' ';
      for (std::size_t b = 0; b < ncol; ++b) {
        const std::string v = fmt(a, b);
        std::cout << v;
        for (std::size_t i = v.size(); i < width; ++i) std::cout << ' ';
      }
      std::cout << "\n";
    }
    std::cout << "\n";
  };

  for (std::size_t k = 0; k < kinds.size(); ++k) {
    print_matrix(to_string(kinds[k]), [&](std::size_t a, std::size_t b) {
      if (a == b) return std::string("1");
      const PairCell* cell = cell_at(a, b);
      if (cell->skipped) return std::string("-");
      return format_number(cell->values[k], dig);
    });
  }
  for (const std::string which : {"cole", "yule_q", "phi"}) {
    const bool wanted =
        std::find_if(kinds.begin(), kinds.end(), [&](MeasureKind kind) {
          return to_string(kind) == which;
        }) != kinds.end();
    if (!wanted) continue;
    print_matrix(which + " lower", [&](std::size_t a, std::size_t b) {
      if (a == b) return std::string("1");
      const PairCell* cell = cell_at(a, b);
      const auto& e = which == "cole" ? cell->ci_c
                                      : (which == "yule_q" ? cell->ci_q
                                                           : cell->ci_phi);
      if (cell->skipped || !e) return std::string("-");
      return format_number(e->lower, dig);
    });
    print_matrix(which + " upper", [&](std::size_t a, std::size_t b) {
      if (a == b) return std::string("1");
      const PairCell* cell = cell_at(a, b);
      const auto& e = which == "cole" ? cell->ci_c
                                      : (which == "yule_q" ? cell->ci_q
                                                           : cell->ci_phi);
      if (cell->skipped || !e) return std::string("-");
      return format_number(e->upper, dig);
    });
  }
  print_matrix("effective n", [&](std::size_t a, std::size_t b) {
    if (a == b) {
      std::uint64_t complete = 0;
      for (std::size_t r = 0; r < ds.rows(); ++r)
        complete += ds.column(a)[r] >= 0 ? 1 : 0;
      return std::to_string(complete);
    }
    return std::to_string(cell_at(a, b)->n_eff);
  });
  return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOpts {
  CommonOpts common;
  std::string config_file;
  std::vector<std::string> pairs;
  int r_count = 39;
  std::vector<std::uint64_t> sizes = {100, 500, 2000};
  std::uint64_t replications = 1000;
  std::vector<std::string> methods = {"standard", "fisher"};
  std::vector<std::string> measures = {"cole", "yule_q", "phi"};
  bool strategy_compare = false;
  std::string out = "coverage";
};

// JSON config file mirroring the flag set; flags given on the command line
// still win because they are applied on top.
void apply_config_file(SimulateOpts& opt) {
  std::ifstream in(opt.config_file);
  if (!in)
    throw std::invalid_argument("simulate: cannot open config '" +
                                opt.config_file + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("simulate: config parse error: ") +
                                e.what());
  }
  auto field = [&](const char* name) { return cfg.contains(name); };
  if (field("pairs")) opt.pairs = cfg["pairs"].get<std::vector<std::string>>();
  if (field("r_count")) opt.r_count = cfg["r_count"].get<int>();
  if (field("sizes"))
    opt.sizes = cfg["sizes"].get<std::vector<std::uint64_t>>();
  if (field("replications"))
    opt.replications = cfg["replications"].get<std::uint64_t>();
  if (field("methods"))
    opt.methods = cfg["methods"].get<std::vector<std::string>>();
  if (field("measures"))
    opt.measures = cfg["measures"].get<std::vector<std::string>>();
  if (field("strategy_compare"))
    opt.strategy_compare = cfg["strategy_compare"].get<bool>();
  if (field("level")) opt.common.level = cfg["level"].get<double>();
  if (field("seed")) opt.common.seed = cfg["seed"].get<std::uint64_t>();
  if (field("nmc")) opt.common.n_mc = cfg["nmc"].get<std::size_t>();
  if (field("grid_step"))
    opt.common.grid_step = cfg["grid_step"].get<double>();
  if (field("out")) opt.out = cfg["out"].get<std::string>();
  for (const auto& [key, value] : cfg.items()) {
    (void)value;
    static const std::vector<std::string> known = {
        "pairs", "r_count", "sizes", "replications", "methods", "measures",
        "strategy_compare", "level", "seed", "nmc", "grid_step", "out"};
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("simulate: unknown config field '" + key +
                                  "'");
  }
}

int run_simulate(SimulateOpts opt) {
  if (!opt.config_file.empty()) apply_config_file(opt);
  const CommonOpts& o = opt.common;
  CoverageConfig cfg;
  if (!opt.pairs.empty()) {
    cfg.marginal_pairs.clear();
    for (const auto& spec : opt.pairs) {
      const auto sep = spec.find(':');
      if (sep == std::string::npos)
        throw std::invalid_argument("simulate: pair '" + spec +
                                    "' is not of the form p:q");
      cfg.marginal_pairs.push_back(
          {std::stod(spec.substr(0, sep)), std::stod(spec.substr(sep + 1))});
    }
  }
  cfg.r_count = opt.r_count;
  cfg.sample_sizes = opt.sizes;
  cfg.replications = opt.replications;
  cfg.level = o.level;
  cfg.methods.clear();
  for (const auto& name : opt.methods)
    cfg.methods.push_back(name == "standard" ? Method::standard
                                             : Method::fisher);
  cfg.measures.clear();
  for (const auto& name : opt.measures) cfg.measures.push_back(parse_measure(name));
  cfg.strategies = opt.strategy_compare
                       ? std::vector<CiStrategy>{CiStrategy::full,
                                                 CiStrategy::no_sigma_test,
                                                 CiStrategy::no_pq_test,
                                                 CiStrategy::basic}
                       : std::vector<CiStrategy>{CiStrategy::full};
  cfg.seed = o.seed;
  cfg.n_mc = o.n_mc;
  cfg.grid_step = o.grid_step;
  cfg.threads = o.threads;

  const auto cells = run_coverage(cfg);

  const int dig = o.digits();
  std::ofstream csv(opt.out + ".csv");
  if (!csv)
    throw std::runtime_error("simulate: cannot write '" + opt.out + ".csv'");
  csv << "p,q,r,n,measure,method,strategy,true_value,total,retained,"
         "coverage,below_rate,above_rate,mean_length\n";
  json jcells = json::array();
  for (const auto& cell : cells) {
    csv << format_number(cell.p, dig) << ',' << format_number(cell.q, dig)
        << ',' << format_number(cell.r, dig) << ',' << cell.n << ','
        << to_string(cell.measure) << ',' << to_string(cell.method) << ','
        << to_string(cell.strategy) << ','
        << format_number(cell.true_value, dig) << ',' << cell.total << ','
        << cell.retained << ',' << format_number(cell.coverage, dig) << ','
        << format_number(cell.below_rate, dig) << ','
        << format_number(cell.above_rate, dig) << ','
        << format_number(cell.mean_length, dig) << "\n";
    jcells.push_back(json{{"p", cell.p},
                          {"q", cell.q},
                          {"r", cell.r},
                          {"n", cell.n},
                          {"measure", to_string(cell.measure)},
                          {"method", to_string(cell.method)},
                          {"strategy", to_string(cell.strategy)},
                          {"true_value", cell.true_value},
                          {"total", cell.total},
                          {"retained", cell.retained},
                          {"coverage", cell.coverage},
                          {"below_rate", cell.below_rate},
                          {"above_rate", cell.above_rate},
                          {"mean_length", cell.mean_length}});
  }
  json out{{"seed", o.seed},
           {"level", o.level},
           {"replications", opt.replications},
           {"n_mc", cfg.n_mc},
           {"grid_step", cfg.grid_step},
           {"cells", jcells}};
  std::ofstream js(opt.out + ".json");
  if (!js)
    throw std::runtime_error("simulate: cannot write '" + opt.out + ".json'");
  js << out.dump(2) << "\n";

  // stdout summary: grid dimensions and mean coverage per measure/method
  std::cout << "cells: " << cells.size() << " ("
            << cfg.marginal_pairs.size() << " pairs x " << cfg.r_count
            << " r-values x " << cfg.sample_sizes.size() << " sizes)\n";
  for (MeasureKind kind : cfg.measures) {
    for (Method method : cfg.methods) {
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& cell : cells) {
        if (cell.measure != kind || cell.method != method) continue;
        if (cell.retained_fraction() < 0.5) continue;  // reported as missing
        sum += cell.coverage;
        ++count;
      }
      std::cout << "  " << to_string(kind) << " / " << to_string(method)
                << ": mean coverage "
                << format_number(count ? sum / count : 0.0, 4) << " over "
                << count << " retained cells\n";
    }
  }
  std::cout << "wrote " << opt.out << ".csv and " << opt.out << ".json\n";
  return 0;
}

// ---------------------------------------------------------------------------
// surface
// ---------------------------------------------------------------------------

struct SurfaceOpts {
  CommonOpts common;
  std::string fix = "cole=0.7";
  int grid = 199;
  std::string out;
};

int run_surface(const SurfaceOpts& opt) {
  const auto sep = opt.fix.find('=');
  if (sep == std::string::npos)
    throw std::invalid_argument("surface: --fix expects measure=value");
  const MeasureKind kind = parse_measure(opt.fix.substr(0, sep));
  const double value = std::stod(opt.fix.substr(sep + 1));
  const auto rows = comparison_surface(kind, value, opt.grid);

  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out);
    if (!file)
      throw std::runtime_error("surface: cannot write '" + opt.out + "'");
    os = &file;
  }
  const int dig = opt.common.digits();
  *os << "p,q,r,yule_q,phi,cole\n";
  for (const auto& row : rows) {
    *os << format_number(row.p, dig) << ',' << format_number(row.q, dig) << ','
        << format_number(row.r, dig) << ','
        << format_number(row.yule_q_value, dig) << ','
        << format_number(row.phi_value, dig) << ','
        << format_number(row.cole_value, dig) << "\n";
  }
  if (!opt.out.empty())
    std::cout << "wrote " << rows.size() << " rows to " << opt.out << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// limit-law
// ---------------------------------------------------------------------------

struct LimitLawOpts {
  CommonOpts common;
  double p = 0.3, q = 0.7, c = 0.5;
  std::uint64_t n = 2000;
  std::uint64_t replications = 10000;
  int bins = 60;
  std::string out = "limitlaw";
};

int run_limit_law(const LimitLawOpts& opt) {
  const CommonOpts& o = opt.common;
  const auto res = replicate_limit_law(opt.p, opt.q, opt.c, opt.n,
                                       opt.replications, o.seed, o.n_mc);
  if (res.estimates.empty())
    throw std::runtime_error("limit-law: every replication degenerated");

  double lo = res.estimates[0], hi = res.estimates[0];
  for (double v : res.estimates) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double pad = 0.05 * (hi - lo + 1e-12);
  lo -= pad;
  hi += pad;
  const double width = (hi - lo) / opt.bins;

  std::vector<std::uint64_t> counts(opt.bins, 0);
  for (double v : res.estimates) {
    int bin = static_cast<int>((v - lo) / width);
    bin = std::min(std::max(bin, 0), opt.bins - 1);
    counts[static_cast<std::size_t>(bin)]++;
  }
  const int dig = o.digits();
  std::ofstream hist(opt.out + "_hist.csv");
  if (!hist)
    throw std::runtime_error("limit-law: cannot write histogram CSV");
  hist << "bin_center,count\n";
  for (int b = 0; b < opt.bins; ++b)
    hist << format_number(lo + (b + 0.5) * width, dig) << ',' << counts[b]
         << "\n";

  // law density samples for the overlay, shifted to the estimate scale
  std::ofstream law(opt.out + "_law.csv");
  if (!law) throw std::runtime_error("limit-law: cannot write law CSV");
  law << "x,density\n";
  const int samples = 257;
  if (const auto* mc = std::get_if<MonteCarloLaw>(&res.law.dist)) {
    // smooth the sorted limit draws with a fine histogram
    const auto& draws = *mc->draws;
    const double dlo = draws.front(), dhi = draws.back();
    const double dw = (dhi - dlo) / samples;
    std::vector<double> dens(samples, 0.0);
    for (double v : draws) {
      int bin = static_cast<int>((v - dlo) / dw);
      bin = std::min(std::max(bin, 0), samples - 1);
      dens[static_cast<std::size_t>(bin)] += 1.0;
    }
    for (int i = 0; i < samples; ++i)
      law << format_number(res.c_true + dlo + (i + 0.5) * dw, dig) << ','
          << format_number(dens[i] / (draws.size() * dw), dig) << "\n";
  } else {
    for (int i = 0; i < samples; ++i) {
      const double x = lo + (hi - lo) * i / (samples - 1);
      const double t = x - res.c_true;
      double density;
      if (const auto* g = std::get_if<GaussianLaw>(&res.law.dist)) {
        const double sd = std::sqrt(g->variance);
        density = norm_pdf(t / sd) / sd;
      } else {
        const auto& mix = std::get<HalfNormalMixLaw>(res.law.dist);
        const double scale =
            mix.base_sd * (t >= 0.0 ? mix.scale_plus : mix.scale_minus);
        density = norm_pdf(t / scale) / scale;
      }
      law << format_number(x, dig) << ',' << format_number(density, dig)
          << "\n";
    }
  }

  std::cout << "replications: " << res.replications
            << "  retained: " << res.estimates.size()
            << "  dropped: " << res.dropped << "\n";
  std::cout << "true C: " << format_number(res.c_true, dig)
            << "  r: " << format_number(res.r_true, dig) << "\n";
  std::cout << "wrote " << opt.out << "_hist.csv and " << opt.out
            << "_law.csv\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dependence measures and asymptotic inference for two events"};
  app.require_subcommand(1);

  MeasureOpts measure_opts;
  auto* measure_cmd = app.add_subcommand(
      "measure", "measures and confidence intervals for one 2x2 table");
  add_common(measure_cmd, measure_opts.common);
  measure_cmd->add_option("--n11", measure_opts.n11, "count of (A, B)")
      ->each([&](const std::string&) { measure_opts.has_n11 = true; });
  measure_cmd->add_option("--n10", measure_opts.n10, "count of (A, not B)")
      ->each([&](const std::string&) { measure_opts.has_n10 = true; });
  measure_cmd->add_option("--n01", measure_opts.n01, "count of (not A, B)")
      ->each([&](const std::string&) { measure_opts.has_n01 = true; });
  measure_cmd->add_option("--n00", measure_opts.n00, "count of (neither)")
      ->each([&](const std::string&) { measure_opts.has_n00 = true; });
  measure_cmd->add_option("--table", measure_opts.table_file,
                          "file with a 2x2 count block");
  measure_cmd->add_option("--data", measure_opts.data_file,
                          "CSV with two binary columns");
  measure_cmd->add_option("--col-x", measure_opts.col_x, "first column name");
  measure_cmd->add_option("--col-y", measure_opts.col_y, "second column name");
  measure_cmd->add_option("--na-token", measure_opts.na_tokens,
                          "missing-value tokens (repeatable)");

  MatrixOpts matrix_opts;
  auto* matrix_cmd = app.add_subcommand(
      "matrix", "pairwise measure matrices over many binary columns");
  add_common(matrix_cmd, matrix_opts.common);
  matrix_cmd->add_option("--data", matrix_opts.data_file, "CSV dataset")
      ->required();
  matrix_cmd->add_option("--measures", matrix_opts.measures,
                         "measure names (default cole yule_q phi)");
  matrix_cmd->add_flag("--all", matrix_opts.all, "emit every measure");
  matrix_cmd->add_option("--na-token", matrix_opts.na_tokens,
                         "missing-value tokens (repeatable)");

  SimulateOpts simulate_opts;
  // repeated per-replication simulation: a lighter Monte Carlo default
  simulate_opts.common.n_mc = 10000;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "coverage experiment over a design grid");
  add_common(simulate_cmd, simulate_opts.common);
  simulate_cmd->add_option("--config", simulate_opts.config_file,
                           "JSON config file (flags override its fields)");
  simulate_cmd->add_option("--pairs", simulate_opts.pairs,
                           "marginal pairs p:q (default: reference design)");
  simulate_cmd->add_option("--r-count", simulate_opts.r_count,
                           "joint probabilities per pair");
  simulate_cmd->add_option("--sizes", simulate_opts.sizes, "sample sizes");
  simulate_cmd->add_option("--replications", simulate_opts.replications,
                           "Monte Carlo replications per cell");
  simulate_cmd->add_option("--methods", simulate_opts.methods, "CI methods");
  simulate_cmd->add_option("--measures", simulate_opts.measures, "measures");
  simulate_cmd->add_flag("--strategy-compare", simulate_opts.strategy_compare,
                         "run all four p-value combination strategies");
  simulate_cmd->add_option("--out", simulate_opts.out, "output file prefix");

  SurfaceOpts surface_opts;
  auto* surface_cmd = app.add_subcommand(
      "surface", "comparison surface for a fixed measure value");
  add_common(surface_cmd, surface_opts.common);
  surface_cmd->add_option("--fix", surface_opts.fix,
                          "fixed measure, e.g. cole=0.7");
  surface_cmd->add_option("--grid", surface_opts.grid, "marginal grid size");
  surface_cmd->add_option("--out", surface_opts.out, "output CSV (default stdout)");

  LimitLawOpts limit_opts;
  auto* limit_cmd = app.add_subcommand(
      "limit-law", "sampling distribution of the Cole estimator");
  add_common(limit_cmd, limit_opts.common);
  limit_cmd->add_option("--p", limit_opts.p, "P(A)");
  limit_cmd->add_option("--q", limit_opts.q, "P(B)");
  limit_cmd->add_option("--c", limit_opts.c, "true Cole coefficient");
  limit_cmd->add_option("--n", limit_opts.n, "sample size per replication");
  limit_cmd->add_option("--replications", limit_opts.replications,
                        "number of replications");
  limit_cmd->add_option("--bins", limit_opts.bins, "histogram bins");
  limit_cmd->add_option("--out", limit_opts.out, "output file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(measure_cmd)) return run_measure(measure_opts);
    if (app.got_subcommand(matrix_cmd)) return run_matrix(matrix_opts);
    if (app.got_subcommand(simulate_cmd)) return run_simulate(simulate_opts);
    if (app.got_subcommand(surface_cmd)) return run_surface(surface_opts);
    if (app.got_subcommand(limit_cmd)) return run_limit_law(limit_opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
