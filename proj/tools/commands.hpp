#pragma once

// Subcommands of the `lossless` tool. Kept in a header so the tests can run
// them in-process against string streams.
//
// Exit codes: 0 success, 1 validation failure, 2 usage or input error,
// 3 numerical failure or chart mismatch.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lossless/io.hpp"
#include "lossless/pivot.hpp"
#include "lossless/random.hpp"
#include "lossless/schur.hpp"
#include "lossless/sysid.hpp"
#include "lossless/young.hpp"

namespace lossless::cli {

enum Exit : int { kOk = 0, kValidation = 1, kUsage = 2, kNumeric = 3 };

inline constexpr int kDefaultSizeCap = 24;
inline constexpr double kCheckTol = 1e-9;

using io::json;

namespace detail {

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io::SchemaError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw io::SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline std::string join(const std::vector<int>& v, const char* sep) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? sep : "") << v[i];
  return s.str();
}

/// Rows of Y joined by '/', with '-' for an empty row.
inline std::string diagram_string(const young::NumberedYoungDiagram& y) {
  std::string out;
  const auto rows = y.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += " / ";
    out += rows[i].empty() ? "-" : join(rows[i], " ");
  }
  return out;
}

/// The [B,A] template of a chart: '+' at pivots, '0' below a pivot in its
/// column, '*' elsewhere.
inline std::vector<std::string> pivot_template(const young::Chart& c) {
  std::vector<std::string> rows(c.n, std::string(c.m + c.n, '*'));
  for (int k = 1; k <= c.n; ++k) {
    const int col = c.J(k) - 1;
    rows[k - 1][col] = '+';
    for (int r = k + 1; r <= c.n; ++r) rows[r - 1][col] = '0';
  }
  for (auto& r : rows) r.insert(static_cast<std::size_t>(c.m), "|");
  return rows;
}

/// Default tolerance, overridable through LOSSLESS_TOL.
inline double default_tol(double fallback) {
  const char* env = std::getenv("LOSSLESS_TOL");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) {
    throw io::SchemaError(std::string("LOSSLESS_TOL='") + env +
                          "' is not a positive number");
  }
  return v;
}

inline void write_json(std::ostream& out, const json& j) {
  out << j.dump(2) << '\n';
}

}  // namespace detail

// ---- enumerate

struct EnumerateOptions {
  int m = 0;
  int n = 0;
  bool minimal = false;
  std::string format = "text";
  int cap = kDefaultSizeCap;
};

inline int cmd_enumerate(const EnumerateOptions& o, std::ostream& out,
                         std::ostream& err) {
  if (o.m < 1 || o.n < 1) {
    err << "enumerate: --m and --n must be >= 1\n";
    return kUsage;
  }
  if (static_cast<long long>(o.m) * o.n > o.cap) {
    err << "enumerate: m*n = " << o.m * o.n << " exceeds the size cap "
        << o.cap << " (raise it with --max-size)\n";
    return kUsage;
  }
  const std::vector<young::Chart> charts =
      o.minimal ? young::minimal_atlas(o.m, o.n) : young::enumerate_all(o.m, o.n);

  if (o.format == "json") {
    json list = json::array();
    for (std::size_t i = 0; i < charts.size(); ++i) {
      json c = io::chart_to_json(charts[i]);
      c["index"] = i + 1;
      list.push_back(std::move(c));
    }
    detail::write_json(out, json{{"m", o.m},
                                 {"n", o.n},
                                 {"minimal", o.minimal},
                                 {"count", charts.size()},
                                 {"charts", std::move(list)}});
  } else if (o.format == "csv") {
    out << "index,d,Y,Jtilde,J,u_idx\n";
    for (std::size_t i = 0; i < charts.size(); ++i) {
      const young::Chart& c = charts[i];
      out << i + 1 << ',' << detail::join(c.d.values(), " ") << ','
          << detail::diagram_string(c.diagram) << ','
          << detail::join(c.Jtilde.values(), " ") << ','
          << detail::join(c.J.values(), " ") << ','
          << detail::join(c.u_idx, " ") << '\n';
    }
  } else {
    out << (o.minimal ? "minimal atlas" : "all charts") << " for m=" << o.m
        << ", n=" << o.n << ": " << charts.size() << '\n';
    for (std::size_t i = 0; i < charts.size(); ++i) {
      const young::Chart& c = charts[i];
      out << '\n'
          << "chart " << i + 1 << "  d=(" << detail::join(c.d.values(), ",")
          << ")  Y=[" << detail::diagram_string(c.diagram) << "]\n"
          << "  Jtilde={" << detail::join(c.Jtilde.values(), ",") << "}  J={"
          << detail::join(c.J.values(), ",") << "}  u=(";
      for (std::size_t k = 0; k < c.u_idx.size(); ++k) {
        out << (k ? "," : "") << 'e' << c.u_idx[k];
      }
      out << ")\n";
      for (const std::string& row : detail::pivot_template(c)) {
        out << "  " << row << '\n';
      }
    }
  }
  return kOk;
}

// ---- realize

struct RealizeOptions {
  std::string chart;
  std::string params;
  std::string out;
};

inline json realization_report(const young::Chart& chart,
                               const schur::SchurParams& p,
                               const schur::RealizationMatrix& r) {
  const StateSpace ss = schur::extract_state_space(r);
  const double orth = orthogonality_residual(r.matrix());
  const double rho = spectral_radius(ss.A);
  const bool ba_ok =
      pivot::matrix_has_pivot_structure(r.input_pair(), chart.J, kPivotTol);
  const bool k_ok = pivot::matrix_has_pivot_structure(
      sysid::controllability_matrix(ss.A, ss.B), chart.Jtilde, kPivotTol);
  const bool hess_ok = schur::is_positive_m_upper_hessenberg(
      schur::hessenberg_factor(p), chart.m, kPivotTol);
  const bool pass =
      orth < 1e-10 && rho < 1.0 && ba_ok && k_ok && hess_ok;
  return json{{"orthogonality_residual", orth},
              {"spectral_radius", rho},
              {"stability_margin", 1.0 - rho},
              {"pivot_structure_BA", ba_ok},
              {"pivot_structure_K", k_ok},
              {"hessenberg", hess_ok},
              {"pass", pass}};
}

inline int cmd_realize(const RealizeOptions& o, std::ostream& out,
                       std::ostream& err) {
  const young::Chart chart = io::chart_from_json(detail::read_json_file(o.chart));
  const schur::SchurParams p =
      io::params_from_json(detail::read_json_file(o.params));
  if (p.m != chart.m || p.n != chart.n) {
    err << "realize: params are for m=" << p.m << ", n=" << p.n
        << " but the chart is for m=" << chart.m << ", n=" << chart.n << '\n';
    return kUsage;
  }
  const schur::RealizationMatrix r = schur::build_R(p, chart.u_idx);
  const json report = realization_report(chart, p, r);
  json doc{{"system", io::system_to_json(schur::extract_state_space(r))},
           {"R", io::matrix_to_json(r.matrix())},
           {"validation", report}};
  if (o.out.empty()) {
    detail::write_json(out, doc);
  } else {
    std::ofstream f(o.out);
    if (!f) {
      err << "realize: cannot write '" << o.out << "'\n";
      return kUsage;
    }
    detail::write_json(f, doc);
  }
  if (!report["pass"].get<bool>()) {
    err << "realize: validation failed\n";
    return kValidation;
  }
  return kOk;
}

// ---- canonicalize

struct CanonicalizeOptions {
  std::string system;
  std::string chart;
  std::string atlas;
  std::optional<double> tol;
};

inline int cmd_canonicalize(const CanonicalizeOptions& o, std::ostream& out,
                            std::ostream& err) {
  const double tol = o.tol ? *o.tol : detail::default_tol(sysid::kRankTol);
  StateSpace ss = io::system_from_json(detail::read_json_file(o.system));
  std::optional<young::Chart> single;
  if (!o.chart.empty()) {
    single = io::chart_from_json(detail::read_json_file(o.chart));
    if (single->m != ss.m() || single->n != ss.n()) {
      err << "canonicalize: chart dimensions do not match the system\n";
      return kUsage;
    }
  }

  json doc;
  Matrix t = Matrix::Identity(ss.n(), ss.n());
  if (row_orthonormality_residual(ss.input_pair()) > sysid::kInputNormalTol) {
    const sysid::NormalizedPair np = sysid::input_normalize(ss.A, ss.B, tol);
    t = np.T;
    if (ss.has_output()) {
      ss.C = ss.C * t.triangularView<Eigen::Lower>().solve(
                        Matrix::Identity(ss.n(), ss.n()));
    }
    ss.A = np.A;
    ss.B = np.B;
    doc["input_normalization"] = io::matrix_to_json(t);
  }

  sysid::Canonical canon;
  if (single) {
    canon = sysid::orthogonal_canonicalize(ss.B, ss.A, *single, tol);
    doc["chart"] = io::chart_to_json(*single);
  } else {
    const std::vector<young::Chart> atlas = young::minimal_atlas(ss.m(), ss.n());
    const std::vector<sysid::ChartFit> fits =
        sysid::find_charts(ss.B, ss.A, atlas, tol);
    if (fits.empty()) {
      err << "canonicalize: no chart of the minimal atlas fits\n";
      for (std::size_t i = 0; i < atlas.size(); ++i) {
        err << "  chart " << i + 1 << " d=("
            << detail::join(atlas[i].d.values(), ",") << ") condition "
            << sysid::condition_number(
                   sysid::selected_columns(ss.B, ss.A, atlas[i]))
            << '\n';
      }
      return kNumeric;
    }
    const sysid::ChartFit* best = &fits.front();
    for (const sysid::ChartFit& f : fits) {
      if (f.condition < best->condition) best = &f;
    }
    canon = sysid::orthogonal_canonicalize(ss.B, ss.A, *best->chart, tol);
    doc["chart"] = io::chart_to_json(*best->chart);
    doc["chart_index"] = best->index + 1;
    json feasible = json::array();
    for (const sysid::ChartFit& f : fits) {
      feasible.push_back(json{{"chart_index", f.index + 1},
                              {"condition", f.condition}});
    }
    doc["feasible"] = std::move(feasible);
  }

  StateSpace result{canon.A, canon.B, Matrix(0, ss.n()), Matrix(0, ss.m())};
  if (ss.has_output()) {
    result.C = ss.C * canon.Q.transpose();
    result.D = ss.D;
  }
  doc["condition"] = canon.condition;
  doc["Q"] = io::matrix_to_json(canon.Q);
  doc["system"] = io::system_to_json(result);
  detail::write_json(out, doc);
  return kOk;
}

// ---- check

struct CheckOptions {
  std::string system;
  std::optional<double> tol;
};

inline int cmd_check(const CheckOptions& o, std::ostream& out,
                     std::ostream& /*err*/) {
  const double tol = o.tol ? *o.tol : detail::default_tol(kCheckTol);
  const StateSpace ss = io::system_from_json(detail::read_json_file(o.system));
  const int m = ss.m();
  const int n = ss.n();
  json checks = json::array();
  bool all = true;
  auto add = [&](const std::string& name, bool pass, json detail) {
    all = all && pass;
    checks.push_back(json{{"name", name}, {"pass", pass}, {"detail", detail}});
  };

  const bool square_r = ss.has_output() && ss.p() == m;
  if (square_r) {
    const double res = orthogonality_residual(ss.realization_matrix());
    add("orthogonality", res <= tol, json{{"residual", res}});
  } else {
    const double res = row_orthonormality_residual(ss.input_pair());
    add("input_normal", res <= tol, json{{"residual", res}});
  }

  const double rho = spectral_radius(ss.A);
  const bool stable = sysid::is_stable(ss.A);
  add("stability", stable, json{{"spectral_radius", rho}});

  if (stable) {
    const Matrix id = Matrix::Identity(n, n);
    const double wc = max_abs(sysid::controllability_gramian(ss.A, ss.B).W - id);
    add("controllability_gramian", wc <= tol, json{{"deviation", wc}});
    if (ss.has_output()) {
      const double wo =
          max_abs(sysid::observability_gramian(ss.C, ss.A).W - id);
      add("observability_gramian", wo <= tol, json{{"deviation", wo}});
    }
  } else {
    add("controllability_gramian", false, json{{"skipped", "A is unstable"}});
  }

  // Chart form: some admissible diagram whose direction permutation turns R
  // into a positive m-upper Hessenberg matrix (or, without C and D, whose J
  // is a pivot structure of [B,A]).
  if (static_cast<long long>(m) * n <= kDefaultSizeCap) {
    json found = nullptr;
    for (const young::Chart& c : young::enumerate_all(m, n)) {
      bool hit;
      if (square_r) {
        const Matrix h = ss.realization_matrix() *
                         schur::direction_factor(c.u_idx, m).transpose();
        hit = schur::is_positive_m_upper_hessenberg(h, m, kPivotTol);
      } else {
        hit = pivot::matrix_has_pivot_structure(ss.input_pair(), c.J, kPivotTol);
      }
      if (hit) {
        found = io::chart_to_json(c);
        break;
      }
    }
    add("chart_form", !found.is_null(), json{{"chart", found}});
  } else {
    checks.push_back(json{{"name", "chart_form"},
                          {"pass", nullptr},
                          {"detail", {{"skipped", "m*n exceeds size cap"}}}});
  }

  detail::write_json(out, json{{"checks", std::move(checks)}, {"pass", all}});
  return all ? kOk : kValidation;
}

// ---- random

struct RandomOptions {
  std::string chart;
  std::uint64_t seed = 0;
};

inline int cmd_random(const RandomOptions& o, std::ostream& out,
                      std::ostream& /*err*/) {
  const young::Chart chart = io::chart_from_json(detail::read_json_file(o.chart));
  detail::write_json(
      out, io::params_to_json(random::schur_params(chart.m, chart.n, o.seed)));
  return kOk;
}

// ---- dispatch

inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Atlas, realization and canonical forms for lossless systems",
               "lossless"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 1 validation failure, 2 usage or input error, "
      "3 numerical failure or chart mismatch.\n"
      "LOSSLESS_TOL overrides the default --tol of canonicalize and check.");

  EnumerateOptions eo;
  auto* en = app.add_subcommand("enumerate", "List the charts of the atlas");
  en->add_option("--m", eo.m, "Number of inputs")->required();
  en->add_option("--n", eo.n, "McMillan degree")->required();
  en->add_flag("--minimal", eo.minimal, "One chart per dynamical index vector");
  en->add_option("--format", eo.format,
                 "text, csv (index,d,Y,Jtilde,J,u_idx; lists space separated, "
                 "Y rows separated by '/') or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  en->add_option("--max-size", eo.cap, "Refuse m*n above this")
      ->check(CLI::PositiveNumber);

  RealizeOptions ro;
  auto* re = app.add_subcommand("realize", "Build R from a chart and params");
  re->add_option("--chart", ro.chart, "Chart JSON")->required();
  re->add_option("--params", ro.params, "Params JSON")->required();
  re->add_option("--out", ro.out, "Write to this file instead of stdout");

  CanonicalizeOptions co;
  double co_tol = 0.0;
  auto* ca = app.add_subcommand("canonicalize",
                                "Bring a system into chart form");
  ca->add_option("--system", co.system, "System JSON")->required();
  auto* chart_opt = ca->add_option("--chart", co.chart, "Chart JSON");
  auto* atlas_opt = ca->add_option("--atlas", co.atlas, "Search an atlas")
                        ->check(CLI::IsMember({"minimal"}));
  chart_opt->excludes(atlas_opt);
  auto* co_tol_opt = ca->add_option("--tol", co_tol, "Relative rank threshold")
                         ->check(CLI::PositiveNumber);

  CheckOptions ko;
  double ko_tol = 0.0;
  auto* ch = app.add_subcommand("check", "Run the lossless invariant suite");
  ch->add_option("--system", ko.system, "System JSON")->required();
  auto* ko_tol_opt = ch->add_option("--tol", ko_tol, "Tolerance")
                         ->check(CLI::PositiveNumber);

  RandomOptions rdo;
  auto* rd = app.add_subcommand("random", "Seeded Schur parameters for a chart");
  rd->add_option("--chart", rdo.chart, "Chart JSON")->required();
  rd->add_option("--seed", rdo.seed, "Seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*en) return cmd_enumerate(eo, out, err);
    if (*re) return cmd_realize(ro, out, err);
    if (*ca) {
      if (*co_tol_opt) co.tol = co_tol;
      return cmd_canonicalize(co, out, err);
    }
    if (*ch) {
      if (*ko_tol_opt) ko.tol = ko_tol;
      return cmd_check(ko, out, err);
    }
    if (*rd) return cmd_random(rdo, out, err);
  } catch (const io::SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ChartMismatch& e) {
    err << "chart mismatch: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  std::vector<const char*> argv{"lossless"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lossless::cli
