#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "gpd/euler_difference.hpp"
#include "gpd/gpd_dist.hpp"
#include "gpd/numerics.hpp"
#include "gpd/series_identities.hpp"
#include "gpd/verification.hpp"

namespace gpd::cli {

using nlohmann::json;

json OutputRecord::to_json() const {
  json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["status"] = status;
  if (residuals) j["residuals"] = *residuals;
  return j;
}

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, digits);
  return {buf, res.ptr};
}

json rounded_number(double x, int digits) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(format_number(x, digits).c_str(), nullptr);
}

namespace {

struct Common {
  std::string format = "csv";
  int digits = 10;
  bool json() const { return format == "json"; }
};

using Cell = std::variant<double, std::uint64_t, std::string, bool>;

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_csv(const Cell& cell, int digits) {
  return std::visit(
      [digits](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v, digits);
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return csv_escape(v);
        }
      },
      cell);
}

json render_json(const Cell& cell, int digits) {
  return std::visit(
      [digits](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return rounded_number(v, digits);
        } else {
          return v;
        }
      },
      cell);
}

void emit(std::ostream& out, const Common& common, OutputRecord record, const std::vector<Table>& tables) {
  if (common.json()) {
    for (const Table& t : tables) {
      json rows = json::array();
      for (const auto& row : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.header[i]] = render_json(row[i], common.digits);
        rows.push_back(std::move(obj));
      }
      record.outputs[t.name] = std::move(rows);
    }
    out << record.to_json().dump(2) << '\n';
    return;
  }
  bool first = true;
  for (const Table& t : tables) {
    if (!first) out << '\n';
    first = false;
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << render_csv(row[i], common.digits);
      out << '\n';
    }
  }
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output encoding")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--digits", c.digits, "Significant digits")->check(CLI::Range(1, 17));
}

OutputRecord make_record(const std::string& command) {
  OutputRecord r;
  r.command = command;
  return r;
}

// --- subcommand state -------------------------------------------------------

struct DistArgs {
  double theta = 0.0;
  double lambda = 0.0;
  std::uint64_t n_max = 10;
  std::uint64_t n = 0;
  double u = 0.5;
  std::uint64_t seed = 0;
  std::uint64_t count = 10;
  bool histogram = false;
  double tolerance = 1e-14;
};

struct VerifyArgs {
  std::vector<double> thetas;
  std::vector<double> lambdas;
  double tolerance = 1e-10;
  unsigned k_max = 15;
};

struct EulerArgs {
  std::string a = "0";
  std::string b = "1";
  unsigned p = 0;
  unsigned k = 0;
};

int cmd_pmf(const DistArgs& a, const Common& c, std::ostream& out) {
  const GpdParams params = GpdParams::make(a.theta, a.lambda);
  OutputRecord rec = make_record("pmf");
  rec.inputs = {{"theta", a.theta}, {"lambda", a.lambda}, {"n_max", a.n_max}};
  Table t{"rows", {"n", "pmf", "cdf"}, {}};
  CompensatedAccumulator running;
  double cumulative = 0.0;
  for (std::uint64_t n = 0; n <= a.n_max; ++n) {
    const double p = pmf(params, n).probability;
    running.add(p);
    cumulative = std::max(cumulative, std::min(running.result(), 1.0));
    t.rows.push_back({n, p, cumulative});
  }
  emit(out, c, std::move(rec), {t});
  return kExitOk;
}

int cmd_cdf(const DistArgs& a, const Common& c, std::ostream& out) {
  const GpdParams params = GpdParams::make(a.theta, a.lambda);
  OutputRecord rec = make_record("cdf");
  rec.inputs = {{"theta", a.theta}, {"lambda", a.lambda}, {"n", a.n}};
  emit(out, c, std::move(rec), {Table{"rows", {"n", "cdf"}, {{a.n, cdf(params, a.n)}}}});
  return kExitOk;
}

int cmd_quantile(const DistArgs& a, const Common& c, std::ostream& out) {
  const GpdParams params = GpdParams::make(a.theta, a.lambda);
  OutputRecord rec = make_record("quantile");
  rec.inputs = {{"theta", a.theta}, {"lambda", a.lambda}, {"u", a.u}};
  emit(out, c, std::move(rec), {Table{"rows", {"u", "n"}, {{a.u, quantile(params, a.u)}}}});
  return kExitOk;
}

int cmd_sample(const DistArgs& a, const Common& c, std::ostream& out) {
  const GpdParams params = GpdParams::make(a.theta, a.lambda);
  const auto draws = sample(params, a.seed, a.count);

  // Welford update, fixed order.
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t seen = 0;
  for (std::uint64_t d : draws) {
    ++seen;
    const double x = static_cast<double>(d);
    const double delta = x - mean;
    mean += delta / static_cast<double>(seen);
    m2 += delta * (x - mean);
  }
  const double variance = seen > 1 ? m2 / static_cast<double>(seen - 1) : 0.0;

  OutputRecord rec = make_record("sample");
  rec.inputs = {{"theta", a.theta}, {"lambda", a.lambda}, {"seed", a.seed}, {"count", a.count},
                {"generator", "mt19937_64; u = (x >> 11) * 2^-53"}};
  std::vector<Table> tables;
  if (a.histogram) {
    std::map<std::uint64_t, std::uint64_t> bins;
    for (std::uint64_t d : draws) ++bins[d];
    Table h{"histogram", {"value", "count"}, {}};
    for (const auto& [value, n] : bins) h.rows.push_back({value, n});
    tables.push_back(std::move(h));
  } else {
    Table s{"samples", {"value"}, {}};
    for (std::uint64_t d : draws) s.rows.push_back({d});
    tables.push_back(std::move(s));
  }
  tables.push_back(Table{"summary", {"statistic", "value"}, {{std::string("mean"), mean}, {std::string("variance"), variance}}});
  emit(out, c, std::move(rec), tables);
  return kExitOk;
}

int cmd_s_series(const DistArgs& a, const Common& c, std::ostream& out) {
  const SeriesResult r = s_series(a.theta, a.lambda, a.tolerance);
  const double closed = s_closed_form(a.lambda);
  OutputRecord rec = make_record("s-series");
  rec.inputs = {{"theta", a.theta}, {"lambda", a.lambda}, {"tolerance", a.tolerance}};
  rec.residuals = json{{"closed_form", rounded_number(std::abs(r.value - closed), c.digits)}};
  emit(out, c, std::move(rec),
       {Table{"rows",
              {"value", "closed_form", "residual", "terms_used", "tail_bound", "converged"},
              {{r.value, closed, std::abs(r.value - closed), r.terms_used, r.tail_bound, r.converged}}}});
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& out) {
  VerifyOptions opts;
  if (!a.thetas.empty()) opts.grid.thetas = a.thetas;
  if (!a.lambdas.empty()) opts.grid.lambdas = a.lambdas;
  opts.tolerance = a.tolerance;
  opts.k_max = a.k_max;
  const auto reports = run_verification(opts);
  const bool ok = all_passed(reports);

  OutputRecord rec = make_record("verify");
  rec.inputs = {{"thetas", opts.grid.thetas}, {"lambdas", opts.grid.lambdas}, {"tolerance", opts.tolerance},
                {"k_max", opts.k_max}};
  rec.status = ok ? "ok" : "error";
  rec.outputs["all_passed"] = ok;
  json residuals = json::object();
  Table t{"checks", {"identity", "case", "residual", "tolerance", "passed", "detail"}, {}};
  for (const auto& r : reports) {
    t.rows.push_back({r.identity, r.case_label, r.residual, r.tolerance, r.passed, r.detail});
    residuals[r.identity + "/" + r.case_label] = rounded_number(r.residual, c.digits);
  }
  rec.residuals = std::move(residuals);
  emit(out, c, std::move(rec), {t});
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_euler_diff(const EulerArgs& a, const Common& c, std::ostream& out) {
  const Rational ra = parse_rational(a.a);
  const Rational rb = parse_rational(a.b);
  const ExactValue exact = difference_exact(DifferenceQuery::make(ra, rb, a.p, a.k));
  const double approx = difference_float(static_cast<double>(ra), static_cast<double>(rb), a.p, a.k);

  std::string predicted = "n/a";
  if (a.p < a.k) {
    predicted = "0";
  } else if (a.p == a.k) {
    Rational lead{1};
    for (unsigned i = 1; i <= a.k; ++i) lead *= rb * i;
    predicted = lead.str();
  }
  OutputRecord rec = make_record("euler-diff");
  rec.inputs = {{"a", ra.str()}, {"b", rb.str()}, {"p", a.p}, {"k", a.k}};
  emit(out, c, std::move(rec),
       {Table{"rows", {"exact", "float", "predicted"}, {{exact.to_string(), approx, predicted}}}});
  return kExitOk;
}

int cmd_lambda0(double tolerance, const Common& c, std::ostream& out) {
  const Lambda0 r = lambda0(tolerance);
  OutputRecord rec = make_record("lambda0");
  rec.inputs = {{"tolerance", tolerance}};
  rec.residuals = json{{"defining_equation", rounded_number(std::abs(r.residual), c.digits)}};
  emit(out, c, std::move(rec), {Table{"rows", {"lambda0", "residual"}, {{r.value, std::abs(r.residual)}}}});
  return kExitOk;
}

int cmd_classify(double lambda, const Common& c, std::ostream& out) {
  OutputRecord rec = make_record("classify");
  rec.inputs = {{"lambda", lambda}};
  emit(out, c, std::move(rec),
       {Table{"rows",
              {"lambda", "class", "root_test_value", "lambda0"},
              {{lambda, std::string(to_string(classify_convergence(lambda))), root_test_value(lambda), lambda0_value()}}}});
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Poisson distribution evaluation and identity verification", "gpd"};
  app.require_subcommand(1);

  Common common;
  DistArgs dist;
  VerifyArgs verify;
  EulerArgs euler;
  double lambda0_tolerance = 1e-15;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--theta", dist.theta, "theta > 0")->required();
    sub->add_option("--lambda", dist.lambda, "0 <= lambda < 1")->required();
  };

  auto* pmf_cmd = app.add_subcommand("pmf", "Table of pmf and running cdf for n = 0..n-max");
  add_params(pmf_cmd);
  pmf_cmd->add_option("--n-max", dist.n_max, "Last n to print");
  add_common(pmf_cmd, common);

  auto* cdf_cmd = app.add_subcommand("cdf", "Cumulative probability up to n");
  add_params(cdf_cmd);
  cdf_cmd->add_option("--n", dist.n)->required();
  add_common(cdf_cmd, common);

  auto* quantile_cmd = app.add_subcommand("quantile", "Smallest n with cdf(n) >= u");
  add_params(quantile_cmd);
  quantile_cmd->add_option("--u", dist.u, "0 <= u < 1")->required();
  add_common(quantile_cmd, common);

  auto* sample_cmd = app.add_subcommand("sample", "Inversion sampling with a seeded mt19937_64");
  add_params(sample_cmd);
  sample_cmd->add_option("--seed", dist.seed, "64-bit unsigned seed");
  sample_cmd->add_option("--count", dist.count, "Number of draws")->check(CLI::PositiveNumber);
  sample_cmd->add_flag("--histogram", dist.histogram, "Print value counts instead of draws");
  add_common(sample_cmd, common);

  auto* series_cmd = app.add_subcommand("s-series", "Direct sum of S(theta, lambda) against 1/(1 - lambda)");
  series_cmd->add_option("--theta", dist.theta)->required();
  series_cmd->add_option("--lambda", dist.lambda, "-lambda0 < lambda < 1")->required();
  series_cmd->add_option("--tolerance", dist.tolerance, "Tail bound target");
  add_common(series_cmd, common);

  auto* verify_cmd = app.add_subcommand("verify", "Rerun every identity over a grid");
  verify_cmd->add_option("--theta", verify.thetas, "Grid theta values (default 0.1 0.5 1 2 5 10)");
  verify_cmd->add_option("--lambda", verify.lambdas, "Grid lambda values (default -0.25 -0.1 0 0.1 ... 0.9)");
  verify_cmd->add_option("--tolerance", verify.tolerance, "Residual tolerance");
  verify_cmd->add_option("--k-max", verify.k_max, "Columns for the rearranged double sum");
  add_common(verify_cmd, common);

  auto* euler_cmd = app.add_subcommand("euler-diff", "k-th difference of (a + b n)^p in exact arithmetic");
  euler_cmd->add_option("--a", euler.a, "Rational, e.g. -1/2");
  euler_cmd->add_option("--b", euler.b, "Rational");
  euler_cmd->add_option("--p", euler.p, "Power")->required();
  euler_cmd->add_option("--k", euler.k, "Difference order")->required();
  add_common(euler_cmd, common);

  auto* lambda0_cmd = app.add_subcommand("lambda0", "Root of lambda e^lambda = e^-1");
  lambda0_cmd->add_option("--tolerance", lambda0_tolerance, "Residual tolerance (>= 1e-15)");
  add_common(lambda0_cmd, common);

  double classify_lambda = 0.0;
  auto* classify_cmd = app.add_subcommand("classify", "Convergence class of S at lambda");
  classify_cmd->add_option("--lambda", classify_lambda)->required();
  add_common(classify_cmd, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (*pmf_cmd) return cmd_pmf(dist, common, out);
    if (*cdf_cmd) return cmd_cdf(dist, common, out);
    if (*quantile_cmd) return cmd_quantile(dist, common, out);
    if (*sample_cmd) return cmd_sample(dist, common, out);
    if (*series_cmd) return cmd_s_series(dist, common, out);
    if (*verify_cmd) return cmd_verify(verify, common, out);
    if (*euler_cmd) return cmd_euler_diff(euler, common, out);
    if (*lambda0_cmd) return cmd_lambda0(lambda0_tolerance, common, out);
    if (*classify_cmd) return cmd_classify(classify_lambda, common, out);
  } catch (const std::exception& e) {
    if (common.json()) {
      OutputRecord rec = make_record(command);
      rec.status = "error";
      rec.outputs["error"] = e.what();
      out << rec.to_json().dump(2) << '\n';
    }
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace gpd::cli
