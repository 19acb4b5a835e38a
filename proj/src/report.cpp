#include "zetalab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "zetalab/context.hpp"
#include "zetalab/dirichlet.hpp"
#include "zetalab/error.hpp"

namespace zetalab::report {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

class Doc {
 public:
  explicit Doc(std::string command) : command_(std::move(command)), start_(Clock::now()) {}

  json finish(const json& config, json constants, json rows) const {
    json doc;
    doc["schema"] = kSchemaVersion;
    doc["command"] = command_;
    doc["config"] = config;
    doc["constants"] = std::move(constants);
    doc["rows"] = std::move(rows);
    doc["timing"] = {{"seconds", std::chrono::duration<double>(Clock::now() - start_).count()}};
    return doc;
  }

 private:
  std::string command_;
  Clock::time_point start_;
};

void need_points(const std::vector<double>& Ts, const char* what) {
  if (Ts.empty()) fail(Errc::InvalidArgument, std::string(what) + " needs at least one T");
  for (double T : Ts) {
    if (!std::isfinite(T)) fail(Errc::InvalidArgument, "non-finite T");
  }
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_number() || v.is_boolean()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void flatten(const std::string& prefix, const json& v, std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items()) flatten(prefix.empty() ? k : prefix + "." + k, sub, out);
  } else {
    out.emplace_back(prefix, csv_cell(v));
  }
}

fs::path resolve_cache_file(const Context& ctx, const std::string& file) {
  fs::path p(file);
  if (p.is_relative() && !ctx.config().cache_dir.empty() && !fs::exists(p)) p = ctx.config().cache_dir / p;
  return p;
}

}  // namespace

void validate_document(const json& doc) {
  auto bad = [](const std::string& what) { fail(Errc::InvalidArgument, "schema: " + what); };
  if (!doc.is_object()) bad("document is not an object");
  if (!doc.contains("schema") || !doc["schema"].is_number_integer()) bad("missing integer 'schema'");
  if (doc["schema"].get<int>() != kSchemaVersion) bad("unsupported schema version");
  if (!doc.contains("command") || !doc["command"].is_string()) bad("missing 'command'");
  if (!doc.contains("config") || !doc["config"].is_object()) bad("missing 'config' snapshot");
  if (!doc.contains("constants") || !doc["constants"].is_object()) bad("missing 'constants' block");
  if (!doc.contains("rows") || !doc["rows"].is_array()) bad("missing 'rows'");
  for (const auto& row : doc["rows"]) {
    if (!row.is_object()) bad("row is not an object");
  }
}

std::string to_csv(const json& doc) {
  validate_document(doc);
  std::ostringstream os;
  os << "# schema=" << doc["schema"].get<int>() << "\n# command=" << doc["command"].get<std::string>() << "\n";
  std::vector<std::pair<std::string, std::string>> consts;
  flatten("", doc["constants"], consts);
  for (const auto& [k, v] : consts) os << "# " << k << "=" << v << "\n";
  if (doc.contains("verdict")) os << "# verdict=" << csv_cell(doc["verdict"]) << "\n";
  std::vector<std::string> header;
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  for (const auto& row : doc["rows"]) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten("", row, cells);
    for (const auto& [k, v] : cells) {
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
    }
    rows.push_back(std::move(cells));
  }
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& cells : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) os << ",";
      for (const auto& [k, v] : cells) {
        if (k == header[i]) {
          os << v;
          break;
        }
      }
    }
    os << "\n";
  }
  return os.str();
}

json to_json(const sone::ArgTrace& t) {
  return {{"t", t.t},
          {"arg", t.arg_value},
          {"S", t.arg_value / zeta::kPi},
          {"path_steps", t.path_steps},
          {"max_step_turn", t.max_step_turn},
          {"offset", t.offset}};
}

json to_json(const sone::SelbergConstant& c) {
  return {{"l", c.l}, {"estimate", c.estimate}, {"T_used", c.T_used}, {"uncertainty", c.uncertainty}};
}

json to_json(const ladders::LadderSequence& s) {
  return {{"base_T", s.base_T},
          {"c", s.constants.c},
          {"iterates", s.iterates},
          {"segment_integrals", s.segment_integrals},
          {"residuals", s.residuals},
          {"secant_iterates", s.secant_iterates}};
}

json to_json(const ladders::PartitionReport& p) {
  return {{"equidistance", p.equidistance},
          {"segment_ratios", p.segment_ratios},
          {"step_law", p.step_law},
          {"sum_excess", p.sum_excess}};
}

json to_json(const functionals::ResolvedSpec& r) {
  const auto& s = r.spec;
  json j = {{"kind", functionals::kind_name(s.kind)}};
  if (functionals::uses_sigma(s.kind) || s.kind == functionals::Kind::Dirichlet) j["sigma"] = s.sigma;
  if (functionals::uses_selberg(s.kind)) {
    j["l"] = s.l;
    j["s1_exponent"] = 2 * r.s1_exponent_l;
  }
  if (functionals::is_ladder(s.kind)) j["k"] = s.k;
  if (s.kind == functionals::Kind::Dirichlet) j["series"] = s.series;
  return j;
}

namespace {

json constants_of(const functionals::ResolvedSpec& r) {
  json c = {{"c", r.c}, {"one_minus_c", 1.0 - r.c}};
  if (r.zeta_2sigma > 0.0) c["zeta_2sigma"] = r.zeta_2sigma;
  if (r.selberg.estimate > 0.0) c["selberg"] = to_json(r.selberg);
  if (r.F > 0.0) c["F"] = r.F;
  return c;
}

json evaluation_row(const functionals::Evaluation& e, double x) {
  json row = {{"tau", e.tau}, {"lower", e.lower}, {"upper", e.upper}, {"value", e.value},
              {"delta", std::fabs(e.value - x)}};
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    row["term" + std::to_string(i + 1)] = e.terms[i].weight * e.terms[i].integral / e.tau;
  }
  return row;
}

}  // namespace

json to_json(const functionals::Evaluation& e) {
  json terms = json::array();
  for (const auto& t : e.terms) {
    terms.push_back({{"name", t.name}, {"weight", t.weight}, {"integral", t.integral},
                     {"contribution", t.weight * t.integral / e.tau}});
  }
  json j = {{"tau", e.tau}, {"lower", e.lower}, {"upper", e.upper}, {"value", e.value}, {"terms", terms}};
  if (!e.iterates.empty()) j["iterates"] = e.iterates;
  return j;
}

json to_json(const functionals::ConvergenceReport& r) {
  json evals = json::array();
  for (const auto& e : r.evaluations) evals.push_back(to_json(e));
  return {{"spec", to_json(r.spec)},
          {"x_target", r.x_target},
          {"schedule", r.schedule},
          {"values", r.values},
          {"deltas", r.deltas},
          {"verdict", functionals::verdict_name(r.verdict)},
          {"evaluations", evals}};
}

json to_json(const fermat::FermatRational& q) {
  return {{"x", q.x.get_str()}, {"y", q.y.get_str()}, {"z", q.z.get_str()}, {"n", q.n}};
}

json to_json(const functionals::FermatReport& r) {
  json j = {{"q", to_json(r.q)},
            {"exact_value", fermat::to_string(r.exact_value)},
            {"exact_gap", fermat::to_string(r.exact_gap)},
            {"exact_gap_decimal", r.exact_gap.get_d()},
            {"equals_one", r.equals_one},
            {"scan", to_json(r.scan)},
            {"distance_from_one", r.distance_from_one},
            {"note", r.note}};
  if (r.pair) j["pair"] = to_json(*r.pair);
  return j;
}

json zeta_mean(Context& ctx, double sigma, const std::vector<double>& Ts) {
  Doc doc("zeta-mean");
  need_points(Ts, "zeta-mean");
  const double z2 = ctx.zeta_2sigma(sigma);
  json rows = json::array();
  for (double T : Ts) {
    if (!(T > 1.0)) fail(Errc::Domain, "zeta-mean needs T > 1");
    const double integral = ctx.zeta_cache(sigma).prefix(T, ctx.config().tol);
    const double mean = integral / T;
    rows.push_back({{"T", T}, {"sigma", sigma}, {"integral", integral}, {"mean", mean}, {"zeta_2sigma", z2},
                    {"rel_error", std::fabs(mean - z2) / z2}});
  }
  return doc.finish(ctx.config().to_json(), {{"zeta_2sigma", z2}, {"epsilon", ctx.config().epsilon}}, rows);
}

json s1_mean(Context& ctx, int l, const std::vector<double>& Ts) {
  Doc doc("s1-mean");
  need_points(Ts, "s1-mean");
  json rows = json::array();
  for (double T : Ts) {
    const sone::SelbergConstant c = sone::selberg_constant(ctx, l, T, ctx.config().tol);
    rows.push_back({{"T", T}, {"l", l}, {"moment", c.estimate * T}, {"mean", c.estimate},
                    {"uncertainty", c.uncertainty}, {"zeros", ctx.zeros().count(T)}});
  }
  return doc.finish(ctx.config().to_json(), json::object(), rows);
}

json ladder(Context& ctx, double T, int k) {
  Doc doc("ladder");
  const auto seq = ladders::reverse_iterates(ctx, T, k, ctx.config().tol);
  json rows = json::array();
  double prev = T;
  for (std::size_t r = 0; r < seq.iterates.size(); ++r) {
    const double Y = seq.iterates[r];
    const double pred = ladders::predictor(Y, seq.constants);
    rows.push_back({{"r", r + 1}, {"T_r", Y}, {"step", Y - prev}, {"predictor", pred},
                    {"step_ratio", (Y - prev) / pred}, {"segment_integral", seq.segment_integrals[r]},
                    {"residual", seq.residuals[r]}, {"secant_T_r", seq.secant_iterates[r]}});
    prev = Y;
  }
  json out = doc.finish(ctx.config().to_json(), {{"c", seq.constants.c}, {"one_minus_c", seq.constants.one_minus_c}},
                        rows);
  out["sequence"] = to_json(seq);
  if (k >= 2) out["partition"] = to_json(ladders::check_partition(seq));
  return out;
}

json coupling(Context& ctx, ladders::CouplingKind kind, double sigma, int l, double T) {
  Doc doc("coupling");
  const auto c = ladders::coupling_check(ctx, kind, sigma, l, T, ctx.config().tol);
  json constants = {{"c", ctx.config().euler_c}};
  if (kind == ladders::CouplingKind::Zeta) {
    constants["zeta_2sigma"] = c.constant;
  } else {
    constants["selberg"] = to_json(ctx.selberg(l));
  }
  json rows = json::array({{{"T", T}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ratio", c.ratio}, {"A", c.A}, {"Y", c.Y}}});
  return doc.finish(ctx.config().to_json(), constants, rows);
}

json functional(Context& ctx, const functionals::FunctionalSpec& spec, double x,
                const std::vector<double>& schedule) {
  Doc doc("functional");
  const auto r = functionals::resolve(ctx, spec);
  const auto rep = functionals::convergence_scan(ctx, r, x, schedule, ctx.config().tol);
  json rows = json::array();
  for (const auto& e : rep.evaluations) rows.push_back(evaluation_row(e, x));
  json out = doc.finish(ctx.config().to_json(), constants_of(r), rows);
  out["report"] = to_json(rep);
  out["verdict"] = functionals::verdict_name(rep.verdict);
  return out;
}

json fermat_scan(Context& ctx, long h_max, int n_min, int n_max,
                 const std::optional<functionals::FunctionalSpec>& spec, const std::vector<double>& schedule) {
  Doc doc("fermat-scan");
  const auto g = fermat::min_gap(h_max, n_min, n_max);
  json rows = json::array({{{"h_max", h_max}, {"n_min", n_min}, {"n_max", n_max}, {"scanned", g.scanned},
                            {"equal_one", g.equal_one}, {"min_gap", fermat::to_string(g.gap)},
                            {"min_gap_decimal", g.gap.get_d()}, {"witness", g.witness.to_string()},
                            {"witness_value", fermat::to_string(fermat::value(g.witness))}}});
  json constants = json::object();
  json condition;
  if (spec) {
    const auto rep = functionals::fermat_condition(ctx, *spec, g.witness, schedule, ctx.config().tol);
    constants = constants_of(rep.scan.spec);
    condition = to_json(rep);
  }
  json out = doc.finish(ctx.config().to_json(), constants, rows);
  out["witness"] = to_json(g.witness);
  if (spec) out["condition"] = condition;
  return out;
}

json dirichlet_mean(Context& ctx, const std::string& series, double sigma0, const std::vector<double>& Ts) {
  Doc doc("dirichlet-mean");
  need_points(Ts, "dirichlet-mean");
  const auto f = dirichlet::resolve(series);
  const double margin = ctx.config().dirichlet_margin;
  const double F = dirichlet::F_constant(f, sigma0, 1e-14, margin);
  json rows = json::array();
  for (double T : Ts) {
    const double mean = dirichlet::mean_value_estimate(ctx, series, sigma0, T, ctx.config().tol);
    rows.push_back({{"T", T}, {"series", series}, {"sigma0", sigma0}, {"mean", mean}, {"F", F},
                    {"rel_error", std::fabs(mean - F) / F}});
  }
  json constants = {{"F", F}, {"margin", margin}, {"bound", dirichlet::bound_model_name(f.bound())}};
  if (std::isfinite(f.sigma_a())) constants["sigma_a"] = f.sigma_a();
  return doc.finish(ctx.config().to_json(), constants, rows);
}

json cache_list(const std::string& dir) {
  Doc doc("cache-list");
  json rows = json::array();
  std::vector<fs::path> files;
  if (!dir.empty() && fs::is_directory(dir)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".zlc") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    json row = {{"file", p.filename().string()}, {"bytes", fs::file_size(p)}};
    try {
      const auto f = quad::read_cache_file(p);
      row["kind"] = quad::cache_kind_name(f.key.kind);
      row["description"] = f.key.describe();
      row["records"] = f.records.size();
      row["T_max"] = f.records.empty() ? f.key.lower_limit() : f.records.back().T;
      row["value_max"] = f.records.empty() ? 0.0 : f.records.back().value;
      row["status"] = "ok";
    } catch (const Error& e) {
      row["status"] = e.what();
    }
    rows.push_back(row);
  }
  return doc.finish({{"cache_dir", dir}}, json::object(), rows);
}

json cache_verify(Context& ctx, const std::string& file, unsigned seed) {
  Doc doc("cache-verify");
  const fs::path p = resolve_cache_file(ctx, file);
  const auto f = quad::read_cache_file(p);
  const double tol = ctx.config().tol;
  json row = {{"file", p.filename().string()}, {"records", f.records.size()}, {"seed", seed}};
  if (f.records.empty()) {
    row["status"] = "empty";
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, f.records.size() - 1);
    const std::size_t i = pick(rng);
    const double a = i == 0 ? f.key.lower_limit() : f.records[i - 1].T;
    const double va = i == 0 ? 0.0 : f.records[i - 1].value;
    const double b = f.records[i].T;
    const double stored = f.records[i].value - va;
    auto integrand = ctx.make_integrand(f.key);
    const double fresh = quad::integrate(*integrand, a, b, tol, ctx.quad_options()).value;
    const double diff = std::fabs(fresh - stored);
    row.update({{"a", a}, {"b", b}, {"stored", stored}, {"recomputed", fresh}, {"difference", diff},
                {"limit", 2.0 * tol}, {"status", diff <= 2.0 * tol ? "pass" : "fail"}});
  }
  return doc.finish(ctx.config().to_json(), {{"tol", tol}}, json::array({row}));
}

json cache_drop(const std::string& dir, const std::string& file) {
  Doc doc("cache-drop");
  if (file.empty() || file.find('/') != std::string::npos) {
    fail(Errc::InvalidArgument, "cache drop takes a bare file name or '*'");
  }
  json rows = json::array();
  std::vector<fs::path> victims;
  if (file == "*") {
    if (fs::is_directory(dir)) {
      for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".zlc") victims.push_back(entry.path());
      }
    }
  } else {
    victims.push_back(fs::path(dir) / file);
  }
  std::sort(victims.begin(), victims.end());
  for (const auto& p : victims) {
    if (p.extension() != ".zlc") fail(Errc::InvalidArgument, "refusing to drop a non-cache file");
    if (!fs::exists(p)) fail(Errc::Io, "no such cache file " + p.string());
    fs::remove(p);
    fs::remove(p.string() + ".lock");
    rows.push_back({{"file", p.filename().string()}, {"status", "dropped"}});
  }
  return doc.finish({{"cache_dir", dir}}, json::object(), rows);
}

}  // namespace zetalab::report
