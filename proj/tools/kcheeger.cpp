// kcheeger: command-line front end. Every subcommand prints one JSON report on stdout.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kcheeger/kcheeger.hpp"

using json = nlohmann::ordered_json;
using namespace kcheeger;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kParameter = 2, kCapacity = 3, kNumerical = 4 };

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("input", "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("out", "cannot open '" + path + "' for writing");
  out << text;
}

std::string flag_name(std::string parameter) {
  if (parameter == "components") return "--component";
  if (parameter == "input" || parameter == "table" || parameter == "spectrum") return parameter;
  for (char& c : parameter)
    if (c == '_') c = '-';
  return "--" + parameter;
}

class Stopwatch {
public:
  double lap() {
    auto now = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

json graph_summary(const Graph& g) {
  return {{"n", g.num_vertices()},
          {"edges", g.num_edges()},
          {"volume", g.volume()},
          {"max_degree", g.max_degree()},
          {"components", num_components(g)}};
}

json partition_json(const Partition& p) {
  return {{"labels", std::vector<std::uint32_t>(p.labels().begin(), p.labels().end())}, {"parts", p.parts()}};
}

json quality_json(const PartitionQuality& q) {
  json pairs = json::array();
  for (const auto& pr : q.pair_ratios)
    pairs.push_back({{"i", pr.i}, {"j", pr.j}, {"edges", pr.edges}, {"min_volume", pr.min_volume}, {"ratio", pr.ratio}});
  return {{"h_avg", q.h_avg},
          {"h_worst", q.h_worst},
          {"part_volumes", q.part_volumes},
          {"part_ratios", q.part_ratios},
          {"pair_ratios", pairs}};
}

json rational_json(const Rational& r) {
  return {{"value", to_string(r)}, {"approx", to_double(r)}};
}

template <typename T>
json optional_json(const std::optional<T>& x) {
  return x ? json(*x) : json(nullptr);
}

/// Assembles the report; the tty table on stderr is a flat view of selected payload fields.
struct Report {
  json doc;
  std::vector<std::pair<std::string, std::string>> table;

  Report(std::string subcommand, json config, std::optional<std::uint64_t> seed) {
    doc["report_version"] = 1;
    doc["command"] = {{"subcommand", std::move(subcommand)},
                      {"config", std::move(config)},
                      {"seed", optional_json(seed)},
                      {"version", kVersion}};
  }

  void row(std::string key, const json& value) {
    table.emplace_back(std::move(key), value.is_string() ? value.get<std::string>() : value.dump());
  }

  void emit(const json& timing) {
    doc["timing_ms"] = timing;
    std::cout << doc.dump(2) << '\n';
    if (isatty(STDERR_FILENO)) {
      std::size_t width = 0;
      for (const auto& [k, v] : table) width = std::max(width, k.size());
      for (const auto& [k, v] : table) std::cerr << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    }
  }
};

// ---------------------------------------------------------------------------------------------
// Subcommand options

struct GenOptions {
  std::string kind;
  std::optional<std::size_t> n, k, rows, cols;
  std::optional<double> p, p_in, p_out;
  std::vector<std::string> components;
  std::uint64_t seed = 0;
  std::string out = "-";
};

struct GraphInput {
  std::string input = "-";
  std::string basis_file;
};

struct SpectrumOptions : GraphInput {
  std::optional<std::size_t> k;
};

struct BoundsOptions : GraphInput {
  std::size_t k = 2;
};

struct ExactOptions {
  std::string input = "-";
  std::optional<std::size_t> k;
  bool classical = false;
  std::string objective = "avg";
};

struct RoundOptions : GraphInput {
  std::size_t k = 2;
  std::optional<double> delta;
  std::optional<std::string> variant;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t expectation_trials = 0;
  std::vector<double> epsilon;
  std::uint64_t concentration_trials = 10000;
};

struct VerifyCliOptions {
  std::optional<std::string> input;
  std::optional<std::size_t> corpus;
  std::string k_range = "2..4";
  std::string lambda_reading = "proof";
};

Spectrum load_spectrum(const GraphInput& in, const NormalizedLaplacian& lap) {
  if (in.basis_file.empty()) return eigendecompose(lap);
  return spectrum_from_basis(lap, read_basis(read_text(in.basis_file)));
}

json graph_input_config(const GraphInput& in) {
  return {{"input", in.input}, {"basis_file", in.basis_file.empty() ? json(nullptr) : json(in.basis_file)}};
}

// ---------------------------------------------------------------------------------------------

int run_gen(const GenOptions& o) {
  Stopwatch clock;
  GeneratorParams params;
  params.n = o.n;
  params.k = o.k;
  params.p = o.p;
  params.p_in = o.p_in;
  params.p_out = o.p_out;
  params.rows = o.rows;
  params.cols = o.cols;
  params.components = o.components;
  auto kind = parse_graph_kind(o.kind);
  auto g = generate(kind, params, o.seed);
  write_text(o.out, write_edge_list(g));
  if (o.out == "-") return kOk;

  json config = {{"kind", to_string(kind)},
                 {"n", optional_json(o.n)},
                 {"k", optional_json(o.k)},
                 {"p", optional_json(o.p)},
                 {"p_in", optional_json(o.p_in)},
                 {"p_out", optional_json(o.p_out)},
                 {"rows", optional_json(o.rows)},
                 {"cols", optional_json(o.cols)},
                 {"components", o.components},
                 {"out", o.out}};
  Report report("gen", config, o.seed);
  report.doc["graph"] = graph_summary(g);
  report.doc["result"] = {{"path", o.out}};
  report.row("kind", std::string(to_string(kind)));
  report.row("n", g.num_vertices());
  report.row("edges", g.num_edges());
  report.emit({{"total", clock.lap()}});
  return kOk;
}

int run_spectrum(const SpectrumOptions& o) {
  Stopwatch clock;
  json timing;
  auto g = read_edge_list(read_text(o.input));
  auto lap = build_laplacian(g);
  timing["read"] = clock.lap();
  auto spec = load_spectrum(o, lap);
  timing["eigensolve"] = clock.lap();

  std::size_t count = o.k.value_or(spec.num_pairs());
  if (count < 1 || count > spec.num_pairs())
    throw ParameterError("k", "need 1 <= k <= " + std::to_string(spec.num_pairs()));
  json values = json::array(), residuals = json::array(), vectors = json::array();
  for (std::size_t i = 0; i < count; ++i) {
    auto v = spec.eigenvector(i);
    std::vector<double> vv(v.begin(), v.end());
    auto lv = lap.entries.multiply(vv);
    for (std::size_t u = 0; u < vv.size(); ++u) lv[u] -= spec.eigenvalue(i) * vv[u];
    values.push_back(spec.eigenvalue(i));
    residuals.push_back(norm2(lv));
    vectors.push_back(vv);
  }
  json config = graph_input_config(o);
  config["k"] = optional_json(o.k);
  Report report("spectrum", config, std::nullopt);
  report.doc["graph"] = graph_summary(g);
  report.doc["result"] = {{"eigenvalues", values},
                          {"residual_norms", residuals},
                          {"orthonormality_error", orthonormality_error(spec)},
                          {"zero_eigenvalues", num_zero_eigenvalues(spec)},
                          {"complete", spec.complete()},
                          {"sweeps", spec.sweeps()},
                          {"eigenvectors", vectors}};
  report.row("eigenvalues", values);
  report.row("zero_eigenvalues", num_zero_eigenvalues(spec));
  timing["report"] = clock.lap();
  report.emit(timing);
  return kOk;
}

int run_bounds(const BoundsOptions& o) {
  Stopwatch clock;
  json timing;
  auto g = read_edge_list(read_text(o.input));
  auto lap = build_laplacian(g);
  timing["read"] = clock.lap();
  auto spec = load_spectrum(o, lap);
  timing["eigensolve"] = clock.lap();
  auto b = bounds_report(spec, g, o.k);

  json flags = json::array();
  if (b.multi_component) flags.push_back("multi-component");
  if (!b.main_hypothesis_holds) flags.push_back("lambda-above-one");
  if (b.asymptotic_only) flags.push_back("asymptotic-only");
  if (!o.basis_file.empty()) flags.push_back("injected-basis");

  json config = graph_input_config(o);
  config["k"] = o.k;
  Report report("bounds", config, std::nullopt);
  report.doc["graph"] = graph_summary(g);
  report.doc["result"] = {{"k", b.k},
                          {"eigenvalues", b.eigenvalues},
                          {"harmonic_norms", b.harmonic_norms},
                          {"lambda_lower", b.lambda_lower},
                          {"lambda_upper", b.lambda_upper},
                          {"alpha_max", b.alpha_max},
                          {"alpha_sum", b.alpha_sum},
                          {"lower_bound", b.lower_bound},
                          {"lower_bound_statement_reading", b.lower_bound_statement_reading},
                          {"upper_bound_main", optional_json(b.upper_bound_main)},
                          {"upper_bound_nonpos", optional_json(b.upper_bound_nonpos)},
                          {"main_hypothesis_holds", b.main_hypothesis_holds},
                          {"multi_component", b.multi_component},
                          {"asymptotic_only", b.asymptotic_only},
                          {"flags", flags}};
  report.row("lower_bound", b.lower_bound);
  report.row("upper_bound_main", optional_json(b.upper_bound_main));
  report.row("upper_bound_nonpos", optional_json(b.upper_bound_nonpos));
  report.row("flags", flags);
  timing["report"] = clock.lap();
  report.emit(timing);
  return kOk;
}

int run_exact(const ExactOptions& o) {
  Stopwatch clock;
  json timing;
  auto g = read_edge_list(read_text(o.input));
  timing["read"] = clock.lap();
  if (o.classical == o.k.has_value()) throw ParameterError("k", "give exactly one of --k and --classical");
  if (o.objective != "avg" && o.objective != "worst")
    throw ParameterError("objective", "expected 'avg' or 'worst', got '" + o.objective + "'");

  json result;
  if (o.classical) {
    auto r = exact_classical_cheeger(g);
    auto members = r.argmin.members();
    result = {{"quantity", "classical"},
              {"optimum", rational_json(r.optimum)},
              {"witness", std::vector<Vertex>(members.begin(), members.end())},
              {"enumerated", r.enumerated}};
  } else {
    auto r = o.objective == "avg" ? exact_h_k(g, *o.k) : exact_h_k_worst(g, *o.k);
    result = {{"quantity", o.objective == "avg" ? "h_avg" : "h_worst"},
              {"k", *o.k},
              {"optimum", rational_json(r.optimum)},
              {"witness", partition_json(r.argmin)},
              {"enumerated", r.enumerated}};
  }
  timing["enumerate"] = clock.lap();
  json config = {{"input", o.input}, {"k", optional_json(o.k)}, {"classical", o.classical}, {"objective", o.objective}};
  Report report("exact", config, std::nullopt);
  report.doc["graph"] = graph_summary(g);
  report.doc["result"] = result;
  report.row("optimum", result["optimum"]["value"]);
  report.row("enumerated", result["enumerated"]);
  report.emit(timing);
  return kOk;
}

int run_round(const RoundOptions& o) {
  Stopwatch clock;
  json timing;
  auto g = read_edge_list(read_text(o.input));
  auto lap = build_laplacian(g);
  timing["read"] = clock.lap();
  auto spec = load_spectrum(o, lap);
  timing["eigensolve"] = clock.lap();

  if (o.k < 2 || o.k > g.num_vertices()) throw ParameterError("k", "need 2 <= k <= n");
  if (o.k > spec.num_pairs()) throw ParameterError("k", "basis carries fewer than k vectors");
  RoundingConfig cfg = default_rounding_config(spec, g, o.k);
  if (o.delta) cfg.delta = *o.delta;
  if (o.variant) cfg.variant = parse_variant(*o.variant);
  cfg.trials = o.trials;
  cfg.seed = o.seed;
  cfg.validate();

  auto search = best_partition_search(spec, g, cfg);
  timing["search"] = clock.lap();
  auto table = probability_table(spec, g, cfg);
  auto ex = expectation_report(table, g, o.expectation_trials, o.seed);
  json expectation = {{"mu", ex.mu},
                      {"expected_volume", ex.expected_volume},
                      {"exact_expected_internal", ex.exact_expected_internal},
                      {"closed_form_expected_internal", optional_json(ex.closed_form_expected_internal)},
                      {"closed_form_expected_internal_unscaled",
                       optional_json(ex.closed_form_expected_internal_unscaled)},
                      {"clamped_count", ex.clamped_count}};
  if (ex.monte_carlo) {
    const auto& mc = *ex.monte_carlo;
    expectation["monte_carlo"] = {{"trials", mc.trials},
                                  {"volume_mean", mc.volume.mean},
                                  {"volume_standard_error", mc.volume.standard_error},
                                  {"internal_mean", mc.internal.mean},
                                  {"internal_standard_error", mc.internal.standard_error}};
  }
  timing["expectation"] = clock.lap();

  json concentration = json::array();
  for (double eps : o.epsilon) {
    auto c = concentration_diagnostic(table, g, eps, o.concentration_trials, o.seed);
    json parts = json::array();
    for (const auto& p : c.parts)
      parts.push_back({{"part", p.part},
                       {"expected_volume", p.expected_volume},
                       {"violations", p.violations},
                       {"frequency", p.frequency},
                       {"standard_error", p.standard_error},
                       {"chernoff_ceiling", p.chernoff_ceiling},
                       {"pass", p.pass}});
    concentration.push_back({{"epsilon", eps}, {"trials", c.trials}, {"pass", c.pass()}, {"parts", parts}});
  }
  timing["concentration"] = clock.lap();

  json config = graph_input_config(o);
  config.update({{"k", cfg.k},
                 {"delta", cfg.delta},
                 {"variant", to_string(cfg.variant)},
                 {"trials", cfg.trials},
                 {"expectation_trials", o.expectation_trials},
                 {"epsilon", o.epsilon},
                 {"concentration_trials", o.concentration_trials}});
  Report report("round", config, o.seed);
  report.doc["graph"] = graph_summary(g);
  report.doc["result"] = {{"partition", partition_json(search.partition)},
                          {"quality", quality_json(search.quality)},
                          {"best_trial", search.best_trial},
                          {"discarded", search.discarded},
                          {"trials", search.trials},
                          {"clamped_count", search.clamped_count},
                          {"expectation", expectation},
                          {"concentration", concentration}};
  report.row("h_avg", search.quality.h_avg);
  report.row("h_worst", search.quality.h_worst);
  report.row("best_trial", search.best_trial);
  report.row("discarded", search.discarded);
  report.row("clamped_count", search.clamped_count);
  report.emit(timing);
  return kOk;
}

std::pair<std::size_t, std::size_t> parse_k_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      std::size_t k = std::stoul(s);
      return {k, k};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParameterError("k_range", "expected 'a..b', got '" + s + "'");
  }
}

json checks_json(const std::vector<CheckOutcome>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    json j = {{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}};
    if (c.known_erratum) j["tag"] = "known-erratum";
    out.push_back(j);
  }
  return out;
}

json record_json(const GraphRecord& r) {
  json per_k = json::array();
  for (const auto& k : r.per_k)
    per_k.push_back({{"k", k.k},
                     {"h_exact", rational_json(k.h_exact)},
                     {"lower_bound", k.lower_bound},
                     {"lower_bound_proof", k.lower_bound_proof},
                     {"lower_bound_statement", k.lower_bound_statement},
                     {"partition_energy", k.partition_energy},
                     {"eigenvalue_floor", k.eigenvalue_floor},
                     {"expectation_delta", optional_json(k.expectation_delta)},
                     {"expectation_error", optional_json(k.expectation_error)},
                     {"checks", checks_json(k.checks)}});
  json out = {{"index", r.index}, {"n", r.n}, {"edges", r.edges}, {"components", r.components}};
  if (r.mask) out["mask"] = *r.mask;
  if (r.classical)
    out["classical"] = {{"h", rational_json(r.h_classical)},
                        {"lambda1_half", r.classical->lambda1_half},
                        {"sqrt_two_lambda1", r.classical->sqrt_two_lambda1}};
  out["checks"] = checks_json(r.checks);
  out["per_k"] = per_k;
  out["pass"] = r.pass();
  return out;
}

int run_verify(const VerifyCliOptions& o) {
  Stopwatch clock;
  json timing;
  if (o.input.has_value() == o.corpus.has_value())
    throw ParameterError("corpus", "give exactly one of an input graph and --corpus");
  VerifyOptions opts;
  std::tie(opts.k_min, opts.k_max) = parse_k_range(o.k_range);
  opts.reading = parse_lambda_reading(o.lambda_reading);

  std::vector<GraphRecord> records;
  std::optional<Graph> single;
  if (o.corpus) {
    records = verify_corpus(*o.corpus, opts);
  } else {
    single = read_edge_list(read_text(*o.input));
    records.push_back(verify_graph(*single, opts));
  }
  timing["verify"] = clock.lap();

  std::size_t pairs = 0, checks = 0, failures = 0, errata = 0;
  json violations = json::array();
  std::map<std::pair<std::size_t, std::size_t>, json> table;
  auto note = [&](const GraphRecord& r, std::optional<std::size_t> k, const CheckOutcome& c) {
    ++checks;
    if (c.pass) return;
    c.known_erratum ? ++errata : ++failures;
    json v = {{"index", r.index}, {"n", r.n}, {"k", optional_json(k)}, {"check", c.name}, {"detail", c.detail}};
    if (r.mask) v["mask"] = *r.mask;
    v["tag"] = c.known_erratum ? "known-erratum" : "violation";
    violations.push_back(v);
  };
  for (const auto& r : records) {
    for (const auto& c : r.checks) note(r, std::nullopt, c);
    for (const auto& kr : r.per_k) {
      ++pairs;
      for (const auto& c : kr.checks) note(r, kr.k, c);
      auto& row = table[{r.n, kr.k}];
      if (row.is_null()) row = {{"n", r.n}, {"k", kr.k}, {"graphs", 0}, {"passed", 0}, {"min_lower_slack", nullptr}};
      row["graphs"] = row["graphs"].get<std::size_t>() + 1;
      bool ok = std::all_of(kr.checks.begin(), kr.checks.end(), [](const auto& c) { return c.pass || c.known_erratum; });
      row["passed"] = row["passed"].get<std::size_t>() + (ok ? 1 : 0);
      double slack = to_double(kr.h_exact) - kr.lower_bound;
      if (row["min_lower_slack"].is_null() || slack < row["min_lower_slack"].get<double>()) row["min_lower_slack"] = slack;
    }
  }
  json table_rows = json::array();
  for (auto& [key, row] : table) table_rows.push_back(row);

  json config = {{"input", optional_json(o.input)},
                 {"corpus", optional_json(o.corpus)},
                 {"k_range", {opts.k_min, opts.k_max}},
                 {"lambda_reading", to_string(opts.reading)}};
  Report report("verify", config, std::nullopt);
  if (single) report.doc["graph"] = graph_summary(*single);
  const bool pass = failures == 0;
  report.doc["result"] = {{"summary",
                           {{"graphs", records.size()},
                            {"graph_k_pairs", pairs},
                            {"checks", checks},
                            {"violations", failures},
                            {"known_errata", errata},
                            {"pass", pass}}},
                          {"violations", violations},
                          {"table", table_rows}};
  if (single) report.doc["result"]["records"] = json::array({record_json(records.front())});
  report.row("graphs", records.size());
  report.row("graph_k_pairs", pairs);
  report.row("violations", failures);
  report.row("known_errata", errata);
  report.row("result", pass ? "PASS" : "FAIL");
  report.emit(timing);
  return pass ? kOk : kVerifyFailed;
}

int fail(int code, const std::string& kind, const std::string& message, std::optional<std::string> flag = {}) {
  std::cerr << "kcheeger: " << message << '\n';
  json doc = {{"report_version", 1}, {"error", {{"type", kind}, {"message", message}, {"flag", optional_json(flag)}}}};
  std::cout << doc.dump(2) << '\n';
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-way Cheeger constants, normalized-Laplacian spectra and spectral rounding"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph as an edge list");
  gen_cmd->add_option("kind", gen.kind, "complete | path | cycle | grid | union | planted | gnp")->required();
  gen_cmd->add_option("--n", gen.n, "vertex count");
  gen_cmd->add_option("--k", gen.k, "planted block count");
  gen_cmd->add_option("--p", gen.p, "edge probability (gnp)");
  gen_cmd->add_option("--p-in", gen.p_in, "within-block edge probability");
  gen_cmd->add_option("--p-out", gen.p_out, "between-block edge probability");
  gen_cmd->add_option("--rows", gen.rows, "grid rows");
  gen_cmd->add_option("--cols", gen.cols, "grid columns");
  gen_cmd->add_option("--component", gen.components, "union component, e.g. complete:3 (repeatable)")
      ->allow_extra_args(false);
  gen_cmd->add_option("--seed", gen.seed, "seed for random kinds");
  gen_cmd->add_option("--out", gen.out, "output path, - for stdout");

  SpectrumOptions spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "normalized-Laplacian eigenpairs");
  spectrum_cmd->add_option("input", spectrum.input, "edge list path, - for stdin");
  spectrum_cmd->add_option("--k", spectrum.k, "report only the k smallest eigenpairs");
  spectrum_cmd->add_option("--basis-file", spectrum.basis_file, "use the given eigenbasis instead of solving");

  BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "lower and upper bounds on h^(k)");
  bounds_cmd->add_option("input", bounds.input, "edge list path, - for stdin");
  bounds_cmd->add_option("--k", bounds.k, "number of parts")->required();
  bounds_cmd->add_option("--basis-file", bounds.basis_file, "use the given eigenbasis instead of solving");

  ExactOptions exact;
  auto* exact_cmd = app.add_subcommand("exact", "exact optimum by enumeration");
  exact_cmd->add_option("input", exact.input, "edge list path, - for stdin");
  exact_cmd->add_option("--k", exact.k, "number of parts");
  exact_cmd->add_flag("--classical", exact.classical, "two-sided classical Cheeger constant");
  exact_cmd->add_option("--objective", exact.objective, "avg | worst");

  RoundOptions round;
  auto* round_cmd = app.add_subcommand("round", "sample partitions from the eigenvector rounding");
  round_cmd->add_option("input", round.input, "edge list path, - for stdin");
  round_cmd->add_option("--k", round.k, "number of parts")->required();
  round_cmd->add_option("--delta", round.delta, "mass reserved for the residual part, in [0, 1/2)");
  round_cmd->add_option("--variant", round.variant, "main | nonpos");
  round_cmd->add_option("--trials", round.trials, "number of sampled partitions");
  round_cmd->add_option("--seed", round.seed, "sampling seed");
  round_cmd->add_option("--basis-file", round.basis_file, "use the given eigenbasis instead of solving");
  round_cmd->add_option("--expectation-trials", round.expectation_trials, "Monte Carlo trials for expectations");
  round_cmd->add_option("--epsilon", round.epsilon, "concentration diagnostic tolerance (repeatable)")
      ->allow_extra_args(false);
  round_cmd->add_option("--concentration-trials", round.concentration_trials, "trials per diagnostic");

  VerifyCliOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "check bounds and identities against the exact oracles");
  verify_cmd->add_option("input", verify.input, "edge list path, - for stdin");
  verify_cmd->add_option("--corpus", verify.corpus, "all connected labeled graphs on 2..N vertices");
  verify_cmd->add_option("--k-range", verify.k_range, "k values as a..b");
  verify_cmd->add_option("--lambda-reading", verify.lambda_reading, "proof | statement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kParameter, "parameter", e.what());
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*spectrum_cmd) return run_spectrum(spectrum);
    if (*bounds_cmd) return run_bounds(bounds);
    if (*exact_cmd) return run_exact(exact);
    if (*round_cmd) return run_round(round);
    if (*verify_cmd) return run_verify(verify);
  } catch (const ParameterError& e) {
    auto flag = flag_name(e.parameter());
    std::string detail = e.what();
    const std::string prefix = "invalid " + e.parameter() + ": ";
    if (detail.starts_with(prefix)) detail.erase(0, prefix.size());
    return fail(kParameter, "parameter", "invalid " + flag + ": " + detail, flag);
  } catch (const ParseError& e) {
    return fail(kParameter, "parse", e.what());
  } catch (const ValidationError& e) {
    return fail(kParameter, "validation", e.what());
  } catch (const DomainError& e) {
    return fail(kParameter, "domain", e.what());
  } catch (const SearchFailure& e) {
    return fail(kParameter, "search", e.what());
  } catch (const CapacityError& e) {
    return fail(kCapacity, "capacity", e.what());
  } catch (const NumericalError& e) {
    return fail(kNumerical, "numerical", e.what());
  }
  return kParameter;
}
