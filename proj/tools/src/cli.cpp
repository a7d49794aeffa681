// Copyright 2026 The robcep Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "robcep/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <toml.hpp>

#include "robcep/cepstral.hpp"
#include "robcep/clda.hpp"
#include "robcep/clda_io.hpp"
#include "robcep/error.hpp"
#include "robcep/series_io.hpp"
#include "robcep/sim.hpp"
#include "robcep/spectral_io.hpp"

namespace robcep::cli {

namespace {

/// Thrown for invalid argument combinations that CLI11 cannot express.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string estimator;
  int tapers = 0;
  double huber_c = 0.0;
  std::size_t cepstra = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string format = "csv";
  std::string config_path;
  std::string preset;
  std::string output;

  CLI::Option* estimator_opt = nullptr;
  CLI::Option* tapers_opt = nullptr;
  CLI::Option* huber_opt = nullptr;
  CLI::Option* cepstra_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* preset_opt = nullptr;

  bool estimator_overridden() const {
    return estimator_opt->count() > 0 || tapers_opt->count() > 0 || huber_opt->count() > 0;
  }
};

bool json_output(const GlobalOptions& g) { return g.format == "json"; }

/// Output sink: the --output file when given, the supplied stream otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot write output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

Preprocessing preset_by_name(const std::string& name) {
  if (name == "gait-raw") return Preprocessing::gait_raw();
  if (name == "gait-modified") return Preprocessing::gait_modified();
  if (name == "none") return Preprocessing{};
  throw ConfigurationError("unknown preset '" + name + "' (expected gait-raw, gait-modified)");
}

PipelineConfig resolve_config(const GlobalOptions& g) {
  PipelineConfig cfg;
  if (!g.config_path.empty()) apply_config(read_config_file(g.config_path), cfg);
  if (g.preset_opt->count()) cfg.preprocessing = preset_by_name(g.preset);
  if (g.estimator_opt->count()) cfg.estimator.kind = parse_estimator_kind(g.estimator);
  if (g.tapers_opt->count()) cfg.estimator.tapers = g.tapers;
  if (g.huber_opt->count()) cfg.estimator.huber_c = g.huber_c;
  if (g.cepstra_opt->count()) cfg.cepstra = g.cepstra;
  if (g.seed_opt->count()) cfg.seed = g.seed;
  if (cfg.cepstra < 1) throw ConfigurationError("L must be >= 1");
  cfg.huber.c = cfg.estimator.huber_c;
  cfg.huber.validate();
  return cfg;
}

std::vector<NamedSeries> read_input(const std::string& path) {
  auto series = read_series_file(path);
  if (series.empty()) throw ParseError(path, 1, "no series found");
  return series;
}

std::vector<NamedSeries> read_labeled(const std::string& path) {
  auto series = read_input(path);
  for (const auto& s : series) {
    if (!s.labeled()) {
      throw ParseError(path, 1, "series '" + s.name +
                                    "' has no population label (use pop<j>_rep<k> columns "
                                    "or the long layout)");
    }
  }
  return series;
}

int count_populations(const std::vector<LabeledCepstra>& sample) {
  int jn = 0;
  for (const auto& s : sample) jn = std::max(jn, s.population);
  return jn;
}

bool loo_possible(const std::vector<LabeledCepstra>& sample) {
  const int jn = count_populations(sample);
  std::vector<std::size_t> counts(static_cast<std::size_t>(jn), 0);
  for (const auto& s : sample) ++counts[static_cast<std::size_t>(s.population - 1)];
  for (auto c : counts) {
    if (c < 3) return false;
  }
  return true;
}

double in_sample_rate(const std::vector<LabeledCepstra>& sample, const ModelConfig& mc) {
  return evaluate(fit(sample, mc), sample).overall_rate();
}

/// A classify/evaluate run must use the pipeline the model was trained with;
/// explicit flags that disagree with it are an error.
PipelineConfig config_for_model(const GlobalOptions& g, const DiscriminantModel& model) {
  PipelineConfig cfg = resolve_config(g);
  const bool has_file = !g.config_path.empty();
  if ((g.estimator_overridden() || has_file) && !(cfg.estimator == model.config.estimator)) {
    throw ConfigurationError("model was fit with estimator " +
                             model.config.estimator.describe() + " but " +
                             cfg.estimator.describe() + " was requested");
  }
  if ((g.cepstra_opt->count() || has_file) && cfg.cepstra != model.config.cepstra) {
    throw ConfigurationError("model was fit with L = " + std::to_string(model.config.cepstra) +
                             " but L = " + std::to_string(cfg.cepstra) + " was requested");
  }
  cfg.estimator = model.config.estimator;
  cfg.cepstra = model.config.cepstra;
  cfg.huber.c = cfg.estimator.huber_c;
  return cfg;
}

// ---------------------------------------------------------------- spectrum

void cmd_spectrum(const GlobalOptions& g, const std::string& input, std::ostream& os) {
  const PipelineConfig cfg = resolve_config(g);
  const auto series = read_input(input);
  std::vector<std::optional<SpectralEstimate>> est(series.size());
  parallel_for(series.size(), g.jobs,
               [&](std::size_t i) { est[i] = series_spectrum(series[i].values, cfg); });
  if (json_output(g)) {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
      arr.push_back({{"series", series[i].name}, {"spectrum", to_json(*est[i])}});
    }
    os << nlohmann::json{{"series", arr}}.dump(2) << '\n';
    return;
  }
  os << "series,m,lambda,value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& e = *est[i];
    for (std::size_t m = 1; m <= e.grid.size(); ++m) {
      os << series[i].name << ',' << m << ',' << format_double(e.grid.frequency(m)) << ','
         << format_double(e.values[m - 1]) << '\n';
    }
  }
}

// ----------------------------------------------------------------- cepstra

struct CepstraRecord {
  std::string name;
  std::vector<double> lambda;
  std::vector<double> spectrum;
  std::vector<double> log_spectrum;
  CepstralVector cepstra;
};

void write_cepstra_records(const GlobalOptions& g, const std::vector<CepstraRecord>& recs,
                           std::ostream& os) {
  if (json_output(g)) {
    auto arr = nlohmann::json::array();
    for (const auto& r : recs) {
      arr.push_back({{"series", r.name},
                     {"source", r.cepstra.source},
                     {"lambda", r.lambda},
                     {"spectrum", r.spectrum},
                     {"log_spectrum", r.log_spectrum},
                     {"cepstra", r.cepstra.coefficients}});
    }
    os << nlohmann::json{{"series", arr}}.dump(2) << '\n';
    return;
  }
  os << "series,quantity,x,value\n";
  for (const auto& r : recs) {
    for (std::size_t m = 0; m < r.lambda.size(); ++m) {
      os << r.name << ",spectrum," << format_double(r.lambda[m]) << ','
         << format_double(r.spectrum[m]) << '\n';
    }
    for (std::size_t m = 0; m < r.lambda.size(); ++m) {
      os << r.name << ",log_spectrum," << format_double(r.lambda[m]) << ','
         << format_double(r.log_spectrum[m]) << '\n';
    }
    for (std::size_t l = 0; l < r.cepstra.size(); ++l) {
      os << r.name << ",cepstrum," << l << ',' << format_double(r.cepstra[l]) << '\n';
    }
  }
}

void cmd_cepstra(const GlobalOptions& g, const std::string& input, const std::string& theoretical,
                 double sigma2, std::size_t grid_n, std::ostream& os) {
  if (input.empty() == theoretical.empty()) {
    throw UsageError("cepstra needs exactly one of an input file or --theoretical");
  }
  const PipelineConfig cfg = resolve_config(g);
  std::vector<CepstraRecord> recs;
  if (!theoretical.empty()) {
    ArmaSpec spec = parse_arma_spec(theoretical);
    spec.sigma2 = sigma2;
    validate_arma(spec);
    const FrequencyGrid grid(grid_n);
    CepstraRecord r;
    r.name = theoretical;
    std::replace(r.name.begin(), r.name.end(), ',', ' ');  // keep the CSV cell intact
    r.lambda = grid.frequencies();
    for (double l : r.lambda) {
      const double ls = theoretical_log_spectrum(spec, l);
      r.log_spectrum.push_back(ls);
      r.spectrum.push_back(std::exp(ls));
    }
    r.cepstra = theoretical_cepstra(spec, cfg.cepstra);
    recs.push_back(std::move(r));
  } else {
    const auto series = read_input(input);
    recs.resize(series.size());
    parallel_for(series.size(), g.jobs, [&](std::size_t i) {
      const auto est = series_spectrum(series[i].values, cfg);
      CepstraRecord& r = recs[i];
      r.name = series[i].name;
      r.lambda = est.grid.frequencies();
      r.spectrum = est.values;
      for (double v : est.values) r.log_spectrum.push_back(std::log(v));
      r.cepstra = estimate_cepstra(est, cfg.cepstra);
    });
  }
  write_cepstra_records(g, recs, os);
}

// --------------------------------------------------------------------- fit

void cmd_fit(const GlobalOptions& g, const std::string& input, const std::string& model_path,
             std::ostream& os, std::ostream& err) {
  const PipelineConfig cfg = resolve_config(g);
  const auto series = read_labeled(input);
  const auto sample = compute_cepstra(series, cfg, cfg.cepstra, g.jobs);
  const ModelConfig mc = cfg.model_config();
  const DiscriminantModel model = fit(sample, mc);
  save_model(model, model_path);
  const double in_rate = evaluate(model, sample).overall_rate();
  std::optional<double> loo;
  if (loo_possible(sample)) {
    loo = leave_one_out_rate(sample, mc);
  } else {
    err << "warning: leave-one-out rate needs at least 3 replicates per population; skipped\n";
  }
  const std::vector<double> evals(model.eigenvalues.data(),
                                  model.eigenvalues.data() + model.eigenvalues.size());
  if (json_output(g)) {
    nlohmann::json j{{"q", model.num_discriminants()},
                     {"eigenvalues", evals},
                     {"in_sample_rate", in_rate},
                     {"model", model_path}};
    j["loo_rate"] = loo ? nlohmann::json(*loo) : nlohmann::json(nullptr);
    os << j.dump(2) << '\n';
    return;
  }
  os << "quantity,value\n";
  os << "q," << model.num_discriminants() << '\n';
  for (std::size_t s = 0; s < evals.size(); ++s) {
    os << "eigenvalue" << (s + 1) << ',' << format_double(evals[s]) << '\n';
  }
  os << "loo_rate," << (loo ? format_double(*loo) : std::string("NA")) << '\n';
  os << "in_sample_rate," << format_double(in_rate) << '\n';
}

// ---------------------------------------------------------------- classify

void cmd_classify(const GlobalOptions& g, const std::string& model_path, const std::string& input,
                  std::ostream& os) {
  const DiscriminantModel model = load_model(model_path);
  const PipelineConfig cfg = config_for_model(g, model);
  const auto series = read_input(input);
  const auto sample = compute_cepstra(series, cfg, cfg.cepstra, g.jobs);
  std::vector<int> labels;
  for (const auto& s : sample) labels.push_back(predict(model, s.cepstra));
  if (json_output(g)) {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
      arr.push_back({{"series", series[i].name}, {"predicted", labels[i]}});
    }
    os << nlohmann::json{{"predictions", arr}}.dump(2) << '\n';
    return;
  }
  os << "series,predicted\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << series[i].name << ',' << labels[i] << '\n';
  }
}

// ---------------------------------------------------------------- evaluate

void cmd_evaluate(const GlobalOptions& g, const std::string& model_path, const std::string& input,
                  std::ostream& os) {
  const DiscriminantModel model = load_model(model_path);
  const PipelineConfig cfg = config_for_model(g, model);
  const auto series = read_labeled(input);
  const auto sample = compute_cepstra(series, cfg, cfg.cepstra, g.jobs);
  const ConfusionMatrix cm = evaluate(model, sample);
  if (json_output(g)) {
    os << to_json(cm).dump(2) << '\n';
    return;
  }
  write_confusion_csv(os, cm);
  os << "overall_rate," << format_double(cm.overall_rate()) << '\n';
}

// ---------------------------------------------------------------- select-l

void cmd_select_l(const GlobalOptions& g, const std::string& input, std::size_t l_min,
                  std::size_t l_max, const std::string& scoring, std::ostream& os) {
  const PipelineConfig cfg = resolve_config(g);
  if (l_min < 1 || l_max < l_min) throw ConfigurationError("need 1 <= --l-min <= --l-max");
  const auto series = read_labeled(input);
  LSelection sel;
  if (scoring == "loo") {
    sel = select_L(to_replicate_set(series), cfg, l_min, l_max, g.jobs);
  } else {
    const auto full = compute_cepstra(series, cfg, l_max, g.jobs);
    double best_rate = -1.0;
    for (std::size_t l = l_min; l <= l_max; ++l) {
      ModelConfig mc = cfg.model_config();
      mc.cepstra = l;
      const double r = in_sample_rate(truncate_cepstra(full, l), mc);
      sel.table.emplace_back(l, r);
      if (r > best_rate) {
        best_rate = r;
        sel.best = l;
      }
    }
  }
  if (json_output(g)) {
    auto arr = nlohmann::json::array();
    for (const auto& [l, r] : sel.table) arr.push_back({{"L", l}, {"rate", r}});
    os << nlohmann::json{{"scoring", scoring}, {"table", arr}, {"best", sel.best}}.dump(2)
       << '\n';
    return;
  }
  os << "L,rate,chosen\n";
  for (const auto& [l, r] : sel.table) {
    os << l << ',' << format_double(r) << ',' << (l == sel.best ? 1 : 0) << '\n';
  }
}

// ---------------------------------------------------------------------- mc

void cmd_mc(const GlobalOptions& g, const std::string& scenario_path, const std::string& csv_path,
            std::ostream& os) {
  McScenario scn = mc_scenario_from_json(read_config_file(scenario_path));
  if (g.estimator_opt->count()) scn.estimator.kind = parse_estimator_kind(g.estimator);
  if (g.tapers_opt->count()) scn.estimator.tapers = g.tapers;
  if (g.huber_opt->count()) scn.estimator.huber_c = g.huber_c;
  if (g.cepstra_opt->count()) scn.cepstra = g.cepstra;
  if (g.seed_opt->count()) scn.seed = g.seed;
  scn.huber.c = scn.estimator.huber_c;
  scn.validate();
  const McResult res = run_mc(scn, g.jobs);
  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw DomainError("cannot write output file " + csv_path);
    write_mc_csv(f, res);
  }
  if (json_output(g)) {
    os << nlohmann::json{{"scenario", to_json(scn)}, {"result", to_json(res)}}.dump(2) << '\n';
  } else {
    write_mc_csv(os, res);
  }
}

nlohmann::json toml_to_json(const toml::table& tbl) {
  std::ostringstream ss;
  ss << toml::json_formatter{tbl};
  return nlohmann::json::parse(ss.str());
}

std::vector<double> parse_number_list(const std::string& text, const std::string& what) {
  std::vector<double> v;
  if (text.empty()) return v;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(parse_double(tok, what, 0));
  return v;
}

}  // namespace

ArmaSpec parse_arma_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  const std::string what = "--theoretical " + text;
  auto exactly = [&](std::size_t n) {
    auto v = parse_number_list(args, what);
    if (v.size() != n) {
      throw ConfigurationError(what + ": expected " + std::to_string(n) + " coefficient(s)");
    }
    return v;
  };
  if (kind == "white") {
    if (!args.empty()) throw ConfigurationError(what + ": white noise takes no coefficients");
    return ArmaSpec::white_noise();
  }
  if (kind == "ar1") return ArmaSpec::ar1(exactly(1)[0]);
  if (kind == "ma1") return ArmaSpec::ma1(exactly(1)[0]);
  if (kind == "arma11") {
    const auto v = exactly(2);
    return ArmaSpec::arma11(v[0], v[1]);
  }
  if (kind == "ar") return ArmaSpec{parse_number_list(args, what), {}, 1.0};
  if (kind == "ma") return ArmaSpec{{}, parse_number_list(args, what), 1.0};
  if (kind == "arma") {
    const auto semi = args.find(';');
    if (semi == std::string::npos) {
      throw ConfigurationError(what + ": expected 'arma:phi1,...;theta1,...'");
    }
    return ArmaSpec{parse_number_list(args.substr(0, semi), what),
                    parse_number_list(args.substr(semi + 1), what), 1.0};
  }
  throw ConfigurationError(what + ": unknown model '" + kind +
                           "' (expected white, ar1, ma1, arma11, ar, ma, arma)");
}

nlohmann::json read_config_file(const std::string& path) {
  const bool is_toml = path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  if (is_toml) {
    try {
      return toml_to_json(toml::parse(in, path));
    } catch (const toml::parse_error& e) {
      throw ParseError(path, e.source().begin.line, std::string(e.description()));
    }
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
}

void apply_config(const nlohmann::json& j, PipelineConfig& cfg) {
  try {
    if (j.contains("preset")) cfg.preprocessing = preset_by_name(j.at("preset").get<std::string>());
    if (j.contains("estimator")) {
      cfg.estimator.kind = parse_estimator_kind(j.at("estimator").get<std::string>());
    }
    cfg.estimator.tapers = j.value("tapers", cfg.estimator.tapers);
    cfg.estimator.huber_c = j.value("huber_c", cfg.estimator.huber_c);
    cfg.cepstra = j.value("L", cfg.cepstra);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("huber")) {
      const auto& h = j.at("huber");
      cfg.huber.max_iterations = h.value("max_iterations", cfg.huber.max_iterations);
      cfg.huber.tolerance = h.value("tolerance", cfg.huber.tolerance);
    }
    if (j.contains("preprocessing")) {
      const auto& p = j.at("preprocessing");
      if (p.contains("truncate_to")) cfg.preprocessing.truncate_to = p.at("truncate_to").get<std::size_t>();
      if (p.contains("median_sd_k")) cfg.preprocessing.median_sd_k = p.at("median_sd_k").get<double>();
      cfg.preprocessing.detrend = p.value("detrend", cfg.preprocessing.detrend);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("invalid configuration: ") + e.what());
  }
  cfg.huber.c = cfg.estimator.huber_c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust cepstral discriminant analysis of replicated time series", "robcep"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  g.estimator_opt = app.add_option("--estimator", g.estimator,
                                   "classical, multitaper, m or multitaper-m (default multitaper)");
  g.tapers_opt = app.add_option("--tapers,-R", g.tapers, "number of sine tapers (default 7)");
  g.huber_opt = app.add_option("--huber-c,--c", g.huber_c, "Huber tuning constant (default 1.345)");
  g.cepstra_opt = app.add_option("--L", g.cepstra, "number of cepstral coefficients (default 9)");
  g.seed_opt = app.add_option("--seed", g.seed, "master seed");
  app.add_option("--jobs,-j", g.jobs, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--config", g.config_path, "TOML or JSON pipeline configuration");
  g.preset_opt = app.add_option("--preset", g.preset, "gait-raw or gait-modified");
  app.add_option("--output,-o", g.output, "write primary output to this file");

  std::string input;
  std::string model_path;
  std::string theoretical;
  double sigma2 = 1.0;
  std::size_t grid_n = 512;
  std::size_t l_min = 1;
  std::size_t l_max = 20;
  std::string scoring = "loo";
  std::string csv_path;

  auto* spectrum = app.add_subcommand("spectrum", "spectral estimate of every series in a CSV");
  spectrum->add_option("input", input, "series CSV")->required();

  auto* cepstra = app.add_subcommand("cepstra", "spectra, log spectra and cepstra for plotting");
  cepstra->add_option("input", input, "series CSV");
  cepstra->add_option("--theoretical", theoretical,
                      "ARMA model, e.g. ar1:0.5, ma1:0.5, arma11:0.5,0.3, ar:0.5,-0.2");
  cepstra->add_option("--sigma2", sigma2, "innovation variance for --theoretical")
      ->check(CLI::PositiveNumber);
  cepstra->add_option("--grid", grid_n, "series length N defining the frequency grid")
      ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 24));

  auto* fitc = app.add_subcommand("fit", "fit a discriminant model on labeled series");
  fitc->add_option("input", input, "labeled training CSV")->required();
  fitc->add_option("--model", model_path, "model JSON to write")->required();

  auto* classify = app.add_subcommand("classify", "predict the population of each series");
  classify->add_option("--model", model_path, "model JSON")->required();
  classify->add_option("input", input, "series CSV")->required();

  auto* evaluatec = app.add_subcommand("evaluate", "confusion matrix on labeled series");
  evaluatec->add_option("--model", model_path, "model JSON")->required();
  evaluatec->add_option("input", input, "labeled test CSV")->required();

  auto* selectl = app.add_subcommand("select-l", "classification rate for a range of L");
  selectl->add_option("input", input, "labeled training CSV")->required();
  selectl->add_option("--l-min", l_min, "smallest L (default 1)");
  selectl->add_option("--l-max", l_max, "largest L (default 20)");
  selectl->add_option("--scoring", scoring, "loo (default) or in-sample")
      ->check(CLI::IsMember({"loo", "in-sample"}));

  auto* mc = app.add_subcommand("mc", "Monte Carlo classification-rate experiment");
  mc->add_option("scenario", input, "TOML or JSON scenario")->required();
  mc->add_option("--csv", csv_path, "also write one CSV row per repetition here");

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    Sink sink(g.output, out);
    std::ostream& os = *sink;
    if (spectrum->parsed()) {
      cmd_spectrum(g, input, os);
    } else if (cepstra->parsed()) {
      cmd_cepstra(g, input, theoretical, sigma2, grid_n, os);
    } else if (fitc->parsed()) {
      cmd_fit(g, input, model_path, os, err);
    } else if (classify->parsed()) {
      cmd_classify(g, model_path, input, os);
    } else if (evaluatec->parsed()) {
      cmd_evaluate(g, model_path, input, os);
    } else if (selectl->parsed()) {
      cmd_select_l(g, input, l_min, l_max, scoring, os);
    } else if (mc->parsed()) {
      cmd_mc(g, input, csv_path, os);
    }
    os.flush();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON document: " << e.what() << '\n';
    return kDataError;
  }
  return kSuccess;
}

}  // namespace robcep::cli
