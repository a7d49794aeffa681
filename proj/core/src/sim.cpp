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

#include "robcep/sim.hpp"

#include <cmath>
#include <ostream>
#include <random>

#include "robcep/error.hpp"
#include "robcep/rng.hpp"
#include "robcep/series_io.hpp"
#include "robcep/spectral_io.hpp"

namespace robcep {

namespace {

constexpr int kMaxRejections = 1000;

double draw_uniform(Engine& eng, const Interval& iv) {
  if (iv.lo == iv.hi) return iv.lo;
  return std::uniform_real_distribution<double>(iv.lo, iv.hi)(eng);
}

void validate_interval(const Interval& iv, const char* what) {
  if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    throw ConfigurationError(std::string("empty or non-finite range for ") + what);
  }
}

nlohmann::json interval_json(const Interval& iv) { return nlohmann::json::array({iv.lo, iv.hi}); }

Interval interval_from_json(const nlohmann::json& j) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 2) throw ConfigurationError("interval must have exactly two bounds");
  return {v[0], v[1]};
}

std::vector<NamedSeries> simulate_set(const McScenario& scn, std::uint64_t rep_seed, bool test) {
  const StreamPurpose params = test ? StreamPurpose::kTestParameters : StreamPurpose::kParameters;
  const StreamPurpose innov = test ? StreamPurpose::kTestInnovations : StreamPurpose::kInnovations;
  const StreamPurpose contam =
      test ? StreamPurpose::kTestContamination : StreamPurpose::kContamination;
  std::vector<NamedSeries> out;
  for (std::size_t j = 0; j < scn.laws.size(); ++j) {
    const auto& law = scn.laws[j];
    const std::size_t count = test ? scn.test_size : scn.train_sizes[j];
    const auto pop = static_cast<std::uint64_t>(law.label);
    for (std::size_t k = 1; k <= count; ++k) {
      const ArmaSpec spec = draw_population_params(law, derive_seed(rep_seed, pop, k, params));
      Series x = simulate_arma(spec, scn.length, derive_seed(rep_seed, pop, k, innov));
      if (scn.contamination) {
        ContaminationConfig cc = *scn.contamination;
        cc.seed = derive_seed(rep_seed, pop, k, contam);
        x = contaminate(x, cc);
      }
      const int kk = static_cast<int>(k);
      out.push_back({series_column_name(law.label, kk), law.label, kk, std::move(x)});
    }
  }
  return out;
}

}  // namespace

Series simulate_arma(const ArmaSpec& spec, std::size_t n, std::uint64_t seed) {
  validate_arma(spec);
  if (n == 0) throw DomainError("simulation length must be positive");
  Engine eng = make_engine(seed);
  std::normal_distribution<double> innov(0.0, std::sqrt(spec.sigma2));
  const std::size_t total = kBurnIn + n;
  const std::size_t p = spec.ar.size();
  const std::size_t q = spec.ma.size();
  std::vector<double> x(total, 0.0);
  std::vector<double> e(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    e[t] = innov(eng);
    double v = e[t];
    for (std::size_t i = 1; i <= p && i <= t; ++i) v += spec.ar[i - 1] * x[t - i];
    for (std::size_t i = 1; i <= q && i <= t; ++i) v += spec.ma[i - 1] * e[t - i];
    x[t] = v;
  }
  return Series(x.begin() + static_cast<std::ptrdiff_t>(kBurnIn), x.end());
}

void PopulationLaw::validate() const {
  if (label < 1) throw ConfigurationError("population label must be >= 1");
  validate_interval(phi1, "phi1");
  validate_interval(phi2, "phi2");
  validate_interval(sigma2, "sigma2");
  if (!(sigma2.lo > 0.0)) throw ConfigurationError("sigma2 range must be positive");
}

bool in_stationarity_triangle(double phi1, double phi2) noexcept {
  return phi2 > -1.0 && phi2 < 1.0 - phi1 && phi2 < 1.0 + phi1;
}

ArmaSpec draw_population_params(const PopulationLaw& law, std::uint64_t seed) {
  law.validate();
  Engine eng = make_engine(seed);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double phi1 = draw_uniform(eng, law.phi1);
    const double phi2 = draw_uniform(eng, law.phi2);
    if (!in_stationarity_triangle(phi1, phi2)) continue;
    const double s2 = draw_uniform(eng, law.sigma2);
    return ArmaSpec{{phi1, phi2}, {}, s2};
  }
  throw ConfigurationError("population " + std::to_string(law.label) + ": " +
                           std::to_string(kMaxRejections) +
                           " consecutive draws violated AR(2) stationarity");
}

std::vector<PopulationLaw> reference_laws(int scenario) {
  Interval s2;
  switch (scenario) {
    case 1:
      s2 = {0.1, 10.0};
      break;
    case 2:
      s2 = {0.3, 3.0};
      break;
    case 3:
      s2 = {0.9, 1.1};
      break;
    default:
      throw ConfigurationError("variance scenario must be 1, 2 or 3");
  }
  return {
      {1, {0.05, 0.7}, {-0.12, -0.06}, s2},
      {2, {0.01, 1.2}, {-0.36, -0.25}, s2},
      {3, {0.12, 1.5}, {-0.75, -0.56}, s2},
  };
}

void McScenario::validate() const {
  if (laws.empty()) throw ConfigurationError("scenario has no population laws");
  if (train_sizes.size() != laws.size()) {
    throw ConfigurationError("need one training size per population law");
  }
  for (std::size_t j = 0; j < laws.size(); ++j) {
    laws[j].validate();
    if (laws[j].label != static_cast<int>(j + 1)) {
      throw ConfigurationError("population laws must be labeled 1..J in order");
    }
    if (train_sizes[j] < 2) throw ConfigurationError("each population needs n_j >= 2");
  }
  if (length < kMinSeriesLength) throw ConfigurationError("series length too short");
  if (test_size < 1) throw ConfigurationError("test size must be >= 1");
  if (repetitions < 1) throw ConfigurationError("repetitions must be >= 1");
  if (cepstra < 1) throw ConfigurationError("L must be >= 1");
  if (contamination) contamination->validate();
  huber.validate();
}

McSample simulate_repetition(const McScenario& scn, std::size_t rep) {
  const std::uint64_t rep_seed = derive_seed(scn.seed, 0, rep, StreamPurpose::kRepetition);
  return {simulate_set(scn, rep_seed, false), simulate_set(scn, rep_seed, true)};
}

McResult run_mc(const McScenario& scn, unsigned jobs) {
  scn.validate();
  PipelineConfig cfg;
  cfg.estimator = scn.estimator;
  cfg.huber = scn.huber;
  cfg.cepstra = scn.cepstra;

  McResult res;
  res.repetitions.resize(scn.repetitions);
  parallel_for(scn.repetitions, jobs, [&](std::size_t r) {
    McRepetition& out = res.repetitions[r];
    out.index = r + 1;
    try {
      const McSample sample = simulate_repetition(scn, r);
      const auto train = compute_cepstra(sample.train, cfg, scn.cepstra);
      const auto model = fit(train, cfg.model_config());
      const auto test = compute_cepstra(sample.test, cfg, scn.cepstra);
      const auto cm = evaluate(model, test);
      out.rate = cm.overall_rate();
      for (int j = 1; j <= cm.num_populations(); ++j) out.diagonal.push_back(cm.diagonal(j));
    } catch (const Error& e) {
      out.failed = true;
      out.error = e.what();
    }
  });

  const std::size_t jn = scn.laws.size();
  res.mean_diagonal.assign(jn, 0.0);
  std::vector<double> rates;
  for (const auto& rep : res.repetitions) {
    if (rep.failed) {
      ++res.failed;
      continue;
    }
    rates.push_back(rep.rate);
    for (std::size_t j = 0; j < jn; ++j) res.mean_diagonal[j] += rep.diagonal[j];
  }
  if (static_cast<double>(res.failed) > 0.1 * static_cast<double>(scn.repetitions)) {
    std::string first;
    for (const auto& rep : res.repetitions) {
      if (rep.failed) {
        first = rep.error;
        break;
      }
    }
    throw NumericalError(std::to_string(res.failed) + " of " +
                         std::to_string(scn.repetitions) +
                         " repetitions failed (limit 10%); first error: " + first);
  }
  const double k = static_cast<double>(rates.size());
  for (double r : rates) res.mean_rate += r;
  res.mean_rate /= k;
  for (double& d : res.mean_diagonal) d /= k;
  if (rates.size() > 1) {
    double ss = 0.0;
    for (double r : rates) ss += (r - res.mean_rate) * (r - res.mean_rate);
    res.sd_rate = std::sqrt(ss / (k - 1.0));
  }
  return res;
}

nlohmann::json to_json(const McScenario& scn) {
  auto laws = nlohmann::json::array();
  for (const auto& l : scn.laws) {
    laws.push_back({{"label", l.label},
                    {"phi1", interval_json(l.phi1)},
                    {"phi2", interval_json(l.phi2)},
                    {"sigma2", interval_json(l.sigma2)}});
  }
  nlohmann::json j{{"laws", laws},
                   {"train_sizes", scn.train_sizes},
                   {"length", scn.length},
                   {"test_size", scn.test_size},
                   {"estimator", to_json(scn.estimator)},
                   {"huber",
                    {{"max_iterations", scn.huber.max_iterations},
                     {"tolerance", scn.huber.tolerance}}},
                   {"repetitions", scn.repetitions},
                   {"cepstra", scn.cepstra},
                   {"seed", scn.seed}};
  if (scn.contamination) {
    j["contamination"] = {{"probability", scn.contamination->probability},
                          {"magnitude", scn.contamination->magnitude}};
  } else {
    j["contamination"] = nullptr;
  }
  return j;
}

McScenario mc_scenario_from_json(const nlohmann::json& j) {
  McScenario scn;
  if (j.contains("laws")) {
    for (const auto& l : j.at("laws")) {
      scn.laws.push_back({l.at("label").get<int>(), interval_from_json(l.at("phi1")),
                          interval_from_json(l.at("phi2")), interval_from_json(l.at("sigma2"))});
    }
  } else if (j.contains("variance_scenario")) {
    scn.laws = reference_laws(j.at("variance_scenario").get<int>());
  } else {
    throw ConfigurationError("scenario needs either 'laws' or 'variance_scenario'");
  }
  if (j.contains("train_sizes")) {
    scn.train_sizes = j.at("train_sizes").get<std::vector<std::size_t>>();
  } else if (j.contains("train_size")) {
    scn.train_sizes.assign(scn.laws.size(), j.at("train_size").get<std::size_t>());
  } else {
    throw ConfigurationError("scenario needs 'train_sizes' or 'train_size'");
  }
  scn.length = j.value("length", scn.length);
  scn.test_size = j.value("test_size", scn.test_size);
  if (j.contains("estimator")) scn.estimator = estimator_spec_from_json(j.at("estimator"));
  if (j.contains("huber")) {
    const auto& h = j.at("huber");
    scn.huber.max_iterations = h.value("max_iterations", scn.huber.max_iterations);
    scn.huber.tolerance = h.value("tolerance", scn.huber.tolerance);
  }
  if (j.contains("contamination") && !j.at("contamination").is_null()) {
    const auto& c = j.at("contamination");
    ContaminationConfig cc;
    cc.probability = c.value("probability", cc.probability);
    cc.magnitude = c.value("magnitude", cc.magnitude);
    scn.contamination = cc;
  }
  scn.repetitions = j.value("repetitions", scn.repetitions);
  scn.cepstra = j.value("cepstra", scn.cepstra);
  scn.seed = j.value("seed", scn.seed);
  scn.huber.c = scn.estimator.huber_c;
  scn.validate();
  return scn;
}

nlohmann::json to_json(const McResult& res) {
  auto reps = nlohmann::json::array();
  for (const auto& r : res.repetitions) {
    nlohmann::json rj{{"rep", r.index}, {"failed", r.failed}};
    if (r.failed) {
      rj["error"] = r.error;
    } else {
      rj["rate"] = r.rate;
      rj["diagonal"] = r.diagonal;
    }
    reps.push_back(std::move(rj));
  }
  return {{"mean_rate", res.mean_rate},
          {"sd_rate", res.sd_rate},
          {"mean_diagonal", res.mean_diagonal},
          {"failed", res.failed},
          {"repetitions", reps}};
}

void write_mc_csv(std::ostream& out, const McResult& res) {
  const std::size_t jn = res.mean_diagonal.size();
  out << "rep,rate";
  for (std::size_t j = 1; j <= jn; ++j) out << ",pop" << j << "_diag";
  out << '\n';
  for (const auto& r : res.repetitions) {
    out << r.index << ',';
    if (!r.failed) out << format_double(r.rate);
    for (std::size_t j = 0; j < jn; ++j) {
      out << ',';
      if (!r.failed) out << format_double(r.diagonal[j]);
    }
    out << '\n';
  }
}

}  // namespace robcep
