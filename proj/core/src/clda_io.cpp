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

#include "robcep/clda_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "robcep/error.hpp"
#include "robcep/series_io.hpp"
#include "robcep/spectral_io.hpp"

namespace robcep {

namespace {

nlohmann::json rows_of(const Eigen::MatrixXd& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index k = 0; k < m.cols(); ++k) row[static_cast<std::size_t>(k)] = m(i, k);
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXd matrix_from_rows(const nlohmann::json& j, Eigen::Index cols) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != cols) {
      throw DomainError("matrix row " + std::to_string(i) + " has " +
                        std::to_string(rows[i].size()) + " entries, expected " +
                        std::to_string(cols));
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), k) = rows[i][static_cast<std::size_t>(k)];
    }
  }
  return m;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace

nlohmann::json to_json(const DiscriminantModel& model) {
  std::vector<double> evals(model.eigenvalues.data(),
                            model.eigenvalues.data() + model.eigenvalues.size());
  return {
      {"format", kModelFormat},
      {"version", kModelFormatVersion},
      {"config",
       {{"estimator", to_json(model.config.estimator)}, {"cepstra", model.config.cepstra}}},
      {"dimension", model.dimension()},
      {"populations", model.num_populations()},
      {"eigenvalues", evals},
      {"projections", rows_of(model.projections)},
      {"centroids", rows_of(model.centroids)},
      {"priors", model.priors},
  };
}

DiscriminantModel discriminant_model_from_json(const nlohmann::json& j) {
  if (j.value("format", std::string{}) != kModelFormat) {
    throw DomainError("not a discriminant model document");
  }
  const int version = j.at("version").get<int>();
  if (version != kModelFormatVersion) {
    throw DomainError("unsupported model format version " + std::to_string(version));
  }
  DiscriminantModel m;
  const auto& cfg = j.at("config");
  m.config.estimator = estimator_spec_from_json(cfg.at("estimator"));
  m.config.cepstra = cfg.at("cepstra").get<std::size_t>();
  const auto dim = j.at("dimension").get<Eigen::Index>();
  const auto evals = j.at("eigenvalues").get<std::vector<double>>();
  const auto q = static_cast<Eigen::Index>(evals.size());
  m.eigenvalues = Eigen::Map<const Eigen::VectorXd>(evals.data(), q);
  m.projections = matrix_from_rows(j.at("projections"), dim);
  m.centroids = matrix_from_rows(j.at("centroids"), q);
  if (q == 0) {
    m.projections.resize(0, dim);
    m.centroids.resize(static_cast<Eigen::Index>(j.at("priors").size()), 0);
  }
  m.priors = j.at("priors").get<std::vector<double>>();
  if (m.projections.rows() != q ||
      m.centroids.rows() != static_cast<Eigen::Index>(m.priors.size())) {
    throw DomainError("inconsistent model dimensions");
  }
  return m;
}

void save_model(const DiscriminantModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write model file " + path);
  out << to_json(model).dump(2) << '\n';
}

DiscriminantModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, 0, e.what());
  }
  return discriminant_model_from_json(j);
}

nlohmann::json to_json(const ConfusionMatrix& cm) {
  return {{"proportions", rows_of(cm.proportions)},
          {"counts", cm.counts},
          {"overall_rate", cm.overall_rate()}};
}

ConfusionMatrix confusion_matrix_from_json(const nlohmann::json& j) {
  ConfusionMatrix cm;
  cm.counts = j.at("counts").get<std::vector<std::size_t>>();
  cm.proportions = matrix_from_rows(j.at("proportions"),
                                    static_cast<Eigen::Index>(cm.counts.size()));
  if (cm.proportions.rows() != static_cast<Eigen::Index>(cm.counts.size())) {
    throw DomainError("confusion matrix is not square");
  }
  return cm;
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm) {
  const auto jn = cm.counts.size();
  out << "predicted";
  for (std::size_t j = 1; j <= jn; ++j) out << ",pop" << j;
  out << '\n';
  for (std::size_t i = 0; i < jn; ++i) {
    out << (i + 1);
    for (std::size_t j = 0; j < jn; ++j) {
      out << ','
          << format_double(cm.proportions(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j)));
    }
    out << '\n';
  }
  out << "count";
  for (auto c : cm.counts) out << ',' << c;
  out << '\n';
}

ConfusionMatrix read_confusion_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError(source, 1, "missing header");
  ++lineno;
  const auto header = split(line);
  if (header.empty() || header[0] != "predicted") {
    throw ParseError(source, lineno, "expected header starting with 'predicted'");
  }
  const std::size_t jn = header.size() - 1;
  ConfusionMatrix cm;
  cm.proportions.resize(static_cast<Eigen::Index>(jn), static_cast<Eigen::Index>(jn));
  for (std::size_t i = 0; i < jn; ++i) {
    if (!std::getline(in, line)) throw ParseError(source, lineno + 1, "missing matrix row");
    ++lineno;
    const auto cells = split(line);
    if (cells.size() != jn + 1) throw ParseError(source, lineno, "wrong number of cells");
    for (std::size_t j = 0; j < jn; ++j) {
      cm.proportions(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_double(cells[j + 1], source, lineno);
    }
  }
  if (!std::getline(in, line)) throw ParseError(source, lineno + 1, "missing count row");
  ++lineno;
  const auto cells = split(line);
  if (cells.size() != jn + 1 || cells[0] != "count") {
    throw ParseError(source, lineno, "expected 'count' row");
  }
  for (std::size_t j = 0; j < jn; ++j) {
    cm.counts.push_back(static_cast<std::size_t>(parse_double(cells[j + 1], source, lineno)));
  }
  return cm;
}

void write_cepstra_csv(std::ostream& out, const std::vector<LabeledCepstra>& sample) {
  out << "population,replicate,ell,value\n";
  for (const auto& s : sample) {
    for (std::size_t l = 0; l < s.cepstra.size(); ++l) {
      out << s.population << ',' << s.replicate << ',' << l << ','
          << format_double(s.cepstra[l]) << '\n';
    }
  }
}

}  // namespace robcep
