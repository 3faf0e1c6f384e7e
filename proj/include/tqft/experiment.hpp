// Copyright 2026 The tqft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TQFT_EXPERIMENT_HPP
#define TQFT_EXPERIMENT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "tqft/fermion_free.hpp"
#include "tqft/fermion_interacting.hpp"
#include "tqft/scalar_model.hpp"
#include "tqft/thermal_engine.hpp"

namespace tqft {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class OutputFormat { kCsv, kJson };

std::string to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view s);

using ModelParams = std::variant<FermionLatticeParams, InteractingParams, ScalarParams>;

struct ExperimentSpec {
  ModelParams model;
  std::vector<double> betas;
  ThermalMethod method = ThermalMethod::kExact;
  ImagTimeConfig evolution;
  std::string output = "tqft_result";
  OutputFormat format = OutputFormat::kCsv;

  std::string model_name() const;
  std::size_t total_qubits() const;
  // Fully resolved configuration, defaults included.
  nlohmann::json echo() const;
};

// Parses and validates a JSON configuration document. Throws ConfigError for
// malformed documents and unknown keys, ValidationError for values that
// violate a model invariant.
ExperimentSpec parse_config(std::string_view text);
// Re-checks cross-field constraints after command-line overrides.
void validate_spec(const ExperimentSpec& spec);

struct ResultRow {
  double beta = 0.0;
  std::size_t mode = 0;
  std::optional<double> momentum;
  double energy = 0.0;
  double f_sim = 0.0;
  std::optional<double> f_analytic;
  std::optional<double> abs_err;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;
  nlohmann::json metadata = nlohmann::json::object();
};

// Builds the model, evaluates every beta and pairs each mode occupation with
// its analytic reference. Throws CapacityError before allocating when the
// register exceeds the dense cap.
ResultTable run_experiment(const ExperimentSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "beta,mode,momentum,energy,f_sim,f_analytic,abs_err";

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);
std::string to_csv(const ResultTable& table);
nlohmann::json to_json(const ResultTable& table);
ResultTable table_from_json(const nlohmann::json& j);

struct EmittedFiles {
  std::filesystem::path table;
  std::filesystem::path metadata;
};

// Writes <stem>.csv or <stem>.json plus <stem>.meta.json. Each file is
// written to a temporary name and renamed into place.
EmittedFiles emit_table(const ResultTable& table, OutputFormat format,
                        const std::filesystem::path& stem);

}  // namespace tqft

#endif  // TQFT_EXPERIMENT_HPP
