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

// Command-line front end: `tqft run <config>` and `tqft validate <config>`.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tqft/errors.hpp"
#include "tqft/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumerical = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tqft::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report(const char* kind, const std::exception& e, int code) {
  std::cerr << "tqft: " << kind << ": " << e.what() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal expectation values of lattice field theories on a simulated register"};
  app.set_version_flag("--version", std::string(tqft::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string method;
  std::string out_stem;
  std::string format;

  auto* run = app.add_subcommand("run", "Evaluate a configuration and write the result table");
  run->add_option("config", config_path, "JSON configuration file")->required();
  run->add_option("--method", method, "exact, trace-sweep or qite")
      ->check(CLI::IsMember({"exact", "trace-sweep", "trace_sweep", "qite"}));
  run->add_option("--out", out_stem, "Output path stem (overrides the config)");
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* validate =
      app.add_subcommand("validate", "Parse and validate a configuration without running it");
  validate->add_option("config", config_path, "JSON configuration file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    tqft::ExperimentSpec spec = tqft::parse_config(read_file(config_path));
    if (*validate) {
      std::cout << spec.echo().dump(2) << "\n";
      return kExitOk;
    }
    if (!method.empty()) spec.method = tqft::parse_thermal_method(method);
    if (!out_stem.empty()) spec.output = out_stem;
    if (!format.empty()) spec.format = tqft::parse_output_format(format);
    tqft::validate_spec(spec);

    const tqft::ResultTable table = tqft::run_experiment(spec);
    const tqft::EmittedFiles files = tqft::emit_table(table, spec.format, spec.output);
    std::cout << "wrote " << files.table.string() << " (" << table.rows.size() << " rows) and "
              << files.metadata.string() << "\n";
    return kExitOk;
  } catch (const tqft::ConfigError& e) {
    return report("config error", e, kExitConfig);
  } catch (const tqft::ValidationError& e) {
    return report("invalid configuration", e, kExitConfig);
  } catch (const tqft::CapacityError& e) {
    return report("capacity exceeded", e, kExitCapacity);
  } catch (const tqft::NumericalError& e) {
    return report("numerical failure", e, kExitNumerical);
  } catch (const tqft::UnsupportedModelError& e) {
    return report("unsupported model", e, kExitConfig);
  } catch (const std::exception& e) {
    return report("error", e, kExitNumerical);
  }
}
