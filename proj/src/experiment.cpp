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

#include "tqft/experiment.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tqft/errors.hpp"

namespace tqft {

namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const std::set<std::string> kCommonKeys = {"model", "betas",  "method",
                                           "evolution", "output", "format"};
const std::set<std::string> kFermionKeys = {"n_sites", "spacing", "mass", "wilson_r",
                                            "boundary"};
const std::set<std::string> kInteractingKeys = {"coupling_g", "background_mass"};
const std::set<std::string> kScalarKeys = {"n_sites",      "n_Q",
                                           "boson_cutoff", "dimless_mass",
                                           "coupling_lambda", "boundary"};
const std::set<std::string> kEvolutionKeys = {"dtau", "order", "qite_domain",
                                              "regularization", "threads"};

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  // nlohmann reports the position one past the offending character.
  if (col > 1) --col;
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get_as(const json& obj, const std::string& key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
  return obj.contains(key) ? get_as<T>(obj, key) : fallback;
}

template <typename T>
T require(const json& obj, const std::string& key) {
  if (!obj.contains(key)) throw ConfigError("missing required key '" + key + "'");
  return get_as<T>(obj, key);
}

std::size_t get_count(const json& obj, const std::string& key,
                      std::optional<std::size_t> fallback) {
  if (!obj.contains(key)) {
    if (!fallback) throw ConfigError("missing required key '" + key + "'");
    return *fallback;
  }
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("key '" + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

FermionLatticeParams parse_lattice(const json& doc) {
  FermionLatticeParams p;
  p.n_sites = get_count(doc, "n_sites", std::nullopt);
  p.spacing = get_or<double>(doc, "spacing", 1.0);
  p.mass = get_or<double>(doc, "mass", 0.0);
  p.wilson_r = get_or<double>(doc, "wilson_r", 1.0);
  p.boundary = parse_boundary(get_or<std::string>(doc, "boundary", "periodic"));
  return p;
}

ImagTimeConfig parse_evolution(const json& doc) {
  ImagTimeConfig cfg;
  if (!doc.contains("evolution")) return cfg;
  const json& ev = doc.at("evolution");
  if (!ev.is_object()) throw ConfigError("key 'evolution' must be an object");
  reject_unknown(ev, kEvolutionKeys, "evolution");
  cfg.dtau = get_or<double>(ev, "dtau", cfg.dtau);
  cfg.order = parse_trotter_order(get_or<std::string>(ev, "order", to_string(cfg.order)));
  cfg.qite_domain = get_count(ev, "qite_domain", cfg.qite_domain);
  cfg.regularization = get_or<double>(ev, "regularization", cfg.regularization);
  cfg.threads = static_cast<unsigned>(get_count(ev, "threads", cfg.threads));
  return cfg;
}

json lattice_json(const FermionLatticeParams& p) {
  return {{"n_sites", p.n_sites},
          {"spacing", p.spacing},
          {"mass", p.mass},
          {"wilson_r", p.wilson_r},
          {"boundary", to_string(p.boundary)}};
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<double> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() +
                             ": " + ec.message());
  }
}

std::vector<Observable> gram_observables(const std::vector<QubitOperator>& factors) {
  std::vector<Observable> out;
  out.reserve(factors.size());
  for (const auto& b : factors) out.emplace_back(GramObservable{b});
  return out;
}

void append_fermion_rows(ResultTable& table, const ThermalResult& r,
                         const std::vector<double>& energies,
                         const std::vector<std::optional<double>>& momenta,
                         const std::vector<double>& analytic, std::size_t value_offset,
                         std::size_t mode_offset) {
  for (std::size_t k = 0; k < energies.size(); ++k) {
    ResultRow row;
    row.beta = r.beta;
    row.mode = mode_offset + k;
    row.momentum = momenta[k];
    row.energy = energies[k];
    row.f_sim = r.values[value_offset + k];
    row.f_analytic = analytic[k];
    row.abs_err = std::abs(row.f_sim - analytic[k]);
    table.rows.push_back(row);
  }
}

}  // namespace

std::string to_string(OutputFormat f) { return f == OutputFormat::kCsv ? "csv" : "json"; }

OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw ValidationError("format must be 'csv' or 'json'; got '" + std::string(s) + "'");
}

std::string ExperimentSpec::model_name() const {
  return std::visit(Overloaded{
                        [](const FermionLatticeParams&) { return std::string("fermion_free"); },
                        [](const InteractingParams&) { return std::string("fermion_interacting"); },
                        [](const ScalarParams&) { return std::string("scalar"); },
                    },
                    model);
}

std::size_t ExperimentSpec::total_qubits() const {
  return std::visit(Overloaded{
                        [](const FermionLatticeParams& p) { return p.n_sites; },
                        [](const InteractingParams& p) { return p.n_qubits(); },
                        [](const ScalarParams& p) { return p.total_qubits(); },
                    },
                    model);
}

nlohmann::json ExperimentSpec::echo() const {
  json params = std::visit(
      Overloaded{
          [](const FermionLatticeParams& p) { return lattice_json(p); },
          [](const InteractingParams& p) {
            json j = lattice_json(p.lattice);
            j["coupling_g"] = p.coupling_g;
            j["background_mass"] = p.background_mass;
            return j;
          },
          [](const ScalarParams& p) {
            return json{{"n_sites", p.n_sites},
                        {"n_Q", p.qubits_per_site},
                        {"site_dim", p.site_dim()},
                        {"boson_cutoff", p.cutoff()},
                        {"dimless_mass", p.dimless_mass},
                        {"coupling_lambda", p.coupling_lambda},
                        {"boundary", to_string(p.boundary)}};
          },
      },
      model);
  return {{"model", model_name()},
          {"params", params},
          {"betas", betas},
          {"method", to_string(method)},
          {"evolution",
           {{"dtau", evolution.dtau},
            {"order", to_string(evolution.order)},
            {"qite_domain", evolution.qite_domain},
            {"regularization", evolution.regularization}}},
          {"output", output},
          {"format", to_string(format)}};
}

ExperimentSpec parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error at " + line_column(text, e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

  ExperimentSpec spec;
  const std::string model = require<std::string>(doc, "model");
  std::set<std::string> allowed = kCommonKeys;
  if (model == "fermion_free") {
    allowed.insert(kFermionKeys.begin(), kFermionKeys.end());
    reject_unknown(doc, allowed, "configuration");
    spec.model = parse_lattice(doc);
  } else if (model == "fermion_interacting") {
    allowed.insert(kFermionKeys.begin(), kFermionKeys.end());
    allowed.insert(kInteractingKeys.begin(), kInteractingKeys.end());
    reject_unknown(doc, allowed, "configuration");
    InteractingParams p;
    p.lattice = parse_lattice(doc);
    p.coupling_g = get_or<double>(doc, "coupling_g", 0.0);
    p.background_mass = get_or<double>(doc, "background_mass", 0.0);
    spec.model = p;
  } else if (model == "scalar") {
    allowed.insert(kScalarKeys.begin(), kScalarKeys.end());
    reject_unknown(doc, allowed, "configuration");
    ScalarParams p;
    p.n_sites = get_count(doc, "n_sites", std::nullopt);
    p.qubits_per_site = get_count(doc, "n_Q", std::nullopt);
    p.boson_cutoff = get_count(doc, "boson_cutoff", 0);
    p.dimless_mass = require<double>(doc, "dimless_mass");
    p.coupling_lambda = get_or<double>(doc, "coupling_lambda", 0.0);
    p.boundary = parse_boundary(get_or<std::string>(doc, "boundary", "periodic"));
    spec.model = p;
  } else {
    throw ConfigError("model must be one of fermion_free, fermion_interacting, scalar; got '" +
                      model + "'");
  }

  if (!doc.contains("betas") || !doc.at("betas").is_array()) {
    throw ConfigError("missing required key 'betas' (array of numbers)");
  }
  spec.betas = get_as<std::vector<double>>(doc, "betas");
  spec.method = parse_thermal_method(get_or<std::string>(doc, "method", "exact"));
  spec.evolution = parse_evolution(doc);
  spec.output = get_or<std::string>(doc, "output", spec.output);
  spec.format = parse_output_format(get_or<std::string>(doc, "format", "csv"));
  validate_spec(spec);
  return spec;
}

void validate_spec(const ExperimentSpec& spec) {
  std::visit([](const auto& p) { p.validate(); }, spec.model);
  if (spec.betas.empty()) throw ValidationError("betas must not be empty");
  for (std::size_t i = 0; i < spec.betas.size(); ++i) {
    const double b = spec.betas[i];
    if (!std::isfinite(b) || b < 0.0) throw ValidationError("every beta must be finite and >= 0");
    if (i > 0 && b < spec.betas[i - 1]) throw ValidationError("betas must be ascending");
  }
  if (!(spec.evolution.dtau > 0.0) || !std::isfinite(spec.evolution.dtau)) {
    throw ValidationError("evolution.dtau must be > 0");
  }
  if (!(spec.evolution.regularization >= 0.0)) {
    throw ValidationError("evolution.regularization must be >= 0");
  }
  if (spec.method == ThermalMethod::kQite) {
    if (std::holds_alternative<ScalarParams>(spec.model)) {
      throw ValidationError(
          "method qite needs a Pauli-sum Hamiltonian; the scalar model supports exact and "
          "trace_sweep");
    }
    if (spec.evolution.qite_domain < 1 || spec.evolution.qite_domain > spec.total_qubits()) {
      throw ValidationError("evolution.qite_domain must lie in [1, total qubits]");
    }
  }
  if (spec.output.empty()) throw ValidationError("output stem must not be empty");
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  validate_spec(spec);
  if (spec.total_qubits() > kDenseQubitCap) {
    throw CapacityError("model needs " + std::to_string(spec.total_qubits()) +
                        " qubits; the dense cap is " + std::to_string(kDenseQubitCap));
  }
  const auto start = std::chrono::steady_clock::now();
  ResultTable table;

  std::visit(
      Overloaded{
          [&](const FermionLatticeParams& p) {
            const QubitOperator h = build_free_hamiltonian(p);
            const ModeBasis basis = diagonalize_modes(h, p);
            const auto obs = gram_observables(basis.annihilators);
            const auto results = beta_sweep(Hamiltonian::from_pauli(h), obs, spec.betas,
                                            spec.method, spec.evolution);
            for (const auto& r : results) {
              std::vector<double> fd;
              for (double e : basis.energies) fd.push_back(fermi_dirac_reference(e, r.beta));
              append_fermion_rows(table, r, basis.energies, basis.momenta, fd, 0, 0);
            }
          },
          [&](const InteractingParams& p) {
            const QubitOperator h = build_interacting_hamiltonian(p);
            const SectorSpectrum sectors = sector_spectrum(h, p);
            const SectorNumberOperators ops =
                quasiparticle_number_operators(sectors, p.lattice.n_sites);
            std::vector<Observable> obs = gram_observables(ops.factors0);
            for (const auto& b : ops.factors1) obs.emplace_back(GramObservable{b});
            const auto results = beta_sweep(Hamiltonian::from_pauli(h), obs, spec.betas,
                                            spec.method, spec.evolution);
            const std::size_t n = p.lattice.n_sites;
            for (const auto& r : results) {
              const QuasiDistributions ref = quasiparticle_reference(sectors, r.beta);
              append_fermion_rows(table, r, sectors.sector0_energies,
                                  sectors.sector0_modes.momenta, ref.f0, 0, 0);
              append_fermion_rows(table, r, sectors.sector1_energies,
                                  sectors.sector1_modes.momenta, ref.f1, n, n);
            }
            table.metadata["spectrum"] = {
                {"vacuum_energy", sectors.vacuum_energy},
                {"first_mass_eigenstate", sectors.first_mass_eigenstate},
                {"effective_mass", sectors.effective_mass},
                {"sector0_vacuum", sectors.sector0_vacuum},
                {"sector1_vacuum", sectors.sector1_vacuum}};
          },
          [&](const ScalarParams& p) {
            const ScalarHamiltonianTerms terms = scalar_hamiltonian_terms(p);
            const ScalarModes modes = scalar_modes(p);
            std::vector<Observable> obs;
            for (std::size_t k = 0; k < p.n_sites; ++k) {
              obs.emplace_back(GramObservable{scalar_mode_annihilator(p, k)});
            }
            const Hamiltonian h =
                Hamiltonian::from_dense_terms({terms.potential, terms.kinetic});
            const auto results = beta_sweep(h, obs, spec.betas, spec.method, spec.evolution);
            for (const auto& r : results) {
              for (std::size_t k = 0; k < p.n_sites; ++k) {
                ResultRow row;
                row.beta = r.beta;
                row.mode = k;
                if (p.boundary == Boundary::kPeriodic) row.momentum = modes.momenta[k];
                row.energy = modes.frequencies[k];
                row.f_sim = r.values[k];
                if (p.coupling_lambda == 0.0 && r.beta > 0.0) {
                  row.f_analytic = bose_einstein_reference(row.energy, r.beta);
                  row.abs_err = std::abs(row.f_sim - *row.f_analytic);
                }
                table.rows.push_back(row);
              }
            }
          },
      },
      spec.model);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json meta = spec.echo();
  if (table.metadata.contains("spectrum")) meta["spectrum"] = table.metadata["spectrum"];
  meta["tool_version"] = std::string(kToolVersion);
  meta["row_count"] = table.rows.size();
  meta["wall_time_s"] = wall;
  table.metadata = std::move(meta);
  return table;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const ResultTable& table) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : table.rows) {
    out += csv_field(format_double(r.beta)) + ',' + std::to_string(r.mode) + ',' +
           csv_optional(r.momentum) + ',' + format_double(r.energy) + ',' +
           format_double(r.f_sim) + ',' + csv_optional(r.f_analytic) + ',' +
           csv_optional(r.abs_err) + '\n';
  }
  return out;
}

nlohmann::json to_json(const ResultTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"beta", r.beta},
                    {"mode", r.mode},
                    {"momentum", optional_json(r.momentum)},
                    {"energy", r.energy},
                    {"f_sim", r.f_sim},
                    {"f_analytic", optional_json(r.f_analytic)},
                    {"abs_err", optional_json(r.abs_err)}});
  }
  return {{"metadata", table.metadata}, {"rows", rows}};
}

ResultTable table_from_json(const nlohmann::json& j) {
  ResultTable t;
  t.metadata = j.at("metadata");
  for (const auto& r : j.at("rows")) {
    ResultRow row;
    row.beta = r.at("beta").get<double>();
    row.mode = r.at("mode").get<std::size_t>();
    row.momentum = optional_from(r, "momentum");
    row.energy = r.at("energy").get<double>();
    row.f_sim = r.at("f_sim").get<double>();
    row.f_analytic = optional_from(r, "f_analytic");
    row.abs_err = optional_from(r, "abs_err");
    t.rows.push_back(row);
  }
  return t;
}

EmittedFiles emit_table(const ResultTable& table, OutputFormat format,
                        const std::filesystem::path& stem) {
  EmittedFiles files;
  files.table = stem;
  files.table += format == OutputFormat::kCsv ? ".csv" : ".json";
  files.metadata = stem;
  files.metadata += ".meta.json";
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  if (format == OutputFormat::kCsv) {
    write_atomically(files.table, to_csv(table));
  } else {
    // Wall time lives only in the sidecar so the table itself is reproducible.
    nlohmann::json doc = to_json(table);
    doc["metadata"].erase("wall_time_s");
    write_atomically(files.table, doc.dump(2) + "\n");
  }
  write_atomically(files.metadata, table.metadata.dump(2) + "\n");
  return files;
}

}  // namespace tqft
