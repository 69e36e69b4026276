#include "tomokernel/cli.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include "tomokernel/errors.hpp"
#include "tomokernel/inverse.hpp"
#include "tomokernel/kernel.hpp"
#include "tomokernel/quadrature.hpp"
#include "tomokernel/rng.hpp"

namespace tomokernel::cli {

using nlohmann::json;

namespace {

constexpr int kInterfaceVersion = 1;

// Thresholds reported by check-identities.
constexpr double kCoherentIdentityTol = 1e-6;
constexpr double kMomentRelTol = 1e-8;
constexpr double kMomentAbsTol = 1e-9;
constexpr double kRadonTol = 1e-6;

void reject_unknown_keys(const json& obj, std::string_view where,
                         std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) throw DomainError(std::string(where) + " must be an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || item.key() == a;
    if (!ok) throw DomainError("unknown key '" + item.key() + "' in " + std::string(where));
  }
}

double get_number(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) throw DomainError(std::string(where) + " is missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) throw DomainError(std::string(where) + "." + key + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw DomainError(std::string(where) + "." + key + " must be finite");
  return d;
}

double get_number_or(const json& obj, const char* key, std::string_view where, double fallback) {
  return obj.contains(key) ? get_number(obj, key, where) : fallback;
}

std::int64_t get_integer(const json& obj, const char* key, std::string_view where) {
  if (!obj.contains(key)) throw DomainError(std::string(where) + " is missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw DomainError(std::string(where) + "." + key + " must be an integer");
  return v.get<std::int64_t>();
}

int get_int_or(const json& obj, const char* key, std::string_view where, int fallback) {
  if (!obj.contains(key)) return fallback;
  const std::int64_t v = get_integer(obj, key, where);
  if (v < INT32_MIN || v > INT32_MAX) throw DomainError(std::string(where) + "." + key + " out of range");
  return static_cast<int>(v);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw DomainError("cannot open output file '" + path + "'");
  file << text;
  if (!file) throw NumericError("failed writing '" + path + "'");
}

std::string field_csv(const ScalarField& field) {
  std::string csv = "q,p,value\n";
  for (int i = 0; i < field.grid.nq; ++i)
    for (int j = 0; j < field.grid.np; ++j)
      csv += format_double(field.grid.q_at(i)) + "," + format_double(field.grid.p_at(j)) + "," +
             format_double(field.at(i, j)) + "\n";
  return csv;
}

json scheme_json(const QuadratureScheme& s) {
  return {{"theta_nodes", s.theta_nodes}, {"x_nodes", s.x_nodes}, {"x_limit", s.x_limit}};
}

json grid_json(const GridSpec& g) {
  return {{"q_min", g.q_min}, {"q_max", g.q_max}, {"p_min", g.p_min},
          {"p_max", g.p_max}, {"nq", g.nq},       {"np", g.np}};
}

// Seeded |z|, |w| <= 2 pairs, uniform on the disk.
std::vector<std::pair<Complex, Complex>> random_pairs(std::uint64_t seed, int count) {
  Xoshiro256 rng(stream_seed(seed, 0xC0FFEE));
  auto draw = [&] {
    const double r = 2.0 * std::sqrt(rng.uniform());
    return std::polar(r, 2.0 * std::numbers::pi * rng.uniform());
  };
  std::vector<std::pair<Complex, Complex>> pairs;
  for (int i = 0; i < count; ++i) {
    const Complex z = draw();
    pairs.emplace_back(z, draw());
  }
  return pairs;
}

struct CheckRow {
  std::string name;
  int cases = 0;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool pass() const { return max_residual <= threshold; }
};

std::vector<CheckRow> run_identity_checks(const QuadratureScheme& scheme, std::uint64_t seed) {
  std::vector<CheckRow> rows;

  CheckRow coherent{"coherent_identity", 0, 0.0, kCoherentIdentityTol};
  for (const auto& [z, w] : random_pairs(seed, 20)) {
    coherent.max_residual = std::max(coherent.max_residual, coherent_identity_check(z, w, scheme));
    ++coherent.cases;
  }
  rows.push_back(coherent);

  CheckRow moment_rel{"hermite_gaussian_moment_rel", 0, 0.0, kMomentRelTol};
  CheckRow moment_abs{"hermite_gaussian_moment_abs_y0", 0, 0.0, kMomentAbsTol};
  for (int k = 0; k <= 10; ++k) {
    for (double y : {0.5, 1.0, 1.5, 2.0}) {
      moment_rel.max_residual = std::max(moment_rel.max_residual, hermite_gaussian_moment_check(k, y));
      ++moment_rel.cases;
    }
    if (k >= 1) {
      moment_abs.max_residual = std::max(moment_abs.max_residual, hermite_gaussian_moment_check(k, 0.0));
      ++moment_abs.cases;
    }
  }
  rows.push_back(moment_rel);
  rows.push_back(moment_abs);

  CheckRow radon{"radon_wigner", 0, 0.0, kRadonTol};
  const DensityMatrix states[] = {make_number_state(0, kDefaultDim), make_number_state(1, kDefaultDim),
                                  make_coherent_state({1.0, 0.0}, kDefaultDim)};
  const double thetas[] = {0.0, 0.7, std::numbers::pi / 3.0, 2.0, 4.5};
  const double xs[] = {0.0, 1.0, -1.5, 2.5, -0.3};
  for (const auto& rho : states)
    for (int i = 0; i < 5; ++i) {
      radon.max_residual = std::max(radon.max_residual, radon_wigner_check(rho, thetas[i], xs[i]));
      ++radon.cases;
    }
  rows.push_back(radon);
  return rows;
}

}  // namespace

std::string_view to_string(Subcommand s) noexcept {
  switch (s) {
    case Subcommand::husimi_direct: return "husimi-direct";
    case Subcommand::husimi_kernel: return "husimi-kernel";
    case Subcommand::husimi_mc: return "husimi-mc";
    case Subcommand::sample: return "sample";
    case Subcommand::kernel_eval: return "kernel-eval";
    case Subcommand::check_identities: return "check-identities";
    case Subcommand::inverse_divergence: return "inverse-divergence";
  }
  return "husimi-direct";
}

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {
      "husimi-direct", "husimi-kernel", "husimi-mc",         "sample",
      "kernel-eval",   "check-identities", "inverse-divergence"};
  return names;
}

Subcommand parse_subcommand(std::string_view name) {
  for (auto s : {Subcommand::husimi_direct, Subcommand::husimi_kernel, Subcommand::husimi_mc,
                 Subcommand::sample, Subcommand::kernel_eval, Subcommand::check_identities,
                 Subcommand::inverse_divergence})
    if (to_string(s) == name) return s;
  throw DomainError("unknown subcommand '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int exit_code(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::config: return 2;
    case ErrorCategory::truncation: return 3;
    case ErrorCategory::numeric: return 4;
  }
  return 4;
}

DensityMatrix build_state(const json& spec, std::optional<int> parent_dim) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string())
    throw DomainError("state spec needs a string 'kind'");
  const std::string kind = spec.at("kind").get<std::string>();
  const int dim = get_int_or(spec, "dim", "state", parent_dim.value_or(kDefaultDim));
  if (dim < 1 || dim > 512) throw DomainError("state.dim must lie in [1, 512]");
  if (parent_dim && dim != *parent_dim) throw DomainError("mixture component dim differs from parent");

  if (kind == "number") {
    reject_unknown_keys(spec, "state", {"kind", "dim", "n"});
    const std::int64_t n = get_integer(spec, "n", "state");
    if (n < 0 || n >= dim) throw DomainError("state.n must satisfy 0 <= n < dim");
    return make_number_state(static_cast<int>(n), dim);
  }
  if (kind == "coherent") {
    reject_unknown_keys(spec, "state", {"kind", "dim", "z_re", "z_im"});
    const Complex z{get_number_or(spec, "z_re", "state", 0.0), get_number_or(spec, "z_im", "state", 0.0)};
    return make_coherent_state(z, dim);
  }
  if (kind == "thermal") {
    reject_unknown_keys(spec, "state", {"kind", "dim", "nbar"});
    return make_thermal_state(get_number(spec, "nbar", "state"), dim);
  }
  if (kind == "pure_superposition") {
    reject_unknown_keys(spec, "state", {"kind", "dim", "amplitudes"});
    if (!spec.contains("amplitudes") || !spec.at("amplitudes").is_array() || spec.at("amplitudes").empty())
      throw DomainError("state.amplitudes must be a non-empty array");
    std::vector<std::pair<int, Complex>> amps;
    for (const auto& a : spec.at("amplitudes")) {
      reject_unknown_keys(a, "state.amplitudes[]", {"n", "re", "im"});
      const std::int64_t n = get_integer(a, "n", "state.amplitudes[]");
      if (n < 0 || n >= dim) throw DomainError("state.amplitudes[].n out of range");
      amps.emplace_back(static_cast<int>(n),
                        Complex{get_number_or(a, "re", "state.amplitudes[]", 0.0),
                                get_number_or(a, "im", "state.amplitudes[]", 0.0)});
    }
    return make_superposition(amps, dim);
  }
  if (kind == "mixture") {
    reject_unknown_keys(spec, "state", {"kind", "dim", "components"});
    if (!spec.contains("components") || !spec.at("components").is_array() || spec.at("components").empty())
      throw DomainError("state.components must be a non-empty array");
    std::vector<double> weights;
    std::vector<DensityMatrix> parts;
    for (const auto& c : spec.at("components")) {
      reject_unknown_keys(c, "state.components[]", {"weight", "state"});
      weights.push_back(get_number(c, "weight", "state.components[]"));
      if (!c.contains("state")) throw DomainError("state.components[] is missing 'state'");
      parts.push_back(build_state(c.at("state"), dim));
    }
    return make_mixture(weights, parts);
  }
  throw DomainError("unknown state kind '" + kind + "'");
}

RunConfig parse_config(const json& record, Subcommand subcommand) {
  RunConfig cfg;
  cfg.subcommand = subcommand;
  cfg.scheme.x_limit = 0.0;
  if (record.is_null()) return cfg;
  reject_unknown_keys(record, "config",
                      {"subcommand", "state", "grid", "scheme", "n_samples", "seed", "output_path",
                       "threads", "kernel_eval", "inverse"});
  if (record.contains("subcommand")) {
    if (!record.at("subcommand").is_string()) throw DomainError("config.subcommand must be a string");
    if (parse_subcommand(record.at("subcommand").get<std::string>()) != subcommand)
      throw DomainError("config.subcommand does not match the requested subcommand");
  }
  if (record.contains("state")) {
    cfg.state = record.at("state");
    (void)build_state(cfg.state);  // validate now
  }
  if (record.contains("grid")) {
    const json& g = record.at("grid");
    reject_unknown_keys(g, "grid", {"q_min", "q_max", "p_min", "p_max", "nq", "np"});
    cfg.grid.q_min = get_number_or(g, "q_min", "grid", cfg.grid.q_min);
    cfg.grid.q_max = get_number_or(g, "q_max", "grid", cfg.grid.q_max);
    cfg.grid.p_min = get_number_or(g, "p_min", "grid", cfg.grid.p_min);
    cfg.grid.p_max = get_number_or(g, "p_max", "grid", cfg.grid.p_max);
    cfg.grid.nq = get_int_or(g, "nq", "grid", cfg.grid.nq);
    cfg.grid.np = get_int_or(g, "np", "grid", cfg.grid.np);
    if (cfg.grid.nq > 100000 || cfg.grid.np > 100000) throw DomainError("grid too large");
    cfg.grid.validate();
  }
  if (record.contains("scheme")) {
    const json& s = record.at("scheme");
    reject_unknown_keys(s, "scheme", {"theta_nodes", "x_nodes", "x_limit"});
    cfg.scheme.theta_nodes = get_int_or(s, "theta_nodes", "scheme", cfg.scheme.theta_nodes);
    cfg.scheme.x_nodes = get_int_or(s, "x_nodes", "scheme", cfg.scheme.x_nodes);
    cfg.scheme.x_limit = get_number_or(s, "x_limit", "scheme", 0.0);
    QuadratureScheme probe = cfg.scheme;
    if (probe.x_limit <= 0.0) probe.x_limit = 6.0;
    probe.validate();
  }
  if (record.contains("n_samples")) {
    cfg.n_samples = get_integer(record, "n_samples", "config");
    if (cfg.n_samples < 2) throw DomainError("config.n_samples must be >= 2");
  }
  if (record.contains("seed")) {
    const json& s = record.at("seed");
    if (!s.is_number_integer()) throw DomainError("config.seed must be an integer");
    cfg.seed = s.is_number_unsigned() ? s.get<std::uint64_t>()
                                      : static_cast<std::uint64_t>(s.get<std::int64_t>());
  }
  if (record.contains("output_path")) {
    if (!record.at("output_path").is_string()) throw DomainError("config.output_path must be a string");
    cfg.output_path = record.at("output_path").get<std::string>();
  }
  if (record.contains("threads")) {
    const std::int64_t t = get_integer(record, "threads", "config");
    if (t < 0 || t > 1024) throw DomainError("config.threads must lie in [0, 1024]");
    cfg.threads = static_cast<unsigned>(t);
  }
  if (record.contains("kernel_eval")) {
    const json& k = record.at("kernel_eval");
    reject_unknown_keys(k, "kernel_eval",
                        {"q", "p", "theta_min", "theta_max", "n_theta", "x_min", "x_max", "n_x", "k_max"});
    auto& ke = cfg.kernel_eval;
    ke.q = get_number_or(k, "q", "kernel_eval", ke.q);
    ke.p = get_number_or(k, "p", "kernel_eval", ke.p);
    ke.theta_min = get_number_or(k, "theta_min", "kernel_eval", ke.theta_min);
    ke.theta_max = get_number_or(k, "theta_max", "kernel_eval", ke.theta_max);
    ke.n_theta = get_int_or(k, "n_theta", "kernel_eval", ke.n_theta);
    ke.x_min = get_number_or(k, "x_min", "kernel_eval", ke.x_min);
    ke.x_max = get_number_or(k, "x_max", "kernel_eval", ke.x_max);
    ke.n_x = get_int_or(k, "n_x", "kernel_eval", ke.n_x);
    ke.k_max = get_int_or(k, "k_max", "kernel_eval", ke.k_max);
    if (ke.n_theta < 1 || ke.n_x < 1 || ke.n_theta > 100000 || ke.n_x > 100000)
      throw DomainError("kernel_eval.n_theta and n_x must lie in [1, 100000]");
    if (ke.k_max < 0 || ke.k_max > kSeriesMaxTerms) throw DomainError("kernel_eval.k_max must lie in [0, 60]");
  }
  if (record.contains("inverse")) {
    const json& i = record.at("inverse");
    reject_unknown_keys(i, "inverse", {"theta", "x", "u", "v", "radii"});
    auto& inv = cfg.inverse;
    inv.theta = get_number_or(i, "theta", "inverse", inv.theta);
    inv.x = get_number_or(i, "x", "inverse", inv.x);
    inv.u = get_number_or(i, "u", "inverse", inv.u);
    inv.v = get_number_or(i, "v", "inverse", inv.v);
    if (i.contains("radii")) {
      const json& r = i.at("radii");
      if (!r.is_array() || r.empty()) throw DomainError("inverse.radii must be a non-empty array");
      inv.radii.clear();
      for (const auto& v : r) {
        if (!v.is_number()) throw DomainError("inverse.radii entries must be numbers");
        inv.radii.push_back(v.get<double>());
      }
    }
  }
  return cfg;
}

QuadratureScheme resolved_scheme(const RunConfig& config) {
  QuadratureScheme s = config.scheme;
  if (s.x_limit <= 0.0) {
    const int dim = build_state(config.state).dim();
    s.x_limit = QuadratureScheme::for_dim(dim).x_limit;
  }
  return s;
}

json to_json(const RunConfig& c) {
  const auto& k = c.kernel_eval;
  return {{"subcommand", std::string(to_string(c.subcommand))},
          {"state", c.state},
          {"grid", grid_json(c.grid)},
          {"scheme", scheme_json(resolved_scheme(c))},
          {"n_samples", c.n_samples},
          {"seed", c.seed},
          {"output_path", c.output_path},
          {"threads", c.threads},
          {"kernel_eval",
           {{"q", k.q}, {"p", k.p}, {"theta_min", k.theta_min}, {"theta_max", k.theta_max},
            {"n_theta", k.n_theta}, {"x_min", k.x_min}, {"x_max", k.x_max}, {"n_x", k.n_x},
            {"k_max", k.k_max}}},
          {"inverse",
           {{"theta", c.inverse.theta}, {"x", c.inverse.x}, {"u", c.inverse.u},
            {"v", c.inverse.v}, {"radii", c.inverse.radii}}}};
}

std::string state_hash(const json& state) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : state.dump()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  try {
    if (config.output_path.empty()) throw DomainError("no output path given (use --output or output_path)");
    const DensityMatrix rho = build_state(config.state);
    const QuadratureScheme scheme = resolved_scheme(config);
    const unsigned threads = config.threads;
    int status = 0;
    std::string status_message;
    std::string csv;

    switch (config.subcommand) {
      case Subcommand::husimi_direct:
      case Subcommand::husimi_kernel: {
        const ScalarField direct_or_kernel =
            config.subcommand == Subcommand::husimi_direct
                ? husimi_field_direct(rho, config.grid, threads)
                : husimi_field_from_kernel(rho, config.grid, scheme, threads);
        csv = field_csv(direct_or_kernel);
        if (config.compare) {
          const ScalarField other =
              config.subcommand == Subcommand::husimi_direct
                  ? husimi_field_from_kernel(rho, config.grid, scheme, threads)
                  : husimi_field_direct(rho, config.grid, threads);
          double worst = 0.0;
          for (std::size_t i = 0; i < other.values.size(); ++i)
            worst = std::max(worst, std::abs(other.values[i] - direct_or_kernel.values[i]));
          if (worst > kCompareTolerance) {
            std::ostringstream msg;
            msg << "kernel and direct Husimi differ by " << worst << " > " << kCompareTolerance;
            status = exit_code(ErrorCategory::numeric);
            status_message = msg.str();
          }
        }
        break;
      }
      case Subcommand::husimi_mc: {
        const auto samples = sample_eht(rho, config.n_samples, config.seed, {}, threads);
        const auto estimates = husimi_field_mc(samples, config.grid, threads);
        csv = "q,p,value,stderr\n";
        for (int i = 0; i < config.grid.nq; ++i)
          for (int j = 0; j < config.grid.np; ++j) {
            const auto& e = estimates[static_cast<std::size_t>(i) * config.grid.np + j];
            csv += format_double(config.grid.q_at(i)) + "," + format_double(config.grid.p_at(j)) +
                   "," + format_double(e.mean) + "," + format_double(e.std_error) + "\n";
          }
        break;
      }
      case Subcommand::sample: {
        const auto samples = sample_eht(rho, config.n_samples, config.seed, {}, threads);
        csv.reserve(samples.size() * 44);
        csv = "theta,x\n";
        for (const auto& s : samples) csv += format_double(s.theta) + "," + format_double(s.x) + "\n";
        break;
      }
      case Subcommand::kernel_eval: {
        const auto& k = config.kernel_eval;
        const PhasePoint pt{k.q, k.p};
        csv = "theta,x,M_closed,M_series,abs_diff\n";
        for (int a = 0; a < k.n_theta; ++a) {
          const double theta =
              k.n_theta == 1 ? k.theta_min : k.theta_min + (k.theta_max - k.theta_min) * a / (k.n_theta - 1);
          for (int b = 0; b < k.n_x; ++b) {
            const double x = k.n_x == 1 ? k.x_min : k.x_min + (k.x_max - k.x_min) * b / (k.n_x - 1);
            const double closed = kernel_closed(pt, theta, x);
            const double y = kernel_argument(pt, theta, x);
            // Outside the validated window the series is not evaluated.
            const double series = std::abs(y) <= kSeriesWindow ? kernel_series_profile(y, k.k_max) : NAN;
            csv += format_double(theta) + "," + format_double(x) + "," + format_double(closed) + "," +
                   format_double(series) + "," + format_double(std::abs(closed - series)) + "\n";
          }
        }
        break;
      }
      case Subcommand::check_identities: {
        csv = "check,cases,max_residual,threshold,pass\n";
        for (const auto& row : run_identity_checks(scheme, config.seed)) {
          csv += row.name + "," + std::to_string(row.cases) + "," + format_double(row.max_residual) + "," +
                 format_double(row.threshold) + "," + (row.pass() ? "true" : "false") + "\n";
          if (!row.pass()) {
            status = exit_code(ErrorCategory::numeric);
            status_message = "identity check '" + row.name + "' exceeded its threshold";
          }
        }
        break;
      }
      case Subcommand::inverse_divergence: {
        const auto& inv = config.inverse;
        const DivergenceScan scan = divergence_scan(inv.theta, inv.x, inv.u, inv.v, inv.radii);
        csv = "R,magnitude,log_magnitude_minus_half_R_squared\n";
        for (std::size_t i = 0; i < scan.radii.size(); ++i) {
          const double R = scan.radii[i];
          csv += format_double(R) + "," + format_double(scan.magnitudes[i]) + "," +
                 format_double(std::log(scan.magnitudes[i]) - 0.5 * R * R) + "\n";
        }
        break;
      }
    }

    write_text(config.output_path, csv, out);
    if (config.output_path != "-") {
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      json meta = {{"artifact", "tomokernel"},
                   {"version", TOMOKERNEL_VERSION},
                   {"interface_version", kInterfaceVersion},
                   {"config", to_json(config)},
                   {"state_hash", state_hash(config.state)},
                   {"wall_time_seconds", wall},
                   {"exit_status", status}};
      write_text(config.output_path + ".meta.json", meta.dump(2) + "\n", out);
    }
    if (status != 0) err << "error[numeric]: " << status_message << "\n";
    return status;
  } catch (const Error& e) {
    err << "error[" << tomokernel::to_string(e.category()) << "]: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const json::exception& e) {
    err << "error[config]: " << e.what() << "\n";
    return exit_code(ErrorCategory::config);
  } catch (const std::exception& e) {
    err << "error[numeric]: " << e.what() << "\n";
    return exit_code(ErrorCategory::numeric);
  }
}

}  // namespace tomokernel::cli
