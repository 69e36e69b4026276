#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tomokernel/errors.hpp"
#include "tomokernel/states.hpp"
#include "tomokernel/transform.hpp"

namespace tomokernel::cli {

enum class Subcommand {
  husimi_direct,
  husimi_kernel,
  husimi_mc,
  sample,
  kernel_eval,
  check_identities,
  inverse_divergence,
};

std::string_view to_string(Subcommand s) noexcept;
/// Throws DomainError for unknown names.
Subcommand parse_subcommand(std::string_view name);
const std::vector<std::string>& subcommand_names();

/// (q, p) probe and (θ, x) grid for `kernel-eval`.
struct KernelEvalSpec {
  double q = 0.0, p = 0.0;
  double theta_min = 0.0, theta_max = 6.283185307179586;
  int n_theta = 8;
  double x_min = -4.0, x_max = 4.0;
  int n_x = 9;
  int k_max = 48;
};

/// Evaluation point and radii for `inverse-divergence`.
struct InverseSpec {
  double theta = 0.0, x = 0.0, u = 0.0, v = 0.0;
  std::vector<double> radii{1.0, 2.0, 3.0, 4.0, 5.0};
};

struct RunConfig {
  Subcommand subcommand = Subcommand::husimi_direct;
  nlohmann::json state = {{"kind", "number"}, {"dim", kDefaultDim}, {"n", 0}};
  GridSpec grid;
  QuadratureScheme scheme;  // x_limit <= 0 means "derive from state dim"
  std::int64_t n_samples = 1000000;
  std::uint64_t seed = 0;
  std::string output_path;
  unsigned threads = 0;
  bool compare = false;
  KernelEvalSpec kernel_eval;
  InverseSpec inverse;
};

/// Strict parse of a config record: unknown keys and ill-typed values raise
/// DomainError. `subcommand` in the record, if present, must match.
RunConfig parse_config(const nlohmann::json& record, Subcommand subcommand);

/// Builds a state from a spec record with `kind` in {number, coherent,
/// thermal, mixture, pure_superposition}. `dim` defaults to 64 (or to the
/// parent's dim inside a mixture).
DensityMatrix build_state(const nlohmann::json& spec, std::optional<int> parent_dim = {});

/// Scheme with a resolved x_limit for the configured state.
QuadratureScheme resolved_scheme(const RunConfig& config);

/// Canonical JSON of the resolved configuration (written to the sidecar).
nlohmann::json to_json(const RunConfig& config);

/// 64-bit FNV-1a of the canonical state record, as 16 hex digits.
std::string state_hash(const nlohmann::json& state);

/// Fixed 17-significant-digit decimal formatting used for every CSV value.
std::string format_double(double v);

/// Tolerance used by `--compare` between kernel and direct Husimi values.
inline constexpr double kCompareTolerance = 1e-5;

/// Runs the configured computation, writes the CSV (and `<output>.meta.json`
/// unless the output is "-"), and returns the process exit status. Errors
/// are reported on `err` as a single line `error[<category>]: <message>`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int exit_code(ErrorCategory category) noexcept;

}  // namespace tomokernel::cli
