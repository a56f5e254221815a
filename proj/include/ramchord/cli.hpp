#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ramchord::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitCrash = 1, kExitBudget = 2, kExitInvalid = 3 };

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);
/// SHA-256 of the compact JSON dump (object keys sorted).
std::string result_digest(const nlohmann::json& result);

struct RunManifest {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;
  double wall_seconds = 0.0;
  std::string result_digest;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

struct CommonOptions {
  std::uint64_t budget_nodes = 0;  // 0 = unlimited
  double budget_seconds = 0.0;     // 0 = unlimited
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

/// `result` is digested; `diagnostics` (timings, node counts) is not.
struct CommandOutput {
  nlohmann::json result = nlohmann::json::object();
  nlohmann::json diagnostics = nlohmann::json::object();
  std::vector<std::string> headers;
  std::vector<std::vector<std::string>> rows;
  int exit_code = kExitOk;
  std::string message;
};

/// Left-aligned columns separated by two spaces.
std::string format_table(const std::vector<std::string>& headers, const std::vector<std::vector<std::string>>& rows);

/// r(C_n) from the cycle formulas: 6 for n = 3, 4; 3n/2 - 1 for even n >= 6; 2n - 1 for odd n >= 5.
int cycle_ramsey_value(int n);

struct RamseyArgs {
  std::string pattern;
  int n_max = 0;  // 0: 4|H|
  std::string checkpoint;
};
CommandOutput cmd_ramsey(const RamseyArgs& args, const CommonOptions& common);

struct ClassifyArgs {
  std::string pattern;
  int k_max = 8;
};
CommandOutput cmd_classify(const ClassifyArgs& args);

struct SweepArgs {
  std::vector<std::string> cases;  // chord shorthand
  int n_min = 0;
  int n_max = 0;
  std::vector<std::string> families;  // none, short, long, antipodal
  bool search = true;
  int k_max = 4;
  int n_cap = 0;  // largest N tried by the search; 0: 3|H|
};
/// Expands ranges and families into shorthand labels, in order, without duplicates.
std::vector<std::string> sweep_cases(const SweepArgs& args);
/// Budgets apply per case. Cases run in parallel when workers > 1; rows stay in case order.
CommandOutput cmd_sweep(const SweepArgs& args, const CommonOptions& common);

struct ConstructArgs {
  std::string kind;  // even_maxcut, odd_maxcut_plus_vertex, k_part, blocks
  int n = 0;
  int k = 0;
  std::vector<int> blocks;
};
CommandOutput cmd_construct(const ConstructArgs& args);

struct CertifyArgs {
  std::string coloring;  // JSON file or inline JSON
  std::string construct_kind;
  int n = 0;
  int k = 0;
  std::string pattern;
  std::string mode = "structural";
};
CommandOutput cmd_certify(const CertifyArgs& args);

struct PrepareArgs {
  std::string pattern;  // empty: random instance from the seed
  double z = 0.0;       // 0: n / (4 |D|)
  int k_max = 8;
  int n_min = 50;
  int n_max = 2000;
};
CommandOutput cmd_prepare(const PrepareArgs& args, const CommonOptions& common);

struct EmbedArgs {
  std::string chain;  // ClusterChain JSON file; empty: random chain from the seed
  int ell = 4;
  int cluster_size = 150;
  double density = 0.5;
  std::vector<int> lengths;
  double eps = 0.0015;
  std::size_t regularity_samples = 200;
};
CommandOutput cmd_embed(const EmbedArgs& args, const CommonOptions& common);

struct ConstantsArgs {
  int delta = 3;
  int k = 1;
  double c2 = 1.0;
  double m_reg = 1.0;
  double n_even = 1.0;
  double n_benevides = 1.0;
  double n_reg = 1.0;
};
CommandOutput cmd_constants(const ConstantsArgs& args);

struct AllocateArgs {
  std::vector<int> lengths;
  int ell = 4;
  int cluster_size = 0;
  double eps = 0.0015;
};
CommandOutput cmd_allocate(const AllocateArgs& args);

/// Runs `body`, mapping InvalidInput and parse errors to exit 3, budget and cap
/// exhaustion to exit 2 and anything else to exit 1, and fills the manifest.
struct Run {
  RunManifest manifest;
  CommandOutput output;
};
template <class F>
Run run_command(const std::string& command, nlohmann::json parameters, std::optional<std::uint64_t> seed, F&& body);

/// {"manifest": ..., "result": ..., "diagnostics": ...}
nlohmann::json run_to_json(const Run& run);

/// Writes <dir>/<command>.manifest.json and <dir>/<command>.result.json.
void write_run(const Run& run, const std::string& dir);

namespace detail {
Run finish(const std::string& command, nlohmann::json parameters, std::optional<std::uint64_t> seed, double seconds,
           CommandOutput output);
CommandOutput error_output(int code, const std::string& kind, const std::string& what);
double seconds_since_start(std::int64_t start_ns);
std::int64_t now_ns();
int classify_exception(std::exception_ptr ep, std::string& kind, std::string& what);
}  // namespace detail

template <class F>
Run run_command(const std::string& command, nlohmann::json parameters, std::optional<std::uint64_t> seed, F&& body) {
  const auto start = detail::now_ns();
  CommandOutput out;
  try {
    out = body();
  } catch (...) {
    std::string kind, what;
    const int code = detail::classify_exception(std::current_exception(), kind, what);
    out = detail::error_output(code, kind, what);
  }
  return detail::finish(command, std::move(parameters), seed, detail::seconds_since_start(start), std::move(out));
}

}  // namespace ramchord::cli
