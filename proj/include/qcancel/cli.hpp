#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace qcancel {

inline constexpr const char* kToolName = "qcancel";
inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUnsupported = 1,  // well-formed request outside what can be computed
  kExitInput = 2,        // malformed spec, bad flag or bad argument
  kExitInternal = 3,     // internal consistency failure
};

struct CliOptions {
  std::string command;
  std::string spec_path;  // ring spec, or the golden directory for "bless"
  std::string format = "json";
  std::optional<std::string> out;
  std::optional<int> degree_bound;
  std::optional<int> index_bound;
  std::optional<std::size_t> generator;  // 1-based
};

struct RunSettings {
  int degree_bound = 4;
  int index_bound = 8;
  std::optional<std::size_t> generator;  // 1-based
};

/// Flags win over QCANCEL_DEGREE_BOUND / QCANCEL_INDEX_BOUND, which win over
/// the defaults.  Throws InputError on a malformed or non-positive bound.
RunSettings resolve_settings(const CliOptions& options);

/// Report document for one command on a spec given as text.
nlohmann::json build_report(const std::string& command, const std::string& spec_text, const RunSettings& settings,
                            const std::string& source = "<input>");

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(const std::string& data);

/// Executes one command; the report goes to `out` (or the --out file) and
/// diagnostics to `err`.  Returns an ExitCode.
int run(const CliOptions& options, std::ostream& out, std::ostream& err);

}  // namespace qcancel
