#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "opmaj/majorization.hpp"
#include "opmaj/matrix.hpp"
#include "opmaj/recurrence.hpp"
#include "opmaj/verify.hpp"

namespace opmaj::cli {

enum class Command { Zeros, Weights, Matrix, Verify, Quad };
enum class OutputFormat { Json, Csv };

/// Invalid flags, missing arguments, unreadable or malformed input. Maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::Zeros;
  std::optional<Family> family;  // unset together with custom_path: verify sweeps the defaults
  FamilyParams params;
  std::optional<std::string> custom_path;
  std::size_t n = 0;
  std::optional<std::size_t> k;
  std::optional<Theorem> theorem;
  EntryRoute route = EntryRoute::Eigenvector;
  std::size_t n_max = 40;
  std::size_t degree = 0;
  Tolerances tol;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> out_path;
  std::uint64_t seed = kDefaultSeed;
};

/// Enforces: k given iff theorem C, 1 <= k <= n, n >= 1, positive tolerances,
/// exactly one scheme source (except verify). Throws UsageError.
void validate(const RunConfig& config);

/// Reads {"a": [...], "b": [...]} from a UTF-8 JSON file. Throws UsageError
/// with the offending index for nonpositive a entries.
RecurrenceScheme load_custom_scheme(const std::string& path);

/// Matrix report with fixed keys: theorem, family, params, n, k,
/// source_zeros, target, matrix, row_sum_max_err, col_sum_max_err,
/// relation_max_err, majorization {holds, min_margin}, convex [{f, margin}].
nlohmann::json matrix_report(const StochasticMatrixResult& m, const RecurrenceScheme& scheme,
                             const RunConfig& config);

/// Row-major matrix with header "j=1,...,j=n"; 17 significant digits.
std::string matrix_csv(const Matrix& m);

nlohmann::json verify_report_json(const VerifyReport& report);

/// Dispatches a validated configuration. Returns 0, 1 (a check failed) or 2.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11), validates, runs. OPMAJ_SEED in the environment sets
/// the seed for spot-check points.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace opmaj::cli
