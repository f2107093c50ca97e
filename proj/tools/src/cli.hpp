#pragma once
// Command-line front end: parsing into a RunConfig, validation, dispatch.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace kforest::cli {

/// Bad flag, value or subcommand; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Format { json, csv };
enum class Profile { fast, paper };

inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr const char* kSeedEnv = "KFOREST_SEED";

struct RunConfig {
  std::string subcommand;
  double tolerance = 1e-8;
  std::optional<double> delta;    ///< E1 grid step (verify-a)
  std::optional<double> spacing;  ///< phi grid step (verify-b)
  std::optional<std::int64_t> samples;
  std::int64_t n = 200;
  int k = 2;
  double c = 4.0;
  int kappa = 3;
  int trials = 50;
  std::uint64_t seed = kDefaultSeed;
  Format format = Format::json;
  std::string output;  ///< empty = stdout
  std::string input;   ///< edge list for `rank`, "-" = stdin
  int threads = 0;
  Profile profile = Profile::fast;
  bool include_upper_edge = false;
  bool dump_values = false;
  bool timing = true;
  bool orient = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv. The seed comes from --seed, else $KFOREST_SEED, else 0.
/// Throws UsageError; --help is reported through `help` (set to the text).
RunConfig parse_args(int argc, const char* const* argv, std::string* help = nullptr);

/// Range checks on every numeric field. Throws UsageError.
void validate(const RunConfig& cfg);

/// Runs the subcommand and writes its report to `out`. Returns kExitOk, or
/// kExitFail when a verification verdict fails.
int dispatch(const RunConfig& cfg, std::ostream& out);

/// parse + validate + dispatch with error reporting on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kforest::cli
