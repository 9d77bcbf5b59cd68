#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mklab::cli {

enum class Suite { thm12, prop_decomp, mobius, weingarten_asym, group_iso };

Suite parse_suite(const std::string& text);
std::string to_string(Suite suite);

/// Largest k_max each suite accepts.
int suite_cap(Suite suite);

struct LevelReport {
  int k = 0;
  long checks = 0;
  /// Suite-specific tally (e.g. the sum of |rho| - 1 for prop_decomp).
  long tally = 0;
  double millis = 0.0;
};

struct VerifyReport {
  Suite suite = Suite::thm12;
  std::vector<LevelReport> levels;
  /// Set on the first failing check; later levels are not run.
  std::optional<std::string> counterexample;

  bool passed() const noexcept { return !counterexample.has_value(); }
};

/// Runs the suite for every k from its smallest meaningful value up to
/// k_max. Random inputs (thm12 only) are drawn from a generator seeded
/// with `seed`. Throws SizeLimitError when k_max exceeds suite_cap.
VerifyReport run_suite(Suite suite, int k_max, std::uint64_t seed = 1, int samples = 20);

}  // namespace mklab::cli
