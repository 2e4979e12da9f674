// `sincpow` command-line front end. Kept in the library so the commands can be
// driven in-process from tests.
#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sincpow/verify.hpp"

namespace sincpow::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailure = 1,
  kExitUsage = 2,
  kExitEvaluationFailure = 3,
};

enum class Level { kFast, kRelease };

/// Truncation cap from SINCPOW_MAX_TERMS, or kDefaultMaxTerms when unset.
/// Throws std::invalid_argument on a malformed value.
std::int64_t max_terms_from_env();

/// Runs every verification suite at the given density, handing each report
/// to `sink` as soon as it is produced. With `inject_failure` the Parseval
/// tolerance is corrupted so that suite must fail (harness self-test).
std::vector<verify::VerificationReport> run_all_suites(
    Level level, bool inject_failure,
    const std::function<void(const verify::VerificationReport&)>& sink = {});

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sincpow::cli
