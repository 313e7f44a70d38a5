#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tableforge/errors.hpp"

namespace tableforge {

struct UnsupportedChecker : Error {
  using Error::Error;
};

// Registered checker ids (v1):
//   json_format          response parses as JSON (code fences tolerated)
//   keyword_inclusion    params.keywords all present, case-insensitive
//   keyword_exclusion    params.keywords all absent, case-insensitive
//   min_words            at least params.count whitespace-separated words
//   max_words            at most params.count words
//   bullet_count         exactly params.count "* " / "- " bullet lines
//   all_uppercase        no lowercase ASCII letters
//   all_lowercase        no uppercase ASCII letters
// All other checker families are unsupported and excluded from scoring.
std::vector<std::string> registered_checkers();
bool checker_supported(std::string_view id);

// Runs one checker; throws UnsupportedChecker for unknown ids.
bool run_checker(std::string_view id, const nlohmann::json& params, const std::string& response);

}  // namespace tableforge
