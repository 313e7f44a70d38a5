#include "tableforge/checkers.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tableforge/metrics.hpp"

namespace tableforge {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string strip_code_fences(const std::string& response) {
  std::string s = response;
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.rfind("```", 0) == 0) {
    std::size_t first_nl = s.find('\n');
    std::size_t last_fence = s.rfind("```");
    if (first_nl != std::string::npos && last_fence > first_nl)
      s = s.substr(first_nl + 1, last_fence - first_nl - 1);
    trim(s);
  }
  return s;
}

bool check_json_format(const std::string& response) {
  std::string body = strip_code_fences(response);
  if (body.empty()) return false;
  return nlohmann::json::accept(body);
}

std::size_t word_count(const std::string& response) {
  std::istringstream in(response);
  std::string word;
  std::size_t n = 0;
  while (in >> word) ++n;
  return n;
}

std::size_t bullet_count(const std::string& response) {
  std::size_t n = 0;
  std::istringstream in(response);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = 0;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i + 1 < line.size() && (line[i] == '*' || line[i] == '-') && line[i + 1] == ' ') ++n;
  }
  return n;
}

bool contains_keyword(const std::string& response_lower, const std::string& keyword) {
  return response_lower.find(lower(keyword)) != std::string::npos;
}

std::vector<std::string> keywords_param(const nlohmann::json& params) {
  std::vector<std::string> out;
  if (params.is_object() && params.contains("keywords"))
    for (const auto& k : params.at("keywords")) out.push_back(k.get<std::string>());
  return out;
}

}  // namespace

std::vector<std::string> registered_checkers() {
  return {"json_format", "keyword_inclusion", "keyword_exclusion", "min_words",
          "max_words",   "bullet_count",      "all_uppercase",     "all_lowercase"};
}

bool checker_supported(std::string_view id) {
  auto ids = registered_checkers();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool run_checker(std::string_view id, const nlohmann::json& params, const std::string& response) {
  if (id == "json_format") return check_json_format(response);
  if (id == "keyword_inclusion") {
    const std::string rl = lower(response);
    for (const auto& k : keywords_param(params))
      if (!contains_keyword(rl, k)) return false;
    return true;
  }
  if (id == "keyword_exclusion") {
    const std::string rl = lower(response);
    for (const auto& k : keywords_param(params))
      if (contains_keyword(rl, k)) return false;
    return true;
  }
  if (id == "min_words") return word_count(response) >= params.value("count", 0u);
  if (id == "max_words") return word_count(response) <= params.value("count", 0u);
  if (id == "bullet_count") return bullet_count(response) == params.value("count", 0u);
  if (id == "all_uppercase") {
    return std::none_of(response.begin(), response.end(), [](unsigned char c) {
      return c < 128 && std::islower(c);
    });
  }
  if (id == "all_lowercase") {
    return std::none_of(response.begin(), response.end(), [](unsigned char c) {
      return c < 128 && std::isupper(c);
    });
  }
  throw UnsupportedChecker("no checker registered for id \"" + std::string(id) + "\"");
}

StrictIfResult strict_instruction_accuracy(
    const std::vector<std::string>& responses,
    const std::vector<std::vector<VerifiableInstruction>>& instructions) {
  if (responses.size() != instructions.size())
    throw LengthMismatch("strict accuracy: response/instruction count mismatch");
  StrictIfResult result;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    for (const auto& instruction : instructions[i]) {
      ++result.total;
      if (!checker_supported(instruction.checker_id)) continue;  // degrades coverage only
      ++result.supported;
      if (run_checker(instruction.checker_id, instruction.params, responses[i]))
        ++result.followed;
    }
  }
  double value = result.supported == 0
                     ? 0.0
                     : 100.0 * double(result.followed) / double(result.supported);
  result.value = {MetricKind::kStrictIf, value, Scale::kPercent, result.supported};
  return result;
}

}  // namespace tableforge
