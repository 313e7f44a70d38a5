#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tableforge/errors.hpp"

namespace tableforge {

enum class MetricKind { kAcc, kBleu, kRougeL, kMicroF1, kStrictIf, kMcLoglik };
enum class Scale { kUnit, kPercent };

std::string_view metric_kind_name(MetricKind kind);
MetricKind metric_kind_from_name(std::string_view name);
inline double scale_max(Scale s) { return s == Scale::kUnit ? 1.0 : 100.0; }

struct MetricValue {
  MetricKind kind = MetricKind::kAcc;
  double value = 0.0;
  Scale scale = Scale::kPercent;
  std::size_t n = 0;
};

// Exact-match normalization knobs, fixed per dataset in the registry.
struct NormalizationPolicy {
  bool lowercase = true;
  bool collapse_whitespace = true;
  bool strip_outer_punctuation = true;
  bool strip_articles = false;
};

struct LengthMismatch : Error {
  using Error::Error;
};
struct EmptyReferences : Error {
  EmptyReferences() : Error("reference set is empty") {}
};
struct MissingGoldEntities : Error {
  using Error::Error;
};
struct EmptyCandidates : Error {
  EmptyCandidates() : Error("candidate loglik list is empty") {}
};
struct NonFiniteScore : Error {
  using Error::Error;
};
struct AlignmentError : Error {
  using Error::Error;
};

std::string normalize_text(std::string_view text, const NormalizationPolicy& policy);

// Shared metric tokenizer: splits on ASCII whitespace and makes each ASCII
// punctuation character its own token; all other bytes (including multi-byte
// UTF-8) accumulate into word tokens. Case-sensitive.
std::vector<std::string> metric_tokenize(std::string_view text);

// Fraction of pairs whose normalized prediction equals the normalized
// reference, on the 0-100 scale.
MetricValue exact_match_accuracy(std::span<const std::string> predictions,
                                 std::span<const std::string> references,
                                 const NormalizationPolicy& policy);

// Sentence BLEU-4 with clipped modified n-gram precisions against the
// reference set, geometric mean, and brevity penalty exp(1 - r/c) for c < r
// (closest reference length, ties to the shorter). Zero higher-order
// numerators are smoothed to 1/2^k on the k-th zero; a zero unigram
// numerator (or an empty prediction) scores 0. 0-100 scale.
MetricValue bleu4(const std::string& prediction, const std::vector<std::string>& references);

// Corpus BLEU-4: n-gram match/total counts are summed over all pairs before
// the geometric mean, as are candidate/reference lengths for the brevity
// penalty.
MetricValue corpus_bleu4(const std::vector<std::string>& predictions,
                         const std::vector<std::vector<std::string>>& references);

// LCS F-measure over tokens: P = LCS/|pred|, R = LCS/|ref|,
// F = 2PR/(P+R) with F = 0 when P+R = 0. Unit scale.
MetricValue rouge_l(const std::string& prediction, const std::string& reference);

// Mean of per-example rouge_l F scores.
MetricValue corpus_rouge_l(const std::vector<std::string>& predictions,
                           const std::vector<std::string>& references);

// Entity-level micro F1. An entity counts as predicted iff its normalized
// form occurs as a substring of the normalized prediction; false positives
// are non-gold candidates found the same way.
struct EntityExample {
  std::vector<std::string> gold;
  std::vector<std::string> candidates;  // per-example candidate vocabulary
};
MetricValue micro_f1_entities(const std::vector<std::string>& predictions,
                              const std::vector<EntityExample>& examples);

// One verifiable instruction, tagged with a checker id from the registry.
struct VerifiableInstruction {
  std::string checker_id;
  nlohmann::json params;  // checker-specific; may be null
};

struct StrictIfResult {
  MetricValue value;           // followed / supported, 0-100, n = supported
  std::size_t total = 0;       // all instructions seen
  std::size_t supported = 0;   // instructions with a registered checker
  std::size_t followed = 0;
  double coverage() const { return total == 0 ? 1.0 : double(supported) / double(total); }
};

// Instance-level strict accuracy: the fraction of verifiable instructions
// that are followed, at the instruction level. Unsupported checker ids are
// excluded from the score and surface only in the coverage ratio.
StrictIfResult strict_instruction_accuracy(
    const std::vector<std::string>& responses,
    const std::vector<std::vector<VerifiableInstruction>>& instructions);

// Argmax over candidate loglikelihoods, ties broken by lowest index.
// No normalization by length or characters is applied.
std::size_t mc_select(std::span<const double> candidate_logliks);

}  // namespace tableforge
