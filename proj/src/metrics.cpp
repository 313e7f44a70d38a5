#include "tableforge/metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>

namespace tableforge {
namespace {

bool is_ascii_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_ascii_punct(unsigned char c) { return c < 128 && std::ispunct(c); }

// Counts of n-gram matches/totals for orders 1..4 plus the BP lengths.
struct BleuCounts {
  std::array<std::size_t, 4> match{};
  std::array<std::size_t, 4> total{};
  std::size_t candidate_len = 0;
  std::size_t reference_len = 0;
};

std::size_t closest_reference_length(std::size_t candidate_len,
                                     const std::vector<std::vector<std::string>>& ref_tokens) {
  std::size_t best = ref_tokens.front().size();
  for (const auto& ref : ref_tokens) {
    auto dist = [candidate_len](std::size_t len) {
      return len > candidate_len ? len - candidate_len : candidate_len - len;
    };
    if (dist(ref.size()) < dist(best) || (dist(ref.size()) == dist(best) && ref.size() < best))
      best = ref.size();
  }
  return best;
}

void accumulate_bleu(const std::string& prediction, const std::vector<std::string>& references,
                     BleuCounts& counts) {
  if (references.empty()) throw EmptyReferences();
  const auto pred = metric_tokenize(prediction);
  std::vector<std::vector<std::string>> refs;
  refs.reserve(references.size());
  for (const auto& r : references) refs.push_back(metric_tokenize(r));

  counts.candidate_len += pred.size();
  counts.reference_len += closest_reference_length(pred.size(), refs);

  for (std::size_t n = 1; n <= 4; ++n) {
    if (pred.size() < n) continue;
    // Join with an unlikely separator so n-grams key a flat map.
    auto key_at = [n](const std::vector<std::string>& toks, std::size_t i) {
      std::string key;
      for (std::size_t k = 0; k < n; ++k) {
        key += toks[i + k];
        key += '\x1f';
      }
      return key;
    };
    std::map<std::string, std::size_t> cand_counts;
    for (std::size_t i = 0; i + n <= pred.size(); ++i) ++cand_counts[key_at(pred, i)];
    std::map<std::string, std::size_t> max_ref_counts;
    for (const auto& ref : refs) {
      if (ref.size() < n) continue;
      std::map<std::string, std::size_t> ref_counts;
      for (std::size_t i = 0; i + n <= ref.size(); ++i) ++ref_counts[key_at(ref, i)];
      for (const auto& [key, cnt] : ref_counts)
        max_ref_counts[key] = std::max(max_ref_counts[key], cnt);
    }
    for (const auto& [key, cnt] : cand_counts) {
      auto it = max_ref_counts.find(key);
      if (it != max_ref_counts.end()) counts.match[n - 1] += std::min(cnt, it->second);
    }
    counts.total[n - 1] += pred.size() - n + 1;
  }
}

MetricValue bleu_from_counts(const BleuCounts& counts, std::size_t n_examples) {
  MetricValue out{MetricKind::kBleu, 0.0, Scale::kPercent, n_examples};
  if (counts.candidate_len == 0 || counts.match[0] == 0) return out;

  double log_sum = 0.0;
  double smooth_numerator = 1.0;
  for (std::size_t n = 0; n < 4; ++n) {
    double numerator = double(counts.match[n]);
    if (counts.match[n] == 0) {
      smooth_numerator /= 2.0;  // 1/2^k on the k-th zero
      numerator = smooth_numerator;
    }
    double denominator = double(std::max<std::size_t>(counts.total[n], 1));
    log_sum += std::log(numerator / denominator);
  }
  double bp = counts.candidate_len > counts.reference_len
                  ? 1.0
                  : std::exp(1.0 - double(counts.reference_len) / double(counts.candidate_len));
  out.value = 100.0 * bp * std::exp(log_sum / 4.0);
  return out;
}

double rouge_l_score(const std::string& prediction, const std::string& reference) {
  const auto pred = metric_tokenize(prediction);
  const auto ref = metric_tokenize(reference);
  if (ref.empty()) throw EmptyReferences();
  if (pred.empty()) return 0.0;

  // Two-row LCS.
  std::vector<std::size_t> prev(ref.size() + 1, 0), cur(ref.size() + 1, 0);
  for (std::size_t i = 1; i <= pred.size(); ++i) {
    for (std::size_t j = 1; j <= ref.size(); ++j) {
      cur[j] = pred[i - 1] == ref[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  double lcs = double(prev[ref.size()]);
  double p = lcs / double(pred.size());
  double r = lcs / double(ref.size());
  return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

}  // namespace

std::string_view metric_kind_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kAcc: return "acc";
    case MetricKind::kBleu: return "bleu";
    case MetricKind::kRougeL: return "rouge_l";
    case MetricKind::kMicroF1: return "micro_f1";
    case MetricKind::kStrictIf: return "strict_if";
    case MetricKind::kMcLoglik: return "mc_loglik";
  }
  return "acc";
}

MetricKind metric_kind_from_name(std::string_view name) {
  if (name == "acc") return MetricKind::kAcc;
  if (name == "bleu") return MetricKind::kBleu;
  if (name == "rouge_l") return MetricKind::kRougeL;
  if (name == "micro_f1") return MetricKind::kMicroF1;
  if (name == "strict_if") return MetricKind::kStrictIf;
  if (name == "mc_loglik") return MetricKind::kMcLoglik;
  throw Error("unknown metric kind: " + std::string(name));
}

std::string normalize_text(std::string_view text, const NormalizationPolicy& policy) {
  std::string s(text);
  if (policy.lowercase) {
    for (char& c : s) c = char(std::tolower(static_cast<unsigned char>(c)));
  }
  if (policy.strip_outer_punctuation) {
    std::size_t begin = 0, end = s.size();
    while (begin < end && (is_ascii_punct(s[begin]) || is_ascii_space(s[begin]))) ++begin;
    while (end > begin && (is_ascii_punct(s[end - 1]) || is_ascii_space(s[end - 1]))) --end;
    s = s.substr(begin, end - begin);
  }
  if (policy.collapse_whitespace) {
    std::string collapsed;
    bool in_space = false;
    for (unsigned char c : s) {
      if (is_ascii_space(c)) {
        in_space = true;
        continue;
      }
      if (in_space && !collapsed.empty()) collapsed += ' ';
      in_space = false;
      collapsed += char(c);
    }
    s = collapsed;
  }
  if (policy.strip_articles) {
    std::string rebuilt;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t sp = s.find(' ', pos);
      if (sp == std::string::npos) sp = s.size();
      std::string_view word = std::string_view(s).substr(pos, sp - pos);
      if (word != "a" && word != "an" && word != "the") {
        if (!rebuilt.empty()) rebuilt += ' ';
        rebuilt += word;
      }
      pos = sp + 1;
    }
    s = rebuilt;
  }
  return s;
}

std::vector<std::string> metric_tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  };
  for (unsigned char c : text) {
    if (c < 128 && is_ascii_space(c)) {
      flush();
    } else if (is_ascii_punct(c)) {
      flush();
      tokens.emplace_back(1, char(c));
    } else {
      cur += char(c);
    }
  }
  flush();
  return tokens;
}

MetricValue exact_match_accuracy(std::span<const std::string> predictions,
                                 std::span<const std::string> references,
                                 const NormalizationPolicy& policy) {
  if (predictions.size() != references.size())
    throw LengthMismatch("exact match: " + std::to_string(predictions.size()) +
                         " predictions vs " + std::to_string(references.size()) + " references");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (references[i].empty()) throw EmptyReferences();
    if (normalize_text(predictions[i], policy) == normalize_text(references[i], policy)) ++hits;
  }
  double value = predictions.empty() ? 0.0 : 100.0 * double(hits) / double(predictions.size());
  return {MetricKind::kAcc, value, Scale::kPercent, predictions.size()};
}

MetricValue bleu4(const std::string& prediction, const std::vector<std::string>& references) {
  BleuCounts counts;
  accumulate_bleu(prediction, references, counts);
  return bleu_from_counts(counts, 1);
}

MetricValue corpus_bleu4(const std::vector<std::string>& predictions,
                         const std::vector<std::vector<std::string>>& references) {
  if (predictions.size() != references.size())
    throw LengthMismatch("corpus bleu: prediction/reference count mismatch");
  BleuCounts counts;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    accumulate_bleu(predictions[i], references[i], counts);
  return bleu_from_counts(counts, predictions.size());
}

MetricValue rouge_l(const std::string& prediction, const std::string& reference) {
  return {MetricKind::kRougeL, rouge_l_score(prediction, reference), Scale::kUnit, 1};
}

MetricValue corpus_rouge_l(const std::vector<std::string>& predictions,
                           const std::vector<std::string>& references) {
  if (predictions.size() != references.size())
    throw LengthMismatch("rouge: prediction/reference count mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i)
    sum += rouge_l_score(predictions[i], references[i]);
  double value = predictions.empty() ? 0.0 : sum / double(predictions.size());
  return {MetricKind::kRougeL, value, Scale::kUnit, predictions.size()};
}

MetricValue micro_f1_entities(const std::vector<std::string>& predictions,
                              const std::vector<EntityExample>& examples) {
  if (predictions.size() != examples.size())
    throw LengthMismatch("micro f1: prediction/example count mismatch");
  const NormalizationPolicy policy;  // defaults; articles never stripped here
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const std::string pred = normalize_text(predictions[i], policy);
    auto found = [&pred, &policy](const std::string& entity) {
      return pred.find(normalize_text(entity, policy)) != std::string::npos;
    };
    for (const auto& gold : examples[i].gold) found(gold) ? ++tp : ++fn;
    for (const auto& cand : examples[i].candidates) {
      bool is_gold = std::find(examples[i].gold.begin(), examples[i].gold.end(), cand) !=
                     examples[i].gold.end();
      if (!is_gold && found(cand)) ++fp;
    }
  }
  double p = tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp);
  double r = tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn);
  double f = p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  return {MetricKind::kMicroF1, f, Scale::kUnit, predictions.size()};
}

std::size_t mc_select(std::span<const double> candidate_logliks) {
  if (candidate_logliks.empty()) throw EmptyCandidates();
  for (double v : candidate_logliks)
    if (!std::isfinite(v)) throw NonFiniteScore("candidate loglik is not finite");
  // max_element keeps the first of equal maxima, which is the tie rule.
  auto it = std::max_element(candidate_logliks.begin(), candidate_logliks.end());
  return std::size_t(it - candidate_logliks.begin());
}

}  // namespace tableforge
