#include "selection.h"

#include <algorithm>
#include <cmath>

namespace transtyle {

double class_entropy(std::int64_t a, std::int64_t b) {
  const std::int64_t total = a + b;
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::int64_t n : {a, b}) {
    if (n == 0) continue;  // 0 log 0 = 0
    double p = static_cast<double>(n) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

std::vector<IGScore> information_gain(const std::vector<DocFeatures>& docs,
                                      const std::vector<std::size_t>& doc_indices,
                                      const std::vector<Class>& labels,
                                      const FeatureSpace& space) {
  std::int64_t n_translated = 0, n_original = 0;
  for (std::size_t idx : doc_indices) {
    (labels[idx] == Class::translated ? n_translated : n_original) += 1;
  }
  if (doc_indices.size() < 2 || n_translated == 0 || n_original == 0)
    throw Error("SingleClass", "information gain needs both classes");
  const std::int64_t n = n_translated + n_original;
  const double h_class = class_entropy(n_translated, n_original);

  // Per-feature presence counts by class.
  std::vector<std::int64_t> present_translated(space.size(), 0);
  std::vector<std::int64_t> present_original(space.size(), 0);
  for (std::size_t idx : doc_indices) {
    const bool translated = labels[idx] == Class::translated;
    for (const auto& [key, count] : docs[idx].counts) {
      if (count <= 0) continue;
      int id = space.id_of(key);
      if (id < 0) continue;
      (translated ? present_translated : present_original)[id] += 1;
    }
  }

  std::vector<IGScore> scores(space.size());
  for (std::size_t id = 0; id < space.size(); ++id) {
    const std::int64_t pt = present_translated[id];
    const std::int64_t po = present_original[id];
    const std::int64_t present = pt + po;
    const std::int64_t absent = n - present;
    double ig = h_class;
    if (present > 0)
      ig -= static_cast<double>(present) / static_cast<double>(n) *
            class_entropy(pt, po);
    if (absent > 0)
      ig -= static_cast<double>(absent) / static_cast<double>(n) *
            class_entropy(n_translated - pt, n_original - po);
    scores[id] = IGScore{static_cast<int>(id), ig, 0};
  }

  std::sort(scores.begin(), scores.end(),
            [&space](const IGScore& a, const IGScore& b) {
              if (a.ig != b.ig) return a.ig > b.ig;
              return space.entry(a.feature_id).key < space.entry(b.feature_id).key;
            });
  for (std::size_t i = 0; i < scores.size(); ++i)
    scores[i].rank = static_cast<int>(i) + 1;
  return scores;
}

std::vector<int> select_top_k(const std::vector<IGScore>& scores, int k) {
  if (k < 1) throw Error("BadTopK", "k must be >= 1");
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k),
                                           scores.size());
  std::vector<int> ids;
  ids.reserve(take);
  for (std::size_t i = 0; i < take; ++i) ids.push_back(scores[i].feature_id);
  return ids;
}

std::vector<AveragedRank> average_ranks(
    const std::vector<FoldRanking>& per_fold,
    const std::vector<DocFeatures>& docs, const std::vector<Class>& labels) {
  if (per_fold.empty()) return {};

  std::map<FeatureKey, AveragedRank> by_key;
  for (const auto& fold : per_fold) {
    for (const auto& [key, rank] : fold) {
      (void)rank;
      by_key[key].key = key;
    }
  }
  for (auto& [key, avg] : by_key) {
    double sum = 0.0;
    for (const auto& fold : per_fold) {
      auto it = fold.find(key);
      int rank = it != fold.end() ? it->second
                                  : static_cast<int>(fold.size()) + 1;
      avg.per_fold.push_back(rank);
      sum += rank;
    }
    avg.mean_rank = sum / static_cast<double>(per_fold.size());
  }

  // "Predicts" direction from full-corpus presence rates.
  std::int64_t n_translated = 0, n_original = 0;
  for (Class c : labels) (c == Class::translated ? n_translated : n_original) += 1;
  for (auto& [key, avg] : by_key) {
    std::int64_t pt = 0, po = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      auto it = docs[i].counts.find(key);
      if (it == docs[i].counts.end() || it->second <= 0) continue;
      (labels[i] == Class::translated ? pt : po) += 1;
    }
    double rate_t = n_translated > 0
                        ? static_cast<double>(pt) / static_cast<double>(n_translated)
                        : 0.0;
    double rate_o = n_original > 0
                        ? static_cast<double>(po) / static_cast<double>(n_original)
                        : 0.0;
    if (rate_t > rate_o)
      avg.predicts = "translated";
    else if (rate_o > rate_t)
      avg.predicts = "original";
    else
      avg.predicts = "none";
  }

  std::vector<AveragedRank> out;
  out.reserve(by_key.size());
  for (auto& [key, avg] : by_key) out.push_back(std::move(avg));
  std::sort(out.begin(), out.end(),
            [](const AveragedRank& a, const AveragedRank& b) {
              if (a.mean_rank != b.mean_rank) return a.mean_rank < b.mean_rank;
              return a.key < b.key;
            });
  return out;
}

}  // namespace transtyle
