#ifndef TRANSTYLE_SELECTION_H_
#define TRANSTYLE_SELECTION_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corpus.h"
#include "features.h"

namespace transtyle {

struct IGScore {
  int feature_id = 0;
  double ig = 0.0;  // bits
  int rank = 0;     // 1-based after sorting
};

// Presence-based information gain of every feature in `space` over the
// documents in `doc_indices`:
//   IG(f) = H(C) - P(f) H(C|f) - P(!f) H(C|!f),  log base 2, 0 log 0 = 0,
// where presence means count > 0 in a document. Scores come back sorted
// by descending IG, ties broken by ascending feature key. Throws
// SingleClass unless both classes appear.
std::vector<IGScore> information_gain(const std::vector<DocFeatures>& docs,
                                      const std::vector<std::size_t>& doc_indices,
                                      const std::vector<Class>& labels,
                                      const FeatureSpace& space);

// Binary entropy of a two-way count split, in bits.
double class_entropy(std::int64_t a, std::int64_t b);

// First min(k, N) feature ids under the information_gain sort order.
std::vector<int> select_top_k(const std::vector<IGScore>& scores, int k);

// One fold's ranking, keyed for cross-fold alignment.
using FoldRanking = std::map<FeatureKey, int>;

struct AveragedRank {
  FeatureKey key;
  double mean_rank = 0.0;
  std::vector<int> per_fold;  // rank, or N_fold+1 where absent
  std::string predicts;       // "original", "translated", or "none"
};

// Mean per-fold rank with the absent convention (N_fold + 1), sorted
// ascending by mean rank then key. `predicts` is the class whose
// documents contain the feature at the higher rate over the full corpus.
std::vector<AveragedRank> average_ranks(
    const std::vector<FoldRanking>& per_fold,
    const std::vector<DocFeatures>& docs, const std::vector<Class>& labels);

}  // namespace transtyle

#endif  // TRANSTYLE_SELECTION_H_
