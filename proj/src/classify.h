#ifndef TRANSTYLE_CLASSIFY_H_
#define TRANSTYLE_CLASSIFY_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corpus.h"

namespace transtyle {

struct FoldAssignment {
  int k = 0;
  std::map<std::string, int> fold_of;  // doc id -> fold in [0, k)

  std::vector<std::size_t> train_indices(const Corpus& corpus, int fold) const;
  std::vector<std::size_t> test_indices(const Corpus& corpus, int fold) const;
};

// Genre-stratified k-fold split. Within each (genre, class) cell the
// documents are shuffled by a seeded generator and dealt round-robin;
// the dealing cursor rotates across a class's cells so per-fold class
// totals stay balanced, not just per-cell ones. Throws EmptyCell when a
// present genre lacks one of the present classes.
FoldAssignment stratified_kfold(const Corpus& corpus, int k,
                                std::uint64_t seed);

struct ClassMetrics {
  double precision = 0.0;  // percent
  double recall = 0.0;
  double f1 = 0.0;
};

// Confusion counts use "translated" as the positive class.
struct EvalReport {
  std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;
  ClassMetrics translated;
  ClassMetrics original;
  double macro_f = 0.0;  // percent

  std::int64_t total() const { return tp + fp + fn + tn; }
};

// Per-class precision/recall/F1 (percent) with the 0/0 -> 0 convention.
EvalReport evaluate(const std::vector<Class>& pred,
                    const std::vector<Class>& gold);

}  // namespace transtyle

#endif  // TRANSTYLE_CLASSIFY_H_
