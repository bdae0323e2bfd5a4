#ifndef TRANSTYLE_TREEQUERY_H_
#define TRANSTYLE_TREEQUERY_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corpus.h"
#include "fragments.h"

namespace transtyle {

// Anchors in `tree` whose subtree contains the fragment: labels must
// match, and wherever the fragment expands a node the tree node's full
// ordered child-label sequence must equal the fragment's children,
// recursively. Unexpanded fragment leaves match any node of that label.
// Paths are child-index sequences from the root.
std::vector<std::vector<int>> contains_fragment(const ConstituentTree& tree,
                                                const FragmentNode& fragment);

struct MatchHit {
  std::string doc_id;
  int sentence_index = 0;
  std::vector<int> path;
};

struct SearchTotals {
  std::int64_t hits = 0;       // anchor count
  std::int64_t documents = 0;  // documents with at least one hit
};

struct SearchResult {
  std::vector<MatchHit> hits;  // (doc id, sentence index) order, truncated
  std::map<Class, SearchTotals> totals;  // always over the whole corpus
};

// class_filter: nullptr for both classes. limit < 0 means unlimited;
// limit 0 reports totals with no listed hits.
SearchResult search_corpus(const Corpus& corpus, const FragmentNode& fragment,
                           const Class* class_filter, std::int64_t limit);

std::string format_path(const std::vector<int>& path);

}  // namespace transtyle

#endif  // TRANSTYLE_TREEQUERY_H_
