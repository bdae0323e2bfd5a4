#include "treequery.h"

#include <algorithm>

namespace transtyle {

namespace {

bool matches(const ConstituentTree& node, const FragmentNode& frag) {
  if (node.is_lexical_leaf()) return false;
  if (node.label != frag.label) return false;
  if (frag.children.empty()) return true;  // unexpanded leaf
  // Expanded: the full ordered child sequence must line up.
  if (node.children.size() != frag.children.size()) return false;
  for (std::size_t i = 0; i < frag.children.size(); ++i) {
    if (!matches(node.children[i], frag.children[i])) return false;
  }
  return true;
}

void walk(const ConstituentTree& node, const FragmentNode& frag,
          std::vector<int>& path, std::vector<std::vector<int>>& out) {
  if (node.is_lexical_leaf()) return;
  if (matches(node, frag)) out.push_back(path);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    path.push_back(static_cast<int>(i));
    walk(node.children[i], frag, path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> contains_fragment(const ConstituentTree& tree,
                                                const FragmentNode& fragment) {
  std::vector<std::vector<int>> anchors;
  std::vector<int> path;
  walk(tree, fragment, path, anchors);
  return anchors;
}

SearchResult search_corpus(const Corpus& corpus, const FragmentNode& fragment,
                           const Class* class_filter, std::int64_t limit) {
  // Stable hit order: documents sorted by id.
  std::vector<std::size_t> order(corpus.documents.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus.documents[a].id < corpus.documents[b].id;
  });

  SearchResult result;
  result.totals[Class::original];
  result.totals[Class::translated];
  for (std::size_t idx : order) {
    const Document& doc = corpus.documents[idx];
    bool doc_hit = false;
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      if (!doc.sentences[s].tree) continue;
      auto anchors = contains_fragment(*doc.sentences[s].tree, fragment);
      if (anchors.empty()) continue;
      doc_hit = true;
      result.totals[doc.cls].hits += static_cast<std::int64_t>(anchors.size());
      if (class_filter && doc.cls != *class_filter) continue;
      for (auto& path : anchors) {
        if (limit >= 0 &&
            static_cast<std::int64_t>(result.hits.size()) >= limit)
          break;
        result.hits.push_back(
            MatchHit{doc.id, static_cast<int>(s), std::move(path)});
      }
    }
    if (doc_hit) result.totals[doc.cls].documents += 1;
  }
  return result;
}

std::string format_path(const std::vector<int>& path) {
  if (path.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

}  // namespace transtyle
