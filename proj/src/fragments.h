#ifndef TRANSTYLE_FRAGMENTS_H_
#define TRANSTYLE_FRAGMENTS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "corpus.h"

namespace transtyle {

// An unlexicalized connected piece of a constituent tree: every node
// contributes either all of its children or none, lexical material is
// dropped, and POS tags act as leaves. The encoding is the canonical
// bracketed form, e.g. "(IP (NP (PN)) (VP) (PU))"; depth is the max edge
// count from the fragment root.
struct Fragment {
  std::string encoding;
  int depth = 0;

  friend bool operator==(const Fragment&, const Fragment&) = default;
  friend auto operator<=>(const Fragment&, const Fragment&) = default;
};

// encoding -> (depth, derivation count). A fragment reachable through
// several (anchor, cut) derivations counts once per derivation.
struct FragmentCount {
  int depth = 0;
  std::int64_t count = 0;
};
using FragmentCounts = std::map<std::string, FragmentCount>;

// Depth-1 fragments, one per non-preterminal node: the node's label plus
// its ordered child labels. Lexical rules are never emitted.
FragmentCounts extract_cfgr(const ConstituentTree& tree);

// Every fragment with d_min <= depth <= d_max anchored anywhere in the
// tree. Depths above 3 explode combinatorially; callers get a warning
// line on stderr but are not stopped.
FragmentCounts enumerate_subtrees(const ConstituentTree& tree, int d_min,
                                  int d_max);

FragmentCounts filter_by_root(const FragmentCounts& fragments,
                              const std::string& label);

// Parses a fragment from its bracketed encoding. Bare labels are
// shorthand for unexpanded leaves: "(PP P (NP PN))" means
// "(PP (P) (NP (PN)))". Rejects fragments of depth 0 (BadFragment).
struct FragmentNode {
  std::string label;
  std::vector<FragmentNode> children;  // empty = unexpanded leaf
};
FragmentNode parse_fragment(const std::string& encoding);

std::string render_fragment(const FragmentNode& node);
int fragment_depth(const FragmentNode& node);

// Root label of an encoded fragment (first atom).
std::string fragment_root_label(const std::string& encoding);

}  // namespace transtyle

#endif  // TRANSTYLE_FRAGMENTS_H_
