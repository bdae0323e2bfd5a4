#include "fragments.h"

#include <algorithm>
#include <cctype>
#include <iostream>

#include "error.h"

namespace transtyle {

namespace {

void add_count(FragmentCounts& counts, const std::string& encoding, int depth,
               std::int64_t n) {
  auto [it, inserted] = counts.emplace(encoding, FragmentCount{depth, n});
  if (!inserted) it->second.count += n;
}

void cfgr_walk(const ConstituentTree& node, FragmentCounts& out) {
  if (node.is_lexical_leaf() || node.is_preterminal()) return;
  std::string enc = "(" + node.label;
  for (const auto& c : node.children) {
    enc += " (";
    enc += c.label;
    enc += ')';
  }
  enc += ')';
  add_count(out, enc, 1, 1);
  for (const auto& c : node.children) cfgr_walk(c, out);
}

struct Option {
  std::string encoding;
  int depth;
  std::int64_t count;
};

// Fragments rooted at `node` with depth <= budget, one entry per distinct
// encoding, counts summing the (single-anchor) derivations.
class SubtreeEnumerator {
 public:
  const std::vector<Option>& options(const ConstituentTree& node, int budget) {
    auto key = std::make_pair(&node, budget);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    std::vector<Option> opts;
    opts.push_back(Option{"(" + node.label + ")", 0, 1});
    if (budget >= 1 && !node.is_preterminal()) {
      // Cartesian product of each child's options.
      std::vector<Option> partial;
      partial.push_back(Option{"", 0, 1});
      for (const auto& child : node.children) {
        const auto& child_opts = options(child, budget - 1);
        std::vector<Option> next;
        next.reserve(partial.size() * child_opts.size());
        for (const auto& p : partial) {
          for (const auto& co : child_opts) {
            next.push_back(Option{p.encoding + " " + co.encoding,
                                  std::max(p.depth, co.depth), p.count * co.count});
          }
        }
        partial = std::move(next);
      }
      std::map<std::string, FragmentCount> merged;
      for (const auto& p : partial) {
        std::string enc = "(" + node.label + p.encoding + ")";
        add_count(merged, enc, 1 + p.depth, p.count);
      }
      for (const auto& [enc, fc] : merged)
        opts.push_back(Option{enc, fc.depth, fc.count});
    }
    return memo_.emplace(key, std::move(opts)).first->second;
  }

 private:
  std::map<std::pair<const ConstituentTree*, int>, std::vector<Option>> memo_;
};

void collect_anchors(const ConstituentTree& node,
                     std::vector<const ConstituentTree*>& anchors) {
  if (node.is_lexical_leaf()) return;
  anchors.push_back(&node);
  for (const auto& c : node.children) collect_anchors(c, anchors);
}

}  // namespace

FragmentCounts extract_cfgr(const ConstituentTree& tree) {
  FragmentCounts out;
  cfgr_walk(tree, out);
  return out;
}

FragmentCounts enumerate_subtrees(const ConstituentTree& tree, int d_min,
                                  int d_max) {
  if (d_min < 1 || d_min > d_max)
    throw Error("BadDepthRange", "need 1 <= d_min <= d_max, got " +
                                     std::to_string(d_min) + ".." +
                                     std::to_string(d_max));
  if (d_max > 3)
    std::cerr << "warning: subtree depth " << d_max
              << " can explode combinatorially\n";

  SubtreeEnumerator enumerator;
  std::vector<const ConstituentTree*> anchors;
  collect_anchors(tree, anchors);

  FragmentCounts out;
  for (const ConstituentTree* anchor : anchors) {
    for (const auto& opt : enumerator.options(*anchor, d_max)) {
      if (opt.depth >= d_min && opt.depth <= d_max)
        add_count(out, opt.encoding, opt.depth, opt.count);
    }
  }
  return out;
}

FragmentCounts filter_by_root(const FragmentCounts& fragments,
                              const std::string& label) {
  if (label.empty()) throw Error("BadFragment", "empty root label");
  FragmentCounts out;
  for (const auto& [enc, fc] : fragments) {
    if (fragment_root_label(enc) == label) out.emplace(enc, fc);
  }
  return out;
}

namespace {

struct FragmentParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit FragmentParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  std::string read_atom() {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    return text.substr(start, pos - start);
  }

  FragmentNode parse_node() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '(')
      throw Error("BadFragment",
                  "expected '(' at byte " + std::to_string(pos));
    std::size_t node_start = pos;
    ++pos;
    skip_ws();
    FragmentNode node;
    node.label = read_atom();
    if (node.label.empty())
      throw Error("BadFragment",
                  "missing label at byte " + std::to_string(node_start));
    while (true) {
      skip_ws();
      if (pos >= text.size())
        throw Error("BadFragment",
                    "missing ')' at byte " + std::to_string(pos));
      if (text[pos] == ')') {
        ++pos;
        return node;
      }
      if (text[pos] == '(') {
        node.children.push_back(parse_node());
      } else {
        // Bare label: shorthand for an unexpanded leaf.
        FragmentNode leaf;
        leaf.label = read_atom();
        node.children.push_back(std::move(leaf));
      }
    }
  }
};

}  // namespace

FragmentNode parse_fragment(const std::string& encoding) {
  FragmentParser p(encoding);
  FragmentNode node = p.parse_node();
  p.skip_ws();
  if (p.pos != encoding.size())
    throw Error("BadFragment",
                "trailing content at byte " + std::to_string(p.pos));
  if (fragment_depth(node) < 1)
    throw Error("BadFragment", "fragment must expand at least one node");
  return node;
}

std::string render_fragment(const FragmentNode& node) {
  std::string out = "(" + node.label;
  for (const auto& c : node.children) {
    out += ' ';
    out += render_fragment(c);
  }
  out += ')';
  return out;
}

int fragment_depth(const FragmentNode& node) {
  int best = 0;
  for (const auto& c : node.children)
    best = std::max(best, 1 + fragment_depth(c));
  return best;
}

std::string fragment_root_label(const std::string& encoding) {
  std::size_t i = 0;
  while (i < encoding.size() &&
         (encoding[i] == '(' || std::isspace(static_cast<unsigned char>(encoding[i]))))
    ++i;
  std::size_t start = i;
  while (i < encoding.size() && encoding[i] != '(' && encoding[i] != ')' &&
         !std::isspace(static_cast<unsigned char>(encoding[i])))
    ++i;
  return encoding.substr(start, i - start);
}

}  // namespace transtyle
