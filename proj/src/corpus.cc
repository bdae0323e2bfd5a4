#include "corpus.h"

#include <array>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace transtyle {

namespace fs = std::filesystem;

const char* to_string(Genre g) {
  switch (g) {
    case Genre::news: return "news";
    case Genre::general_prose: return "general_prose";
    case Genre::science: return "science";
    case Genre::fiction: return "fiction";
  }
  return "?";
}

const char* to_string(Class c) {
  return c == Class::original ? "original" : "translated";
}

Genre genre_from_string(const std::string& s) {
  if (s == "news") return Genre::news;
  if (s == "general_prose") return Genre::general_prose;
  if (s == "science") return Genre::science;
  if (s == "fiction") return Genre::fiction;
  throw Error("UnknownGenre", "not a genre: '" + s + "'");
}

Class class_from_string(const std::string& s) {
  if (s == "original") return Class::original;
  if (s == "translated") return Class::translated;
  throw Error("UnknownClass", "not a class: '" + s + "'");
}

std::int64_t Document::token_count() const {
  std::int64_t n = 0;
  for (const auto& s : sentences) n += static_cast<std::int64_t>(s.tokens.size());
  return n;
}

// --- Bracketed trees ---------------------------------------------------

namespace {

[[noreturn]] void parse_fail(const std::string& code, std::size_t offset,
                             const std::string& what) {
  throw Error(code, what + " at byte " + std::to_string(offset));
}

struct TreeParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit TreeParser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\n' || text[pos] == '\r'))
      ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  std::string read_atom() {
    std::size_t start = pos;
    while (pos < text.size() && text[pos] != '(' && text[pos] != ')' &&
           text[pos] != ' ' && text[pos] != '\t' && text[pos] != '\n' &&
           text[pos] != '\r')
      ++pos;
    return text.substr(start, pos - start);
  }

  ConstituentTree parse_node() {
    skip_ws();
    std::size_t node_start = pos;
    if (pos >= text.size() || text[pos] != '(')
      parse_fail("UnbalancedBrackets", pos, "expected '('");
    ++pos;
    skip_ws();
    std::string label = read_atom();
    if (label.empty()) parse_fail("EmptyNode", node_start, "node without label");

    ConstituentTree node;
    node.label = label;
    int lexical = 0;
    while (true) {
      skip_ws();
      if (pos >= text.size())
        parse_fail("UnbalancedBrackets", pos, "missing ')'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == '(') {
        node.children.push_back(parse_node());
      } else {
        std::string word = read_atom();
        ConstituentTree leaf;
        leaf.surface = word;
        node.children.push_back(std::move(leaf));
        ++lexical;
      }
    }
    if (node.children.empty())
      parse_fail("EmptyNode", node_start, "node '" + label + "' has no children");
    if (lexical > 0 &&
        (lexical > 1 || node.children.size() != 1))
      parse_fail("BadNode", node_start,
                 "node '" + label + "' mixes lexical and constituent children");
    return node;
  }
};

void collect_leaves(const ConstituentTree& t, std::vector<std::string>& out) {
  if (t.is_lexical_leaf()) {
    out.push_back(t.surface);
    return;
  }
  for (const auto& c : t.children) collect_leaves(c, out);
}

void collect_preterminals(const ConstituentTree& t, std::vector<std::string>& out) {
  if (t.is_preterminal()) {
    out.push_back(t.label);
    return;
  }
  for (const auto& c : t.children) collect_preterminals(c, out);
}

}  // namespace

ConstituentTree parse_bracketed_tree(const std::string& text) {
  TreeParser p(text);
  ConstituentTree tree = p.parse_node();
  if (!p.at_end())
    parse_fail("TrailingContent", p.pos, "content after tree");
  return tree;
}

std::string render_tree(const ConstituentTree& tree) {
  if (tree.is_lexical_leaf()) return tree.surface;
  std::string out = "(" + tree.label;
  for (const auto& c : tree.children) {
    out += ' ';
    out += render_tree(c);
  }
  out += ')';
  return out;
}

std::vector<ConstituentTree> parse_tree_file(const std::string& contents) {
  std::vector<ConstituentTree> trees;
  TreeParser p(contents);
  while (!p.at_end()) trees.push_back(p.parse_node());
  return trees;
}

std::vector<std::string> tree_yield(const ConstituentTree& tree) {
  std::vector<std::string> out;
  collect_leaves(tree, out);
  return out;
}

std::vector<std::string> tree_preterminal_labels(const ConstituentTree& tree) {
  std::vector<std::string> out;
  collect_preterminals(tree, out);
  return out;
}

int tree_depth(const ConstituentTree& tree) {
  if (tree.is_lexical_leaf() || tree.is_preterminal()) return 0;
  int best = 0;
  for (const auto& c : tree.children)
    best = std::max(best, 1 + tree_depth(c));
  return best;
}

// --- Dependency tables -------------------------------------------------

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

int parse_int(const std::string& s, const std::string& code,
              const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(code, what + ": '" + s + "'");
  }
}

DepSentence finish_block(std::vector<std::array<std::string, 5>>& rows,
                         int line_no) {
  DepSentence sent;
  const int n = static_cast<int>(rows.size());
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    const auto& r = rows[i];
    int index = parse_int(r[0], "BadTokenIndex", "token index");
    if (index != i + 1)
      throw Error("BadTokenIndex",
                  "expected index " + std::to_string(i + 1) + ", got " + r[0] +
                      " near line " + std::to_string(line_no));
    if (r[1].empty() || r[2].empty())
      throw Error("EmptyField", "empty surface or pos near line " +
                                    std::to_string(line_no));
    int head = parse_int(r[3], "DanglingHead", "head index");
    if (head < 0 || head > n)
      throw Error("DanglingHead", "head " + std::to_string(head) +
                                      " out of range 0.." + std::to_string(n));
    if (head == 0) ++roots;
    sent.tokens.push_back(Token{index, r[1], r[2]});
    sent.arcs.push_back(DependencyArc{head, index, r[4]});
  }
  if (roots == 0) throw Error("NoRoot", "sentence ending near line " +
                                            std::to_string(line_no));
  if (roots > 1)
    throw Error("MultipleRoots", "sentence ending near line " +
                                     std::to_string(line_no));
  rows.clear();
  return sent;
}

}  // namespace

std::vector<DepSentence> read_dependency_table(const std::string& contents) {
  std::vector<DepSentence> sentences;
  std::vector<std::array<std::string, 5>> rows;
  std::istringstream in(contents);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!rows.empty()) sentences.push_back(finish_block(rows, line_no));
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 5)
      throw Error("BadColumnCount",
                  "expected 5 tab-separated columns, got " +
                      std::to_string(cols.size()) + " at line " +
                      std::to_string(line_no));
    rows.push_back({cols[0], cols[1], cols[2], cols[3], cols[4]});
  }
  if (!rows.empty()) sentences.push_back(finish_block(rows, line_no));
  return sentences;
}

// --- Manifest loading --------------------------------------------------

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("FileMissing", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Token> tokens_from_tree(const ConstituentTree& tree) {
  auto surfaces = tree_yield(tree);
  auto tags = tree_preterminal_labels(tree);
  // The parser guarantees one lexical leaf per preterminal, so these align.
  std::vector<Token> tokens;
  tokens.reserve(surfaces.size());
  for (std::size_t i = 0; i < surfaces.size(); ++i)
    tokens.push_back(Token{static_cast<int>(i) + 1, surfaces[i], tags[i]});
  return tokens;
}

}  // namespace

std::vector<ManifestEntry> read_manifest(const std::string& manifest_path) {
  std::string raw = read_file(manifest_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::exception& e) {
    throw Error("BadManifest", std::string("manifest parse failure: ") + e.what());
  }
  const nlohmann::json* list = &j;
  if (j.is_object() && j.contains("documents")) list = &j["documents"];
  if (!list->is_array()) throw Error("BadManifest", "expected an array of entries");
  std::vector<ManifestEntry> entries;
  for (const auto& item : *list) {
    ManifestEntry e;
    try {
      e.id = item.at("id").get<std::string>();
      e.genre = item.at("genre").get<std::string>();
      e.cls = item.at("class").get<std::string>();
      if (item.contains("trees") && !item["trees"].is_null())
        e.trees = item["trees"].get<std::string>();
      if (item.contains("deps") && !item["deps"].is_null())
        e.deps = item["deps"].get<std::string>();
      if (item.contains("header_sentences"))
        e.header_sentences = item["header_sentences"].get<int>();
    } catch (const nlohmann::json::exception& ex) {
      throw Error("BadManifest", std::string("bad entry: ") + ex.what());
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

CorpusLoad load_corpus(const std::string& manifest_path) {
  auto entries = read_manifest(manifest_path);
  fs::path base = fs::path(manifest_path).parent_path();

  CorpusLoad result;
  std::set<std::string> seen_ids;
  for (const auto& entry : entries) {
    if (!seen_ids.insert(entry.id).second)
      throw Error("DuplicateId", "document id '" + entry.id + "' repeats");

    Document doc;
    doc.id = entry.id;
    doc.genre = genre_from_string(entry.genre);
    doc.cls = class_from_string(entry.cls);

    std::vector<ConstituentTree> trees;
    std::vector<DepSentence> deps;
    bool has_trees = !entry.trees.empty();
    bool has_deps = !entry.deps.empty();
    if (!has_trees && !has_deps)
      throw Error("FileMissing",
                  "document '" + entry.id + "' lists neither trees nor deps");
    if (has_trees) trees = parse_tree_file(read_file(base / entry.trees));
    if (has_deps) deps = read_dependency_table(read_file(base / entry.deps));

    if (has_trees && has_deps) {
      if (trees.size() != deps.size())
        throw Error("YieldMismatch",
                    "document '" + entry.id + "': " +
                        std::to_string(trees.size()) + " trees vs " +
                        std::to_string(deps.size()) + " dependency sentences");
      for (std::size_t s = 0; s < trees.size(); ++s) {
        auto surfaces = tree_yield(trees[s]);
        auto tags = tree_preterminal_labels(trees[s]);
        const auto& toks = deps[s].tokens;
        bool ok = surfaces.size() == toks.size();
        for (std::size_t t = 0; ok && t < toks.size(); ++t)
          ok = surfaces[t] == toks[t].surface && tags[t] == toks[t].pos;
        if (!ok)
          throw Error("YieldMismatch",
                      "document '" + entry.id + "' sentence " +
                          std::to_string(s) +
                          ": tree yield differs from dependency tokens");
        Sentence sent;
        sent.tokens = toks;
        sent.tree = trees[s];
        sent.arcs = deps[s].arcs;
        doc.sentences.push_back(std::move(sent));
      }
    } else if (has_trees) {
      result.warnings.push_back("document '" + entry.id +
                                "' has trees only (no dependencies)");
      for (auto& t : trees) {
        Sentence sent;
        sent.tokens = tokens_from_tree(t);
        sent.tree = std::move(t);
        doc.sentences.push_back(std::move(sent));
      }
    } else {
      result.warnings.push_back("document '" + entry.id +
                                "' has dependencies only (no trees)");
      for (auto& d : deps) {
        Sentence sent;
        sent.tokens = std::move(d.tokens);
        sent.arcs = std::move(d.arcs);
        doc.sentences.push_back(std::move(sent));
      }
    }

    if (entry.header_sentences > 0) {
      std::size_t drop = std::min<std::size_t>(
          static_cast<std::size_t>(entry.header_sentences), doc.sentences.size());
      doc.sentences.erase(doc.sentences.begin(), doc.sentences.begin() + drop);
    }
    if (doc.sentences.empty())
      result.warnings.push_back("document '" + entry.id + "' is empty");
    result.corpus.documents.push_back(std::move(doc));
  }
  return result;
}

}  // namespace transtyle
