#ifndef TRANSTYLE_CORPUS_H_
#define TRANSTYLE_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "error.h"

namespace transtyle {

enum class Genre { news, general_prose, science, fiction };
enum class Class { original, translated };

const char* to_string(Genre g);
const char* to_string(Class c);
Genre genre_from_string(const std::string& s);   // throws UnknownGenre
Class class_from_string(const std::string& s);   // throws UnknownClass

struct Token {
  int index = 0;  // 1-based within sentence
  std::string surface;
  std::string pos;
};

// A node either has children (constituent) or a surface (lexical leaf).
// A preterminal is a node whose single child is a lexical leaf.
struct ConstituentTree {
  std::string label;
  std::vector<ConstituentTree> children;
  std::string surface;  // lexical leaves only

  bool is_lexical_leaf() const { return children.empty(); }
  bool is_preterminal() const {
    return children.size() == 1 && children[0].is_lexical_leaf();
  }
};

// head == 0 marks the root arc.
struct DependencyArc {
  int head = 0;
  int dependent = 0;
  std::string relation;
};

struct Sentence {
  std::vector<Token> tokens;
  std::optional<ConstituentTree> tree;
  std::optional<std::vector<DependencyArc>> arcs;
};

struct Document {
  std::string id;
  Genre genre = Genre::news;
  Class cls = Class::original;
  std::vector<Sentence> sentences;

  std::int64_t token_count() const;
};

struct Corpus {
  std::vector<Document> documents;
};

// --- Bracketed trees ---------------------------------------------------

// Parses a single parenthesized tree. Whitespace between tokens is
// ignored. Errors (UnbalancedBrackets, EmptyNode, TrailingContent,
// BadNode) report the byte offset where parsing failed.
ConstituentTree parse_bracketed_tree(const std::string& text);

std::string render_tree(const ConstituentTree& tree);

// All balanced top-level tree expressions in a file's contents.
std::vector<ConstituentTree> parse_tree_file(const std::string& contents);

// Yield and preterminal sequence with lexical leaves dropped.
std::vector<std::string> tree_yield(const ConstituentTree& tree);
std::vector<std::string> tree_preterminal_labels(const ConstituentTree& tree);

// Max edge count from the root to any node once lexical leaves are removed.
int tree_depth(const ConstituentTree& tree);

// --- Dependency tables -------------------------------------------------

// Tab-separated rows: index, surface, pos, head, relation; sentences are
// separated by blank lines. Validates arc invariants per sentence.
struct DepSentence {
  std::vector<Token> tokens;
  std::vector<DependencyArc> arcs;
};
std::vector<DepSentence> read_dependency_table(const std::string& contents);

// --- Manifest loading --------------------------------------------------

struct ManifestEntry {
  std::string id;
  std::string genre;
  std::string cls;
  std::string trees;  // path, may be empty
  std::string deps;   // path, may be empty
  int header_sentences = 0;  // leading sentences to drop (marked headlines)
};

struct CorpusLoad {
  Corpus corpus;
  std::vector<std::string> warnings;
};

std::vector<ManifestEntry> read_manifest(const std::string& manifest_path);

// Loads and fully validates a corpus. Documents carrying only trees or
// only dependencies are allowed; a warning records each.
CorpusLoad load_corpus(const std::string& manifest_path);

}  // namespace transtyle

#endif  // TRANSTYLE_CORPUS_H_
