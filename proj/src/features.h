#ifndef TRANSTYLE_FEATURES_H_
#define TRANSTYLE_FEATURES_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "corpus.h"
#include "fragments.h"

namespace transtyle {

enum class FeatureKind {
  char_ngram,
  word_ngram,
  pos_ngram,
  cfgr,
  subtree,
  dep_triple,
  dep_pos,
  dep_label,
  dep_triple_funclex,
};

const char* to_string(FeatureKind k);
FeatureKind feature_kind_from_string(const std::string& s);

struct FeatureKey {
  FeatureKind kind;
  std::string key;

  friend bool operator==(const FeatureKey&, const FeatureKey&) = default;
  // Lexicographic on (kind name, key); fixes feature id order everywhere.
  friend bool operator<(const FeatureKey& a, const FeatureKey& b) {
    int c = std::string_view(to_string(a.kind)).compare(to_string(b.kind));
    if (c != 0) return c < 0;
    return a.key < b.key;
  }
};

using CountMap = std::map<std::string, std::int64_t>;

// --- Per-family extractors ---------------------------------------------

// n-grams never cross a sentence boundary and use no padding symbols.
// char: over the sentence's concatenated token surfaces, keys "c:<gram>";
// word/pos: over surfaces / POS tags joined with "␣", keys "w:…" / "p:…".
CountMap char_ngrams(const Document& doc, int n_max);
CountMap word_ngrams(const Document& doc, int n_max);
CountMap pos_ngrams(const Document& doc, int n_max);

enum class DepMode { triple, pos, label, funclex };
DepMode dep_mode_from_string(const std::string& s);

// One key per non-root arc:
//   triple  headPOS_REL_depPOS     e.g. VV_nsubj_PN
//   pos     headPOS_depPOS
//   label   REL
//   funclex as triple, but tokens whose POS is a function tag are
//           represented by their surface form (head and dependent
//           independently).
// Throws MissingArcs if the sentence has no dependency parse.
CountMap dep_features(const Sentence& sentence, DepMode mode,
                      const std::set<std::string>& function_tags);

// Closed-class CTB tags lexicalized by depTripleFuncLex by default.
const std::set<std::string>& default_function_tags();

// --- Feature configuration ----------------------------------------------

struct FeatureParams {
  FeatureKind kind = FeatureKind::cfgr;
  int n_max = 3;                // ngram kinds
  int d_min = 1;                // subtree
  int d_max = 2;                // subtree
  std::string root_filter;      // subtree: keep only fragments with this root
};

struct FeatureConfig {
  std::vector<FeatureParams> families;
  int min_df = 2;
  std::set<std::string> function_tags = default_function_tags();
};

// Count multiset of one feature family over a whole document.
CountMap extract_family(const Document& doc, const FeatureParams& params,
                        const std::set<std::string>& function_tags);

struct DocFeatures {
  std::map<FeatureKey, std::int64_t> counts;
  std::int64_t token_count = 0;
};

// Pure per-document extraction; parallel over documents with `jobs` threads.
std::vector<DocFeatures> extract_corpus(const Corpus& corpus,
                                        const FeatureConfig& config,
                                        int jobs = 1);

// --- Feature space -------------------------------------------------------

struct FeatureEntry {
  FeatureKey key;
  std::int64_t doc_frequency = 0;
  std::int64_t total_count = 0;
};

class FeatureSpace {
 public:
  FeatureSpace() = default;
  explicit FeatureSpace(std::vector<FeatureEntry> entries);

  std::size_t size() const { return entries_.size(); }
  const FeatureEntry& entry(std::size_t id) const { return entries_[id]; }
  const std::vector<FeatureEntry>& entries() const { return entries_; }
  // -1 when absent.
  int id_of(const FeatureKey& key) const;

  std::string fingerprint() const;

  // Versioned text, one feature per line, id-ordered.
  std::string serialize() const;
  static FeatureSpace deserialize(const std::string& text);

 private:
  std::vector<FeatureEntry> entries_;
  std::map<FeatureKey, int> index_;
};

// Deterministic space over the documents selected by `doc_indices`:
// ids follow (kind, key) lexicographic order; features present in fewer
// than min_df documents are dropped. EmptySpace if nothing survives.
FeatureSpace build_feature_space(const std::vector<DocFeatures>& docs,
                                 const std::vector<std::size_t>& doc_indices,
                                 int min_df);

enum class ValueMode { raw_count, rel_freq };
const char* to_string(ValueMode m);
ValueMode value_mode_from_string(const std::string& s);

struct SparseVector {
  // (feature id, value), ids strictly increasing, values > 0.
  std::vector<std::pair<std::int32_t, double>> items;
};

// raw_count: feature count; rel_freq: count / document tokens * 1000.
SparseVector vectorize(const DocFeatures& doc, const FeatureSpace& space,
                       ValueMode mode);

}  // namespace transtyle

#endif  // TRANSTYLE_FEATURES_H_
