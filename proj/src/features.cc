#include "features.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "utf8.h"
#include "util.h"

namespace transtyle {

namespace {
const char* kJoiner = "␣";  // ␣
}

const char* to_string(FeatureKind k) {
  switch (k) {
    case FeatureKind::char_ngram: return "char_ngram";
    case FeatureKind::word_ngram: return "word_ngram";
    case FeatureKind::pos_ngram: return "pos_ngram";
    case FeatureKind::cfgr: return "cfgr";
    case FeatureKind::subtree: return "subtree";
    case FeatureKind::dep_triple: return "dep_triple";
    case FeatureKind::dep_pos: return "dep_pos";
    case FeatureKind::dep_label: return "dep_label";
    case FeatureKind::dep_triple_funclex: return "dep_triple_funclex";
  }
  return "?";
}

FeatureKind feature_kind_from_string(const std::string& s) {
  if (s == "char_ngram") return FeatureKind::char_ngram;
  if (s == "word_ngram") return FeatureKind::word_ngram;
  if (s == "pos_ngram") return FeatureKind::pos_ngram;
  if (s == "cfgr") return FeatureKind::cfgr;
  if (s == "subtree") return FeatureKind::subtree;
  if (s == "dep_triple") return FeatureKind::dep_triple;
  if (s == "dep_pos") return FeatureKind::dep_pos;
  if (s == "dep_label") return FeatureKind::dep_label;
  if (s == "dep_triple_funclex") return FeatureKind::dep_triple_funclex;
  throw Error("UnknownFeatureKind", "not a feature kind: '" + s + "'");
}

// --- n-grams -------------------------------------------------------------

namespace {

void check_n_max(int n_max) {
  if (n_max < 1 || n_max > 5)
    throw Error("BadNgramOrder", "n_max must be in 1..5, got " +
                                     std::to_string(n_max));
}

// Sliding windows of length 1..n_max over `units`, joined by `joiner`.
void add_ngrams(CountMap& counts, const std::vector<std::string>& units,
                int n_max, const std::string& prefix, const char* joiner) {
  const int len = static_cast<int>(units.size());
  for (int n = 1; n <= n_max; ++n) {
    for (int i = 0; i + n <= len; ++i) {
      std::string key = prefix;
      for (int k = 0; k < n; ++k) {
        if (k > 0) key += joiner;
        key += units[i + k];
      }
      ++counts[key];
    }
  }
}

}  // namespace

CountMap char_ngrams(const Document& doc, int n_max) {
  check_n_max(n_max);
  CountMap counts;
  for (const auto& sent : doc.sentences) {
    std::string text;
    for (const auto& tok : sent.tokens) text += tok.surface;
    auto cps = utf8::decode(text);
    std::vector<std::string> chars;
    chars.reserve(cps.size());
    for (char32_t cp : cps) {
      std::string c;
      utf8::append(c, cp);
      chars.push_back(std::move(c));
    }
    add_ngrams(counts, chars, n_max, "c:", "");
  }
  return counts;
}

CountMap word_ngrams(const Document& doc, int n_max) {
  check_n_max(n_max);
  CountMap counts;
  for (const auto& sent : doc.sentences) {
    std::vector<std::string> words;
    words.reserve(sent.tokens.size());
    for (const auto& tok : sent.tokens) words.push_back(tok.surface);
    add_ngrams(counts, words, n_max, "w:", kJoiner);
  }
  return counts;
}

CountMap pos_ngrams(const Document& doc, int n_max) {
  check_n_max(n_max);
  CountMap counts;
  for (const auto& sent : doc.sentences) {
    std::vector<std::string> tags;
    tags.reserve(sent.tokens.size());
    for (const auto& tok : sent.tokens) tags.push_back(tok.pos);
    add_ngrams(counts, tags, n_max, "p:", kJoiner);
  }
  return counts;
}

// --- Dependency features ---------------------------------------------------

DepMode dep_mode_from_string(const std::string& s) {
  if (s == "triple") return DepMode::triple;
  if (s == "pos") return DepMode::pos;
  if (s == "label") return DepMode::label;
  if (s == "funclex") return DepMode::funclex;
  throw Error("UnknownDepMode", "not a dependency mode: '" + s + "'");
}

const std::set<std::string>& default_function_tags() {
  static const std::set<std::string> tags = {
      "PN", "DT", "DEG", "DEC", "DEV", "DER", "AS", "SP", "P",  "CC",
      "CS", "LC", "MSP", "BA",  "LB",  "SB",  "ETC", "PU", "AD"};
  return tags;
}

CountMap dep_features(const Sentence& sentence, DepMode mode,
                      const std::set<std::string>& function_tags) {
  if (!sentence.arcs.has_value())
    throw Error("MissingArcs", "sentence has no dependency parse");
  CountMap counts;
  const auto& tokens = sentence.tokens;
  auto repr = [&](const Token& tok) -> const std::string& {
    return function_tags.count(tok.pos) ? tok.surface : tok.pos;
  };
  for (const auto& arc : *sentence.arcs) {
    if (arc.head == 0) continue;  // root arc has no head token
    const Token& head = tokens[arc.head - 1];
    const Token& dep = tokens[arc.dependent - 1];
    std::string key;
    switch (mode) {
      case DepMode::triple:
        key = head.pos + "_" + arc.relation + "_" + dep.pos;
        break;
      case DepMode::pos:
        key = head.pos + "_" + dep.pos;
        break;
      case DepMode::label:
        key = arc.relation;
        break;
      case DepMode::funclex:
        key = repr(head) + "_" + arc.relation + "_" + repr(dep);
        break;
    }
    ++counts[key];
  }
  return counts;
}

// --- Extraction over a corpus ---------------------------------------------

CountMap extract_family(const Document& doc, const FeatureParams& params,
                        const std::set<std::string>& function_tags) {
  switch (params.kind) {
    case FeatureKind::char_ngram:
      return char_ngrams(doc, params.n_max);
    case FeatureKind::word_ngram:
      return word_ngrams(doc, params.n_max);
    case FeatureKind::pos_ngram:
      return pos_ngrams(doc, params.n_max);
    case FeatureKind::cfgr: {
      CountMap counts;
      for (const auto& sent : doc.sentences) {
        if (!sent.tree) throw Error("MissingTree", "document '" + doc.id +
                                                       "' lacks parse trees");
        for (const auto& [enc, fc] : extract_cfgr(*sent.tree))
          counts[enc] += fc.count;
      }
      return counts;
    }
    case FeatureKind::subtree: {
      CountMap counts;
      for (const auto& sent : doc.sentences) {
        if (!sent.tree) throw Error("MissingTree", "document '" + doc.id +
                                                       "' lacks parse trees");
        FragmentCounts frags =
            enumerate_subtrees(*sent.tree, params.d_min, params.d_max);
        if (!params.root_filter.empty())
          frags = filter_by_root(frags, params.root_filter);
        for (const auto& [enc, fc] : frags) counts[enc] += fc.count;
      }
      return counts;
    }
    case FeatureKind::dep_triple:
    case FeatureKind::dep_pos:
    case FeatureKind::dep_label:
    case FeatureKind::dep_triple_funclex: {
      DepMode mode = DepMode::triple;
      if (params.kind == FeatureKind::dep_pos) mode = DepMode::pos;
      if (params.kind == FeatureKind::dep_label) mode = DepMode::label;
      if (params.kind == FeatureKind::dep_triple_funclex) mode = DepMode::funclex;
      CountMap counts;
      for (const auto& sent : doc.sentences) {
        for (const auto& [key, n] : dep_features(sent, mode, function_tags))
          counts[key] += n;
      }
      return counts;
    }
  }
  throw Error("UnknownFeatureKind", "unhandled feature kind");
}

std::vector<DocFeatures> extract_corpus(const Corpus& corpus,
                                        const FeatureConfig& config,
                                        int jobs) {
  std::vector<DocFeatures> out(corpus.documents.size());
  parallel_for(corpus.documents.size(), jobs, [&](std::size_t i) {
    const Document& doc = corpus.documents[i];
    DocFeatures& df = out[i];
    df.token_count = doc.token_count();
    for (const auto& params : config.families) {
      CountMap counts = extract_family(doc, params, config.function_tags);
      for (auto& [key, n] : counts)
        df.counts[FeatureKey{params.kind, key}] += n;
    }
  });
  return out;
}

// --- Feature space -----------------------------------------------------

FeatureSpace::FeatureSpace(std::vector<FeatureEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    index_.emplace(entries_[i].key, static_cast<int>(i));
}

int FeatureSpace::id_of(const FeatureKey& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

std::string FeatureSpace::fingerprint() const {
  // FNV-1a over the id-ordered (kind, key) sequence.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0x1e;
    h *= 0x100000001b3ULL;
  };
  for (const auto& e : entries_) {
    feed(to_string(e.key.kind));
    feed(e.key.key);
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string FeatureSpace::serialize() const {
  std::ostringstream out;
  out << "transtyle-feature-space\tv1\t" << entries_.size() << "\n";
  for (const auto& e : entries_) {
    out << to_string(e.key.kind) << '\t' << e.key.key << '\t'
        << e.doc_frequency << '\t' << e.total_count << '\n';
  }
  return out.str();
}

FeatureSpace FeatureSpace::deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) ||
      header.rfind("transtyle-feature-space\tv1\t", 0) != 0)
    throw Error("BadSpaceFile", "missing feature-space header");
  std::vector<FeatureEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind, key, df, total;
    if (!std::getline(ls, kind, '\t') || !std::getline(ls, key, '\t') ||
        !std::getline(ls, df, '\t') || !std::getline(ls, total, '\t'))
      throw Error("BadSpaceFile", "bad feature line: " + line);
    FeatureEntry e;
    e.key = FeatureKey{feature_kind_from_string(kind), key};
    e.doc_frequency = std::stoll(df);
    e.total_count = std::stoll(total);
    entries.push_back(std::move(e));
  }
  return FeatureSpace(std::move(entries));
}

FeatureSpace build_feature_space(const std::vector<DocFeatures>& docs,
                                 const std::vector<std::size_t>& doc_indices,
                                 int min_df) {
  if (doc_indices.empty()) throw Error("EmptyCorpus", "no documents");
  std::map<FeatureKey, FeatureEntry> agg;
  for (std::size_t idx : doc_indices) {
    for (const auto& [key, n] : docs[idx].counts) {
      auto& e = agg[key];
      e.key = key;
      e.doc_frequency += 1;
      e.total_count += n;
    }
  }
  std::vector<FeatureEntry> entries;
  for (auto& [key, e] : agg) {
    if (e.doc_frequency >= min_df) entries.push_back(std::move(e));
  }
  if (entries.empty())
    throw Error("EmptySpace", "no feature reaches min_df=" +
                                  std::to_string(min_df));
  return FeatureSpace(std::move(entries));
}

const char* to_string(ValueMode m) {
  return m == ValueMode::raw_count ? "raw_count" : "rel_freq";
}

ValueMode value_mode_from_string(const std::string& s) {
  if (s == "raw_count") return ValueMode::raw_count;
  if (s == "rel_freq") return ValueMode::rel_freq;
  throw Error("UnknownValueMode", "not a value mode: '" + s + "'");
}

SparseVector vectorize(const DocFeatures& doc, const FeatureSpace& space,
                       ValueMode mode) {
  SparseVector vec;
  for (const auto& [key, n] : doc.counts) {
    int id = space.id_of(key);
    if (id < 0) continue;
    double value = static_cast<double>(n);
    if (mode == ValueMode::rel_freq) {
      if (doc.token_count <= 0) continue;
      value = value / static_cast<double>(doc.token_count) * 1000.0;
    }
    if (value > 0) vec.items.emplace_back(id, value);
  }
  std::sort(vec.items.begin(), vec.items.end());
  return vec;
}

}  // namespace transtyle
