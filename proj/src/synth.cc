#include "synth.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "util.h"

namespace transtyle {

namespace fs = std::filesystem;

namespace {

constexpr double kProbTolerance = 1e-9;
constexpr int kUnreachable = 1 << 20;

std::string format_prob(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

// Shortest derivation depth (edges to the deepest leaf, counting the
// tag->word edge) for every symbol; kUnreachable marks symbols that
// cannot terminate.
std::map<std::string, int> min_depths(const Pcfg& g) {
  std::map<std::string, int> depth;
  for (const auto& [tag, lex] : g.lexicon) {
    (void)lex;
    depth[tag] = 1;
  }
  for (const auto& [lhs, rules] : g.rules) {
    (void)rules;
    if (!depth.count(lhs)) depth[lhs] = kUnreachable;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [lhs, rules] : g.rules) {
      int best = depth.at(lhs);
      for (const auto& rule : rules) {
        int worst_child = 0;
        for (const auto& sym : rule.rhs) {
          auto it = depth.find(sym);
          int d = it == depth.end() ? kUnreachable : it->second;
          worst_child = std::max(worst_child, d);
        }
        best = std::min(best, worst_child >= kUnreachable ? kUnreachable
                                                          : worst_child + 1);
      }
      if (best < depth.at(lhs)) {
        depth[lhs] = best;
        changed = true;
      }
    }
  }
  return depth;
}

int rule_min_depth(const PcfgRule& rule,
                   const std::map<std::string, int>& depths) {
  int worst = 0;
  for (const auto& sym : rule.rhs) {
    auto it = depths.find(sym);
    int d = it == depths.end() ? kUnreachable : it->second;
    worst = std::max(worst, d);
  }
  return worst >= kUnreachable ? kUnreachable : worst + 1;
}

}  // namespace

void validate_pcfg(const Pcfg& grammar) {
  if (grammar.start.empty())
    throw Error("ImproperGrammar", "grammar has no start symbol");
  if (!grammar.rules.count(grammar.start) &&
      !grammar.lexicon.count(grammar.start))
    throw Error("ImproperGrammar",
                "start symbol '" + grammar.start + "' is undefined");
  for (const auto& [lhs, rules] : grammar.rules) {
    if (grammar.lexicon.count(lhs))
      throw Error("ImproperGrammar",
                  "'" + lhs + "' is both a rule lhs and a preterminal");
    if (rules.empty())
      throw Error("ImproperGrammar", "'" + lhs + "' has no rules");
    double sum = 0.0;
    for (const auto& rule : rules) {
      if (rule.rhs.empty())
        throw Error("ImproperGrammar", "'" + lhs + "' has an empty rhs");
      if (rule.head < 0 || rule.head >= static_cast<int>(rule.rhs.size()))
        throw Error("ImproperGrammar",
                    "'" + lhs + "' head index out of range");
      if (rule.prob <= 0.0)
        throw Error("ImproperGrammar", "'" + lhs + "' has a rule with p <= 0");
      sum += rule.prob;
      for (const auto& sym : rule.rhs) {
        if (!grammar.rules.count(sym) && !grammar.lexicon.count(sym))
          throw Error("ImproperGrammar", "undefined symbol '" + sym + "'");
      }
    }
    if (std::fabs(sum - 1.0) > kProbTolerance)
      throw Error("ImproperGrammar", "probabilities of '" + lhs +
                                         "' sum to " + format_prob(sum));
  }
  for (const auto& [tag, entries] : grammar.lexicon) {
    if (entries.empty())
      throw Error("ImproperGrammar", "'" + tag + "' has an empty lexicon");
    double sum = 0.0;
    for (const auto& e : entries) {
      if (e.word.empty())
        throw Error("ImproperGrammar", "'" + tag + "' has an empty word");
      if (e.prob <= 0.0)
        throw Error("ImproperGrammar", "'" + tag + "' has a word with p <= 0");
      sum += e.prob;
    }
    if (std::fabs(sum - 1.0) > kProbTolerance)
      throw Error("ImproperGrammar",
                  "lexicon of '" + tag + "' sums to " + format_prob(sum));
  }
  auto depths = min_depths(grammar);
  if (depths.at(grammar.start) > kMaxDerivationDepth)
    throw Error("ImproperGrammar",
                "start symbol cannot terminate within depth " +
                    std::to_string(kMaxDerivationDepth));
}

Pcfg parse_grammar(const std::string& text) {
  Pcfg g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& what) {
      throw Error("BadGrammar",
                  what + " at line " + std::to_string(line_no));
    };
    double prob = 0.0;
    try {
      prob = std::stod(toks[0]);
    } catch (const std::exception&) {
      fail("expected probability, got '" + toks[0] + "'");
    }
    if (toks.size() < 4) fail("truncated line");
    const std::string& lhs = toks[1];
    if (toks[2] == "=>") {
      if (toks.size() != 4) fail("lexicon line needs exactly one word");
      g.lexicon[lhs].push_back(LexEntry{toks[3], prob});
      continue;
    }
    if (toks[2] != "->") fail("expected '->' or '=>'");
    if (toks.back().size() < 2 || toks.back()[0] != '@')
      fail("missing @head_index");
    PcfgRule rule;
    rule.prob = prob;
    int head = 0;
    auto [p, ec] = std::from_chars(toks.back().data() + 1,
                                   toks.back().data() + toks.back().size(),
                                   head);
    if (ec != std::errc() || p != toks.back().data() + toks.back().size())
      fail("bad head index '" + toks.back() + "'");
    rule.head = head;
    for (std::size_t i = 3; i + 1 < toks.size(); ++i)
      rule.rhs.push_back(toks[i]);
    if (rule.rhs.empty()) fail("empty rhs");
    if (g.start.empty()) g.start = lhs;
    g.rules[lhs].push_back(std::move(rule));
  }
  validate_pcfg(g);
  return g;
}

std::string render_grammar(const Pcfg& grammar) {
  std::ostringstream out;
  auto emit_rules = [&](const std::string& lhs) {
    for (const auto& rule : grammar.rules.at(lhs)) {
      out << format_prob(rule.prob) << ' ' << lhs << " ->";
      for (const auto& sym : rule.rhs) out << ' ' << sym;
      out << " @" << rule.head << '\n';
    }
  };
  emit_rules(grammar.start);
  for (const auto& [lhs, rules] : grammar.rules) {
    (void)rules;
    if (lhs != grammar.start) emit_rules(lhs);
  }
  for (const auto& [tag, entries] : grammar.lexicon) {
    for (const auto& e : entries)
      out << format_prob(e.prob) << ' ' << tag << " => " << e.word << '\n';
  }
  return out.str();
}

namespace {

struct GenNode {
  std::string label;
  std::vector<GenNode> children;
  std::string word;      // preterminals only
  int head_child = 0;
  int token_index = 0;   // preterminals only, 1-based
};

class Generator {
 public:
  explicit Generator(const Pcfg& g) : grammar_(g), depths_(min_depths(g)) {}

  GenNode generate(const std::string& symbol, int budget,
                   std::mt19937_64& rng) const {
    GenNode node;
    node.label = symbol;
    auto lex = grammar_.lexicon.find(symbol);
    if (lex != grammar_.lexicon.end()) {
      node.word = sample_word(lex->second, rng);
      return node;
    }
    const auto& rules = grammar_.rules.at(symbol);
    const PcfgRule& rule = sample_rule(rules, budget, rng);
    node.head_child = rule.head;
    for (const auto& sym : rule.rhs)
      node.children.push_back(generate(sym, budget - 1, rng));
    return node;
  }

 private:
  const PcfgRule& sample_rule(const std::vector<PcfgRule>& rules, int budget,
                              std::mt19937_64& rng) const {
    double total = 0.0;
    for (const auto& r : rules)
      if (rule_min_depth(r, depths_) <= budget) total += r.prob;
    // validate_pcfg guarantees at least one rule fits any budget the
    // recursion can reach.
    double u = uniform_unit(rng) * total;
    const PcfgRule* last = nullptr;
    for (const auto& r : rules) {
      if (rule_min_depth(r, depths_) > budget) continue;
      last = &r;
      u -= r.prob;
      if (u < 0.0) return r;
    }
    return *last;
  }

  std::string sample_word(const std::vector<LexEntry>& entries,
                          std::mt19937_64& rng) const {
    double u = uniform_unit(rng);
    for (const auto& e : entries) {
      u -= e.prob;
      if (u < 0.0) return e.word;
    }
    return entries.back().word;
  }

  const Pcfg& grammar_;
  std::map<std::string, int> depths_;
};

void number_preterminals(GenNode& node, int& next_index) {
  if (node.children.empty()) {
    node.token_index = ++next_index;
    return;
  }
  for (auto& c : node.children) number_preterminals(c, next_index);
}

ConstituentTree to_tree(const GenNode& node) {
  ConstituentTree t;
  t.label = node.label;
  if (node.children.empty()) {
    ConstituentTree leaf;
    leaf.surface = node.word;
    t.children.push_back(std::move(leaf));
    return t;
  }
  for (const auto& c : node.children) t.children.push_back(to_tree(c));
  return t;
}

std::string lowercase(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void collect_tokens(const GenNode& node, std::vector<Token>& tokens) {
  if (node.children.empty()) {
    tokens.push_back(Token{node.token_index, node.word, node.label});
    return;
  }
  for (const auto& c : node.children) collect_tokens(c, tokens);
}

// Head percolation: returns the subtree's lexical head token index and
// appends the arcs induced by non-head children.
int percolate(const GenNode& node, std::vector<DependencyArc>& arcs) {
  if (node.children.empty()) return node.token_index;
  std::vector<int> child_heads;
  child_heads.reserve(node.children.size());
  for (const auto& c : node.children) child_heads.push_back(percolate(c, arcs));
  int head = child_heads[node.head_child];
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (static_cast<int>(i) == node.head_child) continue;
    arcs.push_back(DependencyArc{head, child_heads[i],
                                 lowercase(node.children[i].label)});
  }
  return head;
}

Sentence generate_sentence(const Generator& gen, const std::string& start,
                           std::mt19937_64& rng) {
  GenNode root = gen.generate(start, kMaxDerivationDepth, rng);
  int next_index = 0;
  number_preterminals(root, next_index);

  Sentence sent;
  sent.tree = to_tree(root);
  collect_tokens(root, sent.tokens);
  std::vector<DependencyArc> arcs;
  int sentence_head = percolate(root, arcs);
  arcs.push_back(DependencyArc{0, sentence_head, "root"});
  std::sort(arcs.begin(), arcs.end(),
            [](const DependencyArc& a, const DependencyArc& b) {
              return a.dependent < b.dependent;
            });
  sent.arcs = std::move(arcs);
  return sent;
}

}  // namespace

Corpus generate_corpus(const Pcfg& grammar_a, const Pcfg& grammar_b,
                       int docs_per_class, int sentences_per_doc,
                       std::uint64_t seed, int jobs) {
  validate_pcfg(grammar_a);
  validate_pcfg(grammar_b);
  if (docs_per_class <= 0)
    throw Error("EmptyCorpus", "docs_per_class must be >= 1");
  if (sentences_per_doc <= 0)
    throw Error("EmptyCorpus", "sentences_per_doc must be >= 1");

  const Genre genre_cycle[4] = {Genre::news, Genre::general_prose,
                                Genre::science, Genre::fiction};
  const int total = docs_per_class * 2;
  Corpus corpus;
  corpus.documents.resize(total);

  Generator gen_a(grammar_a);
  Generator gen_b(grammar_b);
  parallel_for(static_cast<std::size_t>(total), jobs, [&](std::size_t g) {
    const bool translated = static_cast<int>(g) >= docs_per_class;
    const int within = static_cast<int>(g) % docs_per_class;
    const Generator& gen = translated ? gen_b : gen_a;
    const Pcfg& grammar = translated ? grammar_b : grammar_a;

    Document doc;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s_%04d", translated ? "tran" : "orig",
                  within);
    doc.id = buf;
    doc.cls = translated ? Class::translated : Class::original;
    doc.genre = genre_cycle[within % 4];

    std::mt19937_64 rng(mix64(seed, g));
    for (int s = 0; s < sentences_per_doc; ++s)
      doc.sentences.push_back(generate_sentence(gen, grammar.start, rng));
    corpus.documents[g] = std::move(doc);
  });
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::string& out_dir) {
  fs::create_directories(fs::path(out_dir) / "trees");
  fs::create_directories(fs::path(out_dir) / "deps");

  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  for (const auto& doc : corpus.documents) {
    std::string tree_rel = "trees/" + doc.id + ".trees";
    std::string dep_rel = "deps/" + doc.id + ".deps";

    std::ofstream trees(fs::path(out_dir) / tree_rel, std::ios::binary);
    std::ofstream deps(fs::path(out_dir) / dep_rel, std::ios::binary);
    if (!trees || !deps)
      throw Error("FileMissing", "cannot write into " + out_dir);
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      const Sentence& sent = doc.sentences[s];
      if (s > 0) {
        trees << '\n';
        deps << '\n';
      }
      trees << render_tree(*sent.tree) << '\n';
      for (const auto& arc : *sent.arcs) {
        const Token& tok = sent.tokens[arc.dependent - 1];
        deps << tok.index << '\t' << tok.surface << '\t' << tok.pos << '\t'
             << arc.head << '\t' << arc.relation << '\n';
      }
    }

    nlohmann::ordered_json entry;
    entry["id"] = doc.id;
    entry["genre"] = to_string(doc.genre);
    entry["class"] = to_string(doc.cls);
    entry["trees"] = tree_rel;
    entry["deps"] = dep_rel;
    manifest.push_back(std::move(entry));
  }
  std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
  if (!mf) throw Error("FileMissing", "cannot write into " + out_dir);
  mf << manifest.dump(2) << '\n';
}

std::pair<Pcfg, Pcfg> default_grammar_pair() {
  // Shared skeleton; the two grammars differ only in rule probabilities.
  // The contrasts follow the attested directions: pronouns, determiner
  // and DE-genitive modifiers, and CC coordination lean "translated";
  // punctuation-conjoined NPs/VPs and bare-noun NPs lean "original".
  auto lexicon = [](Pcfg& g) {
    g.lexicon["PN"] = {{"我们", 0.3}, {"他", 0.25}, {"她", 0.15}, {"它", 0.1},
                       {"他们", 0.2}};
    g.lexicon["NN"] = {{"公司", 0.2}, {"市场", 0.15}, {"问题", 0.15},
                       {"经济", 0.2}, {"医生", 0.15}, {"护士", 0.15}};
    g.lexicon["NR"] = {{"美国", 0.5}, {"中国", 0.5}};
    g.lexicon["DT"] = {{"该", 0.4}, {"这些", 0.35}, {"那些", 0.25}};
    g.lexicon["VV"] = {{"照", 0.2}, {"懂得", 0.2}, {"谴责", 0.2},
                       {"发展", 0.2}, {"让", 0.2}};
    g.lexicon["AD"] = {{"一起", 0.4}, {"非常", 0.35}, {"最先", 0.25}};
    g.lexicon["CC"] = {{"和", 0.7}, {"与", 0.3}};
    g.lexicon["PU"] = {{"。", 0.4}, {"，", 0.35}, {"、", 0.25}};
    g.lexicon["DEG"] = {{"的", 1.0}};
  };

  Pcfg a;
  a.start = "IP";
  a.rules["IP"] = {{{"NP", "VP", "PU"}, 0.55, 1},
                   {{"VP", "PU"}, 0.30, 0},
                   {{"NP", "VP"}, 0.15, 1}};
  a.rules["NP"] = {{{"PN"}, 0.20, 0},
                   {{"NN"}, 0.35, 0},
                   {{"NR"}, 0.03, 0},
                   {{"NN", "PU", "NN"}, 0.15, 0},
                   {{"NP", "CC", "NP"}, 0.03, 0},
                   {{"DP", "NP"}, 0.02, 1},
                   {{"DNP", "NP"}, 0.02, 1},
                   {{"NN", "NN"}, 0.20, 1}};
  a.rules["VP"] = {{{"VV"}, 0.22, 0},
                   {{"VV", "NP"}, 0.40, 0},
                   {{"AD", "VP"}, 0.10, 1},
                   {{"VP", "PU", "VP"}, 0.20, 0},
                   {{"PP", "VP"}, 0.08, 1}};
  a.rules["PP"] = {{{"AD", "NP"}, 1.0, 0}};
  a.rules["DP"] = {{{"DT"}, 1.0, 0}};
  a.rules["DNP"] = {{{"NP", "DEG"}, 1.0, 0}};
  lexicon(a);

  Pcfg b;
  b.start = "IP";
  b.rules["IP"] = {{{"NP", "VP", "PU"}, 0.80, 1},
                   {{"VP", "PU"}, 0.05, 0},
                   {{"NP", "VP"}, 0.15, 1}};
  b.rules["NP"] = {{{"PN"}, 0.60, 0},
                   {{"NN"}, 0.10, 0},
                   {{"NR"}, 0.05, 0},
                   {{"NN", "PU", "NN"}, 0.02, 0},
                   {{"NP", "CC", "NP"}, 0.08, 0},
                   {{"DP", "NP"}, 0.07, 1},
                   {{"DNP", "NP"}, 0.06, 1},
                   {{"NN", "NN"}, 0.02, 1}};
  b.rules["VP"] = {{{"VV"}, 0.25, 0},
                   {{"VV", "NP"}, 0.40, 0},
                   {{"AD", "VP"}, 0.20, 1},
                   {{"VP", "PU", "VP"}, 0.05, 0},
                   {{"PP", "VP"}, 0.10, 1}};
  b.rules["PP"] = {{{"AD", "NP"}, 1.0, 0}};
  b.rules["DP"] = {{{"DT"}, 1.0, 0}};
  b.rules["DNP"] = {{{"NP", "DEG"}, 1.0, 0}};
  lexicon(b);

  return {std::move(a), std::move(b)};
}

}  // namespace transtyle
