#ifndef TRANSTYLE_SYNTH_H_
#define TRANSTYLE_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "corpus.h"

namespace transtyle {

// Derivations are cut off at this depth; near the cap, sampling is
// restricted to rules that can still terminate in the remaining budget.
constexpr int kMaxDerivationDepth = 12;

struct PcfgRule {
  std::vector<std::string> rhs;
  double prob = 0.0;
  int head = 0;  // index into rhs of the head child
};

struct LexEntry {
  std::string word;
  double prob = 0.0;
};

struct Pcfg {
  std::string start;
  std::map<std::string, std::vector<PcfgRule>> rules;    // by lhs
  std::map<std::string, std::vector<LexEntry>> lexicon;  // by preterminal tag
};

// Throws ImproperGrammar: per-symbol probabilities must sum to 1 +- 1e-9,
// every rhs symbol must be defined, no symbol may be both a preterminal
// and a rule lhs, and the start symbol must terminate within the depth cap.
void validate_pcfg(const Pcfg& grammar);

// One rule per line "P lhs -> rhs... @head_index"; lexicon lines
// "P tag => word". '#' starts a comment. The first rule's lhs is the
// start symbol.
Pcfg parse_grammar(const std::string& text);
std::string render_grammar(const Pcfg& grammar);

std::pair<Pcfg, Pcfg> default_grammar_pair();

// Two-class corpus: "original" documents sampled from grammar_a,
// "translated" from grammar_b; genres cycle through the four known ones.
// Dependency arcs come from head percolation: each non-head child's
// lexical head attaches to the head child's lexical head with the child
// category, lowercased, as relation. Each document draws from its own
// (seed, doc index) substream, so output is independent of scheduling.
Corpus generate_corpus(const Pcfg& grammar_a, const Pcfg& grammar_b,
                       int docs_per_class, int sentences_per_doc,
                       std::uint64_t seed, int jobs = 1);

// Writes manifest.json plus per-document tree and dependency files in the
// formats load_corpus reads back.
void write_corpus(const Corpus& corpus, const std::string& out_dir);

}  // namespace transtyle

#endif  // TRANSTYLE_SYNTH_H_
