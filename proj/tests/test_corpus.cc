#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "corpus.h"
#include "util.h"

using namespace transtyle;
namespace fs = std::filesystem;

namespace {

// The worked sentence used throughout: 我们 一起 照 幅 像 。
const char* kSampleTree =
    "(ROOT (IP (NP (PN 我们)) (VP (ADVP (AD 一起)) (VP (VV 照) "
    "(NP (QP (CLP (M 幅))) (NP (NN 像))))) (PU 。)))";

const char* kSampleDeps =
    "1\t我们\tPN\t3\tnsubj\n"
    "2\t一起\tAD\t3\tadvmod\n"
    "3\t照\tVV\t0\troot\n"
    "4\t幅\tM\t5\tnummod\n"
    "5\t像\tNN\t3\tdobj\n"
    "6\t。\tPU\t3\tpunct\n";

std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

// Random tree over a small label set; leaves close with probability
// rising in depth so trees stay small.
ConstituentTree random_tree(std::mt19937_64& rng, int depth = 0) {
  static const std::vector<std::string> cats = {"IP", "NP", "VP", "PP", "CP"};
  static const std::vector<std::string> tags = {"NN", "VV", "PN", "PU"};
  static const std::vector<std::string> words = {"猫", "狗", "跑", "。", "w"};
  bool close = depth >= 4 || uniform_index(rng, 10) < static_cast<std::size_t>(3 + depth);
  if (close) {
    ConstituentTree pre;
    pre.label = tags[uniform_index(rng, tags.size())];
    ConstituentTree leaf;
    leaf.surface = words[uniform_index(rng, words.size())];
    pre.children.push_back(leaf);
    return pre;
  }
  ConstituentTree node;
  node.label = cats[uniform_index(rng, cats.size())];
  std::size_t arity = 1 + uniform_index(rng, 3);
  for (std::size_t i = 0; i < arity; ++i)
    node.children.push_back(random_tree(rng, depth + 1));
  return node;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("transtyle_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& rel, const std::string& contents) const {
    fs::path p = path / rel;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << contents;
  }
};

}  // namespace

TEST_CASE("bracketed tree readback") {
  ConstituentTree t = parse_bracketed_tree("(ROOT (IP (NP (PN 我们)) (VP (VV 照)) (PU 。)))");
  CHECK(t.label == "ROOT");
  auto yield = tree_yield(t);
  REQUIRE(yield.size() == 3);
  CHECK(yield[0] == "我们");
  CHECK(yield[1] == "照");
  CHECK(yield[2] == "。");
  auto tags = tree_preterminal_labels(t);
  CHECK(tags == std::vector<std::string>{"PN", "VV", "PU"});
}

TEST_CASE("tree parsing is whitespace-insensitive") {
  ConstituentTree a = parse_bracketed_tree("(IP (NP (PN 我们)) (PU 。))");
  ConstituentTree b = parse_bracketed_tree("(IP\n  (NP\t(PN 我们))\n  (PU 。)\n)");
  CHECK(render_tree(a) == render_tree(b));
}

TEST_CASE("tree parse errors carry byte offsets") {
  CHECK(error_code([] { parse_bracketed_tree("(IP (NP)"); }) == "EmptyNode");
  CHECK(error_code([] { parse_bracketed_tree("(IP (NP (PN x))"); }) ==
        "UnbalancedBrackets");
  CHECK(error_code([] { parse_bracketed_tree("(IP (PN x)) junk"); }) ==
        "TrailingContent");
  CHECK(error_code([] { parse_bracketed_tree("()"); }) == "EmptyNode");
  CHECK(error_code([] { parse_bracketed_tree("(X a (NP (PN b)))"); }) ==
        "BadNode");
  CHECK(error_code([] { parse_bracketed_tree("(X a b)"); }) == "BadNode");
  try {
    parse_bracketed_tree("(IP (NP)");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
}

TEST_CASE("sample tree has the documented shape") {
  ConstituentTree t = parse_bracketed_tree(kSampleTree);
  auto yield = tree_yield(t);
  REQUIRE(yield.size() == 6);
  CHECK(yield == std::vector<std::string>{"我们", "一起", "照", "幅", "像", "。"});
  CHECK(tree_preterminal_labels(t) ==
        std::vector<std::string>{"PN", "AD", "VV", "M", "NN", "PU"});
  // Deepest preterminal is M: six edges below IP, seven below ROOT.
  CHECK(tree_depth(t) == 7);
  CHECK(tree_depth(t.children[0]) == 6);
}

TEST_CASE("render/parse round-trip on random trees") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 300; ++i) {
    ConstituentTree t = random_tree(rng);
    std::string rendered = render_tree(t);
    ConstituentTree back = parse_bracketed_tree(rendered);
    CHECK(render_tree(back) == rendered);
  }
}

TEST_CASE("dependency table readback") {
  auto sentences = read_dependency_table(kSampleDeps);
  REQUIRE(sentences.size() == 1);
  const auto& s = sentences[0];
  REQUIRE(s.tokens.size() == 6);
  CHECK(s.tokens[0].surface == "我们");
  CHECK(s.tokens[2].pos == "VV");
  REQUIRE(s.arcs.size() == 6);
  CHECK(s.arcs[0].head == 3);
  CHECK(s.arcs[0].relation == "nsubj");
  CHECK(s.arcs[2].head == 0);
  CHECK(s.arcs[2].relation == "root");
}

TEST_CASE("dependency table validation") {
  CHECK(error_code([] { read_dependency_table("1\tx\tNN\t0\n"); }) ==
        "BadColumnCount");
  CHECK(error_code([] {
          read_dependency_table("1\tx\tNN\t0\troot\n2\ty\tNN\t0\troot\n");
        }) == "MultipleRoots");
  CHECK(error_code([] { read_dependency_table("1\tx\tNN\t1\tdep\n"); }) ==
        "NoRoot");
  CHECK(error_code([] { read_dependency_table("1\tx\tNN\t5\tdep\n"); }) ==
        "DanglingHead");
  // Single token rooted at 0 is the smallest valid sentence.
  auto one = read_dependency_table("1\tx\tNN\t0\troot\n");
  REQUIRE(one.size() == 1);
  CHECK(one[0].arcs.size() == 1);
}

TEST_CASE("blank lines separate dependency sentences") {
  std::string two = std::string(kSampleDeps) + "\n" + "1\t好\tVA\t0\troot\n";
  auto sentences = read_dependency_table(two);
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[1].tokens.size() == 1);
}

TEST_CASE("manifest loading assembles and validates documents") {
  TempDir dir;
  dir.write("t/a.trees", std::string(kSampleTree) + "\n");
  dir.write("d/a.deps", kSampleDeps);
  dir.write("t/b.trees", "(IP (VP (VV 跑)) (PU 。))\n\n(IP (NP (NN 猫)))\n");
  dir.write(
      "manifest.json",
      R"([{"id":"a","genre":"news","class":"original","trees":"t/a.trees","deps":"d/a.deps"},)"
      R"({"id":"b","genre":"fiction","class":"translated","trees":"t/b.trees"}])");

  CorpusLoad load = load_corpus((dir.path / "manifest.json").string());
  REQUIRE(load.corpus.documents.size() == 2);
  const Document& a = load.corpus.documents[0];
  CHECK(a.sentences.size() == 1);
  CHECK(a.sentences[0].tree.has_value());
  CHECK(a.sentences[0].arcs.has_value());
  CHECK(a.token_count() == 6);
  const Document& b = load.corpus.documents[1];
  CHECK(b.sentences.size() == 2);
  CHECK(b.sentences[0].tokens.size() == 2);  // tokens derived from the tree
  CHECK_FALSE(b.sentences[0].arcs.has_value());
  // The trees-only document is flagged.
  bool flagged = false;
  for (const auto& w : load.warnings)
    flagged = flagged || w.find("'b'") != std::string::npos;
  CHECK(flagged);
}

TEST_CASE("manifest errors") {
  TempDir dir;
  dir.write("a.trees", "(IP (NN x))\n");
  dir.write("manifest.json",
            R"([{"id":"a","genre":"news","class":"original","trees":"a.trees"},)"
            R"({"id":"a","genre":"news","class":"original","trees":"a.trees"}])");
  CHECK(error_code([&] { load_corpus((dir.path / "manifest.json").string()); }) ==
        "DuplicateId");

  dir.write("manifest2.json",
            R"([{"id":"a","genre":"poetry","class":"original","trees":"a.trees"}])");
  CHECK(error_code([&] { load_corpus((dir.path / "manifest2.json").string()); }) ==
        "UnknownGenre");

  dir.write("manifest3.json",
            R"([{"id":"a","genre":"news","class":"machine","trees":"a.trees"}])");
  CHECK(error_code([&] { load_corpus((dir.path / "manifest3.json").string()); }) ==
        "UnknownClass");

  dir.write("manifest4.json",
            R"([{"id":"a","genre":"news","class":"original","trees":"missing.trees"}])");
  CHECK(error_code([&] { load_corpus((dir.path / "manifest4.json").string()); }) ==
        "FileMissing");
}

TEST_CASE("tree yield must match dependency tokens") {
  TempDir dir;
  dir.write("a.trees", "(IP (NP (PN 我们)) (VP (VV 照)))\n");
  dir.write("a.deps", "1\t我们\tPN\t2\tnsubj\n2\t照\tVV\t0\troot\n3\t。\tPU\t2\tpunct\n");
  dir.write("manifest.json",
            R"([{"id":"a","genre":"news","class":"original","trees":"a.trees","deps":"a.deps"}])");
  CHECK(error_code([&] { load_corpus((dir.path / "manifest.json").string()); }) ==
        "YieldMismatch");
}

TEST_CASE("marked header sentences are dropped at load") {
  TempDir dir;
  dir.write("a.trees", "(IP (NN 标题))\n\n(IP (VP (VV 跑)) (PU 。))\n");
  dir.write("manifest.json",
            R"([{"id":"a","genre":"news","class":"original","trees":"a.trees","header_sentences":1}])");
  CorpusLoad load = load_corpus((dir.path / "manifest.json").string());
  REQUIRE(load.corpus.documents[0].sentences.size() == 1);
  CHECK(load.corpus.documents[0].sentences[0].tokens.size() == 2);
}
