#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "normalize.h"
#include "utf8.h"
#include "util.h"

using namespace transtyle;

TEST_CASE("ellipsis runs collapse to a double ellipsis") {
  CHECK(normalize_text("结束。。。") == "结束……");
  CHECK(normalize_text("结束。。。。。") == "结束……");
  CHECK(normalize_text("等等....") == "等等……");
  CHECK(normalize_text("等等...") == "等等……");
  // Runs of one or two are not an ellipsis.
  CHECK(normalize_text("结束。。") == "结束。。");
  CHECK(normalize_text("好。") == "好。");
}

TEST_CASE("half-width punctuation becomes full-width") {
  CHECK(normalize_text("好!") == "好！");
  CHECK(normalize_text("什么?") == "什么？");
  CHECK(normalize_text("a,b") == "a，b");
  CHECK(normalize_text("(注)") == "（注）");
  // Letters and digits stay half-width.
  CHECK(normalize_text("abc123") == "abc123");
}

TEST_CASE("URL spans are removed") {
  NormalizeStats stats;
  CHECK(normalize_text("见http://example.com/a?b=1页", &stats) == "见页");
  CHECK(stats.urls_removed == 1);
  CHECK(normalize_text("https://a.b.c 之后") == " 之后");
  // "://" with no scheme letter is left alone (then width-converted).
  CHECK(normalize_text("x ://y") == "x ：／／y");
}

TEST_CASE("counts report what changed") {
  NormalizeStats stats;
  normalize_text("结束。。。!", &stats);
  CHECK(stats.ellipses_normalized == 1);
  CHECK(stats.punct_converted == 1);
  CHECK(stats.urls_removed == 0);

  NormalizeStats clean;
  normalize_text("已经规范的文本……，：", &clean);
  CHECK_FALSE(clean.changed());
}

TEST_CASE("normalization is idempotent and never grows the text") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> pieces = {
      "我们", "。",  "。。。", "....", "http://x.y/z", "!",  "?",
      "abc",  "123", "……",     " ",    "、",           "فا", "(x)",
      "：//", "htt", "p://q",  "\t",   "。。",         "．"};
  for (int trial = 0; trial < 500; ++trial) {
    std::string s;
    int n = 1 + static_cast<int>(uniform_index(rng, 8));
    for (int i = 0; i < n; ++i) s += pieces[uniform_index(rng, pieces.size())];
    std::string once = normalize_text(s);
    std::string twice = normalize_text(once);
    CAPTURE(s);
    CHECK(once == twice);
    CHECK(utf8::length(once) <= utf8::length(s));
  }
}

TEST_CASE("ellipsis example from mixed input") {
  // URL dots must not be mistaken for ellipsis material.
  CHECK(normalize_text("见http://a...b页。。。") == "见页……");
}
