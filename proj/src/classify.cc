#include "classify.h"

#include <algorithm>
#include <random>
#include <set>

#include "util.h"

namespace transtyle {

std::vector<std::size_t> FoldAssignment::train_indices(const Corpus& corpus,
                                                       int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    if (fold_of.at(corpus.documents[i].id) != fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::test_indices(const Corpus& corpus,
                                                      int fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    if (fold_of.at(corpus.documents[i].id) == fold) out.push_back(i);
  }
  return out;
}

FoldAssignment stratified_kfold(const Corpus& corpus, int k,
                                std::uint64_t seed) {
  if (k < 2) throw Error("BadFoldCount", "k must be >= 2");
  if (corpus.documents.empty()) throw Error("EmptyCorpus", "no documents");

  // Cells over genres and classes actually present.
  std::map<std::pair<Genre, Class>, std::vector<std::string>> cells;
  std::set<Genre> genres;
  std::set<Class> classes;
  for (const auto& doc : corpus.documents) {
    cells[{doc.genre, doc.cls}].push_back(doc.id);
    genres.insert(doc.genre);
    classes.insert(doc.cls);
  }
  for (Genre g : genres) {
    for (Class c : classes) {
      if (!cells.count({g, c}))
        throw Error("EmptyCell", std::string("no documents in cell (") +
                                     to_string(g) + ", " + to_string(c) + ")");
    }
  }

  FoldAssignment assignment;
  assignment.k = k;
  std::mt19937_64 rng(seed);
  // One dealing cursor per class: each cell starts dealing where the
  // previous cell of the same class stopped, spreading remainders across
  // folds instead of piling them on fold 0.
  std::map<Class, int> cursor;
  for (auto& [cell, ids] : cells) {
    std::sort(ids.begin(), ids.end());
    shuffle_deterministic(ids, rng);
    int& start = cursor[cell.second];
    for (std::size_t i = 0; i < ids.size(); ++i)
      assignment.fold_of[ids[i]] = (start + static_cast<int>(i)) % k;
    start = (start + static_cast<int>(ids.size())) % k;
  }
  return assignment;
}

namespace {

ClassMetrics metrics_from_counts(std::int64_t tp, std::int64_t fp,
                                 std::int64_t fn) {
  ClassMetrics m;
  m.precision = tp + fp > 0
                    ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp)
                    : 0.0;
  m.recall = tp + fn > 0
                 ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn)
                 : 0.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

}  // namespace

EvalReport evaluate(const std::vector<Class>& pred,
                    const std::vector<Class>& gold) {
  if (pred.size() != gold.size())
    throw Error("LengthMismatch", "prediction and gold lengths differ");
  if (pred.empty()) throw Error("LengthMismatch", "nothing to evaluate");
  EvalReport r;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    bool p = pred[i] == Class::translated;
    bool g = gold[i] == Class::translated;
    if (p && g) ++r.tp;
    else if (p && !g) ++r.fp;
    else if (!p && g) ++r.fn;
    else ++r.tn;
  }
  r.translated = metrics_from_counts(r.tp, r.fp, r.fn);
  r.original = metrics_from_counts(r.tn, r.fn, r.fp);
  r.macro_f = (r.translated.f1 + r.original.f1) / 2.0;
  return r;
}

}  // namespace transtyle
