#include "experiment.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "util.h"

namespace transtyle {

namespace {

FeatureParams parse_family(const nlohmann::ordered_json& j) {
  FeatureParams p;
  p.kind = feature_kind_from_string(j.at("kind").get<std::string>());
  if (j.contains("n_max")) p.n_max = j["n_max"].get<int>();
  if (j.contains("d_min")) p.d_min = j["d_min"].get<int>();
  if (j.contains("d_max")) p.d_max = j["d_max"].get<int>();
  if (j.contains("root_filter"))
    p.root_filter = j["root_filter"].get<std::string>();
  return p;
}

}  // namespace

ExperimentConfig default_experiment_config() {
  ExperimentConfig config;
  config.features.families = {FeatureParams{FeatureKind::cfgr, 3, 1, 2, ""}};
  config.raw = nlohmann::ordered_json::object();
  return config;
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("BadConfig", std::string("config parse failure: ") + e.what());
  }
  ExperimentConfig config = default_experiment_config();
  config.raw = j;
  try {
    if (j.contains("features")) {
      config.features.families.clear();
      for (const auto& f : j["features"])
        config.features.families.push_back(parse_family(f));
    }
    if (j.contains("min_df")) config.features.min_df = j["min_df"].get<int>();
    if (j.contains("function_tags")) {
      config.features.function_tags.clear();
      for (const auto& t : j["function_tags"])
        config.features.function_tags.insert(t.get<std::string>());
    }
    if (j.contains("value_mode"))
      config.value_mode = value_mode_from_string(j["value_mode"].get<std::string>());
    if (j.contains("k")) config.k = j["k"].get<int>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("k_top")) {
      config.k_top_grid.clear();
      for (const auto& v : j["k_top"]) config.k_top_grid.push_back(v.get<int>());
    }
    if (j.contains("C")) {
      config.c_grid.clear();
      for (const auto& v : j["C"]) config.c_grid.push_back(v.get<double>());
    }
    if (j.contains("report_top")) config.report_top = j["report_top"].get<int>();
    if (j.contains("svm")) {
      const auto& s = j["svm"];
      if (s.contains("max_epochs")) config.svm_max_epochs = s["max_epochs"].get<int>();
      if (s.contains("tolerance")) config.svm_tolerance = s["tolerance"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("BadConfig", std::string("bad config field: ") + e.what());
  }
  if (config.features.families.empty())
    throw Error("BadConfig", "config lists no feature families");
  if (config.k_top_grid.empty() || config.c_grid.empty())
    throw Error("BadConfig", "empty k_top or C grid");
  return config;
}

FoldArtifacts run_fold(const std::vector<DocFeatures>& extracted,
                       const std::vector<Class>& labels,
                       const std::vector<std::size_t>& train_indices,
                       const ExperimentConfig& config, int fold) {
  FoldArtifacts art;
  art.space = build_feature_space(extracted, train_indices,
                                  config.features.min_df);
  art.ig = information_gain(extracted, train_indices, labels, art.space);
  for (const auto& score : art.ig)
    art.ranking.emplace(art.space.entry(score.feature_id).key, score.rank);

  art.models.resize(config.k_top_grid.size());
  for (std::size_t ki = 0; ki < config.k_top_grid.size(); ++ki) {
    std::vector<int> selected = select_top_k(art.ig, config.k_top_grid[ki]);
    std::sort(selected.begin(), selected.end());
    std::vector<FeatureEntry> entries;
    entries.reserve(selected.size());
    for (int id : selected) entries.push_back(art.space.entry(id));
    FeatureSpace subspace(std::move(entries));

    std::vector<SparseVector> train_vectors;
    train_vectors.reserve(train_indices.size());
    std::vector<Class> train_labels;
    train_labels.reserve(train_indices.size());
    for (std::size_t idx : train_indices) {
      train_vectors.push_back(vectorize(extracted[idx], subspace,
                                        config.value_mode));
      train_labels.push_back(labels[idx]);
    }

    for (std::size_t ci = 0; ci < config.c_grid.size(); ++ci) {
      SvmConfig svm_config;
      svm_config.C = config.c_grid[ci];
      svm_config.max_epochs = config.svm_max_epochs;
      svm_config.tolerance = config.svm_tolerance;
      svm_config.seed = mix64(mix64(config.seed, static_cast<std::uint64_t>(fold)),
                              ki * 1000003ULL + ci);
      art.models[ki].push_back(train_svm(train_vectors, train_labels,
                                         subspace.size(), svm_config,
                                         config.value_mode,
                                         subspace.fingerprint()));
    }
    art.subspaces.push_back(std::move(subspace));
  }
  return art;
}

ExperimentReport run_experiment(const Corpus& corpus,
                                const ExperimentConfig& config, int jobs) {
  if (corpus.documents.empty()) throw Error("EmptyCorpus", "no documents");

  ExperimentReport report;
  report.k = config.k;
  report.seed = config.seed;
  report.assignment = stratified_kfold(corpus, config.k, config.seed);

  std::vector<Class> labels;
  labels.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) labels.push_back(doc.cls);
  report.gold = labels;

  std::vector<DocFeatures> extracted = extract_corpus(corpus, config.features,
                                                      jobs);

  // Folds are independent; run them in parallel and merge in fold order.
  std::vector<FoldArtifacts> folds(config.k);
  std::vector<std::vector<std::size_t>> fold_test(config.k);
  parallel_for(static_cast<std::size_t>(config.k), jobs, [&](std::size_t f) {
    auto train_idx = report.assignment.train_indices(corpus, static_cast<int>(f));
    fold_test[f] = report.assignment.test_indices(corpus, static_cast<int>(f));
    folds[f] = run_fold(extracted, labels, train_idx, config,
                        static_cast<int>(f));
  });

  for (std::size_t ki = 0; ki < config.k_top_grid.size(); ++ki) {
    for (std::size_t ci = 0; ci < config.c_grid.size(); ++ci) {
      GridResult grid;
      grid.k_top = config.k_top_grid[ki];
      grid.c = config.c_grid[ci];
      grid.pooled_pred.assign(corpus.documents.size(), Class::original);
      for (int f = 0; f < config.k; ++f) {
        const FoldArtifacts& art = folds[f];
        const FeatureSpace& subspace = art.subspaces[ki];
        std::vector<SparseVector> test_vectors;
        std::vector<Class> test_gold;
        for (std::size_t idx : fold_test[f]) {
          test_vectors.push_back(vectorize(extracted[idx], subspace,
                                           config.value_mode));
          test_gold.push_back(labels[idx]);
        }
        PredictResult pred = predict(art.models[ki][ci], test_vectors,
                                     subspace.fingerprint());
        grid.per_fold.push_back(evaluate(pred.labels, test_gold));
        for (std::size_t t = 0; t < fold_test[f].size(); ++t)
          grid.pooled_pred[fold_test[f][t]] = pred.labels[t];
      }
      grid.pooled = evaluate(grid.pooled_pred, labels);
      report.grid.push_back(std::move(grid));
    }
  }

  std::vector<FoldRanking> rankings;
  rankings.reserve(folds.size());
  for (const auto& art : folds) rankings.push_back(art.ranking);
  report.ranking = average_ranks(rankings, extracted, labels);
  if (config.report_top >= 0 &&
      report.ranking.size() > static_cast<std::size_t>(config.report_top))
    report.ranking.resize(config.report_top);
  return report;
}

std::vector<McNemarRow> compare_experiments(const ExperimentReport& a,
                                            const ExperimentReport& b) {
  if (a.gold != b.gold)
    throw Error("LengthMismatch",
                "experiments ran over different corpora or orders");
  std::vector<McNemarRow> rows;
  for (const auto& ga : a.grid) {
    for (const auto& gb : b.grid) {
      if (ga.k_top != gb.k_top || ga.c != gb.c) continue;
      McNemarRow row;
      row.k_top = ga.k_top;
      row.c = ga.c;
      row.result = mcnemar(ga.pooled_pred, gb.pooled_pred, a.gold);
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::string rank_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

nlohmann::ordered_json eval_to_json(const EvalReport& e) {
  nlohmann::ordered_json j;
  j["tp"] = e.tp;
  j["fp"] = e.fp;
  j["fn"] = e.fn;
  j["tn"] = e.tn;
  j["precision_translated"] = e.translated.precision;
  j["recall_translated"] = e.translated.recall;
  j["f1_translated"] = e.translated.f1;
  j["precision_original"] = e.original.precision;
  j["recall_original"] = e.original.recall;
  j["f1_original"] = e.original.f1;
  j["macro_f"] = e.macro_f;
  return j;
}

void eval_to_tsv(std::ostringstream& out, const EvalReport& e) {
  out << e.tp << '\t' << e.fp << '\t' << e.fn << '\t' << e.tn << '\t'
      << percent(e.translated.precision) << '\t'
      << percent(e.translated.recall) << '\t' << percent(e.translated.f1)
      << '\t' << percent(e.original.precision) << '\t'
      << percent(e.original.recall) << '\t' << percent(e.original.f1) << '\t'
      << percent(e.macro_f);
}

}  // namespace

nlohmann::ordered_json report_to_json(const Corpus& corpus,
                                      const ExperimentConfig& config,
                                      const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["tool"] = "transtyle";
  j["report_version"] = 1;
  j["config"] = config.raw;

  nlohmann::ordered_json summary;
  summary["documents"] = corpus.documents.size();
  std::map<std::string, int> by_class, by_genre;
  for (const auto& doc : corpus.documents) {
    ++by_class[to_string(doc.cls)];
    ++by_genre[to_string(doc.genre)];
  }
  summary["by_class"] = by_class;
  summary["by_genre"] = by_genre;
  j["corpus"] = summary;

  j["k"] = report.k;
  j["seed"] = report.seed;
  nlohmann::ordered_json folds;
  for (const auto& [id, fold] : report.assignment.fold_of) folds[id] = fold;
  j["assignment"] = folds;

  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& grid : report.grid) {
    nlohmann::ordered_json g;
    g["k_top"] = grid.k_top;
    g["C"] = grid.c;
    nlohmann::ordered_json per_fold = nlohmann::ordered_json::array();
    for (std::size_t f = 0; f < grid.per_fold.size(); ++f) {
      nlohmann::ordered_json fj = eval_to_json(grid.per_fold[f]);
      fj["fold"] = f;
      per_fold.push_back(std::move(fj));
    }
    g["folds"] = per_fold;
    g["pooled"] = eval_to_json(grid.pooled);
    results.push_back(std::move(g));
  }
  j["results"] = results;

  nlohmann::ordered_json ranking = nlohmann::ordered_json::array();
  for (const auto& r : report.ranking) {
    nlohmann::ordered_json rj;
    rj["mean_rank"] = r.mean_rank;
    rj["kind"] = to_string(r.key.kind);
    rj["key"] = r.key.key;
    rj["per_fold"] = r.per_fold;
    rj["predicts"] = r.predicts;
    ranking.push_back(std::move(rj));
  }
  j["ranking"] = ranking;
  return j;
}

std::string metrics_tsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "k_top\tC\tfold\ttp\tfp\tfn\ttn\tP_translated\tR_translated\t"
         "F_translated\tP_original\tR_original\tF_original\tmacro_F\n";
  for (const auto& grid : report.grid) {
    for (std::size_t f = 0; f < grid.per_fold.size(); ++f) {
      out << grid.k_top << '\t' << general(grid.c) << '\t' << f << '\t';
      eval_to_tsv(out, grid.per_fold[f]);
      out << '\n';
    }
    out << grid.k_top << '\t' << general(grid.c) << '\t' << "pooled" << '\t';
    eval_to_tsv(out, grid.pooled);
    out << '\n';
  }
  return out.str();
}

std::string ranking_tsv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "mean_rank\tkind\tkey\tper_fold\tpredicts\n";
  for (const auto& r : report.ranking) {
    out << rank_str(r.mean_rank) << '\t' << to_string(r.key.kind) << '\t'
        << r.key.key << '\t';
    for (std::size_t i = 0; i < r.per_fold.size(); ++i) {
      if (i > 0) out << ',';
      out << r.per_fold[i];
    }
    out << '\t' << r.predicts << '\n';
  }
  return out.str();
}

std::string mcnemar_tsv(const std::vector<McNemarRow>& rows) {
  std::ostringstream out;
  out << "k_top\tC\tb\tc\tstatistic\tp\n";
  for (const auto& row : rows) {
    out << row.k_top << '\t' << general(row.c) << '\t' << row.result.b << '\t'
        << row.result.c << '\t' << general(row.result.statistic) << '\t'
        << general(row.result.p) << '\n';
  }
  return out.str();
}

}  // namespace transtyle
