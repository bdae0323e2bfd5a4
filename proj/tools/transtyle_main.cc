// transtyle: translated-vs-original text classification toolkit.
//
// Subcommands: normalize, extract, cv, query, synth. All randomness
// flows from --seed; reruns with the same flags produce identical bytes.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "corpus.h"
#include "experiment.h"
#include "fragments.h"
#include "normalize.h"
#include "synth.h"
#include "treequery.h"

namespace fs = std::filesystem;
using namespace transtyle;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("FileMissing", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const fs::path& path, const std::string& contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("FileMissing", "cannot write " + path.string());
  out << contents;
}

Corpus load_with_warnings(const std::string& manifest) {
  CorpusLoad load = load_corpus(manifest);
  for (const auto& w : load.warnings) std::cerr << "warning: " << w << '\n';
  return std::move(load.corpus);
}

ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) return default_experiment_config();
  return parse_experiment_config(slurp(path));
}

int cmd_normalize(const std::string& input, const std::string& output) {
  std::string raw = slurp(input);
  std::istringstream in(raw);
  std::ostringstream out;
  NormalizeStats total;
  std::string line;
  std::int64_t lines = 0, changed_lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    NormalizeStats stats;
    std::string cooked = normalize_text(line, &stats);
    if (stats.changed()) ++changed_lines;
    total += stats;
    out << cooked << '\n';
  }
  spill(output, out.str());
  std::cout << "lines\t" << lines << "\n"
            << "changed_lines\t" << changed_lines << "\n"
            << "urls_removed\t" << total.urls_removed << "\n"
            << "ellipses_normalized\t" << total.ellipses_normalized << "\n"
            << "punct_converted\t" << total.punct_converted << "\n";
  return kExitOk;
}

int cmd_extract(const std::string& manifest, const std::string& config_path,
                const std::string& out_dir, int jobs) {
  Corpus corpus = load_with_warnings(manifest);
  ExperimentConfig config = load_config(config_path);
  std::vector<DocFeatures> extracted =
      extract_corpus(corpus, config.features, jobs);
  std::vector<std::size_t> all(corpus.documents.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  FeatureSpace space = build_feature_space(extracted, all,
                                           config.features.min_df);

  std::ostringstream tsv;
  tsv << "kind\tkey\tdoc_frequency\ttotal_count\n";
  for (const auto& e : space.entries()) {
    tsv << to_string(e.key.kind) << '\t' << e.key.key << '\t'
        << e.doc_frequency << '\t' << e.total_count << '\n';
  }
  spill(fs::path(out_dir) / "features.tsv", tsv.str());
  spill(fs::path(out_dir) / "feature_space.txt", space.serialize());
  std::cout << "features\t" << space.size() << "\n";
  return kExitOk;
}

int cmd_cv(const std::string& manifest, const std::string& config_path,
           const std::string& compare_path, const std::string& out_dir,
           int jobs, bool seed_given, std::uint64_t seed_override) {
  Corpus corpus = load_with_warnings(manifest);
  ExperimentConfig config = load_config(config_path);
  if (seed_given) {
    config.seed = seed_override;
    config.raw["seed"] = seed_override;
  }

  ExperimentReport report = run_experiment(corpus, config, jobs);
  nlohmann::ordered_json report_json = report_to_json(corpus, config, report);
  std::string metrics = metrics_tsv(report);
  std::string ranking = ranking_tsv(report);

  if (!compare_path.empty()) {
    ExperimentConfig other = load_config(compare_path);
    if (seed_given) {
      other.seed = seed_override;
      other.raw["seed"] = seed_override;
    }
    ExperimentReport other_report = run_experiment(corpus, other, jobs);
    std::vector<McNemarRow> rows = compare_experiments(report, other_report);
    nlohmann::ordered_json mj = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json rj;
      rj["k_top"] = row.k_top;
      rj["C"] = row.c;
      rj["b"] = row.result.b;
      rj["c"] = row.result.c;
      rj["statistic"] = row.result.statistic;
      rj["p"] = row.result.p;
      mj.push_back(std::move(rj));
    }
    report_json["compare"] = report_to_json(corpus, other, other_report);
    report_json["mcnemar"] = mj;
    spill(fs::path(out_dir) / "mcnemar.tsv", mcnemar_tsv(rows));
  }

  spill(fs::path(out_dir) / "report.json", report_json.dump(2) + "\n");
  spill(fs::path(out_dir) / "metrics.tsv", metrics);
  spill(fs::path(out_dir) / "ranking.tsv", ranking);

  // Persist the per-fold models of the best pooled grid point.
  std::size_t best = 0;
  for (std::size_t g = 1; g < report.grid.size(); ++g) {
    if (report.grid[g].pooled.macro_f > report.grid[best].pooled.macro_f)
      best = g;
  }
  {
    std::vector<Class> labels;
    for (const auto& doc : corpus.documents) labels.push_back(doc.cls);
    std::vector<DocFeatures> extracted =
        extract_corpus(corpus, config.features, jobs);
    std::size_t ki = best / config.c_grid.size();
    std::size_t ci = best % config.c_grid.size();
    for (int f = 0; f < config.k; ++f) {
      auto train_idx = report.assignment.train_indices(corpus, f);
      FoldArtifacts art = run_fold(extracted, labels, train_idx, config, f);
      char name[64];
      std::snprintf(name, sizeof(name), "fold%d.model", f);
      spill(fs::path(out_dir) / "models" / name,
            serialize_model(art.models[ki][ci], art.subspaces[ki]));
    }
  }

  for (const auto& grid : report.grid) {
    std::cout << "k_top=" << grid.k_top << " C=" << grid.c
              << " pooled_macro_F=" << grid.pooled.macro_f << "\n";
  }
  return kExitOk;
}

int cmd_query(const std::string& manifest, const std::string& fragment_text,
              const std::string& class_filter, std::int64_t limit) {
  Corpus corpus = load_with_warnings(manifest);
  FragmentNode fragment = parse_fragment(fragment_text);
  Class cls = Class::original;
  const Class* filter = nullptr;
  if (!class_filter.empty()) {
    cls = class_from_string(class_filter);
    filter = &cls;
  }
  SearchResult result = search_corpus(corpus, fragment, filter, limit);

  std::map<std::string, const Document*> by_id;
  for (const auto& doc : corpus.documents) by_id[doc.id] = &doc;
  std::cout << "doc_id\tsentence\tpath\ttext\n";
  for (const auto& hit : result.hits) {
    const Document* doc = by_id.at(hit.doc_id);
    std::string text;
    for (const auto& tok : doc->sentences[hit.sentence_index].tokens) {
      if (!text.empty()) text += ' ';
      text += tok.surface;
    }
    std::cout << hit.doc_id << '\t' << hit.sentence_index << '\t'
              << format_path(hit.path) << '\t' << text << '\n';
  }
  for (const auto& [c, totals] : result.totals) {
    std::cout << "# class " << to_string(c) << ": hits " << totals.hits
              << ", documents " << totals.documents << '\n';
  }
  return kExitOk;
}

int cmd_synth(bool use_default, const std::string& grammar_a_path,
              const std::string& grammar_b_path, int docs, int sentences,
              std::uint64_t seed, const std::string& out_dir, int jobs) {
  Pcfg a, b;
  if (use_default) {
    std::tie(a, b) = default_grammar_pair();
  } else {
    a = parse_grammar(slurp(grammar_a_path));
    b = parse_grammar(slurp(grammar_b_path));
  }
  Corpus corpus = generate_corpus(a, b, docs, sentences, seed, jobs);
  write_corpus(corpus, out_dir);
  spill(fs::path(out_dir) / "grammar_a.txt", render_grammar(a));
  spill(fs::path(out_dir) / "grammar_b.txt", render_grammar(b));
  std::cout << "documents\t" << corpus.documents.size() << "\n"
            << "manifest\t" << (fs::path(out_dir) / "manifest.json").string()
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"translated-vs-original Chinese classification toolkit"};
  app.require_subcommand(1);

  int jobs = 1;
  app.add_option("--jobs", jobs, "worker thread cap")->capture_default_str();

  // normalize
  auto* normalize = app.add_subcommand("normalize", "clean raw text");
  std::string norm_in, norm_out;
  normalize->add_option("input", norm_in, "input text file")->required();
  normalize->add_option("--out", norm_out, "output text file")->required();

  // extract
  auto* extract = app.add_subcommand("extract", "dump the feature space");
  std::string ex_manifest, ex_config, ex_out;
  extract->add_option("--manifest", ex_manifest, "corpus manifest")->required();
  extract->add_option("--config", ex_config, "experiment config JSON");
  extract->add_option("--out", ex_out, "output directory")->required();

  // cv
  auto* cv = app.add_subcommand("cv", "cross-validated experiment");
  std::string cv_manifest, cv_config, cv_compare, cv_out;
  std::uint64_t cv_seed = 0;
  cv->add_option("--manifest", cv_manifest, "corpus manifest")->required();
  cv->add_option("--config", cv_config, "experiment config JSON");
  auto* seed_opt = cv->add_option("--seed", cv_seed, "override config seed");
  cv->add_option("--compare", cv_compare, "second config for McNemar");
  cv->add_option("--out", cv_out, "output directory")->required();

  // query
  auto* query = app.add_subcommand("query", "search trees for a fragment");
  std::string q_manifest, q_fragment, q_class;
  std::int64_t q_limit = -1;
  query->add_option("--manifest", q_manifest, "corpus manifest")->required();
  query->add_option("fragment", q_fragment, "bracketed fragment")->required();
  query->add_option("--class", q_class, "restrict listed hits to a class");
  query->add_option("--limit", q_limit, "max listed hits (-1 = all)");

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
  bool sy_default = false;
  std::string sy_grammar_a, sy_grammar_b, sy_out;
  int sy_docs = 100, sy_sentences = 50;
  std::uint64_t sy_seed = 7;
  synth->add_flag("--default", sy_default, "use the built-in grammar pair");
  synth->add_option("--grammar-a", sy_grammar_a, "grammar for class original");
  synth->add_option("--grammar-b", sy_grammar_b, "grammar for class translated");
  synth->add_option("--docs", sy_docs, "documents per class")
      ->capture_default_str();
  synth->add_option("--sentences", sy_sentences, "sentences per document")
      ->capture_default_str();
  synth->add_option("--seed", sy_seed, "generation seed")->capture_default_str();
  synth->add_option("--out", sy_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (normalize->parsed()) return cmd_normalize(norm_in, norm_out);
    if (extract->parsed()) return cmd_extract(ex_manifest, ex_config, ex_out, jobs);
    if (cv->parsed())
      return cmd_cv(cv_manifest, cv_config, cv_compare, cv_out, jobs,
                    seed_opt->count() > 0, cv_seed);
    if (query->parsed()) return cmd_query(q_manifest, q_fragment, q_class, q_limit);
    if (synth->parsed()) {
      if (!sy_default && (sy_grammar_a.empty() || sy_grammar_b.empty())) {
        std::cerr << "error: pass --default or both --grammar-a/--grammar-b\n";
        return kExitUsage;
      }
      if (sy_docs <= 0 || sy_sentences <= 0) {
        std::cerr << "error: --docs and --sentences must be >= 1 "
                     "(an empty corpus supports no experiment)\n";
        return kExitUsage;
      }
      return cmd_synth(sy_default, sy_grammar_a, sy_grammar_b, sy_docs,
                       sy_sentences, sy_seed, sy_out, jobs);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
