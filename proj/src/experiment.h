#ifndef TRANSTYLE_EXPERIMENT_H_
#define TRANSTYLE_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "classify.h"
#include "corpus.h"
#include "features.h"
#include "selection.h"
#include "stats.h"
#include "svm.h"

#include "json.hpp"

namespace transtyle {

struct ExperimentConfig {
  FeatureConfig features;
  ValueMode value_mode = ValueMode::raw_count;
  int k = 5;
  std::uint64_t seed = 42;
  std::vector<int> k_top_grid = {100, 1000, 10000, 50000};
  std::vector<double> c_grid = {0.1, 1.0, 10.0};
  int report_top = 1000;
  int svm_max_epochs = 1000;
  double svm_tolerance = 1e-6;
  nlohmann::ordered_json raw;  // the config as given, embedded in reports
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig default_experiment_config();

// Everything computed from one training fold. Test documents play no
// part in the space, the ranking, or the model.
struct FoldArtifacts {
  FeatureSpace space;          // built on training documents only
  std::vector<IGScore> ig;     // ranking over the full training space
  FoldRanking ranking;
  std::vector<FeatureSpace> subspaces;       // by k_top index
  std::vector<std::vector<SvmModel>> models; // [k_top index][C index]
};

FoldArtifacts run_fold(const std::vector<DocFeatures>& extracted,
                       const std::vector<Class>& labels,
                       const std::vector<std::size_t>& train_indices,
                       const ExperimentConfig& config, int fold);

struct GridResult {
  int k_top = 0;
  double c = 0.0;
  std::vector<EvalReport> per_fold;
  EvalReport pooled;
  std::vector<Class> pooled_pred;  // by corpus document order
};

struct ExperimentReport {
  int k = 0;
  std::uint64_t seed = 0;
  FoldAssignment assignment;
  std::vector<Class> gold;  // by corpus document order
  std::vector<GridResult> grid;
  std::vector<AveragedRank> ranking;  // truncated to report_top
};

// Per fold: build the space on training documents, rank by information
// gain on training documents, select top k, train, predict the test
// fold. Fully reproducible from (corpus, config, seed) at any job count.
ExperimentReport run_experiment(const Corpus& corpus,
                                const ExperimentConfig& config, int jobs = 1);

struct McNemarRow {
  int k_top = 0;
  double c = 0.0;
  McNemarResult result;
};

// Pairwise McNemar between two experiments' pooled predictions at every
// shared (k_top, C) grid point.
std::vector<McNemarRow> compare_experiments(const ExperimentReport& a,
                                            const ExperimentReport& b);

// Report writers. JSON embeds the verbatim config; the TSVs mirror the
// metrics and ranked-feature tables.
nlohmann::ordered_json report_to_json(const Corpus& corpus,
                                      const ExperimentConfig& config,
                                      const ExperimentReport& report);
std::string metrics_tsv(const ExperimentReport& report);
std::string ranking_tsv(const ExperimentReport& report);
std::string mcnemar_tsv(const std::vector<McNemarRow>& rows);

}  // namespace transtyle

#endif  // TRANSTYLE_EXPERIMENT_H_
