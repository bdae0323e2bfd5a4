#ifndef TRANSTYLE_SVM_H_
#define TRANSTYLE_SVM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "corpus.h"
#include "features.h"

namespace transtyle {

struct SvmConfig {
  double C = 1.0;
  int max_epochs = 1000;
  double tolerance = 1e-6;   // projected-gradient span at convergence
  std::uint64_t seed = 0;
};

// Soft-margin linear SVM: min 1/2 ||w||^2 + C sum_i max(0, 1 - y_i f(x_i))
// with f(x) = w.x + b. The bias rides along as a unit constant feature,
// so it is regularized with the weights. "translated" is the positive
// class.
struct SvmModel {
  std::vector<double> weights;  // per feature id of the training space
  double bias = 0.0;
  double C = 1.0;
  ValueMode value_mode = ValueMode::raw_count;
  std::string fingerprint;      // feature-space fingerprint at training time
  double objective = 0.0;       // primal objective of the kept iterate
  std::vector<double> epoch_objectives;  // best-so-far after each epoch
  int epochs = 0;
};

// Dual coordinate descent over a seeded permutation schedule; the kept
// iterate is the epoch snapshot with the lowest primal objective, so the
// reported objective sequence never increases. Deterministic per seed.
// Throws SingleClass / NoFeatures.
SvmModel train_svm(const std::vector<SparseVector>& vectors,
                   const std::vector<Class>& labels, std::size_t dimension,
                   const SvmConfig& config, ValueMode value_mode,
                   const std::string& fingerprint);

struct PredictResult {
  std::vector<Class> labels;
  std::vector<double> decisions;  // w.x + b; exactly 0 maps to "original"
};

// Throws SpaceMismatch unless `fingerprint` matches the model.
PredictResult predict(const SvmModel& model,
                      const std::vector<SparseVector>& vectors,
                      const std::string& fingerprint);

double primal_objective(const SvmModel& model,
                        const std::vector<SparseVector>& vectors,
                        const std::vector<Class>& labels);

// Versioned text model file: metadata, then one "kind<TAB>key<TAB>weight"
// line per feature in id order.
struct ModelFile {
  SvmModel model;
  std::vector<FeatureKey> keys;
};
std::string serialize_model(const SvmModel& model, const FeatureSpace& space);
ModelFile deserialize_model(const std::string& text);

}  // namespace transtyle

#endif  // TRANSTYLE_SVM_H_
