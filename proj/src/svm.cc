#include "svm.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "util.h"

namespace transtyle {

namespace {

double decision_value(const std::vector<double>& w, double bias,
                      const SparseVector& x) {
  double d = bias;
  for (const auto& [id, v] : x.items) d += w[id] * v;
  return d;
}

double primal(const std::vector<double>& w_aug, double C,
              const std::vector<SparseVector>& vectors,
              const std::vector<signed char>& y, std::size_t dim) {
  double reg = 0.0;
  for (double wi : w_aug) reg += wi * wi;
  double loss = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    double d = w_aug[dim];  // bias feature
    for (const auto& [id, v] : vectors[i].items) d += w_aug[id] * v;
    loss += std::max(0.0, 1.0 - static_cast<double>(y[i]) * d);
  }
  return 0.5 * reg + C * loss;
}

}  // namespace

SvmModel train_svm(const std::vector<SparseVector>& vectors,
                   const std::vector<Class>& labels, std::size_t dimension,
                   const SvmConfig& config, ValueMode value_mode,
                   const std::string& fingerprint) {
  if (dimension == 0) throw Error("NoFeatures", "empty feature space");
  if (vectors.size() != labels.size())
    throw Error("LengthMismatch", "vectors and labels differ in length");
  const std::size_t l = vectors.size();

  std::vector<signed char> y(l);
  bool has_pos = false, has_neg = false;
  for (std::size_t i = 0; i < l; ++i) {
    y[i] = labels[i] == Class::translated ? +1 : -1;
    (y[i] > 0 ? has_pos : has_neg) = true;
  }
  if (!has_pos || !has_neg)
    throw Error("SingleClass", "training needs an example of each class");

  const std::size_t dim = dimension;
  const double C = config.C;
  std::vector<double> w(dim + 1, 0.0);  // last slot is the bias feature
  std::vector<double> alpha(l, 0.0);
  std::vector<double> qd(l);
  for (std::size_t i = 0; i < l; ++i) {
    double q = 1.0;  // bias feature contributes 1*1
    for (const auto& [id, v] : vectors[i].items) q += v * v;
    qd[i] = q;
  }

  std::vector<std::size_t> order(l);
  for (std::size_t i = 0; i < l; ++i) order[i] = i;
  std::mt19937_64 rng(config.seed);

  SvmModel model;
  model.C = C;
  model.value_mode = value_mode;
  model.fingerprint = fingerprint;

  std::vector<double> best_w = w;
  double best_obj = primal(w, C, vectors, y, dim);

  int epoch = 0;
  for (; epoch < config.max_epochs; ++epoch) {
    shuffle_deterministic(order, rng);
    double pg_max = -std::numeric_limits<double>::infinity();
    double pg_min = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < l; ++s) {
      const std::size_t i = order[s];
      const double yi = static_cast<double>(y[i]);
      double g = w[dim];
      for (const auto& [id, v] : vectors[i].items) g += w[id] * v;
      g = g * yi - 1.0;

      double pg = g;
      if (alpha[i] <= 0.0 && g >= 0.0) pg = 0.0;
      if (alpha[i] >= C && g <= 0.0) pg = 0.0;
      pg_max = std::max(pg_max, pg);
      pg_min = std::min(pg_min, pg);

      if (std::fabs(pg) > 1e-12) {
        double old = alpha[i];
        alpha[i] = std::min(std::max(old - g / qd[i], 0.0), C);
        double delta = (alpha[i] - old) * yi;
        if (delta != 0.0) {
          w[dim] += delta;
          for (const auto& [id, v] : vectors[i].items) w[id] += delta * v;
        }
      }
    }

    double obj = primal(w, C, vectors, y, dim);
    if (obj < best_obj) {
      best_obj = obj;
      best_w = w;
    }
    model.epoch_objectives.push_back(best_obj);
    if (pg_max - pg_min < config.tolerance) {
      ++epoch;
      break;
    }
  }

  model.epochs = epoch;
  model.objective = best_obj;
  model.bias = best_w[dim];
  best_w.resize(dim);
  model.weights = std::move(best_w);
  return model;
}

PredictResult predict(const SvmModel& model,
                      const std::vector<SparseVector>& vectors,
                      const std::string& fingerprint) {
  if (fingerprint != model.fingerprint)
    throw Error("SpaceMismatch",
                "feature space fingerprint differs from the model's");
  PredictResult result;
  result.labels.reserve(vectors.size());
  result.decisions.reserve(vectors.size());
  for (const auto& x : vectors) {
    double d = decision_value(model.weights, model.bias, x);
    result.decisions.push_back(d);
    result.labels.push_back(d > 0.0 ? Class::translated : Class::original);
  }
  return result;
}

double primal_objective(const SvmModel& model,
                        const std::vector<SparseVector>& vectors,
                        const std::vector<Class>& labels) {
  double reg = model.bias * model.bias;
  for (double wi : model.weights) reg += wi * wi;
  double loss = 0.0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    double yi = labels[i] == Class::translated ? 1.0 : -1.0;
    double d = decision_value(model.weights, model.bias, vectors[i]);
    loss += std::max(0.0, 1.0 - yi * d);
  }
  return 0.5 * reg + model.C * loss;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string serialize_model(const SvmModel& model, const FeatureSpace& space) {
  if (space.size() != model.weights.size())
    throw Error("SpaceMismatch", "model and space sizes differ");
  std::ostringstream out;
  out << "transtyle-model\tv1\n";
  out << "value_mode\t" << to_string(model.value_mode) << '\n';
  out << "C\t" << format_double(model.C) << '\n';
  out << "bias\t" << format_double(model.bias) << '\n';
  out << "objective\t" << format_double(model.objective) << '\n';
  out << "fingerprint\t" << model.fingerprint << '\n';
  out << "features\t" << model.weights.size() << '\n';
  for (std::size_t id = 0; id < model.weights.size(); ++id) {
    const auto& key = space.entry(id).key;
    out << to_string(key.kind) << '\t' << key.key << '\t'
        << format_double(model.weights[id]) << '\n';
  }
  return out.str();
}

ModelFile deserialize_model(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "transtyle-model\tv1")
    throw Error("BadModelFile", "missing model header");
  ModelFile mf;
  std::size_t n_features = 0;
  auto next_field = [&](const std::string& name) {
    if (!std::getline(in, line))
      throw Error("BadModelFile", "truncated before '" + name + "'");
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.substr(0, tab) != name)
      throw Error("BadModelFile", "expected '" + name + "' line");
    return line.substr(tab + 1);
  };
  mf.model.value_mode = value_mode_from_string(next_field("value_mode"));
  mf.model.C = std::stod(next_field("C"));
  mf.model.bias = std::stod(next_field("bias"));
  mf.model.objective = std::stod(next_field("objective"));
  mf.model.fingerprint = next_field("fingerprint");
  n_features = std::stoull(next_field("features"));
  for (std::size_t i = 0; i < n_features; ++i) {
    if (!std::getline(in, line))
      throw Error("BadModelFile", "truncated feature list");
    std::istringstream ls(line);
    std::string kind, key, weight;
    if (!std::getline(ls, kind, '\t') || !std::getline(ls, key, '\t') ||
        !std::getline(ls, weight))
      throw Error("BadModelFile", "bad feature line: " + line);
    mf.keys.push_back(FeatureKey{feature_kind_from_string(kind), key});
    mf.model.weights.push_back(std::stod(weight));
  }
  return mf;
}

}  // namespace transtyle
