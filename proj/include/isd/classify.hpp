#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "isd/features.hpp"

namespace isd {

// Feature vectors with labels, plus the ordered class index. Class names are
// sorted; class 0 is the positive class in binary reports.
struct LabeledDataset {
  std::vector<FeatureVector> vectors;
  std::vector<std::string> class_names;

  static LabeledDataset from_vectors(std::vector<FeatureVector> vectors);
  Eigen::Index dim() const;
  int class_index(const std::string& label) const;
};

// Per-dimension (min, max) fitted on training data; features map to [0, 1].
struct FeatureScaling {
  Eigen::VectorXd min;
  Eigen::VectorXd max;

  static FeatureScaling fit(const std::vector<FeatureVector>& vectors);
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

// Binary linear SVM, decision sign(w.x + b) on rescaled features; class 0
// maps to +1.
struct LinearSvmModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double c_param = 1.0;
  FeatureScaling scale;
  std::vector<std::string> class_names;
};

struct KnnModel {
  Eigen::MatrixXd examples;  // one rescaled example per row
  std::vector<int> labels;   // class indices
  int k = 1;
  FeatureScaling scale;
  std::vector<std::string> class_names;
};

// Hinge-loss subgradient training with a fixed epoch count and seeded
// shuffling; deterministic for (data, c_param, seed). Objective is
// mean hinge + |w|^2 / (2*c_param), so duplicating the dataset leaves the
// optimum unchanged. Throws NotBinary or EmptyClass.
LinearSvmModel train_linear_svm(const LabeledDataset& data, double c_param,
                                uint64_t seed);

// Stores rescaled examples; predict is the majority label among the k
// nearest by Euclidean distance, ties broken toward the smallest class
// index. Throws KTooLarge.
KnnModel train_knn(const LabeledDataset& data, int k);

std::string predict(const LinearSvmModel& model, const FeatureVector& fv);
std::string predict(const KnnModel& model, const FeatureVector& fv);

struct SvmSpec {
  double c_param = 1.0;
};
struct KnnSpec {
  int k = 3;
};
using AlgorithmSpec = std::variant<SvmSpec, KnnSpec>;

std::string algorithm_name(const AlgorithmSpec& algorithm);

struct FoldCounts {
  int64_t tp = 0, fp = 0, tn = 0, fn = 0;
};

// Aggregate cross-validation result. Rates are micro-averaged over folds
// with class 0 as the positive class.
struct EvalReport {
  int folds = 0;
  std::vector<FoldCounts> per_fold;
  double tpr = 0.0;
  double fpr = 0.0;
  double accuracy = 0.0;
  std::string feature_kind;
  std::string algorithm_name;
};

// Seeded stratified k-fold cross-validation; scaling and training happen on
// each fold's training split only. Throws TooFewExamples when any class has
// fewer members than folds.
EvalReport cross_validate(const LabeledDataset& data,
                          const AlgorithmSpec& algorithm, int folds,
                          uint64_t seed);

// Stratified fold assignment: fold id per example, seeded shuffle within
// each class, round-robin across folds.
std::vector<int> stratified_folds(const LabeledDataset& data, int folds,
                                  uint64_t seed);

void write_report_json(const EvalReport& report, std::ostream& out);
EvalReport read_report_json(std::istream& in);

// Text table mirroring the recognition-rate layout:
// feature / algorithm / TPR / FPR.
std::string format_report_table(const std::vector<EvalReport>& reports);

}  // namespace isd
