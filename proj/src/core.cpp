#include "bcvar/core.hpp"

#include <sstream>

namespace bcvar {

int sample_index(const VectorXd& probs, Rng& rng) {
  const double total = probs.sum();
  if (!(total > 0.0)) {
    throw std::invalid_argument("sample_index: probabilities must have positive sum");
  }
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  const int n = static_cast<int>(probs.size());
  for (int i = 0; i < n; ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return n - 1;  // guard against rounding in the final bucket
}

void Dataset::validate() const {
  if (features.rows() < 1) throw std::invalid_argument("Dataset: n >= 1 violated");
  if (features.cols() < 1) throw std::invalid_argument("Dataset: d >= 1 violated");
  if (num_classes < 2) throw std::invalid_argument("Dataset: C >= 2 violated");
  if (labels.size() != features.rows()) {
    throw std::invalid_argument("Dataset: row count of features must equal length of labels");
  }
  for (int i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= num_classes) {
      std::ostringstream msg;
      msg << "Dataset: label " << labels[i] << " at row " << i
          << " is not a valid class index in [0," << num_classes << ")";
      throw std::invalid_argument(msg.str());
    }
  }
}

LossMatrix::LossMatrix(MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw std::invalid_argument("LossMatrix: T >= 1 and n >= 1 violated");
  }
  for (int t = 0; t < entries_.rows(); ++t) {
    for (int i = 0; i < entries_.cols(); ++i) {
      double v = entries_(t, i);
      if (v < -1e-12 || v > 1.0 + 1e-12) {
        std::ostringstream msg;
        msg << "LossMatrix: entry (" << t << "," << i << ")=" << v
            << " outside [0,1]";
        throw std::invalid_argument(msg.str());
      }
      entries_(t, i) = std::min(1.0, std::max(0.0, v));
    }
  }
}

CappedSimplexWeights::CappedSimplexWeights(VectorXd values, double alpha)
    : values_(std::move(values)), alpha_(alpha) {
  const int n = static_cast<int>(values_.size());
  if (n < 1) throw std::invalid_argument("CappedSimplexWeights: n >= 1 violated");
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("CappedSimplexWeights: alpha must lie in (0, 1]");
  }
  if (alpha * n < 1.0 - 1e-9) {
    throw std::invalid_argument("CappedSimplexWeights: alpha too small for n (alpha*n < 1)");
  }
  cap_ = 1.0 / (alpha * n);
  double sum = values_.sum();
  if (std::abs(sum - 1.0) > 1e-6 || !(sum > 0.0)) {
    throw std::invalid_argument("CappedSimplexWeights: values must sum to 1");
  }
  values_ /= sum;
  for (int i = 0; i < n; ++i) {
    if (values_[i] < -kSimplexTol) {
      throw std::invalid_argument("CappedSimplexWeights: negative weight");
    }
    if (values_[i] > cap_ + 1e-7 * cap_ + 1e-12) {
      std::ostringstream msg;
      msg << "CappedSimplexWeights: weight " << values_[i] << " exceeds cap "
          << cap_;
      throw std::invalid_argument(msg.str());
    }
    values_[i] = std::min(cap_, std::max(0.0, values_[i]));
  }
}

CappedSimplexWeights uniform_capped_weights(int n, double alpha) {
  if (n < 1) throw std::invalid_argument("uniform_capped_weights: n >= 1 violated");
  if (alpha * n < 1.0 - 1e-9) {
    throw std::invalid_argument("uniform_capped_weights: alpha too small for n");
  }
  return CappedSimplexWeights(VectorXd::Constant(n, 1.0 / n), alpha);
}

ModelMixture::ModelMixture(VectorXd values) : values_(std::move(values)) {
  const int t = static_cast<int>(values_.size());
  if (t < 1) throw std::invalid_argument("ModelMixture: T >= 1 violated");
  double sum = values_.sum();
  if (std::abs(sum - 1.0) > 1e-6 || !(sum > 0.0)) {
    throw std::invalid_argument("ModelMixture: values must sum to 1");
  }
  // Skip the division when the sum already meets the invariant: this makes
  // normalization idempotent, so serialized mixtures reload bit-exactly.
  if (std::abs(sum - 1.0) > kSimplexTol) values_ /= sum;
  for (int i = 0; i < t; ++i) {
    if (values_[i] < -kSimplexTol) {
      throw std::invalid_argument("ModelMixture: negative weight");
    }
    values_[i] = std::max(0.0, values_[i]);
  }
}

ModelMixture ModelMixture::uniform(int t) {
  return ModelMixture(VectorXd::Constant(t, 1.0 / t));
}

ModelMixture ModelMixture::point_mass(int t, int index) {
  VectorXd v = VectorXd::Zero(t);
  v[index] = 1.0;
  return ModelMixture(std::move(v));
}

double entropy(const VectorXd& w) {
  double h = 0.0;
  for (int i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) h -= w[i] * std::log(w[i]);
  }
  return h;
}

}  // namespace bcvar
