#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bcvar {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using Eigen::VectorXi;

// Absolute tolerance for simplex-sum invariants after renormalization.
inline constexpr double kSimplexTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Raised when an input file or dataset cannot be used.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an optimization routine fails to produce a certified solution.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Deterministic randomness.
//
// mt19937_64 output is fully specified by the C++ standard, so identical
// seeds give identical streams on every platform. The distributions below
// are hand-rolled because the std:: distribution objects are not required
// to be bit-portable across standard library implementations.
// ---------------------------------------------------------------------------

using Rng = std::mt19937_64;

inline Rng seeded_rng(std::uint64_t seed) { return Rng(seed); }

// Uniform draw in [0, 1) with 53 bits of precision.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller (one value per call).
inline double standard_normal(Rng& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * M_PI * u2);
}

// Samples an index proportionally to probs (need not be normalized).
int sample_index(const VectorXd& probs, Rng& rng);

// ---------------------------------------------------------------------------
// Domain types. All types are immutable after construction; invariant
// violations are rejected with a diagnostic naming the violated invariant.
// ---------------------------------------------------------------------------

// Feature matrix plus dense integer labels.
struct Dataset {
  MatrixXd features;                    // n x d
  VectorXi labels;                      // class indices in [0, num_classes)
  int num_classes = 0;
  std::string name;
  std::vector<std::string> label_names; // index -> original label text

  int n() const { return static_cast<int>(features.rows()); }
  int d() const { return static_cast<int>(features.cols()); }

  // Throws std::invalid_argument naming the first violated invariant.
  void validate() const;
};

// T x n matrix of per-model, per-sample losses in [0, 1]. Row t holds the
// loss vector of base model t. Entries are stored as reals even when
// 0/1-valued so the same matrix serves randomized per-sample expected losses.
class LossMatrix {
 public:
  explicit LossMatrix(MatrixXd entries);

  const MatrixXd& entries() const { return entries_; }
  int num_models() const { return static_cast<int>(entries_.rows()); }
  int num_samples() const { return static_cast<int>(entries_.cols()); }
  VectorXd row(int t) const { return entries_.row(t).transpose(); }

 private:
  MatrixXd entries_;
};

// Sample-weight vector on the capped simplex {w in Delta_n : w <= 1/(alpha n)}.
class CappedSimplexWeights {
 public:
  // Renormalizes by the exact sum, then enforces the cap and sign bounds.
  CappedSimplexWeights(VectorXd values, double alpha);

  const VectorXd& values() const { return values_; }
  double cap() const { return cap_; }
  double alpha() const { return alpha_; }
  int n() const { return static_cast<int>(values_.size()); }

 private:
  VectorXd values_;
  double cap_;
  double alpha_;
};

// Uniform initialization w = (1/n, ..., 1/n). Rejects alpha * n < 1.
CappedSimplexWeights uniform_capped_weights(int n, double alpha);

// Model-weight vector on the simplex Delta_T; also the randomization law
// used at inference time.
class ModelMixture {
 public:
  explicit ModelMixture(VectorXd values);

  static ModelMixture uniform(int t);
  static ModelMixture point_mass(int t, int index);

  const VectorXd& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

 private:
  VectorXd values_;
};

// Per-round training trace plus final summary metrics.
struct RoundRecord {
  int round = 0;
  double weighted_loss = 0.0;  // <w^t, l^t> achieved by the learner
  double dual_objective = std::numeric_limits<double>::quiet_NaN();
};

struct TrainReport {
  std::vector<RoundRecord> rounds;
  double alpha = 0.0;
  double train_cvar = 0.0;
  double val_cvar = 0.0;
  double train_avg_loss = 0.0;
  double val_avg_loss = 0.0;
  double seconds = 0.0;
};

// Shannon entropy -sum w_i log w_i with 0 log 0 = 0.
double entropy(const VectorXd& w);

}  // namespace bcvar
