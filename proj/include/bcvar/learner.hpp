#pragma once

#include <optional>
#include <vector>

#include "bcvar/core.hpp"

namespace bcvar {

// A decision node; leaves have feature < 0 and predict `label`.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;   // child index for x[feature] < threshold
  int right = -1;  // child index for x[feature] >= threshold
  int label = 0;
};

// A trained base model. Stumps with threshold = -inf act as constant
// classifiers (every input takes the right branch).
struct BaseModel {
  enum class Kind { Stump, Tree };
  Kind kind = Kind::Stump;

  // Stump parameters.
  int feature = 0;
  double threshold = 0.0;
  int left_label = 0;   // predicted class for x[feature] < threshold
  int right_label = 0;  // predicted class for x[feature] >= threshold

  // Tree parameters (node 0 is the root).
  std::vector<TreeNode> nodes;

  double achieved_weighted_loss = 0.0;
  bool via_resampling = false;
};

// Ties at the threshold go right: x[feature] >= threshold predicts right_label.
int predict(const BaseModel& model, const Eigen::Ref<const VectorXd>& x);

// Entry i is 1 iff predict(model, x_i) != y_i; exactly 0/1-valued.
VectorXd zero_one_losses(const BaseModel& model, const Dataset& data);

// Exhaustive weighted stump search: thresholds at midpoints of consecutive
// distinct feature values plus a -inf sentinel (which yields the constant
// weighted-majority classifier), each side predicting the weighted majority
// class. Returns the stump minimizing <w, losses>.
BaseModel train_stump(const Dataset& train, const VectorXd& w);

// Greedy weighted tree of limited depth built from recursive stump splits.
BaseModel train_tree(const Dataset& train, const VectorXd& w, int max_depth);

struct LearnerSpec {
  enum class Kind { Stump, Tree, ResampledStump, ResampledTree };
  Kind kind = Kind::Stump;
  double guarantee_target = 0.5;  // advisory; achieved loss is always reported
  int tree_depth = 3;
  int batch_size = 64;
  int inner_iterations = 8;
  std::uint64_t seed = 0;
};

// Minibatch-resampling wrapper: draws batches with replacement under w,
// fits the inner learner on the drawn samples with uniform weights, and
// records the true w-weighted loss of the result.
BaseModel train_resampled(const Dataset& train, const VectorXd& w,
                          const LearnerSpec& spec, Rng& rng);

struct GuaranteeCheck {
  bool ok = false;
  double achieved = 0.0;
};

// True iff the model's w-weighted zero-one loss is at most g (+1e-12).
GuaranteeCheck check_guarantee(const BaseModel& model, const Dataset& data,
                               const VectorXd& w, double g);

// ---------------------------------------------------------------------------
// Learner interface used by the boosting loops. A learner may return loss
// rows without a model (synthetic adversaries used in rate tests).
// ---------------------------------------------------------------------------

struct RoundOutput {
  std::optional<BaseModel> model;
  VectorXd losses;  // losses on the training set
};

class Learner {
 public:
  virtual ~Learner() = default;
  virtual RoundOutput next(const Dataset& train, const VectorXd& w) = 0;
};

class StumpLearner : public Learner {
 public:
  RoundOutput next(const Dataset& train, const VectorXd& w) override;
};

class TreeLearner : public Learner {
 public:
  explicit TreeLearner(int max_depth = 3) : max_depth_(max_depth) {}
  RoundOutput next(const Dataset& train, const VectorXd& w) override;

 private:
  int max_depth_;
};

class ResampledLearner : public Learner {
 public:
  explicit ResampledLearner(LearnerSpec spec)
      : spec_(spec), rng_(seeded_rng(spec.seed)) {}
  RoundOutput next(const Dataset& train, const VectorXd& w) override;

 private:
  LearnerSpec spec_;
  Rng rng_;
};

}  // namespace bcvar
