#include "bcvar/learner.hpp"

#include <algorithm>
#include <numeric>

namespace bcvar {

namespace {

int weighted_majority(const VectorXd& class_weights) {
  int best = 0;
  for (int c = 1; c < class_weights.size(); ++c) {
    if (class_weights[c] > class_weights[best]) best = c;
  }
  return best;  // ties go to the lowest class index
}

struct SplitResult {
  double loss = kInf;
  int feature = 0;
  double threshold = 0.0;
  int left_label = 0;
  int right_label = 0;
};

// Exhaustive stump search over a sample subset. The -inf sentinel threshold
// is always a candidate, so the constant weighted-majority classifier is in
// the search space.
SplitResult best_split(const Dataset& data, const VectorXd& w,
                       const std::vector<int>& subset, bool prefer_split = false) {
  const int C = data.num_classes;
  const int d = data.d();

  VectorXd totals = VectorXd::Zero(C);
  for (int i : subset) totals[data.labels[i]] += w[i];
  const double total_w = totals.sum();

  SplitResult best;
  const int maj = weighted_majority(totals);
  best.loss = total_w - totals[maj];
  best.feature = 0;
  best.threshold = -kInf;
  best.left_label = maj;
  best.right_label = maj;

  std::vector<int> order(subset);
  for (int f = 0; f < d; ++f) {
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return data.features(a, f) < data.features(b, f);
    });
    VectorXd left = VectorXd::Zero(C);
    VectorXd right = totals;
    for (size_t p = 0; p + 1 < order.size(); ++p) {
      const int i = order[p];
      left[data.labels[i]] += w[i];
      right[data.labels[i]] -= w[i];
      const double v0 = data.features(i, f);
      const double v1 = data.features(order[p + 1], f);
      if (v0 >= v1) continue;  // not a boundary between distinct values
      const int lmaj = weighted_majority(left);
      const int rmaj = weighted_majority(right);
      const double loss =
          (left.sum() - left[lmaj]) + (right.sum() - right[rmaj]);
      // With prefer_split, a real boundary also displaces the constant
      // classifier on ties: an interior node with zero gain can still let
      // its children improve (e.g. XOR).
      const bool tie_takes_split = prefer_split && best.threshold == -kInf &&
                                   best.loss > 1e-15 && loss <= best.loss + 1e-15;
      if (loss < best.loss - 1e-15 || tie_takes_split) {
        best.loss = loss;
        best.feature = f;
        best.threshold = 0.5 * (v0 + v1);
        best.left_label = lmaj;
        best.right_label = rmaj;
      }
    }
  }
  return best;
}

VectorXd normalized_weights(const Dataset& data, const VectorXd& w) {
  if (w.size() != data.n()) {
    throw std::invalid_argument("learner: weight vector length must equal n");
  }
  const double s = w.sum();
  if (!(s > 0.0)) throw std::invalid_argument("learner: weights must have positive sum");
  return w / s;
}

}  // namespace

int predict(const BaseModel& model, const Eigen::Ref<const VectorXd>& x) {
  if (model.kind == BaseModel::Kind::Stump) {
    if (model.feature >= x.size()) {
      throw std::invalid_argument("predict: feature index out of range for input");
    }
    return x[model.feature] >= model.threshold ? model.right_label
                                               : model.left_label;
  }
  int node = 0;
  while (true) {
    const TreeNode& t = model.nodes[node];
    if (t.feature < 0) return t.label;
    if (t.feature >= x.size()) {
      throw std::invalid_argument("predict: feature index out of range for input");
    }
    node = x[t.feature] >= t.threshold ? t.right : t.left;
  }
}

VectorXd zero_one_losses(const BaseModel& model, const Dataset& data) {
  const int n = data.n();
  VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = predict(model, data.features.row(i)) != data.labels[i] ? 1.0 : 0.0;
  }
  return out;
}

BaseModel train_stump(const Dataset& train, const VectorXd& w) {
  train.validate();
  VectorXd wn = normalized_weights(train, w);
  std::vector<int> all(train.n());
  std::iota(all.begin(), all.end(), 0);
  SplitResult s = best_split(train, wn, all);

  BaseModel m;
  m.kind = BaseModel::Kind::Stump;
  m.feature = s.feature;
  m.threshold = s.threshold;
  m.left_label = s.left_label;
  m.right_label = s.right_label;
  m.achieved_weighted_loss = wn.dot(zero_one_losses(m, train));
  return m;
}

namespace {

int grow_tree(const Dataset& data, const VectorXd& w, std::vector<int> subset,
              int depth, int max_depth, std::vector<TreeNode>& nodes) {
  SplitResult s = best_split(data, w, subset, /*prefer_split=*/depth < max_depth);
  const int id = static_cast<int>(nodes.size());
  nodes.emplace_back();

  const bool is_leaf = depth >= max_depth || s.threshold == -kInf;
  if (is_leaf && s.threshold != -kInf) {
    // Recompute the majority for a proper leaf label.
    VectorXd totals = VectorXd::Zero(data.num_classes);
    for (int i : subset) totals[data.labels[i]] += w[i];
    nodes[id].feature = -1;
    nodes[id].label = weighted_majority(totals);
    return id;
  }
  if (s.threshold == -kInf) {
    nodes[id].feature = -1;
    nodes[id].label = s.right_label;
    return id;
  }

  std::vector<int> left, right;
  for (int i : subset) {
    (data.features(i, s.feature) < s.threshold ? left : right).push_back(i);
  }
  nodes[id].feature = s.feature;
  nodes[id].threshold = s.threshold;
  const int l = grow_tree(data, w, std::move(left), depth + 1, max_depth, nodes);
  const int r = grow_tree(data, w, std::move(right), depth + 1, max_depth, nodes);
  nodes[id].left = l;
  nodes[id].right = r;
  return id;
}

}  // namespace

BaseModel train_tree(const Dataset& train, const VectorXd& w, int max_depth) {
  train.validate();
  if (max_depth < 1) throw std::invalid_argument("train_tree: max_depth must be >= 1");
  VectorXd wn = normalized_weights(train, w);
  std::vector<int> all(train.n());
  std::iota(all.begin(), all.end(), 0);

  BaseModel m;
  m.kind = BaseModel::Kind::Tree;
  grow_tree(train, wn, std::move(all), 0, max_depth, m.nodes);
  m.achieved_weighted_loss = wn.dot(zero_one_losses(m, train));
  return m;
}

BaseModel train_resampled(const Dataset& train, const VectorXd& w,
                          const LearnerSpec& spec, Rng& rng) {
  train.validate();
  if (spec.inner_iterations < 1) {
    throw std::invalid_argument("train_resampled: inner_iterations must be >= 1");
  }
  VectorXd wn = normalized_weights(train, w);

  const int draws = spec.inner_iterations * spec.batch_size;
  std::vector<int> picked;
  picked.reserve(draws);
  for (int k = 0; k < draws; ++k) picked.push_back(sample_index(wn, rng));

  Dataset sub;
  sub.features.resize(draws, train.d());
  sub.labels.resize(draws);
  sub.num_classes = train.num_classes;
  sub.name = train.name + "/resampled";
  for (int k = 0; k < draws; ++k) {
    sub.features.row(k) = train.features.row(picked[k]);
    sub.labels[k] = train.labels[picked[k]];
  }
  const VectorXd uni = VectorXd::Constant(draws, 1.0 / draws);

  BaseModel m;
  if (spec.kind == LearnerSpec::Kind::ResampledTree) {
    m = train_tree(sub, uni, spec.tree_depth);
  } else {
    m = train_stump(sub, uni);
  }
  m.via_resampling = true;
  m.achieved_weighted_loss = wn.dot(zero_one_losses(m, train));
  return m;
}

GuaranteeCheck check_guarantee(const BaseModel& model, const Dataset& data,
                               const VectorXd& w, double g) {
  VectorXd wn = normalized_weights(data, w);
  const double achieved = wn.dot(zero_one_losses(model, data));
  return GuaranteeCheck{achieved <= g + 1e-12, achieved};
}

RoundOutput StumpLearner::next(const Dataset& train, const VectorXd& w) {
  BaseModel m = train_stump(train, w);
  VectorXd l = zero_one_losses(m, train);
  return RoundOutput{std::move(m), std::move(l)};
}

RoundOutput TreeLearner::next(const Dataset& train, const VectorXd& w) {
  BaseModel m = train_tree(train, w, max_depth_);
  VectorXd l = zero_one_losses(m, train);
  return RoundOutput{std::move(m), std::move(l)};
}

RoundOutput ResampledLearner::next(const Dataset& train, const VectorXd& w) {
  BaseModel m = train_resampled(train, w, spec_, rng_);
  VectorXd l = zero_one_losses(m, train);
  return RoundOutput{std::move(m), std::move(l)};
}

}  // namespace bcvar
