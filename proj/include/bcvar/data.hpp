#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bcvar/core.hpp"

namespace bcvar {

// Train/validation split policy.
struct SplitSpec {
  double val_fraction = 0.1;
  std::uint64_t seed = 0;
  bool reuse_train_as_val = false;  // when set, val_fraction is ignored
};

// Loads a comma-separated UTF-8 file. All non-label columns must parse as
// real numbers; label values are mapped to dense class indices in
// first-appearance order and the original texts are retained in
// Dataset::label_names. label_column is a header name (requires has_header)
// or a zero-based column index.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 bool has_header);

// Writes a dataset back out (header "f0,...,y"); used by the CLI's synthetic
// data path and by tests.
void save_csv(const Dataset& data, const std::string& path);

struct SynthResult {
  Dataset data;
  VectorXi groups;  // diagnostics only; never passed to learners
};

// Synthetic subpopulation generator: one Gaussian cluster per group with a
// group-specific linear label rule (group g labels by the sign of coordinate
// g mod d), labels flipped i.i.d. at the group's noise rate. Minority groups
// with high noise create the loss tail that CVaR targets.
SynthResult synth_subpop(int n, const std::vector<double>& group_fracs,
                         const std::vector<double>& group_noise, int d,
                         std::uint64_t seed);

// Seeded uniform shuffle then partition; with reuse_train_as_val returns
// (data, data).
std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec);

}  // namespace bcvar
