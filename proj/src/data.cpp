#include "bcvar/data.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace bcvar {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 bool has_header) {
  std::ifstream in(path);
  if (!in) throw DataError("load_csv: cannot open " + path);

  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto cells = split_line(line);
    if (first && has_header) {
      for (auto& h : cells) header.push_back(trim(h));
      first = false;
      continue;
    }
    first = false;
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw DataError("load_csv: no data rows in " + path);

  const int ncols = static_cast<int>(rows[0].size());
  int label_idx = -1;
  if (has_header) {
    for (int j = 0; j < static_cast<int>(header.size()); ++j) {
      if (header[j] == label_column) label_idx = j;
    }
  }
  if (label_idx < 0) {
    int parsed = -1;
    auto [p, ec] = std::from_chars(label_column.data(),
                                   label_column.data() + label_column.size(), parsed);
    if (ec == std::errc() && p == label_column.data() + label_column.size() &&
        parsed >= 0 && parsed < ncols) {
      label_idx = parsed;
    }
  }
  if (label_idx < 0) {
    throw DataError("load_csv: missing label column '" + label_column + "'");
  }
  if (ncols < 2) throw DataError("load_csv: need at least one feature column");

  const int n = static_cast<int>(rows.size());
  const int d = ncols - 1;
  Dataset data;
  data.features.resize(n, d);
  data.labels.resize(n);
  data.name = path;
  std::unordered_map<std::string, int> class_of;

  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != ncols) {
      std::ostringstream msg;
      msg << "load_csv: row " << i + 1 << " has " << rows[i].size()
          << " cells, expected " << ncols;
      throw DataError(msg.str());
    }
    int fj = 0;
    for (int j = 0; j < ncols; ++j) {
      if (j == label_idx) {
        const std::string key = trim(rows[i][j]);
        auto it = class_of.find(key);
        if (it == class_of.end()) {
          it = class_of.emplace(key, static_cast<int>(data.label_names.size())).first;
          data.label_names.push_back(key);
        }
        data.labels[i] = it->second;
      } else {
        double v = 0.0;
        if (!parse_double(rows[i][j], v)) {
          std::ostringstream msg;
          msg << "load_csv: cannot parse numeric cell at row " << i + 1
              << ", column "
              << (has_header ? ("'" + header[j] + "'") : std::to_string(j));
          throw DataError(msg.str());
        }
        data.features(i, fj++) = v;
      }
    }
  }
  data.num_classes = static_cast<int>(data.label_names.size());
  if (data.num_classes < 2) {
    throw DataError("load_csv: fewer than two distinct label values");
  }
  data.validate();
  return data;
}

void save_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("save_csv: cannot open " + path);
  for (int j = 0; j < data.d(); ++j) out << "f" << j << ",";
  out << "y\n";
  out.precision(17);
  for (int i = 0; i < data.n(); ++i) {
    for (int j = 0; j < data.d(); ++j) out << data.features(i, j) << ",";
    if (!data.label_names.empty()) {
      out << data.label_names[data.labels[i]] << "\n";
    } else {
      out << data.labels[i] << "\n";
    }
  }
}

SynthResult synth_subpop(int n, const std::vector<double>& group_fracs,
                         const std::vector<double>& group_noise, int d,
                         std::uint64_t seed) {
  const int G = static_cast<int>(group_fracs.size());
  if (G < 1 || group_noise.size() != group_fracs.size()) {
    throw std::invalid_argument("synth_subpop: need matching fractions and noise rates");
  }
  double fsum = 0.0;
  for (double f : group_fracs) {
    if (f < 0.0) throw std::invalid_argument("synth_subpop: negative group fraction");
    fsum += f;
  }
  if (std::abs(fsum - 1.0) > 1e-9) {
    throw std::invalid_argument("synth_subpop: group fractions must sum to 1");
  }
  for (double nz : group_noise) {
    if (nz < 0.0 || nz >= 0.5) {
      throw std::invalid_argument("synth_subpop: noise rates must lie in [0, 0.5)");
    }
  }
  if (n < 1 || d < 1) throw std::invalid_argument("synth_subpop: n and d must be positive");

  // Deterministic group counts: floor then largest remainder.
  std::vector<int> counts(G);
  std::vector<std::pair<double, int>> rema(G);
  int assigned = 0;
  for (int g = 0; g < G; ++g) {
    double exact = group_fracs[g] * n;
    counts[g] = static_cast<int>(std::floor(exact));
    assigned += counts[g];
    rema[g] = {exact - counts[g], g};
  }
  std::sort(rema.begin(), rema.end(), [](auto& a, auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  for (int k = 0; k < n - assigned; ++k) counts[rema[k].second]++;

  Rng rng = seeded_rng(seed);
  Dataset data;
  data.features.resize(n, d);
  data.labels.resize(n);
  data.num_classes = 2;
  data.name = "synth_subpop";
  data.label_names = {"0", "1"};
  VectorXi groups(n);

  int row = 0;
  for (int g = 0; g < G; ++g) {
    const int axis = g % d;  // orthogonal rule directions across groups
    for (int k = 0; k < counts[g]; ++k, ++row) {
      for (int j = 0; j < d; ++j) data.features(row, j) = standard_normal(rng);
      int y = data.features(row, axis) >= 0.0 ? 1 : 0;
      if (group_noise[g] > 0.0 && uniform01(rng) < group_noise[g]) y = 1 - y;
      data.labels[row] = y;
      groups[row] = g;
    }
  }

  // Shuffle so group blocks are interleaved (Fisher-Yates).
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform01(rng) * (i + 1));
    data.features.row(i).swap(data.features.row(j));
    std::swap(data.labels[i], data.labels[j]);
    std::swap(groups[i], groups[j]);
  }

  data.validate();
  return SynthResult{std::move(data), std::move(groups)};
}

std::pair<Dataset, Dataset> split(const Dataset& data, const SplitSpec& spec) {
  data.validate();
  if (spec.reuse_train_as_val) return {data, data};
  if (spec.val_fraction < 0.0 || spec.val_fraction >= 1.0) {
    throw std::invalid_argument("split: val_fraction must lie in [0, 1)");
  }
  const int n = data.n();
  const int nval = static_cast<int>(std::floor(spec.val_fraction * n));
  if (nval < 1 || n - nval < 1) {
    throw std::invalid_argument("split: empty split");
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  Rng rng = seeded_rng(spec.seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform01(rng) * (i + 1));
    std::swap(idx[i], idx[j]);
  }

  auto take = [&](int from, int count, const std::string& tag) {
    Dataset out;
    out.features.resize(count, data.d());
    out.labels.resize(count);
    out.num_classes = data.num_classes;
    out.label_names = data.label_names;
    out.name = data.name + tag;
    for (int k = 0; k < count; ++k) {
      out.features.row(k) = data.features.row(idx[from + k]);
      out.labels[k] = data.labels[idx[from + k]];
    }
    return out;
  };
  return {take(0, n - nval, "/train"), take(n - nval, nval, "/val")};
}

}  // namespace bcvar
