#include "bcvar/artifact.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "json.hpp"

namespace bcvar {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

// Doubles travel as hexfloat strings so the round-trip is bit-exact.
std::string hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double unhex(const json& j, const char* what) {
  if (!j.is_string()) throw DataError(std::string("artifact: ") + what + " is not a number string");
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw DataError(std::string("artifact: cannot parse ") + what);
  return v;
}

json vec_to_json(const VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(hex(v[i]));
  return a;
}

VectorXd vec_from_json(const json& a, const char* what) {
  if (!a.is_array()) throw DataError(std::string("artifact: ") + what + " is not an array");
  VectorXd v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v[static_cast<int>(i)] = unhex(a[i], what);
  return v;
}

json model_to_json(const BaseModel& m) {
  json j;
  j["kind"] = m.kind == BaseModel::Kind::Stump ? "stump" : "tree";
  j["feature"] = m.feature;
  j["threshold"] = hex(m.threshold);
  j["left_label"] = m.left_label;
  j["right_label"] = m.right_label;
  j["achieved_weighted_loss"] = hex(m.achieved_weighted_loss);
  j["via_resampling"] = m.via_resampling;
  json nodes = json::array();
  for (const TreeNode& t : m.nodes) {
    nodes.push_back({{"feature", t.feature},
                     {"threshold", hex(t.threshold)},
                     {"left", t.left},
                     {"right", t.right},
                     {"label", t.label}});
  }
  j["nodes"] = std::move(nodes);
  return j;
}

BaseModel model_from_json(const json& j) {
  BaseModel m;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "stump") {
    m.kind = BaseModel::Kind::Stump;
  } else if (kind == "tree") {
    m.kind = BaseModel::Kind::Tree;
  } else {
    throw DataError("artifact: unknown base model kind '" + kind + "'");
  }
  m.feature = j.at("feature").get<int>();
  m.threshold = unhex(j.at("threshold"), "threshold");
  m.left_label = j.at("left_label").get<int>();
  m.right_label = j.at("right_label").get<int>();
  m.achieved_weighted_loss = unhex(j.at("achieved_weighted_loss"), "achieved_weighted_loss");
  m.via_resampling = j.at("via_resampling").get<bool>();
  for (const json& t : j.at("nodes")) {
    TreeNode node;
    node.feature = t.at("feature").get<int>();
    node.threshold = unhex(t.at("threshold"), "node threshold");
    node.left = t.at("left").get<int>();
    node.right = t.at("right").get<int>();
    node.label = t.at("label").get<int>();
    m.nodes.push_back(node);
  }
  if (m.kind == BaseModel::Kind::Tree && m.nodes.empty()) {
    throw DataError("artifact: tree model with no nodes");
  }
  return m;
}

}  // namespace

void save_artifact(const RunArtifact& artifact, const std::string& path) {
  json j;
  j["format"] = "bcvar-run";
  j["format_version"] = kFormatVersion;

  const EnsembleModel& m = artifact.model;
  json jm;
  jm["feature_dim"] = m.feature_dim;
  jm["num_classes"] = m.num_classes;
  jm["label_names"] = m.label_names;
  jm["mixture"] = vec_to_json(m.mixture.values());
  jm["provenance"] = {{"algorithm", m.provenance.algorithm},
                      {"alpha", hex(m.provenance.alpha)},
                      {"eta", hex(m.provenance.eta)},
                      {"beta", hex(m.provenance.beta)},
                      {"seed", m.provenance.seed}};
  json models = json::array();
  for (const BaseModel& b : m.base_models) models.push_back(model_to_json(b));
  jm["base_models"] = std::move(models);
  j["model"] = std::move(jm);

  const TrainReport& r = artifact.report;
  json jr;
  jr["alpha"] = hex(r.alpha);
  jr["train_cvar"] = hex(r.train_cvar);
  jr["val_cvar"] = hex(r.val_cvar);
  jr["train_avg_loss"] = hex(r.train_avg_loss);
  jr["val_avg_loss"] = hex(r.val_avg_loss);
  jr["seconds"] = hex(r.seconds);
  json trace = json::array();
  for (const RoundRecord& rec : r.rounds) {
    trace.push_back({{"round", rec.round},
                     {"weighted_loss", hex(rec.weighted_loss)},
                     {"dual_objective", hex(rec.dual_objective)}});
  }
  jr["rounds"] = std::move(trace);
  j["report"] = std::move(jr);

  const BoostConfig& c = artifact.config_echo;
  j["config"] = {{"alpha", hex(c.alpha)},
                 {"rounds", c.rounds},
                 {"eta", hex(c.eta)},
                 {"beta", hex(c.beta)},
                 {"seed", c.seed},
                 {"warmup_rounds", c.warmup_rounds},
                 {"lambda_on_train", c.lambda_on_train},
                 {"classic_adaboost_update", c.classic_adaboost_update},
                 {"reg_tol", hex(c.reg_tol)}};

  std::ofstream out(path);
  if (!out) throw DataError("save_artifact: cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) throw DataError("save_artifact: write failed for " + path);
}

RunArtifact load_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("load_artifact: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError(std::string("load_artifact: malformed JSON: ") + e.what());
  }

  try {
    if (j.at("format").get<std::string>() != "bcvar-run") {
      throw DataError("load_artifact: not a run artifact");
    }
    const int ver = j.at("format_version").get<int>();
    if (ver != kFormatVersion) {
      throw DataError("load_artifact: unsupported format_version " + std::to_string(ver));
    }

    RunArtifact a;
    a.format_version = ver;

    const json& jm = j.at("model");
    a.model.feature_dim = jm.at("feature_dim").get<int>();
    a.model.num_classes = jm.at("num_classes").get<int>();
    a.model.label_names = jm.at("label_names").get<std::vector<std::string>>();
    a.model.mixture = ModelMixture(vec_from_json(jm.at("mixture"), "mixture"));
    const json& jp = jm.at("provenance");
    a.model.provenance.algorithm = jp.at("algorithm").get<std::string>();
    a.model.provenance.alpha = unhex(jp.at("alpha"), "provenance alpha");
    a.model.provenance.eta = unhex(jp.at("eta"), "provenance eta");
    a.model.provenance.beta = unhex(jp.at("beta"), "provenance beta");
    a.model.provenance.seed = jp.at("seed").get<std::uint64_t>();
    for (const json& b : jm.at("base_models")) {
      a.model.base_models.push_back(model_from_json(b));
    }
    if (!a.model.base_models.empty() &&
        a.model.mixture.size() != static_cast<int>(a.model.base_models.size())) {
      throw DataError("load_artifact: mixture length does not match base model count");
    }

    const json& jr = j.at("report");
    a.report.alpha = unhex(jr.at("alpha"), "report alpha");
    a.report.train_cvar = unhex(jr.at("train_cvar"), "train_cvar");
    a.report.val_cvar = unhex(jr.at("val_cvar"), "val_cvar");
    a.report.train_avg_loss = unhex(jr.at("train_avg_loss"), "train_avg_loss");
    a.report.val_avg_loss = unhex(jr.at("val_avg_loss"), "val_avg_loss");
    a.report.seconds = unhex(jr.at("seconds"), "seconds");
    for (const json& rec : jr.at("rounds")) {
      RoundRecord rr;
      rr.round = rec.at("round").get<int>();
      rr.weighted_loss = unhex(rec.at("weighted_loss"), "weighted_loss");
      rr.dual_objective = unhex(rec.at("dual_objective"), "dual_objective");
      a.report.rounds.push_back(rr);
    }

    const json& jc = j.at("config");
    a.config_echo.alpha = unhex(jc.at("alpha"), "config alpha");
    a.config_echo.rounds = jc.at("rounds").get<int>();
    a.config_echo.eta = unhex(jc.at("eta"), "config eta");
    a.config_echo.beta = unhex(jc.at("beta"), "config beta");
    a.config_echo.seed = jc.at("seed").get<std::uint64_t>();
    a.config_echo.warmup_rounds = jc.at("warmup_rounds").get<int>();
    a.config_echo.lambda_on_train = jc.at("lambda_on_train").get<bool>();
    a.config_echo.classic_adaboost_update = jc.at("classic_adaboost_update").get<bool>();
    a.config_echo.reg_tol = unhex(jc.at("reg_tol"), "reg_tol");
    return a;
  } catch (const json::exception& e) {
    throw DataError(std::string("load_artifact: missing or mistyped field: ") + e.what());
  }
}

}  // namespace bcvar
