#pragma once

#include <string>

#include "bcvar/boost.hpp"

namespace bcvar {

// Everything needed to reload and re-evaluate a trained run: the ensemble,
// the training report, and an echo of the configuration that produced it.
struct RunArtifact {
  EnsembleModel model;
  TrainReport report;
  BoostConfig config_echo;
  int format_version = 1;
};

// Versioned plain-text format. Floating-point fields are written as C
// hexfloats, so save/load round-trips bit-exactly.
void save_artifact(const RunArtifact& artifact, const std::string& path);

// Throws DataError on missing files, version mismatches, or malformed input.
RunArtifact load_artifact(const std::string& path);

}  // namespace bcvar
