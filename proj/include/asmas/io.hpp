#pragma once

#include <string>

#include "asmas/model.hpp"

namespace asmas {

/// Loads a model document (JSON, `format: 1`). The result is finalized; its
/// validation report may still list violations (see Model::require_clean).
Model load_model_file(const std::string& path);
Model load_model_text(const std::string& text, const std::string& origin = "<string>");

/// Canonical document for a finalized model. Sink completion is left implicit,
/// so load(dump(m)) rebuilds the same model.
std::string dump_model(const Model& m, int indent = 2);

}  // namespace asmas
