#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asmas/qualitative.hpp"
#include "asmas/synthesis.hpp"

namespace asmas {

enum class Engine { Auto, Bounded, Qualitative, Direct };
const char* engine_name(Engine e);
Engine parse_engine(const std::string& name);

struct PipelineOptions {
  Engine engine = Engine::Auto;
  std::optional<FinitePath> at;  // context path; model-level check when empty
  BeliefMode mode = BeliefMode::PathClass;
};

/// One row of the updated-preference table γ^h.
struct PreferenceEntry {
  int holder, over;
  Step::Kind kind;
  FinitePath path;
  Dist<int> dist;
};

struct PipelineResult {
  Verdict verdict;
  Engine engine = Engine::Auto;
  Fragment fragment = Fragment::GENERAL;
  int horizon = 0;  // synthesis horizon d(φ)+1
  std::vector<SynthesizedStrategies::Entry> strategies;
  std::vector<PreferenceEntry> preferences;
  std::optional<QualitativeResult> qualitative;
  std::vector<std::string> warnings;
  std::map<std::string, double> timing_ms;  // synthesis, update, check
};

/// Engine chosen for φ under `requested` (Auto picks by fragment).
Engine select_engine(const Formula& phi, Engine requested, bool has_context);

/// Synthesis of ζ over all paths up to d(φ)+1, preference update, then the
/// check on the selected engine.
PipelineResult run_pipeline(const Model& m, const Formula& phi, const PipelineOptions& opt = {});

/// Top-level threshold operators (P, B, CT, DT) turned into their query form.
FormulaPtr as_query(const Formula& phi);

}  // namespace asmas
