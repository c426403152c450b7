#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "asmas/model.hpp"

namespace asmas {

/// Finite path with one step tag per transition.
struct FinitePath {
  std::vector<StateIdx> states;
  std::vector<Step> steps;

  FinitePath() = default;
  explicit FinitePath(StateIdx s) : states{s} {}

  StateIdx last() const { return states.back(); }
  std::size_t size() const { return states.size(); }
  FinitePath extended(const Step& st, StateIdx t) const {
    FinitePath p = *this;
    p.states.push_back(t);
    p.steps.push_back(st);
    return p;
  }
  FinitePath prefix(std::size_t n) const {
    FinitePath p;
    p.states.assign(states.begin(), states.begin() + n);
    p.steps.assign(steps.begin(), steps.begin() + (n - 1));
    return p;
  }
  auto operator<=>(const FinitePath&) const = default;
};

/// "s0 s1 s3" with tags inferred, or "s0 @Alice.g.{passive} s1" with explicit tags.
FinitePath parse_path(const Model& m, std::string_view text);
std::string to_string(const Model& m, const FinitePath& p, bool with_steps = false);
/// Compact id used in reports: concatenated state ids ("s0s1s3").
std::string path_id(const Model& m, const FinitePath& p);
bool valid_path(const Model& m, const FinitePath& p);
Step parse_step(const Model& m, std::string_view text);

/// All valid paths of exactly `len` states starting in `p`.
std::vector<FinitePath> extensions(const Model& m, const FinitePath& p, std::size_t len);
/// All valid initialized paths (μ0 > 0) with at most `len` states.
std::vector<FinitePath> initialized_paths(const Model& m, std::size_t len);

}  // namespace asmas
