#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace waveaction {

/// Thrown by op_invert when an eigenvalue is zero or below the singularity
/// tolerance; carries the offending mode index (1-based).
class SingularOperatorError : public std::runtime_error {
 public:
  SingularOperatorError(int mode, const std::string& what)
      : std::runtime_error(what), mode_(mode) {}
  int mode() const { return mode_; }

 private:
  int mode_;
};

/// A horizon t with sin(omega_n t) below tolerance for one or more modes:
/// the boundary-matching problem is singular for those modes.
class ConjugatePointError : public std::runtime_error {
 public:
  ConjugatePointError(std::vector<int> modes, const std::string& what)
      : std::runtime_error(what), modes_(std::move(modes)) {}
  const std::vector<int>& modes() const { return modes_; }

 private:
  std::vector<int> modes_;
};

}  // namespace waveaction
