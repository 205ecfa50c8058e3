#pragma once

#include <stdexcept>
#include <string>

namespace lshmine {

/// Base class for every error raised by the mining library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A level whose maximum support equals the support threshold. The LSH
/// parameter formulas divide by (alpha - theta) there; callers fall back to
/// the exact pairwise join for that level.
class DegenerateLevel : public Error {
 public:
  using Error::Error;
};

/// The covering family would exceed the configured mask dimension cap.
class FamilyTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace lshmine
