#pragma once

#include <stdexcept>
#include <string>

namespace accperc {

/// A request exceeds a memory or size cap (hypercube dimension, listing size).
class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive search ran past its configured node budget. No partial
/// result accompanies this error.
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace accperc
