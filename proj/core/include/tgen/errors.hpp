#pragma once

#include <stdexcept>
#include <string>

namespace tgen {

/// Bad user-supplied configuration (empty spec list, k = 0, non-integral
/// step count, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed model document. The message names the offending element.
struct LoadError : std::runtime_error {
    explicit LoadError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Violated API contract (dimension mismatch, empty group, undefined metric).
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested operation is not applicable to this model (e.g. output-diversity
/// search on a model whose inputs are all constant).
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tgen
