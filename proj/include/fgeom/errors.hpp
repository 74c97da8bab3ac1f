#pragma once

#include <stdexcept>
#include <string>

namespace fgeom {

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : std::runtime_error {
  explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidExponent : std::runtime_error {
  explicit InvalidExponent(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotCompletable : std::runtime_error {
  explicit NotCompletable(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotAffinePlane : std::runtime_error {
  explicit NotAffinePlane(const std::string& msg) : std::runtime_error(msg) {}
};

struct InconsistentClass : std::runtime_error {
  explicit InconsistentClass(const std::string& msg) : std::runtime_error(msg) {}
};

struct StructureViolation : std::runtime_error {
  explicit StructureViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotTranslationType : std::runtime_error {
  explicit NotTranslationType(const std::string& msg) : std::runtime_error(msg) {}
};

struct ReconstructionFailed : std::runtime_error {
  explicit ReconstructionFailed(const std::string& msg) : std::runtime_error(msg) {}
};

struct SearchExhausted : std::runtime_error {
  explicit SearchExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fgeom
