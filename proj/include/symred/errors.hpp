#pragma once

#include <stdexcept>
#include <string>

namespace symred {

// Common base so callers (and the CLI exit-code mapping) can catch the whole
// domain-error taxonomy at once. Input/schema problems use std::invalid_argument
// or nlohmann's parse errors instead and map to a different exit code.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define SYMRED_DEFINE_ERROR(NAME)                       \
  struct NAME : Error {                                 \
    explicit NAME(const std::string& msg = #NAME)       \
        : Error(std::string(#NAME) + ": " + msg) {}     \
  };

SYMRED_DEFINE_ERROR(AntipodalBranch)
SYMRED_DEFINE_ERROR(NotCommuting)
SYMRED_DEFINE_ERROR(CentralPair)
SYMRED_DEFINE_ERROR(NotOrthogonal)
SYMRED_DEFINE_ERROR(OutOfDomain)
SYMRED_DEFINE_ERROR(UnsupportedPair)
SYMRED_DEFINE_ERROR(StabilizerElement)
SYMRED_DEFINE_ERROR(NotTransitive)
SYMRED_DEFINE_ERROR(NonPolynomial)
SYMRED_DEFINE_ERROR(NotLAG)
SYMRED_DEFINE_ERROR(OutOfSpan)
SYMRED_DEFINE_ERROR(NoValues)
SYMRED_DEFINE_ERROR(UnknownLabel)
SYMRED_DEFINE_ERROR(BadRoot)
SYMRED_DEFINE_ERROR(UnverifiedStability)
SYMRED_DEFINE_ERROR(EquivarianceViolation)
SYMRED_DEFINE_ERROR(StabilizerViolation)
SYMRED_DEFINE_ERROR(InvalidIndex)
SYMRED_DEFINE_ERROR(IncompatibleSpecs)

#undef SYMRED_DEFINE_ERROR

}  // namespace symred
