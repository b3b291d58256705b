#pragma once
// Error taxonomy shared by all modules.  Every throw carries a message with
// enough context to reproduce the failure (offending value, modulus, type).

#include <stdexcept>
#include <string>

namespace spets {

struct SpetsError : std::runtime_error {
  explicit SpetsError(const std::string& what) : std::runtime_error(what) {}
};

// exact-arith
struct DivisionByZero : SpetsError { using SpetsError::SpetsError; };
struct FractionalPower : SpetsError { using SpetsError::SpetsError; };
struct NotIntegral : SpetsError { using SpetsError::SpetsError; };
struct BadDenominator : SpetsError { using SpetsError::SpetsError; };
struct MissingRoot : SpetsError { using SpetsError::SpetsError; };

// reflgroup
struct OrderCapExceeded : SpetsError { using SpetsError::SpetsError; };
struct NotFinite : SpetsError { using SpetsError::SpetsError; };
struct NotReflectionGroup : SpetsError { using SpetsError::SpetsError; };
struct SplitFailure : SpetsError { using SpetsError::SpetsError; };
struct FactorFailure : SpetsError { using SpetsError::SpetsError; };
struct FusionFailure : SpetsError { using SpetsError::SpetsError; };

// torus
struct NoEquivariantMatching : SpetsError { using SpetsError::SpetsError; };
struct FitFailure : SpetsError { using SpetsError::SpetsError; };

// hecke / blocktable
struct NoProvider : SpetsError { using SpetsError::SpetsError; };

// unipotent
struct MissingMultiplicity : SpetsError { using SpetsError::SpetsError; };
struct DataValidation : SpetsError { using SpetsError::SpetsError; };
struct InterpolationUnderdetermined : SpetsError { using SpetsError::SpetsError; };

// serialisation
struct ParseError : SpetsError { using SpetsError::SpetsError; };

}  // namespace spets
