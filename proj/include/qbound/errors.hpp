#pragma once

#include <stdexcept>
#include <string>

namespace qbound {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionTooLarge : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NonHermitianInput : Error { using Error::Error; };
struct NonHermitianOperator : Error { using Error::Error; };
struct HermiticityViolation : Error { using Error::Error; };
struct LinearlyDependent : Error { using Error::Error; };
struct NotPrime : Error { using Error::Error; };
struct NotUnit : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct AngleOutOfRange : Error { using Error::Error; };
struct NonRealMoment : Error { using Error::Error; };
struct NonRealExpectation : Error { using Error::Error; };
struct MissingLabel : Error { using Error::Error; };
struct DegenerateSpectrum : Error { using Error::Error; };
struct DegenerateOverlap : Error { using Error::Error; };
struct InvalidKappa : Error { using Error::Error; };
struct ValueOutOfRange : Error { using Error::Error; };
struct TooManyOperators : Error { using Error::Error; };
struct UnknownBound : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };

/// Input file could not be parsed; carries a line/column hint where known.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& what, int line_ = 0, int column_ = 0)
        : Error(what), line(line_), column(column_) {}
};

} // namespace qbound
