#pragma once

#include <stdexcept>
#include <string>

namespace hhlab {

// Base class for all domain errors thrown by the library. Violated
// preconditions surface as one of the derived types below; anything else
// (internal invariant failures) uses std::logic_error directly.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define HHLAB_ERROR_TYPE(Name)                                   \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& msg) : Error(msg) {}    \
    }

HHLAB_ERROR_TYPE(ArityMismatch);
HHLAB_ERROR_TYPE(FieldMismatch);
HHLAB_ERROR_TYPE(DimensionMismatch);
HHLAB_ERROR_TYPE(CompositionNotZero);
HHLAB_ERROR_TYPE(NotAChainMap);
HHLAB_ERROR_TYPE(IndexOutOfRange);
HHLAB_ERROR_TYPE(DegreeTooLow);
HHLAB_ERROR_TYPE(DegreeMismatch);
HHLAB_ERROR_TYPE(LaurentNotSupported);
HHLAB_ERROR_TYPE(FactorNotScalar);
HHLAB_ERROR_TYPE(InvalidSpec);

#undef HHLAB_ERROR_TYPE

} // namespace hhlab
