#ifndef SIGNORM_ERRORS_HPP
#define SIGNORM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace signorm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfDomain : Error {
    using Error::Error;
};

struct UnsupportedDerivative : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct SizeMismatch : Error {
    using Error::Error;
};

struct NonIntegrable : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

// Construction-time validation failures (bad curve parameters, bad config).
struct InvalidSpec : Error {
    using Error::Error;
};

} // namespace signorm

#endif
