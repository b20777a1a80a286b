// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nomalab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// field / lattice construction
struct NonPrimeError : Error {
    using Error::Error;
};
struct TooSmallError : Error {
    using Error::Error;
};
struct TooLargeError : Error {
    using Error::Error;
};

// constellation construction
struct SizeCapError : Error {
    using Error::Error;
};
struct AlphaOutOfRangeError : Error {
    using Error::Error;
};

// analysis
struct UnsupportedDimensionError : Error {
    using Error::Error;
};
struct InsufficientDataError : Error {
    using Error::Error;
};

// cli / config
struct ConfigError : Error {
    using Error::Error;
};
struct UnknownFigureError : Error {
    using Error::Error;
};

}  // namespace nomalab
