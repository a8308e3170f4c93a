#pragma once

#include <stdexcept>
#include <string>

namespace triad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A grid is too coarse to represent the requested Fourier modes.
class AliasingError : public Error {
public:
    using Error::Error;
};

} // namespace triad
