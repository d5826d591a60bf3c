#pragma once

#include <stdexcept>
#include <string>

namespace sselbp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration (bad sigma, empty radii, image too small, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// File was readable but its content is not in a supported format.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Dataset layout violates the benchmark contract, or a sample failed to process.
class DatasetError : public Error {
public:
    using Error::Error;
};

} // namespace sselbp
