#pragma once

#include <stdexcept>
#include <string>

namespace flmlab {

// Every library failure derives from Error so callers (the CLI in particular)
// can map them to exit codes without knowing the module that raised them.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class OriginNotInterior : public Error {
public:
    using Error::Error;
};

class RepresentationMismatch : public Error {
public:
    using Error::Error;
};

class LimitExceeded : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class UnboundedBody : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class UnknownExperiment : public Error {
public:
    using Error::Error;
};

class ChecksumMismatch : public Error {
public:
    using Error::Error;
};

} // namespace flmlab
