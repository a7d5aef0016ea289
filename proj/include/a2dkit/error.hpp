#pragma once

#include <stdexcept>
#include <string>

namespace a2dkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text: bad CSV row, unparsable number, bad section header.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A value violates a domain constraint (range, binary cell, positivity).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two inputs that must agree in shape, column names or sample order do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Name lookup failed: unknown actor, action, pair, video or class.
class LookupError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (PSO parameters, grids, ensemble settings).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure while reading or writing.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace a2dkit
