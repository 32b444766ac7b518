#pragma once

#include <stdexcept>
#include <string>

namespace reso {

// Base class for all domain errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

class NonProportional : public Error {
public:
    using Error::Error;
};

class UnknownSpec : public Error {
public:
    using Error::Error;
};

class NonPositiveInput : public Error {
public:
    using Error::Error;
};

class JumpOutsideGrid : public Error {
public:
    using Error::Error;
};

class DisjointBands : public Error {
public:
    using Error::Error;
};

class Uncoverable : public Error {
public:
    Uncoverable(const std::string& what, double frontier_hz)
        : Error(what), frontier_hz(frontier_hz) {}
    double frontier_hz;
};

class RateMismatch : public Error {
public:
    using Error::Error;
};

class EmptyBand : public Error {
public:
    using Error::Error;
};

class TooShort : public Error {
public:
    using Error::Error;
};

class MissingCurve : public Error {
public:
    using Error::Error;
};

class PlanChannelMismatch : public Error {
public:
    using Error::Error;
};

class AllIsolated : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class ZeroReference : public Error {
public:
    using Error::Error;
};

class EmptyList : public Error {
public:
    using Error::Error;
};

class EmptyGrid : public Error {
public:
    using Error::Error;
};

class NyquistViolation : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

class Corrupt : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace reso
