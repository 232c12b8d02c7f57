#pragma once

#include <stdexcept>
#include <string>

namespace ffsim {

// Domain errors. All inherit from Error so callers can catch the family.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidModel : public Error {
public:
    explicit InvalidModel(const std::string& msg) : Error(msg) {}
};

class OrderingViolation : public Error {
public:
    explicit OrderingViolation(const std::string& msg) : Error(msg) {}
};

class EmptyTopology : public Error {
public:
    explicit EmptyTopology(const std::string& msg) : Error(msg) {}
};

class EmptyServingSet : public Error {
public:
    explicit EmptyServingSet(const std::string& msg) : Error(msg) {}
};

class InvalidThreshold : public Error {
public:
    explicit InvalidThreshold(const std::string& msg) : Error(msg) {}
};

class InfiniteThreshold : public Error {
public:
    explicit InfiniteThreshold(const std::string& msg) : Error(msg) {}
};

class NotOperable : public Error {
public:
    explicit NotOperable(const std::string& msg) : Error(msg) {}
};

class NoSamples : public Error {
public:
    explicit NoSamples(const std::string& msg) : Error(msg) {}
};

// Quadrature failed to reach the requested tolerance; carries the achieved
// error estimate.
class NumericsError : public Error {
public:
    NumericsError(const std::string& msg, double error_estimate)
        : Error(msg), error_estimate_(error_estimate) {}
    double error_estimate() const { return error_estimate_; }

private:
    double error_estimate_;
};

// Configuration / schema violations; carries the offending field path.
class ConfigError : public Error {
public:
    ConfigError(const std::string& field_path, const std::string& msg)
        : Error(field_path + ": " + msg), field_path_(field_path) {}
    const std::string& field_path() const { return field_path_; }

private:
    std::string field_path_;
};

}  // namespace ffsim
