#pragma once

#include <stdexcept>
#include <string>

namespace dani {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class FieldMismatch : public Error {
public:
    FieldMismatch() : Error("field mismatch between operands") {}
};

class RingMismatch : public Error {
public:
    RingMismatch() : Error("ring mismatch between operands") {}
};

class UnknownVariable : public Error {
public:
    explicit UnknownVariable(const std::string& name)
        : Error("unknown variable: " + name) {}
};

/// Parse errors carry a position and what was expected there.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t col, const std::string& msg)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line), col(col) {}
    std::size_t line;
    std::size_t col;
};

/// Ring-config validation failure; the message names the violated clause.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& clause) : Error(clause) {}
};

/// The top form of the defining polynomial is divisible by a T-variable,
/// so the associated graded ring does not have the product shape.
class DivisibleTopForm : public Error {
public:
    explicit DivisibleTopForm(int index)
        : Error("DivisibleTopForm: t" + std::to_string(index) + " divides the top form"),
          index(index) {}
    int index;
};

/// gcd(F, F_V) != 1: the coprimality hypothesis fails.
class NotCoprime : public Error {
public:
    explicit NotCoprime(const std::string& detail)
        : Error("NotCoprime: " + detail) {}
};

class NotUnitExponent : public Error {
public:
    explicit NotUnitExponent(int index)
        : Error("NotUnitExponent: r" + std::to_string(index) + " != 1") {}
};

/// A division that the construction guarantees to be exact was not.
/// Reaching this means a hypothesis is broken; treat as a hard failure.
class InexactDivision : public Error {
public:
    explicit InexactDivision(const std::string& context)
        : Error("InexactDivision: " + context) {}
};

/// A constructed candidate map failed axiom verification.
class CandidateFailed : public Error {
public:
    explicit CandidateFailed(const std::string& detail)
        : Error("CandidateFailed: " + detail) {}
};

class ZeroA1 : public Error {
public:
    ZeroA1() : Error("ZeroA1: the T-linear coefficient a1(Z) is zero") {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

} // namespace dani
