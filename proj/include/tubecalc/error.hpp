#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tubecalc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class PoleAtPoint : public Error {
public:
    explicit PoleAtPoint(double at)
        : Error("denominator vanishes at " + std::to_string(at)), point(at) {}
    double point;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// A group table failed one of the group axioms.
class NotAGroup : public Error {
public:
    NotAGroup(std::string axiom_name, std::vector<std::size_t> where)
        : Error("not a group: " + axiom_name + " fails"), axiom(std::move(axiom_name)),
          witness(std::move(where)) {}
    std::string axiom;
    std::vector<std::size_t> witness;
};

class NotConnected : public Error {
public:
    using Error::Error;
};

/// A loaded structure violates one of its defining identities.
/// `which` names the identity, `witness` carries the offending indices.
class InvariantViolation : public Error {
public:
    InvariantViolation(std::string identity, std::vector<std::size_t> where, const std::string& detail = {})
        : Error("invariant violated: " + identity + (detail.empty() ? "" : " (" + detail + ")")),
          which(std::move(identity)), witness(std::move(where)) {}
    std::string which;
    std::vector<std::size_t> witness;
};

class SizeLimit : public Error {
public:
    SizeLimit(std::size_t requested, std::size_t cap)
        : Error("chain dimension " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
          requested(requested), cap(cap) {}
    std::size_t requested;
    std::size_t cap;
};

class TruncationInconclusive : public Error {
public:
    using Error::Error;
};

class UnsupportedDegree : public Error {
public:
    explicit UnsupportedDegree(int degree)
        : Error("unsupported chain degree " + std::to_string(degree)), degree(degree) {}
    int degree;
};

class TimeLimitExceeded : public Error {
public:
    TimeLimitExceeded() : Error("time limit exceeded") {}
};

}  // namespace tubecalc
