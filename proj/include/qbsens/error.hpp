#pragma once

#include <stdexcept>
#include <string>

namespace qbsens {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (bad header, bad number, wrong column count).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A StatLine violates one of its invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Two records share the same (season, team) key.
class DuplicateKeyError : public Error {
public:
    using Error::Error;
};

/// A stat line cannot support the requested computation (e.g. att = 0).
class DegenerateLineError : public Error {
public:
    using Error::Error;
};

/// A perturbation would produce a negative or inconsistent stat line.
class InfeasibleScenarioError : public Error {
public:
    using Error::Error;
};

/// Too few samples or seasons for the requested statistic.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A requested season, team, or argument is not available.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace qbsens
