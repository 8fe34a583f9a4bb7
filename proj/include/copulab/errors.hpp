#pragma once

#include <stdexcept>
#include <string>

namespace copulab {

// Base for all library errors so callers can catch one type at the boundary.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidMeasure : public Error {
public:
    explicit InvalidMeasure(const std::string& what) : Error(what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

class NotAnAtom : public Error {
public:
    explicit NotAnAtom(const std::string& what) : Error(what) {}
};

// Raised by operations that need the defining dependence measure of an
// extreme value copula built from a closed-form function only.
class MeasureUnavailable : public Error {
public:
    explicit MeasureUnavailable(const std::string& what) : Error(what) {}
};

class NotDoublyStochastic : public Error {
public:
    explicit NotDoublyStochastic(const std::string& what) : Error(what) {}
};

class WeightsInvalid : public Error {
public:
    explicit WeightsInvalid(const std::string& what) : Error(what) {}
};

class EmptySample : public Error {
public:
    explicit EmptySample(const std::string& what) : Error(what) {}
};

class StepUnderflow : public Error {
public:
    explicit StepUnderflow(const std::string& what) : Error(what) {}
};

class SpecParseError : public Error {
public:
    explicit SpecParseError(const std::string& what) : Error(what) {}
};

} // namespace copulab
