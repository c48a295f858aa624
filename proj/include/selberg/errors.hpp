#pragma once

#include <stdexcept>
#include <string>

namespace selberg {

// Base of every numerical failure raised by the library. name() is the
// stable identifier reported by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

// A Gamma or sine argument sits on (or within tolerance of) a singularity.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& what) : Error("PoleError", what) {}
};

class ResonanceUnresolvable : public Error {
public:
    explicit ResonanceUnresolvable(const std::string& what)
        : Error("ResonanceUnresolvable", what) {}
};

class SingularSolve : public Error {
public:
    explicit SingularSolve(const std::string& what) : Error("SingularSolve", what) {}
};

class TailTooLarge : public Error {
public:
    explicit TailTooLarge(const std::string& what) : Error("TailTooLarge", what) {}
};

class WindowBoundary : public Error {
public:
    explicit WindowBoundary(const std::string& what) : Error("WindowBoundary", what) {}
};

class IllConditioned : public Error {
public:
    explicit IllConditioned(const std::string& what) : Error("IllConditioned", what) {}
};

class ConvergenceFailure : public Error {
public:
    explicit ConvergenceFailure(const std::string& what)
        : Error("ConvergenceFailure", what) {}
};

class SlowConvergence : public Error {
public:
    explicit SlowConvergence(const std::string& what) : Error("SlowConvergence", what) {}
};

// Caller violated a documented precondition (bad index, x outside (0,1), ...).
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace selberg
