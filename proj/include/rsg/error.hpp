#pragma once

#include <stdexcept>
#include <string>

namespace rsg {

// Bad input: malformed maps, specs, clouds, windows, options.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical kernel failed to meet its tolerance. `residual` is the worst
// residual observed; `context` accumulates what was being computed.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual, std::string context = {})
        : std::runtime_error(what), residual_(residual), context_(std::move(context)) {}

    double residual() const noexcept { return residual_; }
    const std::string& context() const noexcept { return context_; }

    NumericalError with_context(const std::string& more) const {
        return NumericalError(what(), residual_, context_.empty() ? more : more + "; " + context_);
    }

private:
    double residual_;
    std::string context_;
};

// Explicit composition would exceed the configured degree cap.
class DegreeCapError : public std::runtime_error {
public:
    DegreeCapError(long degree, long cap)
        : std::runtime_error("composed degree " + std::to_string(degree) + " exceeds cap " +
                             std::to_string(cap)),
          degree_(degree), cap_(cap) {}

    long degree() const noexcept { return degree_; }
    long cap() const noexcept { return cap_; }

private:
    long degree_;
    long cap_;
};

}  // namespace rsg
