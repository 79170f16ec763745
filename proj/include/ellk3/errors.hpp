#pragma once

#include <stdexcept>
#include <string>

namespace ellk3 {

enum class Err {
    ZeroThetaComponent,
    NonSquareScale,
    KThreeOnly,
    ZeroRank,
    KernelWithoutTable,
    NotWeakFamily,
    UnknownLimit,
    NotAmple,
    DegenerateTarget,
    HypothesisViolated,
    ParallelSlopes,
    WindowEmpty,
    UnsupportedName,
    InvalidSpec,
};

const char* err_name(Err e);

// Domain-rule violations. The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
public:
    DomainError(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw DomainError(code, what); }

}  // namespace ellk3
