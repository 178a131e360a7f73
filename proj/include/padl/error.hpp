#pragma once

#include <stdexcept>
#include <string>

namespace padl {

// Error taxonomy shared across the library.  Callers that care about the
// category (the CLI, mostly) switch on `kind`; everyone else just lets the
// exception propagate.
enum class Err {
    bad_input,            // malformed job / invalid parameters
    check_failed,         // an identity that should hold did not
    budget_exceeded,      // enumeration larger than the configured cap
    precision_exhausted,  // no provable p-adic digits left
    non_contraction,      // Teichmuller iteration failed to improve
    not_on_variety,       // point violates equations or g = 0
    segment_split_failed, // Newton-polygon slopes collide at precision
    denominator_non_unit, // truncated series evaluated to a non-unit
    rank_overflow,        // tensor construction beyond configured size
    basis_overflow,       // operator truncation larger than allowed
    unstable,             // Fredholm determinant not stable in the basis bound
    unsupported_base,     // operator construction outside A^1 / G_m
    supersingular,        // unit-root request at a supersingular fiber
    insufficient_degree,  // no complete slope segment at this truncation
    internal              // broken invariant (a bug, not user error)
};

class Error : public std::runtime_error {
  public:
    Error(Err kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Err kind() const { return kind_; }

  private:
    Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool cond, Err kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

} // namespace padl
