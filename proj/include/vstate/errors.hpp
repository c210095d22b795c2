#pragma once

#include <stdexcept>
#include <string>

namespace vstate {

// Numerical/algebraic failure modes. Each one names the contract it breaks so
// callers (and the CLI exit-code logic) can tell a solver failure apart from a
// verification mismatch.

struct DenominatorVanishes : std::runtime_error {
    explicit DenominatorVanishes(const std::string& what) : std::runtime_error(what) {}
};

// Symbolic reduction is nonzero but the numeric enclosure still contains zero
// at maximal precision; the quotient-ring zero test cannot decide.
struct Inconclusive : std::runtime_error {
    explicit Inconclusive(const std::string& what) : std::runtime_error(what) {}
};

// A pole of a circle integrand sits on |tau|=1 and its residues do not cancel.
struct PoleOnCircle : std::runtime_error {
    explicit PoleOnCircle(const std::string& what) : std::runtime_error(what) {}
};

// det M_{2n} vanished on a block that must be invertible.
struct SingularBlock : std::runtime_error {
    explicit SingularBlock(const std::string& what) : std::runtime_error(what) {}
};

// Boundary curves self-intersect or touch; the Cauchy kernel is unusable.
struct CurveDegenerate : std::runtime_error {
    explicit CurveDegenerate(const std::string& what) : std::runtime_error(what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct NewtonDiverged : std::runtime_error {
    explicit NewtonDiverged(const std::string& what) : std::runtime_error(what) {}
};

struct BranchLost : std::runtime_error {
    explicit BranchLost(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientSamples : std::runtime_error {
    explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vstate
