#ifndef STAB_ERRORS_HPP
#define STAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stab {

/** Base class for all domain errors raised by the library. */
struct StabError : std::runtime_error {
    explicit StabError(const std::string& msg) : std::runtime_error(msg) {}
};

/** Phase of the zero vector requested. */
struct DegeneratePhase : StabError {
    explicit DegeneratePhase(const std::string& m = "phase of zero charge")
        : StabError(m) {}
};

/** A subquotient charge left the allowed half-plane (or vanished). */
struct InvalidStabilityFunction : StabError {
    explicit InvalidStabilityFunction(const std::string& m) : StabError(m) {}
};

/** Zero or otherwise unusable charge value. */
struct InvalidCharge : StabError {
    explicit InvalidCharge(const std::string& m) : StabError(m) {}
};

/** Chart coordinate sits on the logarithm branch cut. */
struct BranchCut : StabError {
    explicit BranchCut(const std::string& m) : StabError(m) {}
};

/** Point is outside the region required by the operation. */
struct NotInRegion : StabError {
    explicit NotInRegion(const std::string& m) : StabError(m) {}
};

/** Internally inconsistent stability record. */
struct InvalidStability : StabError {
    explicit InvalidStability(const std::string& m) : StabError(m) {}
};

/** Heart is not a rotation of the standard heart (out of algorithmic scope). */
struct UnsupportedHeart : StabError {
    explicit UnsupportedHeart(const std::string& m) : StabError(m) {}
};

/** Semiorthogonality violated. */
struct NotOrthogonal : StabError {
    explicit NotOrthogonal(const std::string& m) : StabError(m) {}
};

/** Honest refusal: the question cannot be decided from the given data. */
struct Undecidable : StabError {
    explicit Undecidable(const std::string& m) : StabError(m) {}
};

/** Class decomposition rule inconsistent with the input class. */
struct InvalidDecomposition : StabError {
    explicit InvalidDecomposition(const std::string& m) : StabError(m) {}
};

/** Object kind not handled by this operation. */
struct UnsupportedObject : StabError {
    explicit UnsupportedObject(const std::string& m) : StabError(m) {}
};

/** Operation requires genus(Y) >= 1. */
struct PreconditionGenus : StabError {
    explicit PreconditionGenus(const std::string& m) : StabError(m) {}
};

/** Result would depend on a coefficient kept as a free symbol. */
struct SymbolicCoefficient : StabError {
    explicit SymbolicCoefficient(const std::string& m) : StabError(m) {}
};

/** Exact value requires resolving a pending irrational rotation. */
struct SymbolicRotation : StabError {
    explicit SymbolicRotation(const std::string& m) : StabError(m) {}
};

} // namespace stab

#endif
