#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace loco {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LOCO_DEFINE_ERROR(Name)                   \
    class Name : public Error {                   \
    public:                                       \
        explicit Name(const std::string& what)    \
            : Error(#Name ": " + what) {}         \
    }

LOCO_DEFINE_ERROR(CompositionNotZero);
LOCO_DEFINE_ERROR(DimensionMismatch);
LOCO_DEFINE_ERROR(NegativeExponent);
LOCO_DEFINE_ERROR(InhomogeneousEntry);
LOCO_DEFINE_ERROR(InfinitePiece);
LOCO_DEFINE_ERROR(EmptyIdeal);
LOCO_DEFINE_ERROR(RadicalsDiffer);
LOCO_DEFINE_ERROR(TooManyGenerators);
LOCO_DEFINE_ERROR(LiftFailed);
LOCO_DEFINE_ERROR(OutsideClass);
LOCO_DEFINE_ERROR(NotAGroup);
LOCO_DEFINE_ERROR(NoFunctionalSupplied);
LOCO_DEFINE_ERROR(InvalidAlgebra);

#undef LOCO_DEFINE_ERROR

/// Raised when a colimit has not settled inside the observation window.
/// Carries the offending multidegrees (and cohomological index) so callers
/// can report them.
class NotStabilized : public Error {
public:
    struct Cell {
        int index;
        std::vector<int> degree;
    };

    NotStabilized(const std::string& what, std::vector<Cell> cells)
        : Error("NotStabilized: " + what), cells_(std::move(cells)) {}

    const std::vector<Cell>& cells() const { return cells_; }

private:
    std::vector<Cell> cells_;
};

}  // namespace loco
