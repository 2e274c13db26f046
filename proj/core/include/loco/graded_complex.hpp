#pragma once

#include <cstddef>
#include <vector>

#include "loco/exact_matrix.hpp"
#include "loco/graded_pieces.hpp"

namespace loco {

/// Cochain complex of degreewise-finite modules over a monomial quotient,
/// indexed by a contiguous range of cohomological indices
/// [lowest, lowest + modules.size()). differentials[k] maps modules[k] to
/// modules[k+1].
class GradedComplex {
public:
    GradedComplex(int lowest_index, std::vector<ModuleDescriptor> modules, std::vector<PolyMatrix> differentials);

    int lowest_index() const { return lowest_; }
    int highest_index() const { return lowest_ + static_cast<int>(modules_.size()) - 1; }
    bool has_index(int i) const { return i >= lowest_ && i <= highest_index(); }
    const ModuleDescriptor& module(int i) const;
    const PolyMatrix& differential(int i) const;  // from index i to i + 1
    const std::vector<ModuleDescriptor>& modules() const { return modules_; }
    const RingSpec& ring() const { return modules_.front().ring(); }

    std::size_t dimension(int i, const Multidegree& a) const;
    std::vector<std::size_t> dimensions(const Multidegree& a) const;

    /// Matrix of d: C^i -> C^(i+1) in degree a. Outside the index range the
    /// zero map between the neighbouring pieces (possibly empty) is returned.
    ExactMatrix differential_matrix(int i, const Multidegree& a) const;

    /// dim H^i in degree a.
    std::size_t cohomology_dimension(int i, const Multidegree& a) const;
    std::vector<std::size_t> cohomology_dimensions(const Multidegree& a) const;

    /// d^2 = 0 at every index in degree a.
    bool is_complex_at(const Multidegree& a) const;

private:
    int lowest_;
    std::vector<ModuleDescriptor> modules_;
    std::vector<PolyMatrix> differentials_;
};

/// Degreewise chain map between two complexes over the same index range
/// (maps[k] acts on index source.lowest_index() + k).
struct ChainMap {
    std::vector<PolyMatrix> components;
};

/// Matrix of the chain map at index i in degree a.
ExactMatrix chain_map_matrix(const GradedComplex& source, const GradedComplex& target, const ChainMap& f, int i,
                             const Multidegree& a);

/// Rank of the map induced on H^i in degree a.
std::size_t induced_cohomology_rank(const GradedComplex& source, const GradedComplex& target, const ChainMap& f,
                                    int i, const Multidegree& a);

/// True iff f is a chain map in degree a (f d = d f at every index).
bool commutes_at(const GradedComplex& source, const GradedComplex& target, const ChainMap& f, const Multidegree& a);

}  // namespace loco
