#include "loco/graded_complex.hpp"

#include <stdexcept>

#include "loco/errors.hpp"

namespace loco {

GradedComplex::GradedComplex(int lowest_index, std::vector<ModuleDescriptor> modules,
                             std::vector<PolyMatrix> differentials)
    : lowest_(lowest_index), modules_(std::move(modules)), differentials_(std::move(differentials)) {
    if (modules_.empty()) throw std::invalid_argument("complex needs at least one module");
    if (differentials_.size() + 1 != modules_.size())
        throw std::invalid_argument("complex needs one differential per adjacent pair of modules");
    for (std::size_t k = 0; k < differentials_.size(); ++k) {
        const auto& d = differentials_[k];
        if (d.cols != modules_[k].summand_count() || d.rows != modules_[k + 1].summand_count())
            throw DimensionMismatch("differential " + std::to_string(k) + " has the wrong shape");
    }
}

const ModuleDescriptor& GradedComplex::module(int i) const {
    if (!has_index(i)) throw std::out_of_range("no module at index " + std::to_string(i));
    return modules_[static_cast<std::size_t>(i - lowest_)];
}

const PolyMatrix& GradedComplex::differential(int i) const {
    if (!has_index(i) || !has_index(i + 1)) throw std::out_of_range("no differential at index " + std::to_string(i));
    return differentials_[static_cast<std::size_t>(i - lowest_)];
}

std::size_t GradedComplex::dimension(int i, const Multidegree& a) const {
    return has_index(i) ? piece_dimension(module(i), a) : 0;
}

std::vector<std::size_t> GradedComplex::dimensions(const Multidegree& a) const {
    std::vector<std::size_t> out;
    for (int i = lowest_; i <= highest_index(); ++i) out.push_back(dimension(i, a));
    return out;
}

ExactMatrix GradedComplex::differential_matrix(int i, const Multidegree& a) const {
    if (has_index(i) && has_index(i + 1)) return map_matrix(module(i), module(i + 1), differential(i), a);
    return ExactMatrix(ring().field, dimension(i + 1, a), dimension(i, a));
}

std::size_t GradedComplex::cohomology_dimension(int i, const Multidegree& a) const {
    if (!has_index(i)) return 0;
    return homology_dim(differential_matrix(i - 1, a), differential_matrix(i, a));
}

std::vector<std::size_t> GradedComplex::cohomology_dimensions(const Multidegree& a) const {
    // One rank per differential; d^2 = 0 is assumed here (see is_complex_at).
    std::vector<std::size_t> dims = dimensions(a);
    std::vector<std::size_t> ranks;  // ranks[k] = rank of d from index lowest+k
    for (int i = lowest_; i < highest_index(); ++i) ranks.push_back(rank(differential_matrix(i, a)));
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        std::size_t r_out = k < ranks.size() ? ranks[k] : 0;
        std::size_t r_in = k > 0 ? ranks[k - 1] : 0;
        out.push_back(dims[k] - r_out - r_in);
    }
    return out;
}

bool GradedComplex::is_complex_at(const Multidegree& a) const {
    for (int i = lowest_; i + 2 <= highest_index(); ++i)
        if (!(differential_matrix(i + 1, a) * differential_matrix(i, a)).is_zero()) return false;
    return true;
}

ExactMatrix chain_map_matrix(const GradedComplex& source, const GradedComplex& target, const ChainMap& f, int i,
                             const Multidegree& a) {
    if (!source.has_index(i) || !target.has_index(i))
        return ExactMatrix(source.ring().field, target.dimension(i, a), source.dimension(i, a));
    auto k = static_cast<std::size_t>(i - source.lowest_index());
    if (k >= f.components.size()) throw std::out_of_range("chain map has no component at index " + std::to_string(i));
    return map_matrix(source.module(i), target.module(i), f.components[k], a);
}

std::size_t induced_cohomology_rank(const GradedComplex& source, const GradedComplex& target, const ChainMap& f,
                                    int i, const Multidegree& a) {
    return induced_map_rank(source.differential_matrix(i, a), chain_map_matrix(source, target, f, i, a),
                            target.differential_matrix(i - 1, a));
}

bool commutes_at(const GradedComplex& source, const GradedComplex& target, const ChainMap& f, const Multidegree& a) {
    for (int i = source.lowest_index(); i < source.highest_index(); ++i) {
        ExactMatrix lhs = target.differential_matrix(i, a) * chain_map_matrix(source, target, f, i, a);
        ExactMatrix rhs = chain_map_matrix(source, target, f, i + 1, a) * source.differential_matrix(i, a);
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace loco
