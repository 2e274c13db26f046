#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "loco/graded_pieces.hpp"

namespace loco {

/// Dimensions indexed by (cohomological index, multidegree) over a fixed box.
/// A 0 means "0 inside this box": nothing is claimed about degrees outside it.
class DegreeTable {
public:
    struct Cell {
        int index;
        Multidegree degree;
        std::size_t dim;

        bool operator==(const Cell&) const = default;
    };

    DegreeTable(DegreeBox box, int lowest_index, int highest_index);

    const DegreeBox& box() const { return box_; }
    int lowest_index() const { return lowest_; }
    int highest_index() const { return highest_; }

    /// 0 for indices outside the table's range. Throws std::out_of_range for
    /// degrees outside the box.
    std::size_t at(int i, const Multidegree& a) const;
    void set(int i, const Multidegree& a, std::size_t dim);

    std::vector<Cell> nonzero_cells() const;
    bool index_vanishes(int i) const;
    /// Least index with a nonzero cell.
    std::optional<int> first_nonzero_index() const;
    std::optional<int> last_nonzero_index() const;

    /// First cell (index-major, then box order) where the tables disagree.
    /// Tables over different boxes always differ at their first cell.
    std::optional<Cell> first_difference(const DegreeTable& other) const;
    bool operator==(const DegreeTable& other) const { return !first_difference(other).has_value(); }

    /// {"box": {"lo": [...], "hi": [...]}, "indices": [lo, hi],
    ///  "table": {"i": {"[a1,...,an]": dim}}} listing nonzero cells only.
    std::string to_json() const;
    /// Header "i,a,dim"; a is written as "[a1;...;an]"; nonzero cells only.
    std::string to_csv() const;

private:
    std::size_t offset(const Multidegree& a) const;

    DegreeBox box_;
    int lowest_;
    int highest_;
    std::vector<std::vector<std::size_t>> cells_;
};

/// Runs fn(k) for k in [0, count) on up to `threads` workers (0 = use the
/// process default). Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

void set_default_threads(unsigned threads);
unsigned default_threads();

}  // namespace loco
