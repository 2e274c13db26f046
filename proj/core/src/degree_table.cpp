#include "loco/degree_table.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace loco {

DegreeTable::DegreeTable(DegreeBox box, int lowest_index, int highest_index)
    : box_(std::move(box)), lowest_(lowest_index), highest_(highest_index) {
    if (highest_ < lowest_) highest_ = lowest_ - 1;
    cells_.assign(static_cast<std::size_t>(highest_ - lowest_ + 1), std::vector<std::size_t>(box_.size(), 0));
}

std::size_t DegreeTable::offset(const Multidegree& a) const {
    if (!box_.contains(a)) throw std::out_of_range("degree " + degree_string(a) + " outside the table box");
    std::size_t off = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        off = off * static_cast<std::size_t>(box_.hi()[i] - box_.lo()[i] + 1) +
              static_cast<std::size_t>(a[i] - box_.lo()[i]);
    return off;
}

std::size_t DegreeTable::at(int i, const Multidegree& a) const {
    std::size_t off = offset(a);
    if (i < lowest_ || i > highest_) return 0;
    return cells_[static_cast<std::size_t>(i - lowest_)][off];
}

void DegreeTable::set(int i, const Multidegree& a, std::size_t dim) {
    if (i < lowest_ || i > highest_) throw std::out_of_range("index " + std::to_string(i) + " outside the table");
    cells_[static_cast<std::size_t>(i - lowest_)][offset(a)] = dim;
}

std::vector<DegreeTable::Cell> DegreeTable::nonzero_cells() const {
    std::vector<Cell> out;
    auto points = box_.points();
    for (int i = lowest_; i <= highest_; ++i)
        for (std::size_t k = 0; k < points.size(); ++k) {
            std::size_t d = cells_[static_cast<std::size_t>(i - lowest_)][k];
            if (d) out.push_back({i, points[k], d});
        }
    return out;
}

bool DegreeTable::index_vanishes(int i) const {
    if (i < lowest_ || i > highest_) return true;
    for (auto d : cells_[static_cast<std::size_t>(i - lowest_)])
        if (d) return false;
    return true;
}

std::optional<int> DegreeTable::first_nonzero_index() const {
    for (int i = lowest_; i <= highest_; ++i)
        if (!index_vanishes(i)) return i;
    return std::nullopt;
}

std::optional<int> DegreeTable::last_nonzero_index() const {
    for (int i = highest_; i >= lowest_; --i)
        if (!index_vanishes(i)) return i;
    return std::nullopt;
}

std::optional<DegreeTable::Cell> DegreeTable::first_difference(const DegreeTable& other) const {
    auto points = box_.points();
    if (!(box_ == other.box_)) return Cell{lowest_, points.front(), at(lowest_, points.front())};
    int lo = std::min(lowest_, other.lowest_), hi = std::max(highest_, other.highest_);
    for (int i = lo; i <= hi; ++i)
        for (const auto& a : points)
            if (at(i, a) != other.at(i, a)) return Cell{i, a, at(i, a)};
    return std::nullopt;
}

std::string DegreeTable::to_json() const {
    nlohmann::ordered_json j;
    j["box"] = {{"lo", box_.lo()}, {"hi", box_.hi()}};
    j["indices"] = {lowest_, highest_};
    nlohmann::ordered_json table = nlohmann::ordered_json::object();
    for (int i = lowest_; i <= highest_; ++i) table[std::to_string(i)] = nlohmann::ordered_json::object();
    for (const auto& c : nonzero_cells()) table[std::to_string(c.index)][degree_string(c.degree)] = c.dim;
    j["table"] = std::move(table);
    return j.dump();
}

std::string DegreeTable::to_csv() const {
    std::ostringstream out;
    out << "i,a,dim\n";
    for (const auto& c : nonzero_cells()) {
        out << c.index << ",[";
        for (std::size_t k = 0; k < c.degree.size(); ++k) out << (k ? ";" : "") << c.degree[k];
        out << "]," << c.dim << "\n";
    }
    return out.str();
}

namespace {
std::atomic<unsigned> g_default_threads{1};
}

void set_default_threads(unsigned threads) {
    g_default_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
}

unsigned default_threads() { return g_default_threads; }

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = default_threads();
    if (threads <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t k = next++;
            if (k >= count) return;
            try {
                fn(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace loco
