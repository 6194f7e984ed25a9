#ifndef CHEBCERT_MULTI_INDEX_HPP
#define CHEBCERT_MULTI_INDEX_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace chebcert {

// Exponent/degree vector in N_0^n.  Ordered lexicographically so that
// containers iterate deterministically.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : exp_(n, 0) {}
    explicit MultiIndex(std::vector<int> e) : exp_(std::move(e)) {}
    MultiIndex(std::initializer_list<int> e) : exp_(e) {}

    std::size_t size() const { return exp_.size(); }
    int operator[](std::size_t i) const { return exp_[i]; }
    int& operator[](std::size_t i) { return exp_[i]; }

    const std::vector<int>& exponents() const { return exp_; }

    // |alpha|
    int total_degree() const { return std::accumulate(exp_.begin(), exp_.end(), 0); }

    // omega(alpha): number of nonzero entries
    int support_size() const {
        int c = 0;
        for (int e : exp_) c += (e != 0);
        return c;
    }

    bool is_zero() const {
        for (int e : exp_) if (e != 0) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        MultiIndex r(*this);
        for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] += o.exp_[i];
        return r;
    }

    auto operator<=>(const MultiIndex&) const = default;

    auto begin() const { return exp_.begin(); }
    auto end() const { return exp_.end(); }

private:
    std::vector<int> exp_;
};

// All alpha in N_0^n with |alpha| <= d, in lexicographic order.
std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int d);

}  // namespace chebcert

#endif
