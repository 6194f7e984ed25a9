#include "chebcert/multi_index.hpp"

namespace chebcert {

namespace {
void enumerate(std::size_t n, int budget, MultiIndex& cur, std::size_t pos,
               std::vector<MultiIndex>& out) {
    if (pos == n) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= budget; ++e) {
        cur[pos] = e;
        enumerate(n, budget - e, cur, pos + 1, out);
    }
    cur[pos] = 0;
}
}  // namespace

std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int d) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    enumerate(n, d, cur, 0, out);
    return out;
}

}  // namespace chebcert
