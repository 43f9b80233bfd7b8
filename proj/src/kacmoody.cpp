#include "lscrystal/kacmoody.hpp"

namespace lscrystal {

namespace {

void require_index(int i) {
    if (i != 1 && i != 2) throw Error(Errc::bad_config, "simple-root index must be 1 or 2");
}

}  // namespace

Weight simple_root(const CartanData& cartan, int i) {
    require_index(i);
    if (i == 1) return {Integer(2), Integer(-cartan.b)};
    return {Integer(-cartan.a), Integer(2)};
}

Weight reflect(const CartanData& cartan, int i, const Weight& w) {
    require_index(i);
    return w - pairing(w, i) * simple_root(cartan, i);
}

std::vector<int> xm_word(long m) {
    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(m < 0 ? -m : m));
    if (m >= 0) {
        // x_{2k} = (r2 r1)^k, x_{2k+1} = r1 (r2 r1)^k
        if (m % 2 == 1) word.push_back(1);
        for (long j = 0; j < m / 2; ++j) {
            word.push_back(2);
            word.push_back(1);
        }
    } else {
        // x_{2k} = (r1 r2)^{-k}, x_{2k-1} = r2 (r1 r2)^{-k} for k <= 0
        if (m % 2 != 0) word.push_back(2);
        for (long j = 0; j < (-m) / 2; ++j) {
            word.push_back(1);
            word.push_back(2);
        }
    }
    return word;
}

Weight act_xm_by_word(const CartanData& cartan, long m, const Weight& lambda) {
    const auto word = xm_word(m);
    Weight w = lambda;
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = reflect(cartan, *it, w);
    return w;
}

}  // namespace lscrystal
