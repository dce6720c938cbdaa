// Shared generators for the unit and acceptance suites.

#pragma once

#include <random>

#include "qcorbit/cocycle.hpp"

namespace qcorbit::testing {

inline Matrix near_identity_sl(Rng& rng, int d, double spread) {
    Matrix g = random_gaussian(rng, d);
    Matrix t = g - (g.trace() / d) * Matrix::Identity(d, d);
    return (spread * t / operator_norm(t)).exp();
}

inline Cocycle random_cocycle(Rng& rng, const Sft& sft, int d, int k, double spread,
                              GroupTag tag = GroupTag::SL) {
    std::map<Word, Matrix> table;
    for (const Word& w : admissible_words(sft, 2 * k + 1)) {
        Matrix m = near_identity_sl(rng, d, spread);
        if (tag == GroupTag::GL) {
            std::uniform_real_distribution<double> scale(0.6, 1.7);
            m *= scale(rng);
        }
        table.emplace(w, m);
    }
    return Cocycle(sft, d, tag, k, table);
}

inline SymbolicPoint random_point(Rng& rng, const Sft& sft, int max_len = 5) {
    std::uniform_int_distribution<int> len(1, max_len);
    auto rand_adm_word = [&] {
        for (;;) {
            int n = len(rng);
            std::vector<Symbol> ls;
            std::uniform_int_distribution<int> letter(1, sft.alphabet_size());
            for (int i = 0; i < n; ++i) ls.push_back(letter(rng));
            Word w(ls);
            if (sft.admissible_cycle(w)) return w;
        }
    };
    for (;;) {
        SymbolicPoint x(rand_adm_word(), rand_adm_word(), rand_adm_word(),
                        std::uniform_int_distribution<int>(-3, 3)(rng));
        if (is_admissible(sft, x)) return x;
    }
}

inline double rel_err(const Matrix& got, const Matrix& want) {
    return operator_norm(got - want) / std::max(1.0, operator_norm(want));
}

}  // namespace qcorbit::testing
