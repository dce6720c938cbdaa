// Dominated-splitting detection through finite-time singular-value gaps,
// periodic-spectrum scans (hyperbolicity / i-ellipticity), the generic
// hyperbolicity census, and the two reference depth-1 example tables.

#pragma once

#include <complex>

#include "qcorbit/cocycle.hpp"

namespace qcorbit {

struct DominationReport {
    int index = 1;      // i in 1..d-1
    int m_tested = 0;   // largest m examined
    int m_found = -1;   // smallest m with a uniform gap, -1 when none
    std::vector<double> worst_ratio;  // per m = 1..m_tested, raw
};

// Worst sigma_{i+1}/sigma_i over all length-m products with full admissible
// context.  The singular-value gap is an external criterion, not part of the
// source material's definitions; reports label it as such.
inline std::pair<bool, double> m_domination_test(const Cocycle& a, int index, int m,
                                                 long long word_cap = 2'000'000) {
    if (index < 1 || index >= a.dim()) throw Error(ErrorKind::BadInput, "need 1 <= i < d");
    if (m < 1) throw Error(ErrorKind::BadInput, "need m >= 1");
    const int k = a.depth();
    double worst = 0.0;
    // contexts: admissible words of length m + 2k; the product runs over the
    // m inner positions
    for (const Word& w : admissible_words(a.sft(), m + 2 * k, word_cap)) {
        Matrix p = Matrix::Identity(a.dim(), a.dim());
        for (int i = 0; i < m; ++i) p = a.value(w.subword(i, 2 * k + 1)) * p;
        Vector sv = singular_values(p);
        worst = std::max(worst, sv(index) / sv(index - 1));
    }
    return {worst <= 0.5, worst};
}

inline DominationReport domination_scan(const Cocycle& a, int index, int m_max,
                                        long long word_cap = 2'000'000) {
    DominationReport rep;
    rep.index = index;
    rep.m_tested = m_max;
    for (int m = 1; m <= m_max; ++m) {
        auto [ok, ratio] = m_domination_test(a, index, m, word_cap);
        rep.worst_ratio.push_back(ratio);
        if (ok && rep.m_found < 0) rep.m_found = m;
    }
    return rep;
}

struct PeriodicSpectrumRow {
    Word word{1};
    std::vector<double> moduli;  // sorted ascending
    bool hyperbolic = false;
    std::vector<bool> i_elliptic;  // flag per i = 1..d-1
    double witness = 0.0;          // h_w
};

struct SpectrumReport {
    int max_length = 0;
    std::vector<PeriodicSpectrumRow> rows;  // one per primitive necklace

    long long count_hyperbolic() const {
        long long n = 0;
        for (const auto& r : rows) n += r.hyperbolic ? 1 : 0;
        return n;
    }
};

namespace detail {

inline bool is_primitive(const Word& w) {
    for (int p = 1; p < w.size(); ++p) {
        if (w.size() % p != 0) continue;
        bool periodic = true;
        for (int i = p; i < w.size() && periodic; ++i) periodic = w[i] == w[i - p];
        if (periodic) return false;
    }
    return true;
}

inline bool is_lex_min_rotation(const Word& w) {
    std::vector<Symbol> dbl(w.letters());
    dbl.insert(dbl.end(), w.letters().begin(), w.letters().end());
    for (int r = 1; r < w.size(); ++r) {
        bool less = std::lexicographical_compare(dbl.begin() + r, dbl.begin() + r + w.size(),
                                                 w.letters().begin(), w.letters().end());
        if (less) return false;
    }
    return true;
}

inline PeriodicSpectrumRow classify_period_product(const Matrix& p, const Word& w,
                                                   const ToleranceConfig& cfg) {
    PeriodicSpectrumRow row;
    row.word = w;
    ComplexVector lam = eigenvalues(p);
    const int d = static_cast<int>(p.rows());
    std::vector<std::complex<double>> sorted(lam.data(), lam.data() + d);
    std::sort(sorted.begin(), sorted.end(),
              [](auto a, auto b) { return std::abs(a) < std::abs(b); });
    for (const auto& l : sorted) row.moduli.push_back(std::abs(l));
    row.hyperbolic = true;
    for (double r : row.moduli)
        row.hyperbolic &= r < 1.0 - cfg.spectral_tol || r > 1.0 + cfg.spectral_tol;
    std::complex<double> prod(1.0, 0.0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) prod *= sorted[static_cast<size_t>(i)] * sorted[static_cast<size_t>(j)] - 1.0;
    row.witness = prod.real();
    for (int i = 1; i < d; ++i) {
        const auto& a = sorted[static_cast<size_t>(i - 1)];
        const auto& b = sorted[static_cast<size_t>(i)];
        bool conj_pair = std::abs(a - std::conj(b)) < 1e-9 * std::max(1.0, std::abs(a)) &&
                         std::abs(a.imag()) > cfg.spectral_tol;
        bool isolated = true;
        if (i - 2 >= 0)
            isolated &= row.moduli[static_cast<size_t>(i - 2)] <
                        row.moduli[static_cast<size_t>(i - 1)] * (1.0 - cfg.spectral_tol);
        if (i + 1 < d)
            isolated &= row.moduli[static_cast<size_t>(i)] * (1.0 + cfg.spectral_tol) <
                        row.moduli[static_cast<size_t>(i + 1)];
        row.i_elliptic.push_back(conj_pair && isolated);
    }
    return row;
}

}  // namespace detail

// Period products over all primitive admissible necklaces (one lex-min
// representative per rotation class; moduli are conjugacy invariants).
inline SpectrumReport periodic_spectrum_scan(const Cocycle& a, int max_length,
                                             long long word_cap = 2'000'000) {
    SpectrumReport rep;
    rep.max_length = max_length;
    long long seen = 0;
    for (int len = 1; len <= max_length; ++len) {
        for (const Word& w : admissible_words(a.sft(), len, word_cap)) {
            if (!a.sft().allows(w.back(), w.front())) continue;
            if (!detail::is_primitive(w) || !detail::is_lex_min_rotation(w)) continue;
            if (++seen > word_cap)
                throw Error(ErrorKind::EnumerationBudget, "periodic scan word cap");
            SymbolicPoint p = periodic_point(w);
            Matrix prod = product(a, p, len);
            rep.rows.push_back(detail::classify_period_product(prod, w, a.tolerances()));
        }
    }
    return rep;
}

struct CensusResult {
    long long tuples = 0;
    long long all_hyperbolic = 0;
    long long words_checked = 0;

    double fraction() const {
        return tuples == 0 ? 0.0 : static_cast<double>(all_hyperbolic) / static_cast<double>(tuples);
    }
};

// Fraction of seeded random m-tuples whose length <= Lmax semigroup products
// are all hyperbolic (checked through the h_w witness with an eigenvalue
// fallback).  Gaussian entries, determinant sign fix, |det|^{-1/d} scaling.
inline CensusResult hyperbolicity_census(uint64_t seed, long long tuples, int m, int max_length,
                                         int d, const ToleranceConfig& cfg = {}) {
    Rng rng(seed);
    CensusResult res;
    res.tuples = tuples;
    // all words up to max_length, one representative per rotation class
    // (conjugate products share spectra)
    std::vector<std::vector<int>> words;
    {
        Sft full = Sft::full(m);
        for (int len = 1; len <= max_length; ++len)
            for (const Word& w : admissible_words(full, len))
                if (detail::is_lex_min_rotation(w)) {
                    std::vector<int> idx;
                    for (int i = 0; i < w.size(); ++i) idx.push_back(w[i] - 1);
                    words.push_back(idx);
                }
    }
    for (long long s = 0; s < tuples; ++s) {
        std::vector<Matrix> tuple;
        for (int i = 0; i < m; ++i) tuple.push_back(random_sl(rng, d));
        bool all_hyp = true;
        for (const auto& w : words) {
            Matrix p = Matrix::Identity(d, d);
            for (int letter : w) p = tuple[static_cast<size_t>(letter)] * p;
            ++res.words_checked;
            if (std::abs(hyperbolicity_witness(p)) <= cfg.spectral_tol || !is_hyperbolic(p, cfg)) {
                all_hyp = false;
                break;
            }
        }
        if (all_hyp) ++res.all_hyperbolic;
    }
    return res;
}

// Depth-1 table over the full 2-shift: the uniformly hyperbolic example
// whose letter products all land in the positive semigroup of H1, H2.
inline Cocycle example_fig2(const Matrix& h1, const Matrix& h2, const ToleranceConfig& cfg = {}) {
    const int d = static_cast<int>(h1.rows());
    std::map<Word, Matrix> t;
    t.emplace(Word{1, 1, 1}, h1);
    t.emplace(Word{2, 2, 2}, h1);
    t.emplace(Word{1, 2, 1}, h1);
    t.emplace(Word{2, 2, 1}, h2);
    t.emplace(Word{2, 1, 1}, inverse(h1, cfg));
    t.emplace(Word{1, 2, 2}, inverse(h2, cfg));
    t.emplace(Word{1, 1, 2}, h1 * h1);
    t.emplace(Word{2, 1, 2}, h2 * h2);
    return Cocycle(Sft::full(2), d, GroupTag::SL, 1, t, cfg);
}

// Depth-1 table over the full 2-shift realizing arbitrary products of X, Y
// along transitions; W and Z are free slots.
inline Cocycle example_fig3(const Matrix& x, const Matrix& y, const Matrix& w, const Matrix& z,
                            const ToleranceConfig& cfg = {}) {
    const int d = static_cast<int>(x.rows());
    std::map<Word, Matrix> t;
    t.emplace(Word{1, 1, 1}, inverse(x, cfg));
    t.emplace(Word{1, 1, 2}, x);
    t.emplace(Word{1, 2, 2}, x);
    t.emplace(Word{2, 2, 2}, inverse(y, cfg));
    t.emplace(Word{2, 2, 1}, y * y);
    t.emplace(Word{2, 1, 1}, Matrix::Identity(d, d));
    t.emplace(Word{1, 2, 1}, w);
    t.emplace(Word{2, 1, 2}, z);
    return Cocycle(Sft::full(2), d, GroupTag::SL, 1, t, cfg);
}

}  // namespace qcorbit
