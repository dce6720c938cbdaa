// Locally constant cocycles over an SFT: evaluation, orbit products,
// transition products, C0 / Hölder distances, renormalization, and
// quasi-conformality traces.
//
// Representation: a total table at a small base depth plus a sparse override
// map at a (possibly much larger) working depth.  Deep-cylinder modification
// is the library's replacement for pointwise redefinition, so overrides are a
// first-class part of the type rather than a materialized refinement; all
// metric operations stay exact by accounting for which windows an override
// actually shadows.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qcorbit/matrix.hpp"
#include "qcorbit/symbolic.hpp"

namespace qcorbit {

enum class GroupTag { SL, GL };

struct HolderParams {
    double alpha = 1.0;
    double eta = 1.0;  // locality radius
};

namespace detail {

inline uint64_t pow_u64(uint64_t b, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (uint64_t(1) << 62) / (b ? b : 1))
            throw Error(ErrorKind::EnumerationBudget, "window code space too large");
        r *= b;
    }
    return r;
}

inline uint64_t encode_window(const Word& w, int m) {
    uint64_t code = 0;
    for (int i = w.size() - 1; i >= 0; --i) {
        code = code * static_cast<uint64_t>(m) + static_cast<uint64_t>(w[i] - 1);
    }
    return code;
}

inline Word decode_window(uint64_t code, int len, int m) {
    std::vector<Symbol> ls(static_cast<size_t>(len));
    for (int i = 0; i < len; ++i) {
        ls[static_cast<size_t>(i)] = static_cast<Symbol>(code % static_cast<uint64_t>(m)) + 1;
        code /= static_cast<uint64_t>(m);
    }
    return Word(std::move(ls));
}

// number of admissible words of length 2K+1 whose centered 2k+1 letters are w,
// saturating at 2^62
inline uint64_t admissible_extension_count(const Sft& sft, const Word& w, int k, int K) {
    const int m = sft.alphabet_size();
    const int steps = K - k;
    if (steps < 0) throw Error(ErrorKind::BadInput, "extension target shallower than word");
    if (steps == 0) return 1;
    const uint64_t cap = uint64_t(1) << 62;
    auto walk_counts = [&](Symbol seed, bool forward) {
        std::vector<uint64_t> cur(static_cast<size_t>(m), 0);
        cur[static_cast<size_t>(seed - 1)] = 1;
        for (int s = 0; s < steps; ++s) {
            std::vector<uint64_t> nxt(static_cast<size_t>(m), 0);
            for (int a = 1; a <= m; ++a) {
                if (!cur[static_cast<size_t>(a - 1)]) continue;
                for (int b = 1; b <= m; ++b) {
                    bool ok = forward ? sft.allows(a, b) : sft.allows(b, a);
                    if (!ok) continue;
                    uint64_t& slot = nxt[static_cast<size_t>(b - 1)];
                    uint64_t add = cur[static_cast<size_t>(a - 1)];
                    slot = (slot > cap - add) ? cap : slot + add;
                }
            }
            cur.swap(nxt);
        }
        uint64_t total = 0;
        for (uint64_t c : cur) total = (total > cap - c) ? cap : total + c;
        return total;
    };
    uint64_t left = walk_counts(w.front(), /*forward=*/false);
    uint64_t right = walk_counts(w.back(), /*forward=*/true);
    if (left != 0 && right > cap / left) return cap;
    return left * right;
}

}  // namespace detail

struct CocycleEntry {
    Word window;
    Matrix value;
};

class Cocycle {
public:
    // Total table at a single depth.  The map must cover exactly the
    // admissible windows of length 2*depth+1.
    Cocycle(Sft sft, int dim, GroupTag tag, int depth, const std::map<Word, Matrix>& table,
            ToleranceConfig cfg = {})
        : sft_(std::move(sft)), dim_(dim), tag_(tag), base_depth_(depth), depth_(depth), cfg_(cfg) {
        const int len = 2 * depth + 1;
        const uint64_t slots = detail::pow_u64(static_cast<uint64_t>(sft_.alphabet_size()), len);
        if (slots > 8'000'000)
            throw Error(ErrorKind::EnumerationBudget, "base table too large to materialize");
        base_.resize(slots);
        base_inv_.resize(slots);
        base_set_.assign(slots, 0);
        for (const auto& [w, m] : table) {
            if (w.size() != len) throw Error(ErrorKind::ShapeMismatch, "window length mismatch");
            if (!sft_.admissible(w))
                throw Error(ErrorKind::InadmissibleWord, "table window inadmissible: " + w.str());
            insert_base(w, m);
        }
        for (const Word& w : admissible_words(sft_, len))
            if (!base_set_[detail::encode_window(w, sft_.alphabet_size())])
                throw Error(ErrorKind::BadInput, "table not total: missing window " + w.str());
    }

    static Cocycle constant(Sft sft, GroupTag tag, const Matrix& m, ToleranceConfig cfg = {}) {
        std::map<Word, Matrix> table;
        for (Symbol a = 1; a <= sft.alphabet_size(); ++a) table.emplace(Word{a}, m);
        return Cocycle(std::move(sft), static_cast<int>(m.rows()), tag, 0, table, cfg);
    }

    static Cocycle identity(Sft sft, int dim, ToleranceConfig cfg = {}) {
        return constant(std::move(sft), GroupTag::SL, Matrix::Identity(dim, dim), cfg);
    }

    const Sft& sft() const { return sft_; }
    int dim() const { return dim_; }
    GroupTag group_tag() const { return tag_; }
    int depth() const { return depth_; }
    int base_depth() const { return base_depth_; }
    int window_length() const { return 2 * depth_ + 1; }
    const ToleranceConfig& tolerances() const { return cfg_; }

    const std::map<Word, Matrix>& overrides() const { return overrides_; }

    // Value on the cylinder of a window of the working length 2*depth+1.
    const Matrix& value(const Word& window) const {
        if (window.size() != window_length())
            throw Error(ErrorKind::ShapeMismatch, "expected window of length 2*depth+1");
        if (!overrides_.empty()) {
            auto it = overrides_.find(window);
            if (it != overrides_.end()) return it->second;
        }
        return base_value(center_of(window, base_depth_));
    }

    const Matrix& value_inverse(const Word& window) const {
        if (window.size() != window_length())
            throw Error(ErrorKind::ShapeMismatch, "expected window of length 2*depth+1");
        if (!overrides_.empty()) {
            auto it = override_inv_.find(window);
            if (it != override_inv_.end()) return it->second;
        }
        return base_inverse(center_of(window, base_depth_));
    }

    const Matrix& base_value(const Word& center) const {
        uint64_t code = detail::encode_window(center, sft_.alphabet_size());
        if (center.size() != 2 * base_depth_ + 1 || !base_set_[code])
            throw Error(ErrorKind::InadmissibleWord, "no table entry for " + center.str());
        return base_[code];
    }

    const Matrix& base_inverse(const Word& center) const {
        uint64_t code = detail::encode_window(center, sft_.alphabet_size());
        if (center.size() != 2 * base_depth_ + 1 || !base_set_[code])
            throw Error(ErrorKind::InadmissibleWord, "no table entry for " + center.str());
        return base_inv_[code];
    }

    Matrix evaluate(const SymbolicPoint& x) const {
        if (!is_admissible(sft_, x)) throw Error(ErrorKind::InadmissiblePoint, "point not in SFT");
        return value(x.window(-depth_, depth_));
    }

    // Same evaluation, no admissibility re-check (hot path for products).
    const Matrix& evaluate_unchecked(const SymbolicPoint& x, long long at = 0) const {
        return value(x.window(at - depth_, at + depth_));
    }
    const Matrix& evaluate_inverse_unchecked(const SymbolicPoint& x, long long at = 0) const {
        return value_inverse(x.window(at - depth_, at + depth_));
    }

    // Representation-level refinement: evaluation is unchanged.
    Cocycle with_depth(int k2) const {
        if (k2 < depth_) throw Error(ErrorKind::BadInput, "refinement must not lose depth");
        Cocycle out = *this;
        out.depth_ = k2;
        std::map<Word, Matrix> ov = std::move(out.overrides_);
        std::map<Word, Matrix> ovi = std::move(out.override_inv_);
        out.overrides_.clear();
        out.override_inv_.clear();
        for (auto& [w, m] : ov) {
            // pad override windows to the new length; the pad letters are
            // unconstrained, so the padded family enumerates all admissible
            // completions of the old cylinder
            for (const Word& padded : pad_window(w, k2)) {
                out.override_inv_[padded] = ovi.at(w);
                out.overrides_[padded] = m;
            }
        }
        return out;
    }

    // Deep-cylinder pinning: redefine the cocycle on the listed windows (all
    // of length 2*new_depth+1), keeping everything else intact.
    Cocycle with_overrides(int new_depth, const std::vector<CocycleEntry>& pins) const {
        Cocycle out = new_depth == depth_ ? *this : with_depth(new_depth);
        for (const auto& e : pins) {
            if (e.window.size() != 2 * new_depth + 1)
                throw Error(ErrorKind::ShapeMismatch, "pin window length mismatch");
            if (!sft_.admissible(e.window))
                throw Error(ErrorKind::InadmissibleWord, "pin window inadmissible");
            check_group(e.value);
            out.override_inv_[e.window] = inverse(e.value, cfg_);
            out.overrides_[e.window] = e.value;
        }
        out.sup_norm_.reset();
        out.sup_inv_norm_.reset();
        return out;
    }

    // sup over windows of the operator norm (resp. of the inverse's norm)
    double sup_norm() const {
        if (!sup_norm_) compute_sup_norms();
        return *sup_norm_;
    }
    double sup_inverse_norm() const {
        if (!sup_inv_norm_) compute_sup_norms();
        return *sup_inv_norm_;
    }

    void for_each_base_entry(const std::function<void(const Word&, const Matrix&)>& fn) const {
        for (const Word& w : admissible_words(sft_, 2 * base_depth_ + 1))
            fn(w, base_[detail::encode_window(w, sft_.alphabet_size())]);
    }

    // true when some admissible completion of `window` (to the working depth)
    // escapes every override, i.e. the base value is realized there
    bool base_realized_within(const Word& window, int k) const {
        if (overrides_.empty()) return true;
        uint64_t total = detail::admissible_extension_count(sft_, window, k, depth_);
        uint64_t shadowed = 0;
        for (const auto& [w, m] : overrides_) {
            if (compatible(window, k, w, depth_)) ++shadowed;
            if (shadowed >= total) return false;
        }
        return shadowed < total;
    }

    static bool compatible(const Word& a, int ka, const Word& b, int kb) {
        // do the centered cylinders of a (depth ka) and b (depth kb) intersect
        const Word& shallow = ka <= kb ? a : b;
        const Word& deep = ka <= kb ? b : a;
        int ks = std::min(ka, kb), kd = std::max(ka, kb);
        for (int i = 0; i < shallow.size(); ++i)
            if (shallow[i] != deep[i + (kd - ks)]) return false;
        return true;
    }

    static Word center_of(const Word& window, int k) {
        int c = window.size() / 2;
        return window.subword(c - k, 2 * k + 1);
    }

private:
    void check_group(const Matrix& m) const {
        if (m.rows() != dim_ || m.cols() != dim_)
            throw Error(ErrorKind::ShapeMismatch, "matrix dimension mismatch");
        if (tag_ == GroupTag::SL && !is_unimodular(m, cfg_))
            throw Error(ErrorKind::BadInput, "SL-tagged entry is not unimodular to det_tol");
    }

    void insert_base(const Word& w, const Matrix& m) {
        check_group(m);
        uint64_t code = detail::encode_window(w, sft_.alphabet_size());
        base_[code] = m;
        base_inv_[code] = inverse(m, cfg_);  // Singular detected at load time
        base_set_[code] = 1;
    }

    std::vector<Word> pad_window(const Word& w, int k2) const {
        int pad = k2 - (w.size() - 1) / 2;
        std::vector<Word> out;
        std::vector<Symbol> left;
        auto rec_left = [&](auto&& self, int remaining) -> void {
            if (remaining == 0) {
                Word base = w;
                for (auto it = left.begin(); it != left.end(); ++it) {
                    std::vector<Symbol> ls;
                    ls.push_back(*it);
                    ls.insert(ls.end(), base.letters().begin(), base.letters().end());
                    base = Word(std::move(ls));
                }
                for (const Word& r : right_extensions(base, pad)) out.push_back(r);
                return;
            }
            for (Symbol c = 1; c <= sft_.alphabet_size(); ++c) {
                Symbol head = left.empty() ? w.front() : left.back();
                if (!sft_.allows(c, head)) continue;
                left.push_back(c);
                self(self, remaining - 1);
                left.pop_back();
            }
        };
        rec_left(rec_left, pad);
        return out;
    }

    std::vector<Word> right_extensions(const Word& w, int pad) const {
        std::vector<Word> out;
        std::vector<Symbol> cur(w.letters());
        auto rec = [&](auto&& self, int remaining) -> void {
            if (remaining == 0) {
                out.emplace_back(cur);
                return;
            }
            for (Symbol c = 1; c <= sft_.alphabet_size(); ++c) {
                if (!sft_.allows(cur.back(), c)) continue;
                cur.push_back(c);
                self(self, remaining - 1);
                cur.pop_back();
            }
        };
        rec(rec, pad);
        return out;
    }

    void compute_sup_norms() const {
        double n = 0.0, ni = 0.0;
        for (const Word& w : admissible_words(sft_, 2 * base_depth_ + 1)) {
            if (!base_realized_within(w, base_depth_)) continue;
            uint64_t code = detail::encode_window(w, sft_.alphabet_size());
            n = std::max(n, operator_norm(base_[code]));
            ni = std::max(ni, operator_norm(base_inv_[code]));
        }
        for (const auto& [w, m] : overrides_) {
            n = std::max(n, operator_norm(m));
            ni = std::max(ni, operator_norm(override_inv_.at(w)));
        }
        sup_norm_ = n;
        sup_inv_norm_ = ni;
    }

    Sft sft_;
    int dim_;
    GroupTag tag_;
    int base_depth_;
    int depth_;
    ToleranceConfig cfg_;
    std::vector<Matrix> base_, base_inv_;
    std::vector<char> base_set_;
    std::map<Word, Matrix> overrides_, override_inv_;
    mutable std::optional<double> sup_norm_, sup_inv_norm_;
};

// --- orbit products ---------------------------------------------------------

// A_n(x); A_0 = Id, A_{-n}(x) = A(sigma^{-n} x)^{-1} ... A(sigma^{-1} x)^{-1}.
// Fixed left-multiplication order, no re-association.
inline Matrix product(const Cocycle& a, const SymbolicPoint& x, long long n) {
    if (!is_admissible(a.sft(), x)) throw Error(ErrorKind::InadmissiblePoint, "point not in SFT");
    Matrix p = Matrix::Identity(a.dim(), a.dim());
    if (n >= 0) {
        for (long long i = 0; i < n; ++i) p = a.evaluate_unchecked(x, i) * p;
    } else {
        for (long long i = -1; i >= n; --i) p = a.evaluate_inverse_unchecked(x, i) * p;
    }
    return p;
}

inline Matrix product_inverse(const Cocycle& a, const SymbolicPoint& x, long long n) {
    Matrix p = Matrix::Identity(a.dim(), a.dim());
    if (n >= 0) {
        for (long long i = 0; i < n; ++i) p = p * a.evaluate_inverse_unchecked(x, i);
    } else {
        for (long long i = -1; i >= n; --i) p = p * a.evaluate_unchecked(x, i);
    }
    return p;
}

// A_{[w>}: ordered product of table entries over the sliding windows of w,
// composed right to left.
inline Matrix transition_product(const Cocycle& a, const Word& w) {
    const int len = a.window_length();
    if (w.size() < len)
        throw Error(ErrorKind::WordTooShort, "transition word shorter than the window");
    if (!a.sft().admissible(w)) throw Error(ErrorKind::InadmissibleWord, "word " + w.str());
    Matrix p = Matrix::Identity(a.dim(), a.dim());
    for (int i = 0; i + len < w.size(); ++i) p = a.value(w.subword(i, len)) * p;
    return p;
}

// --- distances --------------------------------------------------------------

namespace detail {

struct Cell {  // one constant piece of a cocycle
    Word window;
    int k;  // centered half-width
    const Matrix* value;
};

inline void check_shapes(const Cocycle& a, const Cocycle& b) {
    if (!(a.sft() == b.sft()) || a.dim() != b.dim())
        throw Error(ErrorKind::ShapeMismatch, "cocycles live on different bundles");
}

}  // namespace detail

// Exact sup over admissible windows of ||A(x) - B(x)||.  Works directly on
// the piecewise structure: override/override, override/base and base/base
// pieces contribute only where some admissible completion realizes the pair.
inline double c0_distance(const Cocycle& a, const Cocycle& b) {
    detail::check_shapes(a, b);
    const Sft& sft = a.sft();
    const int K = std::max(a.depth(), b.depth());
    double best = 0.0;

    auto other_base_pairs = [&](const Cocycle& first, const Cocycle& second, const Word& u) {
        // pieces of `second` under the override cylinder u of `first`
        int ku = first.depth();
        if (second.base_depth() <= ku) {
            if (second.base_realized_within(u, ku))
                best = std::max(best, operator_norm(first.value(u) -
                                                    second.base_value(Cocycle::center_of(
                                                        u, second.base_depth()))));
        } else {
            for (const Word& w : admissible_words(sft, 2 * second.base_depth() + 1)) {
                if (!Cocycle::compatible(u, ku, w, second.base_depth())) continue;
                if (!second.base_realized_within(w, second.base_depth())) continue;
                best = std::max(best, operator_norm(first.value(u) - second.base_value(w)));
            }
        }
    };

    // override x override
    for (const auto& [u, vu] : a.overrides())
        for (const auto& [w, vw] : b.overrides())
            if (Cocycle::compatible(u, a.depth(), w, b.depth()))
                best = std::max(best, operator_norm(vu - vw));
    // override x base (both directions); the base side is realized unless the
    // other side's overrides shadow every completion
    for (const auto& [u, vu] : a.overrides()) {
        if (!b.overrides().empty()) {
            uint64_t total = detail::admissible_extension_count(sft, u, a.depth(), K);
            uint64_t shadowed = 0;
            for (const auto& [w, vw] : b.overrides())
                if (Cocycle::compatible(u, a.depth(), w, b.depth())) ++shadowed;
            if (shadowed >= total) continue;
        }
        other_base_pairs(a, b, u);
    }
    for (const auto& [u, vu] : b.overrides()) {
        if (!a.overrides().empty()) {
            uint64_t total = detail::admissible_extension_count(sft, u, b.depth(), K);
            uint64_t shadowed = 0;
            for (const auto& [w, vw] : a.overrides())
                if (Cocycle::compatible(u, b.depth(), w, a.depth())) ++shadowed;
            if (shadowed >= total) continue;
        }
        other_base_pairs(b, a, u);
    }
    // base x base on the common base refinement
    const int kb = std::max(a.base_depth(), b.base_depth());
    for (const Word& w : admissible_words(sft, 2 * kb + 1)) {
        uint64_t total = detail::admissible_extension_count(sft, w, kb, K);
        uint64_t shadowed = 0;
        for (const auto& [u, vu] : a.overrides())
            if (Cocycle::compatible(w, kb, u, a.depth())) shadowed += detail::admissible_extension_count(sft, u, a.depth(), K);
        for (const auto& [u, vu] : b.overrides())
            if (Cocycle::compatible(w, kb, u, b.depth())) {
                uint64_t cnt = detail::admissible_extension_count(sft, u, b.depth(), K);
                // joint shadowing: subtract completions already counted via a
                for (const auto& [ua, va] : a.overrides())
                    if (Cocycle::compatible(u, b.depth(), ua, a.depth()))
                        cnt -= detail::admissible_extension_count(
                            sft, a.depth() >= b.depth() ? ua : u,
                            std::max(a.depth(), b.depth()), K);
                shadowed += cnt;
            }
        if (shadowed >= total) continue;
        best = std::max(best, operator_norm(a.base_value(Cocycle::center_of(w, a.base_depth())) -
                                            b.base_value(Cocycle::center_of(w, b.base_depth()))));
    }
    return best;
}

// Flattened list of (window, value) pairs at a common working depth; the
// Hölder seminorm needs genuine window pairs, so this is gated by a cap.
inline std::vector<CocycleEntry> flatten_entries(const Cocycle& a, int K,
                                                 long long cap = 300'000) {
    std::vector<CocycleEntry> out;
    std::vector<Word> ws = admissible_words(a.sft(), 2 * K + 1, cap);
    Cocycle deep = a.depth() == K ? a : a.with_depth(K);
    out.reserve(ws.size());
    for (const Word& w : ws) out.push_back({w, deep.value(w)});
    return out;
}

namespace detail {

// max over pairs of values whose windows first differ at radius j, weighted
// by 2^{j alpha}; exact for locally constant tables.  Values are deduplicated
// per agreement bucket so structured tables stay cheap.
inline double holder_seminorm_of_entries(const std::vector<CocycleEntry>& entries, int K,
                                         double alpha, double eta) {
    double best = 0.0;
    for (int j = 0; j <= K; ++j) {
        if (!(std::ldexp(1.0, -j) < eta)) continue;  // pairs at scale 2^{-j}
        // bucket windows by the letters at radius < j
        std::map<Word, std::vector<const Matrix*>> buckets;
        if (j == 0) {
            auto& all = buckets[Word{1}];
            for (const auto& e : entries) all.push_back(&e.value);
        } else {
            for (const auto& e : entries)
                buckets[Cocycle::center_of(e.window, j - 1)].push_back(&e.value);
        }
        double scale = std::pow(std::ldexp(1.0, j), alpha);
        for (auto& [key, vals] : buckets) {
            // dedup bitwise; the diameter only depends on distinct values
            std::vector<const Matrix*> distinct;
            for (const Matrix* m : vals) {
                bool seen = false;
                for (const Matrix* o : distinct)
                    if (*o == *m) {
                        seen = true;
                        break;
                    }
                if (!seen) distinct.push_back(m);
                if (distinct.size() > 4096) break;  // fall back to raw list
            }
            const auto& set = distinct.size() > 4096 ? vals : distinct;
            for (size_t p = 0; p < set.size(); ++p)
                for (size_t q = p + 1; q < set.size(); ++q)
                    best = std::max(best, scale * operator_norm(*set[p] - *set[q]));
        }
    }
    return best;
}

}  // namespace detail

// |A|_{C^alpha, eta}: exact by enumeration over window pairs.  Zero for any
// cocycle that is constant below the locality radius.
inline double holder_seminorm(const Cocycle& a, const HolderParams& p) {
    int K = a.depth();
    // scales below the working depth contribute nothing
    return detail::holder_seminorm_of_entries(flatten_entries(a, K), K, p.alpha, p.eta);
}

// d_{C^alpha}(A, B) = c0 + seminorm of the difference table on the common
// refinement.
inline double holder_distance(const Cocycle& a, const Cocycle& b, const HolderParams& p) {
    detail::check_shapes(a, b);
    const int K = std::max(a.depth(), b.depth());
    std::vector<CocycleEntry> ea = flatten_entries(a, K);
    std::vector<CocycleEntry> eb = flatten_entries(b, K);
    std::vector<CocycleEntry> diff;
    diff.reserve(ea.size());
    double c0 = 0.0;
    for (size_t i = 0; i < ea.size(); ++i) {
        diff.push_back({ea[i].window, ea[i].value - eb[i].value});
        c0 = std::max(c0, operator_norm(diff.back().value));
    }
    return c0 + detail::holder_seminorm_of_entries(diff, K, p.alpha, p.eta);
}

// --- renormalization --------------------------------------------------------

// entrywise |det|^{-1/d} scaling; the reduction from GL to volume-preserving
inline Cocycle renormalize_gl(const Cocycle& a) {
    std::map<Word, Matrix> table;
    Cocycle flat = a;  // keep base/override structure: renormalize both layers
    std::map<Word, Matrix> base;
    a.for_each_base_entry([&](const Word& w, const Matrix& m) {
        base.emplace(w, unimodular_renormalize(m, a.tolerances()));
    });
    Cocycle out(a.sft(), a.dim(), GroupTag::SL, a.base_depth(), base, a.tolerances());
    if (!a.overrides().empty()) {
        std::vector<CocycleEntry> pins;
        for (const auto& [w, m] : a.overrides())
            pins.push_back({w, unimodular_renormalize(m, a.tolerances())});
        out = out.with_overrides(a.depth(), pins);
    }
    return out;
}

// --- quasi-conformality traces ----------------------------------------------

struct QcTrace {
    long long horizon = 0;
    // index n + horizon holds the values for n in [-horizon, horizon]
    std::vector<double> norm;      // ||A_n(x)||
    std::vector<double> inv_norm;  // ||A_n(x)^{-1}||

    double qc_ratio(long long n) const {
        return norm[static_cast<size_t>(n + horizon)] * inv_norm[static_cast<size_t>(n + horizon)];
    }
    double norm_at(long long n) const { return norm[static_cast<size_t>(n + horizon)]; }
    double inv_norm_at(long long n) const { return inv_norm[static_cast<size_t>(n + horizon)]; }
};

inline QcTrace qc_trace(const Cocycle& a, const SymbolicPoint& x, long long horizon) {
    if (!is_admissible(a.sft(), x)) throw Error(ErrorKind::InadmissiblePoint, "point not in SFT");
    QcTrace t;
    t.horizon = horizon;
    t.norm.assign(static_cast<size_t>(2 * horizon + 1), 1.0);
    t.inv_norm.assign(static_cast<size_t>(2 * horizon + 1), 1.0);
    Matrix p = Matrix::Identity(a.dim(), a.dim());
    Matrix pinv = p;
    for (long long n = 1; n <= horizon; ++n) {
        p = a.evaluate_unchecked(x, n - 1) * p;
        pinv = pinv * a.evaluate_inverse_unchecked(x, n - 1);
        t.norm[static_cast<size_t>(horizon + n)] = operator_norm(p);
        t.inv_norm[static_cast<size_t>(horizon + n)] = operator_norm(pinv);
    }
    p = Matrix::Identity(a.dim(), a.dim());
    pinv = p;
    for (long long n = 1; n <= horizon; ++n) {
        p = a.evaluate_inverse_unchecked(x, -n) * p;
        pinv = pinv * a.evaluate_unchecked(x, -n);
        t.norm[static_cast<size_t>(horizon - n)] = operator_norm(p);
        t.inv_norm[static_cast<size_t>(horizon - n)] = operator_norm(pinv);
    }
    return t;
}

// Finite-horizon membership: only violation is decidable; the infinite
// statement is never asserted.
enum class HorizonVerdict { Violated, HoldsUpToHorizon };

struct MembershipResult {
    HorizonVerdict verdict = HorizonVerdict::HoldsUpToHorizon;
    long long first_violation = 0;  // meaningful when violated
};

namespace detail {
template <class Pred>
MembershipResult first_violation(long long horizon, Pred&& bad) {
    // report the violation closest to time zero
    for (long long n = 0; n <= horizon; ++n) {
        if (bad(n)) return {HorizonVerdict::Violated, n};
        if (n > 0 && bad(-n)) return {HorizonVerdict::Violated, -n};
    }
    return {};
}
}  // namespace detail

inline MembershipResult membership_qc(const Cocycle& a, const SymbolicPoint& x, double kappa,
                                      long long horizon) {
    QcTrace t = qc_trace(a, x, horizon);
    return detail::first_violation(horizon, [&](long long n) { return t.qc_ratio(n) > kappa; });
}

inline MembershipResult membership_bounded(const Cocycle& a, const SymbolicPoint& x, double kappa,
                                           long long horizon) {
    QcTrace t = qc_trace(a, x, horizon);
    return detail::first_violation(
        horizon, [&](long long n) { return std::max(t.norm_at(n), t.inv_norm_at(n)) > kappa; });
}

// --- seeded perturbations ----------------------------------------------------

// B(w) = A(center) * exp(amplitude * P(w)) with P drawn per window from a
// small pool of unit traceless directions; stays exactly volume preserving
// and keeps the number of distinct values small so that Hölder distances are
// cheap to evaluate exactly.
inline Cocycle sample_holder_perturbation(const Cocycle& a, int depth, double amplitude,
                                          int pool_size, Rng& rng) {
    if (depth < a.depth()) depth = a.depth();
    std::vector<Matrix> pool;
    for (int i = 0; i < pool_size; ++i) {
        Matrix g = random_gaussian(rng, a.dim());
        Matrix t = g - (g.trace() / a.dim()) * Matrix::Identity(a.dim(), a.dim());
        pool.push_back(t / operator_norm(t));
    }
    std::uniform_int_distribution<int> pick(0, pool_size - 1);
    std::map<Word, Matrix> table;
    Cocycle deep = a.depth() == depth ? a : a.with_depth(depth);
    for (const Word& w : admissible_words(a.sft(), 2 * depth + 1)) {
        Matrix noise = (amplitude * pool[static_cast<size_t>(pick(rng))]).exp();
        table.emplace(w, deep.value(w) * noise);
    }
    return Cocycle(a.sft(), a.dim(), a.group_tag(), depth, table, a.tolerances());
}

}  // namespace qcorbit
