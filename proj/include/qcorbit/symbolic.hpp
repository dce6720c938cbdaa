// Symbolic dynamics over subshifts of finite type: words, cylinders, the
// 2^{-n} shift metric, eventually-periodic points, and transition words.
//
// Letters are 1-based (1..m).  Points are restricted to eventually periodic
// sequences (left period | core | right period), which keeps equality and
// distance decidable and covers every construction used elsewhere in the
// library.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qcorbit/errors.hpp"

namespace qcorbit {

using Symbol = int;

struct Alphabet {
    int size = 2;  // m >= 2

    explicit Alphabet(int m) : size(m) {
        if (m < 2) throw Error(ErrorKind::BadInput, "alphabet needs m >= 2");
    }
};

// A finite nonempty word over {1..m}.  Emptiness is rejected here so that
// downstream operations never have to special-case it.
class Word {
public:
    Word(std::initializer_list<Symbol> ls) : letters_(ls) { validate(); }
    explicit Word(std::vector<Symbol> ls) : letters_(std::move(ls)) { validate(); }

    int size() const { return static_cast<int>(letters_.size()); }
    Symbol operator[](int i) const { return letters_[static_cast<size_t>(i)]; }
    Symbol front() const { return letters_.front(); }
    Symbol back() const { return letters_.back(); }
    const std::vector<Symbol>& letters() const { return letters_; }

    bool operator==(const Word&) const = default;
    // lexicographic; enumeration outputs sort by (length, lex)
    bool operator<(const Word& o) const { return letters_ < o.letters_; }

    Word prefix(int n) const {
        return Word(std::vector<Symbol>(letters_.begin(), letters_.begin() + n));
    }
    Word suffix(int n) const {
        return Word(std::vector<Symbol>(letters_.end() - n, letters_.end()));
    }
    Word subword(int pos, int n) const {
        return Word(std::vector<Symbol>(letters_.begin() + pos, letters_.begin() + pos + n));
    }
    Word repeated(int times) const {
        std::vector<Symbol> out;
        out.reserve(letters_.size() * static_cast<size_t>(times));
        for (int t = 0; t < times; ++t) out.insert(out.end(), letters_.begin(), letters_.end());
        return Word(std::move(out));
    }

    std::string str() const {
        std::string s;
        for (size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(letters_[i]);
        }
        return s;
    }

private:
    void validate() const {
        if (letters_.empty()) throw Error(ErrorKind::BadInput, "words have length >= 1");
        for (Symbol c : letters_)
            if (c < 1) throw Error(ErrorKind::BadInput, "letters are 1-based positive");
    }

    std::vector<Symbol> letters_;
};

inline bool word_order_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

// Subshift of finite type on m letters.  The full shift is the distinguished
// all-ones case and is stored without an explicit matrix.
class Sft {
public:
    static Sft full(int m) { return Sft(m); }

    Sft(int m, std::vector<std::vector<int>> adjacency) : m_(m), adj_(std::move(adjacency)) {
        if (m < 2) throw Error(ErrorKind::BadInput, "alphabet needs m >= 2");
        if (static_cast<int>(adj_.size()) != m)
            throw Error(ErrorKind::BadInput, "adjacency must be m x m");
        for (auto& row : adj_)
            if (static_cast<int>(row.size()) != m)
                throw Error(ErrorKind::BadInput, "adjacency must be m x m");
        bool all_ones = true;
        for (int i = 0; i < m; ++i) {
            bool row_ok = false, col_ok = false;
            for (int j = 0; j < m; ++j) {
                if (adj_[i][j] != 0 && adj_[i][j] != 1)
                    throw Error(ErrorKind::BadInput, "adjacency entries must be 0/1");
                row_ok |= adj_[i][j] == 1;
                col_ok |= adj_[j][i] == 1;
                all_ones &= adj_[i][j] == 1;
            }
            if (!row_ok || !col_ok)
                throw Error(ErrorKind::BadInput, "dead letter: zero row or column in adjacency");
        }
        if (all_ones) adj_.clear();  // canonicalize to the full-shift form
    }

    int alphabet_size() const { return m_; }
    bool is_full() const { return adj_.empty(); }

    bool allows(Symbol a, Symbol b) const {
        if (a < 1 || a > m_ || b < 1 || b > m_) return false;
        if (adj_.empty()) return true;
        return adj_[static_cast<size_t>(a - 1)][static_cast<size_t>(b - 1)] == 1;
    }

    bool admissible(const Word& w) const {
        for (int i = 0; i < w.size(); ++i) {
            if (w[i] < 1 || w[i] > m_) return false;
            if (i + 1 < w.size() && !allows(w[i], w[i + 1])) return false;
        }
        return true;
    }

    // admissible as a cyclic word (periodic-point core)
    bool admissible_cycle(const Word& w) const {
        return admissible(w) && allows(w.back(), w.front());
    }

    bool operator==(const Sft& o) const { return m_ == o.m_ && adj_ == o.adj_; }

    const std::vector<std::vector<int>>& adjacency_or_empty() const { return adj_; }

private:
    explicit Sft(int m) : m_(m) {
        if (m < 2) throw Error(ErrorKind::BadInput, "alphabet needs m >= 2");
    }

    int m_;
    std::vector<std::vector<int>> adj_;  // empty <=> full shift
};

// C[n; w] = { x : x_{n..n+|w|-1} = w }
struct Cylinder {
    long long anchor = 0;
    Word word;

    Cylinder(long long n, Word w) : anchor(n), word(std::move(w)) {}
};

// centered cylinder C[w] = C[-k; w] for |w| = 2k+1
inline Cylinder centered_cylinder(const Word& w) {
    if (w.size() % 2 == 0)
        throw Error(ErrorKind::BadInput, "centered cylinder needs odd word length");
    return Cylinder(-(w.size() / 2), w);
}

// Eventually periodic bi-infinite sequence
//   ... L L | core | R R ...
// where sequence index i reads core at position origin + i; indices falling
// left of the core read the left period (wrapping), indices right of it read
// the right period.
class SymbolicPoint {
public:
    SymbolicPoint(Word left_period, Word core, Word right_period, long long origin = 0)
        : left_(std::move(left_period)),
          core_(std::move(core)),
          right_(std::move(right_period)),
          origin_(origin) {}

    Symbol at(long long i) const {
        long long p = origin_ + i;
        if (p >= 0 && p < core_.size()) return core_[static_cast<int>(p)];
        if (p < 0) {
            long long L = left_.size();
            long long r = ((p % L) + L) % L;
            return left_[static_cast<int>(r)];
        }
        long long q = (p - core_.size()) % right_.size();
        return right_[static_cast<int>(q)];
    }

    Word window(long long lo, long long hi) const {  // letters at indices lo..hi
        std::vector<Symbol> ls;
        ls.reserve(static_cast<size_t>(hi - lo + 1));
        for (long long i = lo; i <= hi; ++i) ls.push_back(at(i));
        return Word(std::move(ls));
    }

    const Word& left_period() const { return left_; }
    const Word& core() const { return core_; }
    const Word& right_period() const { return right_; }
    long long origin() const { return origin_; }

    // sequence-index range [lo, hi) outside of which both tails are purely periodic
    long long core_begin() const { return -origin_; }
    long long core_end() const { return core_.size() - origin_; }

private:
    Word left_, core_, right_;
    long long origin_;
};

inline SymbolicPoint shift(const SymbolicPoint& x, long long n) {
    return SymbolicPoint(x.left_period(), x.core(), x.right_period(), x.origin() + n);
}

inline bool is_admissible(const Sft& sft, const SymbolicPoint& x) {
    // periods as cycles, plus both junctions; scanning one core span plus a
    // period on each side covers every adjacent pair the point realizes
    long long lo = x.core_begin() - x.left_period().size() - 1;
    long long hi = x.core_end() + x.right_period().size() + 1;
    for (long long i = lo; i < hi; ++i)
        if (!sft.allows(x.at(i), x.at(i + 1))) return false;
    return true;
}

inline SymbolicPoint periodic_point(const Word& w) {
    return SymbolicPoint(w, w, w, 0);
}

inline SymbolicPoint periodic_point(const Sft& sft, const Word& w) {
    if (!sft.admissible_cycle(w))
        throw Error(ErrorKind::InadmissibleWord, "inadmissible periodic word " + w.str());
    return periodic_point(w);
}

inline bool cylinder_contains(const Cylinder& c, const SymbolicPoint& x) {
    for (int j = 0; j < c.word.size(); ++j)
        if (x.at(c.anchor + j) != c.word[j]) return false;
    return true;
}

namespace detail {
inline long long lcm_capped(long long a, long long b) {
    long long g = std::gcd(a, b);
    long long l = a / g * b;
    if (l > 2'000'000)
        throw Error(ErrorKind::EnumerationBudget, "periodic representation too large to compare");
    return l;
}
}  // namespace detail

// Equality as bi-infinite sequences (decidable for eventually periodic
// representations: beyond the cores both sides are periodic, so agreement on
// one lcm-length window per side settles the tails).
inline bool points_equal(const SymbolicPoint& x, const SymbolicPoint& y) {
    long long lo = std::min(x.core_begin(), y.core_begin());
    long long hi = std::max(x.core_end(), y.core_end());
    long long left_span = detail::lcm_capped(x.left_period().size(), y.left_period().size());
    long long right_span = detail::lcm_capped(x.right_period().size(), y.right_period().size());
    for (long long i = lo - left_span; i < hi + right_span; ++i)
        if (x.at(i) != y.at(i)) return false;
    return true;
}

// d(x, y) = 2^{-min{|i| : x_i != y_i}}, 0 if equal
inline double distance(const SymbolicPoint& x, const SymbolicPoint& y) {
    if (points_equal(x, y)) return 0.0;
    for (long long n = 0;; ++n) {
        if (x.at(n) != y.at(n) || x.at(-n) != y.at(-n)) return std::ldexp(1.0, -static_cast<int>(n));
    }
}

// All admissible words of a given length, in lexicographic order.
inline std::vector<Word> admissible_words(const Sft& sft, int len, long long cap = 1'000'000) {
    std::vector<Word> out;
    std::vector<Symbol> cur;
    cur.reserve(static_cast<size_t>(len));
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == len) {
            out.emplace_back(cur);
            return;
        }
        for (Symbol c = 1; c <= sft.alphabet_size(); ++c) {
            if (pos > 0 && !sft.allows(cur.back(), c)) continue;
            cur.push_back(c);
            if (static_cast<long long>(out.size()) > cap)
                throw Error(ErrorKind::EnumerationBudget, "admissible_words cap exceeded");
            self(self, pos + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Transitions from a to b: admissible words with prefix a and suffix b, of
// length at most max_len.  Overlapping (|w| < |a|+|b|) is permitted.  Output
// is ordered by length, then lexicographically.
inline std::vector<Word> enumerate_transitions(const Sft& sft, const Word& a, const Word& b,
                                               int max_len, long long cap = 1'000'000) {
    if (!sft.admissible(a) || !sft.admissible(b))
        throw Error(ErrorKind::InadmissibleWord, "transition endpoints must be admissible");
    if (max_len < std::max(a.size(), b.size()))
        throw Error(ErrorKind::BadInput, "max_len below max(|a|,|b|)");
    std::vector<Word> out;
    for (int n = std::max(a.size(), b.size()); n <= max_len; ++n) {
        int bstart = n - b.size();
        // positions already pinned by a must agree with b on the overlap
        bool consistent = true;
        for (int p = std::max(bstart, 0); p < a.size(); ++p)
            if (a[p] != b[p - bstart]) {
                consistent = false;
                break;
            }
        if (!consistent) continue;
        if (n == a.size()) {
            out.push_back(a);
            continue;
        }
        std::vector<Symbol> cur(a.letters());
        auto rec = [&](auto&& self, int pos) -> void {
            if (pos == n) {
                out.emplace_back(cur);
                if (static_cast<long long>(out.size()) > cap)
                    throw Error(ErrorKind::EnumerationBudget, "enumerate_transitions cap exceeded");
                return;
            }
            if (pos >= bstart) {
                Symbol c = b[pos - bstart];
                if (sft.allows(cur.back(), c)) {
                    cur.push_back(c);
                    self(self, pos + 1);
                    cur.pop_back();
                }
                return;
            }
            for (Symbol c = 1; c <= sft.alphabet_size(); ++c) {
                if (!sft.allows(cur.back(), c)) continue;
                cur.push_back(c);
                self(self, pos + 1);
                cur.pop_back();
            }
        };
        rec(rec, a.size());
    }
    return out;
}

inline Word concat(const Word& w, const Word& w2) {
    std::vector<Symbol> out(w.letters());
    out.insert(out.end(), w2.letters().begin(), w2.letters().end());
    return Word(std::move(out));
}

// w \/_t w2: requires the last t letters of w to equal the first t of w2
inline Word merge(const Word& w, const Word& w2, int t) {
    if (t < 0 || t > w.size() || t > w2.size())
        throw Error(ErrorKind::BadInput, "merge overlap out of range");
    for (int i = 0; i < t; ++i)
        if (w[w.size() - t + i] != w2[i])
            throw Error(ErrorKind::OverlapMismatch,
                        "merge overlap disagrees: " + w.str() + " vs " + w2.str());
    std::vector<Symbol> out(w.letters());
    out.insert(out.end(), w2.letters().begin() + t, w2.letters().end());
    return Word(std::move(out));
}

// Window graph: vertices are admissible words of length 2k+1; a -> b when
// b_i = a_{i+1} on the overlap.  Transitions of a depth-k cocycle correspond
// bijectively to walks in this graph.
struct TransitionGraph {
    std::vector<Word> vertices;              // lex order
    std::vector<std::vector<int>> out_edges;  // indices into vertices

    int index_of(const Word& w) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), w);
        if (it == vertices.end() || !(*it == w)) return -1;
        return static_cast<int>(it - vertices.begin());
    }

    // number of walks with `steps` edges starting at vertex `from`
    unsigned long long walk_count(int from, int steps) const {
        std::vector<unsigned long long> cur(vertices.size(), 0);
        cur[static_cast<size_t>(from)] = 1;
        for (int s = 0; s < steps; ++s) {
            std::vector<unsigned long long> nxt(vertices.size(), 0);
            for (size_t v = 0; v < vertices.size(); ++v)
                for (int w : out_edges[v]) nxt[static_cast<size_t>(w)] += cur[v];
            cur.swap(nxt);
        }
        unsigned long long total = 0;
        for (auto c : cur) total += c;
        return total;
    }
};

inline TransitionGraph transition_graph(const Sft& sft, int k) {
    TransitionGraph g;
    g.vertices = admissible_words(sft, 2 * k + 1);
    g.out_edges.assign(g.vertices.size(), {});
    const int n = 2 * k + 1;
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        const Word& a = g.vertices[i];
        for (size_t j = 0; j < g.vertices.size(); ++j) {
            const Word& b = g.vertices[j];
            bool edge = true;
            for (int p = 0; p + 1 < n; ++p)
                if (b[p] != a[p + 1]) {
                    edge = false;
                    break;
                }
            // the extended word adds the pair (b_{n-2}, b_{n-1}), already
            // admissible because b is a vertex
            if (edge) g.out_edges[i].push_back(static_cast<int>(j));
        }
    }
    return g;
}

}  // namespace qcorbit
