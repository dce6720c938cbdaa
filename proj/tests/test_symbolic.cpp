#include "qcorbit/symbolic.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace qcorbit;

namespace {

// independent brute-force transition oracle: odometer over all words
std::vector<Word> brute_transitions(const Sft& sft, const Word& a, const Word& b, int max_len) {
    std::vector<Word> out;
    for (int n = std::max(a.size(), b.size()); n <= max_len; ++n) {
        std::vector<Symbol> w(static_cast<size_t>(n), 1);
        for (;;) {
            Word cand{std::vector<Symbol>(w)};
            bool ok = sft.admissible(cand);
            for (int i = 0; ok && i < a.size(); ++i) ok = cand[i] == a[i];
            for (int i = 0; ok && i < b.size(); ++i) ok = cand[n - b.size() + i] == b[i];
            if (ok) out.push_back(cand);
            int p = n - 1;
            while (p >= 0 && w[static_cast<size_t>(p)] == sft.alphabet_size()) {
                w[static_cast<size_t>(p)] = 1;
                --p;
            }
            if (p < 0) break;
            ++w[static_cast<size_t>(p)];
        }
    }
    std::sort(out.begin(), out.end(), word_order_less);
    return out;
}

Sft no_12_sft() {
    // forbids the transition 1 -> 2
    return Sft(2, {{1, 0}, {1, 1}});
}

}  // namespace

TEST_CASE("concat juxtaposes") {
    CHECK(concat(Word{1, 2}, Word{3}) == Word{1, 2, 3});
    CHECK(concat(Word{1}, Word{1}) == Word{1, 1});
    CHECK_THROWS_AS(Word{std::vector<Symbol>{}}, Error);
}

TEST_CASE("merge overlaps") {
    CHECK(merge(Word{1, 2, 3}, Word{3, 1}, 1) == Word{1, 2, 3, 1});
    CHECK(merge(Word{1, 2}, Word{2, 1}, 0) == concat(Word{1, 2}, Word{2, 1}));
    CHECK(merge(Word{1, 2}, Word{1, 2}, 2) == Word{1, 2});
    CHECK_THROWS_AS(merge(Word{1, 2}, Word{1, 1}, 1), Error);
}

TEST_CASE("merge associativity on compatible triples") {
    // cut three overlapping segments out of one master word; both
    // bracketings must rebuild the same stretch
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> nlen(6, 10), letter(1, 3);
    for (int it = 0; it < 500; ++it) {
        int n = nlen(rng);
        std::vector<Symbol> master;
        for (int i = 0; i < n; ++i) master.push_back(letter(rng));
        Word big(master);
        int e1 = std::uniform_int_distribution<int>(1, n)(rng);
        int s1 = std::uniform_int_distribution<int>(0, e1)(rng);
        if (s1 == n) s1 = n - 1;
        int e2 = std::uniform_int_distribution<int>(std::max(e1, s1 + 1), n)(rng);
        int s2 = std::uniform_int_distribution<int>(s1, std::min(e2, n - 1))(rng);
        Word w = big.subword(0, e1);
        Word w2 = big.subword(s1, e2 - s1);
        Word w3 = big.subword(s2, n - s2);
        int s = e1 - s1, t = e2 - s2;
        Word lhs = merge(merge(w, w2, s), w3, t);
        Word rhs = merge(w, merge(w2, w3, t), s);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("distance on eventually periodic points") {
    SymbolicPoint x = periodic_point(Word{1, 2});
    SymbolicPoint y = periodic_point(Word{1, 2});
    CHECK(distance(x, y) == 0.0);

    // differ first at indices +-2
    SymbolicPoint a(Word{1}, Word{2, 1, 1, 1, 2}, Word{1}, 2);
    SymbolicPoint b(Word{1}, Word{1, 1, 1, 1, 1}, Word{1}, 2);
    CHECK(distance(a, b) == 0.25);

    CHECK(distance(periodic_point(Word{1}), periodic_point(Word{2})) == 1.0);
}

TEST_CASE("distance halves at most under shift") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> letter(1, 2), len(1, 5), shift_by(-3, 3);
    for (int it = 0; it < 300; ++it) {
        auto rand_word = [&](int n) {
            std::vector<Symbol> ls;
            for (int i = 0; i < n; ++i) ls.push_back(letter(rng));
            return Word(ls);
        };
        SymbolicPoint x(rand_word(len(rng)), rand_word(len(rng)), rand_word(len(rng)), shift_by(rng));
        SymbolicPoint y(rand_word(len(rng)), rand_word(len(rng)), rand_word(len(rng)), shift_by(rng));
        CHECK(distance(shift(x, 1), shift(y, 1)) <= 2.0 * distance(x, y));
    }
}

TEST_CASE("periodic points and cylinders") {
    SymbolicPoint p = periodic_point(Word{1, 2});
    CHECK(points_equal(shift(p, 2), p));
    CHECK(!points_equal(shift(p, 1), p));
    CHECK(cylinder_contains(Cylinder(0, Word{1}), periodic_point(Word{1})));
    CHECK(points_equal(periodic_point(Word{1, 1}), periodic_point(Word{1})));

    CHECK_THROWS_AS(periodic_point(no_12_sft(), Word{1, 2}), Error);
    CHECK_NOTHROW(periodic_point(no_12_sft(), Word{2, 2}));
    CHECK_THROWS_AS(periodic_point(no_12_sft(), Word{2, 1}), Error);  // wrap pair 1->2
}

TEST_CASE("sft validation") {
    CHECK_THROWS_AS(Sft(2, {{1, 1}, {0, 0}}), Error);  // dead row
    CHECK_THROWS_AS(Sft(2, {{1, 0}, {1, 0}}), Error);  // dead column
    Sft full = Sft::full(3);
    CHECK(full.is_full());
    CHECK(Sft(2, {{1, 1}, {1, 1}}).is_full());
}

TEST_CASE("transition enumeration matches brute force") {
    Sft full2 = Sft::full(2);
    auto got = enumerate_transitions(full2, Word{1}, Word{1}, 3);
    std::vector<Word> expect = {Word{1}, Word{1, 1}, Word{1, 1, 1}, Word{1, 2, 1}};
    CHECK(got == expect);

    CHECK(enumerate_transitions(full2, Word{1}, Word{2}, 2) == std::vector<Word>{Word{1, 2}});

    auto sft = no_12_sft();
    auto restricted = enumerate_transitions(sft, Word{1}, Word{2}, 3);
    for (const Word& w : restricted) CHECK(sft.admissible(w));
    CHECK(std::find(restricted.begin(), restricted.end(), Word{1, 2}) == restricted.end());

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> letter(1, 2), len(1, 2);
    for (int it = 0; it < 50; ++it) {
        auto rand_adm = [&](const Sft& s) {
            for (;;) {
                std::vector<Symbol> ls;
                int n = len(rng);
                for (int i = 0; i < n; ++i) ls.push_back(letter(rng));
                Word w(ls);
                if (s.admissible(w)) return w;
            }
        };
        const Sft& s = it % 2 ? full2 : sft;
        Word a = rand_adm(s), b = rand_adm(s);
        CHECK(enumerate_transitions(s, a, b, 5) == brute_transitions(s, a, b, 5));
    }
}

TEST_CASE("every transition is a prefix/suffix admissible word") {
    Sft sft = no_12_sft();
    for (const Word& w : enumerate_transitions(sft, Word{2, 1}, Word{1}, 6)) {
        CHECK(w.prefix(2) == Word{2, 1});
        CHECK(w.suffix(1) == Word{1});
        CHECK(sft.admissible(w));
    }
}

TEST_CASE("transition graph shapes") {
    Sft full3 = Sft::full(3);
    TransitionGraph g0 = transition_graph(full3, 0);
    REQUIRE(g0.vertices.size() == 3);
    for (const auto& edges : g0.out_edges) CHECK(edges.size() == 3);  // complete with loops

    Sft full2 = Sft::full(2);
    TransitionGraph g1 = transition_graph(full2, 1);
    REQUIRE(g1.vertices.size() == 8);  // words of length 2k+1 = 3
    for (const auto& edges : g1.out_edges) CHECK(edges.size() == 2);

    // walk counts on the full shift: m^L from any vertex
    for (int L = 1; L <= 6; ++L) {
        CHECK(g1.walk_count(0, L) == (1ull << L));
        CHECK(g0.walk_count(1, L) == [&] {
            unsigned long long v = 1;
            for (int i = 0; i < L; ++i) v *= 3;
            return v;
        }());
    }
}

TEST_CASE("transitions between windows are walks in the window graph") {
    Sft sft = no_12_sft();
    const int k = 1;
    TransitionGraph g = transition_graph(sft, k);
    Word a{2, 1, 1}, b{1, 1, 1};
    REQUIRE(g.index_of(a) >= 0);
    for (int len = 3; len <= 7; ++len) {
        auto words = enumerate_transitions(sft, a, b, len);
        long long count = 0;
        for (const Word& w : words)
            if (w.size() == len) ++count;
        // walks of (len - (2k+1)) steps from a to b
        long long walks = 0;
        std::vector<long long> cur(g.vertices.size(), 0);
        cur[static_cast<size_t>(g.index_of(a))] = 1;
        for (int s = 0; s < len - (2 * k + 1); ++s) {
            std::vector<long long> nxt(g.vertices.size(), 0);
            for (size_t v = 0; v < g.vertices.size(); ++v)
                for (int w2 : g.out_edges[v]) nxt[static_cast<size_t>(w2)] += cur[v];
            cur.swap(nxt);
        }
        walks = cur[static_cast<size_t>(g.index_of(b))];
        CHECK(count == walks);
    }
}
