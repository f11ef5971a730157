#include <catch_amalgamated.hpp>
#include <random>
#include <set>

#include "quotatope/core.hpp"
#include "quotatope/oracle.hpp"

using namespace quotatope;

namespace {

ScalarQuotaSystem sys_of(std::vector<long> w, long q) {
    ScalarQuotaSystem s;
    for (long x : w) s.weights.emplace_back(x);
    s.quota = q;
    return s;
}

}  // namespace

TEST_CASE("face weights are exact sums") {
    auto s = sys_of({2, 3, 5}, 9);
    CHECK(face_weight(s, Face({0, 1, 2})) == 10);
    CHECK(face_weight(s, Face({0})) == 2);

    ScalarQuotaSystem r;
    r.weights = {Rational(7, 2), Rational(1, 2)};
    r.quota = 10;
    CHECK(face_weight(r, Face({0, 1})) == 4);
}

TEST_CASE("face membership is strict inequality against the quota") {
    CHECK(is_face(sys_of({2, 3, 5}, 9), Face({1, 2})));        // 8 < 9
    CHECK_FALSE(is_face(sys_of({2, 3, 5}, 8), Face({1, 2})));  // 8 is not < 8
    CHECK(is_face(sys_of({2, 3, 5}, 11), Face({0, 1, 2})));    // 10 < 11
    CHECK_FALSE(is_face(sys_of({2, 3, 5}, 10), Face({0, 1, 2})));
}

TEST_CASE("face validation") {
    auto s = sys_of({2, 3, 5}, 9);
    CHECK_THROWS_AS(face_weight(s, Face({0, 3})), input_error);
    CHECK_THROWS_AS(face_weight(s, Face({1, 1})), input_error);
    CHECK_THROWS_AS(face_weight(s, Face({2, 1})), input_error);
}

TEST_CASE("shell faces avoid the minimal vertex and land in the window") {
    auto s = sys_of({2, 3, 5, 7}, 8);
    CHECK(is_shell_face(s, Face({3})));         // 7 in [6, 8)
    CHECK_FALSE(is_shell_face(s, Face({1, 2})));  // weight 8, not < 8
    CHECK_FALSE(is_shell_face(s, Face({0, 3})));  // contains the minimal vertex
    CHECK_FALSE(is_shell_face(s, Face({1})));     // 3 below the window
}

TEST_CASE("bouquet signature: primes below 8") {
    auto sig = bouquet_signature(sys_of({2, 3, 5, 7}, 8));
    REQUIRE_FALSE(sig.empty_complex);
    CHECK(sig.sphere_counts == std::map<int, BigInt>{{0, 1}});
    CHECK(euler_characteristic(sig) == 2);
}

TEST_CASE("bouquet signature: contractible when no shell face can exist") {
    // full edge: both vertices present, the pair is a face, nothing in [4, 6)
    auto sig = bouquet_signature(sys_of({2, 3}, 6));
    CHECK(sig.contractible());
    CHECK(euler_characteristic(sig) == 1);
}

TEST_CASE("bouquet signature: divisors of 6 form a circle") {
    auto sig = bouquet_signature(sys_of({1, 2, 3}, 6));
    CHECK(sig.sphere_counts == std::map<int, BigInt>{{1, 1}});
    CHECK(euler_characteristic(sig) == 0);
}

TEST_CASE("empty complex is reported as such") {
    auto sig = bouquet_signature(sys_of({4, 5, 6}, 3));
    CHECK(sig.empty_complex);
    CHECK_FALSE(sig.contractible());
    CHECK(euler_characteristic(sig) == 0);
}

TEST_CASE("single-vertex complex is a point") {
    auto sig = bouquet_signature(sys_of({2}, 3));
    CHECK(sig.contractible());
    CHECK(euler_characteristic(sig) == 1);
}

TEST_CASE("signature does not depend on the choice among tied minimal vertices") {
    auto s = sys_of({3, 3, 5, 7, 3}, 12);
    auto ref = bouquet_signature(s, 0);
    CHECK(bouquet_signature(s, 1) == ref);
    CHECK(bouquet_signature(s, 4) == ref);
    CHECK(bouquet_signature(s) == ref);
    CHECK_THROWS_AS(bouquet_signature(s, 2), input_error);  // weight 5 is not minimal
}

TEST_CASE("counting routes agree: subset walk vs dp vs brute force") {
    // scaling all weights and the quota by a common factor leaves the complex
    // unchanged; a huge prime factor pushes the walk route, the bare system
    // stays on the dp route, and a mask loop recounts shell faces from scratch
    std::mt19937 rng(2024);
    const long G = 1'000'000'007L;
    for (int trial = 0; trial < 40; ++trial) {
        int n = 4 + static_cast<int>(rng() % 7);
        std::vector<long> w(n);
        long total = 0;
        for (auto& x : w) {
            x = 1 + static_cast<long>(rng() % 1000);
            total += x;
        }
        long q = 2 + static_cast<long>(rng() % total);
        auto small = sys_of(w, q);  // dp route: cap = q <= ~10000
        std::vector<long> scaled(w);
        for (auto& x : scaled) x *= G;
        auto big = sys_of(scaled, q * G);  // walk route: scaled cap too large

        auto sig = bouquet_signature(small);
        CHECK(sig == bouquet_signature(big));

        long vmin = 0;
        for (int i = 1; i < n; ++i)
            if (w[i] < w[vmin]) vmin = i;
        std::map<int, BigInt> brute;
        for (long msk = 1; msk < (1L << n); ++msk) {
            if (msk >> vmin & 1) continue;
            long s = 0;
            int card = 0;
            for (int i = 0; i < n; ++i)
                if (msk >> i & 1) {
                    s += w[i];
                    ++card;
                }
            if (s >= q - w[vmin] && s < q) ++brute[card - 1];
        }
        CHECK(sig.sphere_counts == brute);
    }
}

TEST_CASE("downward closure: subfaces of faces are faces") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 8);
        ScalarQuotaSystem s;
        for (int i = 0; i < n; ++i) s.weights.emplace_back(1 + rng() % 30);
        s.quota = 2 + rng() % 80;
        for (int cases = 0; cases < 20; ++cases) {
            Face f;
            for (int i = 0; i < n; ++i)
                if (rng() % 2) f.v.push_back(i);
            if (f.v.empty() || !is_face(s, f)) continue;
            Face g;  // random subface
            for (int idx : f.v)
                if (rng() % 2) g.v.push_back(idx);
            if (!g.v.empty()) CHECK(is_face(s, g));
        }
    }
}

TEST_CASE("sphere counts total the number of shell faces") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        ScalarQuotaSystem s;
        for (int i = 0; i < n; ++i) s.weights.emplace_back(1 + rng() % 20);
        s.quota = 2 + rng() % 60;
        auto sig = bouquet_signature(s);
        if (sig.empty_complex) continue;

        long direct = 0;
        int vmin = min_vertex(s);
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
            Face f;
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) f.v.push_back(i);
            if (is_shell_face(s, f, vmin)) ++direct;
        }
        BigInt total = 0;
        for (const auto& [d, c] : sig.sphere_counts) total += c;
        CHECK(total == direct);
    }
}

TEST_CASE("euler characteristic equals the alternating face-count sum") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + static_cast<int>(rng() % 10);
        ScalarQuotaSystem s;
        for (int i = 0; i < n; ++i) s.weights.emplace_back(1 + rng() % 25);
        s.quota = 1 + rng() % 70;
        auto sig = bouquet_signature(s);
        if (sig.empty_complex) {
            CHECK(enumerate_complex(s).faces.empty());
            continue;
        }
        CHECK(euler_characteristic(sig) == euler_characteristic(enumerate_complex(s)));
    }
}

TEST_CASE("shell vertices, scalar and vector") {
    auto scalar = as_vector_system(sys_of({2, 3, 5, 7}, 8));
    CHECK(shell_vertices(scalar) == std::vector<int>{3});

    // all non-minimal weights below the window
    auto low = as_vector_system(sys_of({2, 3, 4}, 20));
    CHECK(shell_vertices(low).empty());

    // shell in the second coordinate only
    VectorQuotaSystem two;
    two.weights = {{Rational(1), Rational(1)}, {Rational(2), Rational(9)}};
    two.quota = {Rational(10), Rational(10)};
    CHECK(shell_vertices(two) == std::vector<int>{1});

    // boundary case distinguishes the closed and strict windows
    VectorQuotaSystem edge = as_vector_system(sys_of({2, 6, 9}, 8));
    CHECK(shell_vertices(edge) == std::vector<int>{1});  // 6 == 8-2, closed window
    CHECK(shell_vertices(edge, true).empty());           // strict drops it
}

TEST_CASE("category upper bound applies only without shell vertices") {
    CHECK(category_upper_bound(as_vector_system(sys_of({2, 3, 4}, 20))) == 1);

    VectorQuotaSystem three;
    three.weights = {{1, 1, 1}, {2, 2, 2}};
    for (auto& row : three.weights)
        for (auto& w : row) w.canonicalize();
    three.quota = {Rational(10), Rational(10), Rational(10)};
    CHECK(category_upper_bound(three) == 5);

    CHECK_FALSE(category_upper_bound(as_vector_system(sys_of({2, 3, 5, 7}, 8))).has_value());
}

namespace {

std::set<std::vector<int>> face_set(const ExplicitComplex& c) {
    std::set<std::vector<int>> out;
    for (const auto& f : c.faces) out.insert(f.v);
    return out;
}

std::set<std::vector<int>> closure_of_facets(const std::vector<Face>& facets) {
    std::set<std::vector<int>> out;
    for (const auto& f : facets) {
        int k = static_cast<int>(f.v.size());
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < k; ++i)
                if (mask & (1u << i)) sub.push_back(f.v[i]);
            out.insert(sub);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("complex_to_quota reproduces the boundary of a triangle") {
    std::vector<Face> facets = {Face({0, 1}), Face({1, 2}), Face({0, 2})};
    auto sys = complex_to_quota(facets, 3);
    REQUIRE(sys.weight_dim() == 3);
    CHECK(face_set(enumerate_complex(sys)) == closure_of_facets(facets));
    CHECK_FALSE(is_face(sys, Face({0, 1, 2})));
}

TEST_CASE("complex_to_quota on a single facet gives the full simplex") {
    auto sys = complex_to_quota({Face({0, 1, 2})}, 3);
    REQUIRE(sys.weight_dim() == 1);
    CHECK(face_set(enumerate_complex(sys)) == closure_of_facets({Face({0, 1, 2})}));
    CHECK(is_face(sys, Face({0, 1, 2})));
}

TEST_CASE("complex_to_quota keeps disjoint edges disjoint") {
    std::vector<Face> facets = {Face({0, 1}), Face({2, 3})};
    auto sys = complex_to_quota(facets, 4);
    CHECK(face_set(enumerate_complex(sys)) == closure_of_facets(facets));
    CHECK_FALSE(is_face(sys, Face({0, 2})));
    CHECK_FALSE(is_face(sys, Face({1, 3})));
}

TEST_CASE("complex_to_quota rejects nested facets") {
    CHECK_THROWS_AS(complex_to_quota({Face({0, 1}), Face({0, 1, 2})}, 3), input_error);
    CHECK_THROWS_AS(complex_to_quota({}, 3), input_error);
}

TEST_CASE("perturbed realization preserves the complex and has distinct entries") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 3 + static_cast<int>(rng() % 6);
        // random antichain of facets
        std::vector<Face> facets;
        for (int tries = 0; tries < 12 && facets.size() < 5; ++tries) {
            Face f;
            for (int i = 0; i < n; ++i)
                if (rng() % 2) f.v.push_back(i);
            if (f.v.empty()) continue;
            bool comparable = false;
            for (const auto& g : facets) {
                if (std::includes(g.v.begin(), g.v.end(), f.v.begin(), f.v.end()) ||
                    std::includes(f.v.begin(), f.v.end(), g.v.begin(), g.v.end()))
                    comparable = true;
            }
            if (!comparable) facets.push_back(f);
        }
        if (facets.empty()) continue;

        auto plain = complex_to_quota(facets, n);
        auto wiggled = complex_to_quota(facets, n, true);
        CHECK(face_set(enumerate_complex(plain)) == closure_of_facets(facets));
        CHECK(face_set(enumerate_complex(wiggled)) == face_set(enumerate_complex(plain)));

        std::set<Rational> entries;
        for (const auto& q : wiggled.quota) entries.insert(q);
        for (const auto& row : wiggled.weights)
            for (const auto& w : row) entries.insert(w);
        CHECK(entries.size() == wiggled.quota.size() + wiggled.weights.size() * facets.size());
    }
}
