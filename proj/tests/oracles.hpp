#pragma once

// Reference computations for the tests, written independently of the library's
// algorithms: plain state sums, textbook continued fractions, Schubert's criterion.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twistrec/diagram.hpp"

namespace oracle {

using twistrec::LaurentPoly;
using twistrec::PlanarDiagram;

// Kauffman bracket by summing over all 2^n states.  X[a,b,c,d]: the A-smoothing
// joins a-b and c-d, the B-smoothing a-d and b-c.
inline LaurentPoly bracket(const PlanarDiagram& d) {
    const int n = d.size();
    std::map<int, int> index;
    for (const auto& c : d.crossings)
        for (int e : c.e) index.try_emplace(e, static_cast<int>(index.size()));
    const int m = static_cast<int>(index.size());
    const LaurentPoly delta = LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1);
    std::map<std::pair<int, int>, std::int64_t> counts;  // (A-count minus B-count, loops) -> states
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        std::vector<int> parent(static_cast<std::size_t>(m));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            return x;
        };
        auto join = [&](int a, int b) { parent[static_cast<std::size_t>(find(index[a]))] = find(index[b]); };
        int balance = 0;
        for (int i = 0; i < n; ++i) {
            const auto& e = d.crossings[static_cast<std::size_t>(i)].e;
            if ((s >> i) & 1) {
                join(e[0], e[3]);
                join(e[1], e[2]);
                --balance;
            } else {
                join(e[0], e[1]);
                join(e[2], e[3]);
                ++balance;
            }
        }
        int loops = 0;
        for (int x = 0; x < m; ++x)
            if (find(x) == x) ++loops;
        ++counts[{balance, loops}];
    }
    LaurentPoly total;
    for (auto [key, k] : counts) {
        LaurentPoly term = LaurentPoly::monomial(key.first, k);
        for (int i = 1; i < key.second; ++i) term = term * delta;
        total += term;
    }
    int extra = d.free_loops;
    if (n == 0) {
        total = LaurentPoly::monomial(0);
        extra = std::max(0, extra - 1);  // the first loop is the state loop
    }
    for (int i = 0; i < extra; ++i) total = total * delta;
    return total;
}

// Jones polynomial in x = t^(1/2), from the bracket above and the stored signs.
inline LaurentPoly jones(const PlanarDiagram& d) {
    int w = 0;
    for (const auto& c : d.crossings) w += c.sign;
    LaurentPoly f = bracket(d) * LaurentPoly::monomial(-3 * w, (w % 2 == 0) ? 1 : -1);
    // A = t^(-1/4) = x^(-1/2)
    return f.scaled_exponents(-1).divided_exponents(2);
}

// Polynomial in t given as {exponent: coefficient}, returned in x = t^(1/2).
inline LaurentPoly in_t(const std::map<int, std::int64_t>& terms) {
    std::map<int, std::int64_t> x;
    for (auto [e, c] : terms) x[2 * e] = c;
    return LaurentPoly::from_terms(x);
}

// Continued fraction a_n + 1/(a_{n-1} + ... + 1/a_0) by hand.
inline std::pair<std::int64_t, std::int64_t> continued_fraction(const std::vector<std::int64_t>& innermost_first) {
    std::int64_t num = innermost_first.at(0), den = 1;
    for (std::size_t i = 1; i < innermost_first.size(); ++i) {
        // a + den/num
        std::int64_t n2 = innermost_first[i] * num + den, d2 = num;
        num = n2;
        den = d2;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
}

// Schubert: N(p/q) and N(p/q') are the same unoriented link iff q' = q^(+-1) mod p,
// up to mirror q' = -q^(+-1).  Decided by brute-force search for the inverse.
inline bool schubert_equivalent(std::int64_t p, std::int64_t q, std::int64_t p2, std::int64_t q2) {
    p = std::llabs(p);
    p2 = std::llabs(p2);
    if (p != p2) return false;
    if (p <= 1) return true;
    auto mod = [p](std::int64_t x) { return ((x % p) + p) % p; };
    std::vector<std::int64_t> ok = {mod(q), mod(-q)};
    for (std::int64_t x = 1; x < p; ++x)
        if (mod(x * q) == 1) {
            ok.push_back(x);
            ok.push_back(mod(-x));
        }
    for (auto c : ok)
        if (c == mod(q2)) return true;
    return false;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace oracle
