#include "twistrec/tangle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace twistrec {

namespace {

i64 floordiv(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i64 posmod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

int cf_sum_positive(i64 a, i64 b) {  // sum of the positive expansion of a/b, a,b > 0
    int s = 0;
    while (b != 0) {
        s += static_cast<int>(a / b);
        i64 r = a % b;
        a = b;
        b = r;
    }
    return s;
}

}  // namespace

Fraction::Fraction(i64 n, i64 d) {
    if (d == 0) throw ZeroDenominator("fraction with zero denominator", -1);
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i64 g = std::gcd(n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

i64 Fraction::floor() const { return floordiv(num, den); }
i64 Fraction::ceil() const { return -floordiv(-num, den); }

Fraction Fraction::operator+(const Fraction& o) const {
    if (is_infinite() || o.is_infinite()) return infinity();
    return Fraction(num * o.den + o.num * den, den * o.den);
}
Fraction Fraction::operator-() const {
    if (is_infinite()) return *this;
    return Fraction(-num, den);
}
Fraction Fraction::operator-(const Fraction& o) const { return *this + (-o); }

Fraction Fraction::reciprocal() const {
    if (is_infinite()) return Fraction(0);
    if (num == 0) return infinity();
    return Fraction(den, num);
}

std::string Fraction::to_string() const {
    if (is_infinite()) return "inf";
    std::ostringstream os;
    os << num;
    if (den != 1) os << "/" << den;
    return os.str();
}

Fraction cf_eval(const TangleWord& w) {
    if (w.empty()) throw std::invalid_argument("cf_eval: empty word");
    Fraction acc(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (acc.num == 0) throw ZeroDenominator("cf_eval: zero convergent", static_cast<int>(i - 1));
        acc = Fraction(w[i]) + acc.reciprocal();
    }
    return acc;
}

TangleWord cf_expand_alternating(const Fraction& f) {
    if (f.is_infinite() || f.num == 0) throw std::invalid_argument("cf_expand_alternating: needs a finite nonzero value");
    // Outermost term first, then reversed.  Each step rounds away from zero so the
    // remainder takes the opposite sign, which forces the next term to flip sign.
    TangleWord out;
    Fraction x = f;
    while (!x.is_integer()) {
        i64 a = x.num > 0 ? x.ceil() : x.floor();
        out.push_back(a);
        x = (x - Fraction(a)).reciprocal();
    }
    out.push_back(x.num);
    std::reverse(out.begin(), out.end());
    return out;
}

TangleWord cf_expand_uniform(const Fraction& f) {
    if (f.is_infinite()) throw std::invalid_argument("cf_expand_uniform: infinite value");
    bool neg = f.num < 0;
    Fraction x = neg ? -f : f;
    TangleWord out;
    while (true) {
        i64 a = x.floor();
        out.push_back(a);
        Fraction r = x - Fraction(a);
        if (r.num == 0) break;
        x = r.reciprocal();
    }
    if (neg)
        for (auto& a : out) a = -a;
    std::reverse(out.begin(), out.end());
    return out;
}

std::array<Fraction, 3> montesinos_fractions(i64 p, i64 q, i64 r, i64 s, i64 t, i64 u) {
    const i64 dens[3] = {t * u + 1, r * s + 1, p * q + 1};
    const i64 nums[3] = {t, r, p};
    const char* names[3] = {"t/(tu+1)", "r/(rs+1)", "p/(pq+1)"};
    std::array<Fraction, 3> out;
    for (int i = 0; i < 3; ++i) {
        if (dens[i] == 0) throw ZeroDenominator(std::string("montesinos_fractions: zero denominator in ") + names[i], i);
        out[static_cast<std::size_t>(i)] = Fraction(nums[i], dens[i]);
    }
    return out;
}

i64 mod_inverse(i64 a, i64 m) {
    if (m == 1) return 0;
    i64 r0 = m, r1 = posmod(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        i64 qq = r0 / r1;
        i64 t = r0 - qq * r1;
        r0 = r1;
        r1 = t;
        t = s0 - qq * s1;
        s0 = s1;
        s1 = t;
    }
    if (r0 != 1) throw std::invalid_argument("mod_inverse: not invertible");
    return posmod(s0, m);
}

TwoBridge two_bridge_of(const Fraction& f) {
    TwoBridge b;
    if (f.is_infinite()) return b;  // N(inf) is the unknot
    b.p = f.num < 0 ? -f.num : f.num;
    if (b.p <= 1) {
        b.q = 0;
        return b;
    }
    b.q = posmod(f.num < 0 ? -f.den : f.den, b.p);
    return b;
}

TwoBridge two_bridge_mirror(const TwoBridge& b) {
    if (b.p <= 1) return b;
    return {b.p, posmod(-b.q, b.p)};
}

TwoBridge two_bridge_canonical(const TwoBridge& b, bool unoriented) {
    if (b.p <= 2) return b.p == 2 ? TwoBridge{2, 1} : b;
    i64 qi = mod_inverse(b.q, b.p);
    i64 best = std::min(b.q, qi);
    if (unoriented) best = std::min({best, b.p - b.q, b.p - qi});
    return {b.p, best};
}

bool two_bridge_equivalent(const Fraction& a, const Fraction& b) {
    return two_bridge_canonical(two_bridge_of(a), true) == two_bridge_canonical(two_bridge_of(b), true);
}

bool two_bridge_equivalent_oriented(const Fraction& a, const Fraction& b) {
    return two_bridge_canonical(two_bridge_of(a), false) == two_bridge_canonical(two_bridge_of(b), false);
}

int two_bridge_crossings(const TwoBridge& b) {
    if (b.p <= 1) return 0;
    return cf_sum_positive(b.p, b.q);
}

Fraction family_row_fraction(i64 a, i64 b) {
    i64 absa = a < 0 ? -a : a;
    i64 d = a * b - absa + 1;
    if (d == 0) return Fraction::infinity();
    return Fraction(a, d);
}

int montesinos_crossings(const MontesinosLink& m) {
    int c = 0;
    for (const auto& f : m.tangles) c += cf_sum_positive(f.den, f.num);
    const i64 k = static_cast<i64>(m.tangles.size());
    if (m.e >= 0) return c + static_cast<int>(m.e);
    return c + static_cast<int>(std::max<i64>(0, -m.e - k));
}

int Summand::crossings() const { return rational ? two_bridge_crossings(bridge) : montesinos_crossings(mont); }

int ClosureForm::crossings() const {
    int c = 0;
    for (const auto& piece : pieces)
        for (const auto& s : piece) c += s.crossings();
    return c;
}

namespace {

// Adds the link N(f) (a 2-bridge link) as a new piece, or as free loops when trivial.
void add_two_bridge_piece(ClosureForm& cf, const TwoBridge& b) {
    if (b.p == 0) cf.free_loops += 2;
    else if (b.p == 1) cf.free_loops += 1;
    else cf.pieces.push_back({Summand{true, b, {}}});
}

// N(x + y) for two rational tangles.  Horizontal twists of y merge into x; vertical
// twists of y slide around the closure onto the bottom of x.
TwoBridge two_tangle_closure(Fraction x, Fraction y) {
    while (true) {
        if (y.is_infinite()) return two_bridge_of(-x.reciprocal());
        if (y.is_integer()) return two_bridge_of(x + y);
        i64 h = y.floor();
        x = x + Fraction(h);
        y = y - Fraction(h);
        Fraction w = y.reciprocal();
        i64 k = w.floor();
        Fraction rest = w - Fraction(k);
        y = rest.reciprocal();
        x = (x.reciprocal() + Fraction(k)).reciprocal();
    }
}

}  // namespace

ClosureForm numerator_closure(const std::vector<Fraction>& tangles) {
    for (std::size_t j = 0; j < tangles.size(); ++j) {
        if (!tangles[j].is_infinite()) continue;
        std::vector<Fraction> rest(tangles.begin() + static_cast<long>(j) + 1, tangles.end());
        rest.insert(rest.end(), tangles.begin(), tangles.begin() + static_cast<long>(j));
        return denominator_closure(rest);
    }
    ClosureForm cf;
    i64 e = 0;
    std::vector<Fraction> frac;
    for (const auto& f : tangles) {
        i64 fl = f.floor();
        e += fl;
        Fraction rem = f - Fraction(fl);
        if (rem.num != 0) frac.push_back(rem);
    }
    if (frac.size() <= 1) {
        Fraction v(e);
        if (!frac.empty()) v = v + frac[0];
        add_two_bridge_piece(cf, two_bridge_of(v));
    } else if (frac.size() == 2) {
        add_two_bridge_piece(cf, two_tangle_closure(frac[0] + Fraction(e), frac[1]));
    } else {
        Summand s;
        s.rational = false;
        s.mont.tangles = frac;
        s.mont.e = e;
        cf.pieces.push_back({s});
    }
    return cf;
}

ClosureForm denominator_closure(const std::vector<Fraction>& tangles) {
    ClosureForm cf;
    std::vector<std::vector<Fraction>> groups(1);
    for (const auto& f : tangles) {
        if (f.is_infinite()) groups.emplace_back();
        else groups.back().push_back(f);
    }
    for (const auto& g : groups) {
        // D(X1 + ... + Xk) is the connected sum of the 2-bridge links N(-1/Xi).
        std::vector<Summand> piece;
        int extra_loops = 0;
        for (const auto& f : g) {
            TwoBridge b = two_bridge_of(-f.reciprocal());
            if (b.p == 1) continue;
            if (b.p == 0) {
                ++extra_loops;  // summing with a split 2-component unlink leaves a loose circle
                continue;
            }
            piece.push_back(Summand{true, b, {}});
        }
        if (piece.empty()) cf.free_loops += 1;
        else cf.pieces.push_back(piece);
        cf.free_loops += extra_loops;
    }
    return cf;
}

ClosureForm mirror_closure(const ClosureForm& cf) {
    ClosureForm r = cf;
    for (auto& piece : r.pieces)
        for (auto& s : piece) {
            if (s.rational) {
                s.bridge = two_bridge_mirror(s.bridge);
                continue;
            }
            for (auto& f : s.mont.tangles) f = Fraction(1) - f;
            s.mont.e = -s.mont.e - static_cast<i64>(s.mont.tangles.size());
        }
    return r;
}

namespace {

std::string summand_key(const Summand& s) {
    if (s.rational) {
        TwoBridge b = two_bridge_canonical(s.bridge, false);
        return "B" + std::to_string(b.p) + "/" + std::to_string(b.q);
    }
    const auto& t = s.mont.tangles;
    std::vector<std::pair<i64, i64>> best;
    const std::size_t m = t.size();
    for (int dir = 0; dir < 2; ++dir)
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<std::pair<i64, i64>> seq;
            for (std::size_t i = 0; i < m; ++i) {
                const Fraction& f = dir == 0 ? t[(k + i) % m] : t[(k + m - i) % m];
                seq.push_back({f.den, f.num});
            }
            if (best.empty() || seq < best) best = seq;
        }
    std::string key = "M" + std::to_string(s.mont.e);
    for (auto [d, n] : best) key += ":" + std::to_string(n) + "/" + std::to_string(d);
    return key;
}

}  // namespace

std::string closure_key(const ClosureForm& cf) {
    std::vector<std::string> pieces;
    for (const auto& piece : cf.pieces) {
        std::vector<std::string> parts;
        for (const auto& s : piece) parts.push_back(summand_key(s));
        std::sort(parts.begin(), parts.end());
        std::string k;
        for (std::size_t i = 0; i < parts.size(); ++i) k += (i ? "#" : "") + parts[i];
        pieces.push_back(k);
    }
    std::sort(pieces.begin(), pieces.end());
    std::string key;
    for (std::size_t i = 0; i < pieces.size(); ++i) key += (i ? " | " : "") + pieces[i];
    if (key.empty()) key = "O";
    return key + " +" + std::to_string(cf.free_loops);
}

std::string unoriented_closure_key(const ClosureForm& cf) {
    std::string a = closure_key(cf), b = closure_key(mirror_closure(cf));
    return std::min(a, b);
}

}  // namespace twistrec
