#include "twistrec/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twistrec {

LaurentPoly LaurentPoly::monomial(int exp, std::int64_t coeff) {
    LaurentPoly p;
    if (coeff != 0) {
        p.lo_ = exp;
        p.c_.assign(1, coeff);
    }
    return p;
}

LaurentPoly LaurentPoly::from_terms(const std::map<int, std::int64_t>& terms) {
    LaurentPoly p;
    for (auto [e, v] : terms) p += monomial(e, v);
    return p;
}

std::int64_t LaurentPoly::coeff(int exp) const {
    if (is_zero() || exp < lo_ || exp > max_exp()) return 0;
    return c_[static_cast<std::size_t>(exp - lo_)];
}

std::map<int, std::int64_t> LaurentPoly::terms() const {
    std::map<int, std::int64_t> t;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) t[lo_ + static_cast<int>(i)] = c_[i];
    return t;
}

void LaurentPoly::trim() {
    std::size_t a = 0;
    while (a < c_.size() && c_[a] == 0) ++a;
    if (a == c_.size()) {
        c_.clear();
        lo_ = 0;
        return;
    }
    std::size_t b = c_.size();
    while (c_[b - 1] == 0) --b;
    if (a > 0 || b < c_.size()) {
        c_ = std::vector<std::int64_t>(c_.begin() + static_cast<long>(a), c_.begin() + static_cast<long>(b));
        lo_ += static_cast<int>(a);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    int lo = std::min(lo_, o.lo_);
    int hi = std::max(max_exp(), o.max_exp());
    std::vector<std::int64_t> r(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[static_cast<std::size_t>(lo_ - lo) + i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[static_cast<std::size_t>(o.lo_ - lo) + i] += o.c_[i];
    lo_ = lo;
    c_ = std::move(r);
    trim();
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    LaurentPoly r;
    if (is_zero() || o.is_zero()) return r;
    r.lo_ = lo_ + o.lo_;
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    }
    r.trim();
    return r;
}

bool LaurentPoly::operator<(const LaurentPoly& o) const {
    if (lo_ != o.lo_) return lo_ < o.lo_;
    return c_ < o.c_;
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.lo_ += k;
    return r;
}

LaurentPoly LaurentPoly::scaled_exponents(int k) const {
    if (k == 0) throw std::invalid_argument("scaled_exponents: k = 0");
    std::map<int, std::int64_t> t;
    for (auto [e, v] : terms()) t[e * k] += v;
    return from_terms(t);
}

LaurentPoly LaurentPoly::divided_exponents(int k) const {
    std::map<int, std::int64_t> t;
    for (auto [e, v] : terms()) {
        if (e % k != 0) throw std::invalid_argument("divided_exponents: exponent not divisible");
        t[e / k] += v;
    }
    return from_terms(t);
}

bool LaurentPoly::divide_exact(const LaurentPoly& o, LaurentPoly& quotient) const {
    if (o.is_zero()) return false;
    quotient = LaurentPoly();
    if (is_zero()) return true;
    LaurentPoly rem = *this;
    const std::int64_t lead = o.c_.back();
    const int odeg = o.max_exp();
    while (!rem.is_zero()) {
        if (rem.span() < o.span()) return false;
        std::int64_t top = rem.c_.back();
        if (top % lead != 0) return false;
        LaurentPoly term = monomial(rem.max_exp() - odeg, top / lead);
        quotient += term;
        rem -= term * o;
    }
    return true;
}

LaurentPoly LaurentPoly::unit_normalized() const {
    if (is_zero()) return *this;
    LaurentPoly r = shifted(-lo_);
    if (r.c_.back() < 0) r = -r;
    return r;
}

std::string LaurentPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
        std::int64_t v = c_[static_cast<std::size_t>(i)];
        if (v == 0) continue;
        int e = lo_ + i;
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        std::int64_t a = v < 0 ? -v : v;
        if (a != 1 || e == 0) os << a;
        if (e != 0) {
            if (a != 1) os << "*";
            os << var;
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

}  // namespace twistrec
