#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace twistrec {

// Laurent polynomial in one variable with integer coefficients.
// Dense storage: coefficient of x^(lo + i) is c[i]; zero polynomial has empty c.
class LaurentPoly {
public:
    LaurentPoly() = default;
    static LaurentPoly monomial(int exp, std::int64_t coeff = 1);
    static LaurentPoly from_terms(const std::map<int, std::int64_t>& terms);

    bool is_zero() const { return c_.empty(); }
    int min_exp() const { return lo_; }
    int max_exp() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    int span() const { return is_zero() ? 0 : max_exp() - min_exp(); }
    std::int64_t coeff(int exp) const;
    std::map<int, std::int64_t> terms() const;

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly operator+(const LaurentPoly& o) const { LaurentPoly r = *this; r += o; return r; }
    LaurentPoly operator-(const LaurentPoly& o) const { LaurentPoly r = *this; r -= o; return r; }
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    bool operator==(const LaurentPoly& o) const { return lo_ == o.lo_ && c_ == o.c_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
    bool operator<(const LaurentPoly& o) const;

    LaurentPoly shifted(int k) const;          // multiply by x^k
    LaurentPoly scaled_exponents(int k) const; // x -> x^k (k may be negative)
    LaurentPoly divided_exponents(int k) const; // x^(e) -> x^(e/k); requires k | e
    LaurentPoly inverted() const { return scaled_exponents(-1); }

    // Exact division; returns false if o does not divide *this.
    bool divide_exact(const LaurentPoly& o, LaurentPoly& quotient) const;

    // Representative up to units +-x^k: lowest exponent 0, leading coefficient positive.
    LaurentPoly unit_normalized() const;

    std::string to_string(const std::string& var = "A") const;

private:
    void trim();
    int lo_ = 0;
    std::vector<std::int64_t> c_;
};

}  // namespace twistrec
