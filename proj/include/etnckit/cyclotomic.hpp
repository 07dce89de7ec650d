#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "etnckit/rational.hpp"

namespace etnckit {

// Element of Q(zeta_N) on the power basis {zeta_N^i : 0 <= i < phi(N)},
// kept reduced modulo the N-th cyclotomic polynomial. Arithmetic between
// different orders promotes both operands to the lcm order first.
class CyclotomicNumber {
  public:
    CyclotomicNumber() : order_(1), c_(1) {}
    explicit CyclotomicNumber(const Rational& q) : order_(1), c_{q} {}
    explicit CyclotomicNumber(long v) : order_(1), c_{Rational(v)} {}
    CyclotomicNumber(uint64_t order, std::vector<Rational> coeffs);

    // zeta_N^k, k taken mod N.
    static CyclotomicNumber root_of_unity(uint64_t N, int64_t k);
    static CyclotomicNumber zero() { return CyclotomicNumber(); }
    static CyclotomicNumber one() { return CyclotomicNumber(Rational(1)); }

    uint64_t order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    // Requires is_rational(); constant coordinate after normalization.
    Rational rational_value() const;

    // Re-expresses the element at a multiple kN of its order; the value is unchanged.
    CyclotomicNumber embed_to_order(uint64_t target) const;
    // Reduces to the smallest cyclotomic field containing the value.
    CyclotomicNumber normalized() const;

    CyclotomicNumber operator-() const;
    CyclotomicNumber operator+(const CyclotomicNumber& o) const;
    CyclotomicNumber operator-(const CyclotomicNumber& o) const;
    CyclotomicNumber operator*(const CyclotomicNumber& o) const;
    CyclotomicNumber operator/(const CyclotomicNumber& o) const;
    CyclotomicNumber inverse() const;
    CyclotomicNumber& operator+=(const CyclotomicNumber& o) { return *this = *this + o; }
    CyclotomicNumber& operator-=(const CyclotomicNumber& o) { return *this = *this - o; }
    CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

    bool operator==(const CyclotomicNumber& o) const;
    bool operator!=(const CyclotomicNumber& o) const { return !(*this == o); }

    // Galois twist zeta -> zeta^a; a must be coprime to the order.
    CyclotomicNumber galois(int64_t a) const;
    // Complex conjugation (zeta -> zeta^{-1}).
    CyclotomicNumber conj() const { return galois(-1); }
    CyclotomicNumber pow(int64_t e) const;

    // In-place accumulation of coeff * zeta_{order}^k; the element's order is fixed.
    void add_monomial(int64_t k, const Rational& coeff);

    // Embedding zeta_N -> exp(2*pi*i*a/N).
    std::complex<double> to_complex(int64_t a = 1) const;

    std::string to_string() const;
    // {"order": N, "coeffs": ["p/q", ...]}
    std::string to_json() const;
    static CyclotomicNumber from_json(const std::string& j);

    // Integer coefficients of Phi_N, ascending degree, monic.
    static const std::vector<Integer>& cyclotomic_polynomial(uint64_t N);

  private:
    uint64_t order_;
    std::vector<Rational> c_;

    void reduce_from(std::vector<Rational>& poly);  // poly has degree < order_
    friend CyclotomicNumber mul_same_order(const CyclotomicNumber& a, const CyclotomicNumber& b);
};

inline CyclotomicNumber operator*(const Rational& s, const CyclotomicNumber& x) {
    return CyclotomicNumber(s) * x;
}

}  // namespace etnckit
