#pragma once

#include "etnckit/unramified.hpp"

#include <cstdint>
#include <vector>

namespace etnckit {

// A = O[y]/Phi_{p^n}(y) where O is an unramified ring mod p^N: the p-adic
// model of the level-n cyclotomic extension.  Elements are flat coefficient
// arrays of length rank * r on the basis {y^m x^i : m < rank, i < r}, entry
// [m*r + i], with rank = (p-1)p^{n-1}.  A monomial y^e with e >= rank reduces
// by y^rank = -(sum of y^{k + i p^{n-1}}, i < p-1) where k = e - rank; the
// reduction has p-1 terms and never cascades.
class CycloPadicRing {
public:
    using OElt = UnramifiedRing::Elt;
    using Elt = std::vector<uint64_t>;

    CycloPadicRing(UnramifiedRing base, unsigned level);

    const UnramifiedRing& base() const { return base_; }
    unsigned level() const { return level_; }
    uint64_t rank() const { return rank_; }
    uint64_t pn() const { return pn_; }          // p^level
    uint64_t modulus() const { return base_.modulus(); }

    Elt zero() const { return Elt(rank_ * base_.degree(), 0); }
    Elt one() const;
    Elt from_base(const OElt& c) const;
    Elt monomial(uint64_t e, const OElt& c) const;

    // acc += (-1)^negate * c * y^e, exponent taken mod p^level
    void add_monomial(Elt& acc, uint64_t e, const OElt& c, bool negate = false) const;

    bool is_zero(const Elt& a) const;
    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt mul_base(const Elt& a, const OElt& c) const;   // coefficientwise O-mult
    Elt mul_scalar(const Elt& a, uint64_t s) const;
    Elt mul_y_pow(const Elt& a, uint64_t e) const;     // shift-and-reduce

    // y -> y^u for u a unit mod p^level; coefficients fixed
    Elt galois(const Elt& a, uint64_t u) const;
    // coefficientwise Frobenius sigma^k of the base ring; y fixed
    Elt frobenius(const Elt& a, int64_t k = 1) const;

    // acc += scalar * y^{y_shift} * (y^m -> y^{perm*m} applied to a);
    // the fused inner step of an idempotent resolvent
    void accumulate_twisted(Elt& acc, const Elt& a, uint64_t perm, uint64_t y_shift,
                            uint64_t scalar) const;

    // linear solve against the multiplication matrix; requires a unit pivot in
    // every column (throws otherwise)
    Elt inverse(const Elt& a) const;

    // inclusion from a lower level over the same base: y_low -> y^{p^{dn}}
    Elt include_from(const CycloPadicRing& low, const Elt& a) const;

    // trace of A_1 down to O: Tr(y^0) = p-1, Tr(y^m) = -1 otherwise
    OElt trace_level1_to_base(const Elt& a) const;

    // sum_k coeffs[k] * (y^w - 1)^k via an iterated shift-subtract power table
    Elt eval_poly_at_ypow_minus1(const std::vector<OElt>& coeffs, uint64_t w) const;

    unsigned valuation(const Elt& a) const;            // min coordinate valuation
    Elt divide_exact_p(const Elt& a, unsigned k) const;
    Elt convert_from(const CycloPadicRing& src, const Elt& a) const;  // precision move

    bool same_ring(const CycloPadicRing& o) const {
        return base_.same_field(o.base_) && level_ == o.level_ &&
               base_.precision() == o.base_.precision();
    }

private:
    UnramifiedRing base_;
    unsigned level_;
    uint64_t rank_;
    uint64_t pn_;
};

// a / p^shift for a in the ambient ring; comparisons align shifts first
struct ShiftedElt {
    CycloPadicRing::Elt v;
    unsigned shift = 0;
};

// a = b mod p^m after clearing denominators; needs ring precision at least
// m + a.shift + b.shift (throws when the precision cannot certify)
bool shifted_equal_mod(const CycloPadicRing& ring, const ShiftedElt& a,
                       const ShiftedElt& b, unsigned m);

} // namespace etnckit
