#pragma once

#include "etnckit/zmodpn.hpp"

#include <cstdint>
#include <vector>

#include "json.hpp"

namespace etnckit {

// W(F_{p^r})/p^N: the unramified extension of Z/p^N of degree r, realized as
// (Z/p^N)[x]/(f) for a monic lift f of a fixed irreducible polynomial mod p.
// Elements are coefficient vectors of length r on the power basis of x, each
// entry reduced mod p^N.  The defining polynomial has coefficients < p, so the
// same integer polynomial serves every precision and changing precision is a
// plain coefficient reduction or zero-extension.
class UnramifiedRing {
public:
    using Elt = std::vector<uint64_t>;

    UnramifiedRing(uint64_t p, unsigned r, unsigned precision);

    uint64_t p() const { return p_; }
    unsigned degree() const { return r_; }
    unsigned precision() const { return n_; }
    uint64_t modulus() const { return mod_; }   // p^precision
    // low-order coefficients (c_0..c_{r-1}) of the monic defining polynomial
    const std::vector<uint64_t>& defining_poly() const { return f_; }

    Elt zero() const { return Elt(r_, 0); }
    Elt one() const;
    Elt gen() const;                       // the power-basis generator x
    Elt from_int(int64_t c) const;         // image of an integer
    bool is_zero(const Elt& a) const;
    bool equal(const Elt& a, const Elt& b) const { return a == b; }

    Elt add(const Elt& a, const Elt& b) const;
    Elt sub(const Elt& a, const Elt& b) const;
    Elt neg(const Elt& a) const;
    Elt mul(const Elt& a, const Elt& b) const;
    Elt mul_scalar(const Elt& a, uint64_t c) const;
    Elt pow(const Elt& a, uint64_t e) const;

    // a is invertible iff its residue mod p is nonzero in F_{p^r}
    bool is_unit(const Elt& a) const;
    Elt inverse(const Elt& a) const;       // residue-field Fermat + Hensel lifting

    // the ring automorphism lifting c -> c^p on the residue field
    Elt frobenius(const Elt& a) const;
    Elt frobenius_iter(const Elt& a, int64_t k) const;   // sigma^k, any sign

    // sum of sigma^{d i}(a) over i < r/d; requires d | r
    Elt trace_partial(const Elt& a, unsigned d) const;
    uint64_t trace(const Elt& a) const;    // full trace; asserts result in Z/p^N
    uint64_t norm(const Elt& a) const;     // product of conjugates; same assertion

    // multiplicative representative: the unique root of t^{p^r} = t congruent to a mod p
    Elt teichmuller(const Elt& a) const;

    // p-adic valuation: min over coordinates (capped at precision)
    unsigned valuation(const Elt& a) const;
    // divide by p^k; throws unless every coordinate is divisible
    Elt divide_exact_p(const Elt& a, unsigned k) const;

    // coefficientwise move to another precision over the same (p, r):
    // reduction when target is lower, canonical zero-extension lift when higher
    Elt convert_from(const UnramifiedRing& source, const Elt& a) const;

    nlohmann::ordered_json elt_to_json(const Elt& a) const;
    Elt elt_from_json(const nlohmann::json& j) const;

    bool same_field(const UnramifiedRing& other) const {
        return p_ == other.p_ && r_ == other.r_;
    }

private:
    uint64_t p_ = 0;
    unsigned r_ = 0;
    unsigned n_ = 0;
    uint64_t mod_ = 0;
    std::vector<uint64_t> f_;                    // low coeffs of monic modulus
    std::vector<std::vector<uint64_t>> redrow_;  // x^{r+k} on the basis, k = 0..r-2
    std::vector<std::vector<uint64_t>> frob_;    // column i = coords of sigma(x)^i

    void build_reduction_rows();
    void build_frobenius();
    Elt apply_matrix(const std::vector<std::vector<uint64_t>>& m, const Elt& a) const;
};

// log of a 1-unit (u = 1 mod p), exact mod p^precision.  Internally runs at a
// padded precision so the divisions by k in sum (-1)^{k+1}(u-1)^k/k are exact.
UnramifiedRing::Elt padic_log(const UnramifiedRing& ring, const UnramifiedRing::Elt& u);

// irreducibility of a monic polynomial over F_p given its low coefficients
bool is_irreducible_mod_p(const std::vector<uint64_t>& low_coeffs, uint64_t p);

} // namespace etnckit
