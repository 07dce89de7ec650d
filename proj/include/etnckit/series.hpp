#pragma once

#include "etnckit/rng.hpp"
#include "etnckit/unramified.hpp"

#include <cstdint>
#include <vector>

#include "json.hpp"

namespace etnckit {

// Element of O[T]/(T^M, p^N) where O is an unramified ring.  Coefficient
// vectors are the polynomial representatives; the T-precision is c.size().
// Binary operations harmonize both precisions to the operands' minimum.
struct TruncatedSeries {
    UnramifiedRing ring;
    std::vector<UnramifiedRing::Elt> c;

    TruncatedSeries(UnramifiedRing r, unsigned m)
        : ring(std::move(r)), c(m, std::vector<uint64_t>(ring.degree(), 0)) {}
    TruncatedSeries(UnramifiedRing r, std::vector<UnramifiedRing::Elt> coeffs)
        : ring(std::move(r)), c(std::move(coeffs)) {}

    unsigned tprec() const { return static_cast<unsigned>(c.size()); }
    const UnramifiedRing::Elt& at(unsigned i) const { return c[i]; }
    bool is_zero() const;
};

TruncatedSeries series_zero(const UnramifiedRing& ring, unsigned m);
TruncatedSeries series_one(const UnramifiedRing& ring, unsigned m);
TruncatedSeries series_t(const UnramifiedRing& ring, unsigned m);

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_neg(const TruncatedSeries& a);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_scalar_mul(const TruncatedSeries& a, const UnramifiedRing::Elt& s);
TruncatedSeries series_truncate(const TruncatedSeries& a, unsigned m);
bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b);

// multiplicative inverse; requires a(0) a unit
TruncatedSeries series_invert(const TruncatedSeries& a);

// f(g) truncated to out_m coefficients (default: f's precision).  Sound as an
// operation on series classes only when g(0) = 0; composition with a unit
// constant term is refused.
TruncatedSeries series_compose(const TruncatedSeries& f, const TruncatedSeries& g,
                               unsigned out_m = 0);

// (1+T)^e as sum_m C(e,m) T^m
TruncatedSeries one_plus_t_pow(const UnramifiedRing& ring, unsigned m, uint64_t e);

// coefficients on the (1+T)-power basis: f = sum_m b_m (1+T)^m.  The
// transform is triangular and unimodular, hence exact both ways.
std::vector<UnramifiedRing::Elt> to_u_basis(const TruncatedSeries& f);
TruncatedSeries from_u_basis(const UnramifiedRing& ring,
                             const std::vector<UnramifiedRing::Elt>& b);

// (phi f)(T) = f^sigma((1+T)^p - 1); out_m = 0 takes the exact polynomial
// image of degree p(M-1), a nonzero out_m truncates there
TruncatedSeries phi_op(const TruncatedSeries& f, unsigned out_m = 0);

// semilinear Galois action: f^{sigma^k}((1+T)^e - 1)
TruncatedSeries galois_act(uint64_t e, int64_t frob_power, const TruncatedSeries& f,
                           unsigned out_m = 0);

// D = (1+T) d/dT on polynomial representatives
TruncatedSeries d_op(const TruncatedSeries& f);

// trace-style left inverse of phi: on u-coordinates b'_m = sigma^{-1}(b_{pm}).
// Output T-precision is floor((M-1)/p)+1, the part determined by f mod T^M.
// With twist=false the coefficient Frobenius is omitted, so psi(phi(f)) = f^sigma.
TruncatedSeries psi_op(const TruncatedSeries& f, bool twist = true);

// sum over zeta in mu_p of f(zeta(1+T)-1) computed by exact polynomial
// composition over O[x]/(1+x+...+x^{p-1}); true iff every coefficient of
// T^m, m < M-1, vanishes mod p^N
bool r_membership(const TruncatedSeries& f);

// random element of the trace-kernel submodule: random u-coordinates
// supported on p-coprime indices
TruncatedSeries random_r_member(const UnramifiedRing& ring, unsigned m, Rng& rng);

nlohmann::ordered_json series_to_json(const TruncatedSeries& f);
TruncatedSeries series_from_json(const nlohmann::json& j);

} // namespace etnckit
