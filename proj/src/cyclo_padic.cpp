#include "etnckit/cyclo_padic.hpp"

#include <stdexcept>

namespace etnckit {

CycloPadicRing::CycloPadicRing(UnramifiedRing base, unsigned level)
    : base_(std::move(base)), level_(level) {
    if (level_ == 0) throw std::invalid_argument("CycloPadicRing: level must be >= 1");
    pn_ = pow_u64(base_.p(), level_);
    rank_ = pn_ - pn_ / base_.p();
}

CycloPadicRing::Elt CycloPadicRing::one() const {
    Elt e = zero();
    e[0] = 1 % modulus();
    return e;
}

CycloPadicRing::Elt CycloPadicRing::from_base(const OElt& c) const {
    Elt e = zero();
    unsigned r = base_.degree();
    for (unsigned i = 0; i < r; ++i) e[i] = c[i];
    return e;
}

void CycloPadicRing::add_monomial(Elt& acc, uint64_t e, const OElt& c, bool negate) const {
    unsigned r = base_.degree();
    uint64_t mod = modulus();
    e %= pn_;
    if (e < rank_) {
        uint64_t* t = acc.data() + e * r;
        for (unsigned i = 0; i < r; ++i)
            t[i] = negate ? submod_u64(t[i], c[i], mod) : addmod_u64(t[i], c[i], mod);
        return;
    }
    uint64_t k = e - rank_;                       // < p^{n-1}
    uint64_t step = pn_ / base_.p();              // p^{n-1}
    for (uint64_t ii = 0; ii + 1 < base_.p(); ++ii) {
        uint64_t* t = acc.data() + (k + ii * step) * r;
        for (unsigned i = 0; i < r; ++i)
            t[i] = negate ? addmod_u64(t[i], c[i], mod) : submod_u64(t[i], c[i], mod);
    }
}

CycloPadicRing::Elt CycloPadicRing::monomial(uint64_t e, const OElt& c) const {
    Elt a = zero();
    add_monomial(a, e, c);
    return a;
}

bool CycloPadicRing::is_zero(const Elt& a) const {
    for (uint64_t c : a)
        if (c) return false;
    return true;
}

CycloPadicRing::Elt CycloPadicRing::add(const Elt& a, const Elt& b) const {
    Elt c(a.size());
    uint64_t mod = modulus();
    for (size_t i = 0; i < a.size(); ++i) c[i] = addmod_u64(a[i], b[i], mod);
    return c;
}

CycloPadicRing::Elt CycloPadicRing::sub(const Elt& a, const Elt& b) const {
    Elt c(a.size());
    uint64_t mod = modulus();
    for (size_t i = 0; i < a.size(); ++i) c[i] = submod_u64(a[i], b[i], mod);
    return c;
}

CycloPadicRing::Elt CycloPadicRing::neg(const Elt& a) const {
    Elt c(a.size());
    uint64_t mod = modulus();
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] ? mod - a[i] : 0;
    return c;
}

CycloPadicRing::Elt CycloPadicRing::mul(const Elt& a, const Elt& b) const {
    unsigned r = base_.degree();
    Elt c = zero();
    OElt prod(r);
    for (uint64_t ma = 0; ma < rank_; ++ma) {
        const uint64_t* pa = a.data() + ma * r;
        bool za = true;
        for (unsigned i = 0; i < r; ++i) za = za && !pa[i];
        if (za) continue;
        OElt ca(pa, pa + r);
        for (uint64_t mb = 0; mb < rank_; ++mb) {
            const uint64_t* pb = b.data() + mb * r;
            bool zb = true;
            for (unsigned i = 0; i < r; ++i) zb = zb && !pb[i];
            if (zb) continue;
            OElt cb(pb, pb + r);
            add_monomial(c, ma + mb, base_.mul(ca, cb));
        }
    }
    return c;
}

CycloPadicRing::Elt CycloPadicRing::mul_base(const Elt& a, const OElt& s) const {
    unsigned r = base_.degree();
    Elt c = zero();
    OElt t(r);
    for (uint64_t m = 0; m < rank_; ++m) {
        const uint64_t* pa = a.data() + m * r;
        OElt ca(pa, pa + r);
        t = base_.mul(ca, s);
        for (unsigned i = 0; i < r; ++i) c[m * r + i] = t[i];
    }
    return c;
}

CycloPadicRing::Elt CycloPadicRing::mul_scalar(const Elt& a, uint64_t s) const {
    uint64_t mod = modulus();
    s %= mod;
    Elt c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = mulmod_u64(a[i], s, mod);
    return c;
}

CycloPadicRing::Elt CycloPadicRing::mul_y_pow(const Elt& a, uint64_t e) const {
    unsigned r = base_.degree();
    Elt c = zero();
    for (uint64_t m = 0; m < rank_; ++m) {
        const uint64_t* pa = a.data() + m * r;
        bool za = true;
        for (unsigned i = 0; i < r; ++i) za = za && !pa[i];
        if (za) continue;
        add_monomial(c, m + e, OElt(pa, pa + r));
    }
    return c;
}

CycloPadicRing::Elt CycloPadicRing::galois(const Elt& a, uint64_t u) const {
    unsigned r = base_.degree();
    u %= pn_;
    if (u == 0 || u % base_.p() == 0)
        throw std::invalid_argument("CycloPadicRing::galois: exponent not a unit");
    Elt c = zero();
    for (uint64_t m = 0; m < rank_; ++m) {
        const uint64_t* pa = a.data() + m * r;
        bool za = true;
        for (unsigned i = 0; i < r; ++i) za = za && !pa[i];
        if (za) continue;
        add_monomial(c, (u * m) % pn_, OElt(pa, pa + r));
    }
    return c;
}

CycloPadicRing::Elt CycloPadicRing::frobenius(const Elt& a, int64_t k) const {
    unsigned r = base_.degree();
    if (r == 1) return a;
    Elt c(a.size());
    for (uint64_t m = 0; m < rank_; ++m) {
        const uint64_t* pa = a.data() + m * r;
        OElt t = base_.frobenius_iter(OElt(pa, pa + r), k);
        for (unsigned i = 0; i < r; ++i) c[m * r + i] = t[i];
    }
    return c;
}

void CycloPadicRing::accumulate_twisted(Elt& acc, const Elt& a, uint64_t perm,
                                        uint64_t y_shift, uint64_t scalar) const {
    unsigned r = base_.degree();
    uint64_t mod = modulus();
    scalar %= mod;
    OElt c(r);
    for (uint64_t m = 0; m < rank_; ++m) {
        const uint64_t* pa = a.data() + m * r;
        bool za = true;
        for (unsigned i = 0; i < r; ++i) za = za && !pa[i];
        if (za) continue;
        for (unsigned i = 0; i < r; ++i) c[i] = mulmod_u64(pa[i], scalar, mod);
        add_monomial(acc, (perm * m + y_shift) % pn_, c);
    }
}

CycloPadicRing::Elt CycloPadicRing::inverse(const Elt& a) const {
    unsigned r = base_.degree();
    uint64_t d = rank_;
    // multiplication matrix column j = a * y^j, entries in O
    std::vector<std::vector<OElt>> m(d, std::vector<OElt>(d, base_.zero()));
    Elt col = a;
    for (uint64_t j = 0; j < d; ++j) {
        for (uint64_t i = 0; i < d; ++i) {
            const uint64_t* pc = col.data() + i * r;
            m[i][j] = OElt(pc, pc + r);
        }
        if (j + 1 < d) col = mul_y_pow(col, 1);
    }
    std::vector<OElt> rhs(d, base_.zero());
    rhs[0] = base_.one();
    // Gaussian elimination over O, unit pivots only
    std::vector<uint64_t> perm(d);
    for (uint64_t i = 0; i < d; ++i) perm[i] = i;
    for (uint64_t colj = 0; colj < d; ++colj) {
        uint64_t piv = d;
        for (uint64_t i = colj; i < d; ++i)
            if (base_.is_unit(m[i][colj])) { piv = i; break; }
        if (piv == d)
            throw std::domain_error("CycloPadicRing::inverse: no unit pivot (not invertible at precision)");
        std::swap(m[piv], m[colj]);
        std::swap(rhs[piv], rhs[colj]);
        OElt inv = base_.inverse(m[colj][colj]);
        for (uint64_t jj = colj; jj < d; ++jj) m[colj][jj] = base_.mul(m[colj][jj], inv);
        rhs[colj] = base_.mul(rhs[colj], inv);
        for (uint64_t i = 0; i < d; ++i) {
            if (i == colj || base_.is_zero(m[i][colj])) continue;
            OElt f = m[i][colj];
            for (uint64_t jj = colj; jj < d; ++jj)
                m[i][jj] = base_.sub(m[i][jj], base_.mul(f, m[colj][jj]));
            rhs[i] = base_.sub(rhs[i], base_.mul(f, rhs[colj]));
        }
    }
    Elt x = zero();
    for (uint64_t i = 0; i < d; ++i)
        for (unsigned k = 0; k < r; ++k) x[i * r + k] = rhs[i][k];
    return x;
}

CycloPadicRing::Elt CycloPadicRing::include_from(const CycloPadicRing& low, const Elt& a) const {
    if (!base_.same_field(low.base_) || low.level_ > level_ ||
        low.base_.precision() != base_.precision())
        throw std::invalid_argument("include_from: incompatible rings");
    uint64_t w = pn_ / low.pn_;                  // p^{level - low.level}
    unsigned r = base_.degree();
    Elt c = zero();
    for (uint64_t m = 0; m < low.rank_; ++m) {
        const uint64_t* pa = a.data() + m * r;
        for (unsigned i = 0; i < r; ++i) c[m * w * r + i] = pa[i];
    }
    return c;
}

CycloPadicRing::OElt CycloPadicRing::trace_level1_to_base(const Elt& a) const {
    if (level_ != 1)
        throw std::invalid_argument("trace_level1_to_base: level must be 1");
    unsigned r = base_.degree();
    // Tr(c_0) = (p-1)c_0; Tr(c_m y^m) = -c_m for 1 <= m <= p-2
    OElt head(a.data(), a.data() + r);
    OElt acc = base_.mul_scalar(head, base_.p() - 1);
    for (uint64_t m = 1; m < rank_; ++m) {
        const uint64_t* pa = a.data() + m * r;
        acc = base_.sub(acc, OElt(pa, pa + r));
    }
    return acc;
}

CycloPadicRing::Elt CycloPadicRing::eval_poly_at_ypow_minus1(const std::vector<OElt>& coeffs,
                                                             uint64_t w) const {
    Elt acc = zero();
    Elt zpow = one();
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) zpow = sub(mul_y_pow(zpow, w), zpow);   // * (y^w - 1)
        if (!base_.is_zero(coeffs[k]))
            acc = add(acc, mul_base(zpow, coeffs[k]));
    }
    return acc;
}

unsigned CycloPadicRing::valuation(const Elt& a) const {
    unsigned v = base_.precision();
    uint64_t p = base_.p();
    for (uint64_t c : a) {
        if (!c) continue;
        unsigned vc = val_p_u64(c, p);
        if (vc < v) v = vc;
        if (v == 0) break;
    }
    return v;
}

CycloPadicRing::Elt CycloPadicRing::divide_exact_p(const Elt& a, unsigned k) const {
    uint64_t pk = pow_u64(base_.p(), k);
    Elt c(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] % pk) throw std::domain_error("CycloPadicRing::divide_exact_p: not divisible");
        c[i] = a[i] / pk;
    }
    return c;
}

CycloPadicRing::Elt CycloPadicRing::convert_from(const CycloPadicRing& src, const Elt& a) const {
    if (!base_.same_field(src.base_) || level_ != src.level_)
        throw std::invalid_argument("convert_from: different rings");
    uint64_t mod = modulus();
    Elt c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] % mod;
    return c;
}

bool shifted_equal_mod(const CycloPadicRing& ring, const ShiftedElt& a,
                       const ShiftedElt& b, unsigned m) {
    unsigned need = m + a.shift + b.shift;
    if (need > ring.base().precision())
        throw std::domain_error("shifted_equal_mod: ring precision cannot certify the congruence");
    uint64_t pm = pow_u64(ring.base().p(), need);
    uint64_t sa = pow_u64(ring.base().p(), b.shift);
    uint64_t sb = pow_u64(ring.base().p(), a.shift);
    for (size_t i = 0; i < a.v.size(); ++i) {
        uint64_t lhs = mulmod_u64(a.v[i] % pm, sa % pm, pm);
        uint64_t rhs = mulmod_u64(b.v[i] % pm, sb % pm, pm);
        if (lhs != rhs) return false;
    }
    return true;
}

} // namespace etnckit
