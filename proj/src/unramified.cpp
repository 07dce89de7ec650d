#include "etnckit/unramified.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace etnckit {

namespace {

// Conway polynomials (low coefficients, monic implied) for the small fields
// the verification grids touch; anything else falls back to the search below.
const std::map<std::pair<uint64_t, unsigned>, std::vector<uint64_t>>& conway_table() {
    static const std::map<std::pair<uint64_t, unsigned>, std::vector<uint64_t>> t = {
        {{3, 1}, {1}},
        {{3, 2}, {2, 2}},
        {{3, 3}, {1, 2, 0}},
        {{5, 1}, {3}},
        {{5, 2}, {2, 4}},
        {{5, 3}, {3, 3, 0}},
        {{7, 1}, {4}},
        {{7, 2}, {3, 6}},
    };
    return t;
}

// arithmetic on monic-degree-r residues mod (f, p), for the irreducibility test
using Poly = std::vector<uint64_t>;

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
    size_t r = f.size();
    std::vector<uint64_t> prod(2 * r - 1, 0);
    for (size_t i = 0; i < r; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < r; ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (size_t k = 2 * r - 2; k >= r; --k) {
        uint64_t c = prod[k];
        if (c) {
            uint64_t cneg = p - c;
            for (size_t i = 0; i < r; ++i)
                prod[k - r + i] = (prod[k - r + i] + cneg * f[i]) % p;
        }
        if (k == r) break;
    }
    prod.resize(r);
    return prod;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, uint64_t p) {
    size_t r = f.size();
    Poly acc(r, 0);
    acc[0] = 1 % p;
    while (e) {
        if (e & 1) acc = poly_mulmod(acc, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return acc;
}

Poly poly_xpow(uint64_t e, const Poly& f, uint64_t p) {
    size_t r = f.size();
    Poly base(r, 0);
    if (r == 1)
        base[0] = (p - f[0] % p) % p;   // x = -f_0 as a residue
    else
        base[1] = 1;
    return poly_powmod(base, e, f, p);
}

Poly poly_gcd_mod_p(Poly a, Poly b, uint64_t p) {
    auto deg = [](const Poly& q) -> int {
        for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i)
            if (q[i]) return i;
        return -1;
    };
    while (deg(b) >= 0) {
        int da = deg(a), db = deg(b);
        if (da < db) { std::swap(a, b); continue; }
        uint64_t c = mulmod_u64(a[da], inv_mod_u64(b[db], p), p);
        for (int i = 0; i <= db; ++i)
            a[da - db + i] = submod_u64(a[da - db + i], mulmod_u64(c, b[i], p), p);
        // recompute and loop; remainder chain terminates since deg drops
    }
    return a;
}

} // namespace

bool is_irreducible_mod_p(const std::vector<uint64_t>& low, uint64_t p) {
    unsigned r = static_cast<unsigned>(low.size());
    Poly f(low);
    for (auto& c : f) c %= p;
    if (r == 1) return true;
    // x^{p^r} = x in the residue ring
    Poly xq = poly_xpow(pow_u64(p, r), f, p);
    Poly x(r, 0);
    x[1] = 1;
    if (xq != x) return false;
    // no root field in any proper subfield: gcd(x^{p^{r/q}} - x, f) constant
    std::vector<unsigned> rad;
    unsigned m = r;
    for (unsigned d = 2; d * d <= m; ++d)
        if (m % d == 0) { rad.push_back(d); while (m % d == 0) m /= d; }
    if (m > 1) rad.push_back(m);
    for (unsigned q : rad) {
        Poly g = poly_xpow(pow_u64(p, r / q), f, p);
        g[1] = submod_u64(g[1], 1, p);
        Poly full(f);
        full.push_back(1);  // the monic head, so gcd is against f itself
        Poly gc = poly_gcd_mod_p(full, g, p);
        int dg = -1;
        for (int i = static_cast<int>(gc.size()) - 1; i >= 0; --i)
            if (gc[i]) { dg = i; break; }
        if (dg != 0) return false;
    }
    return true;
}

UnramifiedRing::UnramifiedRing(uint64_t p, unsigned r, unsigned precision)
    : p_(p), r_(r), n_(precision) {
    if (p < 2 || r == 0 || precision == 0)
        throw std::invalid_argument("UnramifiedRing: need p >= 2, r >= 1, precision >= 1");
    mod_ = pow_u64(p, precision);
    auto it = conway_table().find({p, r});
    if (it != conway_table().end()) {
        f_ = it->second;
    } else {
        // smallest monic polynomial with digits < p, ordered by sum c_i p^i,
        // that is irreducible mod p
        uint64_t limit = pow_u64(p, r);
        bool found = false;
        for (uint64_t code = 0; code < limit && !found; ++code) {
            std::vector<uint64_t> low(r);
            uint64_t c = code;
            for (unsigned i = 0; i < r; ++i) { low[i] = c % p; c /= p; }
            if (is_irreducible_mod_p(low, p)) { f_ = low; found = true; }
        }
        if (!found) throw std::logic_error("UnramifiedRing: no irreducible modulus found");
    }
    build_reduction_rows();
    build_frobenius();
}

void UnramifiedRing::build_reduction_rows() {
    if (r_ == 1) return;
    redrow_.assign(r_ - 1, std::vector<uint64_t>(r_, 0));
    // x^r = -f
    for (unsigned i = 0; i < r_; ++i)
        redrow_[0][i] = (mod_ - f_[i] % mod_) % mod_;
    for (unsigned k = 1; k + 1 < r_; ++k) {
        // multiply previous row by x
        const auto& prev = redrow_[k - 1];
        auto& row = redrow_[k];
        uint64_t top = prev[r_ - 1];
        for (unsigned i = r_ - 1; i >= 1; --i)
            row[i] = prev[i - 1];
        row[0] = 0;
        if (top)
            for (unsigned i = 0; i < r_; ++i)
                row[i] = addmod_u64(row[i], mulmod_u64(top, redrow_[0][i], mod_), mod_);
    }
}

UnramifiedRing::Elt UnramifiedRing::one() const {
    Elt e(r_, 0);
    e[0] = 1 % mod_;
    return e;
}

UnramifiedRing::Elt UnramifiedRing::gen() const {
    Elt e(r_, 0);
    if (r_ == 1)
        e[0] = (mod_ - f_[0] % mod_) % mod_;
    else
        e[1] = 1;
    return e;
}

UnramifiedRing::Elt UnramifiedRing::from_int(int64_t c) const {
    Elt e(r_, 0);
    int64_t m = static_cast<int64_t>(mod_);
    int64_t v = c % m;
    if (v < 0) v += m;
    e[0] = static_cast<uint64_t>(v);
    return e;
}

bool UnramifiedRing::is_zero(const Elt& a) const {
    for (uint64_t c : a)
        if (c) return false;
    return true;
}

UnramifiedRing::Elt UnramifiedRing::add(const Elt& a, const Elt& b) const {
    Elt c(r_);
    for (unsigned i = 0; i < r_; ++i) c[i] = addmod_u64(a[i], b[i], mod_);
    return c;
}

UnramifiedRing::Elt UnramifiedRing::sub(const Elt& a, const Elt& b) const {
    Elt c(r_);
    for (unsigned i = 0; i < r_; ++i) c[i] = submod_u64(a[i], b[i], mod_);
    return c;
}

UnramifiedRing::Elt UnramifiedRing::neg(const Elt& a) const {
    Elt c(r_);
    for (unsigned i = 0; i < r_; ++i) c[i] = a[i] ? mod_ - a[i] : 0;
    return c;
}

UnramifiedRing::Elt UnramifiedRing::mul(const Elt& a, const Elt& b) const {
    if (r_ == 1) return {mulmod_u64(a[0], b[0], mod_)};
    std::vector<uint64_t> prod(2 * r_ - 1, 0);
    for (unsigned i = 0; i < r_; ++i) {
        if (!a[i]) continue;
        for (unsigned j = 0; j < r_; ++j)
            prod[i + j] = addmod_u64(prod[i + j], mulmod_u64(a[i], b[j], mod_), mod_);
    }
    Elt c(prod.begin(), prod.begin() + r_);
    for (unsigned k = r_; k < 2 * r_ - 1; ++k) {
        uint64_t t = prod[k];
        if (!t) continue;
        const auto& row = redrow_[k - r_];
        for (unsigned i = 0; i < r_; ++i)
            c[i] = addmod_u64(c[i], mulmod_u64(t, row[i], mod_), mod_);
    }
    return c;
}

UnramifiedRing::Elt UnramifiedRing::mul_scalar(const Elt& a, uint64_t s) const {
    s %= mod_;
    Elt c(r_);
    for (unsigned i = 0; i < r_; ++i) c[i] = mulmod_u64(a[i], s, mod_);
    return c;
}

UnramifiedRing::Elt UnramifiedRing::pow(const Elt& a, uint64_t e) const {
    Elt acc = one(), base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

bool UnramifiedRing::is_unit(const Elt& a) const {
    for (uint64_t c : a)
        if (c % p_) return true;
    return false;
}

UnramifiedRing::Elt UnramifiedRing::inverse(const Elt& a) const {
    if (!is_unit(a)) throw std::domain_error("UnramifiedRing::inverse: not a unit");
    // Fermat inverse in the residue field, then Hensel x -> x(2 - ax)
    Poly a1(r_);
    for (unsigned i = 0; i < r_; ++i) a1[i] = a[i] % p_;
    Poly x1 = poly_powmod(a1, pow_u64(p_, r_) - 2, f_, p_);
    Elt x(x1.begin(), x1.end());
    Elt two = from_int(2);
    unsigned reached = 1;
    while (reached < n_) {
        x = mul(x, sub(two, mul(a, x)));
        reached *= 2;
    }
    return x;
}

void UnramifiedRing::build_frobenius() {
    frob_.assign(r_, std::vector<uint64_t>(r_, 0));
    if (r_ == 1) { frob_[0][0] = 1 % mod_; return; }
    // Newton-lift the root y of f with y = x^p mod p; sigma(x) = y
    Elt y = pow(gen(), p_);
    auto f_at = [&](const Elt& t) {
        Elt acc = from_int(1);  // start with the monic head and Horner down
        for (int i = static_cast<int>(r_) - 1; i >= 0; --i) {
            acc = mul(acc, t);
            acc = add(acc, from_int(static_cast<int64_t>(f_[i])));
        }
        return acc;
    };
    auto fp_at = [&](const Elt& t) {
        // derivative: r t^{r-1} + sum i f_i t^{i-1}
        Elt acc = from_int(static_cast<int64_t>(r_));
        for (int i = static_cast<int>(r_) - 1; i >= 1; --i) {
            acc = mul(acc, t);
            acc = add(acc, from_int(static_cast<int64_t>(i * f_[i])));
        }
        return acc;
    };
    unsigned reached = 1;
    while (reached < n_) {
        Elt corr = mul(f_at(y), inverse(fp_at(y)));
        y = sub(y, corr);
        reached *= 2;
    }
    if (!is_zero(f_at(y)))
        throw std::logic_error("UnramifiedRing: Frobenius root failed to converge");
    // columns: coordinates of y^i
    Elt pw = one();
    for (unsigned i = 0; i < r_; ++i) {
        for (unsigned j = 0; j < r_; ++j) frob_[j][i] = pw[j];
        if (i + 1 < r_) pw = mul(pw, y);
    }
}

UnramifiedRing::Elt UnramifiedRing::apply_matrix(const std::vector<std::vector<uint64_t>>& m,
                                                 const Elt& a) const {
    Elt c(r_, 0);
    for (unsigned j = 0; j < r_; ++j) {
        if (!a[j]) continue;
        for (unsigned i = 0; i < r_; ++i)
            c[i] = addmod_u64(c[i], mulmod_u64(m[i][j], a[j], mod_), mod_);
    }
    return c;
}

UnramifiedRing::Elt UnramifiedRing::frobenius(const Elt& a) const {
    if (r_ == 1) return a;
    return apply_matrix(frob_, a);
}

UnramifiedRing::Elt UnramifiedRing::frobenius_iter(const Elt& a, int64_t k) const {
    if (r_ == 1) return a;
    int64_t kk = k % static_cast<int64_t>(r_);
    if (kk < 0) kk += r_;
    Elt c = a;
    for (int64_t i = 0; i < kk; ++i) c = frobenius(c);
    return c;
}

UnramifiedRing::Elt UnramifiedRing::trace_partial(const Elt& a, unsigned d) const {
    if (d == 0 || r_ % d != 0)
        throw std::invalid_argument("trace_partial: d must divide the degree");
    Elt acc = zero(), cur = a;
    for (unsigned i = 0; i < r_ / d; ++i) {
        acc = add(acc, cur);
        cur = frobenius_iter(cur, static_cast<int64_t>(d));
    }
    return acc;
}

uint64_t UnramifiedRing::trace(const Elt& a) const {
    Elt t = trace_partial(a, 1);
    for (unsigned i = 1; i < r_; ++i)
        if (t[i]) throw std::logic_error("trace: result escapes the prime subring");
    return t[0];
}

uint64_t UnramifiedRing::norm(const Elt& a) const {
    Elt acc = one(), cur = a;
    for (unsigned i = 0; i < r_; ++i) {
        acc = mul(acc, cur);
        cur = frobenius(cur);
    }
    for (unsigned i = 1; i < r_; ++i)
        if (acc[i]) throw std::logic_error("norm: result escapes the prime subring");
    return acc[0];
}

UnramifiedRing::Elt UnramifiedRing::teichmuller(const Elt& a) const {
    Elt t = a;
    uint64_t q = pow_u64(p_, r_);
    for (unsigned i = 1; i < n_; ++i) t = pow(t, q);
    return t;
}

unsigned UnramifiedRing::valuation(const Elt& a) const {
    unsigned v = n_;
    for (uint64_t c : a) {
        if (!c) continue;
        unsigned vc = val_p_u64(c, p_);
        v = std::min(v, vc);
    }
    return v;
}

UnramifiedRing::Elt UnramifiedRing::divide_exact_p(const Elt& a, unsigned k) const {
    uint64_t pk = pow_u64(p_, k);
    Elt c(r_);
    for (unsigned i = 0; i < r_; ++i) {
        if (a[i] % pk) throw std::domain_error("divide_exact_p: not divisible");
        c[i] = a[i] / pk;
    }
    return c;
}

UnramifiedRing::Elt UnramifiedRing::convert_from(const UnramifiedRing& src, const Elt& a) const {
    if (!same_field(src))
        throw std::invalid_argument("convert_from: rings over different residue fields");
    Elt c(r_);
    for (unsigned i = 0; i < r_; ++i) c[i] = a[i] % mod_;
    return c;
}

nlohmann::ordered_json UnramifiedRing::elt_to_json(const Elt& a) const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["r"] = r_;
    j["N"] = n_;
    j["coeffs"] = a;
    return j;
}

UnramifiedRing::Elt UnramifiedRing::elt_from_json(const nlohmann::json& j) const {
    if (j.at("p").get<uint64_t>() != p_ || j.at("r").get<unsigned>() != r_)
        throw std::invalid_argument("elt_from_json: field mismatch");
    Elt a = j.at("coeffs").get<std::vector<uint64_t>>();
    if (a.size() != r_) throw std::invalid_argument("elt_from_json: wrong length");
    for (auto& c : a) c %= mod_;
    return a;
}

UnramifiedRing::Elt padic_log(const UnramifiedRing& ring, const UnramifiedRing::Elt& u) {
    uint64_t p = ring.p();
    unsigned n = ring.precision();
    // require u = 1 mod p
    {
        auto d = ring.sub(u, ring.one());
        if (ring.valuation(d) < 1)
            throw std::domain_error("padic_log: argument is not a 1-unit");
    }
    // term k has valuation >= k - v_p(k) >= k - floor(log_p k); cut once the
    // latter (monotone) bound reaches the precision, so every dropped term is 0
    auto logp_floor = [&](unsigned k) {
        unsigned l = 0;
        for (uint64_t t = p; t <= k; t *= p) ++l;
        return l;
    };
    unsigned kmax = 1;
    while (kmax < n + logp_floor(kmax)) ++kmax;
    unsigned pad = logp_floor(kmax);
    UnramifiedRing big(p, ring.degree(), n + pad);
    auto z = big.sub(big.convert_from(ring, u), big.one());
    auto term = big.one();
    auto acc = big.zero();
    for (unsigned k = 1; k <= kmax; ++k) {
        term = big.mul(term, z);
        uint64_t kunit;
        unsigned kv = val_p_u64(k, p, &kunit);
        auto t = big.divide_exact_p(term, kv);
        t = big.mul_scalar(t, inv_mod_u64(kunit % big.modulus(), big.modulus()));
        if (k % 2 == 0) t = big.neg(t);
        acc = big.add(acc, t);
    }
    return ring.convert_from(big, acc);
}

} // namespace etnckit
