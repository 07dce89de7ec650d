#include "etnckit/series.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>

namespace etnckit {

namespace {

// reduce both operands to a common (T, p)-precision
std::pair<TruncatedSeries, TruncatedSeries> harmonize(const TruncatedSeries& a,
                                                      const TruncatedSeries& b) {
    if (!a.ring.same_field(b.ring))
        throw std::invalid_argument("series: coefficient fields differ");
    unsigned n = std::min(a.ring.precision(), b.ring.precision());
    unsigned m = std::min(a.tprec(), b.tprec());
    UnramifiedRing ring(a.ring.p(), a.ring.degree(), n);
    auto shrink = [&](const TruncatedSeries& f) {
        TruncatedSeries g(ring, m);
        for (unsigned i = 0; i < m; ++i) g.c[i] = ring.convert_from(f.ring, f.c[i]);
        return g;
    };
    return {shrink(a), shrink(b)};
}

uint64_t binom_mod(uint64_t e, unsigned m, uint64_t mod) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), e, m);
    mpz_class r = b % mpz_class(static_cast<unsigned long>(mod));
    return r.get_ui();
}

// Pascal triangle C(i, j) for i, j < m, entries mod the ring modulus
std::vector<std::vector<uint64_t>> pascal_rows(unsigned m, uint64_t mod) {
    std::vector<std::vector<uint64_t>> c(m);
    for (unsigned i = 0; i < m; ++i) {
        c[i].assign(i + 1, 1 % mod);
        for (unsigned j = 1; j < i; ++j)
            c[i][j] = addmod_u64(c[i - 1][j - 1], c[i - 1][j], mod);
    }
    return c;
}

} // namespace

bool TruncatedSeries::is_zero() const {
    for (const auto& a : c)
        if (!ring.is_zero(a)) return false;
    return true;
}

TruncatedSeries series_zero(const UnramifiedRing& ring, unsigned m) {
    return TruncatedSeries(ring, m);
}

TruncatedSeries series_one(const UnramifiedRing& ring, unsigned m) {
    TruncatedSeries f(ring, m);
    f.c[0] = ring.one();
    return f;
}

TruncatedSeries series_t(const UnramifiedRing& ring, unsigned m) {
    TruncatedSeries f(ring, m);
    if (m < 2) throw std::invalid_argument("series_t: need T-precision >= 2");
    f.c[1] = ring.one();
    return f;
}

TruncatedSeries series_add(const TruncatedSeries& a0, const TruncatedSeries& b0) {
    auto [a, b] = harmonize(a0, b0);
    for (unsigned i = 0; i < a.tprec(); ++i) a.c[i] = a.ring.add(a.c[i], b.c[i]);
    return a;
}

TruncatedSeries series_sub(const TruncatedSeries& a0, const TruncatedSeries& b0) {
    auto [a, b] = harmonize(a0, b0);
    for (unsigned i = 0; i < a.tprec(); ++i) a.c[i] = a.ring.sub(a.c[i], b.c[i]);
    return a;
}

TruncatedSeries series_neg(const TruncatedSeries& a) {
    TruncatedSeries r = a;
    for (auto& x : r.c) x = r.ring.neg(x);
    return r;
}

TruncatedSeries series_mul(const TruncatedSeries& a0, const TruncatedSeries& b0) {
    auto [a, b] = harmonize(a0, b0);
    unsigned m = a.tprec();
    TruncatedSeries r(a.ring, m);
    for (unsigned i = 0; i < m; ++i) {
        if (a.ring.is_zero(a.c[i])) continue;
        for (unsigned j = 0; i + j < m; ++j) {
            if (a.ring.is_zero(b.c[j])) continue;
            r.c[i + j] = a.ring.add(r.c[i + j], a.ring.mul(a.c[i], b.c[j]));
        }
    }
    return r;
}

TruncatedSeries series_scalar_mul(const TruncatedSeries& a, const UnramifiedRing::Elt& s) {
    TruncatedSeries r = a;
    for (auto& x : r.c) x = r.ring.mul(x, s);
    return r;
}

TruncatedSeries series_truncate(const TruncatedSeries& a, unsigned m) {
    TruncatedSeries r = a;
    if (m < r.tprec()) r.c.resize(m, r.ring.zero());
    return r;
}

bool series_equal(const TruncatedSeries& a0, const TruncatedSeries& b0) {
    auto [a, b] = harmonize(a0, b0);
    return a.c == b.c;
}

TruncatedSeries series_invert(const TruncatedSeries& a) {
    if (!a.ring.is_unit(a.c[0]))
        throw std::domain_error("series_invert: constant term is not a unit");
    unsigned m = a.tprec();
    TruncatedSeries r(a.ring, m);
    auto inv0 = a.ring.inverse(a.c[0]);
    r.c[0] = inv0;
    for (unsigned k = 1; k < m; ++k) {
        auto acc = a.ring.zero();
        for (unsigned i = 1; i <= k; ++i)
            acc = a.ring.add(acc, a.ring.mul(a.c[i], r.c[k - i]));
        r.c[k] = a.ring.neg(a.ring.mul(inv0, acc));
    }
    return r;
}

TruncatedSeries series_compose(const TruncatedSeries& f0, const TruncatedSeries& g0,
                               unsigned out_m) {
    if (!f0.ring.same_field(g0.ring))
        throw std::invalid_argument("series_compose: coefficient fields differ");
    // align coefficient precision only; f and g keep their own T-lengths
    unsigned n = std::min(f0.ring.precision(), g0.ring.precision());
    UnramifiedRing ring(f0.ring.p(), f0.ring.degree(), n);
    unsigned m = out_m ? out_m : f0.tprec();
    TruncatedSeries gg(ring, m);
    for (unsigned i = 0; i < std::min<unsigned>(m, g0.tprec()); ++i)
        gg.c[i] = ring.convert_from(g0.ring, g0.c[i]);
    if (ring.is_unit(gg.c[0]))
        throw std::domain_error("series_compose: substituted series has unit constant term");
    TruncatedSeries acc(ring, m);
    for (unsigned ii = f0.tprec(); ii-- > 0;) {
        acc = series_mul(acc, gg);
        acc.c[0] = ring.add(acc.c[0], ring.convert_from(f0.ring, f0.c[ii]));
    }
    return acc;
}

TruncatedSeries one_plus_t_pow(const UnramifiedRing& ring, unsigned m, uint64_t e) {
    TruncatedSeries f(ring, m);
    for (unsigned i = 0; i < m; ++i) {
        uint64_t b = binom_mod(e, i, ring.modulus());
        f.c[i] = ring.from_int(0);
        f.c[i][0] = b;
    }
    return f;
}

std::vector<UnramifiedRing::Elt> to_u_basis(const TruncatedSeries& f) {
    unsigned m = f.tprec();
    auto pas = pascal_rows(m, f.ring.modulus());
    std::vector<UnramifiedRing::Elt> b(m, f.ring.zero());
    for (unsigned k = m; k-- > 0;) {
        auto acc = f.c[k];
        for (unsigned j = k + 1; j < m; ++j) {
            if (f.ring.is_zero(b[j])) continue;
            acc = f.ring.sub(acc, f.ring.mul_scalar(b[j], pas[j][k]));
        }
        b[k] = acc;
    }
    return b;
}

TruncatedSeries from_u_basis(const UnramifiedRing& ring,
                             const std::vector<UnramifiedRing::Elt>& b) {
    unsigned m = static_cast<unsigned>(b.size());
    auto pas = pascal_rows(m, ring.modulus());
    TruncatedSeries f(ring, m);
    for (unsigned k = 0; k < m; ++k) {
        auto acc = ring.zero();
        for (unsigned j = k; j < m; ++j) {
            if (ring.is_zero(b[j])) continue;
            acc = ring.add(acc, ring.mul_scalar(b[j], pas[j][k]));
        }
        f.c[k] = acc;
    }
    return f;
}

TruncatedSeries phi_op(const TruncatedSeries& f, unsigned out_m) {
    TruncatedSeries fs = f;
    for (auto& x : fs.c) x = fs.ring.frobenius(x);
    unsigned p = static_cast<unsigned>(f.ring.p());
    if (out_m == 0) out_m = p * (f.tprec() - 1) + 1;  // exact polynomial image
    auto g = one_plus_t_pow(f.ring, std::min<unsigned>(p + 1, out_m), f.ring.p());
    g.c[0] = f.ring.zero();
    return series_compose(fs, g, out_m);
}

TruncatedSeries galois_act(uint64_t e, int64_t frob_power, const TruncatedSeries& f,
                           unsigned out_m) {
    TruncatedSeries fs = f;
    for (auto& x : fs.c) x = fs.ring.frobenius_iter(x, frob_power);
    if (out_m == 0) out_m = f.tprec();
    auto g = one_plus_t_pow(f.ring, std::min<uint64_t>(e + 1, out_m), e);
    g.c[0] = f.ring.zero();
    return series_compose(fs, g, out_m);
}

TruncatedSeries d_op(const TruncatedSeries& f) {
    unsigned m = f.tprec();
    TruncatedSeries r(f.ring, m);
    for (unsigned i = 0; i < m; ++i) {
        auto t = f.ring.mul_scalar(f.c[i], i);
        if (i + 1 < m)
            t = f.ring.add(t, f.ring.mul_scalar(f.c[i + 1], i + 1));
        r.c[i] = t;
    }
    return r;
}

TruncatedSeries psi_op(const TruncatedSeries& f, bool twist) {
    auto b = to_u_basis(f);
    unsigned m = f.tprec();
    uint64_t p = f.ring.p();
    unsigned mout = (m - 1) / static_cast<unsigned>(p) + 1;
    std::vector<UnramifiedRing::Elt> bo(mout, f.ring.zero());
    for (unsigned k = 0; k < mout; ++k) {
        uint64_t src = static_cast<uint64_t>(k) * p;
        if (src < m)
            bo[k] = twist ? f.ring.frobenius_iter(b[src], -1) : b[src];
    }
    return from_u_basis(f.ring, bo);
}

bool r_membership(const TruncatedSeries& f) {
    // work in B = O[x]/(1 + x + ... + x^{p-1}), elements as length-(p-1)
    // O-vectors; zeta_j = x^j and x^{p-1} = -(1 + x + ... + x^{p-2})
    const UnramifiedRing& O = f.ring;
    unsigned p = static_cast<unsigned>(O.p());
    unsigned m = f.tprec();
    if (m < 2) throw std::invalid_argument("r_membership: need T-precision >= 2");
    using BElt = std::vector<UnramifiedRing::Elt>;   // length p-1 over O
    auto bzero = [&] { return BElt(p - 1, O.zero()); };
    auto mul_x = [&](const BElt& a) {
        BElt r = bzero();
        const auto& top = a[p - 2];
        for (unsigned i = 0; i + 1 < p - 1; ++i) r[i + 1] = a[i];
        if (!O.is_zero(top))
            for (unsigned i = 0; i < p - 1; ++i) r[i] = O.sub(r[i], top);
        return r;
    };
    // accumulate sum over j of f(x^j (1+T) - 1); Horner over B[T], exact since
    // the substitution is linear in T so the degree never exceeds m-1
    std::vector<BElt> total(m, bzero());
    for (unsigned j = 0; j < p; ++j) {
        std::vector<BElt> h(m, bzero());
        for (unsigned ii = m; ii-- > 0;) {
            // h <- h * (zeta(1+T) - 1) + f_ii, with zeta = x^j
            std::vector<BElt> nh(m, bzero());
            for (unsigned d = 0; d < m; ++d) {
                // zeta * (h + T h) - h at degree d
                BElt s = h[d];
                if (d > 0)
                    for (unsigned i = 0; i < p - 1; ++i) s[i] = O.add(s[i], h[d - 1][i]);
                for (unsigned t = 0; t < j; ++t) s = mul_x(s);
                for (unsigned i = 0; i < p - 1; ++i) s[i] = O.sub(s[i], h[d][i]);
                nh[d] = s;
            }
            nh[0][0] = O.add(nh[0][0], f.c[ii]);
            h = std::move(nh);
        }
        for (unsigned d = 0; d < m; ++d)
            for (unsigned i = 0; i < p - 1; ++i)
                total[d][i] = O.add(total[d][i], h[d][i]);
    }
    for (unsigned d = 0; d + 1 < m; ++d)
        for (unsigned i = 0; i < p - 1; ++i)
            if (!O.is_zero(total[d][i])) return false;
    return true;
}

TruncatedSeries random_r_member(const UnramifiedRing& ring, unsigned m, Rng& rng) {
    std::vector<UnramifiedRing::Elt> b(m, ring.zero());
    for (unsigned k = 0; k < m; ++k) {
        if (k % ring.p() == 0) continue;
        for (unsigned i = 0; i < ring.degree(); ++i)
            b[k][i] = rng.below(ring.modulus());
    }
    return from_u_basis(ring, b);
}

nlohmann::ordered_json series_to_json(const TruncatedSeries& f) {
    nlohmann::ordered_json j;
    j["p"] = f.ring.p();
    j["r"] = f.ring.degree();
    j["N"] = f.ring.precision();
    j["M"] = f.tprec();
    j["coeffs"] = f.c;
    return j;
}

TruncatedSeries series_from_json(const nlohmann::json& j) {
    UnramifiedRing ring(j.at("p").get<uint64_t>(), j.at("r").get<unsigned>(),
                        j.at("N").get<unsigned>());
    auto coeffs = j.at("coeffs").get<std::vector<std::vector<uint64_t>>>();
    if (coeffs.size() != j.at("M").get<size_t>())
        throw std::invalid_argument("series_from_json: length mismatch");
    for (auto& a : coeffs) {
        if (a.size() != ring.degree())
            throw std::invalid_argument("series_from_json: coefficient width mismatch");
        for (auto& x : a) x %= ring.modulus();
    }
    return TruncatedSeries(ring, std::move(coeffs));
}

} // namespace etnckit
