#pragma once

#include <cstdint>
#include <stdexcept>

namespace etnckit {

// Fixed-width arithmetic mod m for m < 2^63.  All ring moduli used by the
// truncated p-adic layer fit in u64 (largest is 5^20 ~ 9.5e13), so coefficient
// ops stay in hardware words with __int128 products.

inline uint64_t addmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    uint64_t s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline uint64_t submod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// a^e for plain u64 (no modulus); throws on overflow.
inline uint64_t pow_u64(uint64_t a, unsigned e) {
    uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        unsigned __int128 t = static_cast<unsigned __int128>(r) * a;
        if (t > UINT64_MAX) throw std::overflow_error("pow_u64 overflow");
        r = static_cast<uint64_t>(t);
    }
    return r;
}

// Inverse of a mod m (extended Euclid); throws if gcd(a,m) != 1.
inline uint64_t inv_mod_u64(uint64_t a, uint64_t m) {
    int64_t t = 0, nt = 1;
    int64_t r = static_cast<int64_t>(m), nr = static_cast<int64_t>(a % m);
    while (nr != 0) {
        int64_t q = r / nr;
        int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod_u64: not a unit");
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

// p-adic valuation of a (a != 0), and the cofactor a / p^v.
inline unsigned val_p_u64(uint64_t a, uint64_t p, uint64_t* cofactor = nullptr) {
    if (a == 0) throw std::domain_error("val_p_u64: zero");
    unsigned v = 0;
    while (a % p == 0) { a /= p; ++v; }
    if (cofactor) *cofactor = a;
    return v;
}

// Least primitive root mod p (p an odd prime).
inline uint64_t primitive_root_mod_p(uint64_t p) {
    uint64_t phi = p - 1;
    // distinct prime factors of p-1
    uint64_t fac[16];
    int nf = 0;
    {
        uint64_t n = phi;
        for (uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) { fac[nf++] = d; while (n % d == 0) n /= d; }
        if (n > 1) fac[nf++] = n;
    }
    for (uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (int i = 0; i < nf && ok; ++i)
            if (powmod_u64(g, phi / fac[i], p) == 1) ok = false;
        if (ok) return g;
    }
    throw std::logic_error("primitive_root_mod_p: none found");
}

} // namespace etnckit
