#include "etnckit/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace etnckit {

namespace {

std::mutex g_cyclo_mutex;
std::map<uint64_t, std::vector<Integer>> g_phi_cache;
// reduction row for x^k, phi(N) <= k < N, expressed on the power basis
std::map<uint64_t, std::vector<std::vector<Integer>>> g_row_cache;

void poly_divexact_monic(std::vector<Integer>& a, const std::vector<Integer>& b,
                         std::vector<Integer>& q) {
    const size_t db = b.size() - 1;
    q.assign(a.size() >= db ? a.size() - db : 0, Integer(0));
    while (a.size() > db) {
        Integer lead = a.back();
        size_t sh = a.size() - 1 - db;
        q[sh] = lead;
        if (lead != 0) {
            for (size_t i = 0; i < db; ++i) a[sh + i] -= lead * b[i];
        }
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    if (!a.empty()) throw std::logic_error("inexact cyclotomic division");
}

const std::vector<Integer>& cyclotomic_polynomial_locked(uint64_t N) {
    auto it = g_phi_cache.find(N);
    if (it != g_phi_cache.end()) return it->second;
    // compute recursively: x^N - 1 = prod_{d | N} Phi_d
    std::vector<uint64_t> stack{N};
    while (!stack.empty()) {
        uint64_t n = stack.back();
        if (g_phi_cache.count(n)) { stack.pop_back(); continue; }
        bool ready = true;
        for (uint64_t d = 1; d <= n / 2; ++d) {
            if (n % d == 0 && !g_phi_cache.count(d)) { stack.push_back(d); ready = false; }
        }
        if (!ready) continue;
        std::vector<Integer> num(n + 1, Integer(0));
        num[0] = -1;
        num[n] = 1;
        for (uint64_t d = 1; d <= n / 2; ++d) {
            if (n % d != 0) continue;
            std::vector<Integer> q;
            poly_divexact_monic(num, g_phi_cache[d], q);
            num = std::move(q);
        }
        g_phi_cache.emplace(n, std::move(num));
        stack.pop_back();
    }
    return g_phi_cache[N];
}

const std::vector<std::vector<Integer>>& reduction_rows_locked(uint64_t N) {
    auto it = g_row_cache.find(N);
    if (it != g_row_cache.end()) return it->second;
    const auto& phiN = cyclotomic_polynomial_locked(N);
    const size_t phi = phiN.size() - 1;
    std::vector<std::vector<Integer>> rows;
    rows.reserve(N - phi);
    // x^phi = -(low part of Phi_N)
    std::vector<Integer> cur(phi);
    for (size_t i = 0; i < phi; ++i) cur[i] = -phiN[i];
    rows.push_back(cur);
    for (uint64_t k = phi + 1; k < N; ++k) {
        std::vector<Integer> nxt(phi, Integer(0));
        // multiply by x, fold the overflow coordinate through row[0]
        Integer top = cur[phi - 1];
        for (size_t i = phi - 1; i > 0; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0)
            for (size_t i = 0; i < phi; ++i) nxt[i] += top * rows[0][i];
        rows.push_back(nxt);
        cur = std::move(nxt);
    }
    return g_row_cache.emplace(N, std::move(rows)).first->second;
}

// Gaussian elimination; returns true and fills x when A x = b is consistent.
bool solve_rational(std::vector<std::vector<Rational>> A, std::vector<Rational> b,
                    size_t cols, std::vector<Rational>& x) {
    const size_t rows = A.size();
    std::vector<size_t> pivot_col_of_row;
    size_t rr = 0;
    for (size_t c = 0; c < cols && rr < rows; ++c) {
        size_t pr = rr;
        while (pr < rows && A[pr][c] == 0) ++pr;
        if (pr == rows) continue;
        std::swap(A[pr], A[rr]);
        std::swap(b[pr], b[rr]);
        Rational inv = 1 / A[rr][c];
        for (size_t j = c; j < cols; ++j) A[rr][j] *= inv;
        b[rr] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rr) continue;
            if (A[i][c] == 0) continue;
            Rational f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[rr][j];
            b[i] -= f * b[rr];
        }
        pivot_col_of_row.push_back(c);
        ++rr;
    }
    for (size_t i = rr; i < rows; ++i)
        if (b[i] != 0) return false;
    x.assign(cols, Rational(0));
    for (size_t i = 0; i < rr; ++i) x[pivot_col_of_row[i]] = b[i];
    return true;
}

}  // namespace

const std::vector<Integer>& CyclotomicNumber::cyclotomic_polynomial(uint64_t N) {
    std::lock_guard<std::mutex> lk(g_cyclo_mutex);
    return cyclotomic_polynomial_locked(N);
}

CyclotomicNumber::CyclotomicNumber(uint64_t order, std::vector<Rational> coeffs)
    : order_(order == 0 ? 1 : order) {
    uint64_t phi = euler_phi_u64(order_);
    if (coeffs.size() > order_) throw std::invalid_argument("coefficient vector too long");
    if (coeffs.size() <= phi) {
        coeffs.resize(phi);
        c_ = std::move(coeffs);
    } else {
        reduce_from(coeffs);
    }
}

void CyclotomicNumber::reduce_from(std::vector<Rational>& poly) {
    uint64_t phi = euler_phi_u64(order_);
    std::lock_guard<std::mutex> lk(g_cyclo_mutex);
    const auto& rows = reduction_rows_locked(order_);
    c_.assign(phi, Rational(0));
    for (size_t i = 0; i < poly.size(); ++i) {
        if (poly[i] == 0) continue;
        if (i < phi) {
            c_[i] += poly[i];
        } else {
            const auto& row = rows[i - phi];
            for (size_t j = 0; j < phi; ++j)
                if (row[j] != 0) c_[j] += poly[i] * Rational(row[j]);
        }
    }
}

CyclotomicNumber CyclotomicNumber::root_of_unity(uint64_t N, int64_t k) {
    CyclotomicNumber z;
    z.order_ = N ? N : 1;
    z.c_.assign(euler_phi_u64(z.order_), Rational(0));
    z.add_monomial(k, Rational(1));
    return z;
}

void CyclotomicNumber::add_monomial(int64_t k, const Rational& coeff) {
    if (coeff == 0) return;
    int64_t n = static_cast<int64_t>(order_);
    int64_t kk = ((k % n) + n) % n;
    uint64_t phi = c_.size();
    if (static_cast<uint64_t>(kk) < phi) {
        c_[kk] += coeff;
        return;
    }
    std::lock_guard<std::mutex> lk(g_cyclo_mutex);
    const auto& row = reduction_rows_locked(order_)[kk - phi];
    for (size_t j = 0; j < phi; ++j)
        if (row[j] != 0) c_[j] += coeff * Rational(row[j]);
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

CyclotomicNumber CyclotomicNumber::embed_to_order(uint64_t target) const {
    if (target == order_) return *this;
    if (target % order_ != 0) throw std::invalid_argument("embed target must be a multiple of the order");
    CyclotomicNumber r;
    r.order_ = target;
    r.c_.assign(euler_phi_u64(target), Rational(0));
    uint64_t step = target / order_;
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) r.add_monomial(static_cast<int64_t>(i * step), c_[i]);
    return r;
}

CyclotomicNumber CyclotomicNumber::normalized() const {
    CyclotomicNumber cur = *this;
    bool changed = true;
    while (changed && cur.order_ > 1) {
        changed = false;
        auto fac = factorize_u64(cur.order_);
        for (const auto& [q, e] : fac) {
            (void)e;
            uint64_t M = cur.order_, M2 = M / q;
            uint64_t phiM = euler_phi_u64(M), phiM2 = euler_phi_u64(M2);
            std::vector<std::vector<Rational>> A(phiM, std::vector<Rational>(phiM2, Rational(0)));
            for (uint64_t j = 0; j < phiM2; ++j) {
                CyclotomicNumber base = root_of_unity(M, static_cast<int64_t>(j * (M / M2)));
                for (uint64_t i = 0; i < phiM; ++i) A[i][j] = base.c_[i];
            }
            std::vector<Rational> sol;
            if (solve_rational(A, cur.c_, phiM2, sol)) {
                cur = CyclotomicNumber(M2, std::move(sol));
                changed = true;
                break;
            }
        }
    }
    return cur;
}

bool CyclotomicNumber::is_rational() const { return normalized().order() == 1; }

Rational CyclotomicNumber::rational_value() const {
    CyclotomicNumber n = normalized();
    if (n.order() != 1) throw std::domain_error("not a rational value");
    return n.c_[0];
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
}

CyclotomicNumber CyclotomicNumber::operator+(const CyclotomicNumber& o) const {
    uint64_t L = lcm_u64(order_, o.order_);
    CyclotomicNumber a = embed_to_order(L), b = o.embed_to_order(L);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

CyclotomicNumber CyclotomicNumber::operator-(const CyclotomicNumber& o) const {
    uint64_t L = lcm_u64(order_, o.order_);
    CyclotomicNumber a = embed_to_order(L), b = o.embed_to_order(L);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
}

CyclotomicNumber mul_same_order(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    size_t phi = a.c_.size();
    std::vector<Rational> prod(2 * phi - 1, Rational(0));
    for (size_t i = 0; i < phi; ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < phi; ++j) {
            if (b.c_[j] == 0) continue;
            prod[i + j] += a.c_[i] * b.c_[j];
        }
    }
    CyclotomicNumber r;
    r.order_ = a.order_;
    // exponents >= order wrap around before row reduction
    std::vector<Rational> wrapped(std::min<size_t>(prod.size(), a.order_), Rational(0));
    for (size_t i = 0; i < prod.size(); ++i) {
        if (prod[i] == 0) continue;
        wrapped[i % a.order_] += prod[i];
    }
    r.reduce_from(wrapped);
    return r;
}

CyclotomicNumber CyclotomicNumber::operator*(const CyclotomicNumber& o) const {
    uint64_t L = lcm_u64(order_, o.order_);
    return mul_same_order(embed_to_order(L), o.embed_to_order(L));
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    // extended euclid of the representative against Phi_N over Q[x]
    const auto& phiZ = cyclotomic_polynomial(order_);
    std::vector<Rational> r0(phiZ.size()), r1(c_.begin(), c_.end());
    for (size_t i = 0; i < phiZ.size(); ++i) r0[i] = Rational(phiZ[i]);
    while (!r1.empty() && r1.back() == 0) r1.pop_back();
    std::vector<Rational> s0{Rational(0)}, s1{Rational(1)};  // coeffs of the input rep
    auto trim = [](std::vector<Rational>& v) { while (!v.empty() && v.back() == 0) v.pop_back(); };
    while (true) {
        trim(r1);
        if (r1.empty()) throw std::logic_error("cyclotomic inverse: unexpected common factor");
        if (r1.size() == 1) {
            Rational inv = 1 / r1[0];
            CyclotomicNumber out;
            out.order_ = order_;
            std::vector<Rational> rep(s1.size());
            for (size_t i = 0; i < s1.size(); ++i) rep[i] = s1[i] * inv;
            rep.resize(std::max<size_t>(rep.size(), euler_phi_u64(order_)));
            out.reduce_from(rep);
            return out;
        }
        // r0 = q*r1 + rem
        std::vector<Rational> rem = r0, q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0,
                                          Rational(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            trim(rem);
            if (rem.size() < r1.size()) break;
            Rational f = rem.back() / r1.back();
            size_t sh = rem.size() - r1.size();
            q[sh] = f;
            for (size_t i = 0; i < r1.size(); ++i) rem[sh + i] -= f * r1[i];
            trim(rem);
        }
        // s_next = s0 - q*s1
        std::vector<Rational> snext(std::max(s0.size(), q.size() + s1.size()), Rational(0));
        for (size_t i = 0; i < s0.size(); ++i) snext[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) snext[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(snext);
    }
}

CyclotomicNumber CyclotomicNumber::operator/(const CyclotomicNumber& o) const {
    uint64_t L = lcm_u64(order_, o.order_);
    return mul_same_order(embed_to_order(L), o.embed_to_order(L).inverse());
}

bool CyclotomicNumber::operator==(const CyclotomicNumber& o) const {
    uint64_t L = lcm_u64(order_, o.order_);
    CyclotomicNumber a = embed_to_order(L), b = o.embed_to_order(L);
    return a.c_ == b.c_;
}

CyclotomicNumber CyclotomicNumber::galois(int64_t a) const {
    int64_t n = static_cast<int64_t>(order_);
    int64_t am = ((a % n) + n) % n;
    if (gcd_u64(static_cast<uint64_t>(am == 0 ? n : am), order_) != 1)
        throw std::invalid_argument("galois exponent not coprime to order");
    CyclotomicNumber r;
    r.order_ = order_;
    r.c_.assign(c_.size(), Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) r.add_monomial(am * static_cast<int64_t>(i), c_[i]);
    return r;
}

CyclotomicNumber CyclotomicNumber::pow(int64_t e) const {
    CyclotomicNumber base = e < 0 ? inverse() : *this;
    uint64_t k = static_cast<uint64_t>(e < 0 ? -e : e);
    CyclotomicNumber acc = one();
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

std::complex<double> CyclotomicNumber::to_complex(int64_t a) const {
    std::complex<double> s(0.0, 0.0);
    const double tau = 6.283185307179586476925286766559;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        double ang = tau * static_cast<double>((static_cast<int64_t>(i) * a) % static_cast<int64_t>(order_)) /
                     static_cast<double>(order_);
        s += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::string CyclotomicNumber::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i > 0) os << "*z" << order_ << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

std::string CyclotomicNumber::to_json() const {
    nlohmann::ordered_json j;
    j["order"] = order_;
    std::vector<std::string> cs;
    cs.reserve(c_.size());
    for (const auto& q : c_) cs.push_back(q.get_str());
    j["coeffs"] = cs;
    return j.dump();
}

CyclotomicNumber CyclotomicNumber::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    uint64_t order = j.at("order").get<uint64_t>();
    std::vector<Rational> cs;
    for (const auto& s : j.at("coeffs")) cs.push_back(parse_rational(s.get<std::string>()));
    return CyclotomicNumber(order, std::move(cs));
}

}  // namespace etnckit
