#include "etnckit/abelian_group.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace etnckit {

namespace {

IntMatrix identity_matrix(size_t n) {
    IntMatrix m(n, std::vector<Integer>(n, Integer(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

int cmpabs(const Integer& a, const Integer& b) {
    return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t());
}

}  // namespace

void smith_normal_form(const IntMatrix& A, IntMatrix& U, IntMatrix& S, IntMatrix& V) {
    const size_t r = A.size();
    const size_t c = r ? A[0].size() : 0;
    S = A;
    U = identity_matrix(r);
    V = identity_matrix(c);

    auto swap_rows = [&](size_t i, size_t j) {
        std::swap(S[i], S[j]);
        std::swap(U[i], U[j]);
    };
    auto swap_cols = [&](size_t i, size_t j) {
        for (auto& row : S) std::swap(row[i], row[j]);
        for (auto& row : V) std::swap(row[i], row[j]);
    };
    auto submul_row = [&](size_t dst, size_t src, const Integer& q) {
        for (size_t j = 0; j < c; ++j) S[dst][j] -= q * S[src][j];
        for (size_t j = 0; j < r; ++j) U[dst][j] -= q * U[src][j];
    };
    auto submul_col = [&](size_t dst, size_t src, const Integer& q) {
        for (size_t i = 0; i < r; ++i) S[i][dst] -= q * S[i][src];
        for (size_t i = 0; i < c; ++i) V[i][dst] -= q * V[i][src];
    };

    bool done = false;
    for (size_t t = 0; t < std::min(r, c) && !done; ++t) {
        while (true) {
            size_t pi = r, pj = c;
            for (size_t i = t; i < r; ++i)
                for (size_t j = t; j < c; ++j)
                    if (S[i][j] != 0 && (pi == r || cmpabs(S[i][j], S[pi][pj]) < 0)) {
                        pi = i;
                        pj = j;
                    }
            if (pi == r) {
                done = true;  // trailing block is zero
                break;
            }
            if (pi != t) swap_rows(t, pi);
            if (pj != t) swap_cols(t, pj);
            bool cleared = true;
            for (size_t i = t + 1; i < r; ++i)
                if (S[i][t] != 0) {
                    Integer q = S[i][t] / S[t][t];
                    if (q != 0) submul_row(i, t, q);
                    if (S[i][t] != 0) cleared = false;
                }
            for (size_t j = t + 1; j < c; ++j)
                if (S[t][j] != 0) {
                    Integer q = S[t][j] / S[t][t];
                    if (q != 0) submul_col(j, t, q);
                    if (S[t][j] != 0) cleared = false;
                }
            if (!cleared) continue;
            bool fixed = false;
            for (size_t i = t + 1; i < r && !fixed; ++i)
                for (size_t j = t + 1; j < c && !fixed; ++j)
                    if (S[i][j] % S[t][t] != 0) {
                        submul_row(t, i, Integer(-1));  // row_t += row_i
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (!done && S[t][t] < 0) {
            for (auto& x : S[t]) x = -x;
            for (auto& x : U[t]) x = -x;
        }
    }
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<uint64_t> orders) : d_(std::move(orders)) {
    for (uint64_t d : d_) {
        if (d == 0) throw std::invalid_argument("cyclic factor of order zero");
        size_ *= d;
        exponent_ = lcm_u64(exponent_, d);
    }
}

GroupElt FiniteAbelianGroup::add(const GroupElt& a, const GroupElt& b) const {
    GroupElt r(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) r[i] = (a[i] + b[i]) % d_[i];
    return r;
}

GroupElt FiniteAbelianGroup::neg(const GroupElt& a) const {
    GroupElt r(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) r[i] = (d_[i] - a[i] % d_[i]) % d_[i];
    return r;
}

GroupElt FiniteAbelianGroup::scalar(const GroupElt& a, int64_t k) const {
    GroupElt r(d_.size());
    for (size_t i = 0; i < d_.size(); ++i) {
        int64_t di = static_cast<int64_t>(d_[i]);
        int64_t km = ((k % di) + di) % di;
        r[i] = (static_cast<uint64_t>(km) * (a[i] % d_[i])) % d_[i];
    }
    return r;
}

uint64_t FiniteAbelianGroup::element_order(const GroupElt& a) const {
    uint64_t ord = 1;
    for (size_t i = 0; i < d_.size(); ++i) ord = lcm_u64(ord, d_[i] / gcd_u64(d_[i], a[i]));
    return ord;
}

uint64_t FiniteAbelianGroup::index_of(const GroupElt& a) const {
    if (a.size() != d_.size()) throw std::invalid_argument("element rank mismatch");
    uint64_t idx = 0;
    for (size_t i = 0; i < d_.size(); ++i) idx = idx * d_[i] + a[i] % d_[i];
    return idx;
}

GroupElt FiniteAbelianGroup::element_at(uint64_t idx) const {
    GroupElt a(d_.size());
    for (size_t i = d_.size(); i-- > 0;) {
        a[i] = idx % d_[i];
        idx /= d_[i];
    }
    return a;
}

std::vector<GroupElt> FiniteAbelianGroup::elements() const {
    std::vector<GroupElt> out;
    out.reserve(size_);
    for (uint64_t i = 0; i < size_; ++i) out.push_back(element_at(i));
    return out;
}

FiniteAbelianGroup FiniteAbelianGroup::product(const FiniteAbelianGroup& a,
                                               const FiniteAbelianGroup& b) {
    std::vector<uint64_t> d = a.d_;
    d.insert(d.end(), b.d_.begin(), b.d_.end());
    return FiniteAbelianGroup(std::move(d));
}

Character::Character(FiniteAbelianGroup G, std::vector<uint64_t> expo)
    : G_(std::move(G)), e_(std::move(expo)) {
    if (e_.size() != G_.rank()) throw std::invalid_argument("character exponent rank mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] %= G_.orders()[i];
}

uint64_t Character::exponent_on(const GroupElt& g) const {
    uint64_t L = G_.exponent();
    uint64_t k = 0;
    for (size_t i = 0; i < e_.size(); ++i) {
        uint64_t di = G_.orders()[i];
        k = (k + (e_[i] * (g[i] % di)) % L * (L / di)) % L;
    }
    return k;
}

CyclotomicNumber Character::operator()(const GroupElt& g) const {
    return CyclotomicNumber::root_of_unity(G_.exponent(), static_cast<int64_t>(exponent_on(g)));
}

bool Character::is_trivial() const {
    for (uint64_t e : e_)
        if (e != 0) return false;
    return true;
}

uint64_t Character::order() const {
    uint64_t ord = 1;
    for (size_t i = 0; i < e_.size(); ++i) {
        uint64_t di = G_.orders()[i];
        ord = lcm_u64(ord, di / gcd_u64(di, e_[i]));
    }
    return ord;
}

Character Character::inverse_char() const {
    std::vector<uint64_t> e(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) e[i] = (G_.orders()[i] - e_[i]) % G_.orders()[i];
    return Character(G_, std::move(e));
}

Character Character::times(const Character& o) const {
    if (G_ != o.G_) throw std::invalid_argument("character group mismatch");
    std::vector<uint64_t> e(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) e[i] = (e_[i] + o.e_[i]) % G_.orders()[i];
    return Character(G_, std::move(e));
}

std::vector<Character> all_characters(const FiniteAbelianGroup& G) {
    std::vector<Character> out;
    out.reserve(G.size());
    for (uint64_t i = 0; i < G.size(); ++i) out.emplace_back(G, G.element_at(i));
    return out;
}

Subgroup::Subgroup(FiniteAbelianGroup G, std::vector<GroupElt> gens)
    : G_(std::move(G)), gens_(std::move(gens)) {
    const size_t r = G_.rank();
    IntMatrix A(r, std::vector<Integer>(gens_.size() + r, Integer(0)));
    for (size_t j = 0; j < gens_.size(); ++j) {
        if (gens_[j].size() != r) throw std::invalid_argument("generator rank mismatch");
        for (size_t i = 0; i < r; ++i) A[i][j] = Integer(static_cast<unsigned long>(gens_[j][i]));
    }
    for (size_t i = 0; i < r; ++i)
        A[i][gens_.size() + i] = Integer(static_cast<unsigned long>(G_.orders()[i]));
    IntMatrix S, V;
    smith_normal_form(A, u_, S, V);
    s_.resize(r);
    for (size_t i = 0; i < r; ++i) s_[i] = S[i][i];
}

bool Subgroup::contains(const GroupElt& x) const {
    const size_t r = G_.rank();
    for (size_t i = 0; i < r; ++i) {
        Integer y(0);
        for (size_t j = 0; j < r; ++j) y += u_[i][j] * Integer(static_cast<unsigned long>(x[j]));
        if (s_[i] == 0) {
            if (y != 0) return false;
        } else if (y % s_[i] != 0) {
            return false;
        }
    }
    return true;
}

uint64_t Subgroup::size() const {
    if (size_ == 0) {
        uint64_t n = 0;
        for (uint64_t i = 0; i < G_.size(); ++i)
            if (contains(G_.element_at(i))) ++n;
        size_ = n;
    }
    return size_;
}

std::vector<GroupElt> Subgroup::elements() const {
    std::vector<GroupElt> out;
    for (uint64_t i = 0; i < G_.size(); ++i) {
        GroupElt g = G_.element_at(i);
        if (contains(g)) out.push_back(std::move(g));
    }
    size_ = out.size();
    return out;
}

GroupElt QuotientGroup::project(const GroupElt& g) const {
    GroupElt out(moduli.size());
    for (size_t i = 0; i < moduli.size(); ++i) {
        Integer y(0);
        for (size_t j = 0; j < rows[i].size(); ++j)
            y += rows[i][j] * Integer(static_cast<unsigned long>(g[j]));
        Integer m;
        mpz_fdiv_r_ui(m.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(moduli[i]));
        out[i] = m.get_ui();
    }
    return out;
}

QuotientGroup quotient(const FiniteAbelianGroup& G, const Subgroup& H) {
    if (H.ambient() != G) throw std::invalid_argument("subgroup of a different group");
    const size_t r = G.rank();
    const IntMatrix& U = H.left_transform();
    const std::vector<Integer>& s = H.smith_diagonal();
    QuotientGroup q;
    std::vector<uint64_t> mods;
    for (size_t i = 0; i < r; ++i) {
        if (s[i] == 1) continue;
        if (s[i] == 0 || !s[i].fits_ulong_p())
            throw std::logic_error("unexpected invariant factor");
        mods.push_back(s[i].get_ui());
        q.rows.push_back(U[i]);
    }
    q.moduli = mods;
    q.group = FiniteAbelianGroup(std::move(mods));
    return q;
}

GroupRingElt GroupRingElt::basis(const FiniteAbelianGroup& G, const GroupElt& g,
                                 const CyclotomicNumber& c) {
    GroupRingElt x(G);
    x.add_term(g, c);
    return x;
}

GroupRingElt GroupRingElt::scalar(const FiniteAbelianGroup& G, const CyclotomicNumber& c) {
    return basis(G, G.identity(), c);
}

CyclotomicNumber GroupRingElt::coeff(const GroupElt& g) const {
    uint64_t idx = G_.index_of(g);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                               [](const auto& t, uint64_t v) { return t.first < v; });
    if (it != terms_.end() && it->first == idx) return it->second;
    return CyclotomicNumber::zero();
}

void GroupRingElt::add_term(const GroupElt& g, const CyclotomicNumber& c) {
    if (c.is_zero()) return;
    uint64_t idx = G_.index_of(g);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), idx,
                               [](const auto& t, uint64_t v) { return t.first < v; });
    if (it != terms_.end() && it->first == idx) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {idx, c});
    }
}

GroupRingElt GroupRingElt::operator-() const {
    GroupRingElt r = *this;
    for (auto& [i, c] : r.terms_) c = -c;
    return r;
}

GroupRingElt GroupRingElt::operator+(const GroupRingElt& o) const {
    if (G_ != o.G_) throw std::invalid_argument("group ring mismatch");
    GroupRingElt r(G_);
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            CyclotomicNumber s = terms_[i].second + o.terms_[j].second;
            if (!s.is_zero()) r.terms_.push_back({terms_[i].first, std::move(s)});
            ++i;
            ++j;
        }
    }
    return r;
}

GroupRingElt GroupRingElt::operator-(const GroupRingElt& o) const { return *this + (-o); }

GroupRingElt GroupRingElt::operator*(const GroupRingElt& o) const {
    if (G_ != o.G_) throw std::invalid_argument("group ring mismatch");
    std::map<uint64_t, CyclotomicNumber> acc;
    std::vector<GroupElt> lhs, rhs;
    lhs.reserve(terms_.size());
    rhs.reserve(o.terms_.size());
    for (const auto& [i, c] : terms_) lhs.push_back(G_.element_at(i));
    for (const auto& [j, c] : o.terms_) rhs.push_back(G_.element_at(j));
    for (size_t a = 0; a < terms_.size(); ++a)
        for (size_t b = 0; b < o.terms_.size(); ++b) {
            uint64_t k = G_.index_of(G_.add(lhs[a], rhs[b]));
            auto [it, fresh] = acc.try_emplace(k, CyclotomicNumber::zero());
            (void)fresh;
            it->second += terms_[a].second * o.terms_[b].second;
        }
    GroupRingElt r(G_);
    for (auto& [k, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({k, std::move(c)});
    return r;
}

bool GroupRingElt::operator==(const GroupRingElt& o) const {
    if (G_ != o.G_) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second)
            return false;
    return true;
}

GroupRingElt GroupRingElt::scale(const CyclotomicNumber& c) const {
    GroupRingElt r(G_);
    if (c.is_zero()) return r;
    r.terms_ = terms_;
    for (auto& [i, v] : r.terms_) v = v * c;
    return r;
}

GroupRingElt GroupRingElt::sharp() const {
    GroupRingElt r(G_);
    for (const auto& [i, c] : terms_) r.add_term(G_.neg(G_.element_at(i)), c);
    return r;
}

GroupRingElt GroupRingElt::map_to(const FiniteAbelianGroup& target,
                                  const std::function<GroupElt(const GroupElt&)>& f) const {
    GroupRingElt r(target);
    for (const auto& [i, c] : terms_) r.add_term(f(G_.element_at(i)), c);
    return r;
}

CyclotomicNumber GroupRingElt::chi_component(const Character& chi) const {
    if (chi.group() != G_) throw std::invalid_argument("character group mismatch");
    uint64_t L = G_.exponent();
    CyclotomicNumber sum = CyclotomicNumber::zero();
    for (const auto& [i, c] : terms_) {
        CyclotomicNumber phase =
            CyclotomicNumber::root_of_unity(L, static_cast<int64_t>(chi.exponent_on(G_.element_at(i))));
        sum += c * phase;
    }
    return sum;
}

std::string GroupRingElt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : terms_) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ")*g";
        GroupElt g = G_.element_at(i);
        os << "[";
        for (size_t j = 0; j < g.size(); ++j) os << (j ? "," : "") << g[j];
        os << "]";
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

GroupRingElt character_idempotent(const Character& chi) {
    const FiniteAbelianGroup& G = chi.group();
    Rational inv(1);
    inv /= Rational(static_cast<unsigned long>(G.size()));
    GroupRingElt e(G);
    for (uint64_t i = 0; i < G.size(); ++i) {
        GroupElt g = G.element_at(i);
        CyclotomicNumber v = chi(g);
        e.add_term(G.neg(g), inv * v);
    }
    return e;
}

GroupRingElt subgroup_idempotent(const FiniteAbelianGroup& G, const std::vector<GroupElt>& H) {
    Rational inv(1);
    inv /= Rational(static_cast<unsigned long>(H.size()));
    GroupRingElt e(G);
    for (const auto& h : H) e.add_term(h, CyclotomicNumber(inv));
    return e;
}

CyclotomicNumber cyclotomic_det(std::vector<std::vector<CyclotomicNumber>> m) {
    const size_t n = m.size();
    CyclotomicNumber det = CyclotomicNumber::one();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return CyclotomicNumber::zero();
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        CyclotomicNumber inv = m[c][c].inverse();
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            CyclotomicNumber f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

GroupRingElt group_ring_det(const FiniteAbelianGroup& G,
                            const std::vector<std::vector<GroupRingElt>>& m) {
    const size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    std::vector<Character> chars = all_characters(G);
    std::vector<CyclotomicNumber> dets;
    dets.reserve(chars.size());
    for (const auto& chi : chars) {
        std::vector<std::vector<CyclotomicNumber>> mc(n, std::vector<CyclotomicNumber>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) mc[i][j] = m[i][j].chi_component(chi);
        dets.push_back(cyclotomic_det(std::move(mc)));
    }
    // (1/|G|) sum_sigma (sum_chi det_chi chi(sigma)) sigma^{-1}
    Rational inv(1);
    inv /= Rational(static_cast<unsigned long>(G.size()));
    GroupRingElt out(G);
    for (uint64_t i = 0; i < G.size(); ++i) {
        GroupElt g = G.element_at(i);
        CyclotomicNumber s = CyclotomicNumber::zero();
        for (size_t k = 0; k < chars.size(); ++k) {
            if (dets[k].is_zero()) continue;
            s += dets[k] * chars[k](g);
        }
        out.add_term(G.neg(g), inv * s);
    }
    return out;
}

}  // namespace etnckit
