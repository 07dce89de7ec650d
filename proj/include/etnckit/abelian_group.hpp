#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "etnckit/cyclotomic.hpp"

namespace etnckit {

using GroupElt = std::vector<uint64_t>;
using IntMatrix = std::vector<std::vector<Integer>>;

// U * A * V = S, U and V unimodular, S diagonal with s_i | s_{i+1}, s_i >= 0.
void smith_normal_form(const IntMatrix& A, IntMatrix& U, IntMatrix& S, IntMatrix& V);

// G = prod_i Z/d_i with elements stored as exponent vectors, 0 <= e_i < d_i.
class FiniteAbelianGroup {
  public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<uint64_t> orders);

    size_t rank() const { return d_.size(); }
    uint64_t size() const { return size_; }
    uint64_t exponent() const { return exponent_; }
    const std::vector<uint64_t>& orders() const { return d_; }

    GroupElt identity() const { return GroupElt(d_.size(), 0); }
    GroupElt add(const GroupElt& a, const GroupElt& b) const;
    GroupElt neg(const GroupElt& a) const;
    GroupElt scalar(const GroupElt& a, int64_t k) const;
    uint64_t element_order(const GroupElt& a) const;

    // Mixed-radix index, last coordinate fastest.
    uint64_t index_of(const GroupElt& a) const;
    GroupElt element_at(uint64_t idx) const;
    std::vector<GroupElt> elements() const;

    bool operator==(const FiniteAbelianGroup& o) const { return d_ == o.d_; }
    bool operator!=(const FiniteAbelianGroup& o) const { return d_ != o.d_; }

    static FiniteAbelianGroup product(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b);

  private:
    std::vector<uint64_t> d_;
    uint64_t size_ = 1;
    uint64_t exponent_ = 1;
};

// chi(g) = zeta_L^{sum_i e_i g_i L/d_i} with L the group exponent.
class Character {
  public:
    Character() = default;
    Character(FiniteAbelianGroup G, std::vector<uint64_t> expo);

    const FiniteAbelianGroup& group() const { return G_; }
    const std::vector<uint64_t>& exponents() const { return e_; }

    // k with chi(g) = zeta_L^k, 0 <= k < L.
    uint64_t exponent_on(const GroupElt& g) const;
    CyclotomicNumber operator()(const GroupElt& g) const;

    bool is_trivial() const;
    uint64_t order() const;
    Character inverse_char() const;
    Character times(const Character& o) const;
    bool operator==(const Character& o) const { return G_ == o.G_ && e_ == o.e_; }

  private:
    FiniteAbelianGroup G_;
    std::vector<uint64_t> e_;
};

// All characters, trivial first, exponent vectors in lexicographic order with
// the last coordinate moving fastest.
std::vector<Character> all_characters(const FiniteAbelianGroup& G);

// Subgroup given by a generator list; membership is decided by solving
// [gens | diag(d)] v = x over Z via the Smith normal form, not by enumeration.
class Subgroup {
  public:
    Subgroup(FiniteAbelianGroup G, std::vector<GroupElt> gens);

    const FiniteAbelianGroup& ambient() const { return G_; }
    const std::vector<GroupElt>& generators() const { return gens_; }

    bool contains(const GroupElt& x) const;
    uint64_t size() const;
    std::vector<GroupElt> elements() const;  // ambient scan filtered by contains()

    const IntMatrix& left_transform() const { return u_; }
    const std::vector<Integer>& smith_diagonal() const { return s_; }

  private:
    FiniteAbelianGroup G_;
    std::vector<GroupElt> gens_;
    IntMatrix u_;                   // left transform of the relation matrix
    std::vector<Integer> s_;        // diagonal of its Smith form, one per ambient rank
    mutable uint64_t size_ = 0;     // lazily counted
};

// G/H presented on invariant factors; project() is the canonical surjection.
struct QuotientGroup {
    FiniteAbelianGroup group;
    std::vector<std::vector<Integer>> rows;  // kept rows of U
    std::vector<uint64_t> moduli;            // invariant factors > 1

    GroupElt project(const GroupElt& g) const;
};

QuotientGroup quotient(const FiniteAbelianGroup& G, const Subgroup& H);

// Sparse element of K[G], K a union of cyclotomic fields; terms sorted by index.
class GroupRingElt {
  public:
    GroupRingElt() = default;
    explicit GroupRingElt(FiniteAbelianGroup G) : G_(std::move(G)) {}

    static GroupRingElt zero(const FiniteAbelianGroup& G) { return GroupRingElt(G); }
    static GroupRingElt basis(const FiniteAbelianGroup& G, const GroupElt& g,
                              const CyclotomicNumber& c = CyclotomicNumber::one());
    static GroupRingElt scalar(const FiniteAbelianGroup& G, const CyclotomicNumber& c);
    static GroupRingElt one(const FiniteAbelianGroup& G) {
        return scalar(G, CyclotomicNumber::one());
    }

    const FiniteAbelianGroup& group() const { return G_; }
    const std::vector<std::pair<uint64_t, CyclotomicNumber>>& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    CyclotomicNumber coeff(const GroupElt& g) const;
    void add_term(const GroupElt& g, const CyclotomicNumber& c);

    GroupRingElt operator-() const;
    GroupRingElt operator+(const GroupRingElt& o) const;
    GroupRingElt operator-(const GroupRingElt& o) const;
    GroupRingElt operator*(const GroupRingElt& o) const;
    GroupRingElt& operator+=(const GroupRingElt& o) { return *this = *this + o; }
    GroupRingElt& operator-=(const GroupRingElt& o) { return *this = *this - o; }
    GroupRingElt& operator*=(const GroupRingElt& o) { return *this = *this * o; }
    bool operator==(const GroupRingElt& o) const;
    bool operator!=(const GroupRingElt& o) const { return !(*this == o); }

    GroupRingElt scale(const CyclotomicNumber& c) const;
    // The involution sigma -> sigma^{-1} on group terms.
    GroupRingElt sharp() const;
    // Pushes terms through f into the target group, accumulating collisions.
    GroupRingElt map_to(const FiniteAbelianGroup& target,
                        const std::function<GroupElt(const GroupElt&)>& f) const;

    // sum_sigma c_sigma chi(sigma)
    CyclotomicNumber chi_component(const Character& chi) const;

    std::string to_string() const;

  private:
    FiniteAbelianGroup G_;
    std::vector<std::pair<uint64_t, CyclotomicNumber>> terms_;
};

inline GroupRingElt operator*(const CyclotomicNumber& c, const GroupRingElt& x) {
    return x.scale(c);
}

// (1/|G|) sum_sigma chi(sigma) sigma^{-1}
GroupRingElt character_idempotent(const Character& chi);
// (1/#H) sum_{h in H} h
GroupRingElt subgroup_idempotent(const FiniteAbelianGroup& G, const std::vector<GroupElt>& H);

// Determinant over K[G] of a square matrix, computed per character component and
// reassembled as (1/|G|) sum_sigma (sum_chi det_chi chi(sigma)) sigma^{-1}.
GroupRingElt group_ring_det(const FiniteAbelianGroup& G,
                            const std::vector<std::vector<GroupRingElt>>& m);

// Exact determinant of a cyclotomic matrix by Gaussian elimination.
CyclotomicNumber cyclotomic_det(std::vector<std::vector<CyclotomicNumber>> m);

}  // namespace etnckit
