/**
 * @file chain.hpp
 * @brief Fredholm chains 0 -> H_n -> ... -> H_1 -> H_0 -> 0.
 *
 * A chain stores dims = [dim H_0, ..., dim H_n] and deltas = [δ_1, ..., δ_n]
 * with δ_p: H_p -> H_{p-1}. Outside 0..n every space and map is zero, so
 * delta(p) and dim(p) accept any integer degree.
 */

#pragma once

#include <vector>

#include "fredholm/checks.hpp"
#include "fredholm/hilbert.hpp"
#include "fredholm/pair.hpp"

namespace fredholm {

class Chain {
public:
    /// Throws DimensionError naming the first degree p whose δ_p has the wrong shape.
    Chain(std::vector<Index> dims, std::vector<Operator> deltas);

    /// Chain with zero differentials on the given spaces.
    static Chain zero(std::vector<Index> dims);

    /// Top degree: dims.size() - 1.
    int top_degree() const noexcept { return static_cast<int>(dims_.size()) - 1; }
    const std::vector<Index>& dims() const noexcept { return dims_; }
    const std::vector<Operator>& deltas() const noexcept { return deltas_; }

    /// dim H_p, zero outside 0..n.
    Index dim(int p) const;
    /// δ_p: H_p -> H_{p-1}, a zero operator of the right shape outside 1..n.
    Operator delta(int p) const;

    /// Largest p with dim H_p > 0 (0 when every space is zero).
    int minimal_top_degree() const;
    /// Copy with trailing zero spaces removed, so top_degree() == minimal_top_degree().
    Chain stripped() const;

    friend bool operator==(const Chain& lhs, const Chain& rhs) {
        return lhs.dims_ == rhs.dims_ && lhs.deltas_ == rhs.deltas_;
    }

private:
    std::vector<Index> dims_;
    std::vector<Operator> deltas_;
};

/// Shape-chaining result: ranks of δ_p δ_{p+1} for p = 1..n-1.
struct ChainPrecheck {
    std::vector<Index> consecutive_ranks;
    /// Degrees p where δ_p δ_{p+1} ≠ 0 (legal, but then the chain is not a complex).
    std::vector<int> non_complex_degrees;

    bool is_complex() const { return non_complex_degrees.empty(); }
};

struct DegreeQuotients {
    Index kernel_quotient = 0;  ///< dim N(δ_p) / (N(δ_p) ∩ R(δ_{p+1}))
    Index range_quotient = 0;   ///< dim R(δ_{p+1}) / (N(δ_p) ∩ R(δ_{p+1}))
};

struct ChainAnalysis {
    std::vector<DegreeQuotients> per_degree;  ///< p = 0..n
    long long index = 0;
    std::vector<Index> consecutive_ranks;

    bool same_dimensions(const ChainAnalysis& other) const;
};

/// Euler characteristic Σ (-1)^p dim H_p.
long long euler_characteristic(const Chain& ch);

ChainPrecheck validate_chain(const Chain& ch, const Tolerance& tol = {});

ChainAnalysis analyze_chain(const Chain& ch, const Tolerance& tol = {});

/**
 * Even/odd reduction: H1 = ⊕_{p even} H_p, H2 = ⊕_{p odd} H_p in ascending
 * degree, S = ⊕_{p even} δ_p, T = ⊕_{p odd} δ_p.
 */
FredholmPair chain_to_pair(const Chain& ch);

/// Offset of H_p inside its even (H1) or odd (H2) summand.
Index summand_offset(const Chain& ch, int p);

/// Δ_p = δ_{p+1} δ_{p+1}^* + δ_p^* δ_p for p = 0..n.
std::vector<Operator> chain_laplacians(const Chain& ch);

/**
 * Stitched operators ⊕_{p even}(δ_p + δ_{p+1}^*): H1 -> H2 and
 * ⊕_{p odd}(δ_p + δ_{p+1}^*): H2 -> H1, assembled block by block in the
 * chain_to_pair coordinates, with their classical indices.
 */
struct StitchedOperators {
    Operator even;
    Operator odd;
    long long index_even = 0;
    long long index_odd = 0;
};
StitchedOperators stitched_euler_operators(const Chain& ch, const Tolerance& tol = {});

/**
 * Dual chain H'_p = H_{n-p}, δ'_p = δ_{n-p+1}^*, with n the minimal top
 * degree (trailing zero spaces are stripped first).
 */
Chain dual_chain(const Chain& ch);

/// Every chain identity: Euler count, reduction, stitching, duality, Laplacians.
CheckList verify_chain(const Chain& ch, const Tolerance& tol = {});

}  // namespace fredholm
