/**
 * @file pair.hpp
 * @brief Fredholm pairs (S, T) with S: H1 -> H2 and T: H2 -> H1.
 *
 * The four quotient dimensions
 *   a = dim N(S) / (N(S) ∩ R(T)),   b = dim R(T) / (N(S) ∩ R(T)),
 *   c = dim N(T) / (N(T) ∩ R(S)),   d = dim R(S) / (N(T) ∩ R(S))
 * give ind(S, T) = a - b - c + d. Around them this header provides the
 * characterizing operators: the compression to the orthocomplements of
 * R(TS) and R(ST), the block operator U = [[0, T], [S, 0]] on H1 ⊕ H2 with
 * V = U + U^* and its Laplacian blocks, the product-zero decomposition, the
 * Euler operators S + T^* and T + S^*, and the dual pair (T^*, S^*).
 */

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "fredholm/checks.hpp"
#include "fredholm/hilbert.hpp"

namespace fredholm {

class FredholmPair {
public:
    /// Throws DimensionError unless S is m x n and T is n x m.
    FredholmPair(Operator s, Operator t);

    const Operator& S() const noexcept { return s_; }
    const Operator& T() const noexcept { return t_; }
    Index dim_h1() const noexcept { return s_.cols(); }
    Index dim_h2() const noexcept { return s_.rows(); }

    friend bool operator==(const FredholmPair& lhs, const FredholmPair& rhs) {
        return lhs.s_ == rhs.s_ && lhs.t_ == rhs.t_;
    }

private:
    Operator s_;
    Operator t_;
};

struct PairAnalysis {
    Index a = 0;
    Index b = 0;
    Index c = 0;
    Index d = 0;
    long long index = 0;
    Index rank_ST = 0;
    Index rank_TS = 0;
    /// Norms recorded along the way: "norm.S", "norm.T", "norm.ST", "norm.TS".
    std::map<std::string, double> residuals;

    bool same_dimensions(const PairAnalysis& other) const {
        return a == other.a && b == other.b && c == other.c && d == other.d;
    }
};

/// 1 + |S||T|: the scale against which products ST, TS are judged to vanish.
double product_scale(const FredholmPair& p);
/// 1 + max(|S|, |T|)^2: the scale of U U^*, V^2 and the Laplacian blocks.
double block_scale(const FredholmPair& p);

/// Products ST and TS both vanish at residual_atol * product_scale.
bool is_product_zero(const FredholmPair& p, const Tolerance& tol = {});

PairAnalysis analyze_pair(const FredholmPair& p, const Tolerance& tol = {});

/// (T, S) on the exchanged spaces.
FredholmPair swap_pair(const FredholmPair& p);
/// (T^*, S^*) on the exchanged spaces.
FredholmPair dual_pair(const FredholmPair& p);

/**
 * Compression of (S, T) to H_i ⊖ F_i with F1 = R(TS), F2 = R(ST).
 *
 * The compressed operators live in orthonormal coordinates of the
 * orthocomplements: S_c = P2 S P1^*, T_c = P1 T P2^*, where P_i maps H_i onto
 * those coordinates (P_i = basis_i^*).
 */
struct CompressedPair {
    Subspace F1;
    Subspace F2;
    Subspace H1c;  ///< F1^⊥ ⊂ H1
    Subspace H2c;  ///< F2^⊥ ⊂ H2
    Operator S_c;
    Operator T_c;
    Operator P1;
    Operator P2;
    Index rank_ST = 0;
    Index rank_TS = 0;
    /// max(|T_c S_c|, |S_c T_c|) / product_scale(original pair).
    double product_residual = 0.0;

    FredholmPair pair() const { return {S_c, T_c}; }
};

/// Throws InconsistencyError when the compressed products exceed residual_atol.
CompressedPair compress_pair(const FredholmPair& p, const Tolerance& tol = {});

/// U = [[0, T], [S, 0]] on H1 ⊕ H2, H1 coordinates first.
Operator build_block_U(const FredholmPair& p);
/// V = U + U^*.
Operator build_V(const FredholmPair& p);
/// (T T^* + S^* S on H1, S S^* + T^* T on H2).
std::pair<Operator, Operator> build_laplacian_blocks(const FredholmPair& p);

/// Residuals of the block identities, each divided by block_scale.
struct BlockResiduals {
    double self_adjoint = 0.0;        ///< |V - V^*|
    double laplacian_identity = 0.0;  ///< |U U^* + U^* U - diag(blocks)|
    double square_identity = 0.0;     ///< |V^2 - (U^2 + U^*^2 + U U^* + U^* U)|
};
BlockResiduals block_identity_residuals(const FredholmPair& p);

/// Kernel dimensions of V and of the two Laplacian blocks.
struct HarmonicDims {
    Index kernel_V = 0;
    Index kernel_laplacian_h1 = 0;
    Index kernel_laplacian_h2 = 0;
};
HarmonicDims harmonic_dims(const FredholmPair& p, const Tolerance& tol = {});

/**
 * Orthogonal splitting for product-zero pairs:
 *   H1 = (R(T) ⊕ N1) ⊕ L1 with R(T) ⊕ N1 = N(S), L1 = N(S)^⊥,
 *   H2 = (R(S) ⊕ N2) ⊕ L2 with R(S) ⊕ N2 = N(T), L2 = N(T)^⊥.
 * Also records dim N(S + T^*) and codim R(S + T^*), which equal dim N1 and
 * dim N2 respectively.
 */
struct ProductZeroDecomposition {
    Subspace RT, N1, L1;
    Subspace RS, N2, L2;
    Index euler_kernel_dim = 0;
    Index euler_cokernel_dim = 0;
};

class ProductNotZeroError : public InconsistencyError {
public:
    ProductNotZeroError(const std::string& what, double norm_st, double norm_ts)
        : InconsistencyError(what, std::max(norm_st, norm_ts)), norm_st_(norm_st), norm_ts_(norm_ts) {}
    double norm_ST() const noexcept { return norm_st_; }
    double norm_TS() const noexcept { return norm_ts_; }

private:
    double norm_st_;
    double norm_ts_;
};

/// Throws ProductNotZeroError unless is_product_zero(p, tol).
ProductZeroDecomposition product_zero_decomposition(const FredholmPair& p, const Tolerance& tol = {});

/// (ind(S + T^*), ind(T + S^*)) as classical operator indices.
std::pair<long long, long long> euler_index(const FredholmPair& p, const Tolerance& tol = {});

/**
 * Every identity the characterization theorems assert, evaluated on @p p:
 * index paths, swap and duality, compression law, block identities, and the
 * quantitative product-zero characterizations (on the compressed pair always,
 * and on the pair itself when its products vanish).
 */
CheckList verify_pair(const FredholmPair& p, const Tolerance& tol = {});

/// Product-zero characterizations only; @p prefix names the checks.
CheckList verify_product_zero(const FredholmPair& p, const Tolerance& tol, const std::string& prefix);

}  // namespace fredholm
