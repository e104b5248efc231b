/**
 * @file hilbert.hpp
 * @brief Finite-dimensional Hilbert-space substrate.
 *
 * Every space is identified with C^n through a fixed orthonormal coordinate
 * system. Operators are dense complex matrices; subspaces are stored through
 * orthonormal column bases. Dimension questions (rank, kernel, range, sums,
 * intersections, quotients) are answered with a relative singular-value
 * threshold so that every dimension comes out as an exact integer.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fredholm {

using Index = Eigen::Index;
using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Shapes do not compose, add, or partition.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite input, bad tolerance, or a malformed value object.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical kernel (SVD) failed to converge.
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quantity that must vanish did not vanish within tolerance.
class InconsistencyError : public std::runtime_error {
public:
    InconsistencyError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

struct Tolerance {
    /// Singular values at or below rank_rtol * max(rows, cols) * reference are treated as zero.
    double rank_rtol = 1e-10;
    /// Absolute threshold for identity residuals (already normalized by a scale).
    double residual_atol = 1e-9;

    /// Throws ValidationError unless both values lie in (0, 1).
    void validate() const;
};

/**
 * Dense complex operator between coordinate spaces C^cols -> C^rows.
 *
 * Empty shapes (0 x n, n x 0, 0 x 0) are legal; they model maps into or out
 * of the zero space. All entries are finite.
 */
class Operator {
public:
    Operator() = default;
    /// Zero operator of the given shape.
    Operator(Index rows, Index cols);
    /// Takes ownership of @p entries; throws ValidationError on NaN/Inf.
    explicit Operator(Matrix entries);

    static Operator zero(Index rows, Index cols) { return Operator(rows, cols); }
    static Operator identity(Index n);
    /// Real diagonal operator.
    static Operator diagonal(std::span<const double> values);

    Index rows() const noexcept { return m_.rows(); }
    Index cols() const noexcept { return m_.cols(); }
    bool empty() const noexcept { return m_.size() == 0; }
    const Matrix& matrix() const noexcept { return m_; }
    Scalar operator()(Index i, Index j) const { return m_(i, j); }

    /// Entrywise equality.
    friend bool operator==(const Operator& lhs, const Operator& rhs);

private:
    Matrix m_;
};

/**
 * Subspace of C^ambient_dim held by an orthonormal basis (one vector per
 * column). Construction always re-orthonormalizes.
 */
class Subspace {
public:
    /// The zero subspace of C^ambient.
    explicit Subspace(Index ambient = 0);

    /// Span of the columns of @p vectors, rank decided with @p tol.
    static Subspace span(const Matrix& vectors, const Tolerance& tol = {});
    /// Whole space C^n.
    static Subspace full(Index n);

    Index ambient_dim() const noexcept { return ambient_; }
    Index dim() const noexcept { return basis_.cols(); }
    const Matrix& basis() const noexcept { return basis_; }

    /// Orthogonal projector onto the subspace, as an ambient x ambient matrix.
    Matrix projector() const;
    /// max |basis^* basis - I|; should stay below 1e-10.
    double orthonormality_defect() const;

private:
    Subspace(Index ambient, Matrix orthonormal_basis);
    friend Subspace orthogonal_complement(const Subspace&);
    friend Subspace relative_complement(const Subspace&, const Subspace&, const Tolerance&);
    friend Subspace kernel(const Operator&, const Tolerance&, double);
    friend Subspace range(const Operator&, const Tolerance&, double);

    Index ambient_ = 0;
    Matrix basis_;
};

// --- elementary algebra -----------------------------------------------------

Operator adjoint(const Operator& a);
Operator compose(const Operator& a, const Operator& b);  ///< a * b
Operator add(const Operator& a, const Operator& b);
Operator subtract(const Operator& a, const Operator& b);
Operator scale(const Operator& a, Scalar factor);

/// Block-diagonal operator with the blocks placed in list order.
Operator direct_sum(std::span<const Operator> blocks);
Operator direct_sum(std::initializer_list<Operator> blocks);

/**
 * [[a11, a12], [a21, a22]]. Row partition is (a11.rows, a21.rows), column
 * partition is (a11.cols, a12.cols); all four blocks must agree with it.
 */
Operator block_2x2(const Operator& a11, const Operator& a12, const Operator& a21, const Operator& a22);

/// Copy of the block starting at (row, col).
Operator extract_block(const Operator& a, Index row, Index col, Index rows, Index cols);

// --- spectral quantities ----------------------------------------------------

/// Singular values in decreasing order.
std::vector<double> singular_values(const Operator& a);

/// Largest singular value; 0 for empty operators.
double operator_norm(const Operator& a);

/**
 * Number of singular values strictly above
 * tol.rank_rtol * max(rows, cols) * max(sigma_max, reference_norm).
 *
 * The optional @p reference_norm lets callers rank a product AB against
 * |A||B| instead of against its own (possibly rounding-level) largest
 * singular value.
 */
Index numerical_rank(const Operator& a, const Tolerance& tol = {}, double reference_norm = 0.0);

/// Orthonormal basis of the right singular vectors below the rank threshold.
Subspace kernel(const Operator& a, const Tolerance& tol = {}, double reference_norm = 0.0);
/// Orthonormal basis of the left singular vectors above the rank threshold.
Subspace range(const Operator& a, const Tolerance& tol = {}, double reference_norm = 0.0);

/**
 * Drops the singular values of @p a that fall below the rank threshold taken
 * against @p reference_norm. Returns @p a unchanged when no value is dropped,
 * so exact inputs stay bit-identical.
 */
Operator truncate_rank(const Operator& a, const Tolerance& tol, double reference_norm);

/// Classical index dim N(A) - dim(C^rows / R(A)).
long long fredholm_index(const Operator& a, const Tolerance& tol = {});

// --- subspace arithmetic ----------------------------------------------------

Index subspace_sum_dim(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
Index subspace_intersection_dim(const Subspace& a, const Subspace& b, const Tolerance& tol = {});
/// dim a / (a ∩ b)
Index quotient_dim(const Subspace& a, const Subspace& b, const Tolerance& tol = {});

Subspace orthogonal_complement(const Subspace& a);
/// Orthogonal complement of @p inner inside @p outer (outer ⊖ inner).
Subspace relative_complement(const Subspace& outer, const Subspace& inner, const Tolerance& tol = {});

/// Operator-norm distance |a - b|.
double distance(const Operator& a, const Operator& b);

}  // namespace fredholm
