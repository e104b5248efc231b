#include "fredholm/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fredholm {

namespace {

std::string shape(const Operator& a) {
    std::ostringstream os;
    os << a.rows() << "x" << a.cols();
    return os.str();
}

struct Svd {
    Eigen::VectorXd sigma;
    Matrix u;  // full, rows x rows
    Matrix v;  // full, cols x cols
};

Svd full_svd(const Matrix& m) {
    Svd out;
    if (m.size() == 0) {
        out.sigma.resize(0);
        out.u = Matrix::Identity(m.rows(), m.rows());
        out.v = Matrix::Identity(m.cols(), m.cols());
        return out;
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) {
        std::ostringstream os;
        os << "SVD failed to converge on a " << m.rows() << "x" << m.cols() << " matrix";
        throw ComputationError(os.str());
    }
    out.sigma = svd.singularValues();
    out.u = svd.matrixU();
    out.v = svd.matrixV();
    return out;
}

Index rank_from_sigma(const Eigen::VectorXd& sigma, Index rows, Index cols, const Tolerance& tol,
                      double reference_norm) {
    if (sigma.size() == 0) return 0;
    const double scale = std::max(sigma(0), reference_norm);
    if (scale == 0.0) return 0;
    const double threshold = tol.rank_rtol * static_cast<double>(std::max(rows, cols)) * scale;
    Index r = 0;
    while (r < sigma.size() && sigma(r) > threshold) ++r;
    return r;
}

}  // namespace

void Tolerance::validate() const {
    auto ok = [](double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; };
    if (!ok(rank_rtol)) throw ValidationError("rank_rtol must lie in (0, 1)");
    if (!ok(residual_atol)) throw ValidationError("residual_atol must lie in (0, 1)");
}

// --- Operator ---------------------------------------------------------------

Operator::Operator(Index rows, Index cols) {
    if (rows < 0 || cols < 0) throw DimensionError("operator shape must be non-negative");
    m_ = Matrix::Zero(rows, cols);
}

Operator::Operator(Matrix entries) : m_(std::move(entries)) {
    for (Index j = 0; j < m_.cols(); ++j) {
        for (Index i = 0; i < m_.rows(); ++i) {
            const Scalar z = m_(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                std::ostringstream os;
                os << "non-finite entry at (" << i << ", " << j << ")";
                throw ValidationError(os.str());
            }
        }
    }
}

Operator Operator::identity(Index n) { return Operator(Matrix::Identity(n, n)); }

Operator Operator::diagonal(std::span<const double> values) {
    const auto n = static_cast<Index>(values.size());
    Matrix m = Matrix::Zero(n, n);
    for (Index k = 0; k < n; ++k) m(k, k) = values[static_cast<std::size_t>(k)];
    return Operator(std::move(m));
}

bool operator==(const Operator& lhs, const Operator& rhs) {
    return lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() && lhs.m_ == rhs.m_;
}

// --- Subspace ---------------------------------------------------------------

Subspace::Subspace(Index ambient) : ambient_(ambient), basis_(Matrix::Zero(ambient, 0)) {
    if (ambient < 0) throw DimensionError("ambient dimension must be non-negative");
}

Subspace::Subspace(Index ambient, Matrix orthonormal_basis)
    : ambient_(ambient), basis_(std::move(orthonormal_basis)) {}

Subspace Subspace::span(const Matrix& vectors, const Tolerance& tol) {
    return range(Operator(vectors), tol);
}

Subspace Subspace::full(Index n) { return Subspace(n, Matrix::Identity(n, n)); }

Matrix Subspace::projector() const { return basis_ * basis_.adjoint(); }

double Subspace::orthonormality_defect() const {
    if (dim() == 0) return 0.0;
    const Matrix g = basis_.adjoint() * basis_ - Matrix::Identity(dim(), dim());
    return g.cwiseAbs().maxCoeff();
}

// --- elementary algebra -----------------------------------------------------

Operator adjoint(const Operator& a) { return Operator(Matrix(a.matrix().adjoint())); }

Operator compose(const Operator& a, const Operator& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("compose: cannot apply " + shape(a) + " after " + shape(b));
    }
    return Operator(Matrix(a.matrix() * b.matrix()));
}

Operator add(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("add: shapes " + shape(a) + " and " + shape(b) + " differ");
    }
    return Operator(Matrix(a.matrix() + b.matrix()));
}

Operator subtract(const Operator& a, const Operator& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("subtract: shapes " + shape(a) + " and " + shape(b) + " differ");
    }
    return Operator(Matrix(a.matrix() - b.matrix()));
}

Operator scale(const Operator& a, Scalar factor) { return Operator(Matrix(a.matrix() * factor)); }

Operator direct_sum(std::span<const Operator> blocks) {
    Index rows = 0;
    Index cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix m = Matrix::Zero(rows, cols);
    Index r = 0;
    Index c = 0;
    for (const auto& b : blocks) {
        m.block(r, c, b.rows(), b.cols()) = b.matrix();
        r += b.rows();
        c += b.cols();
    }
    return Operator(std::move(m));
}

Operator direct_sum(std::initializer_list<Operator> blocks) {
    return direct_sum(std::span<const Operator>(blocks.begin(), blocks.size()));
}

Operator block_2x2(const Operator& a11, const Operator& a12, const Operator& a21, const Operator& a22) {
    const Index r1 = a11.rows();
    const Index r2 = a21.rows();
    const Index c1 = a11.cols();
    const Index c2 = a12.cols();
    if (a12.rows() != r1) throw DimensionError("block_2x2: A12 has " + shape(a12) + ", row count must match A11 " + shape(a11));
    if (a21.cols() != c1) throw DimensionError("block_2x2: A21 has " + shape(a21) + ", column count must match A11 " + shape(a11));
    if (a22.rows() != r2 || a22.cols() != c2) {
        throw DimensionError("block_2x2: A22 has " + shape(a22) + ", expected rows of A21 " + shape(a21) +
                             " and columns of A12 " + shape(a12));
    }
    Matrix m(r1 + r2, c1 + c2);
    m.topLeftCorner(r1, c1) = a11.matrix();
    m.topRightCorner(r1, c2) = a12.matrix();
    m.bottomLeftCorner(r2, c1) = a21.matrix();
    m.bottomRightCorner(r2, c2) = a22.matrix();
    return Operator(std::move(m));
}

Operator extract_block(const Operator& a, Index row, Index col, Index rows, Index cols) {
    if (row < 0 || col < 0 || rows < 0 || cols < 0 || row + rows > a.rows() || col + cols > a.cols()) {
        throw DimensionError("extract_block: window exceeds " + shape(a));
    }
    return Operator(Matrix(a.matrix().block(row, col, rows, cols)));
}

// --- spectral quantities ----------------------------------------------------

std::vector<double> singular_values(const Operator& a) {
    if (a.empty()) return {};
    Eigen::JacobiSVD<Matrix> svd(a.matrix());
    if (svd.info() != Eigen::Success) throw ComputationError("SVD failed on a " + shape(a) + " matrix");
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

double operator_norm(const Operator& a) {
    const auto s = singular_values(a);
    return s.empty() ? 0.0 : s.front();
}

double distance(const Operator& a, const Operator& b) { return operator_norm(subtract(a, b)); }

Index numerical_rank(const Operator& a, const Tolerance& tol, double reference_norm) {
    if (a.empty()) return 0;
    Eigen::JacobiSVD<Matrix> svd(a.matrix());
    if (svd.info() != Eigen::Success) throw ComputationError("SVD failed on a " + shape(a) + " matrix");
    return rank_from_sigma(svd.singularValues(), a.rows(), a.cols(), tol, reference_norm);
}

Subspace kernel(const Operator& a, const Tolerance& tol, double reference_norm) {
    const Svd svd = full_svd(a.matrix());
    const Index r = rank_from_sigma(svd.sigma, a.rows(), a.cols(), tol, reference_norm);
    return Subspace(a.cols(), svd.v.rightCols(a.cols() - r));
}

Subspace range(const Operator& a, const Tolerance& tol, double reference_norm) {
    const Svd svd = full_svd(a.matrix());
    const Index r = rank_from_sigma(svd.sigma, a.rows(), a.cols(), tol, reference_norm);
    return Subspace(a.rows(), svd.u.leftCols(r));
}

Operator truncate_rank(const Operator& a, const Tolerance& tol, double reference_norm) {
    if (a.empty()) return a;
    const Svd svd = full_svd(a.matrix());
    const Index r = rank_from_sigma(svd.sigma, a.rows(), a.cols(), tol, reference_norm);
    if (r == svd.sigma.size() || svd.sigma(r) == 0.0) return a;
    const Matrix kept = svd.u.leftCols(r) * svd.sigma.head(r).cast<Scalar>().asDiagonal() * svd.v.leftCols(r).adjoint();
    return Operator(kept);
}

long long fredholm_index(const Operator& a, const Tolerance& tol) {
    const Index r = numerical_rank(a, tol);
    const Index nullity = a.cols() - r;
    const Index cokernel = a.rows() - r;
    return static_cast<long long>(nullity) - static_cast<long long>(cokernel);
}

// --- subspace arithmetic ----------------------------------------------------

namespace {
void require_same_ambient(const Subspace& a, const Subspace& b, const char* op) {
    if (a.ambient_dim() != b.ambient_dim()) {
        std::ostringstream os;
        os << op << ": ambient dimensions " << a.ambient_dim() << " and " << b.ambient_dim() << " differ";
        throw DimensionError(os.str());
    }
}
}  // namespace

Index subspace_sum_dim(const Subspace& a, const Subspace& b, const Tolerance& tol) {
    require_same_ambient(a, b, "subspace_sum_dim");
    Matrix joined(a.ambient_dim(), a.dim() + b.dim());
    joined << a.basis(), b.basis();
    return numerical_rank(Operator(std::move(joined)), tol);
}

Index subspace_intersection_dim(const Subspace& a, const Subspace& b, const Tolerance& tol) {
    require_same_ambient(a, b, "subspace_intersection_dim");
    const Index sum = subspace_sum_dim(a, b, tol);
    return std::max<Index>(0, a.dim() + b.dim() - sum);
}

Index quotient_dim(const Subspace& a, const Subspace& b, const Tolerance& tol) {
    require_same_ambient(a, b, "quotient_dim");
    return std::max<Index>(0, a.dim() - subspace_intersection_dim(a, b, tol));
}

Subspace orthogonal_complement(const Subspace& a) {
    // Kernel of basis^*, ranked against the unit scale of an orthonormal basis.
    const Svd svd = full_svd(a.basis().adjoint());
    return Subspace(a.ambient_dim(), svd.v.rightCols(a.ambient_dim() - a.dim()));
}

Subspace relative_complement(const Subspace& outer, const Subspace& inner, const Tolerance& tol) {
    require_same_ambient(outer, inner, "relative_complement");
    const Matrix residual = outer.basis() - inner.basis() * (inner.basis().adjoint() * outer.basis());
    return range(Operator(residual), tol, 1.0);
}

}  // namespace fredholm
