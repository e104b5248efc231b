#include "fredholm/chain.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace fredholm {

Chain::Chain(std::vector<Index> dims, std::vector<Operator> deltas) : dims_(std::move(dims)), deltas_(std::move(deltas)) {
    if (dims_.empty()) throw DimensionError("chain needs at least one space (H_0)");
    for (std::size_t p = 0; p < dims_.size(); ++p) {
        if (dims_[p] < 0) {
            std::ostringstream os;
            os << "chain: dim H_" << p << " is negative";
            throw DimensionError(os.str());
        }
    }
    if (deltas_.size() + 1 != dims_.size()) {
        std::ostringstream os;
        os << "chain: " << dims_.size() << " spaces need " << dims_.size() - 1 << " maps, got " << deltas_.size();
        throw DimensionError(os.str());
    }
    for (std::size_t p = 1; p < dims_.size(); ++p) {
        const Operator& d = deltas_[p - 1];
        if (d.rows() != dims_[p - 1] || d.cols() != dims_[p]) {
            std::ostringstream os;
            os << "chain: delta_" << p << " is " << d.rows() << "x" << d.cols() << ", expected " << dims_[p - 1] << "x"
               << dims_[p];
            throw DimensionError(os.str());
        }
    }
}

Chain Chain::zero(std::vector<Index> dims) {
    std::vector<Operator> deltas;
    for (std::size_t p = 1; p < dims.size(); ++p) deltas.emplace_back(dims[p - 1], dims[p]);
    return {std::move(dims), std::move(deltas)};
}

Index Chain::dim(int p) const {
    if (p < 0 || p > top_degree()) return 0;
    return dims_[static_cast<std::size_t>(p)];
}

Operator Chain::delta(int p) const {
    if (p >= 1 && p <= top_degree()) return deltas_[static_cast<std::size_t>(p - 1)];
    return Operator::zero(dim(p - 1), dim(p));
}

int Chain::minimal_top_degree() const {
    for (int p = top_degree(); p > 0; --p) {
        if (dims_[static_cast<std::size_t>(p)] > 0) return p;
    }
    return 0;
}

Chain Chain::stripped() const {
    const int n = minimal_top_degree();
    std::vector<Index> dims(dims_.begin(), dims_.begin() + n + 1);
    std::vector<Operator> deltas(deltas_.begin(), deltas_.begin() + n);
    return {std::move(dims), std::move(deltas)};
}

bool ChainAnalysis::same_dimensions(const ChainAnalysis& other) const {
    if (per_degree.size() != other.per_degree.size()) return false;
    for (std::size_t p = 0; p < per_degree.size(); ++p) {
        if (per_degree[p].kernel_quotient != other.per_degree[p].kernel_quotient ||
            per_degree[p].range_quotient != other.per_degree[p].range_quotient) {
            return false;
        }
    }
    return true;
}

long long euler_characteristic(const Chain& ch) {
    long long chi = 0;
    for (int p = 0; p <= ch.top_degree(); ++p) chi += (p % 2 == 0 ? 1 : -1) * static_cast<long long>(ch.dim(p));
    return chi;
}

ChainPrecheck validate_chain(const Chain& ch, const Tolerance& tol) {
    ChainPrecheck out;
    for (int p = 1; p < ch.top_degree(); ++p) {
        const Operator lower = ch.delta(p);
        const Operator upper = ch.delta(p + 1);
        const Index r = numerical_rank(compose(lower, upper), tol, operator_norm(lower) * operator_norm(upper));
        out.consecutive_ranks.push_back(r);
        if (r > 0) out.non_complex_degrees.push_back(p);
    }
    return out;
}

ChainAnalysis analyze_chain(const Chain& ch, const Tolerance& tol) {
    ChainAnalysis out;
    out.consecutive_ranks = validate_chain(ch, tol).consecutive_ranks;
    for (int p = 0; p <= ch.top_degree(); ++p) {
        const Subspace n = kernel(ch.delta(p), tol);
        const Subspace r = range(ch.delta(p + 1), tol);
        DegreeQuotients q;
        q.kernel_quotient = quotient_dim(n, r, tol);
        q.range_quotient = quotient_dim(r, n, tol);
        out.index += (p % 2 == 0 ? 1 : -1) *
                     (static_cast<long long>(q.kernel_quotient) - static_cast<long long>(q.range_quotient));
        out.per_degree.push_back(q);
    }
    return out;
}

Index summand_offset(const Chain& ch, int p) {
    Index offset = 0;
    for (int q = p % 2; q < p; q += 2) offset += ch.dim(q);
    return offset;
}

namespace {

Index parity_total(const Chain& ch, int parity) {
    Index total = 0;
    for (int p = parity; p <= ch.top_degree(); p += 2) total += ch.dim(p);
    return total;
}

void place(Matrix& target, Index row, Index col, const Operator& block) {
    target.block(row, col, block.rows(), block.cols()) += block.matrix();
}

/// ⊕_{p ≡ parity} of f(p) placed from H_p into the opposite-parity sum.
template <typename BlockFn>
Operator assemble(const Chain& ch, int parity, BlockFn&& blocks_at) {
    const Index cols = parity_total(ch, parity);
    const Index rows = parity_total(ch, 1 - parity);
    Matrix m = Matrix::Zero(rows, cols);
    for (int p = parity; p <= ch.top_degree(); p += 2) blocks_at(m, p);
    return Operator(std::move(m));
}

double chain_scale(const Chain& ch) {
    double n = 0.0;
    for (const auto& d : ch.deltas()) n = std::max(n, operator_norm(d));
    return 1.0 + n * n;
}

}  // namespace

FredholmPair chain_to_pair(const Chain& ch) {
    // δ_p for p of the given parity, sending H_p into H_{p-1}.
    auto differentials = [&ch](int parity) {
        return assemble(ch, parity, [&ch](Matrix& m, int p) {
            if (p >= 1) place(m, summand_offset(ch, p - 1), summand_offset(ch, p), ch.delta(p));
        });
    };
    return {differentials(0), differentials(1)};
}

std::vector<Operator> chain_laplacians(const Chain& ch) {
    std::vector<Operator> out;
    for (int p = 0; p <= ch.top_degree(); ++p) {
        const Operator up = ch.delta(p + 1);
        const Operator down = ch.delta(p);
        out.push_back(add(compose(up, adjoint(up)), compose(adjoint(down), down)));
    }
    return out;
}

StitchedOperators stitched_euler_operators(const Chain& ch, const Tolerance& tol) {
    auto stitched = [&ch](int parity) {
        return assemble(ch, parity, [&ch](Matrix& m, int p) {
            const Index col = summand_offset(ch, p);
            if (p >= 1) place(m, summand_offset(ch, p - 1), col, ch.delta(p));
            if (p + 1 <= ch.top_degree()) place(m, summand_offset(ch, p + 1), col, adjoint(ch.delta(p + 1)));
        });
    };
    StitchedOperators out{stitched(0), stitched(1), 0, 0};
    out.index_even = fredholm_index(out.even, tol);
    out.index_odd = fredholm_index(out.odd, tol);
    return out;
}

Chain dual_chain(const Chain& ch) {
    const Chain base = ch.stripped();
    const int n = base.top_degree();
    std::vector<Index> dims;
    std::vector<Operator> deltas;
    for (int p = 0; p <= n; ++p) dims.push_back(base.dim(n - p));
    for (int p = 1; p <= n; ++p) deltas.push_back(adjoint(base.delta(n - p + 1)));
    return {std::move(dims), std::move(deltas)};
}

CheckList verify_chain(const Chain& ch, const Tolerance& tol) {
    CheckList checks;
    const ChainAnalysis an = analyze_chain(ch, tol);
    const FredholmPair pair = chain_to_pair(ch);
    const PairAnalysis pa = analyze_pair(pair, tol);

    checks.push_back(exact_check("index.euler_characteristic", an.index, euler_characteristic(ch)));
    checks.push_back(exact_check("reduction.pair_index", pa.index, an.index));

    long long even_ranks = 0;
    long long odd_ranks = 0;
    for (std::size_t k = 0; k < an.consecutive_ranks.size(); ++k) {
        const int p = static_cast<int>(k) + 1;
        (p % 2 == 0 ? even_ranks : odd_ranks) += an.consecutive_ranks[k];
    }
    checks.push_back(exact_check("reduction.rank_ST", pa.rank_ST, even_ranks));
    checks.push_back(exact_check("reduction.rank_TS", pa.rank_TS, odd_ranks));

    long long even_kq = 0;
    long long odd_kq = 0;
    for (std::size_t p = 0; p < an.per_degree.size(); ++p) {
        (p % 2 == 0 ? even_kq : odd_kq) += an.per_degree[p].kernel_quotient;
    }
    checks.push_back(exact_check("reduction.kernel_quotients", std::llabs(pa.a - even_kq) + std::llabs(pa.c - odd_kq), 0));

    const StitchedOperators st = stitched_euler_operators(ch, tol);
    const double scale = chain_scale(ch);
    checks.push_back(exact_check("stitching.even_index", st.index_even, an.index));
    checks.push_back(exact_check("stitching.odd_index", st.index_odd, -an.index));
    checks.push_back(bounded_check("stitching.even_matches_euler",
                                   distance(st.even, add(pair.S(), adjoint(pair.T()))) / scale, tol.residual_atol));
    checks.push_back(bounded_check("stitching.odd_matches_euler",
                                   distance(st.odd, add(pair.T(), adjoint(pair.S()))) / scale, tol.residual_atol));

    const int n = ch.minimal_top_degree();
    const Chain dual = dual_chain(ch);
    const long long sign = n % 2 == 0 ? 1 : -1;
    checks.push_back(exact_check("dual.sign_law", an.index, sign * analyze_chain(dual, tol).index));
    if (ch.dim(0) > 0) {
        checks.push_back(exact_check("dual.involution", dual_chain(dual) == ch.stripped() ? 0 : 1, 0));
    }

    const std::vector<Operator> laps = chain_laplacians(ch);
    double asym = 0.0;
    double negativity = 0.0;
    for (const auto& lap : laps) {
        asym = std::max(asym, distance(lap, adjoint(lap)) / scale);
        if (!lap.empty()) {
            const Matrix herm = 0.5 * (lap.matrix() + lap.matrix().adjoint());
            Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
            negativity = std::max(negativity, -eig.eigenvalues().minCoeff() / scale);
        }
    }
    checks.push_back(bounded_check("laplacian.self_adjoint", asym, tol.residual_atol));
    checks.push_back(bounded_check("laplacian.positive_semidefinite", negativity, tol.residual_atol));

    std::vector<Operator> even_laps;
    std::vector<Operator> odd_laps;
    for (std::size_t p = 0; p < laps.size(); ++p) (p % 2 == 0 ? even_laps : odd_laps).push_back(laps[p]);
    const auto [lap1, lap2] = build_laplacian_blocks(pair);
    const double block_defect = std::max(distance(lap1, direct_sum(even_laps)), distance(lap2, direct_sum(odd_laps)));
    checks.push_back(bounded_check("laplacian.pair_blocks", block_defect / scale, tol.residual_atol));

    if (validate_chain(ch, tol).is_complex()) {
        long long defect = 0;
        for (std::size_t p = 0; p < laps.size(); ++p) {
            const Index harmonic = laps[p].cols() - numerical_rank(laps[p], tol);
            defect += std::llabs(static_cast<long long>(harmonic - an.per_degree[p].kernel_quotient));
        }
        checks.push_back(exact_check("laplacian.harmonic_dims", defect, 0));
    }
    return checks;
}

}  // namespace fredholm
