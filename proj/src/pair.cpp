#include "fredholm/pair.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace fredholm {

FredholmPair::FredholmPair(Operator s, Operator t) : s_(std::move(s)), t_(std::move(t)) {
    if (s_.cols() != t_.rows() || s_.rows() != t_.cols()) {
        std::ostringstream os;
        os << "pair shapes do not compose: S is " << s_.rows() << "x" << s_.cols() << ", T is " << t_.rows() << "x"
           << t_.cols() << " (T must be " << s_.cols() << "x" << s_.rows() << ")";
        throw DimensionError(os.str());
    }
}

double product_scale(const FredholmPair& p) { return 1.0 + operator_norm(p.S()) * operator_norm(p.T()); }

double block_scale(const FredholmPair& p) {
    const double n = std::max(operator_norm(p.S()), operator_norm(p.T()));
    return 1.0 + n * n;
}

bool is_product_zero(const FredholmPair& p, const Tolerance& tol) {
    const double bound = tol.residual_atol * product_scale(p);
    return operator_norm(compose(p.S(), p.T())) <= bound && operator_norm(compose(p.T(), p.S())) <= bound;
}

PairAnalysis analyze_pair(const FredholmPair& p, const Tolerance& tol) {
    const Subspace ns = kernel(p.S(), tol);
    const Subspace rs = range(p.S(), tol);
    const Subspace nt = kernel(p.T(), tol);
    const Subspace rt = range(p.T(), tol);

    PairAnalysis out;
    const Index ns_rt = subspace_intersection_dim(ns, rt, tol);
    const Index nt_rs = subspace_intersection_dim(nt, rs, tol);
    out.a = ns.dim() - ns_rt;
    out.b = rt.dim() - ns_rt;
    out.c = nt.dim() - nt_rs;
    out.d = rs.dim() - nt_rs;
    out.index = static_cast<long long>(out.a) - out.b - out.c + out.d;

    const double norm_s = operator_norm(p.S());
    const double norm_t = operator_norm(p.T());
    const Operator st = compose(p.S(), p.T());
    const Operator ts = compose(p.T(), p.S());
    out.rank_ST = numerical_rank(st, tol, norm_s * norm_t);
    out.rank_TS = numerical_rank(ts, tol, norm_s * norm_t);
    out.residuals["norm.S"] = norm_s;
    out.residuals["norm.T"] = norm_t;
    out.residuals["norm.ST"] = operator_norm(st);
    out.residuals["norm.TS"] = operator_norm(ts);
    return out;
}

FredholmPair swap_pair(const FredholmPair& p) { return {p.T(), p.S()}; }

FredholmPair dual_pair(const FredholmPair& p) { return {adjoint(p.T()), adjoint(p.S())}; }

CompressedPair compress_pair(const FredholmPair& p, const Tolerance& tol) {
    const double ref = operator_norm(p.S()) * operator_norm(p.T());
    const Operator ts = compose(p.T(), p.S());
    const Operator st = compose(p.S(), p.T());

    CompressedPair out;
    out.F1 = range(ts, tol, ref);
    out.F2 = range(st, tol, ref);
    out.rank_TS = out.F1.dim();
    out.rank_ST = out.F2.dim();
    out.H1c = orthogonal_complement(out.F1);
    out.H2c = orthogonal_complement(out.F2);
    out.P1 = Operator(Matrix(out.H1c.basis().adjoint()));
    out.P2 = Operator(Matrix(out.H2c.basis().adjoint()));
    // Rounding leaves noise where the exact compression has zero singular
    // values; rank it against the parent norms, not against the noise itself.
    out.S_c = truncate_rank(compose(compose(out.P2, p.S()), adjoint(out.P1)), tol, operator_norm(p.S()));
    out.T_c = truncate_rank(compose(compose(out.P1, p.T()), adjoint(out.P2)), tol, operator_norm(p.T()));

    const double residual = std::max(operator_norm(compose(out.T_c, out.S_c)), operator_norm(compose(out.S_c, out.T_c)));
    out.product_residual = residual / product_scale(p);
    if (out.product_residual > tol.residual_atol) {
        std::ostringstream os;
        os << "compressed products do not vanish: normalized residual " << out.product_residual << " exceeds "
           << tol.residual_atol;
        throw InconsistencyError(os.str(), out.product_residual);
    }
    return out;
}

Operator build_block_U(const FredholmPair& p) {
    return block_2x2(Operator::zero(p.dim_h1(), p.dim_h1()), p.T(), p.S(), Operator::zero(p.dim_h2(), p.dim_h2()));
}

Operator build_V(const FredholmPair& p) {
    const Operator u = build_block_U(p);
    return add(u, adjoint(u));
}

std::pair<Operator, Operator> build_laplacian_blocks(const FredholmPair& p) {
    const Operator& s = p.S();
    const Operator& t = p.T();
    Operator h1 = add(compose(t, adjoint(t)), compose(adjoint(s), s));
    Operator h2 = add(compose(s, adjoint(s)), compose(adjoint(t), t));
    return {std::move(h1), std::move(h2)};
}

BlockResiduals block_identity_residuals(const FredholmPair& p) {
    const double scale = block_scale(p);
    const Operator u = build_block_U(p);
    const Operator u_star = adjoint(u);
    const Operator v = add(u, u_star);
    const auto [lap1, lap2] = build_laplacian_blocks(p);

    const Operator uu = add(compose(u, u_star), compose(u_star, u));
    const Operator square_sum = add(add(compose(u, u), compose(u_star, u_star)), uu);

    BlockResiduals r;
    r.self_adjoint = distance(v, adjoint(v)) / scale;
    r.laplacian_identity = distance(uu, direct_sum({lap1, lap2})) / scale;
    r.square_identity = distance(compose(v, v), square_sum) / scale;
    return r;
}

HarmonicDims harmonic_dims(const FredholmPair& p, const Tolerance& tol) {
    const auto [lap1, lap2] = build_laplacian_blocks(p);
    const Operator v = build_V(p);
    HarmonicDims h;
    h.kernel_V = v.cols() - numerical_rank(v, tol);
    h.kernel_laplacian_h1 = lap1.cols() - numerical_rank(lap1, tol);
    h.kernel_laplacian_h2 = lap2.cols() - numerical_rank(lap2, tol);
    return h;
}

ProductZeroDecomposition product_zero_decomposition(const FredholmPair& p, const Tolerance& tol) {
    if (!is_product_zero(p, tol)) {
        const double st = operator_norm(compose(p.S(), p.T()));
        const double ts = operator_norm(compose(p.T(), p.S()));
        std::ostringstream os;
        os << "pair products do not vanish: |ST| = " << st << ", |TS| = " << ts << ", bound "
           << tol.residual_atol * product_scale(p);
        throw ProductNotZeroError(os.str(), st, ts);
    }
    const Subspace ns = kernel(p.S(), tol);
    const Subspace nt = kernel(p.T(), tol);

    ProductZeroDecomposition out;
    out.RT = range(p.T(), tol);
    out.N1 = relative_complement(ns, out.RT, tol);
    out.L1 = orthogonal_complement(ns);
    out.RS = range(p.S(), tol);
    out.N2 = relative_complement(nt, out.RS, tol);
    out.L2 = orthogonal_complement(nt);

    const Operator euler = add(p.S(), adjoint(p.T()));
    const Index r = numerical_rank(euler, tol);
    out.euler_kernel_dim = euler.cols() - r;
    out.euler_cokernel_dim = euler.rows() - r;
    return out;
}

std::pair<long long, long long> euler_index(const FredholmPair& p, const Tolerance& tol) {
    return {fredholm_index(add(p.S(), adjoint(p.T())), tol), fredholm_index(add(p.T(), adjoint(p.S())), tol)};
}

CheckList verify_product_zero(const FredholmPair& p, const Tolerance& tol, const std::string& prefix) {
    CheckList checks;
    ProductZeroDecomposition dec;
    try {
        dec = product_zero_decomposition(p, tol);
    } catch (const ProductNotZeroError& e) {
        checks.push_back({prefix + "products_vanish", e.residual() / product_scale(p), false});
        return checks;
    }
    const PairAnalysis an = analyze_pair(p, tol);
    const HarmonicDims h = harmonic_dims(p, tol);

    checks.push_back(exact_check(prefix + "range_inclusion", an.b + an.d, 0));
    const long long split_defect = std::llabs(static_cast<long long>(dec.RT.dim() + dec.N1.dim() + dec.L1.dim() - p.dim_h1())) +
                                   std::llabs(static_cast<long long>(dec.RS.dim() + dec.N2.dim() + dec.L2.dim() - p.dim_h2()));
    checks.push_back(exact_check(prefix + "decomposition_dims", split_defect, 0));
    checks.push_back(exact_check(prefix + "n1_dim", dec.N1.dim(), an.a));
    checks.push_back(exact_check(prefix + "n2_dim", dec.N2.dim(), an.c));
    checks.push_back(exact_check(prefix + "euler_kernel", dec.euler_kernel_dim, an.a));
    checks.push_back(exact_check(prefix + "euler_cokernel", dec.euler_cokernel_dim, an.c));
    checks.push_back(exact_check(prefix + "kernel_V", h.kernel_V, an.a + an.c));
    checks.push_back(exact_check(prefix + "kernel_laplacian_h1", h.kernel_laplacian_h1, an.a));
    checks.push_back(exact_check(prefix + "kernel_laplacian_h2", h.kernel_laplacian_h2, an.c));
    return checks;
}

CheckList verify_pair(const FredholmPair& p, const Tolerance& tol) {
    CheckList checks;
    const PairAnalysis an = analyze_pair(p, tol);
    const auto [ind_euler, ind_euler_adj] = euler_index(p, tol);

    checks.push_back(exact_check("index.dimension_identity", an.index,
                                 static_cast<long long>(p.dim_h1()) - static_cast<long long>(p.dim_h2())));
    checks.push_back(exact_check("euler.index_path", an.index, ind_euler));
    checks.push_back(exact_check("euler.antisymmetry", ind_euler_adj, -ind_euler));
    checks.push_back(exact_check("swap.antisymmetry", analyze_pair(swap_pair(p), tol).index, -an.index));
    checks.push_back(exact_check("dual.invariance", analyze_pair(dual_pair(p), tol).index, an.index));

    try {
        const CompressedPair cp = compress_pair(p, tol);
        checks.push_back(bounded_check("compression.products_vanish", cp.product_residual, tol.residual_atol));
        const long long compressed_index = analyze_pair(cp.pair(), tol).index;
        checks.push_back(exact_check("compression.index_law", an.index,
                                     compressed_index - static_cast<long long>(cp.rank_ST) + cp.rank_TS));
        const CheckList pz = verify_product_zero(cp.pair(), tol, "compressed.");
        checks.insert(checks.end(), pz.begin(), pz.end());
    } catch (const InconsistencyError& e) {
        checks.push_back({"compression.products_vanish", e.residual(), false});
    }

    const BlockResiduals br = block_identity_residuals(p);
    checks.push_back(bounded_check("blocks.self_adjoint", br.self_adjoint, tol.residual_atol));
    checks.push_back(bounded_check("blocks.laplacian_identity", br.laplacian_identity, tol.residual_atol));
    checks.push_back(bounded_check("blocks.square_identity", br.square_identity, tol.residual_atol));

    if (is_product_zero(p, tol)) {
        const CheckList pz = verify_product_zero(p, tol, "product_zero.");
        checks.insert(checks.end(), pz.begin(), pz.end());
    }
    return checks;
}

}  // namespace fredholm
