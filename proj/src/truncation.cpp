#include "fredholm/truncation.hpp"

#include <algorithm>
#include <sstream>

namespace fredholm {

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Zero: return "zero";
        case FamilyKind::RightShift: return "right-shift";
        case FamilyKind::LeftShift: return "left-shift";
        case FamilyKind::WeightedShift: return "weighted-shift";
        case FamilyKind::Diagonal: return "diagonal";
        case FamilyKind::FiniteRankCoupling: return "finite-rank-coupling";
    }
    return "unknown";
}

std::string to_string(ShapeRule rule) {
    switch (rule) {
        case ShapeRule::Square: return "square";
        case ShapeRule::RectUp: return "rect-up";
        case ShapeRule::RectDown: return "rect-down";
    }
    return "unknown";
}

std::string to_string(WeightRule rule) {
    switch (rule) {
        case WeightRule::Reciprocal: return "reciprocal";
        case WeightRule::ReciprocalSquare: return "reciprocal-square";
        case WeightRule::Constant: return "constant";
    }
    return "unknown";
}

FamilyKind parse_family_kind(const std::string& name) {
    for (auto k : {FamilyKind::Zero, FamilyKind::RightShift, FamilyKind::LeftShift, FamilyKind::WeightedShift,
                   FamilyKind::Diagonal, FamilyKind::FiniteRankCoupling}) {
        if (to_string(k) == name) return k;
    }
    throw ValidationError("unknown operator family '" + name + "'");
}

ShapeRule parse_shape_rule(const std::string& name) {
    for (auto r : {ShapeRule::Square, ShapeRule::RectUp, ShapeRule::RectDown}) {
        if (to_string(r) == name) return r;
    }
    throw ValidationError("unknown shape rule '" + name + "'");
}

WeightRule parse_weight_rule(const std::string& name) {
    for (auto r : {WeightRule::Reciprocal, WeightRule::ReciprocalSquare, WeightRule::Constant}) {
        if (to_string(r) == name) return r;
    }
    throw ValidationError("unknown weight rule '" + name + "'");
}

double weight(WeightRule rule, Index k) {
    const auto x = static_cast<double>(k);
    switch (rule) {
        case WeightRule::Reciprocal: return 1.0 / x;
        case WeightRule::ReciprocalSquare: return 1.0 / (x * x);
        case WeightRule::Constant: return 1.0;
    }
    return 1.0;
}

std::pair<Index, Index> OperatorFamily::shape_at(Index n) const {
    switch (shape) {
        case ShapeRule::Square: return {n, n};
        case ShapeRule::RectUp: return {n + 1, n};
        case ShapeRule::RectDown: return {n, n + 1};
    }
    return {n, n};
}

std::string OperatorFamily::describe() const {
    std::string s = to_string(kind);
    if (kind == FamilyKind::WeightedShift || kind == FamilyKind::Diagonal) s += "(" + to_string(weights) + ")";
    return s + "/" + to_string(shape);
}

namespace {

Matrix realize_shape(const OperatorFamily& fam, Index rows, Index cols) {
    Matrix m = Matrix::Zero(rows, cols);
    switch (fam.kind) {
        case FamilyKind::Zero: break;
        case FamilyKind::RightShift:
        case FamilyKind::WeightedShift:
            // e_k -> w_k e_{k+1}
            for (Index i = 0; i < cols && i + 1 < rows; ++i) {
                m(i + 1, i) = fam.kind == FamilyKind::RightShift ? 1.0 : weight(fam.weights, i + 1);
            }
            break;
        case FamilyKind::LeftShift:
            // e_k -> e_{k-1}, e_1 -> 0
            for (Index i = 1; i < cols && i - 1 < rows; ++i) m(i - 1, i) = 1.0;
            break;
        case FamilyKind::Diagonal:
            for (Index i = 0; i < std::min(rows, cols); ++i) m(i, i) = weight(fam.weights, i + 1);
            break;
        case FamilyKind::FiniteRankCoupling: {
            const Index r = std::min(rows, fam.block.rows());
            const Index c = std::min(cols, fam.block.cols());
            m.topLeftCorner(r, c) = fam.block.matrix().topLeftCorner(r, c);
            break;
        }
    }
    return m;
}

}  // namespace

Operator realize_operator(const OperatorFamily& fam, Index n) {
    if (n < 1) throw ValidationError("truncation size must be at least 1");
    const auto [rows, cols] = fam.shape_at(n);
    return Operator(realize_shape(fam, rows, cols));
}

FredholmPair realize(const OperatorFamily& fam, Index n) {
    Operator s = realize_operator(fam, n);
    Operator t = Operator::zero(s.cols(), s.rows());
    return {std::move(s), std::move(t)};
}

FredholmPair realize(const OperatorFamily& fam, const OperatorFamily& partner, Index n) {
    Operator s = realize_operator(fam, n);
    if (partner.kind == FamilyKind::Zero) {
        Operator t = Operator::zero(s.cols(), s.rows());
        return {std::move(s), std::move(t)};
    }
    Operator t = realize_operator(partner, n);
    if (t.rows() != s.cols() || t.cols() != s.rows()) {
        std::ostringstream os;
        os << "at n = " << n << " the partner " << partner.describe() << " is " << t.rows() << "x" << t.cols()
           << " but " << fam.describe() << " needs a " << s.cols() << "x" << s.rows() << " partner";
        throw DimensionError(os.str());
    }
    return {std::move(s), std::move(t)};
}

std::vector<Index> n_range(Index n_first, Index n_last) {
    std::vector<Index> out;
    for (Index n = n_first; n <= n_last; ++n) out.push_back(n);
    return out;
}

StabilizationReport stabilization_scan(const OperatorFamily& fam, const OperatorFamily& partner,
                                       const std::vector<Index>& ns, Index stable_window, const Tolerance& tol) {
    if (stable_window < 2) throw ValidationError("stable window must be at least 2");
    if (ns.empty()) throw ValidationError("empty n range");
    for (std::size_t k = 0; k < ns.size(); ++k) {
        if (ns[k] < 1) throw ValidationError("n range must start at 1 or later");
        if (k > 0 && ns[k] <= ns[k - 1]) throw ValidationError("n range must be strictly ascending");
    }

    StabilizationReport report;
    report.family = fam.describe();
    report.partner = partner.kind == FamilyKind::Zero ? "zero" : partner.describe();
    report.shape_rule = to_string(fam.shape);
    report.stable_window = stable_window;

    for (Index n : ns) {
        const FredholmPair p = realize(fam, partner, n);
        const PairAnalysis an = analyze_pair(p, tol);
        ScanEntry e{n, p.S().rows(), p.S().cols(), an.a, an.b, an.c, an.d, an.index};
        if (e.rows == e.cols) report.square_caveat = true;
        report.per_n.push_back(e);
    }

    const auto window = static_cast<std::size_t>(stable_window);
    if (report.per_n.size() >= window) {
        const ScanEntry& last = report.per_n.back();
        report.stabilized = std::all_of(report.per_n.end() - static_cast<std::ptrdiff_t>(window), report.per_n.end(),
                                        [&last](const ScanEntry& e) { return e.same_outcome(last); });
        if (report.stabilized) report.limits = last;
    }
    if (report.square_caveat) {
        report.caveat =
            "square truncation: every square section has index dim H1 - dim H2 = 0, so the index of the "
            "untruncated operator is not visible; use rect-up or rect-down sections to preserve it";
    }
    return report;
}

CheckList verify_scan(const StabilizationReport& report) {
    long long defects = 0;
    for (const auto& e : report.per_n) {
        const long long expected = static_cast<long long>(e.cols) - static_cast<long long>(e.rows);
        defects += e.index == expected ? 0 : 1;
    }
    return {exact_check("truncation.dimension_identity", defects, 0)};
}

}  // namespace fredholm
