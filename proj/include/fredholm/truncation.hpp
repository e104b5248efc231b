/**
 * @file truncation.hpp
 * @brief Finite sections of classical operator families and index stabilization scans.
 *
 * A family is realized at size n as a matrix whose shape follows a shape
 * rule: square (n -> n), rect-up (n -> n+1) or rect-down (n+1 -> n). Square
 * sections always give index dim H1 - dim H2 = 0, whatever the index of the
 * operator being approximated; the rectangular rules keep the isometric
 * shifts injective (or surjective) so that their index survives truncation.
 */

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fredholm/checks.hpp"
#include "fredholm/pair.hpp"

namespace fredholm {

enum class FamilyKind { Zero, RightShift, LeftShift, WeightedShift, Diagonal, FiniteRankCoupling };
enum class ShapeRule { Square, RectUp, RectDown };
/// Weight w_k for k = 1, 2, ...: 1/k, 1/k^2, or 1.
enum class WeightRule { Reciprocal, ReciprocalSquare, Constant };

std::string to_string(FamilyKind kind);
std::string to_string(ShapeRule rule);
std::string to_string(WeightRule rule);
FamilyKind parse_family_kind(const std::string& name);
ShapeRule parse_shape_rule(const std::string& name);
WeightRule parse_weight_rule(const std::string& name);

double weight(WeightRule rule, Index k);

struct OperatorFamily {
    FamilyKind kind = FamilyKind::Zero;
    ShapeRule shape = ShapeRule::Square;
    WeightRule weights = WeightRule::Constant;
    /// Leading-corner block for FiniteRankCoupling.
    Operator block;

    /// (rows, cols) at size n.
    std::pair<Index, Index> shape_at(Index n) const;
    std::string describe() const;
};

/// The matrix of @p fam at size n (n >= 1).
Operator realize_operator(const OperatorFamily& fam, Index n);
/// The pair (realize_operator(fam, n), 0).
FredholmPair realize(const OperatorFamily& fam, Index n);
/**
 * The pair (realize_operator(fam, n), realize_operator(partner, n)). A Zero
 * partner adopts the transposed shape; any other partner must produce it,
 * otherwise DimensionError names n.
 */
FredholmPair realize(const OperatorFamily& fam, const OperatorFamily& partner, Index n);

struct ScanEntry {
    Index n = 0;
    Index rows = 0;
    Index cols = 0;
    Index a = 0, b = 0, c = 0, d = 0;
    long long index = 0;

    bool same_outcome(const ScanEntry& other) const {
        return a == other.a && b == other.b && c == other.c && d == other.d && index == other.index;
    }
};

struct StabilizationReport {
    std::string family;
    std::string partner;
    std::string shape_rule;
    std::vector<ScanEntry> per_n;
    Index stable_window = 2;
    bool stabilized = false;
    /// Last entry of the stable window, when stabilized.
    std::optional<ScanEntry> limits;
    /// Set when any section was square; the index is then forced to 0.
    bool square_caveat = false;
    std::string caveat;
};

/// n_first..n_last inclusive.
std::vector<Index> n_range(Index n_first, Index n_last);

/// Throws ValidationError unless @p ns is strictly ascending, n >= 1, and window >= 2.
StabilizationReport stabilization_scan(const OperatorFamily& fam, const OperatorFamily& partner,
                                       const std::vector<Index>& ns, Index stable_window, const Tolerance& tol = {});

/// Every entry satisfies index = cols - rows.
CheckList verify_scan(const StabilizationReport& report);

}  // namespace fredholm
