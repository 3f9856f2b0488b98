#pragma once

#include "hermsurf/metric.hpp"

#include <memory>
#include <string>

namespace hermsurf {

/// Closed-form expression in the ambient coordinates, evaluated on dual
/// numbers so its first partials are exact.
///
/// Grammar: numbers, the constants i and pi, the variables z1 z2 zb1 zb2
/// (zb = conjugate), x1 y1 x2 y2 and r2 = |z1|² + |z2|²; operators + - * /
/// and ^ with an integer exponent; functions exp log sin cos sqrt conj re im.
class Expression {
public:
    static Expression parse(const std::string& text);

    Dual eval(const std::array<Dual, 2>& z) const;
    cplx eval(const ChartPoint& p) const { return eval(dual_coordinates(p)).v; }
    const std::string& text() const { return text_; }

    struct Node;

private:
    std::string text_;
    std::shared_ptr<const Node> root_;
};

/// Metric from expressions for g11, g12, g22 (g21 = conj g12). Torsion is
/// computed, not assumed, so the field is never flagged Kähler.
MetricField metric_from_expressions(const std::string& name, const std::string& g11, const std::string& g12,
                                    const std::string& g22, ChartQuotient quotient = ChartQuotient::None);

}  // namespace hermsurf
