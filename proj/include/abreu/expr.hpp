#pragma once

#include "abreu/geom.hpp"

#include <functional>
#include <optional>
#include <string>

namespace abreu {

/// Scalar field over the plane, either a constant or a parsed expression
/// in x and y.
struct ScalarField {
    std::function<double(Vec2)> fn;
    std::string repr;
    std::optional<double> constant;

    double operator()(const Vec2& p) const { return fn(p); }
    bool is_constant() const { return constant.has_value(); }

    static ScalarField from_constant(double c) {
        return {[c](Vec2) { return c; }, format_constant(c), c};
    }

    static std::string format_constant(double c);
};

/// Parses arithmetic in x and y: numbers, + - * / ^, parentheses, and the
/// functions sin cos exp log sqrt abs. Throws input_error on bad syntax.
/// A bare number yields a constant field.
ScalarField parse_scalar_field(const std::string& text);

} // namespace abreu
