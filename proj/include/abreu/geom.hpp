#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace abreu {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double& operator[](int i) { return i == 0 ? x : y; }
    double operator[](int i) const { return i == 0 ? x : y; }

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double norm2(const Vec2& v) { return v.x * v.x + v.y * v.y; }
// 90-degree counterclockwise rotation
inline Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

/// General 2x2 matrix, row-major.
struct Mat2 {
    double m[2][2] = {{0, 0}, {0, 0}};

    static Mat2 identity() { return {{{1, 0}, {0, 1}}}; }
    static Mat2 rotation(double theta) {
        const double c = std::cos(theta), s = std::sin(theta);
        return {{{c, -s}, {s, c}}};
    }
    static Mat2 diag(double a, double b) { return {{{a, 0}, {0, b}}}; }

    double operator()(int i, int j) const { return m[i][j]; }
    double& operator()(int i, int j) { return m[i][j]; }

    double det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

    Mat2 inverse() const {
        const double d = det();
        return {{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
    }

    Vec2 apply(const Vec2& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y, m[1][0] * v.x + m[1][1] * v.y};
    }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
};

/// Symmetric 2x2 matrix.
struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    double operator()(int i, int j) const {
        return (i == 0) ? (j == 0 ? xx : xy) : (j == 0 ? xy : yy);
    }
    void add(int i, int j, double v) {
        if (i == 0 && j == 0) xx += v;
        else if (i == 1 && j == 1) yy += v;
        else xy += v;
    }

    double det() const { return xx * yy - xy * xy; }
    double trace() const { return xx + yy; }
    bool positive_definite() const { return xx > 0.0 && det() > 0.0; }

    Sym2 inverse() const {
        const double d = det();
        return {yy / d, -xy / d, xx / d};
    }
    Sym2 cofactor() const { return {yy, -xy, xx}; }

    Vec2 apply(const Vec2& v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }

    // eigenvalues, ascending
    std::array<double, 2> eigenvalues() const {
        const double mean = 0.5 * (xx + yy);
        const double r = std::hypot(0.5 * (xx - yy), xy);
        return {mean - r, mean + r};
    }

    Sym2 operator+(const Sym2& o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
    Sym2 operator-(const Sym2& o) const { return {xx - o.xx, xy - o.xy, yy - o.yy}; }
    Sym2 operator*(double s) const { return {xx * s, xy * s, yy * s}; }
};

/// Fully symmetric rank-3 tensor over {0,1}; packed by the number of
/// indices equal to 1.
struct Sym3 {
    std::array<double, 4> v{};
    double operator()(int i, int j, int k) const { return v[i + j + k]; }
    void add(int i, int j, int k, double val) { v[i + j + k] += val; }
    Sym3 operator+(const Sym3& o) const {
        Sym3 r;
        for (int i = 0; i < 4; ++i) r.v[i] = v[i] + o.v[i];
        return r;
    }
    Sym3 operator*(double s) const {
        Sym3 r;
        for (int i = 0; i < 4; ++i) r.v[i] = v[i] * s;
        return r;
    }
};

/// Fully symmetric rank-4 tensor over {0,1}, same packing.
struct Sym4 {
    std::array<double, 5> v{};
    double operator()(int i, int j, int k, int l) const { return v[i + j + k + l]; }
    void add(int i, int j, int k, int l, double val) { v[i + j + k + l] += val; }
    Sym4 operator+(const Sym4& o) const {
        Sym4 r;
        for (int i = 0; i < 5; ++i) r.v[i] = v[i] + o.v[i];
        return r;
    }
    Sym4 operator*(double s) const {
        Sym4 r;
        for (int i = 0; i < 5; ++i) r.v[i] = v[i] * s;
        return r;
    }
};

struct BBox {
    Vec2 lo, hi;
    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
};

/// Counterclockwise convex hull (monotone chain); collinear points dropped.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Convex polygon given by counterclockwise vertices. Pure geometry: no
/// boundary measure attached.
class ConvexPoly {
public:
    ConvexPoly() = default;
    explicit ConvexPoly(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {}

    const std::vector<Vec2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    const Vec2& vertex(std::size_t k) const { return verts_[k]; }

    bool strictly_convex(double tol = 1e-10) const;

    double area() const;
    Vec2 centroid() const;
    double diameter() const;
    BBox bbox() const;

    /// Signed distance to the boundary: positive inside, negative outside.
    /// Exact for convex polygons (min over edge lines).
    double signed_boundary_distance(const Vec2& p) const;

    bool contains(const Vec2& p, double tol = 0.0) const {
        return signed_boundary_distance(p) >= -tol;
    }

    /// Largest r >= 0 with origin + r*dir still inside (dir need not be unit).
    double ray_exit(const Vec2& origin, const Vec2& dir) const;

    /// Intersection with the half-plane {x : dot(a,x) + c >= 0}.
    ConvexPoly clip_halfplane(const Vec2& a, double c) const;

private:
    std::vector<Vec2> verts_;
};

} // namespace abreu
