#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace domefold {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

struct Vec2 {
    double x = 0, y = 0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double dot2(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm2d(const Vec2& a) { return std::sqrt(dot2(a, a)); }

// Plane through the loop's centroid with Newell normal.
struct Plane {
    Vec3 point, normal;  // normal is unit length
    double signed_distance(const Vec3& p) const { return dot(p - point, normal); }
};

template <class Pts, class Loop>
Plane fit_plane(const Pts& vertices, const Loop& loop) {
    Vec3 c{}, n{};
    const std::size_t k = loop.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Vec3& p = vertices[loop[i]];
        const Vec3& q = vertices[loop[(i + 1) % k]];
        c += p;
        n.x += (p.y - q.y) * (p.z + q.z);
        n.y += (p.z - q.z) * (p.x + q.x);
        n.z += (p.x - q.x) * (p.y + q.y);
    }
    return {c / double(k), normalized(n)};
}

// Isometric image of a (near-)planar loop: vertex 0 at the origin, edge 0->1 on +x.
template <class Pts, class Loop>
std::vector<Vec2> flatten_loop(const Pts& vertices, const Loop& loop) {
    Plane pl = fit_plane(vertices, loop);
    std::vector<Vec3> proj(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Vec3& p = vertices[loop[i]];
        proj[i] = p - pl.normal * pl.signed_distance(p);
    }
    Vec3 e1 = normalized(proj[1] - proj[0]);
    Vec3 e2 = cross(pl.normal, e1);
    std::vector<Vec2> out(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) {
        Vec3 d = proj[i] - proj[0];
        out[i] = {dot(d, e1), dot(d, e2)};
    }
    return out;
}

// Proper rigid motion taking segment (a0,a1) onto (b0,b1).
struct Rigid2 {
    double c = 1, s = 0;  // rotation
    Vec2 t{};             // translation
    Vec2 apply(const Vec2& p) const { return {c * p.x - s * p.y + t.x, s * p.x + c * p.y + t.y}; }
};

inline Rigid2 align_segment(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
    Vec2 u = a1 - a0, v = b1 - b0;
    double lu = norm2d(u), lv = norm2d(v);
    double c = 1, s = 0;
    if (lu > 0 && lv > 0) {
        c = dot2(u, v) / (lu * lv);
        s = cross2(u, v) / (lu * lv);
        double r = std::sqrt(c * c + s * s);
        c /= r;
        s /= r;
    }
    Rigid2 m{c, s, {}};
    Vec2 ra0 = m.apply(a0);
    m.t = b0 - ra0;
    return m;
}

inline double polygon_area(const std::vector<Vec2>& poly) {
    double a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % poly.size()];
        a += cross2(p, q);
    }
    return 0.5 * a;
}

struct Box2 {
    double xmin = std::numeric_limits<double>::max(), ymin = std::numeric_limits<double>::max();
    double xmax = std::numeric_limits<double>::lowest(), ymax = std::numeric_limits<double>::lowest();
    void add(const Vec2& p) {
        xmin = std::min(xmin, p.x); ymin = std::min(ymin, p.y);
        xmax = std::max(xmax, p.x); ymax = std::max(ymax, p.y);
    }
    bool disjoint(const Box2& o) const {
        return xmax < o.xmin || o.xmax < xmin || ymax < o.ymin || o.ymax < ymin;
    }
};

inline Box2 bounding_box(const std::vector<Vec2>& poly) {
    Box2 b;
    for (const Vec2& p : poly) b.add(p);
    return b;
}

// Area of the intersection of two convex CCW polygons (Sutherland-Hodgman).
inline double convex_intersection_area(const std::vector<Vec2>& subject, const std::vector<Vec2>& clip) {
    std::vector<Vec2> out = subject, in;
    for (std::size_t i = 0; i < clip.size() && !out.empty(); ++i) {
        const Vec2& a = clip[i];
        const Vec2& b = clip[(i + 1) % clip.size()];
        Vec2 ab = b - a;
        in.swap(out);
        out.clear();
        for (std::size_t j = 0; j < in.size(); ++j) {
            const Vec2& c = in[j];
            const Vec2& d = in[(j + 1) % in.size()];
            double sc = cross2(ab, c - a);
            double sd = cross2(ab, d - a);
            if (sc >= 0) out.push_back(c);
            if ((sc > 0 && sd < 0) || (sc < 0 && sd > 0)) {
                double t = sc / (sc - sd);
                out.push_back(c + (d - c) * t);
            }
        }
    }
    if (out.size() < 3) return 0;
    return std::abs(polygon_area(out));
}

}  // namespace domefold
