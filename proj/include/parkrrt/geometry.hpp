#pragma once
/**
 * @file geometry.hpp
 * @brief Planar primitives and exact convex intersection tests.
 *
 * Conventions:
 * - Angles are radians, headings are kept in [-pi, pi).
 * - Polygons are simple and counter-clockwise. Collision kernels assume
 *   convexity; concave input is decomposed before it reaches them.
 * - All regions are closed: shared boundary counts as overlap.
 */

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace parkrrt
{
    template <typename Scalar> using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
    template <typename Scalar> using Rotation2 = Eigen::Matrix<Scalar, 2, 2>;

    /// Wrap an angle into [-pi, pi).
    template <typename Scalar> Scalar normalize_angle (Scalar angle)
    {
        constexpr Scalar pi = std::numbers::pi_v<Scalar>;
        constexpr Scalar two_pi = 2 * pi;
        Scalar wrapped = angle - two_pi * std::floor ((angle + pi) / two_pi);
        if (wrapped >= pi)
            wrapped -= two_pi;
        if (wrapped < -pi)
            wrapped += two_pi;
        return wrapped;
    }

    /// Signed difference a - b wrapped into [-pi, pi).
    template <typename Scalar> Scalar angle_difference (Scalar a, Scalar b) { return normalize_angle (a - b); }

    template <typename Scalar> Rotation2<Scalar> rotation (Scalar angle)
    {
        const Scalar c = std::cos (angle);
        const Scalar s = std::sin (angle);
        Rotation2<Scalar> r;
        r << c, -s, s, c;
        return r;
    }

    template <typename Scalar> Vector2<Scalar> unit_vector (Scalar angle) { return {std::cos (angle), std::sin (angle)}; }

    /// 2D cross product (z component).
    template <typename Scalar> Scalar cross (const Vector2<Scalar> &a, const Vector2<Scalar> &b) { return a.x () * b.y () - a.y () * b.x (); }

    /// Rear-axle configuration (x, y, heading).
    template <typename Scalar> struct Pose
    {
        Vector2<Scalar> position = Vector2<Scalar>::Zero ();
        Scalar heading = 0;

        Pose () = default;
        Pose (Scalar x, Scalar y, Scalar theta) : position (x, y), heading (normalize_angle (theta)) {}
        Pose (const Vector2<Scalar> &p, Scalar theta) : position (p), heading (normalize_angle (theta)) {}

        Scalar x () const { return position.x (); }
        Scalar y () const { return position.y (); }

        Vector2<Scalar> direction () const { return unit_vector (heading); }

        bool finite () const { return position.allFinite () && std::isfinite (heading); }

        friend bool operator== (const Pose &a, const Pose &b) { return a.position == b.position && a.heading == b.heading; }
    };

    /// Rigid transform of a pose: rotate by `angle` about the origin, then translate.
    template <typename Scalar> Pose<Scalar> transform (const Pose<Scalar> &pose, Scalar angle, const Vector2<Scalar> &translation)
    {
        return {rotation (angle) * pose.position + translation, pose.heading + angle};
    }

    template <typename Scalar> struct OrientedBox
    {
        Vector2<Scalar> center = Vector2<Scalar>::Zero ();
        Scalar half_length = 0;
        Scalar half_width = 0;
        Scalar heading = 0;

        /// Corners counter-clockwise, starting rear-right.
        std::array<Vector2<Scalar>, 4> corners () const
        {
            const Vector2<Scalar> ax = unit_vector (heading) * half_length;
            const Vector2<Scalar> ay = Vector2<Scalar> (-std::sin (heading), std::cos (heading)) * half_width;
            return {center - ax - ay, center + ax - ay, center + ax + ay, center - ax + ay};
        }
    };

    template <typename Scalar> struct Polygon
    {
        std::vector<Vector2<Scalar>> vertices;

        std::size_t size () const { return vertices.size (); }
    };

    template <typename Scalar> Scalar signed_area (std::span<const Vector2<Scalar>> vertices)
    {
        Scalar twice = 0;
        for (std::size_t i = 0, n = vertices.size (); i < n; ++i)
            twice += cross (vertices[i], vertices[(i + 1) % n]);
        return twice / 2;
    }

    template <typename Scalar> Scalar signed_area (const Polygon<Scalar> &poly) { return signed_area<Scalar> (poly.vertices); }

    template <typename Scalar> bool is_convex (std::span<const Vector2<Scalar>> v)
    {
        const std::size_t n = v.size ();
        if (n < 3)
            return false;
        for (std::size_t i = 0; i < n; ++i)
            if (cross<Scalar> (v[(i + 1) % n] - v[i], v[(i + 2) % n] - v[(i + 1) % n]) < 0)
                return false;
        return true;
    }

    /// Closed segment intersection, collinear overlap included.
    template <typename Scalar>
    bool segments_intersect (const Vector2<Scalar> &a, const Vector2<Scalar> &b, const Vector2<Scalar> &c, const Vector2<Scalar> &d)
    {
        auto orient = [] (const Vector2<Scalar> &p, const Vector2<Scalar> &q, const Vector2<Scalar> &r) {
            const Scalar v = cross<Scalar> (q - p, r - p);
            return (v > 0) - (v < 0);
        };
        auto on_segment = [] (const Vector2<Scalar> &p, const Vector2<Scalar> &q, const Vector2<Scalar> &r) {
            return std::min (p.x (), q.x ()) <= r.x () && r.x () <= std::max (p.x (), q.x ()) && std::min (p.y (), q.y ()) <= r.y () &&
                   r.y () <= std::max (p.y (), q.y ());
        };
        const int o1 = orient (a, b, c), o2 = orient (a, b, d), o3 = orient (c, d, a), o4 = orient (c, d, b);
        if (o1 != o2 && o3 != o4)
            return true;
        return (o1 == 0 && on_segment (a, b, c)) || (o2 == 0 && on_segment (a, b, d)) || (o3 == 0 && on_segment (c, d, a)) ||
               (o4 == 0 && on_segment (c, d, b));
    }

    /// True when no two non-adjacent edges touch.
    template <typename Scalar> bool is_simple (std::span<const Vector2<Scalar>> v)
    {
        const std::size_t n = v.size ();
        if (n < 3)
            return false;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (v[i] == v[(i + 1) % n])
                return false;
            for (std::size_t j = i + 1; j < n; ++j)
            {
                const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if (adjacent)
                    continue;
                if (segments_intersect (v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                    return false;
            }
        }
        return true;
    }

    /// Point inside or on the boundary of a convex CCW polygon.
    template <typename Scalar> bool contains (std::span<const Vector2<Scalar>> convex, const Vector2<Scalar> &p)
    {
        for (std::size_t i = 0, n = convex.size (); i < n; ++i)
            if (cross<Scalar> (convex[(i + 1) % n] - convex[i], p - convex[i]) < 0)
                return false;
        return true;
    }

    template <typename Scalar> bool contains (const Polygon<Scalar> &convex, const Vector2<Scalar> &p) { return contains<Scalar> (convex.vertices, p); }

    namespace detail
    {
        template <typename Scalar>
        bool separated_along_edges_of (std::span<const Vector2<Scalar>> a, std::span<const Vector2<Scalar>> b)
        {
            for (std::size_t i = 0, n = a.size (); i < n; ++i)
            {
                const Vector2<Scalar> edge = a[(i + 1) % n] - a[i];
                const Vector2<Scalar> axis (edge.y (), -edge.x ());
                Scalar min_a = std::numeric_limits<Scalar>::infinity (), max_a = -min_a;
                for (const auto &p : a)
                {
                    const Scalar d = axis.dot (p);
                    min_a = std::min (min_a, d);
                    max_a = std::max (max_a, d);
                }
                Scalar min_b = std::numeric_limits<Scalar>::infinity (), max_b = -min_b;
                for (const auto &p : b)
                {
                    const Scalar d = axis.dot (p);
                    min_b = std::min (min_b, d);
                    max_b = std::max (max_b, d);
                }
                if (max_a < min_b || max_b < min_a)
                    return true;
            }
            return false;
        }
    } // namespace detail

    /// Separating-axis test for two closed convex polygons.
    template <typename Scalar> bool convex_intersect (std::span<const Vector2<Scalar>> a, std::span<const Vector2<Scalar>> b)
    {
        return !detail::separated_along_edges_of (a, b) && !detail::separated_along_edges_of (b, a);
    }

    template <typename Scalar> Polygon<Scalar> to_polygon (const OrientedBox<Scalar> &box)
    {
        const auto c = box.corners ();
        return {{c.begin (), c.end ()}};
    }

    /// Overlap of a box and a convex polygon, boundary contact included.
    template <typename Scalar> bool box_polygon_intersects (const OrientedBox<Scalar> &box, const Polygon<Scalar> &poly)
    {
        const auto c = box.corners ();
        return convex_intersect<Scalar> (std::span<const Vector2<Scalar>> (c.data (), c.size ()), poly.vertices);
    }

    /// Axis-aligned bounds; the sampling domain and hard boundary of a scenario.
    template <typename Scalar> struct Workspace
    {
        Vector2<Scalar> min = Vector2<Scalar>::Zero ();
        Vector2<Scalar> max = Vector2<Scalar>::Zero ();

        bool valid () const { return min.x () < max.x () && min.y () < max.y (); }

        bool contains (const Vector2<Scalar> &p) const
        {
            return p.x () >= min.x () && p.x () <= max.x () && p.y () >= min.y () && p.y () <= max.y ();
        }
    };

    using Vector2d = Vector2<double>;
    using Pose2d = Pose<double>;
    using Box2d = OrientedBox<double>;
    using Polygon2d = Polygon<double>;
    using Workspace2d = Workspace<double>;

} // namespace parkrrt
