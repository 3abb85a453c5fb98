#include <parkrrt/scenario.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace parkrrt
{
    std::string_view to_string (ParkingType type)
    {
        switch (type)
        {
        case ParkingType::perpendicular:
            return "perpendicular";
        case ParkingType::parallel:
            return "parallel";
        case ParkingType::echelon:
            return "echelon";
        }
        return "unknown";
    }

    std::optional<ParkingType> parse_parking_type (std::string_view text)
    {
        if (text == "perpendicular")
            return ParkingType::perpendicular;
        if (text == "parallel")
            return ParkingType::parallel;
        if (text == "echelon")
            return ParkingType::echelon;
        return std::nullopt;
    }

    namespace
    {
        struct SlotFrame
        {
            Vector2d origin, axis, left;
            double right_len, left_len;
        };

        SlotFrame frame_of (const Slot &slot)
        {
            const double cot = std::cos (slot.entry_angle) / std::sin (slot.entry_angle);
            const double shear = slot.width * cot;
            return {slot.corner.position, slot.corner.direction (), Vector2d (-std::sin (slot.corner.heading), std::cos (slot.corner.heading)),
                    slot.depth + std::max (0.0, -shear), slot.depth + std::max (0.0, shear)};
        }
    } // namespace

    Polygon2d Slot::polygon () const
    {
        const SlotFrame f = frame_of (*this);
        return {{f.origin, f.origin + f.right_len * f.axis, f.origin + width * f.left + f.left_len * f.axis, f.origin + width * f.left}};
    }

    std::array<Vector2d, 2> Slot::open_edge () const
    {
        const SlotFrame f = frame_of (*this);
        return {f.origin + f.right_len * f.axis, f.origin + width * f.left + f.left_len * f.axis};
    }

    Vector2d Slot::outward_normal () const
    {
        const auto [a, b] = open_edge ();
        const Vector2d e = (b - a).normalized ();
        return {e.y (), -e.x ()};
    }

    double Slot::distance_past_open_edge (const Vector2d &p) const { return outward_normal ().dot (p - open_edge ()[0]); }

    double Slot::open_edge_heading () const
    {
        const auto [a, b] = open_edge ();
        return std::atan2 (b.y () - a.y (), b.x () - a.x ());
    }

    namespace
    {
        struct Bounds
        {
            Vector2d lo, hi;

            bool overlaps (const Bounds &o) const
            {
                return !(o.hi.x () < lo.x () || hi.x () < o.lo.x () || o.hi.y () < lo.y () || hi.y () < o.lo.y ());
            }
        };

        Bounds bounds_of (std::span<const Vector2d> points)
        {
            Bounds b{points.front (), points.front ()};
            for (const auto &v : points)
            {
                b.lo = b.lo.cwiseMin (v);
                b.hi = b.hi.cwiseMax (v);
            }
            return b;
        }

        // True when the closed disc (centre, radius) misses the convex polygon entirely.
        bool disc_clear_of (const Vector2d &centre, double radius, const Polygon2d &polygon)
        {
            const auto &v = polygon.vertices;
            bool inside = true;
            double best = std::numeric_limits<double>::infinity ();
            for (std::size_t i = 0; i < v.size (); ++i)
            {
                const Vector2d &a = v[i];
                const Vector2d &b = v[(i + 1) % v.size ()];
                const Vector2d e = b - a;
                if (cross<double> (e, centre - a) < 0)
                    inside = false;
                const double t = std::clamp ((centre - a).dot (e) / e.squaredNorm (), 0.0, 1.0);
                best = std::min (best, (a + t * e - centre).squaredNorm ());
            }
            return !inside && best > radius * radius;
        }

        // Footprint test against the obstacles selected by `relevant` (all when null).
        bool footprint_free (const Pose2d &pose, const Scenario &scenario, bool check_workspace, const std::vector<std::size_t> *relevant)
        {
            const auto corners = footprint (pose, scenario.vehicle).corners ();
            const std::span<const Vector2d> body (corners.data (), corners.size ());
            if (check_workspace)
                for (const auto &c : corners)
                    if (!scenario.workspace.contains (c))
                        return false;
            const Bounds box = bounds_of (body);
            auto hits = [&] (const Polygon2d &obstacle) {
                return bounds_of (obstacle.vertices).overlaps (box) && convex_intersect<double> (body, obstacle.vertices);
            };
            if (!relevant)
                return std::none_of (scenario.obstacles.begin (), scenario.obstacles.end (), hits);
            return std::none_of (relevant->begin (), relevant->end (), [&] (std::size_t i) { return hits (scenario.obstacles[i]); });
        }
    } // namespace

    bool pose_collision_free (const Pose2d &pose, const Scenario &scenario) { return footprint_free (pose, scenario, true, nullptr); }

    bool arc_collision_free (const Pose2d &pose, const Primitive &prim, const Scenario &scenario, int samples)
    {
        const Vehicle &vehicle = scenario.vehicle;
        check_steer (prim.steer, vehicle);
        if (samples < 1)
            throw ContractViolation ("arc check needs at least one sample");

        // Every sampled footprint lies in a disc around the starting footprint centre:
        // translation is at most the arc length, rotation at most |dtheta| about the rear axle.
        const double offset = vehicle.body_length / 2 - vehicle.rear_overhang;
        const double half_diagonal = std::hypot (vehicle.body_length / 2, vehicle.body_width / 2);
        const double turn = kPrimitiveLength * std::abs (std::tan (prim.steer)) / vehicle.wheelbase;
        const double radius = half_diagonal + kPrimitiveLength + turn * (std::abs (offset) + half_diagonal) + 1e-9;
        const Vector2d centre = pose.position + offset * pose.direction ();
        const Bounds disc{centre.array () - radius, centre.array () + radius};

        const Workspace2d &ws = scenario.workspace;
        const bool inside = ws.min.x () < disc.lo.x () && ws.min.y () < disc.lo.y () && disc.hi.x () < ws.max.x () && disc.hi.y () < ws.max.y ();
        std::vector<std::size_t> relevant;
        for (std::size_t i = 0; i < scenario.obstacles.size (); ++i)
            if (bounds_of (scenario.obstacles[i].vertices).overlaps (disc) && !disc_clear_of (centre, radius, scenario.obstacles[i]))
                relevant.push_back (i);
        if (inside && relevant.empty ())
            return true;

        // same poses as sample_arc, without building the vector
        for (int k = 1; k <= samples; ++k)
        {
            const Pose2d p = k < samples ? advance (pose, prim.direction, prim.steer, kPrimitiveLength * k / samples, vehicle) : integrate (pose, prim, vehicle);
            if (!footprint_free (p, scenario, !inside, &relevant))
                return false;
        }
        return true;
    }

    bool point_free (const Vector2d &p, const Scenario &scenario)
    {
        return std::none_of (scenario.obstacles.begin (), scenario.obstacles.end (), [&] (const Polygon2d &o) { return contains (o, p); });
    }

    bool footprint_in_slot (const Pose2d &pose, const Scenario &scenario)
    {
        const Polygon2d slot = scenario.slot.polygon ();
        const auto corners = footprint (pose, scenario.vehicle).corners ();
        const std::span<const Vector2d> body (corners.data (), corners.size ());
        if (!convex_intersect<double> (body, slot.vertices))
            return false;
        // overlap limited to the slot boundary does not count as interior
        const Vector2d centroid = (slot.vertices[0] + slot.vertices[1] + slot.vertices[2] + slot.vertices[3]) / 4;
        Polygon2d shrunk = slot;
        for (auto &v : shrunk.vertices)
            v = centroid + (v - centroid) * (1 - 1e-9);
        return convex_intersect<double> (body, shrunk.vertices);
    }

    Pose2d mirror_in_slot (const Pose2d &pose, const Slot &slot)
    {
        const auto [a, b] = slot.open_edge ();
        const Vector2d mid = (a + b) / 2;
        const Vector2d axis = slot.corner.direction ();
        const Vector2d rel = pose.position - mid;
        const Vector2d reflected = 2 * rel.dot (axis) * axis - rel;
        return {mid + reflected, 2 * slot.corner.heading - pose.heading};
    }

} // namespace parkrrt
