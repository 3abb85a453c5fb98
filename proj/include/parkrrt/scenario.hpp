#pragma once
/**
 * @file scenario.hpp
 * @brief Parking scenario model: workspace, convex obstacle parts, slot, start/goal.
 */

#include <parkrrt/geometry.hpp>
#include <parkrrt/kinematics.hpp>

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace parkrrt
{
    enum class ParkingType
    {
        perpendicular,
        parallel,
        echelon
    };

    std::string_view to_string (ParkingType type);
    std::optional<ParkingType> parse_parking_type (std::string_view text);

    /**
     * Parking slot in its own frame. `corner` sits at the back-right corner;
     * its heading is the slot axis, pointing from the back edge toward the
     * open edge. `width` spans to the left of the axis. `depth` is the
     * usable length along the axis. With `entry_angle` != pi/2 the open edge
     * is sheared (echelon stalls) and one side grows by width * |cot|.
     */
    struct Slot
    {
        Pose2d corner;
        double depth = 0;
        double width = 0;
        /// Angle between the slot axis and the open edge.
        double entry_angle = std::numbers::pi / 2;

        /// Convex CCW outline: back-right, open-right, open-left, back-left.
        Polygon2d polygon () const;
        /// Open edge endpoints, right then left.
        std::array<Vector2d, 2> open_edge () const;
        /// Unit normal of the open edge pointing out of the slot.
        Vector2d outward_normal () const;
        /// Signed distance of `p` beyond the open edge (positive outside).
        double distance_past_open_edge (const Vector2d &p) const;
        /// Direction angle of the open edge (right to left endpoint).
        double open_edge_heading () const;
    };

    struct Scenario
    {
        std::string name;
        ParkingType type = ParkingType::perpendicular;
        Workspace2d workspace;
        /// Convex parts only.
        std::vector<Polygon2d> obstacles;
        Slot slot;
        Pose2d start;
        Pose2d goal;
        Vehicle vehicle;
        /// Length of each simulated drive-out line of the target tree, meters.
        double drive_out_length = 6.0;
    };

    /// Car body box for a rear-axle pose.
    template <typename Scalar> OrientedBox<Scalar> footprint (const Pose<Scalar> &pose, const VehicleParams<Scalar> &vehicle)
    {
        const Scalar offset = vehicle.body_length / 2 - vehicle.rear_overhang;
        return {pose.position + offset * pose.direction (), vehicle.body_length / 2, vehicle.body_width / 2, pose.heading};
    }

    /// Footprint inside the workspace and clear of every obstacle part.
    bool pose_collision_free (const Pose2d &pose, const Scenario &scenario);

    /// Every sampled pose along the primitive is collision free (the start pose is not rechecked).
    bool arc_collision_free (const Pose2d &pose, const Primitive &prim, const Scenario &scenario, int samples = 5);

    /// Point lies outside every obstacle part (boundary counts as inside).
    bool point_free (const Vector2d &p, const Scenario &scenario);

    /// Footprint of `pose` overlaps the slot interior.
    bool footprint_in_slot (const Pose2d &pose, const Scenario &scenario);

    /// Mirror a pose across the slot's centre line (the line through the open edge midpoint along the slot axis).
    Pose2d mirror_in_slot (const Pose2d &pose, const Slot &slot);

    /// Default samples per primitive used for arc collision checks.
    inline constexpr int kArcSamples = 5;

} // namespace parkrrt
