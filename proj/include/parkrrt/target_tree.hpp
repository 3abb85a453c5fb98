#pragma once
/**
 * @file target_tree.hpp
 * @brief Model-based target tree: simulated drive-out lines from the parked pose, reversed into entry paths.
 *
 * Each line is a drive-out manoeuvre of fixed total length from a root
 * (the parked pose). Twenty stations, evenly spaced along the line, become
 * tree nodes. A node's edge holds the drive-out primitives from its parent
 * station; reversing those edges gives the parking-in path to the root.
 *
 * Per parking type:
 * - perpendicular: forward, shortest collision-free straight, then a fixed
 *   angle from -30 to 30 degrees in 2 degree steps (31 lines);
 * - parallel: reverse to the rear clearance, forward at full lock until the
 *   body centre is half a body length past the open edge, then the 31 fixed
 *   angles; the whole manoeuvre is mirrored for the opposite facing
 *   (62 lines, two roots);
 * - echelon: as perpendicular but backward with 0 to 30 degrees (16 lines).
 */

#include <parkrrt/kinematics.hpp>
#include <parkrrt/path.hpp>
#include <parkrrt/scenario.hpp>

#include <cstddef>
#include <optional>
#include <vector>

namespace parkrrt
{
    inline constexpr std::size_t kStationsPerLine = 20;
    /// Gap kept behind the car when reversing inside a parallel slot.
    inline constexpr double kRearClearance = 0.1;

    struct TargetNode
    {
        Pose2d pose;
        /// Root this node drives out of.
        std::size_t root = 0;
        /// Parent station; nullopt means the parent is the root itself.
        std::optional<std::size_t> parent;
        /// Drive-out primitives from the parent to this node, in execution order.
        std::vector<Primitive> edge;
        std::size_t line = 0;
    };

    struct TargetLine
    {
        std::size_t root = 0;
        /// Steering angle held after the straight or escape phase.
        double fixed_steer = 0;
        /// Primitives driven before the fixed-angle phase starts.
        std::size_t lead_in = 0;
        /// Full drive-out primitive sequence from the root.
        std::vector<Primitive> primitives;
    };

    struct TargetTree
    {
        /// roots.front() is the scenario goal; a parallel tree adds its mirrored twin.
        std::vector<Pose2d> roots;
        std::vector<TargetNode> nodes;
        std::vector<TargetLine> lines;

        std::size_t line_count () const { return lines.size (); }
        static constexpr std::size_t nodes_per_line () { return kStationsPerLine; }
    };

    /// Fixed steering angles of the fan: -30..30 by 2 degrees, or 0..30 when `one_sided`, clipped to max_steer.
    std::vector<double> fan_angles (const Vehicle &vehicle, bool one_sided);

    /**
     * Shortest straight lead-in, in whole primitives of 0.1 m, after which a
     * constant `steer` arc to the full line length stays collision free.
     * Searched from zero up to the slot depth.
     * @throws ModelInfeasible when no lead-in within the bound works.
     */
    double min_straight_extension (const Scenario &scenario, double steer, Direction direction = Direction::forward);
    double min_straight_extension (const Scenario &scenario, const Pose2d &root, double steer, Direction direction);

    TargetTree build_perpendicular (const Scenario &scenario);
    TargetTree build_parallel (const Scenario &scenario);
    TargetTree build_echelon (const Scenario &scenario);

    /// Dispatch on scenario.type.
    /// @throws InvalidScenario when the goal is in collision, ModelInfeasible when a line cannot be built.
    TargetTree build_target_tree (const Scenario &scenario);

    /// Parking-in path from `node` to its root: drive-out edges reversed, directions flipped.
    Path backtrack_target (const TargetTree &tree, std::size_t node);

} // namespace parkrrt
