#pragma once
/**
 * @file path.hpp
 * @brief Primitive sequences and multi-leg trajectories.
 *
 * A Path is a start pose plus primitives. A Trajectory is an ordered list of
 * legs; consecutive legs may be separated by a small, explicitly recorded
 * gap (tree junctions and tolerance-based smoothing joints).
 */

#include <parkrrt/kinematics.hpp>
#include <parkrrt/scenario.hpp>

#include <vector>

namespace parkrrt
{
    struct Path
    {
        Pose2d start;
        std::vector<Primitive> primitives;

        bool empty () const { return primitives.empty (); }
        std::size_t size () const { return primitives.size (); }
    };

    using Trajectory = std::vector<Path>;

    /// Primitive count times 0.1 m.
    double path_length (const Path &path);
    double path_length (const Trajectory &trajectory);
    std::size_t primitive_count (const Trajectory &trajectory);

    Pose2d end_pose (const Path &path, const Vehicle &vehicle);
    Pose2d end_pose (const Trajectory &trajectory, const Vehicle &vehicle);

    /// All poses of a path, start included.
    std::vector<Pose2d> poses (const Path &path, const Vehicle &vehicle);

    /// Start pose free, every primitive legal and every sampled arc free.
    bool replays_collision_free (const Path &path, const Scenario &scenario);
    bool replays_collision_free (const Trajectory &trajectory, const Scenario &scenario);

    /// Append `leg`, merging it into the last leg when it starts exactly where that one ends.
    void append_leg (Trajectory &trajectory, Path leg, const Vehicle &vehicle);

    /// Steering angles of every primitive in order.
    std::vector<double> steering_sequence (const Trajectory &trajectory);

    /// Population standard deviation; zero for fewer than two values.
    double standard_deviation (const std::vector<double> &values);

    /// Number of forward/backward switches.
    std::size_t direction_changes (const Trajectory &trajectory);

    struct JunctionGap
    {
        double position = 0;
        double heading = 0;
    };

    /// Largest position and heading jump between consecutive legs.
    JunctionGap max_gap (const Trajectory &trajectory, const Vehicle &vehicle);

} // namespace parkrrt
