#pragma once
/**
 * @file pursuit.hpp
 * @brief Point pursuit: the best single collision-free primitive toward a target pose.
 */

#include <parkrrt/kinematics.hpp>
#include <parkrrt/scenario.hpp>

#include <optional>

namespace parkrrt
{
    struct PursuitResult
    {
        Primitive primitive;
        Pose2d destination;
        /// config_distance(destination, target).
        double achieved_distance = 0;
    };

    /// Grid resolution of the steering search.
    inline constexpr double kSteerGridStep = degrees (0.5);
    /// Step of the collision fallback sweep.
    inline constexpr double kSteerSweepStep = degrees (1.0);

    /**
     * Steering angle in [-max_steer, max_steer] minimising
     * config_distance(integrate(source, {direction, phi}), target).
     * Grid search at 0.5 degrees, then one golden-section pass over the
     * winning cell. Ties go to the smaller |phi|.
     */
    double argmin_steer (const Pose2d &source, const Pose2d &target, Direction direction, const Vehicle &vehicle, double angle_weight = 1.0);

    /**
     * One step of point pursuit. Both directions are optimised and the closer
     * one is tried first; a colliding optimum falls back to the nearest
     * collision-free angles below and above it. std::nullopt means blocked:
     * no collision-free primitive exists in either direction.
     */
    std::optional<PursuitResult> point_pursuit (const Pose2d &source, const Pose2d &target, const Scenario &scenario, double angle_weight = 1.0);

} // namespace parkrrt
