#pragma once
/**
 * @file smoother.hpp
 * @brief Divide-and-conquer smoothing by re-planning segments with point pursuit.
 */

#include <parkrrt/path.hpp>
#include <parkrrt/planner.hpp>

#include <optional>

namespace parkrrt
{
    /**
     * Smooth a collision-free path.
     *
     * A segment of n primitives is re-planned by pursuing its end pose for at
     * most n - 1 primitives; reaching it within the config tolerances
     * replaces the segment. Otherwise the segment is split at n / 2 and both
     * halves are smoothed, the second starting where the first ended. One
     * primitive segments are kept as they are. The output consists of legal,
     * collision-free primitives and never has more of them than the input.
     * Where a re-planned segment stops short of an original pose the next leg
     * restarts at that pose; the gap is bounded by the tolerances.
     *
     * `end_anchor` replaces the final pose as the pursuit target of the last
     * segment, so a junction with a target tree stays within tolerance.
     *
     * @throws ContractViolation when the input does not replay collision free.
     */
    Trajectory smooth (const Path &path, const Scenario &scenario, const PlanConfig &config, std::optional<Pose2d> end_anchor = std::nullopt);

    /// Pose `a` lies within the position and heading tolerances of `b`.
    bool within_tolerance (const Pose2d &a, const Pose2d &b, const PlanConfig &config);

} // namespace parkrrt
