#include <parkrrt/path.hpp>

#include <cmath>
#include <numeric>

namespace parkrrt
{
    double path_length (const Path &path) { return static_cast<double> (path.primitives.size ()) * kPrimitiveLength; }

    double path_length (const Trajectory &trajectory) { return static_cast<double> (primitive_count (trajectory)) * kPrimitiveLength; }

    std::size_t primitive_count (const Trajectory &trajectory)
    {
        return std::accumulate (trajectory.begin (), trajectory.end (), std::size_t{0}, [] (std::size_t n, const Path &p) { return n + p.size (); });
    }

    Pose2d end_pose (const Path &path, const Vehicle &vehicle)
    {
        Pose2d pose = path.start;
        for (const auto &m : path.primitives)
            pose = integrate (pose, m, vehicle);
        return pose;
    }

    Pose2d end_pose (const Trajectory &trajectory, const Vehicle &vehicle)
    {
        if (trajectory.empty ())
            throw ContractViolation ("end_pose of an empty trajectory");
        return end_pose (trajectory.back (), vehicle);
    }

    std::vector<Pose2d> poses (const Path &path, const Vehicle &vehicle) { return replay (path.start, path.primitives, vehicle); }

    bool replays_collision_free (const Path &path, const Scenario &scenario)
    {
        if (!pose_collision_free (path.start, scenario))
            return false;
        Pose2d pose = path.start;
        for (const auto &m : path.primitives)
        {
            if (!(std::abs (m.steer) <= scenario.vehicle.max_steer))
                return false;
            if (!arc_collision_free (pose, m, scenario, kArcSamples))
                return false;
            pose = integrate (pose, m, scenario.vehicle);
        }
        return true;
    }

    bool replays_collision_free (const Trajectory &trajectory, const Scenario &scenario)
    {
        for (const auto &leg : trajectory)
            if (!replays_collision_free (leg, scenario))
                return false;
        return true;
    }

    void append_leg (Trajectory &trajectory, Path leg, const Vehicle &vehicle)
    {
        if (!trajectory.empty () && end_pose (trajectory.back (), vehicle) == leg.start)
        {
            auto &prims = trajectory.back ().primitives;
            prims.insert (prims.end (), leg.primitives.begin (), leg.primitives.end ());
            return;
        }
        trajectory.push_back (std::move (leg));
    }

    std::vector<double> steering_sequence (const Trajectory &trajectory)
    {
        std::vector<double> out;
        for (const auto &leg : trajectory)
            for (const auto &m : leg.primitives)
                out.push_back (m.steer);
        return out;
    }

    double standard_deviation (const std::vector<double> &values)
    {
        if (values.size () < 2)
            return 0.0;
        const double mean = std::accumulate (values.begin (), values.end (), 0.0) / static_cast<double> (values.size ());
        double sq = 0.0;
        for (double v : values)
            sq += (v - mean) * (v - mean);
        return std::sqrt (sq / static_cast<double> (values.size ()));
    }

    std::size_t direction_changes (const Trajectory &trajectory)
    {
        std::size_t changes = 0;
        const Primitive *prev = nullptr;
        for (const auto &leg : trajectory)
            for (const auto &m : leg.primitives)
            {
                if (prev && prev->direction != m.direction)
                    ++changes;
                prev = &m;
            }
        return changes;
    }

    JunctionGap max_gap (const Trajectory &trajectory, const Vehicle &vehicle)
    {
        JunctionGap gap;
        for (std::size_t i = 1; i < trajectory.size (); ++i)
        {
            const Pose2d a = end_pose (trajectory[i - 1], vehicle);
            const Pose2d &b = trajectory[i].start;
            gap.position = std::max (gap.position, (a.position - b.position).norm ());
            gap.heading = std::max (gap.heading, std::abs (angle_difference (a.heading, b.heading)));
        }
        return gap;
    }

} // namespace parkrrt
