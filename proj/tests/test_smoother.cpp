#include <doctest.h>

#include <parkrrt/errors.hpp>
#include <parkrrt/scenario_io.hpp>
#include <parkrrt/smoother.hpp>

#include <cmath>
#include <string>

using namespace parkrrt;

namespace
{
    Scenario open_field ()
    {
        Scenario s;
        s.workspace = {{-30, -30}, {30, 30}};
        return s;
    }

    Path repeat (Path path, Primitive prim, std::size_t n)
    {
        path.primitives.insert (path.primitives.end (), n, prim);
        return path;
    }

    // Drive the footprint along the straight chord between two poses.
    bool chord_collides (const Pose2d &a, const Pose2d &b, const Scenario &s)
    {
        const Vector2d d = b.position - a.position;
        const double heading = std::atan2 (d.y (), d.x ());
        for (int k = 0; k <= 200; ++k)
            if (!pose_collision_free (Pose2d (a.position + d * (k / 200.0), heading), s))
                return true;
        return false;
    }
} // namespace

TEST_CASE ("within_tolerance is closed on both bounds")
{
    const PlanConfig c;
    CHECK (within_tolerance (Pose2d (0, 0, 0), Pose2d (0.2, 0, 0.1), c));
    CHECK_FALSE (within_tolerance (Pose2d (0, 0, 0), Pose2d (0.2001, 0, 0), c));
    CHECK_FALSE (within_tolerance (Pose2d (0, 0, 0), Pose2d (0, 0, 0.1001), c));
}

TEST_CASE ("one primitive is returned unchanged")
{
    const Scenario s = open_field ();
    const Path p{Pose2d (1, 2, 0.5), {{Direction::backward, 0.2}}};
    const Trajectory out = smooth (p, s, PlanConfig{});
    REQUIRE (out.size () == 1);
    CHECK (out[0].start == p.start);
    CHECK (out[0].primitives == p.primitives);
}

TEST_CASE ("a zig-zag collapses into fewer, steadier primitives")
{
    const Scenario s = open_field ();
    Path zig{Pose2d (0, 0, 0), {}};
    for (int i = 0; i < 8; ++i)
    {
        zig = repeat (zig, {Direction::forward, degrees (30.0)}, 5);
        zig = repeat (zig, {Direction::forward, -degrees (30.0)}, 5);
    }
    const PlanConfig c;
    const Trajectory out = smooth (zig, s, c);
    CHECK (primitive_count (out) < zig.size ());
    CHECK (standard_deviation (steering_sequence (out)) < standard_deviation (steering_sequence (Trajectory{zig})));
    CHECK (within_tolerance (end_pose (out, s.vehicle), end_pose (zig, s.vehicle), c));
    CHECK (out.front ().start == zig.start);
    CHECK (replays_collision_free (out, s));
}

TEST_CASE ("the end anchor replaces the final pose as the last target")
{
    const Scenario s = open_field ();
    const Path straight = repeat ({Pose2d (0, 0, 0), {}}, {Direction::forward, 0.0}, 30);
    const Pose2d anchor (3.1, 0.05, 0.02);
    const PlanConfig c;
    const Trajectory out = smooth (straight, s, c, anchor);
    CHECK (within_tolerance (end_pose (out, s.vehicle), anchor, c));
    CHECK (primitive_count (out) <= straight.size ());
}

TEST_CASE ("a colliding input is a contract violation")
{
    Scenario s = open_field ();
    s.obstacles.push_back ({{{4, -1}, {5, -1}, {5, 1}, {4, 1}}});
    const Path p = repeat ({Pose2d (0, 0, 0), {}}, {Direction::forward, 0.0}, 10);
    CHECK_THROWS_AS (smooth (p, s, PlanConfig{}), ContractViolation);
}

TEST_CASE ("smoothing around a wall corner avoids the chord")
{
    Scenario s = open_field ();
    // a post inside a left turn, right on the straight line joining the turn's ends
    s.obstacles.push_back ({{{2.8, 3.4}, {3.6, 3.4}, {3.6, 4.2}, {2.8, 4.2}}});
    Path turn = repeat ({Pose2d (0, 0, 0), {}}, {Direction::forward, 0.0}, 20);
    turn = repeat (turn, {Direction::forward, degrees (30.0)}, 73);
    turn = repeat (turn, {Direction::forward, 0.0}, 30);
    REQUIRE (replays_collision_free (turn, s));

    const Pose2d end = end_pose (turn, s.vehicle);
    CHECK (chord_collides (turn.start, end, s));

    const PlanConfig c;
    const Trajectory out = smooth (turn, s, c);
    CHECK (replays_collision_free (out, s));
    CHECK (primitive_count (out) <= turn.size ());
    CHECK (within_tolerance (end_pose (out, s.vehicle), end, c));
    for (const double phi : steering_sequence (out))
        CHECK (std::abs (phi) <= s.vehicle.max_steer);
}

TEST_CASE ("smoothing search-tree output keeps every property")
{
    const Scenario s = load_scenario_file (std::string (PARKRRT_SCENARIOS) + "/perpendicular.scn");
    const TargetTree tree = build_target_tree (s);
    for (std::uint64_t seed = 0; seed < 10; ++seed)
    {
        PlanConfig c;
        c.seed = seed;
        c.smooth = false;
        const PlanResult r = plan (s, c, tree);
        const Trajectory out = smooth (r.raw_approach, s, c, r.entry.start);
        CHECK (primitive_count (out) <= r.raw_approach.size ());
        CHECK (standard_deviation (steering_sequence (out)) <= standard_deviation (steering_sequence (Trajectory{r.raw_approach})));
        CHECK (within_tolerance (end_pose (out, s.vehicle), r.entry.start, c));
        CHECK (out.front ().start == r.raw_approach.start);
        CHECK (replays_collision_free (out, s));
        const JunctionGap gap = max_gap (out, s.vehicle);
        CHECK (gap.position <= c.tolerance_pos);
        CHECK (gap.heading <= c.tolerance_heading);
    }
}
