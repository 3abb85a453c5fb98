#include <doctest.h>

#include <parkrrt/pursuit.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace parkrrt;

namespace
{
    constexpr double pi = std::numbers::pi;

    Polygon2d rect (double x0, double y0, double x1, double y1) { return {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}; }

    Scenario open_field ()
    {
        Scenario s;
        s.workspace = {{-30, -30}, {30, 30}};
        return s;
    }

    // 0.01 degree brute force over the full steering range.
    double brute_force_steer (const Pose2d &src, const Pose2d &dst, Direction d, const Vehicle &v)
    {
        double best = 0, best_cost = INFINITY;
        for (int k = -3000; k <= 3000; ++k)
        {
            const double phi = degrees (k / 100.0);
            const double c = config_distance (integrate (src, Primitive{d, phi}, v), dst);
            if (c < best_cost)
            {
                best_cost = c;
                best = phi;
            }
        }
        return best;
    }

    double cost_of (const Pose2d &src, const Pose2d &dst, Direction d, double phi, const Vehicle &v)
    {
        return config_distance (integrate (src, Primitive{d, phi}, v), dst);
    }
} // namespace

TEST_CASE ("argmin_steer closed-form cases")
{
    const Vehicle v;
    const Pose2d up (0, 0, pi / 2);
    // target to the right: full right lock forward, full left lock backward
    CHECK (argmin_steer (up, Pose2d (1, 1, 0), Direction::forward, v) == doctest::Approx (-v.max_steer));
    CHECK (argmin_steer (up, Pose2d (1, 1, 0), Direction::backward, v) == doctest::Approx (v.max_steer));
    // interior optimum, located by solving the stationarity condition to 30 digits
    CHECK (argmin_steer (up, Pose2d (-0.2, 1.0, 1.58), Direction::forward, v) == doctest::Approx (degrees (26.663793)).epsilon (1e-6));
    // nearly straight behind
    CHECK (std::abs (argmin_steer (Pose2d (1, 2, 0.3), Pose2d (0, 1.9, 0.31), Direction::backward, v)) < degrees (1.0));
}

TEST_CASE ("argmin_steer is never worse than a fine brute force")
{
    const Vehicle v;
    std::mt19937_64 rng (21);
    std::uniform_real_distribution<double> pos (-5, 5), ang (-pi, pi);
    for (int i = 0; i < 40; ++i)
    {
        const Pose2d a (pos (rng), pos (rng), ang (rng)), b (pos (rng), pos (rng), ang (rng));
        const Direction d = i % 2 ? Direction::forward : Direction::backward;
        const double got = argmin_steer (a, b, d, v);
        CHECK (std::abs (got) <= v.max_steer);
        const double want = brute_force_steer (a, b, d, v);
        CHECK (cost_of (a, b, d, got, v) <= cost_of (a, b, d, want, v) + 1e-9);
    }
}

TEST_CASE ("point pursuit in free space takes the better direction's optimum")
{
    const Scenario s = open_field ();
    const Pose2d a (0, 0, 0), ahead (3, 0.5, 0.2), behind (-3, -0.5, 0.1);
    auto r = point_pursuit (a, ahead, s);
    REQUIRE (r);
    CHECK (r->primitive.direction == Direction::forward);
    CHECK (r->primitive.steer == doctest::Approx (argmin_steer (a, ahead, Direction::forward, s.vehicle)));
    CHECK (r->destination == integrate (a, r->primitive, s.vehicle));
    CHECK (r->achieved_distance == doctest::Approx (config_distance (r->destination, ahead)));

    r = point_pursuit (a, behind, s);
    REQUIRE (r);
    CHECK (r->primitive.direction == Direction::backward);
}

TEST_CASE ("a blocked optimum falls back to a free angle on the sweep grid")
{
    Scenario s = open_field ();
    // a post just ahead of the front-left corner; straight ahead clips it
    s.obstacles.push_back (rect (3.65, 0.5, 4.5, 3));
    const Pose2d a (0, 0, 0), target (6, 0, 0);
    const double optimum = argmin_steer (a, target, Direction::forward, s.vehicle);
    REQUIRE_FALSE (arc_collision_free (a, Primitive{Direction::forward, optimum}, s));

    const auto r = point_pursuit (a, target, s);
    REQUIRE (r);
    CHECK (arc_collision_free (a, r->primitive, s));
    if (r->primitive.direction == Direction::forward)
    {
        const double steps = (r->primitive.steer - optimum) / kSteerSweepStep;
        const bool on_grid = std::abs (steps - std::round (steps)) < 1e-9;
        const bool at_clamp = std::abs (std::abs (r->primitive.steer) - s.vehicle.max_steer) < 1e-12;
        CHECK ((on_grid || at_clamp));
    }
}

TEST_CASE ("front blocked: pursuit reverses")
{
    Scenario s = open_field ();
    s.obstacles.push_back (rect (3.65, -5, 4, 5));
    const auto r = point_pursuit (Pose2d (0, 0, 0), Pose2d (6, 0, 0), s);
    REQUIRE (r);
    CHECK (r->primitive.direction == Direction::backward);
}

TEST_CASE ("boxed in front and back: blocked")
{
    Scenario s = open_field ();
    s.obstacles.push_back (rect (3.65, -5, 4, 5));
    s.obstacles.push_back (rect (-1.5, -5, -0.95, 5));
    CHECK (pose_collision_free (Pose2d (0, 0, 0), s));
    CHECK_FALSE (point_pursuit (Pose2d (0, 0, 0), Pose2d (6, 0, 0), s).has_value ());
}

TEST_CASE ("pursuit results are always collision-free")
{
    Scenario s = open_field ();
    s.obstacles.push_back (rect (-2, -2, 2, 2));
    s.obstacles.push_back (rect (5, -8, 7, 8));
    std::mt19937_64 rng (4);
    std::uniform_real_distribution<double> pos (-15, 15), ang (-pi, pi);
    int found = 0;
    for (int i = 0; i < 300; ++i)
    {
        const Pose2d a (pos (rng), pos (rng), ang (rng));
        if (!pose_collision_free (a, s))
            continue;
        const auto r = point_pursuit (a, Pose2d (pos (rng), pos (rng), ang (rng)), s);
        if (!r)
            continue;
        ++found;
        CHECK (std::abs (r->primitive.steer) <= s.vehicle.max_steer);
        CHECK (arc_collision_free (a, r->primitive, s));
        CHECK (pose_collision_free (r->destination, s));
    }
    CHECK (found > 100);
}
