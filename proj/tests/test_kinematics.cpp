#include <doctest.h>

#include <parkrrt/errors.hpp>
#include <parkrrt/kinematics.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace parkrrt;

namespace
{
    constexpr double pi = std::numbers::pi;

    // Closed-form arc about the turning centre, written independently of advance().
    Pose2d arc_about_centre (const Pose2d &p, double signed_length, double steer, double wheelbase)
    {
        const double r = wheelbase / std::tan (steer);
        const Vector2d centre = p.position + r * Vector2d (-std::sin (p.heading), std::cos (p.heading));
        const double h = p.heading + signed_length / r;
        return {centre + r * Vector2d (std::sin (h), -std::cos (h)), h};
    }
} // namespace

TEST_CASE ("vehicle defaults are valid and violations are named")
{
    Vehicle v;
    CHECK (v.valid ());
    CHECK (v.max_steer == doctest::Approx (pi / 6));
    v.wheelbase = 0;
    CHECK_FALSE (v.valid ());
    CHECK (v.violation ().find ("wheelbase") != std::string::npos);
    v = Vehicle{};
    v.max_steer = pi / 2;
    CHECK_FALSE (v.valid ());
}

TEST_CASE ("integrate at full right lock matches the closed form from (0, 0, pi/2)")
{
    // R = 2.7 / tan 30 deg, 0.1 m forward, evaluated at 40 digits
    const Pose2d p = integrate (Pose2d (0, 0, pi / 2), Primitive{Direction::forward, -degrees (30.0)}, Vehicle{});
    CHECK (std::abs (p.x () - 0.0010691264262972987718) < 1e-12);
    CHECK (std::abs (p.y () - 0.099992379384713608017) < 1e-12);
    CHECK (std::abs (p.heading - 1.5494129834915771465) < 1e-12);
}

TEST_CASE ("straight primitives move exactly 0.1 m")
{
    const Vehicle v;
    const Pose2d p = integrate (Pose2d (1, 2, 0.7), Primitive{Direction::backward, 0.0}, v);
    CHECK (p.x () == doctest::Approx (1 - 0.1 * std::cos (0.7)));
    CHECK (p.y () == doctest::Approx (2 - 0.1 * std::sin (0.7)));
    CHECK (p.heading == 0.7);
}

TEST_CASE ("tiny steering angles stay continuous with the straight case")
{
    const Vehicle v;
    const Pose2d s = integrate (Pose2d (0, 0, 0), Primitive{Direction::forward, 0.0}, v);
    const Pose2d t = integrate (Pose2d (0, 0, 0), Primitive{Direction::forward, 1e-12}, v);
    CHECK ((s.position - t.position).norm () < 1e-12);
    CHECK (std::abs (t.heading) < 1e-12);
}

TEST_CASE ("advance agrees with rotation about the turning centre")
{
    const Vehicle v;
    std::mt19937_64 rng (5);
    std::uniform_real_distribution<double> pos (-20, 20), ang (-pi, pi), steer (-v.max_steer, v.max_steer), len (0.01, 3);
    for (int i = 0; i < 500; ++i)
    {
        const Pose2d p (pos (rng), pos (rng), ang (rng));
        double phi = steer (rng);
        if (std::abs (phi) < 1e-3)
            phi = 0.2;
        const double s = len (rng);
        const Direction d = i % 2 ? Direction::forward : Direction::backward;
        const Pose2d got = advance (p, d, phi, s, v);
        const Pose2d want = arc_about_centre (p, sign (d) * s, phi, v.wheelbase);
        CHECK ((got.position - want.position).norm () < 1e-9);
        CHECK (std::abs (angle_difference (got.heading, want.heading)) < 1e-9);
    }
}

TEST_CASE ("reversing a primitive undoes it")
{
    const Vehicle v;
    std::mt19937_64 rng (9);
    std::uniform_real_distribution<double> pos (-20, 20), ang (-pi, pi), steer (-v.max_steer, v.max_steer);
    for (int i = 0; i < 1000; ++i)
    {
        const Pose2d p (pos (rng), pos (rng), ang (rng));
        const Primitive m{i % 2 ? Direction::forward : Direction::backward, steer (rng)};
        const Pose2d back = integrate (integrate (p, m, v), m.reversed (), v);
        CHECK ((back.position - p.position).norm () < 1e-9);
        CHECK (std::abs (angle_difference (back.heading, p.heading)) < 1e-9);
    }
}

TEST_CASE ("constant steering stays on the turning circle and closes it")
{
    const Vehicle v;
    const double phi = degrees (30.0);
    const double r = v.wheelbase / std::tan (phi);
    const Pose2d start (3, -1, 0.4);
    const Vector2d centre = start.position + r * Vector2d (-std::sin (start.heading), std::cos (start.heading));
    Pose2d p = start;
    const int steps = static_cast<int> (std::round (2 * pi * r / kPrimitiveLength));
    for (int k = 0; k < steps; ++k)
    {
        p = integrate (p, Primitive{Direction::forward, phi}, v);
        CHECK (std::abs ((p.position - centre).norm () - r) < 1e-9);
    }
    // the circumference is not a whole number of primitives; the residual arc is below one step
    CHECK ((p.position - start.position).norm () < kPrimitiveLength);
}

TEST_CASE ("steering outside the limit is a contract violation")
{
    const Vehicle v;
    CHECK_THROWS_AS (integrate (Pose2d{}, Primitive{Direction::forward, v.max_steer + 1e-9}, v), ContractViolation);
    CHECK_NOTHROW (integrate (Pose2d{}, Primitive{Direction::forward, -v.max_steer}, v));
}

TEST_CASE ("configuration distance wraps heading and weights it")
{
    const Pose2d a (0, 0, pi - 0.05), b (3, 4, -pi + 0.05);
    CHECK (config_distance (a, b) == doctest::Approx (25 + 0.01));
    CHECK (config_distance (a, b, 0.0) == doctest::Approx (25));
    CHECK (config_distance (a, b, 4.0) == doctest::Approx (25 + 0.04));
    CHECK (config_distance (a, a) == 0);
}

TEST_CASE ("arc samples are evenly spaced and end on integrate")
{
    const Vehicle v;
    const Pose2d p (1, 1, 0.3);
    const Primitive m{Direction::backward, degrees (-22.0)};
    const auto samples = sample_arc (p, m, v, 5);
    REQUIRE (samples.size () == 5);
    CHECK (samples.back () == integrate (p, m, v));
    const double r = v.wheelbase / std::tan (std::abs (m.steer));
    const double chord = 2 * r * std::sin (kPrimitiveLength / 5 / (2 * r));
    Pose2d prev = p;
    for (const auto &s : samples)
    {
        CHECK ((s.position - prev.position).norm () == doctest::Approx (chord).epsilon (1e-12));
        prev = s;
    }
    CHECK_THROWS_AS (sample_arc (p, m, v, 0), ContractViolation);
}

TEST_CASE ("replay returns the start and every intermediate pose")
{
    const Vehicle v;
    const std::vector<Primitive> prims{{Direction::forward, 0.1}, {Direction::forward, -0.2}, {Direction::backward, 0.0}};
    const auto poses = replay (Pose2d (0, 0, 0), prims, v);
    REQUIRE (poses.size () == 4);
    CHECK (poses[0] == Pose2d (0, 0, 0));
    for (std::size_t i = 0; i < prims.size (); ++i)
        CHECK (poses[i + 1] == integrate (poses[i], prims[i], v));
}

TEST_CASE ("equivalent steering angle from an Ackermann pair")
{
    const Vehicle v;
    // cot phi = (cot 32 deg + cot 28 deg) / 2, evaluated at 40 digits
    CHECK (std::abs (equivalent_steer (degrees (32.0), degrees (28.0), v) - 0.5214866118156894285) < 1e-12);
    CHECK (std::abs (equivalent_steer (-degrees (32.0), -degrees (28.0), v) + 0.5214866118156894285) < 1e-12);
    CHECK (equivalent_steer (0.3, 0.3, v) == doctest::Approx (0.3));
    // the equivalent angle lies between the wheel angles
    const double e = equivalent_steer (0.5, 0.4, v);
    CHECK (e < 0.5);
    CHECK (e > 0.4);
    CHECK_THROWS_AS (equivalent_steer (0.3, -0.2, v), ContractViolation);
    CHECK_THROWS_AS (equivalent_steer (0.0, 0.2, v), ContractViolation);
    CHECK_THROWS_AS (equivalent_steer (pi / 2, 0.2, v), ContractViolation);
}

TEST_CASE ("kinematics is scalar-generic")
{
    const VehicleParams<float> v;
    const Pose<float> p = integrate (Pose<float> (0.f, 0.f, 0.f), MotionPrimitive<float>{Direction::forward, 0.2f}, v);
    CHECK (p.x () == doctest::Approx (0.1).epsilon (1e-3));
    CHECK (p.heading > 0);
}
