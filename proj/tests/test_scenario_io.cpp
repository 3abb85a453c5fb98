#include <doctest.h>

#include <parkrrt/errors.hpp>
#include <parkrrt/scenario_io.hpp>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

using namespace parkrrt;

namespace
{
    const std::string kMinimal = R"(# smallest useful scenario
name tiny
type perpendicular
workspace 0 0 20 12
slot 11.25 0 90deg 5.3 2.5
goal 10 1.3 90deg
start 13 6.5 0
box 4.375 2.65 0 8.75 5.3
)";

    std::string with_line_replaced (const std::string &key, const std::string &replacement)
    {
        std::string out;
        std::size_t pos = 0;
        while (pos < kMinimal.size ())
        {
            const std::size_t eol = kMinimal.find ('\n', pos);
            const std::string line = kMinimal.substr (pos, eol - pos);
            out += (line.rfind (key + " ", 0) == 0 ? replacement : line) + "\n";
            pos = eol + 1;
        }
        return out;
    }

    std::string invalid_reason (const std::string &text)
    {
        try
        {
            (void)load_scenario (text);
        }
        catch (const InvalidScenario &e)
        {
            return e.what ();
        }
        return {};
    }

    bool same_scenario (const Scenario &a, const Scenario &b)
    {
        if (a.obstacles.size () != b.obstacles.size ())
            return false;
        for (std::size_t i = 0; i < a.obstacles.size (); ++i)
            if (a.obstacles[i].vertices != b.obstacles[i].vertices)
                return false;
        const auto &va = a.vehicle, &vb = b.vehicle;
        return a.name == b.name && a.type == b.type && a.workspace.min == b.workspace.min && a.workspace.max == b.workspace.max &&
               a.slot.corner == b.slot.corner && a.slot.depth == b.slot.depth && a.slot.width == b.slot.width &&
               a.slot.entry_angle == b.slot.entry_angle && a.start == b.start && a.goal == b.goal && a.drive_out_length == b.drive_out_length &&
               va.wheelbase == vb.wheelbase && va.body_length == vb.body_length && va.body_width == vb.body_width &&
               va.rear_overhang == vb.rear_overhang && va.max_steer == vb.max_steer && va.track_width == vb.track_width;
    }
} // namespace

TEST_CASE ("a minimal scenario parses with vehicle defaults")
{
    const Scenario s = load_scenario (kMinimal);
    CHECK (s.name == "tiny");
    CHECK (s.type == ParkingType::perpendicular);
    CHECK (s.obstacles.size () == 1);
    CHECK (s.goal.heading == doctest::Approx (std::numbers::pi / 2));
    CHECK (s.vehicle.wheelbase == 2.7);
    CHECK (s.drive_out_length == 6.0);
}

TEST_CASE ("angles accept degree and radian spellings")
{
    const Scenario a = load_scenario (with_line_replaced ("goal", "goal 10 1.3 1.5707963267948966"));
    const Scenario b = load_scenario (kMinimal);
    CHECK (a.goal.heading == doctest::Approx (b.goal.heading).epsilon (1e-15));
}

TEST_CASE ("syntax errors carry line and column")
{
    SUBCASE ("bad number")
    {
        try
        {
            (void)load_scenario (with_line_replaced ("start", "start 13 six 0"));
            FAIL ("expected ParseError");
        }
        catch (const ParseError &e)
        {
            CHECK (e.line () == 7);
            CHECK (e.column () == 10);
        }
    }
    SUBCASE ("unknown keyword")
    {
        try
        {
            (void)load_scenario (kMinimal + "  teleport 1 2\n");
            FAIL ("expected ParseError");
        }
        catch (const ParseError &e)
        {
            CHECK (e.line () == 9);
            CHECK (e.column () == 3);
        }
    }
    SUBCASE ("wrong arity, duplicates, open blocks")
    {
        CHECK_THROWS_AS (load_scenario (with_line_replaced ("goal", "goal 10 1.3")), ParseError);
        CHECK_THROWS_AS (load_scenario (kMinimal + "name again\n"), ParseError);
        CHECK_THROWS_AS (load_scenario (kMinimal + "vehicle\n  wheelbase 2.6\n"), ParseError);
        CHECK_THROWS_AS (load_scenario (kMinimal + "vehicle\n  spoiler 1\nend\n"), ParseError);
        CHECK_THROWS_AS (load_scenario (with_line_replaced ("type", "type diagonal")), ParseError);
    }
}

TEST_CASE ("semantic errors name the failed check")
{
    CHECK (invalid_reason (with_line_replaced ("workspace", "workspace 0 0 0 12")) == "degenerate workspace");
    CHECK (invalid_reason (with_line_replaced ("type", "")) == "missing 'type'");
    CHECK (invalid_reason (with_line_replaced ("start", "start 4 2 0")) == "start in collision");
    CHECK (invalid_reason (with_line_replaced ("goal", "goal 10 8 90deg")).find ("goal") != std::string::npos);
    CHECK (invalid_reason (kMinimal + "drive_out_length 5\n") == "drive_out_length must be a multiple of 2 m");
    CHECK (invalid_reason (kMinimal + "vehicle\n  wheelbase 9\nend\n").rfind ("invalid vehicle", 0) == 0);
    CHECK (invalid_reason (kMinimal + "obstacle\n  0 11\n  1 11\nend\n").find ("3 vertices") != std::string::npos);
    CHECK (invalid_reason (kMinimal + "obstacle\n  0 10\n  1 11\n  1 10\n  0 11\nend\n").find ("not simple") != std::string::npos);
}

TEST_CASE ("concave obstacles split into convex counter-clockwise parts")
{
    const Polygon2d notch{{{0, 0}, {4, 0}, {4, 4}, {2, 2}, {0, 4}}};
    const auto parts = convex_decompose (notch);
    CHECK (parts.size () >= 2);
    double area = 0;
    for (const auto &p : parts)
    {
        CHECK (is_convex<double> (p.vertices));
        CHECK (signed_area (p) > 0);
        area += signed_area (p);
    }
    CHECK (area == doctest::Approx (signed_area (notch)));
}

TEST_CASE ("golden scenarios round-trip through text")
{
    for (const char *name : {"perpendicular", "parallel", "echelon"})
    {
        const Scenario s = load_scenario_file (std::string (PARKRRT_SCENARIOS) + "/" + name + ".scn");
        const Scenario back = load_scenario (write_scenario (s));
        CHECK (same_scenario (s, back));
        CHECK (write_scenario (back) == write_scenario (s));
    }
}

TEST_CASE ("paths round-trip through CSV")
{
    const Vehicle v;
    Trajectory t{{Pose2d (1, 2, 0.3), {{Direction::forward, 0.2}, {Direction::forward, -0.4}, {Direction::backward, 0.0}}},
                 {Pose2d (1.1, 2.05, 0.31), {{Direction::backward, 0.5}}}};
    const std::string csv = write_path (to_record (t, v));
    CHECK (csv.rfind (std::string (kPathHeader) + "\n", 0) == 0);
    const Trajectory back = to_trajectory (read_path (csv, v), v);
    REQUIRE (back.size () == t.size ());
    for (std::size_t i = 0; i < t.size (); ++i)
    {
        REQUIRE (back[i].size () == t[i].size ());
        CHECK ((back[i].start.position - t[i].start.position).norm () < 1e-8);
        for (std::size_t k = 0; k < t[i].size (); ++k)
        {
            CHECK (back[i].primitives[k].direction == t[i].primitives[k].direction);
            CHECK (back[i].primitives[k].steer == doctest::Approx (t[i].primitives[k].steer).epsilon (1e-8));
        }
    }
    CHECK (write_path (to_record (back, v)) == csv);
}

TEST_CASE ("path rows must agree with integration")
{
    const Vehicle v;
    const Trajectory t{{Pose2d (0, 0, 0), {{Direction::forward, 0.0}, {Direction::forward, 0.0}}}};
    std::string csv = write_path (to_record (t, v));
    const std::size_t row2 = csv.find ("\n2,");
    REQUIRE (row2 != std::string::npos);
    csv.replace (row2 + 3, 1, "7");
    try
    {
        (void)read_path (csv, v);
        FAIL ("expected ParseError");
    }
    catch (const ParseError &e)
    {
        CHECK (std::string (e.what ()).find ("inconsistent") != std::string::npos);
        CHECK (e.line () == 4);
    }
    CHECK_THROWS_AS (read_path ("index,x,y\n", v), ParseError);
    CHECK_THROWS_AS (read_path ("", v), ParseError);
    CHECK_THROWS_AS (read_path (std::string (kPathHeader) + "\n0,0,0,0,0,1\n", v), ParseError);
    CHECK_THROWS_AS (read_path (std::string (kPathHeader) + "\n0,0,0,0,0,0\n1,0.1,0,0,2,1\n", v), ParseError);
}

TEST_CASE ("SVG output matches the frozen fixture")
{
    const Scenario s = load_scenario (kMinimal);
    const Trajectory t{{s.start, {{Direction::forward, 0.0}, {Direction::forward, 0.3}, {Direction::backward, -0.2}}}};
    const std::string svg = render_svg (s, {nullptr, nullptr, &t});
    CHECK (svg.rfind ("<?xml", 0) == 0);
    CHECK (svg.find ("viewBox=\"0.000 0.000 20.000 12.000\"") != std::string::npos);
    CHECK (svg == render_svg (s, {nullptr, nullptr, &t}));
    CHECK (svg == read_text_file (std::string (PARKRRT_TEST_DATA) + "/tiny_path.svg"));
}

TEST_CASE ("file helpers report missing files")
{
    CHECK_THROWS_AS (read_text_file ("/nonexistent/dir/file.scn"), Error);
    CHECK_THROWS_AS (load_scenario_file ("/nonexistent/dir/file.scn"), Error);
    const auto tmp = std::filesystem::temp_directory_path () / "parkrrt_io_test.txt";
    write_text_file (tmp.string (), "abc\n");
    CHECK (read_text_file (tmp.string ()) == "abc\n");
    std::filesystem::remove (tmp);
}
