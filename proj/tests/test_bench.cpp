#include <doctest.h>

#include <parkrrt/bench.hpp>
#include <parkrrt/scenario_io.hpp>

#include <algorithm>
#include <sstream>
#include <string>

using namespace parkrrt;

namespace
{
    std::vector<std::string> lines_of (const std::string &text)
    {
        std::vector<std::string> out;
        std::istringstream in (text);
        for (std::string line; std::getline (in, line);)
            out.push_back (line);
        return out;
    }

    std::size_t fields (const std::string &line) { return static_cast<std::size_t> (std::count (line.begin (), line.end (), ',')) + 1; }
} // namespace

TEST_CASE ("aggregates average steps over all runs and quality over successes")
{
    std::vector<BenchRun> runs;
    runs.push_back ({"a", TargetMode::point, 0, true, 2000, 2, 0.5, 10.0, 2});
    runs.push_back ({"a", TargetMode::point, 1, false, 4000, 4, 1.5, 0.0, 0});
    runs.push_back ({"a", TargetMode::model_tree, 0, true, 1000, 1, 0.1, 12.0, 1});
    const auto agg = aggregate (runs);
    REQUIRE (agg.size () == 2);
    CHECK (agg[0].mode == TargetMode::point);
    CHECK (agg[0].runs == 2);
    CHECK (agg[0].success_rate == 0.5);
    CHECK (agg[0].min_steps == 2000);
    CHECK (agg[0].max_steps == 4000);
    CHECK (agg[0].mean_steps == 3000);
    CHECK (agg[0].mean_time == doctest::Approx (1.0));
    CHECK (agg[0].mean_path_length == 10.0);
    CHECK (agg[0].mean_direction_changes == 2.0);
    CHECK (agg[1].success_rate == 1.0);
}

TEST_CASE ("a bench over the golden scenarios has six aggregate rows")
{
    std::vector<Scenario> scenarios;
    for (const char *name : {"perpendicular", "parallel", "echelon"})
        scenarios.push_back (load_scenario_file (std::string (PARKRRT_SCENARIOS) + "/" + name + ".scn"));
    PlanConfig base;
    base.max_batches = 1;
    const BenchReport report = run_bench (scenarios, 2, base, 2);
    REQUIRE (report.runs.size () == 12);
    REQUIRE (report.aggregates.size () == 6);
    for (const auto &a : report.aggregates)
    {
        CHECK (a.runs == 2);
        if (a.mode == TargetMode::model_tree)
        {
            CHECK (a.success_rate == 1.0);
            CHECK (a.mean_steps == 1000);
        }
    }
    for (const auto &r : report.runs)
        if (r.success && r.mode == TargetMode::model_tree)
            CHECK (r.goal_position_error < 1e-9);
    for (const auto &r : report.runs)
        CHECK (r.steps == 1000);

    const auto agg_lines = lines_of (aggregates_csv (report));
    REQUIRE (agg_lines.size () == 7);
    CHECK (agg_lines[0] ==
           "scenario,mode,runs,success_rate,min_steps,max_steps,mean_steps,min_time,max_time,mean_time,mean_path_length,mean_direction_changes");
    for (const auto &l : agg_lines)
        CHECK (fields (l) == 12);

    const auto run_lines = lines_of (runs_csv (report));
    REQUIRE (run_lines.size () == 13);
    CHECK (run_lines[0] == "scenario,mode,seed,success,steps,batches,wall_time,path_length,direction_changes,goal_position_error,goal_heading_error");
    for (const auto &l : run_lines)
        CHECK (fields (l) == 11);
    CHECK (run_lines[1].rfind ("perpendicular,point,0,", 0) == 0);

    const auto table = lines_of (report_table (report));
    CHECK (table.size () == 7);
}

TEST_CASE ("bench results do not depend on the worker count")
{
    const Scenario s = load_scenario_file (std::string (PARKRRT_SCENARIOS) + "/echelon.scn");
    PlanConfig base;
    base.max_batches = 2;
    const BenchReport one = run_bench ({s}, 3, base, 1);
    const BenchReport many = run_bench ({s}, 3, base, 3);
    REQUIRE (one.runs.size () == many.runs.size ());
    for (std::size_t i = 0; i < one.runs.size (); ++i)
    {
        CHECK (one.runs[i].seed == many.runs[i].seed);
        CHECK (one.runs[i].success == many.runs[i].success);
        CHECK (one.runs[i].steps == many.runs[i].steps);
        CHECK (one.runs[i].path_length == many.runs[i].path_length);
    }
}
