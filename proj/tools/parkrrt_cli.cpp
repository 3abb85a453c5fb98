// parkrrt command-line tool: plan, bench, tree, smooth, render.
//
// Exit codes: 0 success, 1 usage or internal error, 2 bad scenario or input
// file, 3 no path found. Failures print one JSON object on stderr.

#include <parkrrt/bench.hpp>
#include <parkrrt/planner.hpp>
#include <parkrrt/scenario_io.hpp>
#include <parkrrt/smoother.hpp>
#include <parkrrt/target_tree.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace
{
    using namespace parkrrt;
    using nlohmann::json;

    constexpr int kExitBadInput = 2;
    constexpr int kExitNoPath = 3;

    struct CliError
    {
        int code;
        json body;
    };

    [[noreturn]] void fail (int code, const std::string &kind, const std::string &message, json extra = json::object ())
    {
        extra["error"] = kind;
        extra["message"] = message;
        throw CliError{code, std::move (extra)};
    }

    Scenario load (const std::string &path)
    {
        try
        {
            return load_scenario_file (path);
        }
        catch (const ParseError &e)
        {
            fail (kExitBadInput, "parse_error", e.what (), {{"file", path}, {"line", e.line ()}, {"column", e.column ()}});
        }
        catch (const Error &e)
        {
            fail (kExitBadInput, "bad_scenario", e.what (), {{"file", path}});
        }
    }

    Trajectory load_path (const std::string &path, const Vehicle &vehicle)
    {
        try
        {
            return to_trajectory (read_path (read_text_file (path), vehicle), vehicle);
        }
        catch (const ParseError &e)
        {
            fail (kExitBadInput, "parse_error", e.what (), {{"file", path}, {"line", e.line ()}, {"column", e.column ()}});
        }
        catch (const Error &e)
        {
            fail (kExitBadInput, "bad_path", e.what (), {{"file", path}});
        }
    }

    // JSON object with any subset of the PlanConfig fields.
    PlanConfig load_config (const std::string &path)
    {
        PlanConfig config;
        if (path.empty ())
            return config;
        json j;
        try
        {
            j = json::parse (read_text_file (path));
        }
        catch (const std::exception &e)
        {
            fail (kExitBadInput, "bad_config", e.what (), {{"file", path}});
        }
        if (!j.is_object ())
            fail (kExitBadInput, "bad_config", "config must be a JSON object", {{"file", path}});
        try
        {
            for (const auto &[key, value] : j.items ())
            {
                if (key == "seed")
                    config.seed = value.get<std::uint64_t> ();
                else if (key == "batch_size")
                    config.batch_size = value.get<std::size_t> ();
                else if (key == "max_batches")
                    config.max_batches = value.get<std::size_t> ();
                else if (key == "tolerance_pos")
                    config.tolerance_pos = value.get<double> ();
                else if (key == "tolerance_heading")
                    config.tolerance_heading = value.get<double> ();
                else if (key == "angle_weight")
                    config.angle_weight = value.get<double> ();
                else if (key == "target_tree_bias")
                    config.target_tree_bias = value.get<double> ();
                else if (key == "smooth")
                    config.smooth = value.get<bool> ();
                else if (key == "target_mode")
                {
                    const auto mode = value.get<std::string> ();
                    if (mode != "point" && mode != "tree")
                        fail (kExitBadInput, "bad_config", "target_mode must be \"point\" or \"tree\"", {{"file", path}});
                    config.target_mode = mode == "point" ? TargetMode::point : TargetMode::model_tree;
                }
                else
                    fail (kExitBadInput, "bad_config", "unknown key '" + key + "'", {{"file", path}});
            }
        }
        catch (const json::exception &e)
        {
            fail (kExitBadInput, "bad_config", e.what (), {{"file", path}});
        }
        if (const auto why = config.violation (); !why.empty ())
            fail (kExitBadInput, "bad_config", why, {{"file", path}});
        return config;
    }

    TargetMode parse_mode (const std::string &mode) { return mode == "point" ? TargetMode::point : TargetMode::model_tree; }

    int cmd_plan (const std::string &scenario_path, const std::string &mode, std::optional<std::uint64_t> seed, const std::string &out,
                  const std::string &svg, const std::string &config_path)
    {
        const Scenario scenario = load (scenario_path);
        PlanConfig config = load_config (config_path);
        if (!mode.empty ())
            config.target_mode = parse_mode (mode);
        if (seed)
            config.seed = *seed;

        std::optional<TargetTree> tree;
        if (config.target_mode == TargetMode::model_tree)
            tree = build_target_tree (scenario);
        PlanResult result;
        try
        {
            result = tree ? plan (scenario, config, *tree) : plan (scenario, config);
        }
        catch (const NoPathFound &e)
        {
            fail (kExitNoPath, "no_path", e.what (), {{"best_distance", e.best_distance ()}, {"steps_used", e.steps_used ()}});
        }
        write_text_file (out, write_path (to_record (result.path, scenario.vehicle)));
        if (!svg.empty ())
            write_text_file (svg, render_svg (scenario, {&result.tree, tree ? &*tree : nullptr, &result.path}));

        const json summary = {{"mode", std::string (to_string (config.target_mode))},
                              {"seed", config.seed},
                              {"steps_used", result.steps_used},
                              {"rrt_tree_size", result.rrt_tree_size},
                              {"primitives", primitive_count (result.path)},
                              {"path_length", path_length (result.path)},
                              {"direction_changes", direction_changes (result.path)},
                              {"wall_time", result.wall_time}};
        std::cout << summary.dump () << '\n';
        return 0;
    }

    int cmd_bench (const std::string &dir, std::size_t seeds, const std::string &out, const std::string &config_path, std::size_t workers)
    {
        std::vector<std::filesystem::path> files;
        std::error_code ec;
        for (const auto &entry : std::filesystem::directory_iterator (dir, ec))
            if (entry.path ().extension () == ".scn")
                files.push_back (entry.path ());
        if (ec)
            fail (kExitBadInput, "bad_scenario", "cannot list directory: " + ec.message (), {{"file", dir}});
        if (files.empty ())
            fail (kExitBadInput, "bad_scenario", "no .scn files", {{"file", dir}});
        std::sort (files.begin (), files.end ());

        std::vector<Scenario> scenarios;
        for (const auto &f : files)
            scenarios.push_back (load (f.string ()));
        const PlanConfig config = load_config (config_path);

        const BenchReport report = run_bench (scenarios, seeds, config, workers);
        if (!out.empty ())
        {
            write_text_file (out, aggregates_csv (report));
            std::filesystem::path runs = out;
            runs.replace_extension ();
            write_text_file (runs.string () + ".runs.csv", runs_csv (report));
        }
        std::cout << report_table (report);
        return 0;
    }

    // Each target line becomes one leg, driven out from its root.
    int cmd_tree (const std::string &scenario_path, const std::string &out, const std::string &svg)
    {
        const Scenario scenario = load (scenario_path);
        const TargetTree tree = build_target_tree (scenario);
        Trajectory lines;
        for (const auto &line : tree.lines)
            lines.push_back ({tree.roots[line.root], line.primitives});
        if (!out.empty ())
            write_text_file (out, write_path (to_record (lines, scenario.vehicle)));
        if (!svg.empty ())
            write_text_file (svg, render_svg (scenario, {nullptr, &tree, nullptr}));
        std::cout << json{{"roots", tree.roots.size ()}, {"lines", tree.lines.size ()}, {"nodes", tree.nodes.size ()}}.dump () << '\n';
        return 0;
    }

    int cmd_smooth (const std::string &scenario_path, const std::string &in, const std::string &out, const std::string &config_path)
    {
        const Scenario scenario = load (scenario_path);
        const PlanConfig config = load_config (config_path);
        const Trajectory input = load_path (in, scenario.vehicle);
        Trajectory output;
        for (const auto &leg : input)
        {
            if (!replays_collision_free (leg, scenario))
                fail (kExitBadInput, "bad_path", "input path collides", {{"file", in}});
            for (auto &part : smooth (leg, scenario, config))
                append_leg (output, std::move (part), scenario.vehicle);
        }
        write_text_file (out, write_path (to_record (output, scenario.vehicle)));
        std::cout << json{{"primitives_in", primitive_count (input)}, {"primitives_out", primitive_count (output)}}.dump () << '\n';
        return 0;
    }

    int cmd_render (const std::string &scenario_path, const std::string &in, const std::string &svg)
    {
        const Scenario scenario = load (scenario_path);
        std::optional<Trajectory> path;
        if (!in.empty ())
            path = load_path (in, scenario.vehicle);
        write_text_file (svg, render_svg (scenario, {nullptr, nullptr, path ? &*path : nullptr}));
        return 0;
    }

} // namespace

int main (int argc, char **argv)
{
    CLI::App app{"Imaginative RRT parking planner"};
    app.require_subcommand (1);

    std::string scenario, out, svg, in, config, mode, dir;
    std::optional<std::uint64_t> seed;
    std::size_t seeds = 100, workers = 0;

    auto *plan_cmd = app.add_subcommand ("plan", "Plan one parking path");
    plan_cmd->add_option ("scenario", scenario, "Scenario file")->required ();
    plan_cmd->add_option ("--mode", mode, "Target mode")->check (CLI::IsMember ({"point", "tree"}));
    plan_cmd->add_option ("--seed", seed, "RNG seed");
    plan_cmd->add_option ("--out", out, "Path CSV output")->required ();
    plan_cmd->add_option ("--svg", svg, "SVG output");
    plan_cmd->add_option ("--config", config, "JSON planner configuration");

    auto *bench_cmd = app.add_subcommand ("bench", "Compare point and tree modes over seeds");
    bench_cmd->add_option ("scenario_dir", dir, "Directory of .scn files")->required ();
    bench_cmd->add_option ("--seeds", seeds, "Seeds per scenario and mode")->check (CLI::PositiveNumber);
    bench_cmd->add_option ("--out", out, "Aggregate CSV output; raw rows go next to it as <stem>.runs.csv");
    bench_cmd->add_option ("--config", config, "JSON planner configuration");
    bench_cmd->add_option ("--workers", workers, "Worker threads (0 = hardware concurrency)");

    auto *tree_cmd = app.add_subcommand ("tree", "Build and dump the target tree");
    tree_cmd->add_option ("scenario", scenario, "Scenario file")->required ();
    tree_cmd->add_option ("--out", out, "Path CSV output, one leg per target line");
    tree_cmd->add_option ("--svg", svg, "SVG output");

    auto *smooth_cmd = app.add_subcommand ("smooth", "Smooth a path CSV");
    smooth_cmd->add_option ("scenario", scenario, "Scenario file")->required ();
    smooth_cmd->add_option ("--in", in, "Input path CSV")->required ();
    smooth_cmd->add_option ("--out", out, "Output path CSV")->required ();
    smooth_cmd->add_option ("--config", config, "JSON planner configuration");

    auto *render_cmd = app.add_subcommand ("render", "Render a scenario and optional path to SVG");
    render_cmd->add_option ("scenario", scenario, "Scenario file")->required ();
    render_cmd->add_option ("--in", in, "Path CSV to draw");
    render_cmd->add_option ("--svg", svg, "SVG output")->required ();

    CLI11_PARSE (app, argc, argv);

    try
    {
        if (*plan_cmd)
            return cmd_plan (scenario, mode, seed, out, svg, config);
        if (*bench_cmd)
            return cmd_bench (dir, seeds, out, config, workers);
        if (*tree_cmd)
            return cmd_tree (scenario, out, svg);
        if (*smooth_cmd)
            return cmd_smooth (scenario, in, out, config);
        if (*render_cmd)
            return cmd_render (scenario, in, svg);
    }
    catch (const CliError &e)
    {
        std::cerr << e.body.dump () << '\n';
        return e.code;
    }
    catch (const std::exception &e)
    {
        std::cerr << json{{"error", "internal"}, {"message", e.what ()}}.dump () << '\n';
        return 1;
    }
    return 1;
}
