#include <parkrrt/bench.hpp>

#include <parkrrt/path.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

namespace parkrrt
{
    BenchRun bench_once (const Scenario &scenario, TargetMode mode, std::uint64_t seed, const PlanConfig &base)
    {
        PlanConfig config = base;
        config.seed = seed;
        config.target_mode = mode;
        BenchRun run{scenario.name, mode, seed};
        try
        {
            const PlanResult r = plan (scenario, config);
            run.success = true;
            run.steps = r.steps_used;
            run.batches = r.batches;
            run.wall_time = r.wall_time;
            run.path_length = path_length (r.path);
            run.direction_changes = direction_changes (r.path);
            const Pose2d end = end_pose (r.path, scenario.vehicle);
            run.goal_position_error = (end.position - scenario.goal.position).norm ();
            run.goal_heading_error = std::abs (angle_difference (end.heading, scenario.goal.heading));
        }
        catch (const NoPathFound &e)
        {
            run.steps = e.steps_used ();
            run.batches = e.steps_used () / config.batch_size;
        }
        return run;
    }

    BenchReport run_bench (const std::vector<Scenario> &scenarios, std::size_t seeds, const PlanConfig &base, std::size_t workers)
    {
        struct Job
        {
            std::size_t scenario;
            TargetMode mode;
            std::uint64_t seed;
        };
        std::vector<Job> jobs;
        for (std::size_t s = 0; s < scenarios.size (); ++s)
            for (const TargetMode mode : {TargetMode::point, TargetMode::model_tree})
                for (std::uint64_t seed = 0; seed < seeds; ++seed)
                    jobs.push_back ({s, mode, seed});

        BenchReport report;
        report.runs.resize (jobs.size ());
        if (workers == 0)
            workers = std::max (1u, std::thread::hardware_concurrency ());
        workers = std::min (workers, jobs.size ());

        // each run owns its RNG, so the schedule does not affect results
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i = next++; i < jobs.size (); i = next++)
            {
                const Job &j = jobs[i];
                const auto start = std::chrono::steady_clock::now ();
                report.runs[i] = bench_once (scenarios[j.scenario], j.mode, j.seed, base);
                if (!report.runs[i].success)
                    report.runs[i].wall_time = std::chrono::duration<double> (std::chrono::steady_clock::now () - start).count ();
            }
        };
        if (workers <= 1)
            work ();
        else
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back (work);
        }
        report.aggregates = aggregate (report.runs);
        return report;
    }

    std::vector<BenchAggregate> aggregate (const std::vector<BenchRun> &runs)
    {
        std::vector<BenchAggregate> out;
        for (const auto &run : runs)
        {
            auto it = std::find_if (out.begin (), out.end (), [&] (const BenchAggregate &a) { return a.scenario == run.scenario && a.mode == run.mode; });
            if (it == out.end ())
            {
                out.push_back ({run.scenario, run.mode});
                it = out.end () - 1;
                it->min_steps = run.steps;
                it->max_steps = run.steps;
                it->min_time = run.wall_time;
                it->max_time = run.wall_time;
            }
            BenchAggregate &a = *it;
            ++a.runs;
            a.min_steps = std::min (a.min_steps, run.steps);
            a.max_steps = std::max (a.max_steps, run.steps);
            a.min_time = std::min (a.min_time, run.wall_time);
            a.max_time = std::max (a.max_time, run.wall_time);
            a.mean_steps += static_cast<double> (run.steps);
            a.mean_time += run.wall_time;
            if (run.success)
            {
                a.success_rate += 1;
                a.mean_path_length += run.path_length;
                a.mean_direction_changes += static_cast<double> (run.direction_changes);
            }
        }
        for (auto &a : out)
        {
            const double n = static_cast<double> (a.runs);
            const double ok = a.success_rate;
            a.mean_steps /= n;
            a.mean_time /= n;
            a.success_rate = ok / n;
            if (ok > 0)
            {
                a.mean_path_length /= ok;
                a.mean_direction_changes /= ok;
            }
        }
        return out;
    }

    namespace
    {
        std::string num (const char *format, double v)
        {
            char buf[48];
            std::snprintf (buf, sizeof buf, format, v);
            return buf;
        }
    } // namespace

    std::string runs_csv (const BenchReport &report)
    {
        std::string out = "scenario,mode,seed,success,steps,batches,wall_time,path_length,direction_changes,goal_position_error,goal_heading_error\n";
        for (const auto &r : report.runs)
            out += r.scenario + ',' + std::string (to_string (r.mode)) + ',' + std::to_string (r.seed) + ',' + (r.success ? "1" : "0") + ',' +
                   std::to_string (r.steps) + ',' + std::to_string (r.batches) + ',' + num ("%.6f", r.wall_time) + ',' + num ("%.1f", r.path_length) +
                   ',' + std::to_string (r.direction_changes) + ',' + num ("%.3e", r.goal_position_error) + ',' + num ("%.3e", r.goal_heading_error) +
                   '\n';
        return out;
    }

    std::string aggregates_csv (const BenchReport &report)
    {
        std::string out = "scenario,mode,runs,success_rate,min_steps,max_steps,mean_steps,min_time,max_time,mean_time,mean_path_length,"
                          "mean_direction_changes\n";
        for (const auto &a : report.aggregates)
            out += a.scenario + ',' + std::string (to_string (a.mode)) + ',' + std::to_string (a.runs) + ',' + num ("%.4f", a.success_rate) + ',' +
                   std::to_string (a.min_steps) + ',' + std::to_string (a.max_steps) + ',' + num ("%.2f", a.mean_steps) + ',' +
                   num ("%.6f", a.min_time) + ',' + num ("%.6f", a.max_time) + ',' + num ("%.6f", a.mean_time) + ',' +
                   num ("%.3f", a.mean_path_length) + ',' + num ("%.3f", a.mean_direction_changes) + '\n';
        return out;
    }

    std::string report_table (const BenchReport &report)
    {
        std::string out;
        char line[256];
        std::snprintf (line, sizeof line, "%-16s %-6s %5s %8s %8s %9s %8s %8s %8s %8s %7s\n", "scenario", "mode", "runs", "success", "min_st",
                       "mean_st", "max_st", "min_t", "mean_t", "max_t", "len_m");
        out += line;
        for (const auto &a : report.aggregates)
        {
            std::snprintf (line, sizeof line, "%-16s %-6s %5zu %7.1f%% %8zu %9.1f %8zu %7.3fs %7.3fs %7.3fs %7.1f\n", a.scenario.c_str (),
                           std::string (to_string (a.mode)).c_str (), a.runs, 100.0 * a.success_rate, a.min_steps, a.mean_steps, a.max_steps,
                           a.min_time, a.mean_time, a.max_time, a.mean_path_length);
            out += line;
        }
        return out;
    }

} // namespace parkrrt
