#pragma once
/**
 * @file bench.hpp
 * @brief Seeded step/time comparison of point-goal and target-tree planning.
 */

#include <parkrrt/planner.hpp>
#include <parkrrt/scenario.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace parkrrt
{
    struct BenchRun
    {
        std::string scenario;
        TargetMode mode = TargetMode::model_tree;
        std::uint64_t seed = 0;
        bool success = false;
        /// Steps consumed, including failed runs (which stop at max_batches).
        std::size_t steps = 0;
        std::size_t batches = 0;
        double wall_time = 0;
        double path_length = 0;
        std::size_t direction_changes = 0;
        /// Distance of the replayed final pose from the goal (successful runs).
        double goal_position_error = 0;
        double goal_heading_error = 0;
    };

    struct BenchAggregate
    {
        std::string scenario;
        TargetMode mode = TargetMode::model_tree;
        std::size_t runs = 0;
        double success_rate = 0;
        std::size_t min_steps = 0, max_steps = 0;
        double mean_steps = 0;
        double min_time = 0, max_time = 0, mean_time = 0;
        /// Means over successful runs only.
        double mean_path_length = 0;
        double mean_direction_changes = 0;
    };

    struct BenchReport
    {
        std::vector<BenchRun> runs;
        std::vector<BenchAggregate> aggregates;
    };

    /// Single run; planning failures are recorded, not thrown.
    BenchRun bench_once (const Scenario &scenario, TargetMode mode, std::uint64_t seed, const PlanConfig &base);

    /// Point and tree mode for every scenario and seed 0..seeds-1; `workers` = 0 picks the hardware concurrency.
    BenchReport run_bench (const std::vector<Scenario> &scenarios, std::size_t seeds, const PlanConfig &base, std::size_t workers = 0);

    std::vector<BenchAggregate> aggregate (const std::vector<BenchRun> &runs);

    std::string runs_csv (const BenchReport &report);
    std::string aggregates_csv (const BenchReport &report);
    std::string report_table (const BenchReport &report);

} // namespace parkrrt
