#pragma once
/**
 * @file scenario_io.hpp
 * @brief Scenario text format, path CSV format and SVG rendering.
 *
 * Formats are documented byte-for-byte in docs/formats.md.
 */

#include <parkrrt/path.hpp>
#include <parkrrt/planner.hpp>
#include <parkrrt/scenario.hpp>
#include <parkrrt/target_tree.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace parkrrt
{
    /**
     * Parse and validate a scenario. Concave obstacles are split into convex
     * parts. @throws ParseError on syntax errors, InvalidScenario naming the
     * failed check otherwise.
     */
    Scenario load_scenario (std::string_view text);
    Scenario load_scenario_file (const std::string &path);

    /// Check every scenario invariant; throws InvalidScenario naming the first failure.
    void validate (const Scenario &scenario);

    /// Serialize with full double precision; load_scenario(write_scenario(s)) reproduces s.
    std::string write_scenario (const Scenario &scenario);

    /// Split a simple CCW polygon into convex CCW parts (ear clipping, then merging across diagonals).
    std::vector<Polygon2d> convex_decompose (const Polygon2d &polygon);

    struct PathRow
    {
        std::size_t index = 0;
        double x = 0, y = 0, heading = 0, steer = 0;
        /// +1 forward, -1 backward, 0 for a leg start.
        int direction = 0;
    };

    struct PathRecord
    {
        std::vector<PathRow> rows;
    };

    inline constexpr std::string_view kPathHeader = "index,x,y,heading,steer,direction";
    /// Replay tolerance on read; rows carry 9 significant digits.
    inline constexpr double kPathReplayTolerance = 1e-6;

    /// One row per leg start and one per primitive; legs without primitives are dropped.
    PathRecord to_record (const Trajectory &trajectory, const Vehicle &vehicle);
    Trajectory to_trajectory (const PathRecord &record, const Vehicle &vehicle);

    std::string write_path (const PathRecord &record);
    /// @throws ParseError (row number) on malformed rows or rows inconsistent under integrate.
    PathRecord read_path (std::string_view text, const Vehicle &vehicle);

    struct RenderLayers
    {
        const SearchTree *search_tree = nullptr;
        const TargetTree *target_tree = nullptr;
        const Trajectory *path = nullptr;
    };

    /// Deterministic SVG 1.1 drawing; the viewBox is the workspace.
    std::string render_svg (const Scenario &scenario, const RenderLayers &layers = {});

    std::string read_text_file (const std::string &path);
    void write_text_file (const std::string &path, std::string_view text);

} // namespace parkrrt
